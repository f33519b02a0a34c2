#include "szego/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace szego {

namespace {

// 17 significant digits is the smallest fixed precision that round-trips
// every finite double; a fixed format keeps output byte-deterministic.
std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

bool is_primitive(const OrderedJson& j) { return !j.is_object() && !j.is_array(); }

void append_indent(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out.push_back('\n');
  out.append(static_cast<size_t>(indent) * static_cast<size_t>(depth), ' ');
}

void emit(const OrderedJson& j, int indent, int depth, std::string& out) {
  switch (j.type()) {
    case OrderedJson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        append_indent(out, indent, depth + 1);
        out += OrderedJson(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        emit(it.value(), indent, depth + 1, out);
      }
      append_indent(out, indent, depth);
      out.push_back('}');
      return;
    }
    case OrderedJson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; arrays holding containers expand.
      const bool flat = std::all_of(j.begin(), j.end(), is_primitive);
      out.push_back('[');
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += flat && indent > 0 ? ", " : ",";
        if (!flat) append_indent(out, indent, depth + 1);
        first = false;
        emit(el, indent, depth + 1, out);
      }
      if (!flat) append_indent(out, indent, depth);
      out.push_back(']');
      return;
    }
    case OrderedJson::value_t::string:
      out += j.dump();
      return;
    case OrderedJson::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case OrderedJson::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case OrderedJson::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case OrderedJson::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

OrderedJson complex_json(Complex z) { return OrderedJson::array({z.real(), z.imag()}); }

double number_from(const OrderedJson& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + " must be a number");
  return j.get<double>();
}

Complex complex_from(const OrderedJson& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw InputError(what + " must be an [re, im] pair");
  return {number_from(j[0], what + "[0]"), number_from(j[1], what + "[1]")};
}

std::vector<Complex> complex_list_from(const OrderedJson& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(complex_from(j[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> real_list_from(const OrderedJson& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(number_from(j[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

const OrderedJson& member(const OrderedJson& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(what + " is missing the \"" + key + "\" member");
  return *it;
}

// Drops nlohmann's "[json.exception...]" tag and its own position clause
// ("parse error at line L, column C: ") so the message carries only the
// diagnostic; parse_json_text prepends a single position of its own.
std::string strip_exception_tag(std::string msg) {
  if (!msg.empty() && msg.front() == '[') {
    const size_t close = msg.find("] ");
    if (close != std::string::npos) msg = msg.substr(close + 2);
  }
  if (msg.rfind("parse error", 0) == 0) {
    const size_t colon = msg.find(": ");
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
  }
  return msg;
}

}  // namespace

std::string emit_json(const OrderedJson& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  return out;
}

OrderedJson parse_json_text(const std::string& text) {
  try {
    return OrderedJson::parse(text);
  } catch (const OrderedJson::parse_error& e) {
    size_t line = 1;
    size_t col = 1;
    const size_t limit = std::min(text.size(), e.byte > 0 ? e.byte - 1 : size_t{0});
    for (size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + strip_exception_tag(e.what()));
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("read failure on: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw InputError("write failure on: " + path);
}

OrderedJson symbol_to_json(const RationalFunction& u) {
  OrderedJson j = OrderedJson::object();
  OrderedJson poly = OrderedJson::array();
  for (Complex c : u.polynomial_part().coefficients()) poly.push_back(complex_json(c));
  j["poly"] = std::move(poly);
  OrderedJson poles = OrderedJson::array();
  for (const PoleTerm& term : u.poles()) {
    OrderedJson pt = OrderedJson::object();
    pt["z"] = complex_json(term.z);
    OrderedJson coeffs = OrderedJson::array();
    for (Complex c : term.coeffs) coeffs.push_back(complex_json(c));
    pt["coeffs"] = std::move(coeffs);
    poles.push_back(std::move(pt));
  }
  j["poles"] = std::move(poles);
  return j;
}

RationalFunction symbol_from_json(const OrderedJson& j) {
  if (!j.is_object()) throw InputError("symbol JSON must be an object");
  ComplexPolynomial poly(complex_list_from(member(j, "poly", "symbol"), "poly"));
  const OrderedJson& jp = member(j, "poles", "symbol");
  if (!jp.is_array()) throw InputError("symbol \"poles\" must be an array");
  std::vector<PoleTerm> poles;
  poles.reserve(jp.size());
  for (size_t i = 0; i < jp.size(); ++i) {
    const std::string what = "poles[" + std::to_string(i) + "]";
    PoleTerm term;
    term.z = complex_from(member(jp[i], "z", what), what + ".z");
    term.coeffs = complex_list_from(member(jp[i], "coeffs", what), what + ".coeffs");
    poles.push_back(std::move(term));
  }
  return RationalFunction(std::move(poly), std::move(poles));
}

OrderedJson spectral_to_json(const SpectralData& sd) {
  OrderedJson j = OrderedJson::object();
  OrderedJson levels = OrderedJson::array();
  for (const SpectralLevel& lv : sd.levels) {
    OrderedJson l = OrderedJson::object();
    l["lambda"] = lv.lambda;
    l["phi"] = lv.phi;
    l["omega"] = complex_json(lv.omega);
    OrderedJson b = OrderedJson::object();
    b["poles"] = lv.b.poles;
    b["residues"] = lv.b.residues;
    l["b"] = std::move(b);
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j;
}

SpectralData spectral_from_json(const OrderedJson& j) {
  const OrderedJson& jl = member(j, "levels", "spectral data");
  if (!jl.is_array()) throw InputError("spectral data \"levels\" must be an array");
  SpectralData sd;
  sd.levels.reserve(jl.size());
  for (size_t i = 0; i < jl.size(); ++i) {
    const std::string what = "levels[" + std::to_string(i) + "]";
    SpectralLevel lv;
    lv.lambda = number_from(member(jl[i], "lambda", what), what + ".lambda");
    lv.phi = number_from(member(jl[i], "phi", what), what + ".phi");
    lv.omega = complex_from(member(jl[i], "omega", what), what + ".omega");
    if (jl[i].is_object() && jl[i].contains("b")) {
      const OrderedJson& jb = jl[i]["b"];
      lv.b.poles = real_list_from(member(jb, "poles", what + ".b"), what + ".b.poles");
      lv.b.residues = real_list_from(member(jb, "residues", what + ".b"), what + ".b.residues");
    }
    sd.levels.push_back(std::move(lv));
  }
  return sd;
}

OrderedJson report_to_json(const IdentityReport& report) {
  OrderedJson j = OrderedJson::object();
  j["q_inverse_sup"] = report.q_inverse_sup;
  j["c2_defect"] = report.c2_defect;
  j["c3_defect"] = report.c3_defect;
  j["min_im_eigenvalue_A"] = report.min_im_eigenvalue_A;
  j["gram_defect"] = report.gram_defect;
  j["omega_defect"] = report.omega_defect;
  j["contraction_defect"] = report.contraction_defect;
  return j;
}

bool is_spectral_json(const OrderedJson& j) { return j.is_object() && j.contains("levels"); }

RationalFunction read_symbol_file(const std::string& path) {
  try {
    const OrderedJson j = parse_json_text(read_text_file(path));
    if (is_spectral_json(j)) {
      throw InputError("file holds spectral data (has \"levels\"), expected a symbol");
    }
    return symbol_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

SpectralData read_spectral_file(const std::string& path) {
  SpectralData sd;
  try {
    sd = spectral_from_json(parse_json_text(read_text_file(path)));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
  sd.validate();
  return sd;
}

void write_symbol_file(const std::string& path, const RationalFunction& u) {
  write_text_file(path, emit_json(symbol_to_json(u)) + "\n");
}

void write_spectral_file(const std::string& path, const SpectralData& sd) {
  write_text_file(path, emit_json(spectral_to_json(sd)) + "\n");
}

std::string growth_to_csv(const GrowthSeries& series) {
  std::string out = "t,l2,h1,residual\n";
  for (size_t i = 0; i < series.times.size(); ++i) {
    out += csv_double(series.times[i]);
    out.push_back(',');
    out += csv_double(series.l2_norms[i]);
    out.push_back(',');
    out += csv_double(series.h1_norms[i]);
    out.push_back(',');
    out += csv_double(series.residuals[i]);
    out.push_back('\n');
  }
  return out;
}

void write_growth_csv(const std::string& path, const GrowthSeries& series) {
  write_text_file(path, growth_to_csv(series));
}

}  // namespace szego
