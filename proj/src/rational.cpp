#include "szego/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace szego {

namespace {

constexpr double kTrimRel = 1e-13;

bool pole_less(const PoleTerm& a, const PoleTerm& b) {
  if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
  return a.z.imag() < b.z.imag();
}

bool same_location(Complex p, Complex q) {
  return std::abs(p - q) <= 1e-8 * (1.0 + std::abs(p));
}

}  // namespace

RationalFunction::RationalFunction(ComplexPolynomial poly, std::vector<PoleTerm> poles)
    : poly_(std::move(poly)), poles_(std::move(poles)) {
  canonicalize();
}

void RationalFunction::canonicalize() {
  std::sort(poles_.begin(), poles_.end(), pole_less);
  // Merge groups at coincident locations (keeps the first representative).
  std::vector<PoleTerm> merged;
  for (auto& g : poles_) {
    if (!merged.empty() && same_location(merged.back().z, g.z)) {
      auto& dst = merged.back().coeffs;
      if (g.coeffs.size() > dst.size()) dst.resize(g.coeffs.size(), Complex(0.0));
      for (size_t k = 0; k < g.coeffs.size(); ++k) dst[k] += g.coeffs[k];
    } else {
      merged.push_back(std::move(g));
    }
  }
  poles_ = std::move(merged);
  // Trim negligible trailing coefficients relative to the global scale and
  // drop empty groups.
  double scale = poly_.max_abs_coeff();
  for (const auto& g : poles_)
    for (const auto& c : g.coeffs) scale = std::max(scale, std::abs(c));
  const double cut = scale * kTrimRel;
  std::vector<PoleTerm> kept;
  for (auto& g : poles_) {
    while (!g.coeffs.empty() && std::abs(g.coeffs.back()) <= cut) g.coeffs.pop_back();
    if (!g.coeffs.empty()) kept.push_back(std::move(g));
  }
  poles_ = std::move(kept);
}

bool RationalFunction::is_hardy() const {
  if (!poly_.is_zero()) return false;
  for (const auto& g : poles_)
    if (g.z.imag() >= 0.0) return false;
  return true;
}

bool RationalFunction::in_l2() const {
  if (!poly_.is_zero()) return false;
  for (const auto& g : poles_)
    if (g.z.imag() == 0.0) return false;
  return true;
}

Complex RationalFunction::operator()(Complex x) const {
  Complex acc = poly_(x);
  for (const auto& g : poles_) {
    const Complex w = Complex(1.0) / (x - g.z);
    Complex power = w;
    for (const auto& c : g.coeffs) {
      acc += c * power;
      power *= w;
    }
  }
  return acc;
}

RationalFunction RationalFunction::derivative() const {
  std::vector<PoleTerm> dp;
  dp.reserve(poles_.size());
  for (const auto& g : poles_) {
    std::vector<Complex> c(g.coeffs.size() + 1, Complex(0.0));
    for (size_t k = 0; k < g.coeffs.size(); ++k)
      c[k + 1] = -static_cast<double>(k + 1) * g.coeffs[k];
    dp.push_back({g.z, std::move(c)});
  }
  return RationalFunction(poly_.derivative(), std::move(dp));
}

RationalFunction RationalFunction::conj_reflect() const {
  std::vector<PoleTerm> rp;
  rp.reserve(poles_.size());
  for (const auto& g : poles_) {
    std::vector<Complex> c(g.coeffs.size());
    for (size_t k = 0; k < g.coeffs.size(); ++k) c[k] = std::conj(g.coeffs[k]);
    rp.push_back({std::conj(g.z), std::move(c)});
  }
  return RationalFunction(poly_.conj_reflect(), std::move(rp));
}

std::pair<ComplexPolynomial, ComplexPolynomial> RationalFunction::to_fraction() const {
  ComplexPolynomial den = ComplexPolynomial::constant(Complex(1.0));
  for (const auto& g : poles_)
    for (int k = 0; k < g.order(); ++k) den.mul_linear(g.z);
  ComplexPolynomial num = poly_ * den;
  for (size_t i = 0; i < poles_.size(); ++i) {
    // cofactor_i = den / (x - z_i)^{order_i}
    ComplexPolynomial cof = ComplexPolynomial::constant(Complex(1.0));
    for (size_t j = 0; j < poles_.size(); ++j) {
      if (j == i) continue;
      for (int k = 0; k < poles_[j].order(); ++k) cof.mul_linear(poles_[j].z);
    }
    // Group contributes sum_k coeffs[k] (x - z_i)^{order_i - k - 1} * cof.
    ComplexPolynomial rising = ComplexPolynomial::constant(Complex(1.0));
    std::vector<ComplexPolynomial> powers(poles_[i].order());
    for (int k = 0; k < poles_[i].order(); ++k) {
      powers[k] = rising;
      rising.mul_linear(poles_[i].z);
    }
    ComplexPolynomial groupnum;
    for (int k = 0; k < poles_[i].order(); ++k)
      groupnum += poles_[i].coeffs[k] * powers[poles_[i].order() - k - 1];
    num += groupnum * cof;
  }
  return {std::move(num), std::move(den)};
}

double RationalFunction::coeff_scale() const {
  double scale = poly_.max_abs_coeff();
  for (const auto& g : poles_)
    for (const auto& c : g.coeffs) scale = std::max(scale, std::abs(c));
  return scale;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  poly_ += o.poly_;
  poles_.insert(poles_.end(), o.poles_.begin(), o.poles_.end());
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  poly_ -= o.poly_;
  for (const auto& g : o.poles_) {
    PoleTerm neg = g;
    for (auto& c : neg.coeffs) c = -c;
    poles_.push_back(std::move(neg));
  }
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator*=(Complex s) {
  poly_ *= s;
  for (auto& g : poles_)
    for (auto& c : g.coeffs) c *= s;
  canonicalize();
  return *this;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto [na, da] = a.to_fraction();
  const auto [nb, db] = b.to_fraction();
  // Union of pole locations with multiplicities added at coincidences.
  std::vector<RootCluster> clusters;
  for (const auto& g : a.poles()) clusters.push_back({g.z, g.order()});
  for (const auto& g : b.poles()) {
    bool found = false;
    for (auto& c : clusters) {
      if (same_location(c.center, g.z)) {
        c.multiplicity += g.order();
        found = true;
        break;
      }
    }
    if (!found) clusters.push_back({g.z, g.order()});
  }
  return partial_fractions_known(na * nb, clusters, Complex(1.0));
}

RationalFunction partial_fractions_known(const ComplexPolynomial& num,
                                         const std::vector<RootCluster>& den_roots,
                                         Complex den_leading) {
  if (den_leading == Complex(0.0)) throw InputError("denominator leading coefficient is zero");
  ComplexPolynomial den = ComplexPolynomial::constant(den_leading);
  for (const auto& c : den_roots)
    for (int k = 0; k < c.multiplicity; ++k) den.mul_linear(c.center);
  auto [quot, rem] = ComplexPolynomial::divide(num, den);
  std::vector<PoleTerm> poles;
  poles.reserve(den_roots.size());
  for (size_t i = 0; i < den_roots.size(); ++i) {
    const Complex z = den_roots[i].center;
    const int m = den_roots[i].multiplicity;
    // f_i = rem / (den with this factor removed); its Taylor expansion at z
    // carries the coefficients: coeff of (x-z)^{-(k+1)} is the Taylor
    // coefficient of order m-k-1.
    ComplexPolynomial den_i = ComplexPolynomial::constant(den_leading);
    for (size_t j = 0; j < den_roots.size(); ++j) {
      if (j == i) continue;
      for (int k = 0; k < den_roots[j].multiplicity; ++k) den_i.mul_linear(den_roots[j].center);
    }
    const std::vector<Complex> numT = rem.taylor_at(z, m - 1);
    const std::vector<Complex> denT = den_i.taylor_at(z, m - 1);
    if (std::abs(denT[0]) == 0.0)
      throw NumericalError("coincident pole clusters in partial fractions");
    std::vector<Complex> t(m, Complex(0.0));
    for (int j = 0; j < m; ++j) {
      Complex s = numT[j];
      for (int l = 0; l < j; ++l) s -= t[l] * denT[j - l];
      t[j] = s / denT[0];
    }
    std::vector<Complex> coeffs(m);
    for (int k = 0; k < m; ++k) coeffs[k] = t[m - k - 1];
    poles.push_back({z, std::move(coeffs)});
  }
  return RationalFunction(std::move(quot), std::move(poles));
}

namespace {

// Relative sup deviation between r and num/den on a 64-point circular probe
// grid sized to enclose all poles; points too close to a pole are skipped.
double probe_defect(const RationalFunction& r, const ComplexPolynomial& num,
                    const ComplexPolynomial& den) {
  double radius = 2.0;
  for (const auto& g : r.poles()) radius = std::max(radius, 2.0 * std::abs(g.z));
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double ang = 2.0 * kPi * (k + 0.5) / 64.0;
    const Complex x = radius * Complex(std::cos(ang), std::sin(ang));
    const Complex dv = den(x);
    if (std::abs(dv) < 1e-12 * den.max_abs_coeff()) continue;
    const Complex want = num(x) / dv;
    const double err = std::abs(r(x) - want) / (1.0 + std::abs(want));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace

RationalFunction partial_fractions(const ComplexPolynomial& num, const ComplexPolynomial& den) {
  if (den.is_zero()) throw InputError("partial fractions with zero denominator");
  if (num.is_zero()) return {};
  if (den.degree() == 0)
    return RationalFunction((Complex(1.0) / den.coeff(0)) * num, {});
  const auto clusters = cluster_roots(polynomial_roots(den));
  RationalFunction r = partial_fractions_known(num, clusters, den.leading_coefficient());
  const double defect = probe_defect(r, num, den);
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "partial fraction expansion failed verification: relative probe residual " << defect
        << " (ill-conditioned denominator roots)";
    throw NumericalError(msg.str());
  }
  return r;
}

RationalFunction rational_divide(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw InputError("division by the zero rational function");
  const auto [na, da] = a.to_fraction();
  const auto [nb, db] = b.to_fraction();
  return partial_fractions(na * db, da * nb);
}

RationalFunction hardy_project(const RationalFunction& r) {
  if (!r.in_l2()) throw InputError("hardy_project: argument not in L^2");
  std::vector<PoleTerm> lower;
  for (const auto& g : r.poles())
    if (g.z.imag() < 0.0) lower.push_back(g);
  return RationalFunction(ComplexPolynomial{}, std::move(lower));
}

namespace {

double binomial(int n, int k) {
  double v = 1.0;
  for (int j = 1; j <= k; ++j) v *= static_cast<double>(n - k + j) / j;
  return v;
}

Complex cpow_int(Complex base, int n) {
  Complex v(1.0);
  for (int j = 0; j < n; ++j) v *= base;
  return v;
}

}  // namespace

Complex l2_inner(const RationalFunction& f, const RationalFunction& g) {
  if (!f.in_l2() || !g.in_l2()) throw InputError("l2_inner: argument not in L^2");
  // int f conj(g) = int f(x) g*(x) dx with g*(x) = conj(g(conj x)); close the
  // contour upward, so only pairs with poles on opposite sides contribute.
  Complex total(0.0);
  for (const auto& fg : f.poles()) {
    const Complex p = fg.z;
    for (const auto& gg : g.poles()) {
      const Complex bz = std::conj(gg.z);
      if ((p.imag() < 0.0) == (bz.imag() < 0.0)) continue;
      for (size_t ki = 0; ki < fg.coeffs.size(); ++ki) {
        const int k = static_cast<int>(ki) + 1;
        for (size_t li = 0; li < gg.coeffs.size(); ++li) {
          const int l = static_cast<int>(li) + 1;
          const Complex ab = fg.coeffs[ki] * std::conj(gg.coeffs[li]);
          Complex contrib;
          if (p.imag() < 0.0) {
            // upper pole is bz, order l
            const double sign = (l % 2 == 0) ? -1.0 : 1.0;
            contrib = ab * sign * binomial(k + l - 2, l - 1) / cpow_int(bz - p, k + l - 1);
          } else {
            // upper pole is p, order k
            const double sign = (k % 2 == 0) ? -1.0 : 1.0;
            contrib = ab * sign * binomial(k + l - 2, k - 1) / cpow_int(p - bz, k + l - 1);
          }
          total += contrib;
        }
      }
    }
  }
  return 2.0 * kPi * kI * total;
}

double l2_norm(const RationalFunction& f) {
  const Complex v = l2_inner(f, f);
  return std::sqrt(std::max(0.0, v.real()));
}

std::pair<Complex, Complex> laurent_coeffs(const RationalFunction& r) {
  if (r.polynomial_part().degree() >= 1)
    throw InputError("laurent_coeffs: unbounded at infinity");
  // 1/(x-z) = 1/x + z/x^2 + ..., 1/(x-z)^2 = 1/x^2 + ...
  Complex l1(0.0), l2(0.0);
  for (const auto& g : r.poles()) {
    l1 += g.coeffs[0];
    l2 += g.coeffs[0] * g.z;
    if (g.coeffs.size() > 1) l2 += g.coeffs[1];
  }
  return {l1, l2};
}

}  // namespace szego
