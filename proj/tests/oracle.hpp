#pragma once

// Shared test utilities: an independent quadrature oracle for line integrals
// (so residue-based inner products are checked against plain numerics),
// deterministic generators for random symbols and spectral data, and
// comparison helpers. Everything here is seeded and reproducible.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "szego/rational.hpp"
#include "szego/spectral_data.hpp"
#include "szego/types.hpp"

namespace szego::testing {

// ---------------------------------------------------------------------------
// Quadrature oracle
// ---------------------------------------------------------------------------

namespace detail {

inline Complex simpson_step(const std::function<Complex(double)>& f, double a, double b,
                            Complex fa, Complex fm, Complex fb, Complex whole, double tol,
                            int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Complex flm = f(lm);
  const Complex frm = f(rm);
  const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const Complex delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline Complex adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                                double tol) {
  const double m = 0.5 * (a + b);
  const Complex fa = f(a);
  const Complex fm = f(m);
  const Complex fb = f(b);
  const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

// Integral of h over the real line through the substitution x = tan(theta),
// which maps the line to a finite interval with no truncation tail. Requires
// x^2 h(x) bounded at infinity (true for products of two L2 rationals).
inline Complex quad_line(const std::function<Complex(double)>& h, double tol = 1e-12) {
  const auto g = [&h](double theta) {
    const double x = std::tan(theta);
    const double sec2 = 1.0 + x * x;
    return h(x) * sec2;
  };
  const double edge = kPi / 2.0 - 1e-12;
  // Split at 0 so the typical near-origin pole structure is resolved early.
  return detail::adaptive_simpson(g, -edge, 0.0, 0.5 * tol) +
         detail::adaptive_simpson(g, 0.0, edge, 0.5 * tol);
}

// Quadrature version of l2_inner: integral of f * conj(g) over the line.
inline Complex quad_inner(const RationalFunction& f, const RationalFunction& g,
                          double tol = 1e-12) {
  return quad_line([&f, &g](double x) { return f(Complex(x)) * std::conj(g(Complex(x))); }, tol);
}

// ---------------------------------------------------------------------------
// Deterministic generators
// ---------------------------------------------------------------------------

struct SymbolOptions {
  int total_degree = 0;           // 0 -> draw uniformly from [1, max_degree]
  int max_degree = 6;
  bool force_double_pole = false; // guarantee at least one pole of order 2
};

// Rational Hardy symbol with poles in Re [-2, 2], Im [-2.5, -0.4], pairwise
// separation >= 0.35, and order-m coefficient blocks whose top entry stays
// away from zero so the stated pole orders are genuine.
inline RationalFunction random_symbol(std::mt19937_64& rng, const SymbolOptions& opt = {}) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int degree = opt.total_degree > 0
                         ? opt.total_degree
                         : 1 + static_cast<int>(unit(rng) * opt.max_degree) % opt.max_degree;
  std::vector<int> orders;
  int used = 0;
  if (opt.force_double_pole && degree >= 2) {
    orders.push_back(2);
    used = 2;
  }
  while (used < degree) {
    orders.push_back(1);
    ++used;
  }
  std::vector<Complex> centers;
  while (centers.size() < orders.size()) {
    const Complex z(-2.0 + 4.0 * unit(rng), -2.5 + 2.1 * unit(rng));
    bool ok = true;
    for (Complex w : centers) ok = ok && std::abs(z - w) >= 0.35;
    if (ok) centers.push_back(z);
  }
  std::vector<PoleTerm> poles;
  for (size_t i = 0; i < orders.size(); ++i) {
    PoleTerm term;
    term.z = centers[i];
    for (int k = 0; k < orders[i]; ++k) {
      term.coeffs.emplace_back(-1.5 + 3.0 * unit(rng), -1.5 + 3.0 * unit(rng));
    }
    while (std::abs(term.coeffs.back()) < 0.2) {
      term.coeffs.back() = Complex(-1.5 + 3.0 * unit(rng), -1.5 + 3.0 * unit(rng));
    }
    poles.push_back(std::move(term));
  }
  return RationalFunction(ComplexPolynomial{}, std::move(poles));
}

struct SpectralOptions {
  int levels = 0;         // 0 -> draw uniformly from [1, max_levels]
  int max_levels = 4;
  int max_b_poles = 2;    // level dimensions up to 1 + max_b_poles
  bool force_b = false;   // give every level at least one b pole
};

// Valid spectral data: lambdas in [0.3, 3] descending with gaps >= 0.15,
// phases in (-pi, pi], Im omega in [0.2, 2], Re omega in [-1, 1], b poles in
// [-3, 3] with separation >= 0.5 and residues in [0.2, 2].
inline SpectralData random_spectral(std::mt19937_64& rng, const SpectralOptions& opt = {}) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = opt.levels > 0
                    ? opt.levels
                    : 1 + static_cast<int>(unit(rng) * opt.max_levels) % opt.max_levels;
  std::vector<double> lambdas;
  for (int attempt = 0; attempt < 1000 && static_cast<int>(lambdas.size()) != n; ++attempt) {
    lambdas.clear();
    for (int i = 0; i < n; ++i) lambdas.push_back(0.3 + 2.7 * unit(rng));
    std::sort(lambdas.rbegin(), lambdas.rend());
    for (size_t i = 0; i + 1 < lambdas.size(); ++i) {
      if (lambdas[i] - lambdas[i + 1] < 0.15) {
        lambdas.clear();
        break;
      }
    }
  }
  if (static_cast<int>(lambdas.size()) != n) throw std::runtime_error("lambda sampling failed");
  SpectralData sd;
  for (int i = 0; i < n; ++i) {
    SpectralLevel lv;
    lv.lambda = lambdas[static_cast<size_t>(i)];
    lv.phi = -kPi + 2.0 * kPi * unit(rng);
    if (lv.phi <= -kPi) lv.phi = kPi;
    lv.omega = Complex(-1.0 + 2.0 * unit(rng), 0.2 + 1.8 * unit(rng));
    const int nb = opt.force_b ? std::max(1, static_cast<int>(unit(rng) * (opt.max_b_poles + 1)) %
                                                 (opt.max_b_poles + 1))
                               : static_cast<int>(unit(rng) * (opt.max_b_poles + 1)) %
                                     (opt.max_b_poles + 1);
    std::vector<double> bp;
    while (static_cast<int>(bp.size()) < nb) {
      const double a = -3.0 + 6.0 * unit(rng);
      bool ok = true;
      for (double q : bp) ok = ok && std::abs(a - q) >= 0.5;
      if (ok) bp.push_back(a);
    }
    std::sort(bp.begin(), bp.end());
    lv.b.poles = bp;
    for (int k = 0; k < nb; ++k) lv.b.residues.push_back(0.2 + 1.8 * unit(rng));
    sd.levels.push_back(std::move(lv));
  }
  sd.validate();
  return sd;
}

// ---------------------------------------------------------------------------
// Comparison helpers
// ---------------------------------------------------------------------------

// Evaluation grid x = tan(theta) over 401 angles: dense near the origin,
// reaching |x| ~ 50, deterministic.
inline std::vector<double> sup_grid() {
  std::vector<double> xs;
  const int n = 401;
  for (int i = 0; i < n; ++i) {
    const double theta = -1.55 + 3.10 * i / (n - 1);
    xs.push_back(std::tan(theta));
  }
  return xs;
}

// max |a - b| over the grid, relative to max |a|.
inline double sup_grid_rel_error(const RationalFunction& a, const RationalFunction& b) {
  double scale = 0.0;
  double err = 0.0;
  for (double x : sup_grid()) {
    const Complex va = a(Complex(x));
    scale = std::max(scale, std::abs(va));
    err = std::max(err, std::abs(va - b(Complex(x))));
  }
  return scale > 0.0 ? err / scale : err;
}

// Phase difference wrapped to (-pi, pi].
inline double phase_distance(double a, double b) {
  const double d = std::remainder(a - b, 2.0 * kPi);
  return std::abs(d);
}

struct SpectralDiff {
  double lambda_rel = 0.0;
  double phi_abs = 0.0;
  double omega_abs = 0.0;
  double b_abs = 0.0;  // max over pole and residue lists; inf on layout mismatch
};

inline SpectralDiff spectral_diff(const SpectralData& a, const SpectralData& b) {
  SpectralDiff d;
  if (a.size() != b.size()) {
    d.lambda_rel = d.phi_abs = d.omega_abs = d.b_abs =
        std::numeric_limits<double>::infinity();
    return d;
  }
  for (int i = 0; i < a.size(); ++i) {
    const SpectralLevel& x = a.levels[static_cast<size_t>(i)];
    const SpectralLevel& y = b.levels[static_cast<size_t>(i)];
    d.lambda_rel = std::max(d.lambda_rel, std::abs(x.lambda - y.lambda) / x.lambda);
    d.phi_abs = std::max(d.phi_abs, phase_distance(x.phi, y.phi));
    d.omega_abs = std::max(d.omega_abs, std::abs(x.omega - y.omega));
    if (x.b.poles.size() != y.b.poles.size()) {
      d.b_abs = std::numeric_limits<double>::infinity();
      continue;
    }
    for (size_t k = 0; k < x.b.poles.size(); ++k) {
      d.b_abs = std::max(d.b_abs, std::abs(x.b.poles[k] - y.b.poles[k]));
      d.b_abs = std::max(d.b_abs, std::abs(x.b.residues[k] - y.b.residues[k]));
    }
  }
  return d;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  g.back() = hi;
  return g;
}

}  // namespace szego::testing
