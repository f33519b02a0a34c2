#include "szego/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "szego/hankel.hpp"
#include "szego/inverse.hpp"

namespace szego {

namespace {

// 32-point Gauss-Legendre rule on [-1, 1], nodes by Newton on the recurrence.
struct GaussRule {
  std::array<double, 32> x{};
  std::array<double, 32> w{};
};

const GaussRule& gauss32() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr int n = 32;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 64; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      r.x[i] = z;
      r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
  }();
  return rule;
}

// integral of |f|^2 over one panel [a, b].
double panel_l2sq(const RationalFunction& f, double a, double b) {
  const GaussRule& g = gauss32();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double x = mid + half * g.x[i];
    acc += g.w[i] * std::norm(f(Complex(x, 0.0)));
  }
  return half * acc;
}

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

SpectralData evolve(const SpectralData& sd, double t) {
  sd.validate();
  SpectralData out = sd;
  for (auto& lv : out.levels) {
    const double lsq = lv.lambda * lv.lambda;
    lv.phi = wrap_phase(lv.phi + lsq * t);
    lv.omega += Complex(2.0 * lsq * lv.omega.imag() * t, 0.0);
  }
  return out;
}

RationalFunction szego_rhs(const RationalFunction& u) {
  if (u.is_zero()) return {};
  const RationalFunction Hu = hardy_project(u * u.conj_reflect());
  const RationalFunction H2u = hardy_project(u * Hu.conj_reflect());
  const RationalFunction rhs = u * Hu + H2u;
  const RationalFunction direct = hardy_project((u * u.conj_reflect()) * u);
  if (l2_norm(rhs - direct) > 1e-9 * (1.0 + l2_norm(rhs)))
    throw NumericalError("szego_rhs: Hankel and projection routes disagree");
  return rhs;
}

double flow_residual(const SpectralData& sd, double t, double h) {
  if (!(h > 0.0)) throw InputError("flow_residual: step h must be positive");
  const RationalFunction u0 = reconstruct_u(evolve(sd, t));
  const RationalFunction up = reconstruct_u(evolve(sd, t + h));
  const RationalFunction um = reconstruct_u(evolve(sd, t - h));
  const RationalFunction r = (kI / (2.0 * h)) * (up - um) - szego_rhs(u0);
  if (r.is_zero()) return 0.0;

  // |r|^2 on [-R, R] by composite Gauss on log-graded panels: a fine panel
  // [0, 0.05], then 31 geometric panels out to R = 1e3, mirrored. The
  // closed-form inner product is useless here: the near-cancelling pole
  // pairs of the difference quotient lose everything to rounding.
  constexpr double kInner = 0.05, kOuter = 1e3;
  const double ratio = std::pow(kOuter / kInner, 1.0 / 31.0);
  double acc = panel_l2sq(r, 0.0, kInner) + panel_l2sq(r, -kInner, 0.0);
  double a = kInner;
  for (int i = 0; i < 31; ++i) {
    const double b = (i == 30) ? kOuter : a * ratio;
    acc += panel_l2sq(r, a, b) + panel_l2sq(r, -b, -a);
    a = b;
  }
  // r decays like x^{-2}, so each tail contributes |r(+-R)|^2 R / 3.
  acc += (std::norm(r(Complex(kOuter, 0.0))) + std::norm(r(Complex(-kOuter, 0.0)))) *
         kOuter / 3.0;
  return std::sqrt(acc);
}

H1Norm h1_norm(const RationalFunction& u) {
  H1Norm n;
  n.l2 = l2_norm(u);
  n.dx_l2 = l2_norm(u.derivative());
  return n;
}

GrowthSeries turbulence_scan(const SpectralData& sd, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw InputError("turbulence_scan: empty time grid");
  GrowthSeries series;
  series.times = t_grid;
  series.l2_norms.reserve(t_grid.size());
  series.h1_norms.reserve(t_grid.size());
  series.residuals.reserve(t_grid.size());
  double base = 0.0;
  for (double t : t_grid) {
    const RationalFunction u = reconstruct_u(evolve(sd, t));
    const H1Norm n = h1_norm(u);
    if (series.l2_norms.empty()) base = n.l2;
    series.l2_norms.push_back(n.l2);
    series.h1_norms.push_back(n.dx_l2);
    series.residuals.push_back(base > 0.0 ? std::abs(n.l2 - base) / base : 0.0);
  }
  return series;
}

SpectralData perturb(const SpectralData& sd, double eps) {
  if (!(eps > 0.0)) throw InputError("perturb: eps must be positive");
  for (const auto& lv : sd.levels)
    if (!(eps < lv.lambda))
      throw InputError("perturb: eps must stay below every existing lambda");

  SpectralLevel tail;
  tail.lambda = eps;
  tail.phi = 0.0;
  tail.omega = kI;
  const BlaschkeProduct psi({kI, kI});
  tail.b = level_b(psi, std::sqrt(4.0 * kPi) / eps);

  SpectralData out = sd;
  out.levels.push_back(std::move(tail));
  out.validate();
  return out;
}

double loglog_slope_top_decade(const std::vector<double>& times,
                               const std::vector<double>& values) {
  if (times.size() != values.size())
    throw InputError("loglog_slope_top_decade: length mismatch");
  const double t_max = *std::max_element(times.begin(), times.end());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_max / 10.0) continue;
    if (!(times[i] > 0.0) || !(values[i] > 0.0))
      throw InputError("loglog_slope_top_decade: nonpositive sample");
    const double lx = std::log(times[i]), ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2)
    throw InputError("loglog_slope_top_decade: fewer than two samples in the "
                     "top decade");
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

}  // namespace szego
