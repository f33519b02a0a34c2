#pragma once

#include <vector>

#include "szego/rational.hpp"
#include "szego/spectral_data.hpp"
#include "szego/types.hpp"

namespace szego {

// Norm evolution along a scan grid; all columns share the grid length.
struct GrowthSeries {
  std::vector<double> times;
  std::vector<double> l2_norms;
  std::vector<double> h1_norms;   // ||du/dx||_L2
  std::vector<double> residuals;  // relative drift of the conserved L2 norm
};

// Closed-form evolution: phi_j += lambda_j^2 t and
// Re omega_j += 2 lambda_j^2 Im(omega_j) t (= (1/2pi) lambda^4 nu^4 t);
// lambda, b, Im omega are carried over bitwise.
SpectralData evolve(const SpectralData& sd, double t);

// P_+(|u|^2 u) = u H_u u + H_u^2 u, computed through the Hankel module and
// cross-checked against the direct partial-fraction projection (tol 1e-9).
RationalFunction szego_rhs(const RationalFunction& u);

// || i (u_{t+h} - u_{t-h})/(2h) - szego_rhs(u_t) ||_L2 with u_s reconstructed
// from evolve(sd, s). Second-order in h. The norm is evaluated by composite
// Gauss quadrature on [-1e3, 1e3] plus an O(x^{-4}) tail estimate, since the
// near-cancelling pole pairs defeat residue arithmetic.
double flow_residual(const SpectralData& sd, double t, double h);

struct H1Norm {
  double l2 = 0.0;
  double dx_l2 = 0.0;
};

// (||u||, ||u'||) via residue-based inner products.
H1Norm h1_norm(const RationalFunction& u);

// Norms of the evolved symbol along an increasing time grid.
GrowthSeries turbulence_scan(const SpectralData& sd, const std::vector<double>& t_grid);

// Appends the level {lambda = eps, phi = 0, omega = i,
// b = level_b(((x-i)/(x+i))^2, sqrt(4 pi)/eps)}. Requires 0 < eps < min lambda.
SpectralData perturb(const SpectralData& sd, double eps);

// Least-squares slope of log(values) vs log(times) over the top decade of the
// grid (times >= max/10); the turbulence growth-rate estimator.
double loglog_slope_top_decade(const std::vector<double>& times,
                               const std::vector<double>& values);

}  // namespace szego
