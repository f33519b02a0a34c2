#pragma once

#include <vector>

#include "szego/rational.hpp"
#include "szego/types.hpp"

namespace szego {

// Finite Blaschke product of the upper half-plane:
//   psi(x) = phase * prod (x - a_j) / (x - conj(a_j)),  Im a_j > 0.
// Zeros are stored sorted lexicographically by (Re, Im), multiplicity by
// repetition. psi(inf) = phase, so the product is normalized iff phase = 1.
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;  // the constant product 1
  explicit BlaschkeProduct(std::vector<Complex> zeros, Complex phase = Complex(1.0));

  const std::vector<Complex>& zeros() const { return zeros_; }
  Complex phase() const { return phase_; }
  int degree() const { return static_cast<int>(zeros_.size()); }
  bool normalized() const { return std::abs(phase_ - Complex(1.0)) <= 1e-12; }

  Complex operator()(Complex x) const;
  RationalFunction as_rational() const;

 private:
  std::vector<Complex> zeros_;
  Complex phase_{1.0};
};

// Data of a rational Herglotz function with simple real poles,
//   h(x) = x + B + sum_k residues[k] / (poles[k] - x),
// all residues nonnegative. The same container also carries the pole part
// alone (b-type data, no linear term); the two evaluators below make the
// reading explicit.
struct HerglotzData {
  std::vector<double> poles;     // sorted ascending
  std::vector<double> residues;  // same length, each >= 0
  double constant = 0.0;         // the B slot
};

// x + B + sum c_k/(alpha_k - x)
Complex herglotz_full_eval(const HerglotzData& h, Complex x);
// B + sum c_k/(alpha_k - x)  (no linear term)
Complex herglotz_pole_sum(const HerglotzData& h, Complex x);

// ||1 - psi||^2 in L^2 of the line, computed as 2*pi*i * L1(psi) from the
// Laurent coefficient at infinity. Requires psi normalized.
double one_minus_norm_sq(const BlaschkeProduct& psi);

// Moebius shift by |w| < 1 inside the unit disk of values,
//   ((1 - conj w)/(w - 1)) * (w - psi)/(1 - conj(w) psi),
// renormalized at infinity. Degree is preserved.
BlaschkeProduct frostman_shift(const BlaschkeProduct& psi, Complex w);

// The shift-invariant Herglotz function attached to a normalized product:
//   h = i*(||1-psi||^2 / 4 pi) * (1+psi)/(1-psi) + Re(L2/L1 - L1/2),
// returned as pole data in the normalized form x + 0 + sum c_k/(alpha_k - x).
// Real poles are the solutions of psi = 1; they are always simple.
HerglotzData herglotz_of(const BlaschkeProduct& psi);

// b(x) = (herglotz_of(psi)(x) - x) / nu_sq: the pole data scaled by 1/nu_sq
// with no linear part.
HerglotzData level_b(const BlaschkeProduct& psi, double nu_sq);

// Inverse of level_b up to a Frostman shift: with h = nu_sq*b + x + B,
// returns (h - i*kappa)/(h + i*kappa) normalized at infinity. The defaults
// kappa = 1, B = 0 fix a deterministic orbit representative. The degree is
// one more than the number of poles of b.
BlaschkeProduct psi_from_b(const HerglotzData& b, double nu_sq, double kappa = 1.0,
                           double B = 0.0);

}  // namespace szego
