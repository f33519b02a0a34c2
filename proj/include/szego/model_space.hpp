#pragma once

#include <vector>

#include "szego/blaschke.hpp"
#include "szego/rational.hpp"
#include "szego/types.hpp"

namespace szego {

// Finite-dimensional model space K_theta for a normalized Blaschke product of
// degree m, spanned by the rational basis x^k / q(x), q = prod (x - conj a_j).
// The Gram matrix gram(j,k) = l2_inner(basis_j, basis_k) is Hermitian positive
// definite; Cholesky of its transpose orthonormalizes coordinates.
class ModelSpace {
 public:
  const BlaschkeProduct& theta() const { return theta_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<RationalFunction>& basis() const { return basis_; }
  const Matrix& gram() const { return gram_; }
  // Lower Cholesky factor of gram^T; orthonormal coords are L^{-1} * moments.
  const Matrix& llt_factor() const { return L_; }

  // Moment vector m_k = l2_inner(f, basis_k).
  Vector moments(const RationalFunction& f) const;
  // Raw basis coordinates of the orthogonal projection onto K_theta
  // (Gram-solve of the moment vector).
  Vector project(const RationalFunction& f) const;
  // Coordinates in the orthonormalized basis, equal to L^{-1} * moments.
  Vector orthonormal_coords(const RationalFunction& f) const;
  Vector raw_from_orthonormal(const Vector& c) const;
  Vector orthonormal_from_raw(const Vector& c) const;

  RationalFunction function_from_raw(const Vector& c) const;
  RationalFunction function_from_orthonormal(const Vector& c) const;

  // 1 - theta, the reproducing element at infinity; lies in K_theta.
  const RationalFunction& one_minus_theta() const { return one_minus_theta_; }
  // Orthonormal coordinates of 1 - theta.
  const Vector& g_coords() const { return g_coords_; }

  // Relative L^2 distance between f and its projection; zero for f in K_theta.
  double projection_residual(const RationalFunction& f) const;

  friend ModelSpace build_space(const BlaschkeProduct& theta);

 private:
  BlaschkeProduct theta_;
  ComplexPolynomial p_;  // monic numerator of theta (zeros)
  std::vector<RationalFunction> basis_;
  Matrix gram_;  // gram(j,k) = <basis_j, basis_k>
  Matrix L_;     // lower Cholesky factor of gram^T
  RationalFunction one_minus_theta_;
  Vector g_coords_;
};

// Assembles basis, Gram matrix, and Cholesky factor. Degree 0 is rejected as
// a trivial space; a Gram condition number above 1e12 raises NumericalError.
ModelSpace build_space(const BlaschkeProduct& theta);

// Matrix, in the orthonormalized basis, of the truncated generator
//   A f = x f - L1(f) * theta.
// In the raw basis this is exactly the companion matrix of theta's numerator.
Matrix generator_matrix(const ModelSpace& space);

// max over an orthonormal basis {h_k} of K_psi of |<p h_j, p h_k> - delta_jk|;
// small values certify p as an isometric multiplier of K_psi.
double isometry_defect(const RationalFunction& p, const BlaschkeProduct& psi);

}  // namespace szego
