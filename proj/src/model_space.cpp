#include "szego/model_space.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace szego {

Vector ModelSpace::moments(const RationalFunction& f) const {
  Vector m(dim());
  for (int k = 0; k < dim(); ++k) m(k) = l2_inner(f, basis_[k]);
  return m;
}

Vector ModelSpace::project(const RationalFunction& f) const {
  // <f, b_k> = (G^T c)_k for f = sum c_j b_j, so Gram-solve against G^T.
  const Vector m = moments(f);
  const Vector y = L_.triangularView<Eigen::Lower>().solve(m);
  return L_.adjoint().triangularView<Eigen::Upper>().solve(y);
}

Vector ModelSpace::orthonormal_coords(const RationalFunction& f) const {
  return L_.triangularView<Eigen::Lower>().solve(moments(f));
}

Vector ModelSpace::raw_from_orthonormal(const Vector& c) const {
  return L_.adjoint().triangularView<Eigen::Upper>().solve(c);
}

Vector ModelSpace::orthonormal_from_raw(const Vector& c) const { return L_.adjoint() * c; }

RationalFunction ModelSpace::function_from_raw(const Vector& c) const {
  // sum c_k x^k / q(x): one expansion over the shared denominator.
  std::vector<Complex> num(c.size());
  for (int k = 0; k < c.size(); ++k) num[k] = c(k);
  std::vector<Complex> cz;
  cz.reserve(theta_.zeros().size());
  for (const auto& a : theta_.zeros()) cz.push_back(std::conj(a));
  return partial_fractions_known(ComplexPolynomial(std::move(num)), cluster_roots(cz),
                                 Complex(1.0));
}

RationalFunction ModelSpace::function_from_orthonormal(const Vector& c) const {
  return function_from_raw(raw_from_orthonormal(c));
}

double ModelSpace::projection_residual(const RationalFunction& f) const {
  const double nf = l2_norm(f);
  if (nf == 0.0) return 0.0;
  const RationalFunction r = f - function_from_raw(project(f));
  return l2_norm(r) / nf;
}

ModelSpace build_space(const BlaschkeProduct& theta) {
  if (!theta.normalized())
    throw InputError("build_space: Blaschke product must be normalized at infinity");
  if (theta.degree() == 0) throw InputError("build_space: trivial space (degree 0)");
  const int m = theta.degree();

  ModelSpace space;
  space.theta_ = theta;
  space.p_ = ComplexPolynomial::from_roots(theta.zeros());

  std::vector<Complex> cz;
  cz.reserve(theta.zeros().size());
  for (const auto& a : theta.zeros()) cz.push_back(std::conj(a));
  const auto clusters = cluster_roots(cz);
  space.basis_.reserve(m);
  std::vector<Complex> mono;
  for (int k = 0; k < m; ++k) {
    mono.assign(k + 1, Complex(0.0));
    mono[k] = Complex(1.0);
    space.basis_.push_back(partial_fractions_known(ComplexPolynomial(mono), clusters, Complex(1.0)));
  }

  space.gram_ = Matrix(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) space.gram_(j, k) = l2_inner(space.basis_[j], space.basis_[k]);
  space.gram_ = 0.5 * (space.gram_ + space.gram_.adjoint().eval());

  const Matrix mass = space.gram_.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(mass);
  if (es.info() != Eigen::Success)
    throw NumericalError("build_space: Gram eigenvalue computation failed");
  const double emin = es.eigenvalues().minCoeff();
  const double emax = es.eigenvalues().maxCoeff();
  if (emin <= 0.0 || emax / emin > 1e12)
    throw NumericalError("build_space: Gram matrix condition number exceeds 1e12");
  Eigen::LLT<Matrix> llt(mass);
  if (llt.info() != Eigen::Success)
    throw NumericalError("build_space: Gram matrix is not positive definite");
  space.L_ = llt.matrixL();

  space.one_minus_theta_ =
      RationalFunction::from_poly(ComplexPolynomial::constant(Complex(1.0))) -
      theta.as_rational();
  space.g_coords_ = space.orthonormal_coords(space.one_minus_theta_);
  return space;
}

Matrix generator_matrix(const ModelSpace& space) {
  // In the raw basis x^k/q the generator x f - L1(f) theta acts as the
  // companion matrix of theta's numerator p: the shift column picks up -p.
  const int m = space.dim();
  const ComplexPolynomial p = ComplexPolynomial::from_roots(space.theta().zeros());
  Matrix companion = Matrix::Zero(m, m);
  for (int k = 0; k + 1 < m; ++k) companion(k + 1, k) = Complex(1.0);
  for (int j = 0; j < m; ++j) companion(j, m - 1) = -p.coeff(j);
  // Conjugate into the orthonormal basis: A_e = L^H C L^{-H}.
  const Matrix L = space.llt_factor();
  const Matrix y = L.adjoint() * companion;
  return L.triangularView<Eigen::Lower>().solve(y.adjoint()).adjoint();
}

double isometry_defect(const RationalFunction& p, const BlaschkeProduct& psi) {
  const ModelSpace space = build_space(psi);
  const int m = space.dim();
  std::vector<RationalFunction> ph;
  ph.reserve(m);
  for (int k = 0; k < m; ++k) {
    Vector e = Vector::Zero(m);
    e(k) = Complex(1.0);
    ph.push_back(p * space.function_from_orthonormal(e));
  }
  double defect = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const Complex v = l2_inner(ph[j], ph[k]);
      const Complex want = (j == k) ? Complex(1.0) : Complex(0.0);
      defect = std::max(defect, std::abs(v - want));
    }
  }
  return defect;
}

}  // namespace szego
