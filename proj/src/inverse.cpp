#include "szego/inverse.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

#include "szego/model_space.hpp"

namespace szego {

namespace {

// Determinant of a matrix of polynomials by Laplace expansion over column
// subsets: f(S) is the minor over the first |S| rows and the columns in S,
// expanded along its last row. Division-free, 2^N states, fine for the small
// N of spectral data.
ComplexPolynomial poly_det(const std::vector<std::vector<ComplexPolynomial>>& P) {
  const int n = static_cast<int>(P.size());
  if (n == 0) return ComplexPolynomial::constant(1.0);
  std::vector<ComplexPolynomial> f(size_t(1) << n);
  f[0] = ComplexPolynomial::constant(1.0);
  for (unsigned S = 1; S < (1u << n); ++S) {
    const int r = std::popcount(S) - 1;
    ComplexPolynomial acc;
    int pos = 0;
    for (int j = 0; j < n; ++j) {
      if (!(S >> j & 1u)) continue;
      ComplexPolynomial term = P[r][j] * f[S ^ (1u << j)];
      if ((r + pos) % 2)
        acc -= term;
      else
        acc += term;
      ++pos;
    }
    f[S] = std::move(acc);
  }
  return f[(size_t(1) << n) - 1];
}

// Monic polynomial with the (real) poles of b as roots.
ComplexPolynomial pole_poly(const HerglotzData& b) {
  std::vector<Complex> roots;
  roots.reserve(b.poles.size());
  for (double a : b.poles) roots.emplace_back(a, 0.0);
  return ComplexPolynomial::from_roots(roots, Complex(1.0));
}

// -b(x) d(x) = sum_m c_m prod_{l != m} (x - alpha_l), the pole part of row k
// of Q cleared by its own denominator. Exact polynomial algebra.
ComplexPolynomial cleared_pole_part(const HerglotzData& b) {
  ComplexPolynomial acc;
  const int n = static_cast<int>(b.poles.size());
  for (int m = 0; m < n; ++m) {
    ComplexPolynomial term = ComplexPolynomial::constant(b.residues[m]);
    for (int l = 0; l < n; ++l)
      if (l != m) term = term * ComplexPolynomial({Complex(-b.poles[l]), Complex(1.0)});
    acc += term;
  }
  return acc;
}

Vector lambda_phase_vector(const SpectralData& sd) {
  const int n = sd.size();
  Vector v(n);
  for (int k = 0; k < n; ++k)
    v(k) = sd.levels[k].lambda * std::polar(1.0, -sd.levels[k].phi);
  return v;
}

// Shared machinery of reconstruct_u / reconstruct_g / reconstruct_p_theta:
// the pole-cleared polynomial matrix P = D(d) Q, its determinant, the
// row-replaced determinants N_k, and the clustered roots of det P.
struct ClearedSystem {
  std::vector<ComplexPolynomial> d;   // row denominators, monic
  ComplexPolynomial det;              // det P, degree = total dimension
  std::vector<ComplexPolynomial> N;   // det(P with row k replaced by ones)
  std::vector<RootCluster> clusters;  // roots of det P, lower half-plane
};

ClearedSystem build_cleared(const SpectralData& sd) {
  const int n = sd.size();
  const Matrix A = build_A(sd);

  ClearedSystem sys;
  sys.d.reserve(n);
  for (const auto& lv : sd.levels) sys.d.push_back(pole_poly(lv.b));

  std::vector<std::vector<ComplexPolynomial>> P(n, std::vector<ComplexPolynomial>(n));
  for (int k = 0; k < n; ++k) {
    const double inv_nu_sq = 1.0 / sd.levels[k].nu_sq();
    for (int j = 0; j < n; ++j) {
      const Complex entry = std::conj(A(j, k));  // (A^H)_{kj}
      if (j != k) {
        P[k][j] = entry * sys.d[k];
      } else {
        P[k][k] = entry * sys.d[k] -
                  inv_nu_sq * (ComplexPolynomial::variable() * sys.d[k]) +
                  cleared_pole_part(sd.levels[k].b);
      }
    }
  }

  sys.det = poly_det(P);
  const int m = sd.total_dimension();
  if (sys.det.degree() != m)
    throw NumericalError("inverse map: det P has unexpected degree");

  sys.N.reserve(n);
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<ComplexPolynomial>> Pk = P;
    for (int j = 0; j < n; ++j) Pk[k][j] = ComplexPolynomial::constant(1.0);
    sys.N.push_back(poly_det(Pk));
  }

  std::vector<Complex> roots = polynomial_roots(sys.det);
  for (const Complex& r : roots)
    if (!(r.imag() < 0.0))
      throw NumericalError("inverse map: det P has a root outside the lower "
                           "half-plane; data is not in the image of the direct map");
  sys.clusters = cluster_roots(roots, 1e-6);
  return sys;
}

// Numerical evaluation of g_k(x) = (1/2pi i) ((Q(x)^T)^{-1} 1)_k for probes.
Vector g_probe(const SpectralData& sd, Complex x) {
  const Matrix Q = build_Q(sd, x);
  const Vector ones = Vector::Ones(sd.size());
  return (Q.transpose().partialPivLu().solve(ones) / (2.0 * kPi * kI)).eval();
}

// Two probe points in the upper half-plane, scale-aware.
std::array<Complex, 2> probe_points(const SpectralData& sd,
                                    const std::vector<RootCluster>& clusters) {
  double scale = 1.0;
  for (const auto& c : clusters) scale = std::max(scale, std::abs(c.center));
  for (const auto& lv : sd.levels)
    for (double a : lv.b.poles) scale = std::max(scale, std::abs(a));
  return {Complex(0.0, 1.7) * scale, Complex(0.41, 1.13) * scale};
}

}  // namespace

Matrix build_A(const SpectralData& sd) {
  sd.validate();
  const int n = sd.size();
  Matrix A(n, n);
  for (int k = 0; k < n; ++k) {
    const double lk = sd.levels[k].lambda;
    for (int j = 0; j < n; ++j) {
      if (j == k) {
        const Complex w = sd.levels[k].omega;
        A(k, k) = w / (4.0 * kPi * w.imag());
        continue;
      }
      const double lj = sd.levels[j].lambda;
      const Complex cross =
          lj * lk * std::polar(1.0, sd.levels[j].phi - sd.levels[k].phi);
      A(k, j) = (kI / (2.0 * kPi)) * (lj * lj - cross) / (lj * lj - lk * lk);
    }
  }
  return A;
}

Matrix build_Q(const SpectralData& sd, Complex x) {
  const Matrix A = build_A(sd);
  const int n = sd.size();
  Matrix Q = A.adjoint();
  for (int k = 0; k < n; ++k)
    Q(k, k) -= x / sd.levels[k].nu_sq() + herglotz_pole_sum(sd.levels[k].b, x);
  return Q;
}

Matrix build_Q_sharp(const SpectralData& sd, Complex x) {
  const Matrix A = build_A(sd);
  const int n = sd.size();
  Matrix Q = A;
  for (int k = 0; k < n; ++k)
    Q(k, k) -= x / sd.levels[k].nu_sq() + herglotz_pole_sum(sd.levels[k].b, x);
  return Q;
}

RationalFunction reconstruct_u(const SpectralData& sd) {
  sd.validate();
  if (sd.size() == 0) return {};
  const ClearedSystem sys = build_cleared(sd);
  const Vector v = lambda_phase_vector(sd);

  ComplexPolynomial num;
  for (int k = 0; k < sd.size(); ++k)
    num += v(k) * (sys.d[k] * sys.N[k]);
  num = (Complex(1.0) / (2.0 * kPi * kI)) * num;

  RationalFunction u =
      partial_fractions_known(num, sys.clusters, sys.det.leading_coefficient());
  if (!u.polynomial_part().is_zero())
    throw NumericalError("reconstruct_u: symbol fails to vanish at infinity");

  for (const Complex& x : probe_points(sd, sys.clusters)) {
    const Matrix Q = build_Q(sd, x);
    const Complex direct = (Q.partialPivLu().solve(v)).sum() / (2.0 * kPi * kI);
    if (std::abs(u(x) - direct) > 1e-8 * (1.0 + std::abs(direct)))
      throw NumericalError("reconstruct_u: rational form disagrees with the "
                           "resolvent evaluation");
  }
  return u;
}

std::vector<RationalFunction> reconstruct_g(const SpectralData& sd) {
  sd.validate();
  if (sd.size() == 0) return {};
  const ClearedSystem sys = build_cleared(sd);
  const Complex pref = Complex(1.0) / (2.0 * kPi * kI);

  std::vector<RationalFunction> g;
  g.reserve(sd.size());
  for (int k = 0; k < sd.size(); ++k) {
    RationalFunction gk = partial_fractions_known(
        pref * (sys.d[k] * sys.N[k]), sys.clusters, sys.det.leading_coefficient());
    if (!gk.polynomial_part().is_zero())
      throw NumericalError("reconstruct_g: component fails to vanish at infinity");
    g.push_back(std::move(gk));
  }

  for (const Complex& x : probe_points(sd, sys.clusters)) {
    const Vector direct = g_probe(sd, x);
    for (int k = 0; k < sd.size(); ++k)
      if (std::abs(g[k](x) - direct(k)) > 1e-8 * (1.0 + std::abs(direct(k))))
        throw NumericalError("reconstruct_g: rational form disagrees with the "
                             "resolvent evaluation");
  }
  return g;
}

std::pair<std::vector<RationalFunction>, BlaschkeProduct> reconstruct_p_theta(
    const SpectralData& sd) {
  sd.validate();
  if (sd.size() == 0) return {{}, BlaschkeProduct(std::vector<Complex>{})};
  const ClearedSystem sys = build_cleared(sd);
  const int n = sd.size();

  // theta has zeros at the reflected roots of det P.
  std::vector<Complex> zeros;
  for (const auto& c : sys.clusters)
    for (int k = 0; k < c.multiplicity; ++k) zeros.push_back(std::conj(c.center));
  BlaschkeProduct theta(zeros);

  // Cross-check against det P^#, whose roots are the zeros of theta.
  {
    std::vector<std::vector<ComplexPolynomial>> Ps(n, std::vector<ComplexPolynomial>(n));
    const Matrix A = build_A(sd);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        if (j != k) {
          Ps[k][j] = A(k, j) * sys.d[k];
        } else {
          Ps[k][k] = A(k, k) * sys.d[k] -
                     (1.0 / sd.levels[k].nu_sq()) *
                         (ComplexPolynomial::variable() * sys.d[k]) +
                     cleared_pole_part(sd.levels[k].b);
        }
      }
    }
    const std::vector<Complex> sharp_roots = polynomial_roots(poly_det(Ps));
    for (const Complex& z : theta.zeros()) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& r : sharp_roots) best = std::min(best, std::abs(r - z));
      if (best > 1e-6 * (1.0 + std::abs(z)))
        throw NumericalError("reconstruct_p_theta: det P and det P# disagree "
                             "about the zeros of theta");
    }
  }

  std::vector<RationalFunction> p;
  p.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double nu_sq = sd.levels[k].nu_sq();
    const BlaschkeProduct psi = psi_from_b(sd.levels[k].b, nu_sq);
    const double n2 = one_minus_norm_sq(psi);

    // 1 - psi = (q_psi - p_psi)/q_psi; the numerator has leading coefficient
    // c = 2i sum Im(zeros) and its roots are exactly the poles of b, so
    // (1/c)(q_psi - p_psi) = d_k coefficientwise.
    ComplexPolynomial q_psi = ComplexPolynomial::constant(1.0);
    ComplexPolynomial p_psi = ComplexPolynomial::constant(psi.phase());
    for (const Complex& z : psi.zeros()) {
      q_psi.mul_linear(std::conj(z));
      p_psi.mul_linear(z);
    }
    ComplexPolynomial n_psi = q_psi - p_psi;
    if (n_psi.degree() != sys.d[k].degree())
      throw NumericalError("reconstruct_p_theta: 1 - psi has the wrong degree");
    const Complex c = n_psi.leading_coefficient();
    const ComplexPolynomial scaled = (Complex(1.0) / c) * n_psi - sys.d[k];
    if (scaled.max_abs_coeff() > 1e-7 * (1.0 + sys.d[k].max_abs_coeff()))
      throw NumericalError("reconstruct_p_theta: zeros of 1 - psi do not match "
                           "the poles of b");

    // g_k/(1 - psi) = (1/2pi i)(1/c) N_k q_psi / det P; the d_k cancellation
    // is symbolic, no deflation enters.
    const Complex pref = kI * std::polar(1.0, -0.5 * sd.levels[k].phi) *
                         (std::sqrt(n2) / std::sqrt(nu_sq)) /
                         (2.0 * kPi * kI) / c;
    RationalFunction pk = partial_fractions_known(
        pref * (sys.N[k] * q_psi), sys.clusters, sys.det.leading_coefficient());
    if (pk.polynomial_part().degree() > 0)
      throw NumericalError("reconstruct_p_theta: multiplier grows at infinity");
    p.push_back(std::move(pk));
  }
  return {std::move(p), std::move(theta)};
}

ContractionRep contraction_representation(const SpectralData& sd) {
  sd.validate();
  const int n = sd.size();
  const Matrix A = build_A(sd);

  Vector nu(n), gamma(n);
  Matrix A1 = A;
  for (int k = 0; k < n; ++k) {
    const double nu_sq = sd.levels[k].nu_sq();
    const BlaschkeProduct psi = psi_from_b(sd.levels[k].b, nu_sq);
    const double n2 = one_minus_norm_sq(psi);

    // Shift constant of the level's renormalized Herglotz function,
    // C = Re(L2/L1 - L1/2) from the expansion psi ~ 1 + L1/x + L2/x^2.
    RationalFunction tail = psi.as_rational();
    tail -= RationalFunction::from_poly(ComplexPolynomial::constant(psi.phase()));
    const auto [l1, l2] = laurent_coeffs(tail);
    const double C = (l2 / l1 - 0.5 * l1).real();

    A1(k, k) -= C / nu_sq;
    nu(k) = std::sqrt(nu_sq);
    gamma(k) = std::sqrt(n2) / (2.0 * std::sqrt(kPi));
  }

  const Matrix scale = (nu.array() / gamma.array()).matrix().asDiagonal();
  const Matrix A2 = scale * A1 * scale;
  const Matrix M = A2.conjugate() - kI * Matrix::Identity(n, n);
  const auto lu = M.partialPivLu();
  ContractionRep rep;
  rep.B = lu.solve(A2.conjugate() + kI * Matrix::Identity(n, n));
  rep.beta = lu.solve((nu.array() / gamma.array()).matrix()) / std::sqrt(kPi);
  return rep;
}

bool IdentityReport::pass(double tol) const {
  return std::isfinite(q_inverse_sup) && c2_defect <= tol && c3_defect <= tol &&
         min_im_eigenvalue_A > 0.0 && gram_defect <= tol && omega_defect <= tol &&
         contraction_defect <= tol;
}

IdentityReport verify_spectral_identities(const SpectralData& sd) {
  sd.validate();
  IdentityReport rep;
  const int n = sd.size();
  if (n == 0) {
    rep.min_im_eigenvalue_A = std::numeric_limits<double>::infinity();
    return rep;
  }

  const Matrix A = build_A(sd);

  // The imaginary part (A - A^H)/2i is the rank-one all-ones form over 4pi.
  const Matrix imA = (A - A.adjoint()) / (2.0 * kI);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      rep.c2_defect = std::max(rep.c2_defect,
                               std::abs(imA(k, j) - 1.0 / (4.0 * kPi)));

  // A^H D(lambda e^{-i phi}) = D(lambda e^{-i phi}) conj(A).
  const Vector v = lambda_phase_vector(sd);
  const Matrix lhs = A.adjoint() * v.asDiagonal();
  const Matrix rhs = v.asDiagonal() * A.conjugate();
  rep.c3_defect = (lhs - rhs).cwiseAbs().maxCoeff();

  Eigen::ComplexEigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success)
    throw NumericalError("verify_spectral_identities: eigensolve of A failed");
  rep.min_im_eigenvalue_A = es.eigenvalues().imag().minCoeff();

  // sup over a log-radial grid of the upper half-plane of ||Q(x)^{-1}||_2.
  for (int ir = 0; ir < 312; ++ir) {
    const double r = std::pow(10.0, -3.0 + 9.0 * ir / 311.0);
    for (int ia = 0; ia < 16; ++ia) {
      const double ang = kPi * (ia + 0.5) / 16.0;
      const Matrix Q = build_Q(sd, std::polar(r, ang));
      const double smin =
          Eigen::JacobiSVD<Matrix>(Q).singularValues().minCoeff();
      rep.q_inverse_sup = std::max(rep.q_inverse_sup, 1.0 / smin);
    }
  }

  // Gram of the reconstructed g vector vs D(nu^2), relative to the largest
  // nu^2; omega recovered through the generator compression on K_theta.
  const std::vector<RationalFunction> g = reconstruct_g(sd);
  double nu_sq_max = 0.0;
  for (const auto& lv : sd.levels) nu_sq_max = std::max(nu_sq_max, lv.nu_sq());
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const Complex want = (j == k) ? Complex(sd.levels[k].nu_sq()) : Complex(0.0);
      rep.gram_defect = std::max(
          rep.gram_defect, std::abs(l2_inner(g[j], g[k]) - want) / nu_sq_max);
    }

  const auto [p, theta] = reconstruct_p_theta(sd);
  const ModelSpace space = build_space(theta);
  const Matrix A_e = generator_matrix(space);
  for (int k = 0; k < n; ++k) {
    const Vector ghat = space.orthonormal_coords(g[k]);
    const Complex got = (ghat.adjoint() * (A_e * ghat))(0);
    const Complex want = sd.levels[k].omega / (sd.levels[k].lambda * sd.levels[k].lambda);
    rep.omega_defect =
        std::max(rep.omega_defect, std::abs(got - want) / (1.0 + std::abs(want)));
  }

  const ContractionRep rc = contraction_representation(sd);
  const Matrix unit = rc.B * rc.B.adjoint() + rc.beta * rc.beta.adjoint();
  rep.contraction_defect =
      (unit - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  return rep;
}

}  // namespace szego
