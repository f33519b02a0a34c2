#include "szego/hankel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace szego {

namespace {

// P_+(u conj f), the defining action of the anti-linear Hankel operator.
RationalFunction apply_symbol(const RationalFunction& u, const RationalFunction& f) {
  return hardy_project(u * f.conj_reflect());
}

// Rebuilds theta from the pole structure actually present in the images
// {H_u e_k} together with u itself, dropping pole coefficients below
// 1e-10 of the overall coefficient scale. Used when the first guess for
// theta (reflected poles of u) overshoots the true rank.
BlaschkeProduct theta_from_observations(const std::vector<const RationalFunction*>& fs) {
  double scale = 0.0;
  for (const auto* f : fs) scale = std::max(scale, f->coeff_scale());
  const double cut = 1e-10 * scale;

  struct Observed {
    Complex z;
    int order;
  };
  std::vector<Observed> seen;
  for (const auto* f : fs) {
    for (const auto& group : f->poles()) {
      int order = 0;
      for (size_t k = 0; k < group.coeffs.size(); ++k)
        if (std::abs(group.coeffs[k]) > cut) order = static_cast<int>(k) + 1;
      if (order == 0) continue;
      bool merged = false;
      for (auto& obs : seen) {
        if (std::abs(obs.z - group.z) <= 1e-8 * (1.0 + std::abs(obs.z))) {
          obs.order = std::max(obs.order, order);
          merged = true;
          break;
        }
      }
      if (!merged) seen.push_back({group.z, order});
    }
  }
  std::vector<Complex> zeros;
  for (const auto& obs : seen)
    for (int k = 0; k < obs.order; ++k) zeros.push_back(std::conj(obs.z));
  if (zeros.empty())
    throw NumericalError("hankel_build: no poles survive the rank-deficiency cut");
  return BlaschkeProduct(zeros);
}

// Ascending-eigenvalue output of SelfAdjointEigenSolver rearranged to
// singular values in decreasing order with matching eigenvector columns.
struct SingularSystem {
  std::vector<double> s;  // decreasing
  Matrix vectors;         // column k pairs with s[k]
};

SingularSystem singular_system(const Matrix& M) {
  Matrix K = M * M.conjugate();
  K = (0.5 * (K + K.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(K);
  if (es.info() != Eigen::Success)
    throw NumericalError("Hankel eigendecomposition failed to converge");
  const int m = static_cast<int>(M.rows());
  SingularSystem out;
  out.s.resize(m);
  out.vectors.resize(m, m);
  for (int k = 0; k < m; ++k) {
    const int src = m - 1 - k;  // reverse to decreasing order
    out.s[k] = std::sqrt(std::max(0.0, es.eigenvalues()(src)));
    out.vectors.col(k) = es.eigenvectors().col(src);
  }
  return out;
}

// Extracts the Herglotz pole data b of one Schmidt level from the compressed
// generator block T = U^* A_e^* U and the block coordinates gb of g_j.
HerglotzData extract_b(const Matrix& A_e, const Matrix& U, const Vector& gb,
                       const Complex& omega, double nu) {
  HerglotzData b;
  const int d = static_cast<int>(U.cols());
  if (d == 1) return b;  // one-dimensional level: b is identically zero

  const double nu_sq = nu * nu;
  const Complex Ajj = omega / (4.0 * kPi * omega.imag());
  const Matrix T = U.adjoint() * A_e.adjoint() * U;

  Eigen::ComplexEigenSolver<Matrix> es(T);
  if (es.info() != Eigen::Success)
    throw NumericalError("compressed generator block eigendecomposition failed");
  const Matrix& V = es.eigenvectors();
  const Vector mu = es.eigenvalues();
  const Vector right = V.partialPivLu().solve(gb);
  const Vector left = V.adjoint() * gb;
  Vector w(d);
  for (int k = 0; k < d; ++k) w(k) = right(k) * std::conj(left(k));

  // Probe the spectral form R(x) = sum w_k / (mu_k - x) against a direct
  // resolvent solve; failure means T was not diagonalized accurately.
  double mu_scale = 0.0;
  for (int k = 0; k < d; ++k) mu_scale = std::max(mu_scale, std::abs(mu(k)));
  for (double factor : {1.0, 2.0}) {
    const Complex x = kI * factor * (1.0 + mu_scale);
    Matrix shifted = T - x * Matrix::Identity(d, d);
    const Complex direct = gb.adjoint() * shifted.partialPivLu().solve(gb);
    Complex summed = 0.0;
    for (int k = 0; k < d; ++k) summed += w(k) / (mu(k) - x);
    if (std::abs(summed - direct) > 1e-8 * (1.0 + std::abs(direct)))
      throw NumericalError("Schmidt level resolvent probe failed; compressed block "
                           "is not reliably diagonalizable");
  }

  // 1/R(x) = p(x)/qpoly(x) with p = prod (mu_k - x) and
  // qpoly = sum_k w_k prod_{l != k} (mu_l - x). Then
  //   b(x) = conj(Ajj) - x/nu^2 - 1/R(x)
  // has numerator conj(Ajj) qpoly - (x/nu^2) qpoly - p over qpoly; the x^d
  // terms cancel because sum w_k = nu^2.
  ComplexPolynomial p = ComplexPolynomial::constant(1.0);
  for (int k = 0; k < d; ++k) p = p * ComplexPolynomial({mu(k), -1.0});
  ComplexPolynomial qpoly;
  for (int k = 0; k < d; ++k) {
    ComplexPolynomial term = ComplexPolynomial::constant(w(k));
    for (int l = 0; l < d; ++l)
      if (l != k) term = term * ComplexPolynomial({mu(l), -1.0});
    qpoly = qpoly + term;
  }
  const ComplexPolynomial numer = std::conj(Ajj) * qpoly -
                                  (1.0 / nu_sq) * (ComplexPolynomial::variable() * qpoly) -
                                  p;
  if (qpoly.degree() != d - 1)
    throw NumericalError("Schmidt level pole polynomial degenerated");

  std::vector<Complex> roots = polynomial_roots(qpoly);
  for (auto& r : roots) {
    if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r.real())))
      throw NumericalError("Schmidt level pole is not real within tolerance");
    r = Complex(r.real(), 0.0);
  }
  std::vector<RootCluster> clusters = cluster_roots(roots);
  for (const auto& c : clusters)
    if (c.multiplicity != 1)
      throw NumericalError("Schmidt level poles are not simple");

  const RationalFunction bfun =
      partial_fractions_known(numer, clusters, qpoly.leading_coefficient());
  const double slot_scale = 1.0 + std::abs(Ajj) + 1.0 / nu_sq;
  if (bfun.polynomial_part().max_abs_coeff() > 1e-6 * slot_scale)
    throw NumericalError("Schmidt level b has a nonvanishing polynomial part");

  struct Entry {
    double pole;
    double residue;
  };
  std::vector<Entry> entries;
  for (const auto& group : bfun.poles()) {
    const Complex r = group.coeffs.front();
    if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r)))
      throw NumericalError("Schmidt level residue is not real within tolerance");
    double c = -r.real();
    if (c < -1e-7 * (1.0 + std::abs(r)))
      throw NumericalError("Schmidt level residue is negative beyond tolerance");
    c = std::max(c, 0.0);
    entries.push_back({group.z.real(), c});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& bb) { return a.pole < bb.pole; });
  for (const auto& e : entries) {
    b.poles.push_back(e.pole);
    b.residues.push_back(e.residue);
  }
  return b;
}

}  // namespace

HankelOperator hankel_build(const RationalFunction& u) {
  if (u.is_zero()) throw InputError("hankel_build: symbol is identically zero");
  if (!u.polynomial_part().is_zero())
    throw InputError("hankel_build: symbol must vanish at infinity");
  if (!u.in_l2())
    throw InputError("hankel_build: symbol has a real pole, not square-integrable");
  if (!u.is_hardy())
    throw InputError("hankel_build: symbol has poles in the upper half-plane, "
                     "not in the Hardy class");

  // First guess: theta with zeros at the reflected poles of u, counted with
  // multiplicity. Generic symbols stop at the first pass; a rank-deficient
  // matrix (cancellations in u) triggers a rebuild from the observed images.
  std::vector<Complex> zeros;
  for (const auto& group : u.poles())
    for (int k = 0; k < group.order(); ++k) zeros.push_back(std::conj(group.z));
  BlaschkeProduct theta(zeros);

  for (int attempt = 0; attempt < 3; ++attempt) {
    ModelSpace space = build_space(theta);
    const int m = space.dim();
    Matrix M(m, m);
    std::vector<RationalFunction> images;
    images.reserve(m);
    for (int k = 0; k < m; ++k) {
      Vector unit = Vector::Zero(m);
      unit(k) = 1.0;
      const RationalFunction e_k = space.function_from_orthonormal(unit);
      RationalFunction image = apply_symbol(u, e_k);
      M.col(k) = space.orthonormal_coords(image);
      images.push_back(std::move(image));
    }

    const SingularSystem sys = singular_system(M);
    const double s_max = sys.s.front();
    if (!(s_max > 0.0))
      throw NumericalError("hankel_build: operator is numerically zero");
    int rank = 0;
    for (double s : sys.s)
      if (s > 1e-10 * s_max) ++rank;
    if (rank == m) return HankelOperator{std::move(space), std::move(M), u};

    std::vector<const RationalFunction*> fs;
    fs.reserve(images.size() + 1);
    for (const auto& f : images) fs.push_back(&f);
    fs.push_back(&u);
    BlaschkeProduct smaller = theta_from_observations(fs);
    if (smaller.degree() >= theta.degree())
      throw NumericalError("hankel_build: rank-deficient matrix but no pole of the "
                           "images falls below the coefficient cut");
    theta = std::move(smaller);
  }
  throw NumericalError("hankel_build: rank deficiency persisted after three rebuilds");
}

RationalFunction hankel_apply(const HankelOperator& H, const RationalFunction& f) {
  if (!f.in_l2()) throw InputError("hankel_apply: argument is not square-integrable");
  if (H.space.projection_residual(f) > 1e-8)
    throw InputError("hankel_apply: argument is not in the model space of the operator");

  const RationalFunction direct = apply_symbol(H.symbol, f);
  const Vector c = H.space.orthonormal_coords(f);
  const Vector via_matrix = H.matrix * c.conjugate();
  const RationalFunction matrix_route = H.space.function_from_orthonormal(via_matrix);
  const double scale = 1.0 + l2_norm(direct);
  if (l2_norm(direct - matrix_route) > 1e-9 * scale)
    throw NumericalError("hankel_apply: rational and matrix evaluations disagree");
  return direct;
}

SchmidtDecomposition schmidt_decompose(const HankelOperator& H) {
  const SingularSystem sys = singular_system(H.matrix);
  const int m = static_cast<int>(sys.s.size());
  const double s_max = sys.s.front();
  if (!(s_max > 0.0))
    throw NumericalError("schmidt_decompose: operator is numerically zero");
  const double cluster_tol = 1e-8 * s_max;
  const double null_tol = 1e-10 * s_max;

  SchmidtDecomposition dec;
  int start = 0;
  while (start < m && sys.s[start] > null_tol) {
    int stop = start + 1;
    while (stop < m && sys.s[stop - 1] - sys.s[stop] <= cluster_tol) ++stop;
    const int d = stop - start;
    SchmidtBlock block;
    double mean = 0.0;
    for (int k = start; k < stop; ++k) mean += sys.s[k];
    block.lambda = mean / d;
    block.basis = sys.vectors.block(0, start, m, d);
    // Flag gaps that barely clear the clustering tolerance; the level split
    // is then sensitive to perturbations of the symbol.
    if (stop < m) {
      const double gap = sys.s[stop - 1] - sys.s[stop];
      if (sys.s[stop] > null_tol && gap < 10.0 * cluster_tol)
        dec.marginal_clustering = true;
    }
    dec.blocks.push_back(std::move(block));
    start = stop;
  }
  if (dec.blocks.empty())
    throw NumericalError("schmidt_decompose: no singular value above the null cut");
  return dec;
}

std::vector<SchmidtLevel> schmidt_levels(const HankelOperator& H) {
  const SchmidtDecomposition dec = schmidt_decompose(H);
  const Vector& gh = H.space.g_coords();
  const Matrix A_e = generator_matrix(H.space);

  std::vector<SchmidtLevel> out;
  out.reserve(dec.blocks.size());
  for (const auto& block : dec.blocks) {
    SchmidtLevel lv;
    lv.lambda = block.lambda;
    lv.block = block.basis;

    const Vector gb = block.basis.adjoint() * gh;  // block coordinates of g_j
    const double nu = gb.norm();
    if (nu <= 1e-12 * (1.0 + gh.norm()))
      throw NumericalError("schmidt_levels: 1 - theta has no component on a "
                           "Schmidt subspace");
    lv.nu = nu;
    const Vector ghat = block.basis * gb;  // full coordinates of g_j
    lv.g = H.space.function_from_orthonormal(ghat);

    // <H g, g> = lambda e^{-i phi} nu^2 fixes the phase; g must satisfy the
    // eigen-equation H g = lambda e^{-i phi} g on the nose.
    const Vector Hg = H.matrix * ghat.conjugate();
    const Complex pairing = (ghat.adjoint() * Hg)(0);
    const Complex em = pairing / (lv.lambda * nu * nu);
    if (std::abs(std::abs(em) - 1.0) > 1e-8)
      throw NumericalError("schmidt_levels: phase pairing is not unimodular");
    lv.phi = -std::arg(em);
    if (lv.phi <= -kPi) lv.phi += 2.0 * kPi;
    lv.phase = std::polar(1.0, lv.phi);
    const double eigen_defect = (Hg - lv.lambda * em * ghat).norm() / (lv.lambda * nu);
    if (eigen_defect > 1e-6)
      throw NumericalError("schmidt_levels: g fails the Hankel eigen-equation");

    const Complex aform = (ghat.adjoint() * (A_e * ghat))(0);
    lv.omega = lv.lambda * lv.lambda * aform;
    if (!(lv.omega.imag() > 0.0))
      throw NumericalError("schmidt_levels: Im omega is not positive");

    lv.b = extract_b(A_e, block.basis, gb, lv.omega, nu);
    out.push_back(std::move(lv));
  }
  return out;
}

SpectralData direct_spectral_data(const RationalFunction& u) {
  const HankelOperator H = hankel_build(u);
  const std::vector<SchmidtLevel> levels = schmidt_levels(H);
  SpectralData sd;
  sd.levels.reserve(levels.size());
  for (const auto& lv : levels)
    sd.levels.push_back(SpectralLevel{lv.lambda, lv.phi, lv.omega, lv.b});
  sd.validate();
  return sd;
}

}  // namespace szego
