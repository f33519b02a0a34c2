#pragma once

#include <utility>
#include <vector>

#include "szego/blaschke.hpp"
#include "szego/rational.hpp"
#include "szego/spectral_data.hpp"
#include "szego/types.hpp"

namespace szego {

// The N x N matrix with off-diagonal entries
//   A_kj = (i/2pi) (lambda_j^2 - lambda_j lambda_k e^{i(phi_j - phi_k)}) / (lambda_j^2 - lambda_k^2)
// and diagonal A_jj = omega_j / (4 pi Im omega_j). Its imaginary part is the
// rank-one form (1/4pi) J and its eigenvalues lie in the open upper half-plane.
Matrix build_A(const SpectralData& sd);

// Q(x) = A^H - x D(nu^2)^{-1} - D(b(x)); invertible for Im x > 0.
Matrix build_Q(const SpectralData& sd, Complex x);
// Q^#(x): same with A in place of A^H.
Matrix build_Q_sharp(const SpectralData& sd, Complex x);

// u(x) = (1/2pi i) <Q(x)^{-1} D(lambda) D(e^{-i phi}) 1, 1>, computed exactly
// through pole-cleared polynomial determinants so the real singularities of b
// cancel symbolically. Hardy class with u(inf) = 0; N = 0 gives the zero
// function.
RationalFunction reconstruct_u(const SpectralData& sd);

// g(x) = (1/2pi i) (Q(x)^T)^{-1} 1 componentwise: the unnormalized Schmidt
// vectors, pairwise orthogonal with ||g_j|| = nu_j.
std::vector<RationalFunction> reconstruct_g(const SpectralData& sd);

// Isometric multipliers p_j = i e^{-i phi_j/2} (||1-psi_j||/nu_j) g_j/(1-psi_j)
// for the orbit representatives psi_j = psi_from_b(b_j, nu_j^2), plus theta
// recovered from the poles of det Q and cross-checked against det Q^#.
std::pair<std::vector<RationalFunction>, BlaschkeProduct> reconstruct_p_theta(
    const SpectralData& sd);

// Cayley-transform data of the completely non-unitary contraction behind the
// multipliers: B = (conj(A2) - i)^{-1}(conj(A2) + i) and the defect vector
// beta, satisfying B B^H + beta beta^H = I.
struct ContractionRep {
  Matrix B;
  Vector beta;
};

ContractionRep contraction_representation(const SpectralData& sd);

// Defect norms of the identity suite; every field is a supremum over the
// relevant index set or probe grid.
struct IdentityReport {
  double q_inverse_sup = 0.0;        // max ||Q(x)^{-1}|| over the upper-half-plane grid
  double c2_defect = 0.0;            // Im A vs (1/4pi) all-ones
  double c3_defect = 0.0;            // A^H D(lambda e^{-i phi}) vs D(...) conj(A)
  double min_im_eigenvalue_A = 0.0;  // must stay positive
  double gram_defect = 0.0;          // Gram of g vs D(nu^2), relative
  double omega_defect = 0.0;         // <A_theta g_j, g_j> vs omega_j/lambda_j^2
  double contraction_defect = 0.0;   // B B^H + beta beta^H vs I

  // All defects within tol, eigenvalues strictly upper, Q-inverse finite.
  bool pass(double tol) const;
};

// Runs the full identity suite on validated data. N = 0 passes trivially.
IdentityReport verify_spectral_identities(const SpectralData& sd);

}  // namespace szego
