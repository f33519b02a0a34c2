#pragma once

#include <vector>

#include "szego/model_space.hpp"
#include "szego/rational.hpp"
#include "szego/spectral_data.hpp"
#include "szego/types.hpp"

namespace szego {

// Anti-linear Hankel operator H_u f = P_+(u conj f) restricted to its range
// K_theta, in the orthonormal basis: H_u(sum c_k e_k) = sum_j (M conj(c))_j e_j
// with M complex symmetric.
struct HankelOperator {
  ModelSpace space;
  Matrix matrix;          // symmetric m x m
  RationalFunction symbol;
};

// Builds theta from the reflected poles of u, assembles M column by column
// via rational algebra, and shrinks theta if the operator is rank-deficient
// (non-generic cancellations). Throws InputError for the zero symbol, real
// poles, or a nonzero value at infinity.
HankelOperator hankel_build(const RationalFunction& u);

// P_+(u conj f) for f in K_theta (projection residual <= 1e-8, else
// InputError). Computed by rational algebra and cross-checked against the
// matrix action; disagreement beyond 1e-9 raises NumericalError.
RationalFunction hankel_apply(const HankelOperator& H, const RationalFunction& f);

// One eigenvalue cluster of H_u^2 = M conj(M).
struct SchmidtBlock {
  double lambda = 0.0;  // singular value, sqrt of the clustered eigenvalue
  Matrix basis;         // m x d, orthonormal columns spanning the subspace
};

struct SchmidtDecomposition {
  std::vector<SchmidtBlock> blocks;  // sorted by decreasing lambda
  // Set when some eigenvalue gap is within 10x of the clustering tolerance;
  // the split into levels is then not trustworthy.
  bool marginal_clustering = false;
};

// Eigendecomposition of M conj(M) with eigenvalues clustered into Schmidt
// levels at relative gap 1e-8.
SchmidtDecomposition schmidt_decompose(const HankelOperator& H);

// Everything the direct map derives per level before assembling SpectralData.
struct SchmidtLevel {
  double lambda = 0.0;
  Matrix block;         // orthonormal columns (coordinates in the model space)
  RationalFunction g;   // projection of 1 - theta onto the subspace
  double nu = 0.0;      // ||g||
  Complex phase{1.0};   // e^{i phi}
  double phi = 0.0;
  Complex omega{0.0};
  HerglotzData b;
};

// Full per-level data of the direct spectral map.
std::vector<SchmidtLevel> schmidt_levels(const HankelOperator& H);

// The direct map: rational Hardy symbol to spectral data, levels sorted by
// decreasing lambda.
SpectralData direct_spectral_data(const RationalFunction& u);

}  // namespace szego
