#pragma once

#include <vector>

#include "szego/blaschke.hpp"
#include "szego/types.hpp"

namespace szego {

// One level of spectral data: a singular value with its phase, the moment
// omega = lambda^2 <A g, g>, and the shift-invariant pole data b of the inner
// function attached to the level's Schmidt subspace.
struct SpectralLevel {
  double lambda = 0.0;   // singular value, > 0
  double phi = 0.0;      // phase in (-pi, pi]
  Complex omega{0.0};    // Im omega > 0
  HerglotzData b;        // real poles, nonnegative residues, zero constant

  // nu^2 = ||g||^2 is determined by lambda and omega: 4 pi Im omega = lambda^2 nu^4.
  double nu_sq() const;
  // Level multiplicity: 1 + number of poles of b.
  int dimension() const { return 1 + static_cast<int>(b.poles.size()); }
};

// Full spectral data set, levels ordered by strictly decreasing lambda.
struct SpectralData {
  std::vector<SpectralLevel> levels;

  int size() const { return static_cast<int>(levels.size()); }
  // Total dimension sum, equal to the degree of the reconstructed theta.
  int total_dimension() const;
  // Throws InputError naming the violated invariant: lambdas positive and
  // strictly decreasing, Im omega > 0, b poles real/sorted/distinct with
  // nonnegative residues and zero constant part.
  void validate() const;
};

}  // namespace szego
