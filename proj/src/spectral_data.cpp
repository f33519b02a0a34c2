#include "szego/spectral_data.hpp"

#include <cmath>
#include <sstream>

namespace szego {

double SpectralLevel::nu_sq() const {
  return std::sqrt(4.0 * kPi * omega.imag()) / lambda;
}

int SpectralData::total_dimension() const {
  int total = 0;
  for (const auto& lv : levels) total += lv.dimension();
  return total;
}

void SpectralData::validate() const {
  for (size_t j = 0; j < levels.size(); ++j) {
    const auto& lv = levels[j];
    std::ostringstream where;
    where << "spectral data level " << j << ": ";
    if (!(lv.lambda > 0.0)) throw InputError(where.str() + "lambda must be positive");
    if (!(lv.omega.imag() > 0.0)) throw InputError(where.str() + "Im omega must be positive");
    if (j + 1 < levels.size() && !(lv.lambda > levels[j + 1].lambda))
      throw InputError(where.str() + "lambdas must be strictly decreasing");
    if (lv.b.poles.size() != lv.b.residues.size())
      throw InputError(where.str() + "b poles/residues length mismatch");
    if (lv.b.constant != 0.0)
      throw InputError(where.str() + "b constant part must be zero");
    for (size_t k = 0; k < lv.b.poles.size(); ++k) {
      if (!std::isfinite(lv.b.poles[k]))
        throw InputError(where.str() + "b poles must be finite");
      if (!(lv.b.residues[k] >= 0.0))
        throw InputError(where.str() + "b residues must be nonnegative");
      if (k > 0 && !(lv.b.poles[k] > lv.b.poles[k - 1]))
        throw InputError(where.str() + "b poles must be sorted and distinct");
    }
  }
}

}  // namespace szego
