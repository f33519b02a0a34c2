#include "szego/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace szego {

namespace {

void require_normalized(const BlaschkeProduct& psi, const char* who) {
  if (!psi.normalized()) {
    std::ostringstream msg;
    msg << who << ": Blaschke product must be normalized at infinity";
    throw InputError(msg.str());
  }
}

// Monic polynomial with the product's zeros; and with their conjugates.
ComplexPolynomial zero_poly(const BlaschkeProduct& psi) {
  return ComplexPolynomial::from_roots(psi.zeros());
}

ComplexPolynomial conj_zero_poly(const BlaschkeProduct& psi) {
  std::vector<Complex> cz;
  cz.reserve(psi.zeros().size());
  for (const auto& a : psi.zeros()) cz.push_back(std::conj(a));
  return ComplexPolynomial::from_roots(cz);
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(std::vector<Complex> zeros, Complex phase)
    : zeros_(std::move(zeros)), phase_(phase) {
  for (const auto& a : zeros_) {
    if (!(a.imag() > 0.0)) {
      std::ostringstream msg;
      msg << "Blaschke zero " << a.real() << (a.imag() < 0 ? "" : "+") << a.imag()
          << "i is not in the open upper half-plane";
      throw InputError(msg.str());
    }
  }
  const double mag = std::abs(phase_);
  if (std::abs(mag - 1.0) > 1e-8)
    throw InputError("Blaschke phase must be unimodular");
  phase_ /= mag;
  std::sort(zeros_.begin(), zeros_.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

Complex BlaschkeProduct::operator()(Complex x) const {
  Complex v = phase_;
  for (const auto& a : zeros_) v *= (x - a) / (x - std::conj(a));
  return v;
}

RationalFunction BlaschkeProduct::as_rational() const {
  if (zeros_.empty()) return RationalFunction::from_poly(ComplexPolynomial::constant(phase_));
  std::vector<Complex> cz;
  cz.reserve(zeros_.size());
  for (const auto& a : zeros_) cz.push_back(std::conj(a));
  return partial_fractions_known(phase_ * zero_poly(*this), cluster_roots(cz), Complex(1.0));
}

Complex herglotz_full_eval(const HerglotzData& h, Complex x) {
  return x + herglotz_pole_sum(h, x);
}

Complex herglotz_pole_sum(const HerglotzData& h, Complex x) {
  Complex acc(h.constant);
  for (size_t k = 0; k < h.poles.size(); ++k) acc += h.residues[k] / (h.poles[k] - x);
  return acc;
}

double one_minus_norm_sq(const BlaschkeProduct& psi) {
  require_normalized(psi, "one_minus_norm_sq");
  const auto [l1, l2] = laurent_coeffs(psi.as_rational());
  (void)l2;
  const Complex val = 2.0 * kPi * kI * l1;
  if (std::abs(val.imag()) > 1e-9 * (1.0 + std::abs(val)))
    throw NumericalError("||1-psi||^2 came out non-real");
  return val.real();
}

BlaschkeProduct frostman_shift(const BlaschkeProduct& psi, Complex w) {
  if (std::abs(w) >= 1.0) throw InputError("frostman_shift: |w| must be < 1");
  require_normalized(psi, "frostman_shift");
  if (w == Complex(0.0)) return psi;
  if (psi.degree() == 0) return psi;
  // Zeros of the shifted product solve psi(x) = w in the upper half-plane.
  const ComplexPolynomial num = w * conj_zero_poly(psi) - psi.phase() * zero_poly(psi);
  std::vector<Complex> roots = polynomial_roots(num);
  for (const auto& r : roots) {
    if (!(r.imag() > 0.0))
      throw NumericalError("frostman_shift: shifted zero left the upper half-plane");
  }
  return BlaschkeProduct(std::move(roots));
}

HerglotzData herglotz_of(const BlaschkeProduct& psi) {
  require_normalized(psi, "herglotz_of");
  if (psi.degree() == 0)
    throw InputError("herglotz_of: constant Blaschke product carries no Herglotz data");

  const auto [l1, l2] = laurent_coeffs(psi.as_rational());
  const Complex n2c = 2.0 * kPi * kI * l1;
  if (std::abs(n2c.imag()) > 1e-9 * (1.0 + std::abs(n2c)) || n2c.real() <= 0.0)
    throw NumericalError("herglotz_of: ||1-psi||^2 must be real positive");
  const double n2 = n2c.real();
  const double shift_const = (l2 / l1 - 0.5 * l1).real();

  // (1+psi)/(1-psi) = (q + p)/(q - p) with p, q the monic zero polynomials.
  const ComplexPolynomial p = zero_poly(psi);
  const ComplexPolynomial q = conj_zero_poly(psi);
  const ComplexPolynomial nplus = q + p;
  ComplexPolynomial nminus = q - p;
  if (nminus.degree() != psi.degree() - 1)
    throw NumericalError("herglotz_of: unexpected cancellation in 1-psi");

  // Solutions of psi = 1 are real and simple; snap off floating noise.
  std::vector<Complex> roots = psi.degree() > 1 ? polynomial_roots(nminus) : std::vector<Complex>{};
  for (auto& r : roots) {
    if (std::abs(r.imag()) > 1e-9 * (1.0 + std::abs(r.real())))
      throw NumericalError("herglotz_of: a solution of psi=1 strayed off the real axis");
    r = Complex(r.real(), 0.0);
  }
  auto clusters = cluster_roots(roots);
  for (const auto& c : clusters) {
    if (c.multiplicity != 1)
      throw NumericalError("herglotz_of: could not separate the solutions of psi=1");
  }

  const Complex scale = kI * (n2 / (4.0 * kPi));
  const RationalFunction h =
      partial_fractions_known(scale * nplus, clusters, nminus.leading_coefficient());

  // The linear part must be exactly x once the constant is folded in.
  const ComplexPolynomial& lin = h.polynomial_part();
  if (std::abs(lin.coeff(1) - Complex(1.0)) > 1e-9)
    throw NumericalError("herglotz_of: linear term failed to normalize");
  const Complex b_slot = lin.coeff(0) + shift_const;
  if (std::abs(b_slot) > 1e-8 * (1.0 + std::abs(lin.coeff(0)) + std::abs(shift_const)))
    throw NumericalError("herglotz_of: constant term failed to vanish");

  HerglotzData out;
  for (const auto& g : h.poles()) {
    // group coeff r/(x - alpha) is stored as c/(alpha - x) with c = -r >= 0
    const Complex r = g.coeffs[0];
    if (g.coeffs.size() > 1)
      throw NumericalError("herglotz_of: double pole in Herglotz data");
    if (std::abs(r.imag()) > 1e-9 * (1.0 + std::abs(r)))
      throw NumericalError("herglotz_of: residue came out non-real");
    const double c = -r.real();
    if (c < -1e-9 * (1.0 + std::abs(r)))
      throw NumericalError("herglotz_of: negative residue in Herglotz data");
    out.poles.push_back(g.z.real());
    out.residues.push_back(std::max(0.0, c));
  }
  out.constant = 0.0;
  return out;
}

HerglotzData level_b(const BlaschkeProduct& psi, double nu_sq) {
  if (!(nu_sq > 0.0)) throw InputError("level_b: nu_sq must be positive");
  HerglotzData h = herglotz_of(psi);
  for (auto& c : h.residues) c /= nu_sq;
  return h;
}

BlaschkeProduct psi_from_b(const HerglotzData& b, double nu_sq, double kappa, double B) {
  if (!(kappa > 0.0)) throw InputError("psi_from_b: kappa must be positive");
  if (!(nu_sq > 0.0)) throw InputError("psi_from_b: nu_sq must be positive");
  const size_t n = b.poles.size();
  if (b.residues.size() != n) throw InputError("psi_from_b: poles/residues length mismatch");
  for (double c : b.residues)
    if (c < 0.0) throw InputError("psi_from_b: residues must be nonnegative");

  // h * D where D = prod (x - alpha_k):
  //   (x + B) D - sum_k nu_sq c_k prod_{l != k} (x - alpha_l)
  ComplexPolynomial D = ComplexPolynomial::constant(Complex(1.0));
  for (double a : b.poles) D.mul_linear(Complex(a, 0.0));
  ComplexPolynomial hD = ComplexPolynomial{Complex(B), Complex(1.0)} * D;
  for (size_t k = 0; k < n; ++k) {
    ComplexPolynomial cof = ComplexPolynomial::constant(Complex(1.0));
    for (size_t l = 0; l < n; ++l)
      if (l != k) cof.mul_linear(Complex(b.poles[l], 0.0));
    hD -= (nu_sq * b.residues[k]) * cof;
  }
  const ComplexPolynomial num = hD - (kappa * kI) * D;
  std::vector<Complex> zeros = polynomial_roots(num);
  if (static_cast<int>(zeros.size()) != static_cast<int>(n) + 1)
    throw NumericalError("psi_from_b: unexpected degree drop");
  for (const auto& z : zeros) {
    if (!(z.imag() > 0.0))
      throw NumericalError("psi_from_b: a zero failed to land in the upper half-plane");
  }
  return BlaschkeProduct(std::move(zeros));
}

}  // namespace szego
