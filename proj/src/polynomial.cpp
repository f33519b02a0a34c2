#include "szego/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace szego {

namespace {
constexpr double kTrimRel = 1e-13;
}

void ComplexPolynomial::trim() {
  double scale = 0.0;
  for (const auto& c : coef_) scale = std::max(scale, std::abs(c));
  const double cut = scale * kTrimRel;
  while (!coef_.empty() && std::abs(coef_.back()) <= cut) coef_.pop_back();
}

double ComplexPolynomial::max_abs_coeff() const {
  double scale = 0.0;
  for (const auto& c : coef_) scale = std::max(scale, std::abs(c));
  return scale;
}

ComplexPolynomial ComplexPolynomial::from_roots(const std::vector<Complex>& roots,
                                                Complex leading) {
  ComplexPolynomial p{leading};
  for (const auto& r : roots) p.mul_linear(r);
  return p;
}

Complex ComplexPolynomial::operator()(Complex x) const {
  Complex acc(0.0);
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (coef_.size() <= 1) return {};
  std::vector<Complex> d(coef_.size() - 1);
  for (size_t k = 1; k < coef_.size(); ++k) d[k - 1] = static_cast<double>(k) * coef_[k];
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::conj_reflect() const {
  std::vector<Complex> c(coef_.size());
  for (size_t k = 0; k < coef_.size(); ++k) c[k] = std::conj(coef_[k]);
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial& ComplexPolynomial::operator+=(const ComplexPolynomial& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), Complex(0.0));
  for (size_t k = 0; k < o.coef_.size(); ++k) coef_[k] += o.coef_[k];
  trim();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator-=(const ComplexPolynomial& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), Complex(0.0));
  for (size_t k = 0; k < o.coef_.size(); ++k) coef_[k] -= o.coef_[k];
  trim();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    coef_.clear();
    return *this;
  }
  for (auto& c : coef_) c *= s;
  return *this;
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coef_.size() + b.coef_.size() - 1, Complex(0.0));
  for (size_t i = 0; i < a.coef_.size(); ++i)
    for (size_t j = 0; j < b.coef_.size(); ++j) c[i + j] += a.coef_[i] * b.coef_[j];
  return ComplexPolynomial(std::move(c));
}

std::pair<ComplexPolynomial, ComplexPolynomial> ComplexPolynomial::divide(
    const ComplexPolynomial& num, const ComplexPolynomial& den) {
  if (den.is_zero()) throw InputError("polynomial division by zero");
  if (num.degree() < den.degree()) return {ComplexPolynomial{}, num};
  std::vector<Complex> rem = num.coef_;
  const int dn = num.degree();
  const int dd = den.degree();
  std::vector<Complex> quo(dn - dd + 1, Complex(0.0));
  const Complex lead = den.coef_.back();
  for (int k = dn - dd; k >= 0; --k) {
    const Complex q = rem[k + dd] / lead;
    quo[k] = q;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= q * den.coef_[j];
  }
  rem.resize(dd > 0 ? dd : 0);
  return {ComplexPolynomial(std::move(quo)), ComplexPolynomial(std::move(rem))};
}

void ComplexPolynomial::mul_linear(Complex a) {
  if (coef_.empty()) return;
  coef_.push_back(Complex(0.0));
  for (size_t k = coef_.size() - 1; k > 0; --k) coef_[k] = coef_[k - 1] - a * coef_[k];
  coef_[0] = -a * coef_[0];
}

Complex ComplexPolynomial::deflate(Complex a) {
  if (coef_.empty()) return Complex(0.0);
  Complex carry(0.0);
  for (size_t k = coef_.size(); k-- > 0;) {
    const Complex tmp = coef_[k];
    coef_[k] = carry;
    carry = tmp + a * carry;
  }
  // coef_ now holds the quotient in place with a vacated (zeroed) top slot.
  coef_.pop_back();
  trim();
  return carry;
}

std::vector<Complex> ComplexPolynomial::taylor_at(Complex z0, int order) const {
  // Repeated synthetic division (Horner shift).
  std::vector<Complex> work = coef_;
  std::vector<Complex> out(order + 1, Complex(0.0));
  for (int j = 0; j <= order; ++j) {
    if (work.empty()) break;
    // One synthetic-division pass by (x - z0): work[0] becomes the remainder
    // p(z0) and work[1..] the quotient coefficients, already in place.
    for (size_t k = work.size() - 1; k-- > 0;) work[k] += z0 * work[k + 1];
    out[j] = work[0];
    work.erase(work.begin());
  }
  return out;
}

std::vector<Complex> polynomial_roots(const ComplexPolynomial& p) {
  if (p.is_zero()) throw InputError("root finding on the zero polynomial");
  const int n = p.degree();
  if (n == 0) return {};
  const auto& c = p.coefficients();
  Matrix companion = Matrix::Zero(n, n);
  const Complex lead = c.back();
  for (int k = 0; k < n; ++k) companion(k, n - 1) = -c[k] / lead;
  for (int k = 1; k < n; ++k) companion(k, k - 1) = Complex(1.0);
  Eigen::ComplexEigenSolver<Matrix> es(companion, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalError("companion eigenvalue iteration failed to converge");
  std::vector<Complex> roots(n);
  const ComplexPolynomial dp = p.derivative();
  for (int k = 0; k < n; ++k) {
    Complex z = es.eigenvalues()(k);
    for (int step = 0; step < 2; ++step) {
      const Complex pv = p(z);
      const Complex dv = dp(z);
      if (std::abs(dv) < 1e-14 * (1.0 + std::abs(pv))) break;  // multiple root; keep estimate
      const Complex dz = pv / dv;
      if (std::abs(dz) > 0.1 * (1.0 + std::abs(z))) break;  // reject wild steps
      z -= dz;
    }
    roots[k] = z;
  }
  return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots,
                                       double rel_tol) {
  std::vector<Complex> sorted = roots;
  std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  struct Acc {
    Complex sum;
    int count;
  };
  std::vector<Acc> acc;
  for (const auto& z : sorted) {
    bool placed = false;
    for (auto& a : acc) {
      const Complex center = a.sum / static_cast<double>(a.count);
      if (std::abs(z - center) <= rel_tol * (1.0 + std::abs(center))) {
        a.sum += z;
        a.count += 1;
        placed = true;
        break;
      }
    }
    if (!placed) acc.push_back({z, 1});
  }
  std::vector<RootCluster> out;
  out.reserve(acc.size());
  for (const auto& a : acc)
    out.push_back({a.sum / static_cast<double>(a.count), a.count});
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

}  // namespace szego
