#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "szego/types.hpp"

namespace szego {

// Dense complex polynomial, coefficients stored by ascending degree.
// The zero polynomial has an empty coefficient list and degree -1.
// Trailing coefficients below 1e-13 of the largest magnitude are trimmed on
// construction so that degree queries stay meaningful after cancellations.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  ComplexPolynomial(std::initializer_list<Complex> ascending)
      : coef_(ascending) {
    trim();
  }
  explicit ComplexPolynomial(std::vector<Complex> ascending)
      : coef_(std::move(ascending)) {
    trim();
  }

  static ComplexPolynomial constant(Complex c) { return ComplexPolynomial{c}; }
  // p(x) = x
  static ComplexPolynomial variable() { return ComplexPolynomial{Complex(0.0), Complex(1.0)}; }
  // leading * prod (x - r_i)
  static ComplexPolynomial from_roots(const std::vector<Complex>& roots,
                                      Complex leading = Complex(1.0));

  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  bool is_zero() const { return coef_.empty(); }
  const std::vector<Complex>& coefficients() const { return coef_; }
  // Coefficient of x^k; zero beyond the degree.
  Complex coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coef_.size())) ? coef_[k] : Complex(0.0);
  }
  Complex leading_coefficient() const { return coef_.empty() ? Complex(0.0) : coef_.back(); }
  double max_abs_coeff() const;

  Complex operator()(Complex x) const;  // Horner evaluation
  ComplexPolynomial derivative() const;
  // p*(x) = conj(p(conj x)): conjugate all coefficients.
  ComplexPolynomial conj_reflect() const;

  ComplexPolynomial& operator+=(const ComplexPolynomial& o);
  ComplexPolynomial& operator-=(const ComplexPolynomial& o);
  ComplexPolynomial& operator*=(Complex s);

  friend ComplexPolynomial operator+(ComplexPolynomial a, const ComplexPolynomial& b) {
    a += b;
    return a;
  }
  friend ComplexPolynomial operator-(ComplexPolynomial a, const ComplexPolynomial& b) {
    a -= b;
    return a;
  }
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator*(Complex s, ComplexPolynomial p) {
    p *= s;
    return p;
  }
  friend ComplexPolynomial operator*(ComplexPolynomial p, Complex s) {
    p *= s;
    return p;
  }
  friend ComplexPolynomial operator-(ComplexPolynomial p) {
    p *= Complex(-1.0);
    return p;
  }

  // Long division: num = quotient * den + remainder, deg remainder < deg den.
  static std::pair<ComplexPolynomial, ComplexPolynomial> divide(const ComplexPolynomial& num,
                                                                const ComplexPolynomial& den);

  // Multiply by (x - a) in place (exact shift-and-subtract).
  void mul_linear(Complex a);
  // Synthetic division by (x - a); returns the remainder p(a).
  Complex deflate(Complex a);
  // Taylor coefficients of p(z0 + t) in t, up to and including order `order`.
  std::vector<Complex> taylor_at(Complex z0, int order) const;

 private:
  std::vector<Complex> coef_;
  void trim();
};

// Roots with multiplicity recovered by clustering nearby eigenvalues.
struct RootCluster {
  Complex center;
  int multiplicity;
};

// Companion-matrix eigenvalues followed by two Newton polish steps.
// Throws InputError for the zero polynomial; degree 0 yields no roots.
std::vector<Complex> polynomial_roots(const ComplexPolynomial& p);

// Merge roots within |p - q| <= rel_tol * (1 + |p|); cluster center is the
// mean, which for a split multiple root is far more accurate than its
// members. Callers expecting multiple roots from an eigensolve (splitting
// ~ sqrt(machine eps)) should pass a wider radius such as 1e-6.
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots,
                                       double rel_tol = 1e-8);

}  // namespace szego
