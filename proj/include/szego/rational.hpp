#pragma once

#include <utility>
#include <vector>

#include "szego/polynomial.hpp"
#include "szego/types.hpp"

namespace szego {

// One pole group of a partial-fraction expansion; the group contributes
//   sum_k coeffs[k] / (x - z)^{k+1}.
struct PoleTerm {
  Complex z;
  std::vector<Complex> coeffs;

  int order() const { return static_cast<int>(coeffs.size()); }
};

// Complex rational function in partial-fraction form: a polynomial part plus
// pole groups. Canonical form keeps the pole list sorted lexicographically by
// (Re, Im) and merges locations that agree within the clustering tolerance,
// so equality-style comparisons and serialization are deterministic.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(ComplexPolynomial poly, std::vector<PoleTerm> poles);

  static RationalFunction from_poly(ComplexPolynomial p) {
    return RationalFunction(std::move(p), {});
  }
  // residue / (x - z)
  static RationalFunction simple_pole(Complex z, Complex residue) {
    return RationalFunction(ComplexPolynomial{}, {PoleTerm{z, {residue}}});
  }

  const ComplexPolynomial& polynomial_part() const { return poly_; }
  const std::vector<PoleTerm>& poles() const { return poles_; }

  bool is_zero() const { return poly_.is_zero() && poles_.empty(); }
  // Hardy class of the upper half-plane: no polynomial part, all poles in the
  // open lower half-plane.
  bool is_hardy() const;
  // Square-integrable on the real line: no polynomial part, no real poles.
  bool in_l2() const;

  Complex operator()(Complex x) const;
  RationalFunction derivative() const;
  // r*(x) = conj(r(conj x)): reflects poles across the real axis.
  RationalFunction conj_reflect() const;

  // (num, den) with den = prod (x - z_i)^{order_i} monic.
  std::pair<ComplexPolynomial, ComplexPolynomial> to_fraction() const;

  // Largest coefficient magnitude across polynomial part and pole groups;
  // used as the scale for relative tolerances.
  double coeff_scale() const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(Complex s);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) {
    a += b;
    return a;
  }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) {
    a -= b;
    return a;
  }
  friend RationalFunction operator*(Complex s, RationalFunction r) {
    r *= s;
    return r;
  }
  friend RationalFunction operator*(RationalFunction r, Complex s) {
    r *= s;
    return r;
  }
  friend RationalFunction operator-(RationalFunction r) {
    r *= Complex(-1.0);
    return r;
  }
  // Exact product: multiplies fraction forms and re-expands over the union of
  // the known pole locations (no root finding).
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);

 private:
  ComplexPolynomial poly_;
  std::vector<PoleTerm> poles_;
  void canonicalize();
};

// Partial-fraction expansion of num/den. Roots of den are located by the
// companion-matrix solver and merged into multiplicity clusters. The result
// is verified against num/den on a probe grid; persistent disagreement raises
// NumericalError with the worst residual in the message.
RationalFunction partial_fractions(const ComplexPolynomial& num, const ComplexPolynomial& den);

// Same expansion when the denominator roots are already known, as
// den = den_leading * prod (x - cluster.center)^{cluster.multiplicity}.
// Skips root finding entirely; used for products and basis construction.
RationalFunction partial_fractions_known(const ComplexPolynomial& num,
                                         const std::vector<RootCluster>& den_roots,
                                         Complex den_leading);

// Quotient a/b expanded back to partial fractions. Roots of b's numerator are
// located numerically, so prefer algebraic cancellation when they are known.
RationalFunction rational_divide(const RationalFunction& a, const RationalFunction& b);

// Riesz projection onto the Hardy class: keeps the pole groups in the open
// lower half-plane. Requires r to be square-integrable.
RationalFunction hardy_project(const RationalFunction& r);

// int f(x) conj(g(x)) dx over the real line by residue calculus, linear in f.
// Requires both arguments square-integrable.
Complex l2_inner(const RationalFunction& f, const RationalFunction& g);

double l2_norm(const RationalFunction& f);

// Coefficients (L1, L2) of the expansion r(x) = r(inf) + L1/x + L2/x^2 + ...
// Requires r bounded at infinity (polynomial part of degree <= 0).
std::pair<Complex, Complex> laurent_coeffs(const RationalFunction& r);

}  // namespace szego
