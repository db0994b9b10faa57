#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "qaut/error.hpp"

namespace qaut {

using Approx = std::complex<double>;

// Gaussian rational: re + im*i with arbitrary-precision rational parts.
struct Exact {
  mpq_class re, im;

  Exact() : re(0), im(0) {}
  Exact(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  Exact(mpq_class r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Exact(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static Exact i() { return Exact(mpq_class(0), mpq_class(1)); }
  // The two-integer mpq_class constructor does not reduce; equality on
  // non-canonical values is unreliable, so reduce here.
  static Exact ratio(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Exact(q);
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return re == 1 && im == 0; }

  Exact conj() const { return Exact(re, -im); }
  // |z|^2, an exact nonnegative rational.
  mpq_class norm() const { return re * re + im * im; }

  Approx embed() const { return Approx(re.get_d(), im.get_d()); }

  friend Exact operator+(const Exact& a, const Exact& b) { return Exact(a.re + b.re, a.im + b.im); }
  friend Exact operator-(const Exact& a, const Exact& b) { return Exact(a.re - b.re, a.im - b.im); }
  friend Exact operator-(const Exact& a) { return Exact(-a.re, -a.im); }
  friend Exact operator*(const Exact& a, const Exact& b) {
    return Exact(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Exact operator/(const Exact& a, const Exact& b) {
    if (b.is_zero()) fail(Errc::DivisionByZero, "division by zero scalar");
    mpq_class n = b.norm();
    Exact c = a * b.conj();
    return Exact(c.re / n, c.im / n);
  }
  Exact& operator+=(const Exact& b) { re += b.re; im += b.im; return *this; }
  Exact& operator-=(const Exact& b) { re -= b.re; im -= b.im; return *this; }
  Exact& operator*=(const Exact& b) { *this = *this * b; return *this; }
  friend bool operator==(const Exact& a, const Exact& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }
};

// Canonical form "a/b+c/d*i" with b,d > 0; exact zero and one shorten to "0" / "1".
std::string to_string(const Exact& v);
// Accepts the canonical form plus common shorthands: "3", "-1/2", "i", "-i",
// "2*i", "1/2-3/4*i". Throws ParseError on malformed input.
Exact parse_scalar(const std::string& text);

// Exact square root in the Gaussian rationals, if one exists.
std::optional<Exact> sqrt_exact(const Exact& z);

// Either exact roots or double-precision fallbacks for a monic quadratic
// q^2 - s q + 1; exact iff the discriminant s^2 - 4 is a perfect square.
struct UnitQuadraticRoots {
  bool exact = false;
  Exact root1, root2;    // meaningful iff exact
  Approx approx1, approx2;  // always filled
};
UnitQuadraticRoots solve_unit_quadratic(const Exact& s);
UnitQuadraticRoots solve_unit_quadratic(const Approx& s);

// Scalar that is exact when possible, with an explicit approximate fallback.
struct ScalarValue {
  bool exact = true;
  Exact ev;
  Approx av{0.0, 0.0};

  static ScalarValue make_exact(Exact v) {
    ScalarValue s;
    s.exact = true;
    s.av = v.embed();
    s.ev = std::move(v);
    return s;
  }
  static ScalarValue make_approx(Approx v) {
    ScalarValue s;
    s.exact = false;
    s.av = v;
    return s;
  }
};

// Multiplicative order of q up to `bound` (repeated multiplication; exact
// equality, or |q^k - 1| < tol in the approximate overload). nullopt if no
// power hits one. q = 0 raises ZeroInput.
std::optional<int> root_of_unity_order(const Exact& q, int bound = 64);
std::optional<int> root_of_unity_order(const Approx& q, int bound = 64, double tol = 1e-9);

// Deformation-parameter classification. Generic covers q in {+1,-1} and
// every q that is not a root of unity up to the bound; otherwise N >= 3 is
// the order, N0 = N for odd N and N/2 for even N, and N0 = 2*N1 (even
// parity) or N0 = 2*N1 - 1 (odd parity).
struct QClass {
  enum class Kind { Generic, NonGeneric } kind = Kind::Generic;
  int order_N = 0;  // meaningful iff NonGeneric
  int N0 = 0;
  int N1 = 0;
  enum class Parity { Even, Odd } parity = Parity::Even;
};
QClass classify_q(const Exact& q, int bound = 64);
QClass classify_q(const Approx& q, int bound = 64, double tol = 1e-9);

}  // namespace qaut
