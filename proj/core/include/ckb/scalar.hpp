#ifndef CKB_SCALAR_HPP_
#define CKB_SCALAR_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ckb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Base class for all library errors. The CLI maps subclasses to exit codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or string.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Structurally invalid object (zero row/column, bad stochastic matrix,
/// size mismatch between inputs, ...).
struct InvalidInputError : Error {
  explicit InvalidInputError(const std::string& what) : Error(what) {}
};

/// Operation applied outside its domain (non-linked word, word not in D_e, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A number that is an exact rational whenever all of its inputs were.
///
/// Arithmetic between two exact values stays exact; as soon as an inexact
/// value (e.g. an irrational Perron eigenvalue) enters an expression the
/// result degrades to double. Equality between exact values is decided in
/// rational arithmetic, otherwise within a tolerance.
class Scalar {
 public:
  Scalar() : exact_(true), rat_(0), approx_(0.0) {}
  Scalar(int v) : exact_(true), rat_(v), approx_(double(v)) {}
  Scalar(long long v) : exact_(true), rat_(v), approx_(double(v)) {}
  Scalar(const Rat& r) : exact_(true), rat_(r), approx_(r.convert_to<double>()) {}

  static Scalar approx(double v) {
    Scalar s;
    s.exact_ = false;
    s.rat_ = 0;
    s.approx_ = v;
    return s;
  }

  bool exact() const { return exact_; }

  const Rat& rat() const {
    if (!exact_) throw DomainError("Scalar::rat() on inexact value");
    return rat_;
  }

  double as_double() const { return exact_ ? rat_.convert_to<double>() : approx_; }

  Scalar operator+(const Scalar& o) const { return combine(o, rat_ + o.rat_, as_double() + o.as_double()); }
  Scalar operator-(const Scalar& o) const { return combine(o, rat_ - o.rat_, as_double() - o.as_double()); }
  Scalar operator*(const Scalar& o) const { return combine(o, rat_ * o.rat_, as_double() * o.as_double()); }
  Scalar operator/(const Scalar& o) const {
    if (o.is_exact_zero() || (!o.exact_ && o.approx_ == 0.0))
      throw DomainError("Scalar division by zero");
    return combine(o, (exact_ && o.exact_) ? rat_ / o.rat_ : Rat(0), as_double() / o.as_double());
  }
  Scalar operator-() const { return exact_ ? Scalar(Rat(-rat_)) : approx(-approx_); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool is_exact_zero() const { return exact_ && rat_ == 0; }

  bool is_zero(double tol = 1e-10) const {
    return exact_ ? rat_ == 0 : std::fabs(approx_) <= tol;
  }

  bool is_positive(double tol = 1e-12) const {
    return exact_ ? rat_ > 0 : approx_ > tol;
  }

  /// Equality: exact when both operands are exact, tolerance otherwise.
  bool same(const Scalar& o, double tol = 1e-10) const {
    if (exact_ && o.exact_) return rat_ == o.rat_;
    return std::fabs(as_double() - o.as_double()) <= tol;
  }

  Scalar abs() const {
    if (exact_) return Scalar(Rat(rat_ < 0 ? -rat_ : rat_));
    return approx(std::fabs(approx_));
  }

  bool less_than(const Scalar& o) const {
    if (exact_ && o.exact_) return rat_ < o.rat_;
    return as_double() < o.as_double();
  }

  /// "p/q" (or "p") for exact values, shortest-roundtrip decimal otherwise.
  std::string str() const;

 private:
  Scalar combine(const Scalar& o, Rat exact_value, double approx_value) const {
    if (exact_ && o.exact_) return Scalar(exact_value);
    return approx(approx_value);
  }

  bool exact_;
  Rat rat_;
  double approx_;
};

/// Exact square root when the operand is a perfect rational square,
/// double otherwise.
Scalar sqrt_scalar(const Scalar& s);

/// Parses "p/q", an integer string, or a decimal string (decimal -> inexact).
Scalar parse_scalar(const std::string& text);

/// Parses a rational-only string ("p/q" or integer); rejects decimals.
Rat parse_rational(const std::string& text);

std::string rational_str(const Rat& r);

}  // namespace ckb

#endif  // CKB_SCALAR_HPP_
