#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace gms {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Error thrown when operands from different fields are mixed, or an
/// operation is requested over an unsupported field.
struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FieldKind : std::uint8_t {
  prime,              // F_p, p prime < 2^31
  rational,           // Q
  gaussian_rational,  // Q(i)
  complex64,          // machine-precision complex
};

/// Field descriptor carried by every scalar and matrix. No implicit
/// coercions anywhere: mixing tags throws FieldError.
struct Field {
  FieldKind kind = FieldKind::rational;
  std::int64_t p = 0;  // modulus, prime fields only

  static Field fp(std::int64_t p);
  static Field q() { return Field{FieldKind::rational, 0}; }
  static Field qi() { return Field{FieldKind::gaussian_rational, 0}; }
  static Field c64() { return Field{FieldKind::complex64, 0}; }

  bool exact() const { return kind != FieldKind::complex64; }
  bool is_prime_field() const { return kind == FieldKind::prime; }

  /// Canonical spelling used in every text/JSON interface:
  /// "Fp:2", "Q", "Qi", "C64".
  std::string name() const;
  static Field parse(const std::string& s);

  friend bool operator==(const Field&, const Field&) = default;
};

/// a + b*i with rational a, b.
struct GaussRational {
  Rational re, im;

  friend bool operator==(const GaussRational&, const GaussRational&) = default;
};

/// Exact (or, for C64, machine-precision) scalar tagged with its field.
///
/// Invariants: prime-field values lie in [0, p); rationals are kept in
/// lowest terms with positive denominator (cpp_rational maintains this).
class FieldElem {
 public:
  FieldElem() : field_(Field::q()), v_(Rational(0)) {}
  static FieldElem zero(const Field& f);
  static FieldElem one(const Field& f);
  static FieldElem from_int(const Field& f, std::int64_t value);
  static FieldElem from_rational(const Field& f, const Rational& value);
  static FieldElem gaussian(const Rational& re, const Rational& im);
  static FieldElem complex(std::complex<double> z);

  const Field& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inverse() const;
  /// Complex conjugate; identity on F_p and Q.
  FieldElem conj() const;

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  /// Value accessors; throw FieldError on tag mismatch.
  std::int64_t fp_value() const;
  const Rational& rational_value() const;
  const GaussRational& gaussian_value() const;
  std::complex<double> complex_value() const;

  std::string to_string() const;

 private:
  FieldElem(Field f, std::variant<std::int64_t, Rational, GaussRational,
                                  std::complex<double>>
                         v)
      : field_(f), v_(std::move(v)) {}

  void check_same(const FieldElem& o) const;

  Field field_;
  std::variant<std::int64_t, Rational, GaussRational, std::complex<double>> v_;
};

/// Parses the output of FieldElem::to_string back into a value of `f`.
FieldElem parse_field_elem(const Field& f, const std::string& s);

}  // namespace gms
