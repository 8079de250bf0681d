#include "gms/field.hpp"

#include <cmath>
#include <sstream>

namespace gms {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_reduce(std::int64_t x, std::int64_t p) {
  std::int64_t r = x % p;
  return r < 0 ? r + p : r;
}

// Extended Euclid; requires gcd(a, p) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw FieldError("element has no inverse mod p");
  return mod_reduce(old_s, p);
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  // Division normalizes sign and reduces to lowest terms.
  return Rational(Integer(s.substr(0, slash))) /
         Rational(Integer(s.substr(slash + 1)));
}

}  // namespace

Field Field::fp(std::int64_t p) {
  if (p >= (std::int64_t{1} << 31) || !is_prime(p))
    throw FieldError("prime field modulus must be a prime below 2^31");
  return Field{FieldKind::prime, p};
}

std::string Field::name() const {
  switch (kind) {
    case FieldKind::prime:
      return "Fp:" + std::to_string(p);
    case FieldKind::rational:
      return "Q";
    case FieldKind::gaussian_rational:
      return "Qi";
    case FieldKind::complex64:
      return "C64";
  }
  throw FieldError("corrupt field tag");
}

Field Field::parse(const std::string& s) {
  if (s == "Q") return q();
  if (s == "Qi") return qi();
  if (s == "C64") return c64();
  if (s.rfind("Fp:", 0) == 0) return fp(std::stoll(s.substr(3)));
  throw FieldError("unknown field spec: " + s);
}

FieldElem FieldElem::zero(const Field& f) { return from_int(f, 0); }
FieldElem FieldElem::one(const Field& f) { return from_int(f, 1); }

FieldElem FieldElem::from_int(const Field& f, std::int64_t value) {
  switch (f.kind) {
    case FieldKind::prime:
      return FieldElem(f, mod_reduce(value, f.p));
    case FieldKind::rational:
      return FieldElem(f, Rational(value));
    case FieldKind::gaussian_rational:
      return FieldElem(f, GaussRational{Rational(value), Rational(0)});
    case FieldKind::complex64:
      return FieldElem(f, std::complex<double>(double(value), 0.0));
  }
  throw FieldError("corrupt field tag");
}

FieldElem FieldElem::from_rational(const Field& f, const Rational& value) {
  switch (f.kind) {
    case FieldKind::rational:
      return FieldElem(f, value);
    case FieldKind::gaussian_rational:
      return FieldElem(f, GaussRational{value, Rational(0)});
    default:
      throw FieldError("rational literal requires field Q or Qi");
  }
}

FieldElem FieldElem::gaussian(const Rational& re, const Rational& im) {
  return FieldElem(Field::qi(), GaussRational{re, im});
}

FieldElem FieldElem::complex(std::complex<double> z) {
  return FieldElem(Field::c64(), z);
}

void FieldElem::check_same(const FieldElem& o) const {
  if (!(field_ == o.field_))
    throw FieldError("mixed field tags: " + field_.name() + " vs " +
                     o.field_.name());
}

bool FieldElem::is_zero() const {
  switch (field_.kind) {
    case FieldKind::prime:
      return std::get<std::int64_t>(v_) == 0;
    case FieldKind::rational:
      return std::get<Rational>(v_) == 0;
    case FieldKind::gaussian_rational: {
      const auto& g = std::get<GaussRational>(v_);
      return g.re == 0 && g.im == 0;
    }
    case FieldKind::complex64:
      return std::get<std::complex<double>>(v_) == std::complex<double>(0.0);
  }
  throw FieldError("corrupt field tag");
}

bool FieldElem::is_one() const { return *this == one(field_); }

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  switch (field_.kind) {
    case FieldKind::prime:
      return FieldElem(field_, mod_reduce(std::get<std::int64_t>(v_) +
                                              std::get<std::int64_t>(o.v_),
                                          field_.p));
    case FieldKind::rational:
      return FieldElem(field_,
                       Rational(std::get<Rational>(v_) + std::get<Rational>(o.v_)));
    case FieldKind::gaussian_rational: {
      const auto& a = std::get<GaussRational>(v_);
      const auto& b = std::get<GaussRational>(o.v_);
      return FieldElem(field_,
                       GaussRational{Rational(a.re + b.re), Rational(a.im + b.im)});
    }
    case FieldKind::complex64:
      return FieldElem(field_, std::get<std::complex<double>>(v_) +
                                   std::get<std::complex<double>>(o.v_));
  }
  throw FieldError("corrupt field tag");
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  switch (field_.kind) {
    case FieldKind::prime:
      return FieldElem(field_, mod_reduce(std::get<std::int64_t>(v_) *
                                              std::get<std::int64_t>(o.v_),
                                          field_.p));
    case FieldKind::rational:
      return FieldElem(field_,
                       Rational(std::get<Rational>(v_) * std::get<Rational>(o.v_)));
    case FieldKind::gaussian_rational: {
      const auto& a = std::get<GaussRational>(v_);
      const auto& b = std::get<GaussRational>(o.v_);
      return FieldElem(field_, GaussRational{Rational(a.re * b.re - a.im * b.im),
                                             Rational(a.re * b.im + a.im * b.re)});
    }
    case FieldKind::complex64:
      return FieldElem(field_, std::get<std::complex<double>>(v_) *
                                   std::get<std::complex<double>>(o.v_));
  }
  throw FieldError("corrupt field tag");
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  return *this * o.inverse();
}

FieldElem FieldElem::operator-() const {
  switch (field_.kind) {
    case FieldKind::prime:
      return FieldElem(field_, mod_reduce(-std::get<std::int64_t>(v_), field_.p));
    case FieldKind::rational:
      return FieldElem(field_, Rational(-std::get<Rational>(v_)));
    case FieldKind::gaussian_rational: {
      const auto& g = std::get<GaussRational>(v_);
      return FieldElem(field_, GaussRational{Rational(-g.re), Rational(-g.im)});
    }
    case FieldKind::complex64:
      return FieldElem(field_, -std::get<std::complex<double>>(v_));
  }
  throw FieldError("corrupt field tag");
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw FieldError("division by zero");
  switch (field_.kind) {
    case FieldKind::prime:
      return FieldElem(field_, mod_inverse(std::get<std::int64_t>(v_), field_.p));
    case FieldKind::rational:
      return FieldElem(field_, Rational(1 / std::get<Rational>(v_)));
    case FieldKind::gaussian_rational: {
      const auto& g = std::get<GaussRational>(v_);
      Rational norm = g.re * g.re + g.im * g.im;
      return FieldElem(field_,
                       GaussRational{Rational(g.re / norm), Rational(-g.im / norm)});
    }
    case FieldKind::complex64:
      return FieldElem(field_, 1.0 / std::get<std::complex<double>>(v_));
  }
  throw FieldError("corrupt field tag");
}

FieldElem FieldElem::conj() const {
  switch (field_.kind) {
    case FieldKind::gaussian_rational: {
      const auto& g = std::get<GaussRational>(v_);
      return FieldElem(field_, GaussRational{g.re, Rational(-g.im)});
    }
    case FieldKind::complex64:
      return FieldElem(field_, std::conj(std::get<std::complex<double>>(v_)));
    default:
      return *this;
  }
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (!(field_ == o.field_)) return false;
  return v_ == o.v_;
}

std::int64_t FieldElem::fp_value() const {
  if (field_.kind != FieldKind::prime) throw FieldError("not a prime-field value");
  return std::get<std::int64_t>(v_);
}

const Rational& FieldElem::rational_value() const {
  if (field_.kind != FieldKind::rational) throw FieldError("not a rational value");
  return std::get<Rational>(v_);
}

const GaussRational& FieldElem::gaussian_value() const {
  if (field_.kind != FieldKind::gaussian_rational)
    throw FieldError("not a Gaussian rational value");
  return std::get<GaussRational>(v_);
}

std::complex<double> FieldElem::complex_value() const {
  if (field_.kind != FieldKind::complex64)
    throw FieldError("not a machine-complex value");
  return std::get<std::complex<double>>(v_);
}

std::string FieldElem::to_string() const {
  switch (field_.kind) {
    case FieldKind::prime:
      return std::to_string(std::get<std::int64_t>(v_));
    case FieldKind::rational:
      return rational_to_string(std::get<Rational>(v_));
    case FieldKind::gaussian_rational: {
      const auto& g = std::get<GaussRational>(v_);
      return rational_to_string(g.re) + "," + rational_to_string(g.im);
    }
    case FieldKind::complex64: {
      auto z = std::get<std::complex<double>>(v_);
      std::ostringstream os;
      os << z.real() << "," << z.imag();
      return os.str();
    }
  }
  throw FieldError("corrupt field tag");
}

FieldElem parse_field_elem(const Field& f, const std::string& s) {
  switch (f.kind) {
    case FieldKind::prime:
      return FieldElem::from_int(f, std::stoll(s));
    case FieldKind::rational:
      return FieldElem::from_rational(f, rational_from_string(s));
    case FieldKind::gaussian_rational: {
      auto comma = s.find(',');
      if (comma == std::string::npos)
        return FieldElem::gaussian(rational_from_string(s), Rational(0));
      return FieldElem::gaussian(rational_from_string(s.substr(0, comma)),
                                 rational_from_string(s.substr(comma + 1)));
    }
    case FieldKind::complex64: {
      auto comma = s.find(',');
      double re = std::stod(s.substr(0, comma));
      double im = comma == std::string::npos ? 0.0 : std::stod(s.substr(comma + 1));
      return FieldElem::complex({re, im});
    }
  }
  throw FieldError("corrupt field tag");
}

}  // namespace gms
