#include <doctest.h>

#include "gms/field.hpp"

using namespace gms;

TEST_CASE("prime field arithmetic stays reduced") {
  Field f5 = Field::fp(5);
  FieldElem a = FieldElem::from_int(f5, 7);   // 2
  FieldElem b = FieldElem::from_int(f5, -1);  // 4
  CHECK(a.fp_value() == 2);
  CHECK(b.fp_value() == 4);
  CHECK((a + b).fp_value() == 1);
  CHECK((a * b).fp_value() == 3);
  CHECK((a / b).fp_value() == 3);  // 2 * 4^{-1} = 2 * 4 = 8 = 3
  CHECK((-a).fp_value() == 3);
  CHECK(a.inverse().fp_value() == 3);
}

TEST_CASE("modulus must be prime and small") {
  CHECK_THROWS_AS(Field::fp(4), FieldError);
  CHECK_THROWS_AS(Field::fp(1), FieldError);
  CHECK_THROWS_AS(Field::fp(std::int64_t{1} << 31), FieldError);
  CHECK(Field::fp(2147483647).p == 2147483647);  // largest admissible prime
}

TEST_CASE("rationals stay in lowest terms with positive denominator") {
  Field q = Field::q();
  FieldElem a = FieldElem::from_rational(q, Rational(4, 6));
  CHECK(a.to_string() == "2/3");
  FieldElem b = FieldElem::from_rational(q, Rational(1) / Rational(-2));
  CHECK(b.to_string() == "-1/2");
  CHECK((a + b).to_string() == "1/6");
  CHECK((a * b).to_string() == "-1/3");
  CHECK((a / b).to_string() == "-4/3");
}

TEST_CASE("gaussian rational arithmetic") {
  FieldElem i = FieldElem::gaussian(Rational(0), Rational(1));
  CHECK((i * i).to_string() == "-1,0");
  CHECK(i.conj().to_string() == "0,-1");
  FieldElem z = FieldElem::gaussian(Rational(3), Rational(4));
  CHECK((z * z.inverse()).is_one());
}

TEST_CASE("mixing field tags is an error") {
  FieldElem a = FieldElem::from_int(Field::fp(2), 1);
  FieldElem b = FieldElem::from_int(Field::fp(3), 1);
  FieldElem c = FieldElem::from_int(Field::q(), 1);
  CHECK_THROWS_AS(a + b, FieldError);
  CHECK_THROWS_AS(a * c, FieldError);
}

TEST_CASE("field spec round trip") {
  for (const char* name : {"Fp:2", "Fp:3", "Q", "Qi", "C64"})
    CHECK(Field::parse(name).name() == name);
  CHECK_THROWS_AS(Field::parse("Fp:6"), FieldError);
  CHECK_THROWS_AS(Field::parse("R"), FieldError);
}

TEST_CASE("scalar text round trip") {
  Field qi = Field::qi();
  FieldElem z = FieldElem::gaussian(Rational(-3, 7), Rational(1, 2));
  CHECK(parse_field_elem(qi, z.to_string()) == z);
  Field f7 = Field::fp(7);
  FieldElem a = FieldElem::from_int(f7, 5);
  CHECK(parse_field_elem(f7, a.to_string()) == a);
}
