#include <gtest/gtest.h>

#include "cspw/cyclo.hpp"
#include "cspw/errors.hpp"
#include "cspw/generators.hpp"
#include "fixtures.hpp"

using namespace cspw;
using fixtures::q;
using fixtures::zeta;

TEST(Cyclo, CyclotomicPolynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<long long>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<long long>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(3), (std::vector<long long>{1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<long long>{1, -1, 1}));
  EXPECT_EQ(euler_phi(12), 4);
}

TEST(Cyclo, CanonicalizeReduces) {
  EXPECT_EQ(canonicalize({0, 0, 1}, 4), q(-1, 1, 4));
  EXPECT_EQ(canonicalize({0, 0, 1}, 3), CycloValue::parse("-1-w", 3));
  EXPECT_EQ(canonicalize({Rational(7, 2)}, 1).to_string(), "7/2");
  CycloValue v = canonicalize({1, 2, 3, 4, 5, 6}, 5);
  EXPECT_EQ(canonicalize(v.coeffs(), 5), v);
}

TEST(Cyclo, FieldOperations) {
  const CycloValue z = zeta(4);
  EXPECT_EQ((q(1, 1, 4) + z) + (q(1, 1, 4) - z), q(2, 1, 4));
  EXPECT_EQ((q(1, 1, 4) + z) * (q(1, 1, 4) - z), q(2, 1, 4));
  EXPECT_EQ(z * zeta(4, 3), q(1, 1, 4));
}

TEST(Cyclo, Conjugation) {
  EXPECT_EQ(zeta(4).conj(), -zeta(4));
  EXPECT_EQ(q(5, 3).conj(), q(5, 3));
  CycloValue v = CycloValue::parse("1+2w", 4);
  EXPECT_EQ(v.conj().conj(), v);
}

TEST(Cyclo, Inverse) {
  EXPECT_EQ(CycloValue::parse("1+w", 4).inv(), CycloValue::parse("1/2-1/2*w", 4));
  EXPECT_EQ(q(2).inv(), q(1, 2));
  EXPECT_EQ(zeta(4).inv(), zeta(4, 3));
  EXPECT_THROW(CycloValue::zero(4).inv(), Error);
}

TEST(Cyclo, MagnitudeSquared) {
  EXPECT_EQ(CycloValue::parse("1+w", 4).magnitude_sq(), q(2, 1, 4));
  EXPECT_EQ(CycloValue::parse("3w", 4).magnitude_sq(), q(9, 1, 4));
  EXPECT_TRUE(CycloValue::zero(4).magnitude_sq().is_zero());
}

TEST(Cyclo, PureForm) {
  auto pf = CycloValue::parse("2w^3", 4).pure_form();
  ASSERT_TRUE(pf);
  EXPECT_EQ(pf->magnitude, 2);
  EXPECT_EQ(pf->root_order(), 4);
  EXPECT_FALSE(CycloValue::parse("1+w", 4).pure_form());
  auto neg = q(-2).pure_form();
  ASSERT_TRUE(neg);
  EXPECT_EQ(neg->root_order(), 2);
  // zeta_3 with a sign is a primitive 6th root.
  auto six = (-zeta(3)).pure_form();
  ASSERT_TRUE(six);
  EXPECT_EQ(six->root_order(), 6);
}

TEST(Cyclo, MixedOrdersPromote) {
  CycloValue a = zeta(4) * zeta(3);
  EXPECT_EQ(a.order(), 12);
  EXPECT_EQ(a, zeta(12, 7));
  EXPECT_EQ(q(1, 1, 1), q(1, 1, 4));
}

TEST(Cyclo, ParseAndPrint) {
  EXPECT_EQ(CycloValue::parse("-5/3 + 2*w - w^3", 8).to_string(), "-5/3+2*w-w^3");
  EXPECT_EQ(CycloValue::parse("w^4", 4).to_string(), "1");
  EXPECT_THROW(CycloValue::parse("1+", 4), Error);
  EXPECT_THROW(CycloValue::parse("x", 4), Error);
  EXPECT_THROW(CycloValue::parse("1/0", 4), Error);
}

// Field axioms on random elements.
TEST(CycloProperty, FieldAxioms) {
  Rng rng(11);
  const int orders[] = {1, 2, 3, 4, 5, 6, 8, 9, 12};
  for (int i = 0; i < 300; ++i) {
    const int order = orders[uniform(rng, 0, 8)];
    auto rnd = [&] {
      std::vector<Rational> raw(order);
      for (auto& c : raw) c = Rational(uniform(rng, -4, 4), uniform(rng, 1, 4));
      return canonicalize(raw, order);
    };
    CycloValue a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ(CycloValue::parse(a.to_string(), order), a);
    if (!a.is_zero()) EXPECT_TRUE((a * a.inv()).is_one());
    EXPECT_EQ(a.magnitude_sq(), a.magnitude_sq().conj());
  }
}
