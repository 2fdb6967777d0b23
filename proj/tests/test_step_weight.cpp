#include <a1w/generators.hpp>
#include <a1w/rational.hpp>
#include <a1w/step_weight.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace a1w;

namespace {

Rational q(const char* text) { return parse_rational(text); }

StepWeight w1() { return make_step_weight({0, q("1/2"), 1}, {2, 1}); }

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(q("3/6"), Rational(1, 2));
  EXPECT_EQ(q("-0.125"), Rational(-1, 8));
  EXPECT_EQ(q("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(q("+7"), Rational(7));
  EXPECT_EQ(q(" 1E2 "), Rational(100));
  EXPECT_EQ(to_string(q("0.1")), "1/10");
  EXPECT_THROW(q("1/0"), std::invalid_argument);
  EXPECT_THROW(q("abc"), std::invalid_argument);
  EXPECT_THROW(q("1/-2"), std::invalid_argument);
  EXPECT_THROW(q(""), std::invalid_argument);
  EXPECT_THROW(q("1.2.3"), std::invalid_argument);
}

TEST(Rational, DoubleConversionIsExact) {
  EXPECT_EQ(from_double(0.375), Rational(3, 8));
  EXPECT_EQ(to_double(from_double(0.1)), 0.1);
  EXPECT_THROW(from_double(INFINITY), std::invalid_argument);
}

TEST(MakeStepWeight, Examples) {
  auto constant = make_step_weight({0, 1}, {5});
  EXPECT_EQ(constant.pieces(), 1u);
  EXPECT_EQ(constant(q("0.3")), 5);

  auto w = w1();
  EXPECT_EQ(w.pieces(), 2u);
  EXPECT_EQ(w(q("1/2")), 2);  // left-continuous at the breakpoint
  EXPECT_EQ(w(q("0.6")), 1);

  EXPECT_THROW(make_step_weight({0, q("1/2"), 1}, {2, -1}), std::invalid_argument);
}

TEST(MakeStepWeight, RejectsMalformedInput) {
  EXPECT_THROW(make_step_weight({0, 1, 1}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(make_step_weight({0, q("1/2"), q("1/4")}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(make_step_weight({0, 1}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(make_step_weight({0}, {}), std::invalid_argument);
  EXPECT_THROW(make_step_weight({0, 1}, {0}), std::invalid_argument);
}

TEST(Interval, RejectsDegenerate) {
  EXPECT_THROW(Interval(q("1/2"), q("1/2")), std::invalid_argument);
  EXPECT_THROW(Interval(1, 0), std::invalid_argument);
}

TEST(Integrate, Examples) {
  auto w = w1();
  EXPECT_EQ(integrate(w, {0, 1}), q("3/2"));
  EXPECT_EQ(integrate(w, {q("1/4"), q("3/4")}), q("3/4"));
  EXPECT_THROW(integrate(w, {q("1/2"), 2}), std::out_of_range);
  EXPECT_THROW(integrate(w, {-1, q("1/2")}), std::out_of_range);
}

TEST(Integrate, AdditiveOverSplits) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GeneratorSpec spec;
    spec.pieces = 1 + seed % 9;
    spec.seed = seed;
    auto w = gen_weight(spec);
    Rng rng(seed);
    Rational a(static_cast<unsigned long>(rng.between(0, 300)), 1000UL);
    Rational m(static_cast<unsigned long>(rng.between(301, 600)), 1000UL);
    Rational b(static_cast<unsigned long>(rng.between(601, 1000)), 1000UL);
    a.canonicalize();
    m.canonicalize();
    b.canonicalize();
    EXPECT_EQ(integrate(w, {a, b}), integrate(w, {a, m}) + integrate(w, {m, b}));
  }
}

TEST(Essinf, Examples) {
  auto w = w1();
  EXPECT_EQ(essinf(w, {q("1/4"), q("3/4")}), 1);
  EXPECT_EQ(essinf(w, {0, q("1/2")}), 2);  // piece 2 meets only at a point
  EXPECT_EQ(essinf(w, {q("1/2"), 1}), 1);
  auto constant = make_step_weight({0, 1}, {5});
  EXPECT_EQ(essinf(constant, {q("0.1"), q("0.2")}), 5);
  EXPECT_THROW(essinf(w, {0, 2}), std::out_of_range);
}

TEST(Essinf, RangeMinMatchesLinearScan) {
  auto w = make_step_weight({0, 1, 2, 3, 4, 5, 6, 7}, {5, 3, 8, 1, 9, 2, 7});
  for (std::size_t i = 0; i < w.pieces(); ++i) {
    for (std::size_t j = i; j < w.pieces(); ++j) {
      Rational expected = w.values()[i];
      for (std::size_t k = i; k <= j; ++k) expected = std::min(expected, Rational(w.values()[k]));
      EXPECT_EQ(w.range_min(i, j), expected) << i << ".." << j;
    }
  }
}

TEST(Rearrange, Examples) {
  EXPECT_EQ(rearrange(make_step_weight({0, q("1/2"), 1}, {1, 2})),
            make_step_weight({0, q("1/2"), 1}, {2, 1}));
  EXPECT_EQ(rearrange(make_step_weight({0, q("1/3"), q("2/3"), 1}, {1, 3, 2})),
            make_step_weight({0, q("1/3"), q("2/3"), 1}, {3, 2, 1}));
  EXPECT_EQ(rearrange(w1()), w1());
}

TEST(Rearrange, MergesEqualValuesAndShiftsToZero) {
  auto w = make_step_weight({2, 3, 5, 6}, {4, 1, 4});
  EXPECT_EQ(rearrange(w), make_step_weight({0, 2, 4}, {4, 1}));
}

TEST(Rearrange, EquimeasurableIdempotentMassPreserving) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GeneratorSpec spec;
    spec.kind = seed % 2 ? WeightKind::uniform : WeightKind::multiplicative_walk;
    spec.pieces = 1 + seed % 12;
    spec.value_cap = 4;
    spec.seed = seed;
    auto w = gen_weight(spec);
    auto star = rearrange(w);
    ASSERT_TRUE(star.is_nonincreasing());
    EXPECT_EQ(rearrange(star), star);
    EXPECT_EQ(integrate(w, w.domain()), integrate(star, star.domain()));

    std::vector<Rational> levels{0};
    for (auto& v : w.values()) {
      levels.push_back(v);
      levels.push_back(v + Rational(1, 2000));
      levels.push_back(v - Rational(1, 2000));
    }
    for (auto& level : levels)
      if (sgn(level) >= 0) {
        EXPECT_EQ(distribution(w, level), distribution(star, level));
      }
  }
}

TEST(Distribution, Examples) {
  auto w = w1();
  EXPECT_EQ(distribution(w, 1), q("1/2"));
  EXPECT_EQ(distribution(w, q("1/2")), 1);
  EXPECT_EQ(distribution(w, 2), 0);
  EXPECT_THROW(distribution(w, -1), std::invalid_argument);
}

TEST(Distribution, ProfileIsNonincreasing) {
  auto w = make_step_weight({0, 1, 3, 4}, {2, 5, 1});
  auto profile = distribution_profile(w);
  ASSERT_EQ(profile.size(), 4u);
  EXPECT_EQ(profile.front().measure, 4);
  EXPECT_EQ(profile.back().measure, 0);
  for (std::size_t k = 1; k < profile.size(); ++k)
    EXPECT_LE(profile[k].measure, profile[k - 1].measure);
}

TEST(IntegerMoment, MatchesHandArithmetic) {
  auto w = make_step_weight({0, q("1/2"), 1}, {4, 2});
  EXPECT_EQ(integer_moment(w, 1), 3);
  EXPECT_EQ(integer_moment(w, 2), 10);
  EXPECT_NEAR(moment(w, 2.0), 10.0, 1e-12);
}

TEST(DiscretizePower, Examples) {
  auto flat = discretize_power(PowerWeight(1.0, 1.0), 4, CellScheme::uniform);
  EXPECT_EQ(flat, StepWeight::constant(1));

  auto one = discretize_power(PowerWeight(1.0, 2.0), 1, CellScheme::uniform);
  EXPECT_EQ(one.pieces(), 1u);
  EXPECT_NEAR(to_double(one.values()[0]), 1.0, 1e-15);

  auto two = discretize_power(PowerWeight(1.0, 2.0), 2, CellScheme::uniform);
  ASSERT_EQ(two.pieces(), 2u);
  EXPECT_NEAR(to_double(two.values()[0]), 2.0 * std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(to_double(two.values()[1]), 2.0 * (1.0 - std::sqrt(0.5)), 1e-14);
  EXPECT_NEAR(to_double(two.values()[0]), 1.41421, 1e-5);
  EXPECT_NEAR(to_double(two.values()[1]), 0.58579, 1e-5);

  EXPECT_THROW(discretize_power(PowerWeight(1.0, 2.0), 0, CellScheme::uniform),
               std::invalid_argument);
}

TEST(DiscretizePower, PrefixMassMatchesClosedForm) {
  for (double tau : {1.05, 1.5, 2.0, 4.0, 10.0}) {
    for (auto scheme : {CellScheme::uniform, CellScheme::geometric}) {
      PowerWeight pw(1.7, tau);
      auto w = discretize_power(pw, 40, scheme);
      EXPECT_TRUE(w.is_nonincreasing());
      for (std::size_t k = 1; k <= w.pieces(); ++k) {
        double t = to_double(w.breakpoints()[k]);
        double exact = pw.prefix(t);
        double got = to_double(w.prefix_at_breakpoint(k));
        EXPECT_LE(std::abs(got - exact), 1e-12 * exact) << "tau=" << tau << " k=" << k;
      }
    }
  }
}

TEST(PowerWeight, RejectsBadParameters) {
  EXPECT_THROW(PowerWeight(0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(PowerWeight(1.0, 0.5), std::invalid_argument);
}
