#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gfun/series.hpp"
#include "gfun/series_io.hpp"
#include "gfun/zoo.hpp"
#include "oracles.hpp"

using namespace gfun;

namespace {

TruncatedSeries koebe_prefix(std::size_t n) {
  std::vector<Complex> c(n + 1);
  for (std::size_t k = 1; k <= n; ++k) c[k] = static_cast<double>(k);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries geometric_prefix(std::size_t n) {
  return TruncatedSeries(std::vector<Complex>(n + 1, Complex{1.0, 0.0}));
}

}  // namespace

TEST(MakeSeries, IdentityAndKoebePrefix) {
  const auto z = make_series({0.0, 1.0});
  EXPECT_EQ(z.order(), 1u);
  EXPECT_TRUE(NormalizedSeries::satisfied_by(z));

  const auto k = make_series({0.0, 1.0, 2.0, 3.0});
  EXPECT_EQ(k.order(), 3u);
  for (std::size_t j = 0; j <= 3; ++j) EXPECT_NEAR(k[j].real(), oracle::koebe_coefficient(j, 2.0), 1e-14);
}

TEST(MakeSeries, ConstantIsNotNormalized) {
  const auto one = make_series({1.0, 0.0});
  EXPECT_EQ(one.order(), 1u);
  EXPECT_FALSE(NormalizedSeries::satisfied_by(one));
  EXPECT_THROW(NormalizedSeries{one}, CoefficientError);
}

TEST(MakeSeries, RejectsNonFiniteWithIndex) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    make_series({0.0, 1.0, {0.0, nan}});
    FAIL() << "expected rejection";
  } catch (const CoefficientError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
  EXPECT_THROW(make_series({}), CoefficientError);
  EXPECT_THROW(make_series({std::numeric_limits<double>::infinity()}), CoefficientError);
}

TEST(Add, Examples) {
  const auto z = make_series({0.0, 1.0});
  EXPECT_EQ(add(z, z), make_series({0.0, 2.0}));

  const auto k = koebe_prefix(8);
  EXPECT_EQ(add(k, scale(k, -1.0)), make_series(std::vector<Complex>(9)));

  EXPECT_EQ(add(make_series({0.0, 1.0, 2.0}), make_series({0.0, 0.0, 3.0, 4.0})),
            make_series({0.0, 1.0, 5.0, 4.0}));
}

TEST(Mul, Examples) {
  const auto z = make_series({0.0, 1.0});
  EXPECT_EQ(mul(z, z), make_series({0.0, 0.0, 1.0}));

  // (1 + z + ... + z^N)(1 - z) = 1 - z^{N+1}
  const std::size_t n = 20;
  const auto h = mul(geometric_prefix(n), make_series({1.0, -1.0}));
  EXPECT_EQ(h[0], Complex(1.0));
  for (std::size_t k = 1; k <= n; ++k) EXPECT_EQ(h[k], Complex(0.0)) << k;
  EXPECT_EQ(mul(geometric_prefix(n), make_series({1.0, -1.0}), n), truncate(make_series({1.0}), n));

  const auto zero = make_series(std::vector<Complex>(5));
  EXPECT_EQ(max_abs_difference(mul(koebe_prefix(4), zero), make_series({0.0})), 0.0);
}

TEST(RatioNormalized, Examples) {
  const auto k = koebe_prefix(12);
  const auto self = ratio_normalized(k, k);
  EXPECT_EQ(self.order(), 11u);
  EXPECT_LE(max_abs_difference(self, truncate(make_series({1.0}), 11)), 1e-12);

  // D Koebe / Koebe = (1 + z)/(1 - z) = 1 + 2z + 2z^2 + ...
  const auto dk = z_derivative(k);
  const auto h = ratio_normalized(dk, k);
  EXPECT_NEAR(h[0].real(), 1.0, 1e-12);
  for (std::size_t j = 1; j <= h.order(); ++j) EXPECT_NEAR(std::abs(h[j] - 2.0), 0.0, 1e-12) << j;

  const auto q = ratio_normalized(make_series({0.0, 1.0, 1.0}), make_series({0.0, 1.0}));
  EXPECT_EQ(q, make_series({1.0}));
}

TEST(RatioNormalized, VanishingLeadIsAnError) {
  EXPECT_THROW(ratio_normalized(make_series({0.0, 1.0, 2.0}), make_series({0.0, 0.0, 1.0})),
               DivisionError);
  EXPECT_THROW(ratio_normalized(make_series({1.0, 1.0}), make_series({0.0, 1.0})), DivisionError);
}

TEST(Derivative, Examples) {
  EXPECT_EQ(derivative(make_series({0.0, 1.0})), make_series({1.0}));
  EXPECT_EQ(derivative(make_series({0.0, 0.0, 1.0})), make_series({0.0, 2.0}));
  const auto d = derivative(koebe_prefix(10));
  EXPECT_EQ(d.order(), 9u);
  for (std::size_t k = 1; k <= 10; ++k) EXPECT_EQ(d[k - 1], Complex(double(k * k)));
}

TEST(ZDerivative, Examples) {
  EXPECT_EQ(z_derivative(make_series({1.0})), make_series({0.0}));
  EXPECT_EQ(z_derivative(make_series({1.0, 1.0})), make_series({0.0, 1.0}));
  const auto d = z_derivative(koebe_prefix(10));
  EXPECT_EQ(d.order(), 10u);
  for (std::size_t k = 0; k <= 10; ++k) EXPECT_EQ(d[k], Complex(double(k * k)));
}

TEST(ExpSeries, Examples) {
  EXPECT_EQ(exp_series(make_series({0.0, 0.0, 0.0})), make_series({1.0, 0.0, 0.0}));

  const auto e = exp_series(make_series({0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}));
  for (std::size_t k = 0; k <= 10; ++k)
    EXPECT_NEAR(e[k].real(), 1.0 / oracle::factorial(k), 1e-15) << k;

  std::vector<Complex> mlog(33);
  for (std::size_t k = 1; k < mlog.size(); ++k) mlog[k] = 1.0 / static_cast<double>(k);
  const auto g = exp_series(make_series(mlog));
  EXPECT_LE(max_abs_difference(g, geometric_prefix(32)), 1e-12);
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(make_series({0.0, 1.0}), 0.5), Complex(0.5));

  const auto k = koebe_prefix(64);
  const double truth = -0.5 / std::pow(1.5, 2);
  EXPECT_NEAR(truth, -2.0 / 9.0, 1e-15);
  EXPECT_LE(std::abs(eval(k, -0.5) - truth), tail_bound(k, 0.5) + 1e-15);

  EXPECT_EQ(eval(make_series({{3.0, -1.0}, 5.0, 7.0}), 0.0), Complex(3.0, -1.0));
}

TEST(Eval, OutsideDiskIsDomainError) {
  EXPECT_THROW(eval(make_series({0.0, 1.0}), 1.0), DomainError);
  EXPECT_THROW(eval(make_series({0.0, 1.0}), Complex(0.8, 0.6)), DomainError);
  EXPECT_THROW(tail_bound(make_series({0.0, 1.0}), 1.0), DomainError);
}

TEST(Eval, BatchedAgreesWithScalar) {
  const auto f = random_normalized(3, 1.2, 200);
  std::vector<double> re, im;
  for (int i = 0; i < 37; ++i) {
    const auto z = std::polar(0.97 * i / 37.0, 0.3 * i);
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  std::vector<double> orr(re.size()), oi(re.size());
  eval_many(f, re, im, orr, oi);
  for (std::size_t i = 0; i < re.size(); ++i)
    EXPECT_LE(std::abs(Complex(orr[i], oi[i]) - eval(f, {re[i], im[i]})), 1e-13);
}

TEST(TailBound, Examples) {
  EXPECT_EQ(tail_bound(make_series({0.0, 1.0}), 0.7), 0.0);
  EXPECT_EQ(tail_bound(identity_series(64), 0.95), 0.0);

  const auto k = koebe_prefix(64);
  const double bound = tail_bound(k, 0.5);
  const double truth = oracle::power_tail(64, 0.5, 1);
  EXPECT_LE(bound, 1e-12);
  EXPECT_GE(bound, truth);
  EXPECT_LE(bound, 4.0 * truth);

  EXPECT_EQ(tail_bound(k, 0.0), 0.0);
}

TEST(TailBound, GeometricDecay) {
  // |c_k| <= 2^-k, so the true tail at 0.95 is at most sum_{k>N} 0.475^k.
  const std::size_t n = 64;
  const double envelope = std::pow(0.475, n + 1) / (1.0 - 0.475);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto f = random_normalized(seed, 2.0, n);
    const double est = tail_bound(f, 0.95);
    EXPECT_LE(est, 100.0 * envelope) << seed;
    // The generator is sequential, so a longer draw extends the same prefix.
    const auto longer = random_normalized(seed, 2.0, 4 * n);
    ASSERT_EQ(truncate(longer, n), f);
    double actual = 0.0;
    for (int j = 0; j < 64; ++j) {
      const auto z = std::polar(0.95, 2.0 * std::numbers::pi * j / 64.0);
      Complex t{};
      for (std::size_t k = n + 1; k <= 4 * n; ++k) t += longer[k] * std::pow(z, double(k));
      actual = std::max(actual, std::abs(t));
    }
    EXPECT_GE(est, actual) << seed;
  }
}

TEST(TailBound, CoversTailOfLongerTruncation) {
  // Prefix of a longer truncation: the discarded part is known exactly.
  // The 1e-14 allowance is evaluation rounding, not tail.
  const std::size_t n = 64;
  for (double gamma : {0.0, 0.3, 0.5, 0.8}) {
    const auto full = koebe_general(gamma, 4 * n);
    const auto cut = truncate(full, n);
    for (double r : {0.3, 0.6, 0.8}) {
      const double est = tail_bound(cut, r);
      const double actual = std::abs(eval(full, r) - eval(cut, r));
      EXPECT_GE(est + 1e-14, actual) << gamma << ' ' << r;
    }
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto full = herglotz_p(random_herglotz_spec(seed), 8 * n);
    const auto cut = truncate(full, n);
    for (double r : {0.5, 0.8}) {
      double actual = 0.0;
      for (int j = 0; j < 64; ++j) {
        const auto z = std::polar(r, 2.0 * std::numbers::pi * j / 64.0);
        actual = std::max(actual, std::abs(eval(full, z) - eval(cut, z)));
      }
      EXPECT_GE(tail_bound(cut, r) + 1e-14, actual) << seed << ' ' << r;
    }
  }
}

TEST(SeriesProperties, AddMulCommuteAndAssociate) {
  for (std::uint64_t s = 1; s <= 25; ++s) {
    const auto f = random_normalized(s, 1.3, 32);
    const auto g = random_normalized(s + 100, 1.6, 24);
    const auto h = random_normalized(s + 200, 1.1, 16);
    EXPECT_LE(max_scaled_difference(add(f, g), add(g, f)), 1e-13);
    EXPECT_LE(max_scaled_difference(add(add(f, g), h), add(f, add(g, h))), 1e-13);
    EXPECT_LE(max_scaled_difference(mul(f, g), mul(g, f)), 1e-13);
    EXPECT_LE(max_scaled_difference(mul(mul(f, g), h), mul(f, mul(g, h))), 1e-13);
  }
}

TEST(SeriesProperties, RatioTimesDenominatorRestoresNumerator) {
  for (std::uint64_t s = 1; s <= 25; ++s) {
    const auto f = random_normalized(s, 1.4, 40);
    const auto g = random_normalized(s + 7, 1.8, 40);
    const auto h = ratio_normalized(f, g);
    const auto back = mul(h, g, 40);
    EXPECT_LE(max_abs_difference(back, f), 1e-12) << s;
  }
}

TEST(SeriesProperties, ExpOfSumIsProduct) {
  for (std::uint64_t s = 1; s <= 25; ++s) {
    const auto q1 = random_normalized(s, 1.5, 48);
    const auto q2 = scale(random_normalized(s + 50, 2.5, 48), Complex(0.0, 1.0));
    const auto lhs = exp_series(add(q1, q2));
    const auto rhs = mul(exp_series(q1), exp_series(q2), 48);
    EXPECT_LE(max_abs_difference(lhs, rhs), 1e-11) << s;
  }
}

TEST(SeriesProperties, EvalWithinTailOfClosedForm) {
  for (double gamma : {0.0, 0.25, 0.5, 0.75}) {
    const auto f = koebe_general(gamma, 256);
    for (double r : {0.2, 0.5, 0.8, 0.9}) {
      for (int j = 0; j < 16; ++j) {
        const auto z = std::polar(r, 2.0 * std::numbers::pi * j / 16.0);
        EXPECT_LE(std::abs(eval(f, z) - oracle::koebe_closed(z, gamma)),
                  tail_bound(f, r) + 1e-9)
            << gamma << ' ' << r << ' ' << j;
      }
    }
  }
}

TEST(Csv, RoundTripAndHeader) {
  const auto f = random_normalized(11, 1.3, 20);
  std::stringstream ss;
  write_csv(ss, f);
  EXPECT_EQ(ss.str().substr(0, 8), "k,re,im\n");
  EXPECT_EQ(read_csv(ss), f);
}

TEST(Csv, MalformedInputIsRejected) {
  std::stringstream no_header("0,0,0\n");
  EXPECT_THROW(read_csv(no_header), ParameterError);
  std::stringstream gap("k,re,im\n0,0,0\n2,1,0\n");
  EXPECT_THROW(read_csv(gap), ParameterError);
  std::stringstream junk("k,re,im\n0,abc,0\n");
  EXPECT_THROW(read_csv(junk), ParameterError);
  std::stringstream dup("k,re,im\n0,0,0\n0,1,0\n");
  EXPECT_THROW(read_csv(dup), ParameterError);
}
