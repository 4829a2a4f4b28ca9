#include <gtest/gtest.h>

#include <cmath>

#include "gfun/lemma_lab.hpp"
#include "gfun/operators.hpp"
#include "oracles.hpp"

using namespace gfun;

namespace {

const double kGammas[] = {0.0, 0.3, 0.7, 1.5, 2.0};

AlphaField constant_alpha(Complex a) {
  return [a](Complex) { return a; };
}

/// alpha fields with Re alpha > 0 on the disk.
std::vector<AlphaField> positive_fields() {
  std::vector<AlphaField> out = {constant_alpha(1.0), constant_alpha({0.05, 3.0})};
  for (std::uint64_t s : {1u, 2u, 3u}) out.push_back(series_alpha(herglotz_p(random_herglotz_spec(s))));
  const auto g = herglotz_starlike(4);
  out.push_back(ratio_alpha(z_derivative(g), g));
  return out;
}

template <class F>
double grid_extreme(const DiskGrid& g, bool min, F&& field) {
  double best = min ? 1e300 : -1e300;
  for (std::size_t i = 0; i < g.n_radii; ++i)
    for (std::size_t j = 0; j < g.n_angles; ++j) {
      const double v = field(std::polar(g.radius(i), g.angle(j)));
      best = min ? std::min(best, v) : std::max(best, v);
    }
  return best;
}

TruncatedSeries constant_one() { return make_series({1.0}); }

}  // namespace

TEST(EvalPsi, Examples) {
  const auto p1 = PsiFunction::psi1(0.0, constant_alpha(1.0));
  EXPECT_EQ(eval_psi(p1, 1.0, 0.0), Complex(1.0));
  const auto p2 = PsiFunction::psi2(1.0);
  EXPECT_EQ(eval_psi(p2, 0.0, -0.5), Complex(-0.5));
  for (Complex u : {Complex(0.3, 2.0), Complex(-5.0, 0.1), Complex(7.0)})
    EXPECT_EQ(eval_psi(p2, u, 0.0), u);
  const Complex u{0.4, -1.2}, v{-2.0, 0.5};
  EXPECT_NEAR(std::abs(eval_psi(p2, u, v) - (u + v / (1.0 + u))), 0.0, 1e-15);
  const auto p1a = PsiFunction::psi1(0.5, constant_alpha({2.0, 1.0}));
  EXPECT_NEAR(std::abs(eval_psi(p1a, u, v) - (u + v / Complex(2.5, 1.0))), 0.0, 1e-15);
  const auto c = PsiFunction::from([](Complex a, Complex b) { return a * b; });
  EXPECT_EQ(eval_psi(c, 2.0, 3.0), Complex(6.0));
}

TEST(EvalPsi, DomainErrors) {
  EXPECT_THROW(eval_psi(PsiFunction::psi2(1.0), -1.0, 0.3), DomainError);
  EXPECT_THROW(eval_psi(PsiFunction::psi1(0.0, constant_alpha({-0.5, 1.0})), 1.0, 0.0), DomainError);
  EXPECT_THROW(eval_psi(PsiFunction::psi1(0.0, {}), 1.0, 0.0), ParameterError);
}

TEST(BoundarySample, Parabola) {
  BoundaryConstraintSample low{0.3, 2.0, BoundaryConstraintSample::parabola(0.3, 2.0), Branch::LowGamma};
  EXPECT_DOUBLE_EQ(2.0 * low.v1, -(1.0 - 0.3) * (1.0 + 4.0));
  EXPECT_TRUE(low.in_region());
  low.v1 += 1e-3;
  EXPECT_FALSE(low.in_region());
  BoundaryConstraintSample high{2.0, 1.0, BoundaryConstraintSample::parabola(2.0, 1.0), Branch::HighGamma};
  EXPECT_DOUBLE_EQ(2.0 * high.v1, (2.0 - 1.0) * 2.0);
  EXPECT_TRUE(high.in_region());
  EXPECT_EQ(high.u(), Complex(2.0, -1.0));
  EXPECT_EQ(branch_for(0.7), Branch::LowGamma);
  EXPECT_EQ(branch_for(1.5), Branch::HighGamma);
  EXPECT_THROW(branch_for(1.0), ParameterError);
}

TEST(PsiConditions, Psi1PassesForPositiveFields) {
  for (double xi : {0.0, 1.0})
    for (const auto& a : positive_fields())
      for (double g : kGammas) {
        const auto r = check_psi_conditions(PsiFunction::psi1(xi, a), g, 10000, 7);
        EXPECT_TRUE(r.ok()) << "xi=" << xi << " gamma=" << g << " worst " << r.boundary.worst_margin;
        EXPECT_EQ(r.boundary.samples, 10000u);
        EXPECT_EQ(r.boundary.outside_domain, 0u);
        EXPECT_EQ(r.boundary.passed, 10000u);
        EXPECT_GE(r.boundary.worst_margin, 0.0);
      }
}

TEST(PsiConditions, Psi2PassesWhenXiPlusGammaPositive) {
  for (double xi : {0.5, 1.0, 3.0})
    for (double g : kGammas) {
      const auto r = check_psi_conditions(PsiFunction::psi2(xi), g, 10000, 11);
      EXPECT_TRUE(r.ok()) << "xi=" << xi << " gamma=" << g;
      EXPECT_EQ(r.branch, branch_for(g));
      EXPECT_EQ(r.at_unit.passed, 10000u);
    }
  EXPECT_THROW(check_psi_conditions(PsiFunction::psi2(-0.5), 0.3, 10, 1), ParameterError);
}

TEST(PsiConditions, FlagsInadmissiblePsi) {
  const auto bad = PsiFunction::from([](Complex u, Complex v) { return u - v; });
  const auto r = check_psi_conditions(bad, 0.0, 1000, 3);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.boundary.violations, 1000u);
  ASSERT_TRUE(r.worst.has_value());
  EXPECT_TRUE(r.worst->in_region());
  EXPECT_LT(r.boundary.worst_margin, 0.0);
}

TEST(PsiConditions, RecordsOutsideDomain) {
  const auto r = check_psi_conditions(PsiFunction::psi1(0.0, constant_alpha(-2.0)), 0.3, 100, 5);
  EXPECT_EQ(r.boundary.outside_domain, 100u);
  EXPECT_EQ(r.at_unit.outside_domain, 100u);
  EXPECT_EQ(r.boundary.violations, 0u);
}

TEST(PsiConditions, Deterministic) {
  const auto a = check_psi_conditions(PsiFunction::psi2(1.0), 0.3, 500, 9);
  const auto b = check_psi_conditions(PsiFunction::psi2(1.0), 0.3, 500, 9);
  EXPECT_EQ(a.boundary.worst_margin, b.boundary.worst_margin);
  EXPECT_EQ(a.worst->u2, b.worst->u2);
}

TEST(LemmaInstance, ConstantP) {
  const DiskGrid grid{0.9, 24, 256};
  for (const auto& psi : {PsiFunction::psi1(0.0, constant_alpha(1.0)), PsiFunction::psi2(1.0)}) {
    const auto r = lemma_instance(constant_one(), psi, 0.0, grid);
    EXPECT_DOUBLE_EQ(r.hypothesis_margin, 1.0);
    EXPECT_DOUBLE_EQ(r.conclusion_margin, 1.0);
    EXPECT_FALSE(r.contradicts());
  }
  EXPECT_THROW(lemma_instance(make_series({2.0, 1.0}), PsiFunction::psi2(1.0), 0.0, grid), ParameterError);
}

TEST(LemmaInstance, MoebiusP) {
  const DiskGrid grid{0.9, 24, 256};
  const auto p = herglotz_p({{1.0}, {1.0}});
  const auto r = lemma_instance(p, PsiFunction::psi2(1.0), 0.0, grid);
  // psi2(p, z p') = p + z/(1 - z) = (1 + 2z)/(1 - z) when xi = 1, negative near z = -0.9.
  const double hyp = grid_extreme(grid, true, [](Complex z) {
    return ((1.0 + z) / (1.0 - z) + z / (1.0 - z)).real();
  });
  EXPECT_NEAR(r.conclusion_margin, oracle::moebius_min(0.9, 0.0), 1e-9 + r.truncation_bound);
  EXPECT_NEAR(r.hypothesis_margin, hyp, 1e-9);
  EXPECT_GT(r.conclusion_margin, 0.0);
  EXPECT_NEAR(r.hypothesis_margin, (1.0 - 1.8) / 1.9, 1e-12);
  EXPECT_FALSE(r.contradicts());
  const auto inner = lemma_instance(p, PsiFunction::psi2(1.0), 0.0, DiskGrid{0.45, 12, 256});
  EXPECT_GT(inner.hypothesis_margin, 0.0);
  EXPECT_GT(inner.conclusion_margin, 0.0);
  EXPECT_NEAR(std::abs(r.conclusion_argext - Complex(-0.9)), 0.0, 1e-12);
}

TEST(LemmaInstance, NonPositiveP) {
  const DiskGrid grid{0.9, 24, 256};
  const auto p = make_series({1.0, 3.0});
  const auto r1 = lemma_instance(p, PsiFunction::psi1(0.0, constant_alpha(1.0)), 0.0, grid);
  EXPECT_NEAR(r1.conclusion_margin, 1.0 - 2.7, 1e-12);
  EXPECT_NEAR(r1.hypothesis_margin, 1.0 - 5.4, 1e-12);
  const auto r2 = lemma_instance(p, PsiFunction::psi2(1.0), 0.0, grid);
  const double hyp = grid_extreme(grid, true, [](Complex z) {
    const Complex u = 1.0 + 3.0 * z;
    return (u + 3.0 * z / (1.0 + u)).real();
  });
  EXPECT_LT(r2.conclusion_margin, 0.0);
  EXPECT_LT(r2.hypothesis_margin, 0.0);
  EXPECT_NEAR(r2.hypothesis_margin, hyp, 1e-9 * std::abs(hyp));
  EXPECT_FALSE(r1.contradicts());
  EXPECT_FALSE(r2.contradicts());
}

TEST(LemmaInstance, HighGammaMargins) {
  const DiskGrid grid{0.9, 24, 256};
  const auto r = lemma_instance(constant_one(), PsiFunction::psi2(1.0), 1.5, grid);
  EXPECT_DOUBLE_EQ(r.conclusion_margin, 0.5);
  EXPECT_DOUBLE_EQ(r.hypothesis_margin, 0.5);
}

TEST(LemmaInstance, NoContradictionOnCorpus) {
  const DiskGrid grid{};
  std::size_t instances = 0;
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto h = herglotz_p(random_herglotz_spec(s));
    const auto f = random_normalized(s, 1.5);
    std::vector<TruncatedSeries> ps = {h, ratio_normalized(z_derivative(f), f),
                                       add(h, scale(random_normalized(s + 100, 1.3), 0.4))};
    ps.back() = TruncatedSeries([&] {
      std::vector<Complex> c(ps.back().coeffs().begin(), ps.back().coeffs().end());
      c[0] = 1.0;
      return c;
    }());
    for (const auto& p : ps) {
      for (double g : kGammas) {
        for (const auto& psi : {PsiFunction::psi1(0.0, series_alpha(h)), PsiFunction::psi1(1.0, series_alpha(h)),
                                PsiFunction::psi2(0.5), PsiFunction::psi2(3.0)}) {
          const auto r = lemma_instance(p, psi, g, grid);
          EXPECT_FALSE(r.contradicts()) << "seed " << s << " gamma " << g << " hyp "
                                        << r.hypothesis_margin << " con " << r.conclusion_margin;
          ++instances;
        }
      }
    }
  }
  EXPECT_EQ(instances, 6u * 3u * 5u * 4u);
}
