/**
 * @file lemma_lab.hpp
 * @brief Numeric checks around the admissible set Psi_gamma and the lemma
 *        "p in P(Psi_gamma) implies Re p ~ gamma".
 *
 * A function psi(u, v) is admissible for gamma when Re psi(1, 0) > 0 and, at
 * u = gamma + (1 - gamma) u2 i with real v = v1,
 *   0 <= gamma < 1:  2 v1 <= -(1 - gamma)(1 + u2^2)  implies  Re psi <= gamma
 *   gamma > 1:       2 v1 >=  (gamma - 1)(1 + u2^2)  implies  Re psi >= gamma.
 * The two families used by the inclusion and closure arguments are
 *   psi1(u, v) = u + v / (xi + alpha),  xi + Re alpha > 0
 *   psi2(u, v) = u + v / (xi + u),      xi + gamma > 0, u != -xi.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "gfun/membership.hpp"
#include "gfun/series.hpp"
#include "gfun/zoo.hpp"

namespace gfun {

enum class PsiKind { Psi1, Psi2, Custom };

/// alpha as a function of the disk point.
using AlphaField = std::function<Complex(Complex)>;

struct PsiFunction {
  PsiKind kind = PsiKind::Psi2;
  double xi = 0.0;
  AlphaField alpha;
  std::function<Complex(Complex, Complex)> custom;

  static PsiFunction psi1(double xi, AlphaField alpha) {
    return {PsiKind::Psi1, xi, std::move(alpha), {}};
  }
  static PsiFunction psi2(double xi) { return {PsiKind::Psi2, xi, {}, {}}; }
  static PsiFunction from(std::function<Complex(Complex, Complex)> f) {
    return {PsiKind::Custom, 0.0, {}, std::move(f)};
  }
};

/// psi(u, v); z is the disk point at which psi1's alpha is taken.
inline Complex eval_psi(const PsiFunction& psi, Complex u, Complex v, Complex z = {}) {
  switch (psi.kind) {
    case PsiKind::Psi1: {
      if (!psi.alpha) throw ParameterError("psi1 needs an alpha field");
      const Complex a = psi.alpha(z);
      if (!(psi.xi + a.real() > 0.0)) throw DomainError("psi1 requires xi + Re alpha > 0");
      return u + v / (psi.xi + a);
    }
    case PsiKind::Psi2: {
      const Complex d = psi.xi + u;
      if (d == Complex{}) throw DomainError("psi2 is undefined at u = -xi");
      return u + v / d;
    }
    case PsiKind::Custom:
      if (!psi.custom) throw ParameterError("custom psi needs a function");
      return psi.custom(u, v);
  }
  throw DispatchError("unknown psi kind");
}

enum class Branch { LowGamma, HighGamma };

inline Branch branch_for(double gamma) {
  return relation_for(gamma) == Relation::GreaterThan ? Branch::LowGamma : Branch::HighGamma;
}

/// A point (gamma + (1 - gamma) u2 i, v1) of the constraint region.
struct BoundaryConstraintSample {
  double gamma = 0.0;
  double u2 = 0.0;
  double v1 = 0.0;
  Branch branch = Branch::LowGamma;

  /// v1 on the parabola 2 v1 = -/+ |1 - gamma| (1 + u2^2).
  static double parabola(double gamma, double u2) { return -0.5 * (1.0 - gamma) * (1.0 + u2 * u2); }

  bool in_region() const {
    const double edge = parabola(gamma, u2);
    return branch == Branch::LowGamma ? v1 <= edge : v1 >= edge;
  }
  Complex u() const { return {gamma, (1.0 - gamma) * u2}; }
  Complex v() const { return {v1, 0.0}; }
};

struct ConditionTally {
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::size_t violations = 0;
  std::size_t outside_domain = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
};

struct ConditionReport {
  double gamma = 0.0;
  Branch branch = Branch::LowGamma;
  ConditionTally at_unit;   // Re psi(1, 0) > 0
  ConditionTally boundary;  // the gamma-dependent constraint condition
  std::optional<BoundaryConstraintSample> worst;

  bool ok() const { return at_unit.violations == 0 && boundary.violations == 0; }
};

/**
 * Samples the admissibility conditions. u2 is uniform on [-u2_cap, u2_cap];
 * a quarter of the v1 samples sit exactly on the parabola and the rest are
 * pushed into the region by 10^e with e uniform on [-6, 3]. For psi1 the
 * alpha field is read at a uniformly random point of the disk |z| <= 0.95.
 * Samples outside the domain of psi are counted, not treated as failures.
 */
inline ConditionReport check_psi_conditions(const PsiFunction& psi, double gamma,
                                            std::size_t n_samples, std::uint64_t seed,
                                            double u2_cap = 10.0) {
  const Branch branch = branch_for(gamma);
  if (psi.kind == PsiKind::Psi2 && !(psi.xi + gamma > 0.0))
    throw ParameterError("psi2 needs xi + gamma > 0");
  ConditionReport rep;
  rep.gamma = gamma;
  rep.branch = branch;
  Rng rng(seed);

  for (std::size_t i = 0; i < n_samples; ++i) {
    const Complex z = std::polar(0.95 * std::sqrt(rng.uniform()),
                                 rng.uniform(0.0, 2.0 * std::numbers::pi));

    ++rep.at_unit.samples;
    try {
      const double m = eval_psi(psi, 1.0, 0.0, z).real();
      rep.at_unit.worst_margin = std::min(rep.at_unit.worst_margin, m);
      ++(m > 0.0 ? rep.at_unit.passed : rep.at_unit.violations);
    } catch (const DomainError&) {
      ++rep.at_unit.outside_domain;
    }

    BoundaryConstraintSample s{gamma, rng.uniform(-u2_cap, u2_cap), 0.0, branch};
    const double excess = (i % 4 == 0) ? 0.0 : std::pow(10.0, rng.uniform(-6.0, 3.0));
    s.v1 = BoundaryConstraintSample::parabola(gamma, s.u2) +
           (branch == Branch::LowGamma ? -excess : excess);

    ++rep.boundary.samples;
    try {
      const double re = eval_psi(psi, s.u(), s.v(), z).real();
      const double m = branch == Branch::LowGamma ? gamma - re : re - gamma;
      if (m < rep.boundary.worst_margin) {
        rep.boundary.worst_margin = m;
        rep.worst = s;
      }
      ++(m >= 0.0 ? rep.boundary.passed : rep.boundary.violations);
    } catch (const DomainError&) {
      ++rep.boundary.outside_domain;
    }
  }
  return rep;
}

struct LemmaReport {
  double hypothesis_margin = 0.0;  // extremal Re psi(p, z p') against gamma
  double conclusion_margin = 0.0;  // extremal Re p against gamma
  Complex hypothesis_argext;
  Complex conclusion_argext;
  double truncation_bound = 0.0;  // max tail of p and z p' over the grid radii
  std::size_t skipped = 0;        // grid points outside the domain of psi
  DiskGrid grid;

  /// True when the sample contradicts the lemma beyond `k` truncation bands.
  bool contradicts(double k = 2.0) const {
    return hypothesis_margin > k * truncation_bound && conclusion_margin < -k * truncation_bound;
  }
};

/**
 * Evaluates both sides of the lemma on the grid for p with p(0) = 1.
 * Margins are signed as for membership: min - gamma for gamma < 1,
 * gamma - max for gamma > 1.
 */
inline LemmaReport lemma_instance(const TruncatedSeries& p, const PsiFunction& psi, double gamma,
                                  const DiskGrid& grid = {}) {
  grid.validate();
  const Branch branch = branch_for(gamma);
  if (std::abs(p[0] - Complex{1.0, 0.0}) > 1e-12)
    throw ParameterError("lemma_instance requires p(0) = 1");
  const auto zp = z_derivative(p);

  const std::size_t m = grid.size();
  std::vector<double> zr(m), zi(m), pr(m), pi(m), vr(m), vi(m);
  for (std::size_t i = 0; i < grid.n_radii; ++i)
    for (std::size_t j = 0; j < grid.n_angles; ++j) {
      const Complex z = std::polar(grid.radius(i), grid.angle(j));
      zr[i * grid.n_angles + j] = z.real();
      zi[i * grid.n_angles + j] = z.imag();
    }
  eval_many(p, zr, zi, pr, pi);
  eval_many(zp, zr, zi, vr, vi);

  const bool low = branch == Branch::LowGamma;
  auto better = [low](double a, double b) { return low ? a < b : a > b; };
  LemmaReport rep;
  rep.grid = grid;
  std::optional<double> hyp, con;
  for (std::size_t idx = 0; idx < m; ++idx) {
    const Complex z{zr[idx], zi[idx]};
    const Complex u{pr[idx], pi[idx]};
    if (!con || better(u.real(), *con)) {
      con = u.real();
      rep.conclusion_argext = z;
    }
    try {
      const double re = eval_psi(psi, u, {vr[idx], vi[idx]}, z).real();
      if (!std::isfinite(re)) {
        ++rep.skipped;
        continue;
      }
      if (!hyp || better(re, *hyp)) {
        hyp = re;
        rep.hypothesis_argext = z;
      }
    } catch (const DomainError&) {
      ++rep.skipped;
    }
  }
  if (!hyp) throw DegenerateEvaluation("psi undefined at every grid point");
  rep.hypothesis_margin = low ? *hyp - gamma : gamma - *hyp;
  rep.conclusion_margin = low ? *con - gamma : gamma - *con;
  for (std::size_t i = 0; i < grid.n_radii; ++i) {
    const double r = grid.radius(i);
    rep.truncation_bound = std::max({rep.truncation_bound, tail_bound(p, r), tail_bound(zp, r)});
  }
  return rep;
}

/// alpha(z) = num(z) / den(z), e.g. the ratio field of a witness function.
inline AlphaField ratio_alpha(TruncatedSeries num, TruncatedSeries den) {
  return [num = std::move(num), den = std::move(den)](Complex z) {
    return eval(num, z) / eval(den, z);
  };
}

/// alpha(z) = p(z) for a series p.
inline AlphaField series_alpha(TruncatedSeries p) {
  return [p = std::move(p)](Complex z) { return eval(p, z); };
}

}  // namespace gfun
