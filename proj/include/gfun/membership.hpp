/**
 * @file membership.hpp
 * @brief Grid-sampled membership tests for the classes B_n^sigma(gamma) and
 *        K_n^sigma(beta, gamma).
 *
 *   f in B_n^sigma(gamma)       iff  Re L_{n+1}^sigma f / L_n^sigma f  ~ gamma
 *   f in K_n^sigma(beta, gamma) iff  Re L_{n+1}^sigma f / L_n^sigma g  ~ beta,
 *                                    with g in B_n^sigma(gamma), 0 <= gamma < 1
 *
 * where "~" is ">" for parameters in [0, 1) and "<" for parameters above 1.
 * Ratios are formed pointwise from Horner values on a polar grid inside the
 * disk. Each report carries a signed margin and a truncation band; only a
 * margin outside the band yields a definite verdict.
 */
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gfun/operators.hpp"
#include "gfun/series.hpp"

namespace gfun {

enum class Relation { GreaterThan, LessThan };

/// ">" for 0 <= p < 1, "<" for p > 1.
inline Relation relation_for(double p) {
  if (!(p >= 0.0) || p == 1.0 || !std::isfinite(p))
    throw ParameterError("class parameter must be finite, nonnegative and different from 1");
  return p < 1.0 ? Relation::GreaterThan : Relation::LessThan;
}

struct ClassSpec {
  unsigned n = 0;
  double sigma = 0.0;
  double gamma = 0.0;
  std::optional<double> beta;  // present for K classes

  static ClassSpec B(unsigned n, double sigma, double gamma) {
    ClassSpec s{n, sigma, gamma, std::nullopt};
    s.validate();
    return s;
  }
  static ClassSpec K(unsigned n, double sigma, double beta, double gamma) {
    ClassSpec s{n, sigma, gamma, beta};
    s.validate();
    return s;
  }

  bool is_K() const noexcept { return beta.has_value(); }
  Relation relation_gamma() const { return relation_for(gamma); }
  std::optional<Relation> relation_beta() const {
    if (!beta) return std::nullopt;
    return relation_for(*beta);
  }
  /// The B class the witness of a K class must belong to.
  ClassSpec witness_class() const { return B(n, sigma, gamma); }

  void validate() const {
    if (!std::isfinite(sigma)) throw ParameterError("sigma must be finite");
    relation_for(gamma);
    if (beta) {
      relation_for(*beta);
      if (gamma >= 1.0) throw ParameterError("K classes need 0 <= gamma < 1");
    }
  }
};

struct DiskGrid {
  double r_max = 0.95;
  std::size_t n_radii = 24;
  std::size_t n_angles = 256;

  void validate() const {
    if (!(r_max > 0.0 && r_max < 1.0)) throw ParameterError("grid r_max must lie in (0, 1)");
    if (n_radii == 0 || n_angles == 0) throw ParameterError("grid counts must be positive");
  }
  /// r_i = r_max (i+1) / n_radii, i = 0..n_radii-1.
  double radius(std::size_t i) const {
    return r_max * static_cast<double>(i + 1) / static_cast<double>(n_radii);
  }
  /// theta_j = 2 pi j / n_angles.
  double angle(std::size_t j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_angles);
  }
  std::size_t size() const { return n_radii * n_angles; }
};

enum class Direction { Min, Max };
enum class Verdict { Member, NotMember, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "Member";
    case Verdict::NotMember: return "NotMember";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct MembershipReport {
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0.0;
  Complex argext;
  double truncation_bound = 0.0;
  DiskGrid grid;
  std::size_t skipped = 0;
};

/// Member iff margin > band, NotMember iff margin < -band.
inline Verdict verdict_for(double margin, double band) {
  if (margin > band) return Verdict::Member;
  if (margin < -band) return Verdict::NotMember;
  return Verdict::Inconclusive;
}

/// Points with |den(z)| below this are skipped.
inline constexpr double kDenominatorFloor = 1e-14;

/// One grid sample of num/den.
struct RatioSample {
  std::size_t radius_index;
  std::size_t angle_index;
  Complex z;
  Complex ratio;
  double den_abs;
  bool skipped;
};

/// num(z)/den(z) at every grid point, radius-major.
inline std::vector<RatioSample> ratio_field(const TruncatedSeries& num, const TruncatedSeries& den,
                                            const DiskGrid& grid) {
  grid.validate();
  const std::size_t m = grid.size();
  std::vector<double> zr(m), zi(m), nr(m), ni(m), dr(m), di(m);
  for (std::size_t i = 0; i < grid.n_radii; ++i) {
    for (std::size_t j = 0; j < grid.n_angles; ++j) {
      const Complex z = std::polar(grid.radius(i), grid.angle(j));
      zr[i * grid.n_angles + j] = z.real();
      zi[i * grid.n_angles + j] = z.imag();
    }
  }
  eval_many(num, zr, zi, nr, ni);
  eval_many(den, zr, zi, dr, di);

  std::vector<RatioSample> out;
  out.reserve(m);
  for (std::size_t idx = 0; idx < m; ++idx) {
    const Complex d{dr[idx], di[idx]};
    const double dabs = std::abs(d);
    RatioSample s{idx / grid.n_angles, idx % grid.n_angles, {zr[idx], zi[idx]}, {}, dabs, false};
    if (dabs < kDenominatorFloor) {
      s.skipped = true;
    } else {
      s.ratio = Complex{nr[idx], ni[idx]} / d;
    }
    out.push_back(s);
  }
  return out;
}

struct RatioExtremum {
  double value = 0.0;
  Complex argext;
  std::size_t skipped = 0;
};

inline RatioExtremum extremal_of(const std::vector<RatioSample>& field, Direction dir) {
  RatioExtremum best;
  bool found = false;
  for (const auto& s : field) {
    if (s.skipped) {
      ++best.skipped;
      continue;
    }
    const double v = s.ratio.real();
    if (!found || (dir == Direction::Min ? v < best.value : v > best.value)) {
      best.value = v;
      best.argext = s.z;
      found = true;
    }
  }
  if (!found) throw DegenerateEvaluation("every grid point has a vanishing denominator");
  return best;
}

/// Extremal Re num(z)/den(z) over the grid with its location.
inline RatioExtremum extremal_real_ratio(const TruncatedSeries& num, const TruncatedSeries& den,
                                         const DiskGrid& grid, Direction dir) {
  if (den[1] == Complex{}) throw DivisionError("denominator has c1 = 0");
  return extremal_of(ratio_field(num, den, grid), dir);
}

/**
 * Bound on the error of the sampled ratio caused by truncation. With
 * numerator and denominator tails tn, td at radius r, the ratio at a point
 * moves by at most (tn + |q| td) / (|den| - td); the band is the largest
 * such value over the grid.
 */
inline double ratio_truncation_bound(const TruncatedSeries& num, const TruncatedSeries& den,
                                     const DiskGrid& grid, const std::vector<RatioSample>& field) {
  std::vector<double> tn(grid.n_radii), td(grid.n_radii);
  for (std::size_t i = 0; i < grid.n_radii; ++i) {
    tn[i] = tail_bound(num, grid.radius(i));
    td[i] = tail_bound(den, grid.radius(i));
  }
  double band = 0.0;
  for (const auto& s : field) {
    if (s.skipped) continue;
    const double a = tn[s.radius_index];
    const double b = td[s.radius_index];
    if (a == 0.0 && b == 0.0) continue;
    if (!(s.den_abs > b)) return std::numeric_limits<double>::infinity();
    band = std::max(band, (a + std::abs(s.ratio) * b) / (s.den_abs - b));
  }
  return band;
}

/// Margin of Re num/den against `threshold` under `rel`, positive when satisfied.
inline MembershipReport ratio_report(const TruncatedSeries& num, const TruncatedSeries& den,
                                     double threshold, Relation rel, const DiskGrid& grid) {
  if (den[1] == Complex{}) throw DivisionError("denominator has c1 = 0");
  const auto field = ratio_field(num, den, grid);
  const auto ext = extremal_of(field, rel == Relation::GreaterThan ? Direction::Min : Direction::Max);
  MembershipReport r;
  r.margin = rel == Relation::GreaterThan ? ext.value - threshold : threshold - ext.value;
  r.argext = ext.argext;
  r.truncation_bound = ratio_truncation_bound(num, den, grid, field);
  r.verdict = verdict_for(r.margin, r.truncation_bound);
  r.grid = grid;
  r.skipped = ext.skipped;
  return r;
}

/// Membership of f in B_n^sigma(gamma).
inline MembershipReport check_B(const NormalizedSeries& f, const ClassSpec& spec,
                                const DiskGrid& grid = {}) {
  spec.validate();
  if (spec.is_K()) throw ParameterError("check_B takes a B-class spec (no beta)");
  return ratio_report(composite_L(f, spec.n + 1, spec.sigma), composite_L(f, spec.n, spec.sigma),
                      spec.gamma, spec.relation_gamma(), grid);
}

/**
 * Membership of f in K_n^sigma(beta, gamma) with witness g. The witness is
 * checked against B_n^sigma(gamma) first; anything short of a Member verdict
 * raises WitnessNotInClass.
 */
inline MembershipReport check_K(const NormalizedSeries& f, const NormalizedSeries& g,
                                const ClassSpec& spec, const DiskGrid& grid = {}) {
  spec.validate();
  if (!spec.is_K()) throw ParameterError("check_K takes a K-class spec (with beta)");
  const auto w = check_B(g, spec.witness_class(), grid);
  if (w.verdict != Verdict::Member) {
    std::ostringstream msg;
    msg << "witness verdict " << to_string(w.verdict) << " in B_" << spec.n << "^" << spec.sigma
        << "(" << spec.gamma << "), margin " << w.margin;
    throw WitnessNotInClass(msg.str());
  }
  return ratio_report(composite_L(f, spec.n + 1, spec.sigma), composite_L(g, spec.n, spec.sigma),
                      *spec.beta, *spec.relation_beta(), grid);
}

/// Parameters for check_named; unused fields are ignored by the chosen class.
struct NamedParams {
  unsigned n = 0;
  double sigma = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
};

inline const std::vector<std::string_view>& named_classes() {
  static const std::vector<std::string_view> names = {
      "starlike", "convex",          "salagean",     "obradovic", "liu_star", "liu_convex",
      "close_to_convex", "quasi_convex", "blezu", "liu_k", "liu_kstar"};
  return names;
}

/// The (n, sigma, gamma[, beta]) of a named special class.
inline ClassSpec resolve_named(std::string_view name, const NamedParams& p) {
  if (name == "starlike") return ClassSpec::B(0, 0.0, p.gamma);
  if (name == "convex") return ClassSpec::B(1, 0.0, p.gamma);
  if (name == "salagean") return ClassSpec::B(p.n, 0.0, p.gamma);
  if (name == "obradovic")
    return ClassSpec::B(p.n, 0.0, (p.n + 2.0) / (p.n + 1.0));
  if (name == "liu_star") return ClassSpec::B(0, p.sigma, p.gamma);
  if (name == "liu_convex") return ClassSpec::B(1, p.sigma, p.gamma);
  if (name == "close_to_convex") return ClassSpec::K(0, 0.0, p.beta, p.gamma);
  if (name == "quasi_convex") return ClassSpec::K(1, 0.0, p.beta, p.gamma);
  if (name == "blezu") return ClassSpec::K(p.n, 0.0, p.beta, p.gamma);
  if (name == "liu_k") return ClassSpec::K(0, p.sigma, p.beta, p.gamma);
  if (name == "liu_kstar") return ClassSpec::K(1, p.sigma, p.beta, p.gamma);
  throw DispatchError("unknown class name '" + std::string(name) + "'");
}

/// Dispatch to check_B / check_K by class name. K classes need a witness.
inline MembershipReport check_named(const NormalizedSeries& f, std::string_view name,
                                    const NamedParams& params, const DiskGrid& grid = {},
                                    const NormalizedSeries* witness = nullptr) {
  const auto spec = resolve_named(name, params);
  if (!spec.is_K()) return check_B(f, spec, grid);
  if (witness == nullptr)
    throw ParameterError("class '" + std::string(name) + "' needs a witness function");
  return check_K(f, *witness, spec, grid);
}

}  // namespace gfun
