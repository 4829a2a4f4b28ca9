/**
 * @file harness.hpp
 * @brief Inclusion and Bernardi-closure theorems run as numerical predictions.
 *
 *   T1  K_{n+1}^sigma(beta, gamma) in K_n^sigma(beta, gamma)
 *   T2  K_n^sigma(beta, gamma)     in K_n^{sigma+1}(beta, gamma)
 *   T3  B_{n+1}^sigma(gamma)       in B_n^sigma(gamma)
 *   T4  B_n^sigma(gamma)           in B_n^{sigma+1}(gamma)
 *   T5  F_c maps B_n^sigma(gamma) into itself,          c > -1, c + gamma > 0
 *   T6  F_c maps K_n^sigma(beta, gamma) into itself,    same constraints
 *
 * Each case checks a premise class and a conclusion class. A case is
 * Violated only when the premise holds and the conclusion fails, both by
 * more than twice their truncation bands; a premise that is not a clear
 * Member leaves the case Inconclusive.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfun/membership.hpp"
#include "gfun/operators.hpp"
#include "gfun/zoo.hpp"

namespace gfun {

enum class Theorem { T1, T2, T3, T4, T5, T6 };
enum class CaseStatus { Confirmed, Violated, Inconclusive };

inline constexpr std::array<Theorem, 6> kAllTheorems = {Theorem::T1, Theorem::T2, Theorem::T3,
                                                        Theorem::T4, Theorem::T5, Theorem::T6};

inline std::string_view to_string(Theorem t) {
  static constexpr std::array<std::string_view, 6> names = {"T1", "T2", "T3", "T4", "T5", "T6"};
  return names[static_cast<std::size_t>(t)];
}

inline std::optional<Theorem> parse_theorem(std::string_view s) {
  for (auto t : kAllTheorems)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

inline std::string_view to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Confirmed: return "Confirmed";
    case CaseStatus::Violated: return "Violated";
    case CaseStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline bool is_k_theorem(Theorem t) {
  return t == Theorem::T1 || t == Theorem::T2 || t == Theorem::T6;
}

struct CaseParams {
  unsigned n = 0;
  double sigma = 0.0;
  double gamma = 0.0;
  std::optional<double> beta;
  std::optional<double> c;
  std::string specialization;  // named class the parameters reduce to, if any
  bool exploratory = false;    // K class with beta > 1
};

struct CaseRecord {
  std::string subject;
  CaseParams params;
  std::optional<MembershipReport> premise;
  std::optional<MembershipReport> conclusion;
  CaseStatus status = CaseStatus::Inconclusive;
  std::string reason;
};

struct SearchSummary {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t confirmed = 0;
  std::size_t inconclusive = 0;
  std::size_t violated = 0;
};

struct SuiteReport {
  Theorem theorem = Theorem::T1;
  DiskGrid grid;
  std::vector<CaseRecord> cases;
  std::optional<SearchSummary> search;

  std::size_t count(CaseStatus s) const {
    std::size_t k = 0;
    for (const auto& c : cases) k += c.status == s;
    return k;
  }
  std::size_t violated() const {
    return search ? search->violated : count(CaseStatus::Violated);
  }
  CaseStatus status() const {
    if (violated() > 0) return CaseStatus::Violated;
    if (!search && !cases.empty() && count(CaseStatus::Confirmed) == cases.size())
      return CaseStatus::Confirmed;
    if (search && search->inconclusive == 0) return CaseStatus::Confirmed;
    return CaseStatus::Inconclusive;
  }
};

/// Case status from premise and conclusion reports.
inline CaseStatus classify(const MembershipReport& premise, const MembershipReport& conclusion) {
  if (premise.verdict == Verdict::Member && premise.margin > 2.0 * premise.truncation_bound &&
      conclusion.verdict == Verdict::NotMember &&
      conclusion.margin < -2.0 * conclusion.truncation_bound)
    return CaseStatus::Violated;
  if (premise.verdict == Verdict::Member && conclusion.verdict == Verdict::Member)
    return CaseStatus::Confirmed;
  return CaseStatus::Inconclusive;
}

struct Subject {
  std::string name;
  NormalizedSeries f;
};

/// f together with the witness g of its K class.
struct KSubject {
  std::string name;
  NormalizedSeries f;
  NormalizedSeries g;
};

/// c > -1 and c + gamma > 0.
inline void validate_bernardi_parameter(double c, double gamma) {
  if (!(c > -1.0) || !std::isfinite(c))
    throw ParameterError("Bernardi parameter must satisfy c > -1 (got " + std::to_string(c) + ")");
  if (!(c + gamma > 0.0))
    throw ParameterError("closure needs c + gamma > 0 (got c + gamma = " +
                         std::to_string(c + gamma) + ")");
}

namespace detail {

inline std::string named_specialization(unsigned n, double sigma, double gamma, bool k_class) {
  if (k_class) {
    if (sigma == 0.0) return n == 0 ? "close_to_convex" : n == 1 ? "quasi_convex" : "blezu";
    return n == 0 ? "liu_k" : n == 1 ? "liu_kstar" : "";
  }
  if (sigma == 0.0) {
    if (gamma > 1.0) return gamma == (n + 2.0) / (n + 1.0) ? "obradovic" : "";
    return n == 0 ? "starlike" : n == 1 ? "convex" : "salagean";
  }
  if (gamma > 1.0) return "";
  return n == 0 ? "liu_star" : n == 1 ? "liu_convex" : "";
}

inline CaseParams b_params(unsigned n, double sigma, double gamma,
                           std::optional<double> c = std::nullopt) {
  CaseParams p{n, sigma, gamma, std::nullopt, c, named_specialization(n, sigma, gamma, false), false};
  return p;
}

inline CaseParams k_params(unsigned n, double sigma, double beta, double gamma,
                           std::optional<double> c = std::nullopt) {
  CaseParams p{n, sigma, gamma, beta, c, named_specialization(n, sigma, gamma, true), beta > 1.0};
  return p;
}

template <class Premise, class Conclusion>
CaseRecord run_case(std::string subject, CaseParams params, Premise&& premise,
                    Conclusion&& conclusion) {
  CaseRecord rec{std::move(subject), std::move(params), std::nullopt, std::nullopt,
                 CaseStatus::Inconclusive, {}};
  try {
    rec.premise = premise();
  } catch (const WitnessNotInClass& e) {
    rec.reason = std::string("premise witness: ") + e.what();
    return rec;
  } catch (const std::exception& e) {
    rec.reason = std::string("premise: ") + e.what();
    return rec;
  }
  try {
    rec.conclusion = conclusion();
  } catch (const WitnessNotInClass& e) {
    rec.reason = std::string("conclusion witness: ") + e.what();
    return rec;
  } catch (const std::exception& e) {
    rec.reason = std::string("conclusion: ") + e.what();
    return rec;
  }
  rec.status = classify(*rec.premise, *rec.conclusion);
  if (rec.status == CaseStatus::Inconclusive) {
    rec.reason = rec.premise->verdict != Verdict::Member ? "premise not a clear member"
                                                        : "conclusion within truncation band";
  }
  return rec;
}

}  // namespace detail

/// T3: premise B_{n+1}^sigma(gamma), conclusion B_n^sigma(gamma).
inline CaseRecord case_T3(const Subject& s, unsigned n, double sigma, double gamma,
                          const DiskGrid& grid) {
  return detail::run_case(
      s.name, detail::b_params(n, sigma, gamma),
      [&] { return check_B(s.f, ClassSpec::B(n + 1, sigma, gamma), grid); },
      [&] { return check_B(s.f, ClassSpec::B(n, sigma, gamma), grid); });
}

/// T4: premise B_n^sigma(gamma), conclusion B_n^{sigma+1}(gamma).
inline CaseRecord case_T4(const Subject& s, unsigned n, double sigma, double gamma,
                          const DiskGrid& grid) {
  return detail::run_case(
      s.name, detail::b_params(n, sigma, gamma),
      [&] { return check_B(s.f, ClassSpec::B(n, sigma, gamma), grid); },
      [&] { return check_B(s.f, ClassSpec::B(n, sigma + 1.0, gamma), grid); });
}

/// T1: premise K_{n+1}^sigma(beta, gamma), conclusion K_n^sigma(beta, gamma), same witness.
inline CaseRecord case_T1(const KSubject& s, unsigned n, double sigma, double beta, double gamma,
                          const DiskGrid& grid) {
  return detail::run_case(
      s.name, detail::k_params(n, sigma, beta, gamma),
      [&] { return check_K(s.f, s.g, ClassSpec::K(n + 1, sigma, beta, gamma), grid); },
      [&] { return check_K(s.f, s.g, ClassSpec::K(n, sigma, beta, gamma), grid); });
}

/// T2: premise K_n^sigma(beta, gamma), conclusion K_n^{sigma+1}(beta, gamma), same witness.
inline CaseRecord case_T2(const KSubject& s, unsigned n, double sigma, double beta, double gamma,
                          const DiskGrid& grid) {
  return detail::run_case(
      s.name, detail::k_params(n, sigma, beta, gamma),
      [&] { return check_K(s.f, s.g, ClassSpec::K(n, sigma, beta, gamma), grid); },
      [&] { return check_K(s.f, s.g, ClassSpec::K(n, sigma + 1.0, beta, gamma), grid); });
}

/// T5: premise f in B_n^sigma(gamma), conclusion F_c f in B_n^sigma(gamma).
inline CaseRecord case_T5(const Subject& s, unsigned n, double sigma, double gamma, double c,
                          const DiskGrid& grid) {
  validate_bernardi_parameter(c, gamma);
  return detail::run_case(
      s.name, detail::b_params(n, sigma, gamma, c),
      [&] { return check_B(s.f, ClassSpec::B(n, sigma, gamma), grid); },
      [&] { return check_B(bernardi(s.f, c), ClassSpec::B(n, sigma, gamma), grid); });
}

/// T6: premise f in K_n^sigma(beta, gamma) w.r.t. g, conclusion F_c f w.r.t. G_c = F_c g.
inline CaseRecord case_T6(const KSubject& s, unsigned n, double sigma, double beta, double gamma,
                          double c, const DiskGrid& grid) {
  validate_bernardi_parameter(c, gamma);
  return detail::run_case(
      s.name, detail::k_params(n, sigma, beta, gamma, c),
      [&] { return check_K(s.f, s.g, ClassSpec::K(n, sigma, beta, gamma), grid); },
      [&] {
        return check_K(bernardi(s.f, c), bernardi(s.g, c), ClassSpec::K(n, sigma, beta, gamma),
                       grid);
      });
}

inline std::pair<SuiteReport, SuiteReport> run_T3_T4(const std::vector<Subject>& subjects,
                                                     unsigned n, double sigma, double gamma,
                                                     const DiskGrid& grid = {}) {
  SuiteReport t3{Theorem::T3, grid, {}, std::nullopt};
  SuiteReport t4{Theorem::T4, grid, {}, std::nullopt};
  for (const auto& s : subjects) {
    t3.cases.push_back(case_T3(s, n, sigma, gamma, grid));
    t4.cases.push_back(case_T4(s, n, sigma, gamma, grid));
  }
  return {std::move(t3), std::move(t4)};
}

inline std::pair<SuiteReport, SuiteReport> run_T1_T2(const std::vector<KSubject>& subjects,
                                                     unsigned n, double sigma, double beta,
                                                     double gamma, const DiskGrid& grid = {}) {
  SuiteReport t1{Theorem::T1, grid, {}, std::nullopt};
  SuiteReport t2{Theorem::T2, grid, {}, std::nullopt};
  for (const auto& s : subjects) {
    t1.cases.push_back(case_T1(s, n, sigma, beta, gamma, grid));
    t2.cases.push_back(case_T2(s, n, sigma, beta, gamma, grid));
  }
  return {std::move(t1), std::move(t2)};
}

/// Every c is validated before any case runs.
inline std::pair<SuiteReport, SuiteReport> run_T5_T6(const std::vector<Subject>& subjects,
                                                     const std::vector<KSubject>& k_subjects,
                                                     unsigned n, double sigma, double gamma,
                                                     double beta, const std::vector<double>& cs,
                                                     const DiskGrid& grid = {}) {
  for (double c : cs) validate_bernardi_parameter(c, gamma);
  SuiteReport t5{Theorem::T5, grid, {}, std::nullopt};
  SuiteReport t6{Theorem::T6, grid, {}, std::nullopt};
  for (double c : cs) {
    for (const auto& s : subjects) t5.cases.push_back(case_T5(s, n, sigma, gamma, c, grid));
    for (const auto& s : k_subjects) t6.cases.push_back(case_T6(s, n, sigma, beta, gamma, c, grid));
  }
  return {std::move(t5), std::move(t6)};
}

// ---------------------------------------------------------------------------
// Constructive subjects

/// f0 with z f0'/f0 = gamma + (1 - gamma) p, lifted so that L_level^sigma f = f0.
inline NormalizedSeries b_member(const TruncatedSeries& p, unsigned level, double sigma,
                                 double gamma) {
  return lift_to_B(starlike_from_p(p, gamma), level, sigma);
}

/**
 * (f, g) with L_level g = g0, z g0'/g0 = gamma + (1 - gamma) p_g and
 * L_{level+1} f / L_level g = beta + (1 - beta) p_f.
 */
inline KSubject k_member(std::string name, const TruncatedSeries& p_g, const TruncatedSeries& p_f,
                         unsigned level, double sigma, double beta, double gamma) {
  const auto g0 = starlike_from_p(p_g, gamma);
  const auto f0 = close_to_convex_from(g0, p_f, beta);
  return {std::move(name), lift_to_B(f0, level, sigma), lift_to_B(g0, level, sigma)};
}

/// (1 + z)/(1 - z).
inline TruncatedSeries moebius_p(std::size_t order = kDefaultOrder) {
  return herglotz_p(HerglotzSpec{{Complex{1.0, 0.0}}, {1.0}}, order);
}

/// Premise level of the B class for a theorem at parameter n.
inline unsigned premise_level(Theorem t, unsigned n) {
  return (t == Theorem::T1 || t == Theorem::T3) ? n + 1 : n;
}

/// Subjects for B theorems at (n, sigma, gamma), built to satisfy the premise.
inline std::vector<Subject> b_subjects(Theorem t, unsigned n, double sigma, double gamma,
                                       std::uint64_t seed, std::size_t order = kDefaultOrder) {
  const unsigned level = premise_level(t, n);
  std::vector<Subject> out;
  out.push_back({"identity", identity_series(order)});
  out.push_back({"lift(extremal)", b_member(moebius_p(order), level, sigma, gamma)});
  out.push_back({"lift(herglotz:" + std::to_string(seed) + ")",
                 b_member(herglotz_p(random_herglotz_spec(seed), order), level, sigma, gamma)});
  return out;
}

/// Subjects for K theorems at (n, sigma, beta, gamma), built to satisfy the premise.
inline std::vector<KSubject> k_subjects(Theorem t, unsigned n, double sigma, double beta,
                                        double gamma, std::uint64_t seed,
                                        std::size_t order = kDefaultOrder) {
  const unsigned level = premise_level(t, n);
  std::vector<KSubject> out;
  out.push_back({"identity", identity_series(order), identity_series(order)});
  out.push_back(k_member("lift(extremal,extremal)", moebius_p(order), moebius_p(order), level,
                         sigma, beta, gamma));
  out.push_back(k_member("lift(herglotz:" + std::to_string(seed) + ",herglotz:" +
                             std::to_string(seed + 1) + ")",
                         herglotz_p(random_herglotz_spec(seed), order),
                         herglotz_p(random_herglotz_spec(seed + 1), order), level, sigma, beta,
                         gamma));
  return out;
}

/// Runs one theorem on the constructive subjects for a single parameter set.
inline SuiteReport run_parameterized(Theorem t, unsigned n, double sigma, double gamma,
                                     double beta, const std::vector<double>& cs,
                                     std::uint64_t seed, const DiskGrid& grid = {},
                                     std::size_t order = kDefaultOrder) {
  if (t == Theorem::T5 || t == Theorem::T6)
    for (double c : cs) validate_bernardi_parameter(c, gamma);
  SuiteReport rep{t, grid, {}, std::nullopt};
  if (is_k_theorem(t)) {
    for (const auto& s : k_subjects(t, n, sigma, beta, gamma, seed, order)) {
      if (t == Theorem::T1) rep.cases.push_back(case_T1(s, n, sigma, beta, gamma, grid));
      if (t == Theorem::T2) rep.cases.push_back(case_T2(s, n, sigma, beta, gamma, grid));
      if (t == Theorem::T6)
        for (double c : cs) rep.cases.push_back(case_T6(s, n, sigma, beta, gamma, c, grid));
    }
  } else {
    for (const auto& s : b_subjects(t, n, sigma, gamma, seed, order)) {
      if (t == Theorem::T3) rep.cases.push_back(case_T3(s, n, sigma, gamma, grid));
      if (t == Theorem::T4) rep.cases.push_back(case_T4(s, n, sigma, gamma, grid));
      if (t == Theorem::T5)
        for (double c : cs) rep.cases.push_back(case_T5(s, n, sigma, gamma, c, grid));
    }
  }
  return rep;
}

/**
 * The fixed battery for one theorem: every named specialization the theorem
 * covers (six B classes or five K classes), three constructive subjects each,
 * plus unlifted zoo members and, for the closure theorems, several c values.
 */
inline SuiteReport standard_battery(Theorem t, std::uint64_t seed, const DiskGrid& grid = {},
                                    std::size_t order = kDefaultOrder) {
  struct BSpec {
    unsigned n;
    double sigma, gamma, c;
  };
  struct KSpec {
    unsigned n;
    double sigma, beta, gamma, c;
  };
  static const std::vector<BSpec> b_specs = {
      {0, 0.0, 0.0, 1.0},        // starlike
      {1, 0.0, 0.25, 0.0},       // convex
      {2, 0.0, 0.5, 3.0},        // salagean
      {1, 0.0, 1.5, 0.5},        // obradovic, gamma = (n+2)/(n+1)
      {0, 0.5, 0.2, 1.0},        // liu_star
      {1, -1.0, 0.4, -0.3},      // liu_convex
  };
  static const std::vector<KSpec> k_specs = {
      {0, 0.0, 0.0, 0.0, 1.0},     // close_to_convex
      {1, 0.0, 0.3, 0.5, 0.0},     // quasi_convex
      {2, 0.0, 0.5, 0.25, 3.0},    // blezu
      {0, 0.5, 0.2, 0.0, 0.5},     // liu_k
      {1, -0.5, 0.6, 0.7, -0.5},   // liu_kstar
  };

  SuiteReport rep{t, grid, {}, std::nullopt};
  std::uint64_t s = seed;
  if (is_k_theorem(t)) {
    for (const auto& k : k_specs) {
      const std::vector<double> cs = {k.c};
      auto part = run_parameterized(t, k.n, k.sigma, k.gamma, k.beta, cs, s++, grid, order);
      for (auto& c : part.cases) rep.cases.push_back(std::move(c));
    }
    // Unlifted: Koebe is close-to-convex with respect to itself.
    const KSubject koebe{"koebe:0/koebe:0", koebe_general(0.0, order), koebe_general(0.0, order)};
    if (t == Theorem::T1) rep.cases.push_back(case_T1(koebe, 0, 0.0, 0.0, 0.0, grid));
    if (t == Theorem::T2) rep.cases.push_back(case_T2(koebe, 0, 0.0, 0.0, 0.0, grid));
    if (t == Theorem::T6) rep.cases.push_back(case_T6(koebe, 0, 0.0, 0.0, 0.0, 1.0, grid));
  } else {
    for (const auto& b : b_specs) {
      const std::vector<double> cs = {b.c};
      auto part = run_parameterized(t, b.n, b.sigma, b.gamma, 0.0, cs, s++, grid, order);
      for (auto& c : part.cases) rep.cases.push_back(std::move(c));
    }
    const Subject koebe{"koebe:0", koebe_general(0.0, order)};
    const Subject half{"halfplane", halfplane(order)};
    for (const auto* subj : {&koebe, &half}) {
      if (t == Theorem::T3) rep.cases.push_back(case_T3(*subj, 0, 0.0, 0.0, grid));
      if (t == Theorem::T4) rep.cases.push_back(case_T4(*subj, 0, 0.0, 0.0, grid));
      if (t == Theorem::T5) rep.cases.push_back(case_T5(*subj, 0, 0.0, 0.0, 1.0, grid));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Randomized search

/**
 * Random premise-constructive trials: n in {0..4}, sigma in [-2, 3],
 * gamma in [0, 0.95) (B theorems: one trial in eight takes gamma in (1, 2.5]),
 * beta in [0, 0.95), c in (-1, 4] with c + gamma > 0. Subjects come from
 * random Herglotz specs; one trial in four perturbs the subject so that the
 * premise is no longer guaranteed. Only Violated cases are kept.
 */
inline SuiteReport counterexample_search(std::uint64_t seed, std::size_t trials, Theorem t,
                                         const DiskGrid& grid = {},
                                         std::size_t order = kDefaultOrder) {
  if (trials < 1) throw ParameterError("counterexample_search needs trials >= 1");
  SuiteReport rep{t, grid, {}, SearchSummary{seed, trials, 0, 0, 0}};
  Rng rng(seed * 0x2545f4914f6cdd1dULL + static_cast<std::uint64_t>(t) + 1);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const unsigned n = static_cast<unsigned>(rng.below(5));
    const double sigma = rng.uniform(-2.0, 3.0);
    double gamma = rng.uniform(0.0, 0.95);
    if (!is_k_theorem(t) && rng.below(8) == 0) gamma = rng.uniform(1.0, 2.5);
    if (gamma == 1.0) gamma = 0.5;
    const double beta = rng.uniform(0.0, 0.95);
    double c = rng.uniform(-1.0, 4.0);
    while (!(c > -1.0 && c + gamma > 0.0)) c = rng.uniform(-1.0, 4.0);
    const std::uint64_t sg = rng.below(1ULL << 40);
    const std::uint64_t sf = rng.below(1ULL << 40);
    const bool perturb = rng.below(4) == 0;
    const double eps = rng.uniform(0.0, 0.05);
    const std::uint64_t sp = rng.below(1ULL << 40);

    const unsigned level = premise_level(t, n);
    const auto pg = herglotz_p(random_herglotz_spec(sg), order);
    const std::string tag = "trial " + std::to_string(trial);

    auto perturbed = [&](const NormalizedSeries& f0) {
      if (!perturb) return f0;
      const auto noise = random_normalized(sp, 1.5, order);
      std::vector<Complex> c0(f0.coeffs().begin(), f0.coeffs().end());
      for (std::size_t k = 2; k < c0.size(); ++k) c0[k] += eps * noise[k];
      return NormalizedSeries(std::move(c0));
    };

    CaseRecord rec;
    if (is_k_theorem(t)) {
      const auto pf = herglotz_p(random_herglotz_spec(sf), order);
      const auto g0 = starlike_from_p(pg, gamma);
      const auto f0 = perturbed(close_to_convex_from(g0, pf, beta));
      const KSubject s{tag, lift_to_B(f0, level, sigma), lift_to_B(g0, level, sigma)};
      if (t == Theorem::T1) rec = case_T1(s, n, sigma, beta, gamma, grid);
      if (t == Theorem::T2) rec = case_T2(s, n, sigma, beta, gamma, grid);
      if (t == Theorem::T6) rec = case_T6(s, n, sigma, beta, gamma, c, grid);
    } else {
      const Subject s{tag, lift_to_B(perturbed(starlike_from_p(pg, gamma)), level, sigma)};
      if (t == Theorem::T3) rec = case_T3(s, n, sigma, gamma, grid);
      if (t == Theorem::T4) rec = case_T4(s, n, sigma, gamma, grid);
      if (t == Theorem::T5) rec = case_T5(s, n, sigma, gamma, c, grid);
    }
    switch (rec.status) {
      case CaseStatus::Confirmed: ++rep.search->confirmed; break;
      case CaseStatus::Inconclusive: ++rep.search->inconclusive; break;
      case CaseStatus::Violated:
        ++rep.search->violated;
        rep.cases.push_back(std::move(rec));
        break;
    }
  }
  return rep;
}

}  // namespace gfun
