// Command-line front end: apply, check, suite, search, fieldmap.
//
// Exit codes:
//   0  success (check: Member; suite/search: no Violated case)
//   1  usage or input error
//   2  check: NotMember; suite/search: at least one Violated case
//   3  check: Inconclusive
//   4  check: witness is not a member of its B class
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfun/harness.hpp"
#include "gfun/membership.hpp"
#include "gfun/operators.hpp"
#include "gfun/report_json.hpp"
#include "gfun/series.hpp"
#include "gfun/series_io.hpp"
#include "gfun/zoo.hpp"

namespace gfun::cli {

enum class OutputFormat { Json, Csv, Pretty };

struct CliConfig {
  std::size_t order = kDefaultOrder;
  double r_max = 0.95;
  std::size_t n_radii = 24;
  std::size_t n_angles = 256;
  OutputFormat output = OutputFormat::Json;
  std::uint64_t seed = 42;

  void validate() const {
    if (!(r_max > 0.0 && r_max < 1.0)) throw ParameterError("--rmax must lie in (0, 1)");
    if (order < 8) throw ParameterError("--order must be at least 8");
    if (n_radii < 4 || n_angles < 4) throw ParameterError("--radii and --angles must be at least 4");
  }
  DiskGrid grid() const { return {r_max, n_radii, n_angles}; }
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotMember = 2;
inline constexpr int kExitViolated = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitWitness = 4;

/// Zoo name, or a path to a coefficient CSV.
inline TruncatedSeries load_series(const std::string& token, std::size_t order) {
  try {
    return zoo_by_name(token, order);
  } catch (const DispatchError&) {
    if (!std::filesystem::exists(token)) throw;
  }
  std::ifstream in(token);
  if (!in) throw ParameterError("cannot open '" + token + "'");
  return read_csv(in);
}

inline NormalizedSeries load_normalized(const std::string& token, std::size_t order) {
  auto s = load_series(token, order);
  if (!NormalizedSeries::satisfied_by(s))
    throw ParameterError("'" + token + "' is not normalized (needs c0 = 0, c1 = 1)");
  return NormalizedSeries(std::move(s));
}

inline std::string six(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

inline int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Member: return kExitOk;
    case Verdict::NotMember: return kExitNotMember;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitUsage;
}

inline void write_report(std::ostream& out, const MembershipReport& r, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::Json: out << to_json(r).dump(2) << '\n'; break;
    case OutputFormat::Csv:
      out << "verdict,margin,argext_re,argext_im,truncation_bound\n"
          << to_string(r.verdict) << ',' << format_double(r.margin) << ','
          << format_double(r.argext.real()) << ',' << format_double(r.argext.imag()) << ','
          << format_double(r.truncation_bound) << '\n';
      break;
    case OutputFormat::Pretty:
      out << "verdict           " << to_string(r.verdict) << '\n'
          << "margin            " << six(r.margin) << '\n'
          << "argext            " << six(r.argext.real()) << (r.argext.imag() < 0 ? " - " : " + ")
          << six(std::abs(r.argext.imag())) << "i\n"
          << "truncation_bound  " << six(r.truncation_bound) << '\n'
          << "grid              r_max=" << r.grid.r_max << " radii=" << r.grid.n_radii
          << " angles=" << r.grid.n_angles << '\n';
      break;
  }
}

inline void write_suites(std::ostream& out, const std::vector<SuiteReport>& suites, bool single,
                         OutputFormat fmt) {
  std::size_t violated = 0;
  for (const auto& s : suites) violated += s.violated();
  if (fmt == OutputFormat::Json) {
    if (single) {
      out << to_json(suites.front()).dump(2) << '\n';
    } else {
      Json arr = Json::array();
      for (const auto& s : suites) arr.push_back(to_json(s));
      out << Json{{"suites", std::move(arr)}, {"violated", violated}}.dump(2) << '\n';
    }
    return;
  }
  if (fmt == OutputFormat::Csv) {
    out << "theorem,subject,n,sigma,gamma,beta,c,premise_margin,conclusion_margin,status\n";
    for (const auto& s : suites)
      for (const auto& c : s.cases) {
        out << to_string(s.theorem) << ',' << c.subject << ',' << c.params.n << ','
            << format_double(c.params.sigma) << ',' << format_double(c.params.gamma) << ','
            << (c.params.beta ? format_double(*c.params.beta) : "") << ','
            << (c.params.c ? format_double(*c.params.c) : "") << ','
            << (c.premise ? format_double(c.premise->margin) : "") << ','
            << (c.conclusion ? format_double(c.conclusion->margin) : "") << ','
            << to_string(c.status) << '\n';
      }
    return;
  }
  for (const auto& s : suites) {
    out << to_string(s.theorem) << "  " << to_string(s.status()) << "  cases=" << s.cases.size();
    if (s.search)
      out << " trials=" << s.search->trials << " confirmed=" << s.search->confirmed
          << " inconclusive=" << s.search->inconclusive;
    out << " violated=" << s.violated() << '\n';
    for (const auto& c : s.cases) {
      out << "  " << std::left << std::setw(14) << to_string(c.status) << c.subject
          << "  n=" << c.params.n << " sigma=" << six(c.params.sigma)
          << " gamma=" << six(c.params.gamma);
      if (c.params.beta) out << " beta=" << six(*c.params.beta);
      if (c.params.c) out << " c=" << six(*c.params.c);
      if (c.premise) out << "  premise=" << six(c.premise->margin);
      if (c.conclusion) out << "  conclusion=" << six(c.conclusion->margin);
      if (!c.reason.empty()) out << "  (" << c.reason << ')';
      out << '\n';
    }
  }
}

/// Parses and runs one command line; output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coefficient operators, class membership and theorem suites for normalized "
               "analytic functions"};
  app.fallthrough();
  app.require_subcommand(1);

  CliConfig cfg;
  std::string output = "json";
  app.add_option("--order", cfg.order, "Truncation order N")->capture_default_str();
  app.add_option("--rmax", cfg.r_max, "Largest sampling radius")->capture_default_str();
  app.add_option("--radii", cfg.n_radii, "Number of sampling radii")->capture_default_str();
  app.add_option("--angles", cfg.n_angles, "Number of sampling angles")->capture_default_str();
  app.add_option("--output", output, "json | csv | pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for random subjects")->capture_default_str();

  // apply
  auto* apply = app.add_subcommand("apply", "Apply an operator and print coefficients as CSV");
  std::string op_name, input;
  unsigned op_n = 0;
  double op_sigma = 0.0, op_c = 0.0;
  std::vector<std::string> verify;
  apply->add_option("operator", op_name, "salagean | jks | L | bernardi | lift")
      ->required()
      ->check(CLI::IsMember({"salagean", "jks", "L", "bernardi", "lift"}));
  apply->add_option("input", input, "Zoo name or coefficient CSV path")->required();
  apply->add_option("--n", op_n, "Salagean power");
  apply->add_option("--sigma", op_sigma, "Integral order");
  apply->add_option("--c", op_c, "Bernardi parameter");
  apply->add_option("--verify", verify, "Identity residuals to report: id3 id4 id6")
      ->check(CLI::IsMember({"id3", "id4", "id6"}))
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  // check / fieldmap share their arguments
  std::string class_name, subject, witness;
  NamedParams named;
  auto add_class_args = [&](CLI::App* sub) {
    sub->add_option("class", class_name, "Named class")->required();
    sub->add_option("subject", subject, "Zoo name or coefficient CSV path")->required();
    sub->add_option("--n", named.n, "n");
    sub->add_option("--sigma", named.sigma, "sigma");
    sub->add_option("--gamma", named.gamma, "gamma");
    sub->add_option("--beta", named.beta, "beta");
    sub->add_option("--witness", witness, "Witness g for K classes");
  };
  auto* check = app.add_subcommand("check", "Check membership in a named class");
  add_class_args(check);
  auto* fieldmap = app.add_subcommand("fieldmap", "Export Re of the class ratio on the grid");
  add_class_args(fieldmap);

  // suite / search
  std::string theorem_sel;
  unsigned s_n = 0;
  double s_sigma = 0.0, s_gamma = 0.0, s_beta = 0.0;
  std::vector<double> s_c;
  std::size_t trials = 500;
  auto* suite = app.add_subcommand("suite", "Run theorem suites");
  suite->add_option("theorem", theorem_sel, "T1..T6 or all")->required();
  auto* opt_n = suite->add_option("--n", s_n, "n");
  auto* opt_sigma = suite->add_option("--sigma", s_sigma, "sigma");
  auto* opt_gamma = suite->add_option("--gamma", s_gamma, "gamma");
  auto* opt_beta = suite->add_option("--beta", s_beta, "beta");
  auto* opt_c = suite->add_option("--c", s_c, "Bernardi parameters (T5, T6)")
                    ->expected(1)
                    ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  auto* search = app.add_subcommand("search", "Randomized counterexample search");
  search->add_option("theorem", theorem_sel, "T1..T6 or all")->required();
  search->add_option("--trials", trials, "Trials per theorem")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.output = output == "csv"     ? OutputFormat::Csv
                 : output == "pretty" ? OutputFormat::Pretty
                                      : OutputFormat::Json;
    cfg.validate();
    const DiskGrid grid = cfg.grid();

    if (*apply) {
      const auto f = load_series(input, cfg.order);
      TruncatedSeries g = f;
      if (op_name == "salagean") g = salagean(f, op_n);
      if (op_name == "jks") g = jks_integral(f, op_sigma);
      if (op_name == "L") g = composite_L(f, op_n, op_sigma);
      if (op_name == "bernardi") g = bernardi(f, op_c);
      if (op_name == "lift") {
        detail::require_vanishing_at_origin(f, "lift");
        g = detail::diagonal_map(
            f, [&](std::size_t k) { return 1.0 / composite_multiplier(k, op_n, op_sigma); });
      }
      if (cfg.output == OutputFormat::Json) {
        Json arr = Json::array();
        for (std::size_t k = 0; k <= g.order(); ++k)
          arr.push_back({{"k", k}, {"re", g[k].real()}, {"im", g[k].imag()}});
        out << arr.dump() << '\n';
      } else {
        write_csv(out, g);
      }
      int code = kExitOk;
      for (const auto& id : verify) {
        double r = 0.0;
        if (id == "id3") r = verify_identity_3(f, op_sigma);
        if (id == "id4") r = verify_identity_4(f, op_n, op_sigma);
        if (id == "id6") r = verify_identity_6(f, op_c);
        err << id << " residual " << format_double(r) << '\n';
        if (!(r <= kCoefficientTol)) code = kExitUsage;
      }
      return code;
    }

    if (*check || *fieldmap) {
      const auto f = load_normalized(subject, cfg.order);
      const auto spec = resolve_named(class_name, named);
      std::optional<NormalizedSeries> g;
      if (!witness.empty()) g = load_normalized(witness, cfg.order);
      if (spec.is_K() && !g) {
        err << "error: class '" << class_name << "' needs --witness\n";
        return kExitUsage;
      }
      if (*check) {
        MembershipReport r;
        try {
          r = spec.is_K() ? check_K(f, *g, spec, grid) : check_B(f, spec, grid);
        } catch (const WitnessNotInClass& e) {
          err << "error: " << e.what() << '\n';
          return kExitWitness;
        }
        write_report(out, r, cfg.output);
        return verdict_exit(r.verdict);
      }
      const auto num = composite_L(f, spec.n + 1, spec.sigma);
      const auto den = composite_L(spec.is_K() ? *g : f, spec.n, spec.sigma);
      out << "r,theta,re\n";
      for (const auto& s : ratio_field(num, den, grid)) {
        out << format_double(grid.radius(s.radius_index)) << ','
            << format_double(grid.angle(s.angle_index)) << ','
            << (s.skipped ? std::string("nan") : format_double(s.ratio.real())) << '\n';
      }
      return kExitOk;
    }

    std::vector<Theorem> theorems;
    const bool all = theorem_sel == "all";
    if (all) {
      theorems.assign(kAllTheorems.begin(), kAllTheorems.end());
    } else if (auto t = parse_theorem(theorem_sel)) {
      theorems.push_back(*t);
    } else {
      err << "error: theorem must be T1..T6 or all\n";
      return kExitUsage;
    }

    std::vector<SuiteReport> reports;
    if (*suite) {
      const bool parameterized = opt_n->count() + opt_sigma->count() + opt_gamma->count() +
                                     opt_beta->count() + opt_c->count() > 0;
      const std::vector<double> cs = s_c.empty() ? std::vector<double>{1.0} : s_c;
      for (auto t : theorems) {
        if (!parameterized) {
          reports.push_back(standard_battery(t, cfg.seed, grid, cfg.order));
          continue;
        }
        if (is_k_theorem(t)) ClassSpec::K(s_n, s_sigma, s_beta, s_gamma);
        else ClassSpec::B(s_n, s_sigma, s_gamma);
        reports.push_back(
            run_parameterized(t, s_n, s_sigma, s_gamma, s_beta, cs, cfg.seed, grid, cfg.order));
      }
    } else {
      for (auto t : theorems)
        reports.push_back(counterexample_search(cfg.seed, trials, t, grid, cfg.order));
    }
    write_suites(out, reports, !all, cfg.output);
    for (const auto& r : reports)
      if (r.violated() > 0) return kExitViolated;
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace gfun::cli
