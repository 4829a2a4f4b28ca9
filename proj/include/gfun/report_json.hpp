// JSON encodings of membership, lemma and suite reports (nlohmann/json).
#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "gfun/harness.hpp"
#include "gfun/lemma_lab.hpp"
#include "gfun/membership.hpp"

namespace gfun {

using Json = nlohmann::ordered_json;

namespace detail {

/// Infinite bands serialize as the string "inf"; JSON has no infinity.
inline Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace detail

inline Json to_json(const DiskGrid& g) {
  return {{"r_max", g.r_max}, {"n_radii", g.n_radii}, {"n_angles", g.n_angles}};
}

inline Json to_json(const MembershipReport& r) {
  return {{"verdict", std::string(to_string(r.verdict))},
          {"margin", detail::number(r.margin)},
          {"argext", {{"re", r.argext.real()}, {"im", r.argext.imag()}}},
          {"truncation_bound", detail::number(r.truncation_bound)},
          {"grid", to_json(r.grid)}};
}

inline Json to_json(const ConditionTally& t) {
  return {{"samples", t.samples},
          {"passed", t.passed},
          {"violations", t.violations},
          {"outside_domain", t.outside_domain},
          {"worst_margin", detail::number(t.worst_margin)}};
}

inline Json to_json(const ConditionReport& r) {
  Json j{{"gamma", r.gamma},
         {"branch", r.branch == Branch::LowGamma ? "LowGamma" : "HighGamma"},
         {"unit_point", to_json(r.at_unit)},
         {"boundary", to_json(r.boundary)}};
  if (r.worst) j["worst_sample"] = {{"u2", r.worst->u2}, {"v1", r.worst->v1}};
  return j;
}

inline Json to_json(const LemmaReport& r) {
  return {{"hypothesis_margin", detail::number(r.hypothesis_margin)},
          {"conclusion_margin", detail::number(r.conclusion_margin)},
          {"hypothesis_argext", {{"re", r.hypothesis_argext.real()}, {"im", r.hypothesis_argext.imag()}}},
          {"conclusion_argext", {{"re", r.conclusion_argext.real()}, {"im", r.conclusion_argext.imag()}}},
          {"truncation_bound", detail::number(r.truncation_bound)},
          {"skipped", r.skipped},
          {"grid", to_json(r.grid)}};
}

inline Json to_json(const CaseParams& p) {
  Json j{{"n", p.n}, {"sigma", p.sigma}, {"gamma", p.gamma}};
  if (p.beta) j["beta"] = *p.beta;
  if (p.c) j["c"] = *p.c;
  if (!p.specialization.empty()) j["specialization"] = p.specialization;
  if (p.exploratory) j["exploratory"] = true;
  return j;
}

inline Json to_json(const CaseRecord& c) {
  Json j{{"subject", c.subject},
         {"params", to_json(c.params)},
         {"premise", c.premise ? to_json(*c.premise) : Json(nullptr)},
         {"conclusion", c.conclusion ? to_json(*c.conclusion) : Json(nullptr)},
         {"status", std::string(to_string(c.status))}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

inline Json to_json(const SuiteReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  Json j{{"theorem", std::string(to_string(r.theorem))},
         {"grid", to_json(r.grid)},
         {"cases", std::move(cases)},
         {"status", std::string(to_string(r.status()))}};
  if (r.search) {
    j["search"] = {{"seed", r.search->seed},
                   {"trials", r.search->trials},
                   {"confirmed", r.search->confirmed},
                   {"inconclusive", r.search->inconclusive},
                   {"violated", r.search->violated}};
  }
  return j;
}

}  // namespace gfun
