/**
 * @file zoo.hpp
 * @brief Constructive members of the starlike-type classes used as test subjects.
 *
 * The building block is a Herglotz function
 *   p(z) = sum_j w_j (1 + x_j z) / (1 - x_j z),   |x_j| = 1, sum_j w_j = 1,
 * which has p(0) = 1 and Re p > 0 in the disk. From p one gets a function
 * with z f'/f = gamma + (1 - gamma) p, and diagonal lifts of such functions
 * land exactly in the generalized classes.
 */
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gfun/operators.hpp"
#include "gfun/series.hpp"

namespace gfun {

/// Reproducible uniform doubles; the mapping from engine output is fixed here
/// rather than left to the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

struct HerglotzSpec {
  std::vector<Complex> points;
  std::vector<double> weights;

  void validate() const {
    if (points.empty() || points.size() != weights.size())
      throw ParameterError("Herglotz spec needs matching, non-empty points and weights");
    double total = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (std::abs(std::abs(points[j]) - 1.0) > 1e-12)
        throw ParameterError("Herglotz point " + std::to_string(j) + " is not unimodular");
      if (!(weights[j] >= 0.0)) throw ParameterError("Herglotz weights must be nonnegative");
      total += weights[j];
    }
    if (std::abs(total - 1.0) > 1e-12) throw ParameterError("Herglotz weights must sum to 1");
  }
};

/// One to three random boundary points with random weights.
inline HerglotzSpec random_herglotz_spec(std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t m = 1 + rng.below(3);
  HerglotzSpec spec;
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    spec.points.push_back(std::polar(1.0, theta));
    spec.weights.push_back(0.05 + rng.uniform());
    total += spec.weights.back();
  }
  double partial = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    spec.weights[j] /= total;
    partial += spec.weights[j];
  }
  spec.weights.back() = 1.0 - partial;
  return spec;
}

/// p(z) = sum_j w_j (1 + x_j z)/(1 - x_j z): p_0 = 1, p_k = 2 sum_j w_j x_j^k.
inline TruncatedSeries herglotz_p(const HerglotzSpec& spec, std::size_t order = kDefaultOrder) {
  spec.validate();
  std::vector<Complex> c(order + 1);
  c[0] = 1.0;
  for (std::size_t j = 0; j < spec.points.size(); ++j) {
    Complex power = 1.0;
    for (std::size_t k = 1; k <= order; ++k) {
      power *= spec.points[j];
      c[k] += 2.0 * spec.weights[j] * power;
    }
  }
  return TruncatedSeries(std::move(c));
}

/// z / (1 - z)^{2(1 - gamma)}, the extremal starlike function of order gamma.
inline NormalizedSeries koebe_general(double gamma, std::size_t order = kDefaultOrder) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ParameterError("koebe_general needs 0 <= gamma < 1");
  std::vector<Complex> c(std::max<std::size_t>(order, 1) + 1);
  c[1] = 1.0;
  const double a = 2.0 * (1.0 - gamma);
  for (std::size_t k = 1; k + 1 < c.size(); ++k)
    c[k + 1] = c[k] * (static_cast<double>(k) - 1.0 + a) / static_cast<double>(k);
  return NormalizedSeries(std::move(c));
}

/// z / (1 - z), mapping the disk onto the half-plane Re w > -1/2.
inline NormalizedSeries halfplane(std::size_t order = kDefaultOrder) {
  return koebe_general(0.5, order);
}

namespace detail {

inline void require_unit_constant(const TruncatedSeries& p, const char* who) {
  if (std::abs(p[0] - Complex{1.0, 0.0}) > 1e-12)
    throw ParameterError(std::string(who) + " requires p(0) = 1");
}

}  // namespace detail

/**
 * f with z f'/f = gamma + (1 - gamma) p, built as f = z exp(q) where
 * q = integral of (gamma + (1 - gamma) p(t) - 1)/t. For 0 <= gamma < 1 and
 * Re p > 0 the result is starlike of order gamma; gamma > 1 gives
 * Re z f'/f < gamma instead. The result has the order of p.
 */
inline NormalizedSeries starlike_from_p(const TruncatedSeries& p, double gamma) {
  detail::require_unit_constant(p, "starlike_from_p");
  if (!(gamma >= 0.0) || gamma == 1.0 || !std::isfinite(gamma))
    throw ParameterError("starlike_from_p needs gamma >= 0, gamma != 1");
  const std::size_t order = std::max<std::size_t>(p.order(), 1);
  std::vector<Complex> q(order + 1);
  for (std::size_t k = 1; k <= p.order(); ++k)
    q[k] = (1.0 - gamma) * p[k] / static_cast<double>(k);
  const auto e = exp_series(TruncatedSeries(std::move(q)));
  std::vector<Complex> f(order + 1);
  for (std::size_t k = 1; k <= order; ++k) f[k] = e[k - 1];
  return NormalizedSeries(std::move(f));
}

/// g with L_n^sigma g = f: the inverse multiplier, so membership of g in the
/// (n, sigma) classes is decided by the order-zero ratios of f.
inline NormalizedSeries lift_to_B(const NormalizedSeries& f, unsigned n, double sigma) {
  if (!std::isfinite(sigma)) throw ParameterError("sigma must be finite");
  if (n == 0 && sigma == 0.0) return f;
  return detail::diagonal_map(
      f, [n, sigma](std::size_t k) { return 1.0 / composite_multiplier(k, n, sigma); });
}

/**
 * f with z f' = g (beta + (1 - beta) p), obtained by term-wise
 * antidifferentiation. The result has order min(order_g, order_p).
 */
inline NormalizedSeries close_to_convex_from(const NormalizedSeries& g, const TruncatedSeries& p,
                                             double beta) {
  detail::require_unit_constant(p, "close_to_convex_from");
  if (!std::isfinite(beta)) throw ParameterError("beta must be finite");
  std::vector<Complex> m(p.coeffs().begin(), p.coeffs().end());
  m[0] = 1.0;
  for (std::size_t k = 1; k < m.size(); ++k) m[k] *= (1.0 - beta);
  const std::size_t order = std::min(g.order(), std::max<std::size_t>(p.order(), 1));
  const auto h = mul(g, TruncatedSeries(std::move(m)), order);
  std::vector<Complex> f(order + 1);
  f[1] = 1.0;
  for (std::size_t k = 2; k <= order; ++k) f[k] = h[k] / static_cast<double>(k);
  return NormalizedSeries(std::move(f));
}

/// Seeded normalized series with |c_k| <= decay^{-k} for k >= 2.
inline NormalizedSeries random_normalized(std::uint64_t seed, double decay,
                                          std::size_t order = kDefaultOrder) {
  if (!(decay > 1.0)) throw ParameterError("random_normalized needs decay > 1");
  Rng rng(seed);
  std::vector<Complex> c(std::max<std::size_t>(order, 1) + 1);
  c[1] = 1.0;
  double envelope = 1.0 / decay;
  for (std::size_t k = 2; k < c.size(); ++k) {
    envelope /= decay;
    const double radius = envelope * rng.uniform();
    c[k] = std::polar(radius, rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return NormalizedSeries(std::move(c));
}

/// Starlike member generated from the Herglotz spec drawn from `seed`.
inline NormalizedSeries herglotz_starlike(std::uint64_t seed, std::size_t order = kDefaultOrder) {
  return starlike_from_p(herglotz_p(random_herglotz_spec(seed), order), 0.0);
}

namespace detail {

template <class T>
T parse_number(std::string_view s, std::string_view what) {
  T v{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw DispatchError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/**
 * Resolves a zoo name: `identity`, `halfplane`, `koebe:<gamma>`,
 * `herglotz:<seed>` or `random:<seed>:<decay>`.
 */
inline NormalizedSeries zoo_by_name(std::string_view name, std::size_t order = kDefaultOrder) {
  auto head = name.substr(0, name.find(':'));
  auto rest = head.size() < name.size() ? name.substr(head.size() + 1) : std::string_view{};
  if (name == "identity") return identity_series(order);
  if (name == "halfplane") return halfplane(order);
  if (head == "koebe" && !rest.empty())
    return koebe_general(detail::parse_number<double>(rest, "gamma"), order);
  if (head == "herglotz" && !rest.empty())
    return herglotz_starlike(detail::parse_number<std::uint64_t>(rest, "seed"), order);
  if (head == "random") {
    const auto colon = rest.find(':');
    if (colon != std::string_view::npos) {
      const auto seed = detail::parse_number<std::uint64_t>(rest.substr(0, colon), "seed");
      const auto decay = detail::parse_number<double>(rest.substr(colon + 1), "decay");
      return random_normalized(seed, decay, order);
    }
  }
  throw DispatchError("unknown zoo member '" + std::string(name) + "'");
}

}  // namespace gfun
