/**
 * @file operators.hpp
 * @brief Coefficient multiplier operators on series vanishing at the origin.
 *
 * Every operator here is diagonal in the monomial basis and leaves the
 * z coefficient untouched:
 *   D^n          a_k -> k^n a_k                     (Salagean derivative)
 *   I^sigma      a_k -> (2/(k+1))^sigma a_k         (Jung-Kim-Srivastava integral)
 *   L_n^sigma    a_k -> k^n (2/(k+1))^sigma a_k     (D^n after I^sigma)
 *   F_c          a_k -> (c+1)/(c+k) a_k, c > -1     (Bernardi integral)
 * I^sigma is taken to be this multiplier for every real sigma.
 */
#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>

#include "gfun/series.hpp"

namespace gfun {

template <class S>
concept SeriesType = std::same_as<S, TruncatedSeries> || std::same_as<S, NormalizedSeries>;

enum class OperatorKind { Salagean, JKS, Composite, Bernardi };

struct OperatorSpec {
  OperatorKind kind = OperatorKind::Composite;
  unsigned n = 0;
  double sigma = 0.0;
  double c = 0.0;

  void validate() const {
    if (!std::isfinite(sigma)) throw ParameterError("sigma must be finite");
    if (kind == OperatorKind::Bernardi && !(c > -1.0 && std::isfinite(c)))
      throw ParameterError("Bernardi parameter must satisfy c > -1");
  }
};

namespace detail {

/// k^n, exact in integers while it fits, then in floating point.
inline double int_power(std::size_t k, unsigned n) {
  std::uint64_t acc = 1;
  unsigned i = 0;
  for (; i < n; ++i) {
    if (k != 0 && acc > std::numeric_limits<std::uint64_t>::max() / k) break;
    acc *= k;
  }
  double out = static_cast<double>(acc);
  for (; i < n; ++i) out *= static_cast<double>(k);
  return out;
}

inline void require_vanishing_at_origin(const TruncatedSeries& f, const char* op) {
  if (f[0] != Complex{})
    throw ParameterError(std::string(op) + " requires a series with c0 = 0");
}

template <SeriesType S, class Multiplier>
S diagonal_map(const S& f, Multiplier&& m) {
  std::vector<Complex> c(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t k = 1; k < c.size(); ++k) c[k] *= m(k);
  return S(std::move(c));
}

}  // namespace detail

inline double salagean_multiplier(std::size_t k, unsigned n) { return detail::int_power(k, n); }

inline double jks_multiplier(std::size_t k, double sigma) {
  if (sigma == 0.0) return 1.0;
  return std::pow(2.0 / static_cast<double>(k + 1), sigma);
}

inline double composite_multiplier(std::size_t k, unsigned n, double sigma) {
  return salagean_multiplier(k, n) * jks_multiplier(k, sigma);
}

inline double bernardi_multiplier(std::size_t k, double c) {
  return (c + 1.0) / (c + static_cast<double>(k));
}

/// D^n f. n = 0 is the identity.
template <SeriesType S>
S salagean(const S& f, unsigned n) {
  detail::require_vanishing_at_origin(f, "salagean");
  if (n == 0) return f;
  return detail::diagonal_map(f, [n](std::size_t k) { return salagean_multiplier(k, n); });
}

/// I^sigma f. sigma = 0 is the identity.
template <SeriesType S>
S jks_integral(const S& f, double sigma) {
  detail::require_vanishing_at_origin(f, "jks_integral");
  if (!std::isfinite(sigma)) throw ParameterError("sigma must be finite");
  if (sigma == 0.0) return f;
  return detail::diagonal_map(f, [sigma](std::size_t k) { return jks_multiplier(k, sigma); });
}

/// L_n^sigma f = D^n I^sigma f = I^sigma D^n f.
template <SeriesType S>
S composite_L(const S& f, unsigned n, double sigma) {
  detail::require_vanishing_at_origin(f, "composite_L");
  if (!std::isfinite(sigma)) throw ParameterError("sigma must be finite");
  if (n == 0 && sigma == 0.0) return f;
  return detail::diagonal_map(
      f, [n, sigma](std::size_t k) { return composite_multiplier(k, n, sigma); });
}

/// F_c f = (c+1) z^{-c} int_0^z t^{c-1} f(t) dt, acting as a_k -> a_k (c+1)/(c+k).
template <SeriesType S>
S bernardi(const S& f, double c) {
  detail::require_vanishing_at_origin(f, "bernardi");
  if (!(c > -1.0) || !std::isfinite(c))
    throw ParameterError("Bernardi parameter must satisfy c > -1");
  return detail::diagonal_map(f, [c](std::size_t k) { return bernardi_multiplier(k, c); });
}

template <SeriesType S>
S apply(const OperatorSpec& op, const S& f) {
  op.validate();
  switch (op.kind) {
    case OperatorKind::Salagean: return salagean(f, op.n);
    case OperatorKind::JKS: return jks_integral(f, op.sigma);
    case OperatorKind::Composite: return composite_L(f, op.n, op.sigma);
    case OperatorKind::Bernardi: return bernardi(f, op.c);
  }
  throw DispatchError("unknown operator kind");
}

/**
 * Residual of z [I^{sigma+1} f]' = 2 I^sigma f - I^{sigma+1} f.
 * Residuals are max_scaled_difference: absolute for coefficients below one,
 * relative above.
 */
inline double verify_identity_3(const TruncatedSeries& f, double sigma) {
  const auto next = jks_integral(f, sigma + 1.0);
  const auto lhs = z_derivative(next);
  const auto rhs = sub(scale(jks_integral(f, sigma), 2.0), next);
  return max_scaled_difference(lhs, rhs);
}

/// Residual of L_{n+1}^{sigma+1} f = 2 L_n^sigma f - L_n^{sigma+1} f.
inline double verify_identity_4(const TruncatedSeries& f, unsigned n, double sigma) {
  const auto lhs = composite_L(f, n + 1, sigma + 1.0);
  const auto rhs = sub(scale(composite_L(f, n, sigma), 2.0), composite_L(f, n, sigma + 1.0));
  return max_scaled_difference(lhs, rhs);
}

/// Residual of c F_c + z F_c' = (c+1) f.
inline double verify_identity_6(const TruncatedSeries& f, double c) {
  const auto fc = bernardi(f, c);
  const auto lhs = add(scale(fc, c), z_derivative(fc));
  const auto rhs = scale(f, c + 1.0);
  return max_scaled_difference(lhs, rhs);
}

}  // namespace gfun
