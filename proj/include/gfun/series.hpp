/**
 * @file series.hpp
 * @brief Truncated Taylor series about z = 0 with complex coefficients.
 *
 * A TruncatedSeries of order N stores c_0..c_N densely; c_k multiplies z^k.
 * NormalizedSeries is the refinement c_0 = 0, c_1 = 1 (the class of
 * f(z) = z + a_2 z^2 + ... analytic in the unit disk). Values are immutable
 * once built, so they can be shared freely between threads.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gfun/errors.hpp"

namespace gfun {

using Complex = std::complex<double>;

/// Truncation order used when callers do not choose one.
inline constexpr std::size_t kDefaultOrder = 1024;

/// Absolute tolerance for coefficient identities.
inline constexpr double kCoefficientTol = 1e-12;

class TruncatedSeries {
 public:
  /// Rejects empty input and non-finite entries.
  explicit TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw CoefficientError("empty coefficient sequence", 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (!std::isfinite(coeffs_[k].real()) || !std::isfinite(coeffs_[k].imag()))
        throw CoefficientError("non-finite coefficient", k);
    }
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of z^k; zero beyond the truncation order.
  Complex operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : Complex{};
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// Series with c_0 = 0 and c_1 = 1 exactly.
class NormalizedSeries : public TruncatedSeries {
 public:
  explicit NormalizedSeries(TruncatedSeries s) : TruncatedSeries(std::move(s)) {
    if (order() < 1) throw CoefficientError("normalized series needs order >= 1", 0);
    if ((*this)[0] != Complex{0.0, 0.0}) throw CoefficientError("normalization requires c0 = 0", 0);
    if ((*this)[1] != Complex{1.0, 0.0}) throw CoefficientError("normalization requires c1 = 1", 1);
  }
  explicit NormalizedSeries(std::vector<Complex> coeffs)
      : NormalizedSeries(TruncatedSeries(std::move(coeffs))) {}

  static bool satisfied_by(const TruncatedSeries& s) noexcept {
    return s.order() >= 1 && s[0] == Complex{0.0, 0.0} && s[1] == Complex{1.0, 0.0};
  }
};

inline TruncatedSeries make_series(std::vector<Complex> coeffs) {
  return TruncatedSeries(std::move(coeffs));
}

/// The identity function z truncated at the given order.
inline NormalizedSeries identity_series(std::size_t order = kDefaultOrder) {
  std::vector<Complex> c(std::max<std::size_t>(order, 1) + 1);
  c[1] = 1.0;
  return NormalizedSeries(std::move(c));
}

/// Coefficient-wise sum; the shorter operand is zero-padded.
inline TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
  std::vector<Complex> c(std::max(f.order(), g.order()) + 1);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = f[k] + g[k];
  return TruncatedSeries(std::move(c));
}

inline TruncatedSeries scale(const TruncatedSeries& f, Complex s) {
  std::vector<Complex> c(f.coeffs().begin(), f.coeffs().end());
  for (auto& x : c) x *= s;
  return TruncatedSeries(std::move(c));
}

inline TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) {
  return add(f, scale(g, -1.0));
}

/// Copy of f cut (or zero-padded) to the given order.
inline TruncatedSeries truncate(const TruncatedSeries& f, std::size_t order) {
  std::vector<Complex> c(order + 1);
  for (std::size_t k = 0; k <= order; ++k) c[k] = f[k];
  return TruncatedSeries(std::move(c));
}

/**
 * Cauchy product of f and g treated as polynomials, truncated at
 * min(order_f + order_g, cap). Without a cap the full product is kept; only
 * coefficients up to min(order_f, order_g) are meaningful for genuinely
 * infinite series.
 */
inline TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g,
                           std::optional<std::size_t> cap = std::nullopt) {
  const std::size_t order =
      std::min(f.order() + g.order(), cap.value_or(f.order() + g.order()));
  std::vector<Complex> c(order + 1);
  const auto fc = f.coeffs();
  const auto gc = g.coeffs();
  for (std::size_t i = 0; i < fc.size() && i <= order; ++i) {
    if (fc[i] == Complex{}) continue;
    const std::size_t jmax = std::min(gc.size() - 1, order - i);
    for (std::size_t j = 0; j <= jmax; ++j) c[i + j] += fc[i] * gc[j];
  }
  return TruncatedSeries(std::move(c));
}

/// z * f; the order grows by one.
inline TruncatedSeries multiply_by_z(const TruncatedSeries& f) {
  std::vector<Complex> c(f.order() + 2);
  for (std::size_t k = 0; k <= f.order(); ++k) c[k + 1] = f[k];
  return TruncatedSeries(std::move(c));
}

/// f / z for f with c_0 = 0 exactly; the order drops by one.
inline TruncatedSeries divide_by_z(const TruncatedSeries& f) {
  if (f[0] != Complex{}) throw DivisionError("divide_by_z requires c0 = 0");
  if (f.order() == 0) return TruncatedSeries({Complex{}});
  return TruncatedSeries(std::vector<Complex>(f.coeffs().begin() + 1, f.coeffs().end()));
}

/**
 * h = f / g for series vanishing at 0. The common factor z is cancelled
 * before long division, so h(0) = f_1 / g_1 and
 * order(h) = min(order_f, order_g) - 1.
 */
inline TruncatedSeries ratio_normalized(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f[0] != Complex{} || g[0] != Complex{})
    throw DivisionError("ratio_normalized requires c0 = 0 for numerator and denominator");
  if (f.order() < 1 || g.order() < 1) throw DivisionError("ratio_normalized requires order >= 1");
  if (g[1] == Complex{}) throw DivisionError("denominator has c1 = 0");
  const std::size_t order = std::min(f.order(), g.order()) - 1;
  std::vector<Complex> h(order + 1);
  const Complex lead = g[1];
  for (std::size_t k = 0; k <= order; ++k) {
    Complex acc = f[k + 1];
    for (std::size_t j = 1; j <= k; ++j) acc -= g[j + 1] * h[k - j];
    h[k] = acc / lead;
  }
  return TruncatedSeries(std::move(h));
}

/// f'(z); the order drops by one.
inline TruncatedSeries derivative(const TruncatedSeries& f) {
  if (f.order() == 0) return TruncatedSeries({Complex{}});
  std::vector<Complex> c(f.order());
  for (std::size_t k = 1; k <= f.order(); ++k) c[k - 1] = static_cast<double>(k) * f[k];
  return TruncatedSeries(std::move(c));
}

/// z f'(z); same order as f.
inline TruncatedSeries z_derivative(const TruncatedSeries& f) {
  std::vector<Complex> c(f.order() + 1);
  for (std::size_t k = 1; k <= f.order(); ++k) c[k] = static_cast<double>(k) * f[k];
  return TruncatedSeries(std::move(c));
}

/// exp(q) from h' = q' h, solved coefficient by coefficient with h_0 = exp(q_0).
inline TruncatedSeries exp_series(const TruncatedSeries& q) {
  const std::size_t n = q.order();
  std::vector<Complex> h(n + 1);
  h[0] = std::exp(q[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    Complex acc{};
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * q[j] * h[k - j];
    h[k] = acc / static_cast<double>(k);
  }
  return TruncatedSeries(std::move(h));
}

namespace detail {

inline void require_inside_disk(double modulus) {
  if (!(modulus < 1.0)) throw DomainError("evaluation point must satisfy |z| < 1");
}

}  // namespace detail

/// Horner evaluation of the truncated polynomial at |z| < 1.
inline Complex eval(const TruncatedSeries& f, Complex z) {
  detail::require_inside_disk(std::abs(z));
  const auto c = f.coeffs();
  Complex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

/**
 * Horner evaluation at many points at once. Points are held as split
 * real/imaginary arrays so the inner loop over points vectorizes.
 */
inline void eval_many(const TruncatedSeries& f, std::span<const double> re,
                      std::span<const double> im, std::span<double> out_re,
                      std::span<double> out_im) {
  const std::size_t m = re.size();
  for (std::size_t i = 0; i < m; ++i) detail::require_inside_disk(std::hypot(re[i], im[i]));
  const auto c = f.coeffs();
  std::fill(out_re.begin(), out_re.begin() + static_cast<std::ptrdiff_t>(m), c.back().real());
  std::fill(out_im.begin(), out_im.begin() + static_cast<std::ptrdiff_t>(m), c.back().imag());
  double* ar = out_re.data();
  double* ai = out_im.data();
  const double* zr = re.data();
  const double* zi = im.data();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    const double cr = c[k].real();
    const double ci = c[k].imag();
    for (std::size_t i = 0; i < m; ++i) {
      const double tr = ar[i] * zr[i] - ai[i] * zi[i] + cr;
      const double ti = ar[i] * zi[i] + ai[i] * zr[i] + ci;
      ar[i] = tr;
      ai[i] = ti;
    }
  }
}

/**
 * Estimate of |sum_{k>N} c_k z^k| at |z| = r.
 *
 * The last quartile of |c_k| (indices k >= 2; c_0 and c_1 carry no growth
 * information) is fitted by a geometric envelope M0 * rho^k. log(rho) is the
 * largest of three slopes of log|c_k|: least squares over the quartile,
 * least squares over its last half, and the slope between the maxima of its
 * two halves. M0 is the smallest constant keeping every quartile coefficient
 * under the envelope. Summing the envelope past N and doubling gives
 * 2 M0 (rho r)^(N+1) / (1 - rho r). This is an estimate, not a proof: a tail
 * that departs from the trend of the last quartile is not covered.
 */
inline double tail_bound(const TruncatedSeries& f, double r) {
  if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("tail_bound requires 0 <= r < 1");
  if (r == 0.0) return 0.0;
  const std::size_t n = f.order();
  const std::size_t width = std::max<std::size_t>(2, (n + 1) / 4);
  const std::size_t first = std::max<std::size_t>(2, n + 1 > width ? n + 1 - width : 0);

  std::vector<std::pair<double, double>> pts;  // (k, log|c_k|)
  for (std::size_t k = first; k <= n; ++k) {
    const double a = std::abs(f[k]);
    if (a > 0.0) pts.emplace_back(static_cast<double>(k), std::log(a));
  }
  if (pts.empty()) return 0.0;

  auto least_squares = [](std::span<const std::pair<double, double>> p) {
    double mk = 0.0, ml = 0.0;
    for (auto [k, l] : p) {
      mk += k;
      ml += l;
    }
    mk /= static_cast<double>(p.size());
    ml /= static_cast<double>(p.size());
    double sxy = 0.0, sxx = 0.0;
    for (auto [k, l] : p) {
      sxy += (k - mk) * (l - ml);
      sxx += (k - mk) * (k - mk);
    }
    return sxy / sxx;
  };

  double slope = 0.0;
  if (pts.size() >= 2) {
    slope = least_squares(pts);
    const std::span<const std::pair<double, double>> all(pts);
    const auto tail = all.subspan(pts.size() / 2);
    if (tail.size() >= 2) slope = std::max(slope, least_squares(tail));

    const double mid = 0.5 * (static_cast<double>(first) + static_cast<double>(n));
    std::optional<std::pair<double, double>> lo, hi;
    for (const auto& p : pts) {
      auto& slot = p.first <= mid ? lo : hi;
      if (!slot || p.second > slot->second) slot = p;
    }
    if (lo && hi && hi->first != lo->first)
      slope = std::max(slope, (hi->second - lo->second) / (hi->first - lo->first));
  }

  double log_m0 = -std::numeric_limits<double>::infinity();
  for (auto [k, l] : pts) log_m0 = std::max(log_m0, l - k * slope);

  const double log_q = slope + std::log(r);
  if (log_q >= 0.0) return std::numeric_limits<double>::infinity();
  const double q = std::exp(log_q);
  return 2.0 * std::exp(log_m0 + static_cast<double>(n + 1) * log_q) / (1.0 - q);
}

/// Largest |f_k - g_k| over the union of both orders.
inline double max_abs_difference(const TruncatedSeries& f, const TruncatedSeries& g) {
  double worst = 0.0;
  for (std::size_t k = 0; k <= std::max(f.order(), g.order()); ++k)
    worst = std::max(worst, std::abs(f[k] - g[k]));
  return worst;
}

/**
 * Largest |f_k - g_k| / max(1, |f_k|, |g_k|): absolute for coefficients of
 * modulus below one, relative above. Diagonal multipliers such as k^n make
 * coefficients large enough that an absolute floor is below one ulp.
 */
inline double max_scaled_difference(const TruncatedSeries& f, const TruncatedSeries& g) {
  double worst = 0.0;
  for (std::size_t k = 0; k <= std::max(f.order(), g.order()); ++k) {
    const double s = std::max({1.0, std::abs(f[k]), std::abs(g[k])});
    worst = std::max(worst, std::abs(f[k] - g[k]) / s);
  }
  return worst;
}

}  // namespace gfun
