#pragma once

// Truncated formal power series over Q. A series of order N carries the
// coefficients of t^0..t^N; every binary operation truncates to the smaller
// order of its operands.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"

namespace tpkit {

inline constexpr std::size_t kDefaultOrder = 16;

class PowerSeries {
 public:
  PowerSeries() : PowerSeries({}, kDefaultOrder) {}
  PowerSeries(std::vector<ExactScalar> coeffs, std::size_t order)
      : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
  }

  static PowerSeries constant(const ExactScalar& c, std::size_t order = kDefaultOrder) {
    return PowerSeries({c}, order);
  }
  /// The series t.
  static PowerSeries variable(std::size_t order = kDefaultOrder) {
    return PowerSeries({0, 1}, order);
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<ExactScalar>& coeffs() const { return coeffs_; }
  const ExactScalar& operator[](std::size_t n) const { return coeffs_.at(n); }

  PowerSeries truncate(std::size_t order) const {
    return PowerSeries(std::vector<ExactScalar>(coeffs_.begin(),
                                                coeffs_.begin() + std::min(order, this->order()) + 1),
                       std::min(order, this->order()));
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    std::vector<ExactScalar> r(n + 1);
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] + b[i];
    return PowerSeries(std::move(r), n);
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    std::vector<ExactScalar> r(n + 1);
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] - b[i];
    return PowerSeries(std::move(r), n);
  }
  friend PowerSeries operator*(const ExactScalar& c, const PowerSeries& a) {
    std::vector<ExactScalar> r(a.coeffs_);
    for (auto& x : r) x *= c;
    return PowerSeries(std::move(r), a.order());
  }

  /// Coefficientwise equality up to the smaller order.
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    for (std::size_t i = 0; i <= n; ++i) {
      if (a[i] != b[i]) return false;
    }
    return true;
  }

 private:
  std::vector<ExactScalar> coeffs_;
};

/// Cauchy product truncated to the smaller order.
inline PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b) {
  std::size_t n = std::min(a.order(), b.order());
  std::vector<ExactScalar> r(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return PowerSeries(std::move(r), n);
}

inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return ps_mul(a, b); }

/// Multiplicative inverse; requires a nonzero constant term.
inline PowerSeries ps_inv_mul(const PowerSeries& a) {
  if (a[0].is_zero()) throw error(errc::not_invertible, "constant term is zero");
  std::size_t n = a.order();
  std::vector<ExactScalar> r(n + 1);
  r[0] = ExactScalar(1) / a[0];
  for (std::size_t k = 1; k <= n; ++k) {
    ExactScalar acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * r[k - j];
    r[k] = -acc * r[0];
  }
  return PowerSeries(std::move(r), n);
}

inline PowerSeries ps_pow(const PowerSeries& a, std::size_t k) {
  PowerSeries r = PowerSeries::constant(1, a.order());
  for (std::size_t i = 0; i < k; ++i) r = ps_mul(r, a);
  return r;
}

/// a(b(t)); b must have zero constant term. Horner over powers of b.
inline PowerSeries ps_compose(const PowerSeries& a, const PowerSeries& b) {
  if (!b[0].is_zero()) {
    throw error(errc::composition_requires_zero_constant, "inner constant term is " + b[0].str());
  }
  std::size_t n = std::min(a.order(), b.order());
  PowerSeries r = PowerSeries::constant(a[n], n);
  for (std::size_t i = n; i-- > 0;) {
    r = ps_mul(r, b) + PowerSeries::constant(a[i], n);
  }
  return r;
}

/// Compositional inverse g with f(g(t)) = t, solved coefficient by
/// coefficient: [t^n] f(g) = f_1 g_n + (terms in g_1..g_{n-1}).
inline PowerSeries ps_comp_inverse(const PowerSeries& f) {
  if (f.order() < 1 || !f[0].is_zero() || f[1].is_zero()) {
    throw error(errc::not_compositionally_invertible, "need f(0) = 0 and f'(0) != 0");
  }
  std::size_t n = f.order();
  std::vector<ExactScalar> g(n + 1);
  g[1] = ExactScalar(1) / f[1];
  for (std::size_t m = 2; m <= n; ++m) {
    // powers of the partial inverse (g_m still zero) truncated at t^m
    PowerSeries partial(std::vector<ExactScalar>(g.begin(), g.begin() + m + 1), m);
    PowerSeries power = partial;
    ExactScalar acc = 0;
    for (std::size_t k = 2; k <= m; ++k) {
      power = ps_mul(power, partial);
      acc += f[k] * power[m];
    }
    g[m] = -acc / f[1];
  }
  return PowerSeries(std::move(g), n);
}

/// Termwise derivative; the result has order N-1 (an order-0 input, being
/// a constant, yields the order-0 zero series).
inline PowerSeries ps_derive(const PowerSeries& f) {
  if (f.order() == 0) return PowerSeries::constant(0, 0);
  std::vector<ExactScalar> r(f.order());
  for (std::size_t i = 1; i <= f.order(); ++i) r[i - 1] = f[i] * ExactScalar(i);
  return PowerSeries(std::move(r), f.order() - 1);
}

// Named series. Exponentials are generated as exact rational coefficients.

/// e^{a t}
inline PowerSeries series_exp(std::size_t order = kDefaultOrder, const ExactScalar& a = 1) {
  std::vector<ExactScalar> c(order + 1);
  ExactScalar term = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    c[n] = term;
    term = term * a / ExactScalar(n + 1);
  }
  return PowerSeries(std::move(c), order);
}

/// e^t - 1
inline PowerSeries series_expm1(std::size_t order = kDefaultOrder) {
  PowerSeries e = series_exp(order);
  return e - PowerSeries::constant(1, order);
}

/// 1/(1 - a t)
inline PowerSeries series_geometric(std::size_t order = kDefaultOrder, const ExactScalar& a = 1) {
  std::vector<ExactScalar> c(order + 1);
  for (std::size_t n = 0; n <= order; ++n) c[n] = pow(a, n);
  return PowerSeries(std::move(c), order);
}

/// ln(1/(1 - t)) = sum t^n / n
inline PowerSeries series_log_geometric(std::size_t order = kDefaultOrder) {
  std::vector<ExactScalar> c(order + 1);
  for (std::size_t n = 1; n <= order; ++n) c[n] = ExactScalar(BigInt(1), BigInt(n));
  return PowerSeries(std::move(c), order);
}

/// t/(1 - t)
inline PowerSeries series_lah_f(std::size_t order = kDefaultOrder) {
  std::vector<ExactScalar> c(order + 1);
  for (std::size_t n = 1; n <= order; ++n) c[n] = 1;
  return PowerSeries(std::move(c), order);
}

/// Resolves the names accepted on the command line: exp, expm1, geom,
/// log_geom, lah_f, one, t. Anything else is an error.
inline PowerSeries named_series(const std::string& name, std::size_t order = kDefaultOrder) {
  if (name == "exp") return series_exp(order);
  if (name == "expm1") return series_expm1(order);
  if (name == "geom") return series_geometric(order);
  if (name == "log_geom") return series_log_geometric(order);
  if (name == "lah_f") return series_lah_f(order);
  if (name == "one") return PowerSeries::constant(1, order);
  if (name == "t") return PowerSeries::variable(order);
  throw error(errc::invalid_argument, "unknown series '" + name + "'");
}

}  // namespace tpkit
