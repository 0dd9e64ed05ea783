#pragma once

// Exact rational scalars, dense univariate polynomials over Q, and
// real-rootedness decisions via Sturm chains.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tpkit/error.hpp"

namespace tpkit {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational number. Always normalized: the denominator
/// is positive and coprime to the numerator.
class ExactScalar {
 public:
  using rational_type = boost::multiprecision::cpp_rational;

  ExactScalar() = default;
  template <std::integral I>
  ExactScalar(I v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const BigInt& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(BigInt num, BigInt den) {
    if (den == 0) throw error(errc::division_by_zero, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    value_ = rational_type(num, den);
  }
  explicit ExactScalar(rational_type v) : value_(std::move(v)) {}

  /// Parses "p", "-p" or "p/q" (no decimals, no whitespace).
  static ExactScalar parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
      std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i == s.size()) throw error(errc::parse_error, "bad rational '" + std::string(text) + "'");
      for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') {
          throw error(errc::parse_error, "bad rational '" + std::string(text) + "'");
        }
      }
      BigInt v(std::string(s.substr(i)));
      return s[0] == '-' ? BigInt(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return ExactScalar(parse_int(text));
    return ExactScalar(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  const rational_type& value() const { return value_; }

  int sign() const { return value_.sign(); }
  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }

  std::string str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  ExactScalar operator-() const { return ExactScalar(rational_type(-value_)); }

  ExactScalar& operator+=(const ExactScalar& o) { value_ += o.value_; return *this; }
  ExactScalar& operator-=(const ExactScalar& o) { value_ -= o.value_; return *this; }
  ExactScalar& operator*=(const ExactScalar& o) { value_ *= o.value_; return *this; }
  ExactScalar& operator/=(const ExactScalar& o) {
    if (o.is_zero()) throw error(errc::division_by_zero, "division of " + str() + " by zero");
    value_ /= o.value_;
    return *this;
  }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
    int c = a.value_.compare(b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

 private:
  rational_type value_;
};

inline ExactScalar abs(const ExactScalar& x) { return x.sign() < 0 ? -x : x; }

inline ExactScalar factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return ExactScalar(f);
}

inline ExactScalar binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    b *= (n - i);
    b /= (i + 1);
  }
  return ExactScalar(b);
}

inline ExactScalar pow(const ExactScalar& base, std::size_t e) {
  ExactScalar r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Dense polynomial, coefficient i multiplies x^i. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<ExactScalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<ExactScalar> coeffs) : coeffs_(coeffs) { trim(); }

  static Poly monomial(const ExactScalar& c, std::size_t degree) {
    std::vector<ExactScalar> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<ExactScalar>& coeffs() const { return coeffs_; }
  const ExactScalar& leading() const { return coeffs_.back(); }
  ExactScalar coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : ExactScalar(0); }

  /// Horner evaluation.
  ExactScalar operator()(const ExactScalar& x) const {
    ExactScalar acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<ExactScalar> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<ExactScalar> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ExactScalar> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(const ExactScalar& c, const Poly& p) {
    std::vector<ExactScalar> r(p.coeffs_);
    for (auto& x : r) x *= c;
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<ExactScalar> coeffs_;
};

inline ExactScalar poly_eval(const Poly& p, const ExactScalar& x) { return p(x); }

inline Poly derivative(const Poly& p) {
  if (p.degree() < 1) return {};
  std::vector<ExactScalar> r(p.coeffs().size() - 1);
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) r[i - 1] = p.coeffs()[i] * ExactScalar(i);
  return Poly(std::move(r));
}

/// Euclidean division over Q: a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw error(errc::division_by_zero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<ExactScalar> rem(a.coeffs());
  std::vector<ExactScalar> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i].is_zero()) continue;
    ExactScalar f = rem[i] / b.leading();
    quot[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeffs()[j];
  }
  rem.resize(db);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

inline Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return (ExactScalar(1) / p.leading()) * p;
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// p / gcd(p, p'), monic.
inline Poly square_free_part(const Poly& p) {
  if (p.degree() < 1) return make_monic(p);
  return make_monic(divmod(p, gcd(p, derivative(p))).first);
}

/// Yun's algorithm: returns (f_i, i) with p = c * prod f_i^i, each f_i
/// square-free and monic; factors equal to 1 are omitted.
inline std::vector<std::pair<Poly, std::size_t>> square_free_decomposition(const Poly& p) {
  std::vector<std::pair<Poly, std::size_t>> out;
  if (p.degree() < 1) return out;
  Poly a = gcd(p, derivative(p));
  Poly b = divmod(p, a).first;
  Poly c = divmod(derivative(p), a).first;
  Poly d = c - derivative(b);
  for (std::size_t i = 1; b.degree() > 0; ++i) {
    Poly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - derivative(b);
  }
  return out;
}

/// Sturm chain of the square-free part of p.
inline std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  Poly p0 = square_free_part(p);
  chain.push_back(p0);
  Poly p1 = derivative(p0);
  while (!p1.is_zero()) {
    chain.push_back(abs(ExactScalar(1) / p1.leading()) * p1);
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    p1 = ExactScalar(-1) * r;
  }
  return chain;
}

/// A point on the extended real line; nullopt stands for -inf as a lower
/// bound and +inf as an upper bound.
using Bound = std::optional<ExactScalar>;

namespace detail {

inline std::size_t sign_variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

inline std::size_t variations_at(const std::vector<Poly>& chain, const Bound& x, bool upper) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) {
    if (x) {
      signs.push_back(q(*x).sign());
    } else if (upper) {
      signs.push_back(q.leading().sign());
    } else {
      signs.push_back((q.degree() % 2 == 0) ? q.leading().sign() : -q.leading().sign());
    }
  }
  return sign_variations(signs);
}

inline std::size_t distinct_roots_in(const Poly& square_free, const Bound& lo, const Bound& hi) {
  if (square_free.degree() < 1) return 0;
  auto chain = sturm_chain(square_free);
  std::size_t vl = variations_at(chain, lo, false);
  std::size_t vh = variations_at(chain, hi, true);
  return vl > vh ? vl - vh : 0;
}

}  // namespace detail

struct RootCount {
  std::size_t distinct = 0;
  std::size_t with_multiplicity = 0;
};

/// Real roots of p in (lo, hi]: distinct roots from the Sturm chain of the
/// square-free part, multiplicities from Yun's decomposition.
inline RootCount sturm_real_root_count(const Poly& p, const Bound& lo = std::nullopt,
                                       const Bound& hi = std::nullopt) {
  if (p.is_zero()) throw error(errc::zero_polynomial, "root count of the zero polynomial");
  if (lo && hi && !(*lo < *hi)) return {};
  RootCount rc;
  rc.distinct = detail::distinct_roots_in(square_free_part(p), lo, hi);
  for (const auto& [factor, mult] : square_free_decomposition(p)) {
    rc.with_multiplicity += mult * detail::distinct_roots_in(factor, lo, hi);
  }
  return rc;
}

/// True iff p is constant (the zero polynomial included) or every complex
/// zero of p is real.
inline bool is_real_rooted(const Poly& p) {
  if (p.degree() < 1) return true;
  Poly sf = square_free_part(p);
  return detail::distinct_roots_in(sf, std::nullopt, std::nullopt) ==
         static_cast<std::size_t>(sf.degree());
}

/// Generating polynomial sum_k seq[k] x^k.
inline Poly generating_poly(const std::vector<ExactScalar>& seq) { return Poly(seq); }

}  // namespace tpkit
