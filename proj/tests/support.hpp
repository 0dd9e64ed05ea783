#pragma once

// Shared helpers for the test suites: seeded generators and slow oracles
// that avoid the library code paths under test.

#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "tpkit/exact.hpp"
#include "tpkit/trimat.hpp"

namespace tpkit {

// Readable gtest failure output.
inline void PrintTo(const FiniteMatrix& m, std::ostream* os) {
  *os << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) *os << (j ? " " : "  ") << m(i, j).str();
    *os << "\n";
  }
}

inline void PrintTo(const ExactScalar& x, std::ostream* os) { *os << x.str(); }

}  // namespace tpkit

namespace tpkit::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  ExactScalar rational(long lo, long hi, long max_den = 6) {
    return ExactScalar(BigInt(integer(lo, hi)), BigInt(integer(1, max_den)));
  }

  ExactScalar nonneg(long hi, long max_den = 1) { return rational(0, hi, max_den); }

  bool coin() { return integer(0, 1) == 1; }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline FiniteMatrix ints(const std::vector<std::vector<long>>& rows) {
  std::vector<Row> r;
  for (const auto& row : rows) {
    Row x;
    for (long v : row) x.emplace_back(v);
    r.push_back(std::move(x));
  }
  return FiniteMatrix::from_rows(r);
}

inline Row row_of(const std::vector<long>& v) {
  Row r;
  for (long x : v) r.emplace_back(x);
  return r;
}

/// Cofactor expansion along the first row.
inline ExactScalar laplace_det(const FiniteMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  ExactScalar acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    IndexList rs, cs;
    for (std::size_t i = 1; i < n; ++i) rs.push_back(i);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cs.push_back(c);
    ExactScalar term = m(0, j) * laplace_det(m.select(rs, cs));
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<IndexList> subsets(std::size_t n, std::size_t k) {
  std::vector<IndexList> out;
  IndexList cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Every minor of size <= cap nonnegative, by cofactor expansion.
inline bool tp_by_laplace(const FiniteMatrix& m, std::size_t cap) {
  for (std::size_t k = 1; k <= cap; ++k)
    for (const auto& rs : subsets(m.rows(), k))
      for (const auto& cs : subsets(m.cols(), k))
        if (laplace_det(m.select(rs, cs)).sign() < 0) return false;
  return true;
}

/// Random nonnegative lower bidiagonal matrix.
inline FiniteMatrix random_bidiagonal(Gen& g, std::size_t n, long hi = 3) {
  FiniteMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = g.nonneg(hi, 2);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = g.nonneg(hi, 2);
  return m;
}

// Closed-form entries, independent of the recurrences used by the library.

inline ExactScalar pascal_entry(std::size_t n, std::size_t k) { return k <= n ? binomial(n, k) : ExactScalar(0); }

/// S(n,k) = (1/k!) sum_j (-1)^j C(k,j) (k-j)^n.
inline ExactScalar stirling2_entry(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  ExactScalar acc = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    ExactScalar t = binomial(k, j) * pow(ExactScalar(static_cast<long>(k - j)), n);
    acc += (j % 2 == 0) ? t : -t;
  }
  return acc / factorial(k);
}

/// Signless c(n,k): coefficient of x^k in x(x+1)...(x+n-1).
inline ExactScalar stirling1_entry(std::size_t n, std::size_t k) {
  std::vector<ExactScalar> p{ExactScalar(1)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ExactScalar> q(p.size() + 1);
    for (std::size_t j = 0; j < p.size(); ++j) {
      q[j + 1] += p[j];
      q[j] += ExactScalar(static_cast<long>(i)) * p[j];
    }
    p = std::move(q);
  }
  return k < p.size() ? p[k] : ExactScalar(0);
}

/// Signless Lah L(n,k) = C(n-1,k-1) n!/k!, L(0,0) = 1.
inline ExactScalar lah_entry(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k == 0) return n == 0 ? 1 : 0;
  return binomial(n - 1, k - 1) * factorial(n) / factorial(k);
}

/// W_{m,r}(n,k) = (1/(m^k k!)) sum_j (-1)^{k-j} C(k,j) (mj+r)^n for m >= 1.
inline ExactScalar whitney_entry(long m, long r, std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (m == 0) return binomial(n, k) * pow(ExactScalar(r), n - k);
  ExactScalar acc = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    ExactScalar t = binomial(k, j) * pow(ExactScalar(m * static_cast<long>(j) + r), n);
    acc += ((k - j) % 2 == 0) ? t : -t;
  }
  return acc / (pow(ExactScalar(m), k) * factorial(k));
}

/// Eulerian A(n,k) = sum_j (-1)^j C(n+2,j) (k+1-j)^{n+1}.
inline ExactScalar eulerian_entry(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  ExactScalar acc = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    ExactScalar t = binomial(n + 2, j) * pow(ExactScalar(static_cast<long>(k + 1 - j)), n + 1);
    acc += (j % 2 == 0) ? t : -t;
  }
  return acc;
}

template <class F>
FiniteMatrix block_of(F entry, std::size_t m) {
  FiniteMatrix out(m + 1, m + 1);
  for (std::size_t n = 0; n <= m; ++n)
    for (std::size_t k = 0; k <= n; ++k) out(n, k) = entry(n, k);
  return out;
}

template <class F>
TriMatrix triangle_of(const char* name, F entry) {
  return TriMatrix::from_entries(name, [entry](std::size_t n, std::size_t k) { return entry(n, k); });
}

}  // namespace tpkit::testing
