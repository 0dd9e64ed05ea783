#pragma once

// Factorization of a lower-triangular matrix into nonnegative lower
// bidiagonal factors with a staircase zero pattern.
//
// Column recursion: L = blockdiag(1, L'') * S with S lower bidiagonal. The
// columns of L'' and the entries of S are read off column by column; where
// a column of residuals vanishes the choice is not forced and a small
// depth-first search tries the remaining candidates. The factor produced at
// recursion depth k has subdiagonal entries only in rows k+1 and below.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"
#include "tpkit/trimat.hpp"

namespace tpkit {

/// Where the search first got stuck: recursion depth, column, what failed
/// and the offending value.
struct FactorizationEvidence {
  std::size_t depth = 0;
  std::size_t column = 0;
  std::string reason;
  ExactScalar value;
};

struct BidiagonalFactorization {
  bool ok = false;
  std::vector<FiniteMatrix> factors;  // R_1 ... R_n, product equals the input
  std::optional<FactorizationEvidence> evidence;
};

namespace detail {

class BidiagonalSearch {
 public:
  explicit BidiagonalSearch(bool allow_negative = false) : allow_negative_(allow_negative) {}

  struct Factor {
    Row diag;
    Row sub;  // sub[i] is entry (i+1, i)
  };

  /// Factors deepest first; nullopt when no nonnegative factorization exists.
  std::optional<std::vector<Factor>> run(const std::vector<Row>& cols_of_l, std::size_t depth) {
    const std::size_t big_n = cols_of_l.size();
    auto at = [&](std::size_t i, std::size_t j) -> const ExactScalar& { return cols_of_l[j][i]; };
    if (big_n == 1) {
      if (negative(at(0, 0))) {
        fail(depth, 0, "negative diagonal entry", at(0, 0));
        return std::nullopt;
      }
      return std::vector<Factor>{{Row{at(0, 0)}, Row{}}};
    }
    const std::size_t n = big_n - 1;
    Frame f{Row(big_n), Row(big_n), std::vector<Row>(n), {}};
    f.d[0] = at(0, 0);
    if (negative(f.d[0])) {
      fail(depth, 0, "negative diagonal entry", f.d[0]);
      return std::nullopt;
    }
    if (!column(cols_of_l, f, 0, depth)) return std::nullopt;

    std::vector<Factor> out;
    for (auto& sub : f.result) {
      Factor e;
      e.diag.push_back(1);
      e.diag.insert(e.diag.end(), sub.diag.begin(), sub.diag.end());
      e.sub.push_back(0);
      e.sub.insert(e.sub.end(), sub.sub.begin(), sub.sub.end());
      out.push_back(std::move(e));
    }
    out.push_back(Factor{f.d, Row(f.s.begin() + 1, f.s.end())});
    return out;
  }

  std::optional<FactorizationEvidence> evidence;

 private:
  struct Frame {
    Row d;                      // diagonal of S
    Row s;                      // s[k] is entry (k, k-1) of S
    std::vector<Row> inner;     // columns of L''
    std::vector<Factor> result;
  };

  bool negative(const ExactScalar& v) const { return !allow_negative_ && v.sign() < 0; }

  void fail(std::size_t depth, std::size_t col, const char* why, const ExactScalar& v) {
    if (!evidence) evidence = FactorizationEvidence{depth, col, why, v};
  }

  bool column(const std::vector<Row>& l, Frame& f, std::size_t k, std::size_t depth) {
    const std::size_t big_n = l.size();
    const std::size_t n = big_n - 1;
    if (k == n) {
      auto sub = run(f.inner, depth + 1);
      if (!sub) return false;
      f.result = std::move(*sub);
      return true;
    }
    Row r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = l[k][i + 1];
      if (k > 0) r[i] -= f.d[k] * f.inner[k - 1][i];
    }
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (negative(r[i])) {
        fail(depth, k, "negative residual", r[i]);
        return false;
      }
      nonzero = nonzero || !r[i].is_zero();
    }
    std::vector<Row> candidates;
    if (nonzero) {
      f.s[k + 1] = 1;
      candidates.push_back(std::move(r));
    } else {
      f.s[k + 1] = 0;
      candidates.emplace_back(n);
      candidates.emplace_back(l[k + 1].begin() + 1, l[k + 1].end());
      Row unit(n);
      unit[k] = 1;
      candidates.push_back(std::move(unit));
    }
    const ExactScalar& target = l[k + 1][k + 1];
    for (auto& c : candidates) {
      bool triangular = true;
      for (std::size_t i = 0; i < k; ++i) triangular = triangular && c[i].is_zero();
      if (!triangular) continue;
      f.inner[k] = c;
      const ExactScalar pivot = c[k];
      if (!pivot.is_zero()) {
        f.d[k + 1] = target / pivot;
        if (negative(f.d[k + 1])) {
          fail(depth, k + 1, "negative diagonal ratio", f.d[k + 1]);
          continue;
        }
        if (column(l, f, k + 1, depth)) return true;
      } else {
        if (!target.is_zero()) {
          fail(depth, k + 1, "zero pivot under a nonzero diagonal entry", target);
          continue;
        }
        for (int dv : {0, 1}) {
          f.d[k + 1] = dv;
          if (column(l, f, k + 1, depth)) return true;
        }
      }
    }
    return false;
  }

  bool allow_negative_;
};

inline FiniteMatrix bidiagonal_matrix(const Row& diag, const Row& sub) {
  FiniteMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) m(i + 1, i) = sub[i];
  return m;
}

}  // namespace detail

/// L = R_1 R_2 ... R_n with each R_k nonnegative lower bidiagonal and
/// nonzero subdiagonal entries of R_k confined to rows n-k+1..n. Succeeds
/// exactly when such a factorization exists; otherwise reports where the
/// search first stalled. With `allow_negative` the sign constraints are
/// dropped and only the structural ones remain.
inline BidiagonalFactorization bidiagonal_factorization(const FiniteMatrix& l, bool allow_negative = false) {
  if (!l.is_square() || !l.is_lower_triangular()) {
    throw error(errc::not_lower_triangular, "bidiagonal factorization needs a square lower-triangular matrix");
  }
  BidiagonalFactorization out;
  const std::size_t big_n = l.rows();
  if (big_n == 0) {
    out.ok = true;
    return out;
  }
  std::vector<Row> cols(big_n, Row(big_n));
  for (std::size_t i = 0; i < big_n; ++i)
    for (std::size_t j = 0; j <= i; ++j) cols[j][i] = l(i, j);

  detail::BidiagonalSearch search(allow_negative);
  auto raw = search.run(cols, 0);
  if (!raw) {
    out.evidence = search.evidence;
    return out;
  }
  out.ok = true;
  if (big_n == 1) {
    out.factors.push_back(l);
    return out;
  }
  // The first factor is diag(1, ..., 1, c); fold c into the last row of the next one.
  const ExactScalar c = raw->front().diag.back();
  auto& next = (*raw)[1];
  next.diag.back() *= c;
  next.sub.back() *= c;
  for (std::size_t i = 1; i < raw->size(); ++i) {
    out.factors.push_back(detail::bidiagonal_matrix((*raw)[i].diag, (*raw)[i].sub));
  }
  return out;
}

}  // namespace tpkit
