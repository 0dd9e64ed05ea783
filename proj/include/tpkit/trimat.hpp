#pragma once

// Dense finite matrices, lazily generated lower-triangular matrices, exact
// minors and total-positivity sweeps.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"

namespace tpkit {

using Row = std::vector<ExactScalar>;
using IndexList = std::vector<std::size_t>;

class FiniteMatrix {
 public:
  FiniteMatrix() = default;
  FiniteMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static FiniteMatrix identity(std::size_t n) {
    FiniteMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static FiniteMatrix from_rows(const std::vector<Row>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    FiniteMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) {
        throw error(errc::dimension_mismatch, "row " + std::to_string(i) + " has " +
                                                   std::to_string(rows[i].size()) + " entries, expected " +
                                                   std::to_string(c));
      }
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  ExactScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ExactScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ExactScalar& at(std::size_t i, std::size_t j) {
    check(i, j);
    return (*this)(i, j);
  }
  const ExactScalar& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return (*this)(i, j);
  }

  Row row(std::size_t i) const {
    return Row(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  FiniteMatrix transpose() const {
    FiniteMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Selected rows and columns, in the given order. No monotonicity check.
  FiniteMatrix select(const IndexList& rs, const IndexList& cs) const {
    FiniteMatrix s(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = at(rs[i], cs[j]);
    return s;
  }

  /// Contiguous block [r0, r0+nr) x [c0, c0+nc).
  FiniteMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    IndexList rs(nr), cs(nc);
    for (std::size_t i = 0; i < nr; ++i) rs[i] = r0 + i;
    for (std::size_t j = 0; j < nc; ++j) cs[j] = c0 + j;
    return select(rs, cs);
  }

  bool is_lower_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) return false;
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  friend bool operator==(const FiniteMatrix& a, const FiniteMatrix& b) = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
      throw error(errc::index_out_of_range, "(" + std::to_string(i) + "," + std::to_string(j) + ") in a " +
                                                std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExactScalar> data_;
};

inline FiniteMatrix finmul(const FiniteMatrix& a, const FiniteMatrix& b) {
  if (a.cols() != b.rows()) {
    throw error(errc::dimension_mismatch, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                                              std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  FiniteMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline FiniteMatrix operator*(const FiniteMatrix& a, const FiniteMatrix& b) { return finmul(a, b); }

/// blockdiag(A, B).
inline FiniteMatrix block_diag(const FiniteMatrix& a, const FiniteMatrix& b) {
  FiniteMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

/// blockdiag(I_before, A, I_after).
inline FiniteMatrix embed(std::size_t before, const FiniteMatrix& a, std::size_t after) {
  return block_diag(block_diag(FiniteMatrix::identity(before), a), FiniteMatrix::identity(after));
}

// ---------------------------------------------------------------------------
// Determinants
// ---------------------------------------------------------------------------

namespace detail {

/// Row-scaled integer image of a rational matrix. Row i of `ints` equals
/// scale[i] times row i of the source; scales are positive, so minor signs
/// are preserved and exact values are recovered by dividing out the scales.
struct IntegerImage {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> ints;
  std::vector<BigInt> scale;
  std::vector<std::int64_t> small;  // filled when every entry is modest
  bool has_small = false;

  explicit IntegerImage(const FiniteMatrix& m) : rows(m.rows()), cols(m.cols()), ints(rows * cols), scale(rows) {
    for (std::size_t i = 0; i < rows; ++i) {
      BigInt l = 1;
      for (std::size_t j = 0; j < cols; ++j) l = boost::multiprecision::lcm(l, m(i, j).denominator());
      scale[i] = l;
      for (std::size_t j = 0; j < cols; ++j) ints[i * cols + j] = m(i, j).numerator() * (l / m(i, j).denominator());
    }
    const BigInt limit = BigInt(1) << 30;
    has_small = true;
    for (const auto& v : ints) {
      if (boost::multiprecision::abs(v) >= limit) {
        has_small = false;
        break;
      }
    }
    if (has_small) {
      small.reserve(ints.size());
      for (const auto& v : ints) small.push_back(static_cast<std::int64_t>(v));
    }
  }
};

/// Fraction-free Bareiss elimination on an n x n row-major integer matrix.
inline BigInt bareiss(std::vector<BigInt> a, std::size_t n) {
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

/// Same elimination in 64-bit words with 128-bit intermediates. Returns
/// nullopt when an intermediate leaves the safe range.
inline std::optional<std::int64_t> bareiss_small(std::vector<std::int64_t> a, std::size_t n) {
  if (n == 0) return 1;
  constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
  std::int64_t prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a[i * n + j]) * a[k * n + k] -
                     static_cast<__int128>(a[i * n + k]) * a[k * n + j];
        v /= prev;
        if (v >= kLimit || v <= -kLimit) return std::nullopt;
        a[i * n + j] = static_cast<std::int64_t>(v);
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

inline void validate_index_set(const IndexList& idx, std::size_t bound, const char* what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= bound) {
      throw error(errc::bad_index_set, std::string(what) + " index " + std::to_string(idx[i]) + " out of range");
    }
    if (i > 0 && idx[i] <= idx[i - 1]) {
      throw error(errc::bad_index_set, std::string(what) + " indices not strictly increasing");
    }
  }
}

/// Scaled integer determinant of the selected submatrix.
inline BigInt scaled_minor(const IntegerImage& img, const IndexList& rs, const IndexList& cs) {
  const std::size_t k = rs.size();
  if (img.has_small) {
    std::vector<std::int64_t> a(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) a[i * k + j] = img.small[rs[i] * img.cols + cs[j]];
    if (auto d = bareiss_small(std::move(a), k)) return BigInt(*d);
  }
  std::vector<BigInt> a(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i * k + j] = img.ints[rs[i] * img.cols + cs[j]];
  return bareiss(std::move(a), k);
}

inline ExactScalar unscale(const IntegerImage& img, const IndexList& rs, BigInt det) {
  BigInt s = 1;
  for (auto r : rs) s *= img.scale[r];
  return ExactScalar(std::move(det), std::move(s));
}

}  // namespace detail

/// det M[rows | cols].
inline ExactScalar minor(const FiniteMatrix& m, const IndexList& rows, const IndexList& cols) {
  detail::validate_index_set(rows, m.rows(), "row");
  detail::validate_index_set(cols, m.cols(), "column");
  if (rows.size() != cols.size()) throw error(errc::bad_index_set, "row and column lists differ in length");
  detail::IntegerImage img(m.select(rows, cols));
  IndexList id(rows.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  return detail::unscale(img, id, detail::scaled_minor(img, id, id));
}

inline ExactScalar determinant(const FiniteMatrix& m) {
  if (!m.is_square()) throw error(errc::dimension_mismatch, "determinant of a non-square matrix");
  IndexList id(m.rows());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  return minor(m, id, id);
}

// ---------------------------------------------------------------------------
// Total positivity
// ---------------------------------------------------------------------------

struct MinorWitness {
  IndexList rows;
  IndexList cols;
  ExactScalar value;
};

struct TPCertificate {
  bool tp = true;
  std::size_t max_minor = 0;
  std::uint64_t minors_checked = 0;
  std::optional<MinorWitness> witness;  // lexicographically first negative minor
};

namespace detail {

/// Advances a strictly increasing k-subset of {0..n-1}; false when exhausted.
inline bool next_combination(IndexList& c, std::size_t n) {
  std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline IndexList first_combination(std::size_t k) {
  IndexList c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

}  // namespace detail

/// Checks every minor of size 1..max_minor in (size, rows, cols) order and
/// stops at the first negative one. max_minor = 0 means min(R, C).
inline TPCertificate is_tp_to_order(const FiniteMatrix& m, std::size_t max_minor = 0) {
  const std::size_t full = std::min(m.rows(), m.cols());
  if (max_minor == 0 || max_minor > full) max_minor = full;
  TPCertificate cert;
  cert.max_minor = max_minor;
  detail::IntegerImage img(m);
  for (std::size_t k = 1; k <= max_minor; ++k) {
    IndexList rs = detail::first_combination(k);
    do {
      IndexList cs = detail::first_combination(k);
      do {
        ++cert.minors_checked;
        BigInt d = detail::scaled_minor(img, rs, cs);
        if (d < 0) {
          cert.tp = false;
          cert.witness = MinorWitness{rs, cs, detail::unscale(img, rs, std::move(d))};
          return cert;
        }
      } while (detail::next_combination(cs, m.cols()));
    } while (detail::next_combination(rs, m.rows()));
  }
  return cert;
}

inline FiniteMatrix toeplitz(const Row& s, std::size_t r) {
  FiniteMatrix t(r + 1, r + 1);
  for (std::size_t i = 0; i <= r; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (i - j < s.size()) t(i, j) = s[i - j];
  return t;
}

// ---------------------------------------------------------------------------
// Lazily generated lower-triangular matrices
// ---------------------------------------------------------------------------

/// Row n is produced from n and the rows already generated. Generators must
/// be deterministic.
using RowGenerator = std::function<Row(std::size_t n, std::span<const Row> previous)>;

class TriMatrix {
 public:
  TriMatrix() : TriMatrix("zero", [](std::size_t n, std::span<const Row>) { return Row(n + 1); }) {}

  /// `row_limit`, when set, is the last row index the generator can supply.
  TriMatrix(std::string name, RowGenerator gen, std::optional<std::size_t> row_limit = std::nullopt)
      : state_(std::make_shared<State>()) {
    state_->name = std::move(name);
    state_->gen = std::move(gen);
    state_->limit = row_limit;
  }

  /// Entry rule a(n, k) for 0 <= k <= n.
  static TriMatrix from_entries(std::string name, std::function<ExactScalar(std::size_t, std::size_t)> entry) {
    return TriMatrix(std::move(name), [entry = std::move(entry)](std::size_t n, std::span<const Row>) {
      Row r(n + 1);
      for (std::size_t k = 0; k <= n; ++k) r[k] = entry(n, k);
      return r;
    });
  }

  static TriMatrix from_finite(std::string name, const FiniteMatrix& m) {
    if (!m.is_square() || !m.is_lower_triangular()) {
      throw error(errc::not_lower_triangular, "matrix '" + name + "' is not square lower triangular");
    }
    return TriMatrix(
        std::move(name),
        [m](std::size_t n, std::span<const Row>) {
          Row r(n + 1);
          for (std::size_t k = 0; k <= n; ++k) r[k] = m(n, k);
          return r;
        },
        m.rows() == 0 ? std::optional<std::size_t>{} : std::optional<std::size_t>{m.rows() - 1});
  }

  const std::string& name() const { return state_->name; }
  std::optional<std::size_t> row_limit() const { return state_->limit; }

  /// Row n as (a_{n,0}, ..., a_{n,n}).
  Row row(std::size_t n) const {
    State& s = *state_;
    std::lock_guard lock(s.mutex);
    if (s.limit && n > *s.limit) {
      throw error(errc::index_out_of_range, "row " + std::to_string(n) + " of '" + s.name + "' is beyond its last row " +
                                                std::to_string(*s.limit));
    }
    while (s.cache.size() <= n) {
      std::size_t m = s.cache.size();
      Row r = s.gen(m, std::span<const Row>(s.cache.data(), s.cache.size()));
      if (r.size() > m + 1) {
        for (std::size_t k = m + 1; k < r.size(); ++k) {
          if (!r[k].is_zero()) {
            throw error(errc::not_lower_triangular, "row " + std::to_string(m) + " of '" + s.name +
                                                        "' has a nonzero entry above the diagonal");
          }
        }
      }
      r.resize(m + 1);
      s.cache.push_back(std::move(r));
    }
    return s.cache[n];
  }

  /// a_{n,k}; zero above the diagonal.
  ExactScalar entry(std::size_t n, std::size_t k) const {
    if (k > n) return 0;
    return row(n)[k];
  }

  /// A_r: the (r+1) x (r+1) leading principal submatrix.
  FiniteMatrix leading_principal(std::size_t r) const {
    FiniteMatrix m(r + 1, r + 1);
    for (std::size_t n = 0; n <= r; ++n) {
      Row rw = row(n);
      for (std::size_t k = 0; k <= n; ++k) m(n, k) = rw[k];
    }
    return m;
  }

 private:
  struct State {
    std::string name;
    RowGenerator gen;
    std::optional<std::size_t> limit;
    std::mutex mutex;
    std::vector<Row> cache;
  };
  std::shared_ptr<State> state_;
};

inline FiniteMatrix leading_principal(const TriMatrix& a, std::size_t r) { return a.leading_principal(r); }

/// Row n reversed: entry (n, k) = a_{n, n-k}.
inline TriMatrix reversal(const TriMatrix& a) {
  return TriMatrix(
      "rev(" + a.name() + ")",
      [a](std::size_t n, std::span<const Row>) {
        Row r = a.row(n);
        return Row(r.rbegin(), r.rend());
      },
      a.row_limit());
}

/// Reversal of a finite lower-triangular matrix.
inline FiniteMatrix reversal(const FiniteMatrix& m) {
  FiniteMatrix r(m.rows(), m.cols());
  for (std::size_t n = 0; n < m.rows(); ++n)
    for (std::size_t k = 0; k <= n && k < m.cols(); ++k) r(n, k) = m(n, n - k);
  return r;
}

/// Inverse of a lower-triangular square matrix by forward substitution.
inline FiniteMatrix lower_inverse(const FiniteMatrix& a) {
  if (!a.is_square() || !a.is_lower_triangular()) throw error(errc::not_lower_triangular, "inverse");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i).is_zero()) throw error(errc::singular_diagonal, "zero diagonal entry at index " + std::to_string(i));
  }
  FiniteMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = ExactScalar(1) / a(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      ExactScalar acc = 0;
      for (std::size_t k = j; k < i; ++k) acc += a(i, k) * inv(k, j);
      inv(i, j) = -acc / a(i, i);
    }
  }
  return inv;
}

/// Inverse of A_r.
inline FiniteMatrix tri_inverse(const TriMatrix& a, std::size_t r) { return lower_inverse(a.leading_principal(r)); }

// ---------------------------------------------------------------------------
// Text export
// ---------------------------------------------------------------------------

/// Rows of A_r as lines of space-separated entries (lower triangle only).
inline std::string triangle_text(const TriMatrix& a, std::size_t r) {
  std::ostringstream os;
  for (std::size_t n = 0; n <= r; ++n) {
    Row rw = a.row(n);
    for (std::size_t k = 0; k <= n; ++k) os << (k ? " " : "") << rw[k];
    os << '\n';
  }
  return os.str();
}

inline std::string to_csv(const FiniteMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace tpkit
