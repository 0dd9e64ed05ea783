#pragma once

// Triangles defined by t_{n,k} = a_n t_{n-1,k-1} + b_n t_{n-1,k} + c_n t_{n-2,k-1}
// with row-dependent coefficients, their closed-form left production
// matrices, and planar networks realizing them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"
#include "tpkit/network.hpp"
#include "tpkit/production.hpp"
#include "tpkit/trimat.hpp"

namespace tpkit {

/// a[n-1] = a_n and b[n-1] = b_n for n >= 1; c[n-2] = c_n for n >= 2.
/// With c_is_zero set, c is ignored and every c_n is 0.
struct NRecSpec {
  std::vector<ExactScalar> a;
  std::vector<ExactScalar> b;
  std::vector<ExactScalar> c;
  bool c_is_zero = false;

  ExactScalar a_n(std::size_t n) const { return at(a, n, 1, "a"); }
  ExactScalar b_n(std::size_t n) const { return at(b, n, 1, "b"); }
  ExactScalar c_n(std::size_t n) const { return c_is_zero ? ExactScalar(0) : at(c, n, 2, "c"); }

  /// Largest row index the sequences support.
  std::size_t max_rows() const {
    std::size_t r = std::min(a.size(), b.size());
    if (!c_is_zero) r = std::min(r, c.size() + 1);
    return r;
  }

  /// The a/b-interchanged spec, whose triangle is the reversal.
  NRecSpec dual() const { return NRecSpec{b, a, c, c_is_zero}; }

  void require_rows(std::size_t rows) const {
    if (rows > max_rows()) {
      throw error(errc::insufficient_sequence, "sequences support rows 0.." + std::to_string(max_rows()) +
                                                   ", requested " + std::to_string(rows));
    }
  }

 private:
  static ExactScalar at(const std::vector<ExactScalar>& v, std::size_t n, std::size_t first, const char* name) {
    if (n < first || n - first >= v.size()) {
      throw error(errc::insufficient_sequence, std::string(name) + "_" + std::to_string(n) + " is not available");
    }
    return v[n - first];
  }
};

/// The six classical presets: pascal, stirling1, stirling1_B, delannoy,
/// derangement_A, derangement_B. Sequences cover rows 0..rows.
inline NRecSpec nrec_preset(const std::string& name, std::size_t rows) {
  NRecSpec s;
  auto fill = [&](auto fa, auto fb, auto fc) {
    for (std::size_t n = 1; n <= rows; ++n) {
      s.a.push_back(fa(static_cast<long>(n)));
      s.b.push_back(fb(static_cast<long>(n)));
      if (n >= 2) s.c.push_back(fc(static_cast<long>(n)));
    }
  };
  auto zero = [](long) { return ExactScalar(0); };
  auto one = [](long) { return ExactScalar(1); };
  if (name == "pascal") {
    fill(one, one, zero);
    s.c_is_zero = true;
  } else if (name == "stirling1") {
    fill(one, [](long n) { return ExactScalar(n - 1); }, zero);
    s.c_is_zero = true;
  } else if (name == "stirling1_B") {
    fill(one, [](long n) { return ExactScalar(2 * n - 1); }, zero);
    s.c_is_zero = true;
  } else if (name == "delannoy") {
    fill(one, one, one);
  } else if (name == "derangement_A") {
    fill(zero, [](long n) { return ExactScalar(n - 1); }, [](long n) { return ExactScalar(n - 1); });
  } else if (name == "derangement_B") {
    fill(one, [](long n) { return ExactScalar(2 * (n - 1)); }, [](long n) { return ExactScalar(2 * (n - 1)); });
  } else {
    throw error(errc::invalid_argument, "unknown n-recursive preset '" + name + "'");
  }
  return s;
}

inline const std::vector<std::string>& nrec_preset_names() {
  static const std::vector<std::string> names{"pascal",   "stirling1",     "stirling1_B",
                                              "delannoy", "derangement_A", "derangement_B"};
  return names;
}

inline TriMatrix nrec_matrix(const NRecSpec& spec, std::size_t rows, std::string name = "nrec") {
  spec.require_rows(rows);
  return TriMatrix(
      std::move(name),
      [spec](std::size_t n, std::span<const Row> prev) {
        Row r(n + 1);
        if (n == 0) {
          r[0] = 1;
          return r;
        }
        const ExactScalar a = spec.a_n(n), b = spec.b_n(n), c = n >= 2 ? spec.c_n(n) : ExactScalar(0);
        for (std::size_t k = 0; k <= n; ++k) {
          if (k >= 1 && k - 1 <= n - 1) r[k] += a * prev[n - 1][k - 1];
          if (k <= n - 1) r[k] += b * prev[n - 1][k];
          if (n >= 2 && k >= 1 && k - 1 <= n - 2) r[k] += c * prev[n - 2][k - 1];
        }
        return r;
      },
      rows);
}

/// L(b)(n,k) = b_{k+1} ... b_n for n >= k, as explicit products.
inline FiniteMatrix nrec_L(const NRecSpec& spec, std::size_t order) {
  FiniteMatrix l(order + 1, order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    ExactScalar p = 1;
    l(k, k) = 1;
    for (std::size_t n = k + 1; n <= order; ++n) {
      p *= spec.b_n(n);
      l(n, k) = p;
    }
  }
  return l;
}

/// blockdiag(1, D(a, c)): a_j at (j, j) and c_j at (j, j-1) for j >= 1.
inline FiniteMatrix nrec_D(const NRecSpec& spec, std::size_t order) {
  FiniteMatrix d(order + 1, order + 1);
  d(0, 0) = 1;
  for (std::size_t j = 1; j <= order; ++j) {
    d(j, j) = spec.a_n(j);
    if (j >= 2) d(j, j - 1) = spec.c_n(j);
  }
  return d;
}

inline FiniteMatrix nrec_left_production(const NRecSpec& spec, std::size_t order) {
  spec.require_rows(order);
  return nrec_L(spec, order) * nrec_D(spec, order);
}

inline FiniteMatrix nrec_reversal_left_production(const NRecSpec& spec, std::size_t order) {
  return nrec_left_production(spec.dual(), order);
}

struct Prop52Report {
  std::size_t order = 0;
  bool identity_holds = false;  // T = Q blockdiag(1, T) through the order
  bool diagonal_nonzero = false;
  std::optional<bool> production_matches;  // only when the diagonal is nonzero
  bool reversal_holds = false;             // reconstruct(dual Q) = reversal(T)
  std::optional<std::pair<std::size_t, std::size_t>> first_mismatch;

  bool pass() const { return identity_holds && reversal_holds && production_matches.value_or(true); }
};

inline Prop52Report verify_prop52(const NRecSpec& spec, std::size_t order) {
  Prop52Report rep;
  rep.order = order;
  TriMatrix t = nrec_matrix(spec, order);
  FiniteMatrix t_m = t.leading_principal(order);
  FiniteMatrix q = nrec_left_production(spec, order);
  FiniteMatrix rhs = order == 0 ? q : q * block_diag(FiniteMatrix::identity(1), t.leading_principal(order - 1));
  rep.identity_holds = true;
  for (std::size_t n = 0; n <= order && rep.identity_holds; ++n)
    for (std::size_t k = 0; k <= n; ++k)
      if (t_m(n, k) != rhs(n, k)) {
        rep.identity_holds = false;
        rep.first_mismatch = std::make_pair(n, k);
        break;
      }
  rep.diagonal_nonzero = true;
  for (std::size_t i = 0; i + 1 <= order; ++i) rep.diagonal_nonzero = rep.diagonal_nonzero && !t_m(i, i).is_zero();
  if (rep.diagonal_nonzero) rep.production_matches = (left_production(t, order) == q);
  rep.reversal_holds = (reconstruct(nrec_reversal_left_production(spec, order)) == reversal(t_m));
  return rep;
}

// ---------------------------------------------------------------------------
// Networks
// ---------------------------------------------------------------------------

namespace detail {

/// Block realizing the leading (j+1)-block of Q(T) on heights base..base+j,
/// from column right+j+1 down to column right. Height y descends with
/// weight b_y between columns right+y+1 and right+y; the last column pair
/// carries a_y horizontally (1 at local height 0) and c_y diagonally.
inline void add_nrec_block(PlanarNetwork& net, const NRecSpec& spec, long j, long right, long base, long top) {
  for (long col = right + j + 1; col > right; --col) {
    for (long h = 0; h <= top; ++h) {
      const long y = h - base;
      const bool inside = y >= 0 && y <= j;
      if (col == right + 1 && inside) {
        net.add_edge({col, h}, {col - 1, h}, y == 0 ? ExactScalar(1) : spec.a_n(static_cast<std::size_t>(y)));
        if (y >= 2) {
          ExactScalar c = spec.c_n(static_cast<std::size_t>(y));
          if (!c.is_zero()) net.add_edge({col, h}, {col - 1, h - 1}, c);
        }
        continue;
      }
      net.add_edge({col, h}, {col - 1, h}, ExactScalar(1));
      if (inside && y >= 1 && col == right + y + 1) {
        net.add_edge({col, h}, {col - 1, h - 1}, spec.b_n(static_cast<std::size_t>(y)));
      }
    }
  }
}

}  // namespace detail

/// Network whose path matrix is the leading (order+1)-block of Q(T).
inline PlanarNetwork nrec_production_network(const NRecSpec& spec, std::size_t order) {
  spec.require_rows(order);
  PlanarNetwork net;
  const long m = static_cast<long>(order);
  if (m == 0) return identity_network(1);
  detail::add_nrec_block(net, spec, m, 0, 0, m);
  std::vector<Vertex> src, snk;
  for (long h = 0; h <= m; ++h) {
    src.push_back({m + 1, h});
    snk.push_back({0, h});
  }
  net.set_sources(src);
  net.set_sinks(snk);
  return net;
}

/// Network whose path matrix is T_rows: blocks for Q_rows, Q_{rows-1}, ...,
/// Q_1, each shifted up by one height, glued right to left.
inline PlanarNetwork nrec_network(const NRecSpec& spec, std::size_t rows) {
  spec.require_rows(rows);
  const long m = static_cast<long>(rows);
  if (m == 0) return identity_network(1);
  PlanarNetwork net;
  long width = 0;
  for (long j = 1; j <= m; ++j) width += j + 1;
  long right = width;
  for (long j = m; j >= 1; --j) {
    right -= j + 1;
    detail::add_nrec_block(net, spec, j, right, m - j, m);
  }
  std::vector<Vertex> src, snk;
  for (long h = 0; h <= m; ++h) {
    src.push_back({width, h});
    snk.push_back({0, h});
  }
  net.set_sources(src);
  net.set_sinks(snk);
  return net;
}

}  // namespace tpkit
