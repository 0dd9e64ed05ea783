#pragma once

// Left production matrices Q(A) = A * blockdiag(1, A^{-1}), reconstruction
// of A from Q, the matrices M_{n,r}, and checks of the total-positivity and
// Toeplitz statements built on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"
#include "tpkit/trimat.hpp"

namespace tpkit {

/// Q(A)_r = A_r * blockdiag(1, A_{r-1}^{-1}). Only a_{0,0}..a_{r-1,r-1} are
/// inverted, so a zero at a_{r,r} is allowed.
inline FiniteMatrix left_production(const TriMatrix& a, std::size_t r) {
  FiniteMatrix ar = a.leading_principal(r);
  if (r == 0) return ar;
  FiniteMatrix inv;
  try {
    inv = lower_inverse(ar.block(0, 0, r, r));
  } catch (const error& e) {
    if (e.code() != errc::singular_diagonal) throw;
    throw error(errc::singular_diagonal, "left production matrix of '" + a.name() + "': " + e.what());
  }
  return ar * block_diag(FiniteMatrix::identity(1), inv);
}

/// Q(A) as a lazily generated triangle. Row n equals the last row of Q(A)_n.
inline TriMatrix production_matrix(const TriMatrix& a) {
  return TriMatrix(
      "Q(" + a.name() + ")",
      [a](std::size_t n, std::span<const Row>) { return left_production(a, n).row(n); }, a.row_limit());
}

/// A_m = Q_m blockdiag(I_1, Q_{m-1}) ... blockdiag(I_m, Q_0), where Q_j is
/// the leading (j+1)-block of q.
inline FiniteMatrix reconstruct(const FiniteMatrix& q) {
  if (!q.is_square()) throw error(errc::dimension_mismatch, "reconstruct needs a square matrix");
  const std::size_t size = q.rows();
  if (size == 0) return q;
  const std::size_t m = size - 1;
  FiniteMatrix acc = q;
  for (std::size_t i = 1; i <= m; ++i) {
    acc = acc * embed(i, q.block(0, 0, m - i + 1, m - i + 1), 0);
  }
  return acc;
}

inline FiniteMatrix reconstruct(const TriMatrix& q, std::size_t m) { return reconstruct(q.leading_principal(m)); }

/// A triangle whose rows are read from reconstruct(Q_m) for growing m.
inline TriMatrix triangle_from_production(const TriMatrix& q, std::string name) {
  return TriMatrix(
      std::move(name), [q](std::size_t n, std::span<const Row>) { return reconstruct(q, n).row(n); },
      q.row_limit());
}

/// M_{n,r} = prod_{i=0..r} blockdiag(I_i, Q_n, I_{r-i}).
inline FiniteMatrix build_Mnr(const FiniteMatrix& q_n, std::size_t r) {
  const std::size_t n = q_n.rows() - 1;
  FiniteMatrix acc = FiniteMatrix::identity(n + r + 1);
  for (std::size_t i = 0; i <= r; ++i) acc = acc * embed(i, q_n, r - i);
  return acc;
}

inline FiniteMatrix build_Mnr(const TriMatrix& q, std::size_t n, std::size_t r) {
  return build_Mnr(q.leading_principal(n), r);
}

/// M_{n,r}[n..n+r | 0..r], computed from Q(A).
inline FiniteMatrix toeplitz_via_Mnr(const TriMatrix& a, std::size_t n, std::size_t r) {
  return build_Mnr(left_production(a, n), r).block(n, 0, r + 1, r + 1);
}

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

struct ThmMainReport {
  std::size_t m = 0;
  std::size_t minor_cap = 0;
  bool hypothesis_tp = false;
  bool A_tp = false;
  bool rev_tp = false;
  bool rows_real_rooted = false;
  std::optional<MinorWitness> hypothesis_witness;
  std::optional<MinorWitness> A_witness;
  std::optional<MinorWitness> rev_witness;
  std::optional<std::size_t> first_non_real_rooted_row;
  std::uint64_t minors_checked = 0;

  bool hypothesis_failed() const { return !hypothesis_tp; }
  bool conclusions_hold() const { return A_tp && rev_tp && rows_real_rooted; }
  /// A certified hypothesis together with a failed conclusion.
  bool contradiction() const { return hypothesis_tp && !conclusions_hold(); }
};

/// Certifies Q_m, then evaluates the three conclusions on A_m regardless of
/// the outcome. A cap of 0 means full minor sweeps.
inline ThmMainReport verify_thm_main(const FiniteMatrix& q_m, const FiniteMatrix& a_m, std::size_t minor_cap = 0) {
  ThmMainReport rep;
  rep.m = a_m.rows() - 1;
  auto hq = is_tp_to_order(q_m, minor_cap);
  rep.minor_cap = hq.max_minor;
  rep.hypothesis_tp = hq.tp;
  rep.hypothesis_witness = hq.witness;
  auto ha = is_tp_to_order(a_m, minor_cap);
  rep.A_tp = ha.tp;
  rep.A_witness = ha.witness;
  auto hr = is_tp_to_order(reversal(a_m), minor_cap);
  rep.rev_tp = hr.tp;
  rep.rev_witness = hr.witness;
  rep.minors_checked = hq.minors_checked + ha.minors_checked + hr.minors_checked;
  rep.rows_real_rooted = true;
  for (std::size_t n = 0; n < a_m.rows(); ++n) {
    Row coeffs = a_m.row(n);
    coeffs.resize(n + 1);
    if (!is_real_rooted(generating_poly(coeffs))) {
      rep.rows_real_rooted = false;
      rep.first_non_real_rooted_row = n;
      break;
    }
  }
  return rep;
}

inline ThmMainReport verify_thm_main(const TriMatrix& a, std::size_t m, std::size_t minor_cap = 0) {
  return verify_thm_main(left_production(a, m), a.leading_principal(m), minor_cap);
}

struct ThmTMismatch {
  std::size_t n = 0, r = 0, i = 0, j = 0;
  ExactScalar toeplitz_side;
  ExactScalar production_side;
};

struct ThmTReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::optional<ThmTMismatch> mismatch;
};

/// T_r(row n of A)^T against M_{n,r}[n..n+r | 0..r] for all n <= n_max,
/// r <= r_max, with Q supplied separately.
inline ThmTReport verify_thm_T(const TriMatrix& a, const TriMatrix& q, std::size_t n_max, std::size_t r_max) {
  ThmTReport rep;
  for (std::size_t n = 0; n <= n_max; ++n) {
    FiniteMatrix q_n = q.leading_principal(n);
    Row alpha = a.row(n);
    for (std::size_t r = 0; r <= r_max; ++r) {
      FiniteMatrix lhs = toeplitz(alpha, r).transpose();
      FiniteMatrix rhs = build_Mnr(q_n, r).block(n, 0, r + 1, r + 1);
      ++rep.pairs_checked;
      for (std::size_t i = 0; i <= r && rep.pass; ++i)
        for (std::size_t j = 0; j <= r && rep.pass; ++j)
          if (lhs(i, j) != rhs(i, j)) {
            rep.pass = false;
            rep.mismatch = ThmTMismatch{n, r, i, j, lhs(i, j), rhs(i, j)};
          }
      if (!rep.pass) return rep;
    }
  }
  return rep;
}

inline ThmTReport verify_thm_T(const TriMatrix& a, std::size_t n_max, std::size_t r_max) {
  return verify_thm_T(a, production_matrix(a), n_max, r_max);
}

/// The leading (r+1)-block of Q(A)_{r+1} equals Q(A)_r.
inline bool production_is_stable(const TriMatrix& a, std::size_t r) {
  return left_production(a, r + 1).block(0, 0, r + 1, r + 1) == left_production(a, r);
}

}  // namespace tpkit
