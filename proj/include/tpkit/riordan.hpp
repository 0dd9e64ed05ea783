#pragma once

// Ordinary and exponential Riordan arrays, their group law, iteration
// matrices of partial Bell polynomials, and the r-Whitney triangles.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"
#include "tpkit/production.hpp"
#include "tpkit/series.hpp"
#include "tpkit/trimat.hpp"

namespace tpkit {

namespace detail {

inline void check_admissible(const PowerSeries& g, const PowerSeries& f, const char* what) {
  if (g[0].is_zero()) throw error(errc::not_admissible, std::string(what) + ": first series has zero constant term");
  if (f.order() < 1 || !f[0].is_zero() || f[1].is_zero()) {
    throw error(errc::not_admissible, std::string(what) + ": second series needs f(0) = 0 and f'(0) != 0");
  }
}

/// Column k of the array is weight(n, k) * [t^n] g f^k, for rows up to the
/// common truncation order.
inline TriMatrix riordan_triangle(std::string name, const PowerSeries& g, const PowerSeries& f, bool exponential) {
  const std::size_t order = std::min(g.order(), f.order());
  auto cols = std::make_shared<std::vector<PowerSeries>>();
  PowerSeries col = g.truncate(order);
  for (std::size_t k = 0; k <= order; ++k) {
    cols->push_back(col);
    col = ps_mul(col, f);
  }
  return TriMatrix(std::move(name), [cols, order, exponential](std::size_t n, std::span<const Row>) {
    if (n > order) {
      throw error(errc::truncation_too_small,
                  "row " + std::to_string(n) + " needs truncation order " + std::to_string(n) + ", have " +
                      std::to_string(order));
    }
    Row r(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      r[k] = (*cols)[k][n];
      if (exponential) r[k] *= factorial(n) / factorial(k);
    }
    return r;
  });
}

}  // namespace detail

/// r_{n,k} = [t^n] d(t) h(t)^k.
struct OrdinaryRiordan {
  PowerSeries d;
  PowerSeries h;

  OrdinaryRiordan(PowerSeries d_, PowerSeries h_) : d(std::move(d_)), h(std::move(h_)) {
    detail::check_admissible(d, h, "ordinary Riordan array");
  }
  std::size_t order() const { return std::min(d.order(), h.order()); }
};

/// R_{n,k} = (n!/k!) [t^n] g(t) f(t)^k; g and f hold plain t^n coefficients.
struct ExponentialRiordan {
  PowerSeries g;
  PowerSeries f;

  ExponentialRiordan(PowerSeries g_, PowerSeries f_) : g(std::move(g_)), f(std::move(f_)) {
    detail::check_admissible(g, f, "exponential Riordan array");
  }
  std::size_t order() const { return std::min(g.order(), f.order()); }
};

inline TriMatrix ordinary_to_matrix(const OrdinaryRiordan& r, std::string name = "R(d,h)") {
  return detail::riordan_triangle(std::move(name), r.d, r.h, false);
}

inline TriMatrix exponential_to_matrix(const ExponentialRiordan& r, std::string name = "R[g,f]") {
  return detail::riordan_triangle(std::move(name), r.g, r.f, true);
}

/// R[g1,f1] R[g2,f2] = R[g1 (g2 o f1), f2 o f1].
inline ExponentialRiordan riordan_mul(const ExponentialRiordan& a, const ExponentialRiordan& b) {
  return ExponentialRiordan(ps_mul(a.g, ps_compose(b.g, a.f)), ps_compose(b.f, a.f));
}

inline OrdinaryRiordan riordan_mul(const OrdinaryRiordan& a, const OrdinaryRiordan& b) {
  return OrdinaryRiordan(ps_mul(a.d, ps_compose(b.d, a.h)), ps_compose(b.h, a.h));
}

/// R[1/(g o fbar), fbar] with fbar the compositional inverse of f.
inline ExponentialRiordan riordan_inverse(const ExponentialRiordan& a) {
  PowerSeries fbar = ps_comp_inverse(a.f);
  return ExponentialRiordan(ps_inv_mul(ps_compose(a.g, fbar)), fbar);
}

inline ExponentialRiordan riordan_identity(std::size_t order = kDefaultOrder) {
  return ExponentialRiordan(PowerSeries::constant(1, order), PowerSeries::variable(order));
}

/// R[f', f]; the result has order N-1.
inline ExponentialRiordan derivative_subgroup_member(const PowerSeries& f) {
  if (f.order() < 2 || !f[0].is_zero() || f[1].is_zero()) {
    throw error(errc::not_admissible, "derivative subgroup needs f(0) = 0, f'(0) != 0 and order >= 2");
  }
  return ExponentialRiordan(ps_derive(f), f.truncate(f.order() - 1));
}

struct ThmEraReport {
  std::size_t m = 0;
  bool derivative_pf = false;        // Toeplitz of the coefficients of f' is TP through order m
  bool production_identity = false;  // R[f',f]_m = R[f',t]_m blockdiag(1, R[f',f]_{m-1})
  bool production_matches = false;   // left production of R[f',f] equals R[f',t] through order m
  ThmMainReport main;

  bool pass() const {
    return derivative_pf && production_identity && production_matches && main.hypothesis_tp && main.conclusions_hold();
  }
};

inline ThmEraReport verify_thm_ERA(const PowerSeries& f, std::size_t m) {
  ExponentialRiordan r = derivative_subgroup_member(f);
  if (r.order() < m) {
    throw error(errc::truncation_too_small, "order " + std::to_string(r.order()) + " < " + std::to_string(m));
  }
  ThmEraReport rep;
  rep.m = m;
  Row coeffs(r.g.coeffs().begin(), r.g.coeffs().begin() + static_cast<std::ptrdiff_t>(m) + 1);
  rep.derivative_pf = is_tp_to_order(toeplitz(coeffs, m)).tp;

  TriMatrix a = exponential_to_matrix(r, "R[f',f]");
  TriMatrix q = exponential_to_matrix(ExponentialRiordan(r.g, PowerSeries::variable(r.order())), "R[f',t]");
  FiniteMatrix a_m = a.leading_principal(m);
  FiniteMatrix q_m = q.leading_principal(m);
  FiniteMatrix rhs = m == 0 ? q_m : q_m * block_diag(FiniteMatrix::identity(1), a.leading_principal(m - 1));
  rep.production_identity = (a_m == rhs);
  rep.production_matches = (left_production(a, m) == q_m);
  rep.main = verify_thm_main(q_m, a_m);
  return rep;
}

/// B_{n,k}(x_1, x_2, ...) for n <= rows, i.e. R[1, f] with
/// f = sum_{m>=1} x_m t^m / m!. x[0] holds x_1.
inline TriMatrix iteration_matrix(const std::vector<ExactScalar>& x, std::size_t rows) {
  if (x.size() < rows) {
    throw error(errc::insufficient_sequence,
                "rows 0.." + std::to_string(rows) + " need " + std::to_string(rows) + " terms, got " +
                    std::to_string(x.size()));
  }
  const std::size_t order = std::max<std::size_t>(rows, 1);
  std::vector<ExactScalar> c(order + 1);
  for (std::size_t mm = 1; mm <= rows; ++mm) c[mm] = x[mm - 1] / factorial(mm);
  // x_1 = 0 is allowed here, so the columns are built without the
  // admissibility check of ExponentialRiordan.
  TriMatrix full = detail::riordan_triangle("B(x)", PowerSeries::constant(1, order), PowerSeries(c, order), true);
  return TriMatrix(
      "B(x)", [full](std::size_t n, std::span<const Row>) { return full.row(n); }, rows);
}

/// (gamma_k / k!)_k; entries must be nonnegative.
inline Row multiplier_to_pf(const std::vector<ExactScalar>& gamma) {
  Row out(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    if (gamma[k].sign() < 0) throw error(errc::negative_entry, "gamma_" + std::to_string(k) + " = " + gamma[k].str());
    out[k] = gamma[k] / factorial(k);
  }
  return out;
}

/// (gamma_{k+1})_k.
inline std::vector<ExactScalar> multiplier_shift(const std::vector<ExactScalar>& gamma) {
  if (gamma.empty()) return {};
  return std::vector<ExactScalar>(gamma.begin() + 1, gamma.end());
}

// ---------------------------------------------------------------------------
// r-Whitney triangles
// ---------------------------------------------------------------------------

/// W(n,k) = W(n-1,k-1) + (r + m k) W(n-1,k), W(0,k) = delta_{0,k}.
inline TriMatrix whitney_matrix(long m, long r) {
  return TriMatrix("whitney(" + std::to_string(m) + "," + std::to_string(r) + ")",
                   [m, r](std::size_t n, std::span<const Row> prev) {
                     Row row(n + 1);
                     if (n == 0) {
                       row[0] = 1;
                       return row;
                     }
                     for (std::size_t k = 0; k <= n; ++k) {
                       ExactScalar above = k < n ? prev[n - 1][k] : ExactScalar(0);
                       ExactScalar diag = k > 0 ? prev[n - 1][k - 1] : ExactScalar(0);
                       row[k] = diag + ExactScalar(r + m * static_cast<long>(k)) * above;
                     }
                     return row;
                   });
}

/// R[e^{rt}, (e^{mt}-1)/m], with f = t when m = 0.
inline ExponentialRiordan whitney_riordan(long m, long r, std::size_t order = kDefaultOrder) {
  PowerSeries g = series_exp(order, r);
  PowerSeries f = m == 0 ? PowerSeries::variable(order)
                         : ExactScalar(BigInt(1), BigInt(m)) *
                               (series_exp(order, m) - PowerSeries::constant(1, order));
  return ExponentialRiordan(g, f);
}

/// Leading (order+1)-block of the ordinary array R(1/(1-t), t/(1-mt)).
/// This is the left production matrix of W_{m,1} only; see the overload.
inline FiniteMatrix whitney_left_production(long m, std::size_t order) {
  const std::size_t n = std::max<std::size_t>(order, 1);
  PowerSeries h = ps_mul(PowerSeries::variable(n), series_geometric(n, m));
  return ordinary_to_matrix(OrdinaryRiordan(series_geometric(n), h)).leading_principal(order);
}

/// Left production matrix of W_{m,r}: R(1/(1-rt), t/(1-mt)). Column 0 of a
/// left production matrix is column 0 of the triangle, here (r^n).
inline FiniteMatrix whitney_left_production(long m, long r, std::size_t order) {
  const std::size_t n = std::max<std::size_t>(order, 1);
  PowerSeries h = ps_mul(PowerSeries::variable(n), series_geometric(n, m));
  return ordinary_to_matrix(OrdinaryRiordan(series_geometric(n, r), h)).leading_principal(order);
}

/// Q(n,0) = Q(n-1,0) and Q(n,k) = Q(n-1,k-1) + m Q(n-1,k), with Q(0,0) = 1.
inline bool satisfies_whitney_production_recurrence(const FiniteMatrix& q, long m) {
  if (q.rows() == 0) return true;
  if (q(0, 0) != ExactScalar(1)) return false;
  for (std::size_t n = 1; n < q.rows(); ++n) {
    if (q(n, 0) != q(n - 1, 0)) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      ExactScalar above = k < n ? q(n - 1, k) : ExactScalar(0);
      if (q(n, k) != q(n - 1, k - 1) + ExactScalar(m) * above) return false;
    }
  }
  return true;
}

}  // namespace tpkit
