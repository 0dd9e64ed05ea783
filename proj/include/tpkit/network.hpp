#pragma once

// Weighted acyclic planar networks: path matrices, a brute-force
// nonintersecting-path oracle, standard binomial-like networks, gluing, and
// the composite network whose source/sink selections read off A_m, its
// reversal and the Toeplitz matrices of its rows.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tpkit/bidiagonal.hpp"
#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"
#include "tpkit/trimat.hpp"

namespace tpkit {

struct Vertex {
  long column = 0;
  long height = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  ExactScalar weight;
};

/// Weights of a standard binomial-like network with m segments:
/// x[i][d] and y[i][d] for segment i in 1..m and offset d = j - i in 0..m-i.
/// Index 0 is unused.
struct BinomialWeights {
  std::size_t m = 0;
  std::vector<Row> x;
  std::vector<Row> y;

  static BinomialWeights ones(std::size_t m) {
    BinomialWeights w;
    w.m = m;
    w.x.resize(m + 1);
    w.y.resize(m + 1);
    for (std::size_t i = 1; i <= m; ++i) {
      w.x[i] = Row(m - i + 1, ExactScalar(1));
      w.y[i] = Row(m - i + 1, ExactScalar(1));
    }
    return w;
  }
};

class PlanarNetwork {
 public:
  std::size_t add_vertex(Vertex v) {
    auto it = index_.find(v);
    if (it != index_.end()) return it->second;
    vertices_.push_back(v);
    index_.emplace(v, vertices_.size() - 1);
    return vertices_.size() - 1;
  }

  std::optional<std::size_t> find(Vertex v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(Vertex v) const {
    auto idx = find(v);
    if (!idx) {
      throw error(errc::index_out_of_range,
                  "no vertex at (" + std::to_string(v.column) + "," + std::to_string(v.height) + ")");
    }
    return *idx;
  }

  void add_edge(Vertex from, Vertex to, ExactScalar weight) {
    std::size_t a = add_vertex(from);
    std::size_t b = add_vertex(to);
    edges_.push_back(Edge{a, b, std::move(weight)});
  }

  void add_edge_ids(std::size_t from, std::size_t to, ExactScalar weight) {
    edges_.push_back(Edge{from, to, std::move(weight)});
  }

  void set_sources(std::vector<std::size_t> s) { sources_ = std::move(s); }
  void set_sinks(std::vector<std::size_t> s) { sinks_ = std::move(s); }
  void set_sources(const std::vector<Vertex>& vs) { sources_ = ids(vs); }
  void set_sinks(const std::vector<Vertex>& vs) { sinks_ = ids(vs); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& sources() const { return sources_; }
  const std::vector<std::size_t>& sinks() const { return sinks_; }

  bool has_negative_weight() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight.sign() < 0; });
  }

  /// Set by build_binomial_like: the weights the network was built from.
  std::optional<BinomialWeights> binomial;
  /// Set by composite_for_A: the order m and the weights realizing Q_m.
  struct Composite {
    std::size_t m = 0;
    BinomialWeights q_weights;
  };
  std::optional<Composite> composite;
  /// Set by toeplitz_view.
  struct ToeplitzSelection {
    std::size_t n = 0, r = 0;
  };
  std::optional<ToeplitzSelection> toeplitz;

 private:
  std::vector<std::size_t> ids(const std::vector<Vertex>& vs) const {
    std::vector<std::size_t> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(require(v));
    return out;
  }

  std::vector<Vertex> vertices_;
  std::map<Vertex, std::size_t> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> sources_;
  std::vector<std::size_t> sinks_;
};

namespace detail {

inline std::vector<std::size_t> topological_order(const PlanarNetwork& net) {
  const std::size_t n = net.vertices().size();
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    ++indeg[net.edges()[e].to];
    out[net.edges()[e].from].push_back(e);
  }
  std::vector<std::size_t> order, stack;
  for (std::size_t v = n; v-- > 0;)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (std::size_t e : out[v])
      if (--indeg[net.edges()[e].to] == 0) stack.push_back(net.edges()[e].to);
  }
  if (order.size() != n) throw error(errc::cyclic_graph, "network has a directed cycle");
  return order;
}

inline std::vector<std::vector<std::size_t>> out_edges(const PlanarNetwork& net) {
  std::vector<std::vector<std::size_t>> out(net.vertices().size());
  for (std::size_t e = 0; e < net.edges().size(); ++e) out[net.edges()[e].from].push_back(e);
  return out;
}

}  // namespace detail

/// Entry (i, j) is the total weight of paths from source i to sink j.
inline FiniteMatrix path_matrix(const PlanarNetwork& net) {
  auto order = detail::topological_order(net);
  auto out = detail::out_edges(net);
  FiniteMatrix p(net.sources().size(), net.sinks().size());
  std::vector<ExactScalar> val(net.vertices().size());
  for (std::size_t i = 0; i < net.sources().size(); ++i) {
    std::fill(val.begin(), val.end(), ExactScalar(0));
    val[net.sources()[i]] = 1;
    for (std::size_t v : order) {
      if (val[v].is_zero()) continue;
      for (std::size_t e : out[v]) val[net.edges()[e].to] += val[v] * net.edges()[e].weight;
    }
    for (std::size_t j = 0; j < net.sinks().size(); ++j) p(i, j) = val[net.sinks()[j]];
  }
  return p;
}

// ---------------------------------------------------------------------------
// Nonintersecting families by enumeration
// ---------------------------------------------------------------------------

inline constexpr std::size_t kOracleEdgeCap = 60;

namespace detail {

struct WeightedPath {
  std::vector<std::size_t> vertices;
  ExactScalar weight;
};

class PathEnumerator {
 public:
  PathEnumerator(const PlanarNetwork& net, std::size_t path_cap)
      : net_(net), out_(out_edges(net)), cap_(path_cap) {
    topological_order(net);
  }

  const std::vector<WeightedPath>& paths(std::size_t from, std::size_t to) {
    auto key = std::make_pair(from, to);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<WeightedPath> found;
    WeightedPath cur{{from}, ExactScalar(1)};
    walk(from, to, cur, found);
    return cache_.emplace(key, std::move(found)).first->second;
  }

 private:
  void walk(std::size_t v, std::size_t to, WeightedPath& cur, std::vector<WeightedPath>& found) {
    if (v == to) {
      found.push_back(cur);
      if (++total_ > cap_) throw error(errc::too_large_for_oracle, "more than " + std::to_string(cap_) + " paths");
      return;
    }
    for (std::size_t e : out_[v]) {
      const Edge& edge = net_.edges()[e];
      ExactScalar saved = cur.weight;
      cur.weight *= edge.weight;
      cur.vertices.push_back(edge.to);
      walk(edge.to, to, cur, found);
      cur.vertices.pop_back();
      cur.weight = saved;
    }
  }

  const PlanarNetwork& net_;
  std::vector<std::vector<std::size_t>> out_;
  std::size_t cap_;
  std::size_t total_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<WeightedPath>> cache_;
};

inline int permutation_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

/// Calls visit(sigma, weight) for every vertex-disjoint family routing
/// source rows[i] to sink cols[sigma[i]].
inline void for_each_disjoint_family(PathEnumerator& paths, const PlanarNetwork& net, const IndexList& rows,
                                     const IndexList& cols,
                                     const std::function<bool(const std::vector<std::size_t>&, const ExactScalar&)>& visit) {
  const std::size_t k = rows.size();
  std::vector<std::size_t> sigma(k);
  std::vector<bool> sink_used(k, false);
  std::vector<int> vertex_used(net.vertices().size(), 0);
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t i, const ExactScalar& w) -> void {
    if (stop) return;
    if (i == k) {
      if (!visit(sigma, w)) stop = true;
      return;
    }
    for (std::size_t j = 0; j < k && !stop; ++j) {
      if (sink_used[j]) continue;
      for (const auto& p : paths.paths(net.sources()[rows[i]], net.sinks()[cols[j]])) {
        bool clash = false;
        for (std::size_t v : p.vertices)
          if (vertex_used[v]) {
            clash = true;
            break;
          }
        if (clash) continue;
        for (std::size_t v : p.vertices) vertex_used[v] = 1;
        sink_used[j] = true;
        sigma[i] = j;
        self(self, i + 1, w * p.weight);
        sink_used[j] = false;
        for (std::size_t v : p.vertices) vertex_used[v] = 0;
        if (stop) return;
      }
    }
  };
  rec(rec, 0, ExactScalar(1));
}

}  // namespace detail

/// Signed sum over vertex-disjoint path families; independent of path_matrix.
inline ExactScalar lgv_minor_oracle(const PlanarNetwork& net, const IndexList& rows, const IndexList& cols,
                                    std::size_t edge_cap = kOracleEdgeCap) {
  detail::validate_index_set(rows, net.sources().size(), "source");
  detail::validate_index_set(cols, net.sinks().size(), "sink");
  if (rows.size() != cols.size()) throw error(errc::bad_index_set, "source and sink lists differ in length");
  if (net.edges().size() > edge_cap) {
    throw error(errc::too_large_for_oracle,
                std::to_string(net.edges().size()) + " edges exceed the cap of " + std::to_string(edge_cap));
  }
  detail::PathEnumerator paths(net, 1'000'000);
  ExactScalar total = 0;
  detail::for_each_disjoint_family(paths, net, rows, cols, [&](const std::vector<std::size_t>& sigma, const ExactScalar& w) {
    total += detail::permutation_sign(sigma) * w;
    return true;
  });
  return total;
}

/// True when, for every source/sink subset pair of size <= max_size, only
/// the identity matching admits vertex-disjoint path families.
inline bool verify_fully_compatible(const PlanarNetwork& net, std::size_t max_size = 3,
                                    std::size_t path_cap = 2'000'000) {
  detail::PathEnumerator paths(net, path_cap);
  const std::size_t ns = net.sources().size(), nt = net.sinks().size();
  for (std::size_t k = 2; k <= std::min({max_size, ns, nt}); ++k) {
    IndexList rs = detail::first_combination(k);
    do {
      IndexList cs = detail::first_combination(k);
      do {
        bool bad = false;
        detail::for_each_disjoint_family(paths, net, rs, cs, [&](const std::vector<std::size_t>& sigma, const ExactScalar&) {
          for (std::size_t i = 0; i < sigma.size(); ++i)
            if (sigma[i] != i) {
              bad = true;
              return false;
            }
          return true;
        });
        if (bad) return false;
      } while (detail::next_combination(cs, nt));
    } while (detail::next_combination(rs, ns));
  }
  return true;
}

// ---------------------------------------------------------------------------
// Standard binomial-like networks
// ---------------------------------------------------------------------------

namespace detail {

/// Segment i of a binomial-like network on heights base..base+size-1 (local
/// heights 0..size-1), from global column c_hi to c_hi - 1.
inline void add_binomial_segment(PlanarNetwork& net, const BinomialWeights& w, std::size_t i, long c_hi, long base,
                                 std::size_t size) {
  for (std::size_t j = 0; j < size; ++j) {
    Vertex from{c_hi, base + static_cast<long>(j)};
    ExactScalar hx = j >= i ? w.x[i][j - i] : ExactScalar(1);
    net.add_edge(from, Vertex{c_hi - 1, base + static_cast<long>(j)}, hx);
    if (j >= i && j >= 1) net.add_edge(from, Vertex{c_hi - 1, base + static_cast<long>(j) - 1}, w.y[i][j - i]);
  }
}

inline void validate_weights(const BinomialWeights& w) {
  if (w.x.size() != w.m + 1 || w.y.size() != w.m + 1) {
    throw error(errc::dimension_mismatch, "weight grids must have m+1 segment slots");
  }
  for (std::size_t i = 1; i <= w.m; ++i) {
    if (w.x[i].size() != w.m - i + 1 || w.y[i].size() != w.m - i + 1) {
      throw error(errc::dimension_mismatch, "segment " + std::to_string(i) + " needs " +
                                                std::to_string(w.m - i + 1) + " weights");
    }
  }
}

}  // namespace detail

/// Columns 0..m, heights 0..m; sources (m, i), sinks (0, j).
inline PlanarNetwork build_binomial_like(const BinomialWeights& w) {
  detail::validate_weights(w);
  PlanarNetwork net;
  const long m = static_cast<long>(w.m);
  for (long c = m; c >= 0; --c)
    for (long h = 0; h <= m; ++h) net.add_vertex({c, h});
  for (std::size_t i = w.m; i >= 1; --i) detail::add_binomial_segment(net, w, i, static_cast<long>(i), 0, w.m + 1);
  std::vector<Vertex> src, snk;
  for (long h = 0; h <= m; ++h) {
    src.push_back({m, h});
    snk.push_back({0, h});
  }
  net.set_sources(src);
  net.set_sinks(snk);
  net.binomial = w;
  return net;
}

/// Weights realizing a lower-triangular L with L(0,0) = 1 as a standard
/// binomial-like network. Diagonal entries of each factor are pushed toward
/// the sinks so that factor i is trivial on heights below i.
inline BinomialWeights binomial_weights(const FiniteMatrix& l, bool allow_negative = false) {
  if (!l.is_square() || l.rows() == 0) throw error(errc::not_representable, "need a nonempty square matrix");
  auto fac = bidiagonal_factorization(l, allow_negative);
  if (!fac.ok) {
    std::string why = "no bidiagonal factorization";
    if (fac.evidence) why += " (" + fac.evidence->reason + " " + fac.evidence->value.str() + ")";
    throw error(errc::not_representable, why);
  }
  const std::size_t m = l.rows() - 1;
  BinomialWeights w;
  w.m = m;
  w.x.resize(m + 1);
  w.y.resize(m + 1);
  if (m == 0) {
    if (l(0, 0) != ExactScalar(1)) throw error(errc::not_representable, "entry (0,0) must be 1");
    return w;
  }
  // seg[i] is the factor realized by segment i (R_{m-i+1}).
  std::vector<FiniteMatrix> seg(m + 1);
  for (std::size_t i = 1; i <= m; ++i) seg[i] = fac.factors[m - i];
  for (std::size_t i = m; i >= 2; --i) {
    const std::size_t p = i - 1;
    ExactScalar d = seg[i](p, p);
    if (d.is_zero()) {
      if (!seg[i](p + 1, p).is_zero()) {
        throw error(errc::not_representable, "segment " + std::to_string(i) + " has a zero pivot above a descent");
      }
    } else {
      seg[i](p + 1, p) /= d;
    }
    seg[i](p, p) = 1;
    seg[i - 1](p, p) *= d;
    seg[i - 1](p, p - 1) *= d;
  }
  if (seg[1](0, 0) != ExactScalar(1)) throw error(errc::not_representable, "entry (0,0) must be 1");
  for (std::size_t i = 1; i <= m; ++i) {
    w.x[i].resize(m - i + 1);
    w.y[i].resize(m - i + 1);
    for (std::size_t j = i; j <= m; ++j) {
      w.x[i][j - i] = seg[i](j, j);
      w.y[i][j - i] = seg[i](j, j - 1);
    }
  }
  return w;
}

/// One network per segment, in the order paths traverse them; their path
/// matrices are the bidiagonal factors of the whole.
inline std::vector<PlanarNetwork> vertical_segments(const PlanarNetwork& net) {
  if (!net.binomial) throw error(errc::not_binomial_like, "network was not built as a standard binomial-like network");
  const BinomialWeights& w = *net.binomial;
  std::vector<PlanarNetwork> out;
  for (std::size_t i = w.m; i >= 1; --i) {
    PlanarNetwork s;
    const long c = static_cast<long>(i);
    for (long h = 0; h <= static_cast<long>(w.m); ++h) {
      s.add_vertex({c, h});
      s.add_vertex({c - 1, h});
    }
    detail::add_binomial_segment(s, w, i, c, 0, w.m + 1);
    std::vector<Vertex> src, snk;
    for (long h = 0; h <= static_cast<long>(w.m); ++h) {
      src.push_back({c, h});
      snk.push_back({c - 1, h});
    }
    s.set_sources(src);
    s.set_sinks(snk);
    out.push_back(std::move(s));
  }
  if (out.empty()) {
    PlanarNetwork s;
    s.add_vertex({0, 0});
    s.set_sources(std::vector<Vertex>{{0, 0}});
    s.set_sinks(std::vector<Vertex>{{0, 0}});
    out.push_back(std::move(s));
  }
  return out;
}

/// k isolated vertices serving as both sources and sinks.
inline PlanarNetwork identity_network(std::size_t k) {
  PlanarNetwork net;
  std::vector<Vertex> vs;
  for (std::size_t h = 0; h < k; ++h) vs.push_back({0, static_cast<long>(h)});
  for (const auto& v : vs) net.add_vertex(v);
  net.set_sources(vs);
  net.set_sinks(vs);
  return net;
}

/// Identifies the sinks of a with the sources of b, in order. The vertices
/// of b are shifted to columns left of a.
inline PlanarNetwork glue_networks(const PlanarNetwork& a, const PlanarNetwork& b) {
  if (a.sinks().size() != b.sources().size()) {
    throw error(errc::arity_mismatch, std::to_string(a.sinks().size()) + " sinks against " +
                                          std::to_string(b.sources().size()) + " sources");
  }
  PlanarNetwork out;
  for (const auto& v : a.vertices()) out.add_vertex(v);
  for (const auto& e : a.edges()) out.add_edge_ids(e.from, e.to, e.weight);

  long a_min = 0, b_max = 0;
  bool first = true;
  for (const auto& v : a.vertices()) a_min = first ? v.column : std::min(a_min, v.column), first = false;
  first = true;
  for (const auto& v : b.vertices()) b_max = first ? v.column : std::max(b_max, v.column), first = false;

  std::vector<std::optional<std::size_t>> merged(b.vertices().size());
  for (std::size_t k = 0; k < b.sources().size(); ++k) merged[b.sources()[k]] = a.sinks()[k];

  long offset = a_min - b_max;
  auto collides = [&](long off) {
    for (std::size_t v = 0; v < b.vertices().size(); ++v) {
      if (merged[v]) continue;
      if (out.find({b.vertices()[v].column + off, b.vertices()[v].height})) return true;
    }
    return false;
  };
  while (collides(offset)) --offset;

  std::vector<std::size_t> id(b.vertices().size());
  for (std::size_t v = 0; v < b.vertices().size(); ++v) {
    id[v] = merged[v] ? *merged[v] : out.add_vertex({b.vertices()[v].column + offset, b.vertices()[v].height});
  }
  for (const auto& e : b.edges()) out.add_edge_ids(id[e.from], id[e.to], e.weight);
  out.set_sources(a.sources());
  std::vector<std::size_t> snk;
  for (auto s : b.sinks()) snk.push_back(id[s]);
  out.set_sinks(snk);
  return out;
}

// ---------------------------------------------------------------------------
// The composite network for A_m and its three readings
// ---------------------------------------------------------------------------

namespace detail {

inline long tri(long k) { return k * (k - 1) / 2; }  // C(k, 2)

}  // namespace detail

/// Blocks B_m, ..., B_0 laid out right to left: B_j realizes Q_j on heights
/// m-j..m between columns 1+C(j+1,2) and 1+C(j,2); all other heights carry
/// weight-1 horizontal edges. Q_j is read from the first j segments of one
/// binomial-like realization of Q_m.
inline PlanarNetwork composite_from_weights(const BinomialWeights& w) {
  const long m = static_cast<long>(w.m);
  PlanarNetwork net;
  const long width = 1 + detail::tri(m + 1);
  for (long c = width; c >= 0; --c)
    for (long h = 0; h <= m; ++h) net.add_vertex({c, h});
  for (long j = m; j >= 1; --j) {
    const long right = 1 + detail::tri(j);
    const long base = m - j;
    for (long i = j; i >= 1; --i) {
      const long c_hi = right + i;
      for (long h = 0; h < base; ++h) net.add_edge({c_hi, h}, {c_hi - 1, h}, ExactScalar(1));
      detail::add_binomial_segment(net, w, static_cast<std::size_t>(i), c_hi, base, static_cast<std::size_t>(j) + 1);
    }
  }
  for (long h = 0; h <= m; ++h) net.add_edge({1, h}, {0, h}, ExactScalar(1));
  std::vector<Vertex> src, snk;
  for (long h = 0; h <= m; ++h) {
    src.push_back({width, h});
    snk.push_back({0, h});
  }
  net.set_sources(src);
  net.set_sinks(snk);
  net.composite = PlanarNetwork::Composite{w.m, w};
  return net;
}

/// Composite network for A_m built from Q(A)_m. Needs Q(0,0) = 1 and a
/// bidiagonal factorization of Q_m (nonnegative unless allow_negative).
inline PlanarNetwork composite_for_A(const FiniteMatrix& q_m, bool allow_negative = false) {
  return composite_from_weights(binomial_weights(q_m, allow_negative));
}

inline PlanarNetwork composite_for_A(const TriMatrix& q, std::size_t m, bool allow_negative = false) {
  return composite_for_A(q.leading_principal(m), allow_negative);
}

/// Same digraph; sources w_i = (1+C(i+1,2), m), sinks v'_i = (0, m-i).
inline PlanarNetwork reversal_view(const PlanarNetwork& net, std::size_t m) {
  if (!net.composite) throw error(errc::not_composite, "reversal view needs a composite network");
  if (m != net.composite->m) {
    throw error(errc::index_out_of_range, "composite network has order " + std::to_string(net.composite->m));
  }
  PlanarNetwork out = net;
  std::vector<Vertex> src, snk;
  const long mm = static_cast<long>(m);
  for (long i = 0; i <= mm; ++i) {
    src.push_back({1 + detail::tri(i + 1), mm});
    snk.push_back({0, mm - i});
  }
  out.set_sources(src);
  out.set_sinks(snk);
  return out;
}

/// Same digraph; sources s_i = (1+n+C(n+r-i,2), n+i), sinks
/// t_i = (1+C(n+r-i,2), i). Requires n + r = m.
inline PlanarNetwork toeplitz_view(const PlanarNetwork& net, std::size_t n, std::size_t r) {
  if (!net.composite) throw error(errc::not_composite, "Toeplitz view needs a composite network");
  if (n + r != net.composite->m) {
    throw error(errc::index_out_of_range, "n + r must equal the composite order " + std::to_string(net.composite->m));
  }
  PlanarNetwork out = net;
  std::vector<Vertex> src, snk;
  const long nn = static_cast<long>(n), rr = static_cast<long>(r);
  for (long i = 0; i <= rr; ++i) {
    src.push_back({1 + nn + detail::tri(nn + rr - i), nn + i});
    snk.push_back({1 + detail::tri(nn + rr - i), i});
  }
  out.set_sources(src);
  out.set_sinks(snk);
  out.toeplitz = PlanarNetwork::ToeplitzSelection{n, r};
  return out;
}

/// Equivalent network for a Toeplitz view: r+1 segments H_0..H_r, H_i
/// realizing blockdiag(I_i, Q_n, I_{r-i}) with the first n segments of the
/// composite's weights. Sources sit at heights n..n+r on the left boundary,
/// sinks at heights 0..r on the right boundary.
inline PlanarNetwork prune_equivalent(const PlanarNetwork& net) {
  if (!net.composite || !net.toeplitz) throw error(errc::not_composite, "pruning needs a Toeplitz view");
  const long n = static_cast<long>(net.toeplitz->n), r = static_cast<long>(net.toeplitz->r);
  const BinomialWeights& w = net.composite->q_weights;
  PlanarNetwork out;
  const long width = (r + 1) * n;
  for (long c = width; c >= 0; --c)
    for (long h = 0; h <= n + r; ++h) out.add_vertex({c, h});
  for (long k = 0; k <= r; ++k) {
    const long right = (r - k) * n;  // H_k occupies columns right+n .. right
    for (long i = n; i >= 1; --i) {
      const long c_hi = right + i;
      for (long h = 0; h <= n + r; ++h)
        if (h < k || h > k + n) out.add_edge({c_hi, h}, {c_hi - 1, h}, ExactScalar(1));
      detail::add_binomial_segment(out, w, static_cast<std::size_t>(i), c_hi, k, static_cast<std::size_t>(n) + 1);
    }
  }
  std::vector<Vertex> src, snk;
  for (long i = 0; i <= r; ++i) {
    src.push_back({width, n + i});
    snk.push_back({0, i});
  }
  out.set_sources(src);
  out.set_sinks(snk);
  return out;
}

/// Path matrix of segment H_k of a pruned network, read between its
/// boundary columns on all heights.
inline FiniteMatrix pruned_segment_matrix(const PlanarNetwork& pruned, std::size_t n, std::size_t r, std::size_t k) {
  PlanarNetwork seg = pruned;
  std::vector<Vertex> src, snk;
  const long right = static_cast<long>((r - k) * n);
  for (long h = 0; h <= static_cast<long>(n + r); ++h) {
    src.push_back({right + static_cast<long>(n), h});
    snk.push_back({right, h});
  }
  seg.set_sources(src);
  seg.set_sinks(snk);
  return path_matrix(seg);
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

inline std::string export_dot(const PlanarNetwork& net) {
  std::ostringstream os;
  os << "digraph {\n";
  if (net.vertices().empty()) {
    os << "}\n";
    return os.str();
  }
  os << "  rankdir=RL;\n  node [shape=point];\n";
  auto name = [&](std::size_t v) {
    const auto& x = net.vertices()[v];
    return "\"" + std::to_string(x.column) + "," + std::to_string(x.height) + "\"";
  };
  std::vector<std::size_t> order(net.vertices().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& va = net.vertices()[a];
    const auto& vb = net.vertices()[b];
    return std::make_pair(-va.column, va.height) < std::make_pair(-vb.column, vb.height);
  });
  std::map<std::size_t, std::string> role;
  for (std::size_t i = 0; i < net.sources().size(); ++i) role[net.sources()[i]] += "s" + std::to_string(i);
  for (std::size_t j = 0; j < net.sinks().size(); ++j) {
    auto& r = role[net.sinks()[j]];
    r += (r.empty() ? "" : "/") + std::string("t") + std::to_string(j);
  }
  for (std::size_t v : order) {
    const auto& x = net.vertices()[v];
    os << "  " << name(v) << " [pos=\"" << x.column << "," << x.height << "!\"";
    auto it = role.find(v);
    if (it != role.end()) os << ", shape=circle, label=\"" << it->second << "\"";
    os << "];\n";
  }
  std::vector<std::size_t> eorder(net.edges().size());
  for (std::size_t i = 0; i < eorder.size(); ++i) eorder[i] = i;
  std::stable_sort(eorder.begin(), eorder.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = net.edges()[a];
    const auto& eb = net.edges()[b];
    auto key = [&](const Edge& e) {
      const auto& f = net.vertices()[e.from];
      const auto& t = net.vertices()[e.to];
      return std::make_tuple(-f.column, f.height, -t.column, t.height);
    };
    return key(ea) < key(eb);
  });
  for (std::size_t e : eorder) {
    const auto& edge = net.edges()[e];
    os << "  " << name(edge.from) << " -> " << name(edge.to) << " [label=\"" << edge.weight.str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace tpkit
