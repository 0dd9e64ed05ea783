// tpkit command-line front end.
//
// Exit codes: 0 verified, 1 counterexample or mismatch, 2 usage error,
// 3 theorem hypothesis not satisfied.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tpkit/bidiagonal.hpp"
#include "tpkit/catalog.hpp"
#include "tpkit/io.hpp"
#include "tpkit/network.hpp"
#include "tpkit/nrec.hpp"
#include "tpkit/production.hpp"
#include "tpkit/riordan.hpp"
#include "tpkit/series.hpp"
#include "tpkit/trimat.hpp"

using namespace tpkit;

namespace {

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kUsage = 2;
constexpr int kHypothesis = 3;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::size_t truncation = kDefaultOrder;
  std::size_t minor_cap = 0;
  std::uint64_t seed = 20240611;
  std::string out;
};

std::vector<ExactScalar> parse_list(const std::string& text) {
  std::vector<ExactScalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(ExactScalar::parse(item));
  }
  return out;
}

struct TriangleArgs {
  std::string name;
  long m = 1, r = 1;
  std::string x;

  TriangleParams params(std::size_t need, const Config& cfg) const {
    TriangleParams p;
    p.m = m;
    p.r = r;
    p.x = parse_list(x);
    p.order = std::max(cfg.truncation, need);
    return p;
  }
  std::string canonical() const {
    TriangleParams p;
    p.m = m;
    p.r = r;
    p.x = parse_list(x);
    return canonical_triangle_name(name, p);
  }
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Usage("cannot write " + cfg.out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string triangle_output(const TriMatrix& t, const std::string& name, std::size_t rows, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    const auto& e = triangle_entry(name);
    json doc{{"name", name}, {"index_shift", {e.index_shift.first, e.index_shift.second}}, {"rows", json::array()}};
    for (std::size_t n = 0; n < rows; ++n) doc["rows"].push_back(to_json(t.row(n)));
    return dump(doc);
  }
  const char sep = format == "csv" ? ',' : ' ';
  for (std::size_t n = 0; n < rows; ++n) {
    Row r = t.row(n);
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? std::string(1, sep) : "") << r[k];
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(const Config& cfg, const TriangleArgs& ta, std::size_t rows, const std::string& format) {
  const std::string name = ta.canonical();
  TriMatrix t = get_triangle(name, ta.params(rows, cfg));
  emit(cfg, triangle_output(t, name, rows, format));
  return kOk;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int cmd_check(const Config& cfg, const TriangleArgs& ta, const std::string& what, std::size_t order) {
  const std::string name = ta.canonical();
  TriMatrix a = get_triangle(name, ta.params(order, cfg));
  json rep{{"triangle", name}, {"what", what}, {"order", order}};
  int code = kOk;

  if (what == "tp" || what == "reversal-tp") {
    FiniteMatrix m = a.leading_principal(order);
    TPCertificate c = is_tp_to_order(what == "tp" ? m : reversal(m), cfg.minor_cap);
    rep["certificate"] = to_json(c);
    code = c.tp ? kOk : kCounterexample;
  } else if (what == "roots") {
    json rows = json::array();
    bool all = true;
    for (std::size_t n = 0; n <= order; ++n) {
      bool ok = is_real_rooted(generating_poly(a.row(n)));
      rows.push_back(ok);
      all = all && ok;
    }
    rep["rows_real_rooted"] = all;
    rep["per_row"] = rows;
    code = all ? kOk : kCounterexample;
  } else if (what == "thm-main" || what == "thm-t") {
    std::optional<CatalogProduction> q;
    try {
      q = catalog_production(name, a, order);
    } catch (const error& e) {
      if (e.code() != errc::singular_diagonal) throw;
      rep["hypothesis_tp"] = false;
      rep["production"] = nullptr;
      rep["reason"] = e.what();
      emit(cfg, dump(rep));
      return kHypothesis;
    }
    rep["production_route"] = q->route;
    rep["production"] = to_json(q->q);
    if (what == "thm-main") {
      ThmMainReport r = verify_thm_main(q->q, a.leading_principal(order), cfg.minor_cap);
      rep["report"] = to_json(r);
      code = r.hypothesis_failed() ? kHypothesis : (r.contradiction() ? kCounterexample : kOk);
    } else {
      ThmTReport r = verify_thm_T(a, TriMatrix::from_finite("Q", q->q), order, order);
      rep["report"] = to_json(r);
      code = r.pass ? kOk : kCounterexample;
    }
  } else if (what == "prop52") {
    auto spec = nrec_spec_for(name, order);
    if (!spec) throw Usage("prop52 applies to the n-recursive presets only, not '" + name + "'");
    Prop52Report r = verify_prop52(*spec, order);
    rep["spec"] = to_json(*spec);
    rep["report"] = to_json(r);
    code = r.pass() ? kOk : kCounterexample;
  } else {
    throw Usage("unknown check '" + what + "'");
  }
  emit(cfg, dump(rep));
  return code;
}

// ---------------------------------------------------------------------------
// network
// ---------------------------------------------------------------------------

struct NetworkArgs {
  std::string view = "A";
  std::size_t m = 3, n = 0, r = 0;
  bool n_set = false, r_set = false;
  std::string emit = "dot";
  bool verify = false;
  bool allow_negative = false;
  bool prune = false;
};

int cmd_network(const Config& cfg, const TriangleArgs& ta, const NetworkArgs& na) {
  const std::string name = ta.canonical();
  std::size_t m = na.m;
  if (na.view == "toeplitz") {
    if (!na.n_set || !na.r_set) throw Usage("the toeplitz view needs --n and --r");
    m = na.n + na.r;
  } else if (na.view != "A" && na.view != "reversal") {
    throw Usage("unknown view '" + na.view + "'");
  }
  if (na.prune && na.view != "toeplitz") throw Usage("--prune applies to the toeplitz view only");
  TriMatrix a = get_triangle(name, ta.params(m, cfg));

  PlanarNetwork net;
  try {
    CatalogProduction q = catalog_production(name, a, m);
    net = composite_for_A(q.q, na.allow_negative);
  } catch (const error& e) {
    switch (e.code()) {
      case errc::singular_diagonal:
      case errc::not_representable:
      case errc::negative_entry:
        std::cerr << "tpkit: " << e.what() << "\n";
        if (!na.allow_negative) std::cerr << "tpkit: the production matrix is not TP; try --allow-negative\n";
        return kHypothesis;
      default:
        throw;
    }
  }
  if (net.has_negative_weight()) std::cerr << "tpkit: network has negative weights; no positivity conclusion\n";

  FiniteMatrix expected;
  if (na.view == "A") {
    expected = a.leading_principal(m);
  } else if (na.view == "reversal") {
    net = reversal_view(net, m);
    expected = reversal(a.leading_principal(m));
  } else {
    net = toeplitz_view(net, na.n, na.r);
    if (na.prune) net = prune_equivalent(net);
    expected = toeplitz(a.row(na.n), na.r).transpose();
  }

  std::optional<bool> verified;
  if (na.verify) verified = (path_matrix(net) == expected);

  if (na.emit == "json") {
    json doc{{"triangle", name}, {"view", na.view}, {"m", m}, {"network", to_json(net)}};
    if (na.view == "toeplitz") {
      doc["n"] = na.n;
      doc["r"] = na.r;
    }
    if (verified) doc["verified"] = *verified;
    emit(cfg, dump(doc));
  } else if (na.emit == "dot") {
    emit(cfg, export_dot(net));
  } else {
    throw Usage("unknown --emit '" + na.emit + "'");
  }
  if (verified) {
    std::cerr << "verify: " << (*verified ? "pass" : "MISMATCH") << "\n";
    if (!*verified) return kCounterexample;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// riordan
// ---------------------------------------------------------------------------

int cmd_riordan(const Config& cfg, const std::string& g, const std::string& f, bool ordinary, std::size_t rows,
                const std::string& format, bool production) {
  const std::size_t order = std::max(cfg.truncation, rows);
  PowerSeries gs = named_series(g, order), fs = named_series(f, order);
  TriMatrix t = ordinary ? ordinary_to_matrix(OrdinaryRiordan(gs, fs), "R(" + g + "," + f + ")")
                         : exponential_to_matrix(ExponentialRiordan(gs, fs), "R[" + g + "," + f + "]");
  if (production) {
    FiniteMatrix q = left_production(t, rows ? rows - 1 : 0);
    emit(cfg, format == "json" ? dump(to_json(q)) : (format == "csv" ? to_csv(q) : triangle_text(TriMatrix::from_finite("Q", q), q.rows() - 1)));
    return kOk;
  }
  std::ostringstream os;
  const char sep = format == "csv" ? ',' : ' ';
  if (format == "json") {
    json doc{{"name", t.name()}, {"rows", json::array()}};
    for (std::size_t n = 0; n < rows; ++n) doc["rows"].push_back(to_json(t.row(n)));
    emit(cfg, dump(doc));
    return kOk;
  }
  for (std::size_t n = 0; n < rows; ++n) {
    Row r = t.row(n);
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? std::string(1, sep) : "") << r[k];
    os << '\n';
  }
  emit(cfg, os.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : e_(seed) {}
  long uniform(long lo, long hi) { return lo + static_cast<long>(e_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  ExactScalar rational(long lo, long hi, long max_den) {
    return ExactScalar(BigInt(uniform(lo, hi)), BigInt(uniform(1, max_den)));
  }

 private:
  std::mt19937_64 e_;
};

PowerSeries random_unit_series(Rng& rng, std::size_t order) {
  std::vector<ExactScalar> c(order + 1);
  for (auto& x : c) x = rng.rational(-3, 3, 3);
  while (c[0].is_zero()) c[0] = rng.rational(-3, 3, 3);
  return PowerSeries(c, order);
}

PowerSeries random_delta_series(Rng& rng, std::size_t order) {
  PowerSeries u = random_unit_series(rng, order);
  std::vector<ExactScalar> c(order + 1);
  for (std::size_t i = 1; i <= order; ++i) c[i] = u[i - 1];
  return PowerSeries(c, order);
}

int cmd_sweep(const Config& cfg, const std::string& what, std::size_t count, std::size_t order) {
  Rng rng(cfg.seed);
  json failures = json::array();
  for (std::size_t trial = 0; trial < count; ++trial) {
    if (what == "asw") {
      Row s(4);
      for (auto& x : s) x = rng.uniform(0, 3);
      bool rr = is_real_rooted(generating_poly(s));
      bool tp = is_tp_to_order(toeplitz(s, order), cfg.minor_cap).tp;
      if (rr != tp) failures.push_back(json{{"trial", trial}, {"sequence", to_json(s)}, {"real_rooted", rr}, {"toeplitz_tp", tp}});
    } else if (what == "group-law") {
      ExponentialRiordan a(random_unit_series(rng, order), random_delta_series(rng, order));
      ExponentialRiordan b(random_unit_series(rng, order), random_delta_series(rng, order));
      bool hom = exponential_to_matrix(riordan_mul(a, b)).leading_principal(order) ==
                 exponential_to_matrix(a).leading_principal(order) * exponential_to_matrix(b).leading_principal(order);
      bool inv = exponential_to_matrix(riordan_mul(a, riordan_inverse(a))).leading_principal(order) ==
                 FiniteMatrix::identity(order + 1);
      if (!hom || !inv) failures.push_back(json{{"trial", trial}, {"homomorphism", hom}, {"inverse", inv}});
    } else if (what == "prop52") {
      NRecSpec s;
      for (std::size_t n = 1; n <= order; ++n) {
        s.a.push_back(rng.uniform(0, 5));
        s.b.push_back(rng.uniform(0, 5));
        if (n >= 2) s.c.push_back(rng.uniform(0, 5));
      }
      Prop52Report r = verify_prop52(s, order);
      if (!r.pass()) failures.push_back(json{{"trial", trial}, {"spec", to_json(s)}, {"report", to_json(r)}});
    } else if (what == "bidiagonal") {
      const std::size_t n = order + 1;
      FiniteMatrix l(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) l(i, j) = rng.uniform(0, 2);
      bool fac = bidiagonal_factorization(l).ok;
      bool tp = is_tp_to_order(l, cfg.minor_cap).tp;
      if (fac != tp) failures.push_back(json{{"trial", trial}, {"matrix", to_json(l)}, {"factorization", fac}, {"tp", tp}});
    } else {
      throw Usage("unknown sweep '" + what + "'");
    }
  }
  json rep{{"what", what}, {"seed", cfg.seed}, {"count", count}, {"order", order}, {"pass", failures.empty()},
           {"failures", failures}};
  emit(cfg, dump(rep));
  return failures.empty() ? kOk : kCounterexample;
}

// ---------------------------------------------------------------------------
// list / crosscheck
// ---------------------------------------------------------------------------

int cmd_list(const Config& cfg) {
  std::ostringstream os;
  for (const auto& e : catalog_entries()) {
    os << e.name << '\t' << to_string(e.route) << "\tshift(" << e.index_shift.first << "," << e.index_shift.second
       << ")\t" << e.notes << '\n';
  }
  emit(cfg, os.str());
  return kOk;
}

int cmd_crosscheck(const Config& cfg, const TriangleArgs& ta, std::size_t rows, const std::string& dir) {
  CrosscheckReport r = crosscheck(ta.canonical(), rows, dir, ta.params(rows, cfg));
  emit(cfg, dump(to_json(r)));
  return r.pass ? kOk : kCounterexample;
}

std::size_t env_truncation() {
  const char* v = std::getenv("TPKIT_ORDER");
  if (!v || !*v) return kDefaultOrder;
  try {
    std::size_t pos = 0;
    long long n = std::stoll(v, &pos);
    if (pos != std::string(v).size() || n < 1) throw std::invalid_argument("range");
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw Usage(std::string("TPKIT_ORDER must be a positive integer, got '") + v + "'");
  }
}

void add_triangle_options(CLI::App* sub, TriangleArgs& ta) {
  sub->add_option("triangle", ta.name, "catalog name, e.g. stirling2 or whitney(2,1)")->required();
  sub->add_option("--m", ta.m, "whitney parameter m");
  sub->add_option("--r", ta.r, "whitney parameter r");
  sub->add_option("--x", ta.x, "bell_iteration sequence, comma separated");
}

int run(int argc, char** argv) {
  Config cfg;
  cfg.truncation = env_truncation();

  CLI::App app{"tpkit: total positivity of combinatorial triangles"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--truncation", cfg.truncation, "power series truncation order (default 16 or $TPKIT_ORDER)")
      ->check(CLI::PositiveNumber);
  app.add_option("--minor-cap", cfg.minor_cap, "largest minor size in TP sweeps (0 = all)");
  app.add_option("--seed", cfg.seed, "seed for randomized sweeps");
  app.add_option("-o,--out", cfg.out, "write output to a file instead of stdout");

  TriangleArgs ta;
  std::size_t rows = 0;
  std::string format = "text";

  auto* list = app.add_subcommand("list", "list catalog triangles");

  auto* gen = app.add_subcommand("gen", "emit rows 0..rows-1 of a triangle");
  add_triangle_options(gen, ta);
  gen->add_option("--rows", rows, "number of rows")->required();
  gen->add_option("--format", format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));

  std::string what;
  std::size_t order = 6;
  auto* check = app.add_subcommand("check", "verify a property on the leading block A_order");
  add_triangle_options(check, ta);
  check->add_option("--what", what, "tp | reversal-tp | roots | thm-main | thm-t | prop52")
      ->required()
      ->check(CLI::IsMember({"tp", "reversal-tp", "roots", "thm-main", "thm-t", "prop52"}));
  check->add_option("--order", order, "leading block index");

  NetworkArgs na;
  auto* network = app.add_subcommand("network", "build the composite network of a triangle");
  network->add_option("triangle", ta.name, "catalog name")->required();
  network->add_option("--x", ta.x, "bell_iteration sequence, comma separated");
  network->add_option("--view", na.view, "A | reversal | toeplitz")->check(CLI::IsMember({"A", "reversal", "toeplitz"}));
  network->add_option("--m", na.m, "order of the composite network");
  auto* n_opt = network->add_option("--n", na.n, "row index of the Toeplitz view");
  auto* r_opt = network->add_option("--r", na.r, "Toeplitz order");
  network->add_option("--emit", na.emit, "dot | json")->check(CLI::IsMember({"dot", "json"}));
  network->add_flag("--verify", na.verify, "compare the path matrix with the algebraic route");
  network->add_flag("--allow-negative", na.allow_negative, "permit negative weights");
  network->add_flag("--prune", na.prune, "emit the pruned equivalent of a Toeplitz view");

  std::string g = "exp", f = "expm1";
  bool ordinary = false, production = false;
  auto* riordan = app.add_subcommand("riordan", "emit a Riordan array from named series");
  riordan->add_option("--g", g, "exp | expm1 | geom | log_geom | lah_f | one | t");
  riordan->add_option("--f", f, "exp | expm1 | geom | log_geom | lah_f | one | t");
  riordan->add_flag("--ordinary", ordinary, "ordinary instead of exponential array");
  riordan->add_flag("--production", production, "emit the left production matrix instead");
  riordan->add_option("--rows", rows, "number of rows")->required();
  riordan->add_option("--format", format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));

  std::string sweep_what;
  std::size_t count = 20, sweep_order = 6;
  auto* sweep = app.add_subcommand("sweep", "seeded randomized property sweep");
  sweep->add_option("--what", sweep_what, "asw | group-law | prop52 | bidiagonal")
      ->required()
      ->check(CLI::IsMember({"asw", "group-law", "prop52", "bidiagonal"}));
  sweep->add_option("--count", count, "number of trials");
  sweep->add_option("--order", sweep_order, "order of each trial");

  std::string fixture_dir = TPKIT_FIXTURE_DIR;
  auto* cross = app.add_subcommand("crosscheck", "compare a triangle with its bundled fixture");
  add_triangle_options(cross, ta);
  cross->add_option("--rows", rows, "number of rows")->required();
  cross->add_option("--fixtures", fixture_dir, "fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  na.n_set = n_opt->count() > 0;
  na.r_set = r_opt->count() > 0;

  if (list->parsed()) return cmd_list(cfg);
  if (gen->parsed()) return cmd_gen(cfg, ta, rows, format);
  if (check->parsed()) return cmd_check(cfg, ta, what, order);
  if (network->parsed()) return cmd_network(cfg, ta, na);
  if (riordan->parsed()) return cmd_riordan(cfg, g, f, ordinary, rows, format, production);
  if (sweep->parsed()) return cmd_sweep(cfg, sweep_what, count, sweep_order);
  if (cross->parsed()) return cmd_crosscheck(cfg, ta, rows, fixture_dir);
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Usage& e) {
    std::cerr << "tpkit: " << e.what() << "\n";
    return kUsage;
  } catch (const error& e) {
    std::cerr << "tpkit: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "tpkit: " << e.what() << "\n";
    return kUsage;
  }
}
