// Acceptance run: one PASS/FAIL line per criterion with its runtime.
// Usage: acceptance <path to tpkit CLI>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tpkit/bidiagonal.hpp"
#include "tpkit/catalog.hpp"
#include "tpkit/network.hpp"
#include "tpkit/nrec.hpp"
#include "tpkit/production.hpp"
#include "tpkit/riordan.hpp"
#include "tpkit/trimat.hpp"

using namespace tpkit;

namespace {

std::string g_cli;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0 = no runtime bound
  std::function<Outcome()> run;
};

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

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string cell(std::size_t n, std::size_t k) { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; }

// 1
Outcome fixture_reproduction() {
  const std::string eul = "1\n1 1\n1 4 1\n1 11 11 1\n1 26 66 26 1\n";
  const std::string rev = "1\n1 1\n1 3 1\n1 6 7 1\n1 10 25 15 1\n";
  CliResult a = run_cli("gen eulerian --rows 5"), b = run_cli("gen stirling2_reversed --rows 5");
  bool ok = a.code == 0 && b.code == 0 && a.out == eul && b.out == rev;
  return {ok, ok ? "both byte-identical" : "output differs"};
}

// 2
Outcome pascal_production() {
  FiniteMatrix q = left_production(get_triangle("pascal"), 9);
  for (std::size_t i = 0; i <= 9; ++i)
    for (std::size_t j = 0; j <= 9; ++j)
      if (q(i, j) != ExactScalar(j <= i ? 1 : 0)) return {false, "entry " + cell(i, j) + " = " + q(i, j).str()};
  return {true, "Q_9 = J_9"};
}

// 3
Outcome thm_main_suite() {
  const std::vector<std::string> names{"pascal",    "stirling2",   "lah",      "whitney(1,1)", "whitney(2,2)",
                                       "stirling1", "stirling1_B", "delannoy", "derangement_B"};
  std::uint64_t minors = 0;
  for (const auto& name : names) {
    TriMatrix a = get_triangle(name);
    CatalogProduction q = catalog_production(name, a, 6);
    ThmMainReport r = verify_thm_main(q.q, a.leading_principal(6));
    minors += r.minors_checked;
    if (!r.hypothesis_tp) return {false, name + ": Q_6 not certified TP"};
    if (!r.conclusions_hold()) return {false, name + ": conclusion fails"};
  }
  return {true, std::to_string(names.size()) + " triangles, " + std::to_string(minors) + " minors"};
}

// 4
Outcome thm_t_grid() {
  std::size_t pairs = 0;
  for (const char* name : {"pascal", "stirling2", "lah"}) {
    ThmTReport r = verify_thm_T(get_triangle(name), 5, 5);
    pairs += r.pairs_checked;
    if (!r.pass) {
      const auto& m = *r.mismatch;
      return {false, std::string(name) + " n=" + std::to_string(m.n) + " r=" + std::to_string(m.r)};
    }
  }
  return {true, std::to_string(pairs) + " (n,r) pairs"};
}

// 5
Outcome lgv_equivalence() {
  Rng rng(101);
  std::size_t minors = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 4));
    auto weights = [&](bool neg) {
      BinomialWeights w;
      w.m = m;
      w.x.resize(m + 1);
      w.y.resize(m + 1);
      for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t d = 0; d + i <= m; ++d) {
          w.x[i].push_back(neg ? rng.rational(-3, 3, 3) : rng.rational(0, 3, 3));
          w.y[i].push_back(neg ? rng.rational(-3, 3, 3) : rng.rational(0, 3, 3));
        }
      return w;
    };
    PlanarNetwork net = build_binomial_like(weights(trial % 2 == 1));
    if (trial % 3 == 0) net = glue_networks(net, build_binomial_like(weights(false)));
    if (net.edges().size() > kOracleEdgeCap) return {false, "generated network too large"};
    FiniteMatrix p = path_matrix(net);
    for (std::size_t k = 1; k <= 3 && k <= p.rows(); ++k) {
      IndexList rs = detail::first_combination(k);
      do {
        IndexList cs = detail::first_combination(k);
        do {
          ++minors;
          if (lgv_minor_oracle(net, rs, cs) != minor(p, rs, cs)) return {false, "trial " + std::to_string(trial)};
        } while (detail::next_combination(cs, p.cols()));
      } while (detail::next_combination(rs, p.rows()));
    }
  }
  return {true, "20 networks, " + std::to_string(minors) + " minors"};
}

// 6
Outcome triple_reading() {
  TriMatrix a = get_triangle("stirling2");
  PlanarNetwork net = composite_for_A(left_production(a, 5));
  if (path_matrix(net) != a.leading_principal(5)) return {false, "A_5 reading"};
  if (path_matrix(reversal_view(net, 5)) != reversal(a.leading_principal(5))) return {false, "reversal reading"};
  for (std::size_t n = 0; n <= 5; ++n) {
    if (path_matrix(toeplitz_view(net, n, 5 - n)) != toeplitz(a.row(n), 5 - n).transpose()) {
      return {false, "Toeplitz reading n=" + std::to_string(n)};
    }
  }
  return {true, std::to_string(net.edges().size()) + " edges, 8 readings"};
}

// 7
Outcome bidiagonal_both_directions() {
  std::size_t cases = 0, tp_count = 0;
  auto check = [&](const FiniteMatrix& l) {
    ++cases;
    bool tp = is_tp_to_order(l).tp;
    tp_count += tp;
    return bidiagonal_factorization(l).ok == tp;
  };
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t cells = n * (n + 1) / 2;
    std::size_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      FiniteMatrix l(n, n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j, c /= 3) l(i, j) = static_cast<long>(c % 3);
      if (!check(l)) return {false, "size " + std::to_string(n) + " case " + std::to_string(code)};
    }
  }
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteMatrix l(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j <= i; ++j) l(i, j) = rng.uniform(0, 2);
    if (!check(l)) return {false, "random size-6 trial " + std::to_string(trial)};
  }
  return {true, std::to_string(cases) + " matrices, " + std::to_string(tp_count) + " TP"};
}

// 8
Outcome asw_equivalence() {
  std::size_t real_rooted = 0;
  std::vector<std::string> bad;
  std::size_t bad_at_7 = 0;
  for (int code = 0; code < 256; ++code) {
    Row s(4);
    for (int i = 0, c = code; i < 4; ++i, c /= 4) s[static_cast<std::size_t>(i)] = c % 4;
    bool rr = is_real_rooted(generating_poly(s));
    real_rooted += rr;
    if (rr != is_tp_to_order(toeplitz(s, 6)).tp) {
      std::string t = "(";
      for (std::size_t i = 0; i < 4; ++i) t += (i ? "," : "") + s[i].str();
      bad.push_back(t + ")");
      bad_at_7 += rr != is_tp_to_order(toeplitz(s, 7)).tp;
    }
  }
  if (bad.empty()) return {true, "256 sequences, " + std::to_string(real_rooted) + " real-rooted"};
  std::string detail = std::to_string(bad.size()) + " sequences not real-rooted yet Toeplitz TP at order 6:";
  for (const auto& b : bad) detail += " " + b;
  return {false, detail + "; " + std::to_string(bad_at_7) + " remain at order 7"};
}

// 9
Outcome whitney_production() {
  std::vector<std::string> bad;
  for (long m : {0L, 1L, 2L}) {
    FiniteMatrix claimed = whitney_left_production(m, 6);
    if (!satisfies_whitney_production_recurrence(claimed, m)) bad.push_back("recurrence m=" + std::to_string(m));
    for (long r : {0L, 1L, 2L, 5L}) {
      FiniteMatrix actual = left_production(whitney_matrix(m, r), 6);
      if (actual != claimed) {
        bad.push_back("(m=" + std::to_string(m) + ",r=" + std::to_string(r) + ") Q(0,0..)=" + actual(1, 0).str() +
                      " at (1,0) vs " + claimed(1, 0).str());
      }
    }
  }
  if (bad.empty()) return {true, "12 (m,r) pairs"};
  std::string detail = std::to_string(bad.size()) + " of 12 pairs differ, only r=1 matches;";
  for (std::size_t i = 0; i < bad.size() && i < 3; ++i) detail += " " + bad[i];
  return {false, detail + " ..."};
}

// 10
Outcome prop52() {
  for (const auto& name : nrec_preset_names()) {
    if (!verify_prop52(nrec_preset(name, 7), 7).pass()) return {false, name};
  }
  Rng rng(52);
  for (int trial = 0; trial < 25; ++trial) {
    NRecSpec s;
    for (std::size_t n = 1; n <= 7; ++n) {
      s.a.push_back(rng.uniform(0, 5));
      s.b.push_back(rng.uniform(0, 5));
      if (n >= 2) s.c.push_back(rng.uniform(0, 5));
    }
    if (!verify_prop52(s, 7).pass()) return {false, "random spec " + std::to_string(trial)};
  }
  return {true, "6 presets + 25 random specs"};
}

// 11
Outcome group_law() {
  constexpr std::size_t kRows = 8;
  Rng rng(11);
  auto unit = [&] {
    std::vector<ExactScalar> c(kRows + 1);
    for (auto& x : c) x = rng.rational(-3, 3, 3);
    while (c[0].is_zero()) c[0] = rng.rational(-3, 3, 3);
    return PowerSeries(c, kRows);
  };
  auto delta = [&] {
    PowerSeries u = unit();
    std::vector<ExactScalar> c(kRows + 1);
    for (std::size_t i = 1; i <= kRows; ++i) c[i] = u[i - 1];
    return PowerSeries(c, kRows);
  };
  for (int trial = 0; trial < 30; ++trial) {
    ExponentialRiordan a(unit(), delta()), b(unit(), delta());
    FiniteMatrix ma = exponential_to_matrix(a).leading_principal(kRows);
    if (exponential_to_matrix(riordan_mul(a, b)).leading_principal(kRows) !=
        ma * exponential_to_matrix(b).leading_principal(kRows)) {
      return {false, "homomorphism, trial " + std::to_string(trial)};
    }
    if (ma * exponential_to_matrix(riordan_inverse(a)).leading_principal(kRows) != FiniteMatrix::identity(kRows + 1)) {
      return {false, "inverse, trial " + std::to_string(trial)};
    }
  }
  return {true, "30 pairs through row 8"};
}

// 12
Outcome eulerian_exploration() {
  TPCertificate c = is_tp_to_order(get_triangle("eulerian").leading_principal(5));
  if (!c.tp) return {false, "leading 6x6 block has a negative minor"};
  CliResult r = run_cli("check eulerian --what thm-main --order 5");
  if (r.code != 3) return {false, "check exited " + std::to_string(r.code) + ", expected 3"};
  return {true, "A_5 TP (" + std::to_string(c.minors_checked) + " minors); thm-main exit 3"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <tpkit CLI path>\n";
    return 2;
  }
  g_cli = argv[1];
  const std::vector<Criterion> criteria{
      {1, "fixture reproduction", 1.0, fixture_reproduction},
      {2, "Pascal production matrix", 1.0, pascal_production},
      {3, "production TP implies TP, reversal TP, real roots", 60.0, thm_main_suite},
      {4, "Toeplitz/production identity grid", 10.0, thm_t_grid},
      {5, "LGV oracle equivalence", 30.0, lgv_equivalence},
      {6, "composite network triple reading", 0.0, triple_reading},
      {7, "bidiagonal factorization iff TP", 0.0, bidiagonal_both_directions},
      {8, "real roots iff Toeplitz TP", 0.0, asw_equivalence},
      {9, "r-Whitney production matrix independent of r", 0.0, whitney_production},
      {10, "n-recursive production identity and reversal", 0.0, prop52},
      {11, "Riordan group law", 0.0, group_law},
      {12, "Eulerian exploration", 0.0, eulerian_exploration},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(c.budget_s) + " s budget";
    }
    failed += !o.pass;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << std::left << std::setw(52) << c.title
         << std::right << std::fixed << std::setprecision(3) << std::setw(8) << secs << " s  " << o.detail;
    std::cout << line.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
