// Acceptance suite: one line per criterion, exit status 0 iff every line is
// PASS. Tolerances and runtime limits are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "algrowth/bounds.hpp"
#include "algrowth/fixtures.hpp"
#include "algrowth/fpcat.hpp"
#include "algrowth/growth.hpp"
#include "algrowth/loopmodels.hpp"
#include "algrowth/parallel.hpp"
#include "algrowth/random.hpp"
#include "algrowth/suites.hpp"
#include "oracles/group_oracle.hpp"

using namespace algrowth;

namespace {

constexpr double kRateTolerance = 0.05;     // classifier rate vs log 2
constexpr double kEntropyTolerance = 0.02;  // entropy bound vs 0.35
constexpr double kEntropyTarget = 0.35;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: no runtime requirement
  std::function<Outcome()> run;
};

MorphismExpr word(const std::string& letter) { return {TermSpec{Rational(1), {letter}, std::nullopt}}; }

Presentation free_algebra_presentation() {
  Presentation p;
  p.objects = {"K"};
  p.generators = {{"x", "K", "K", 0}, {"y", "K", "K", 0}};
  return p;
}

void report_replay(const SeededCase& c) {
  if (!c.replay.is_null()) std::cerr << "replay for seed " << c.seed << ":\n" << c.replay.dump(2) << "\n";
}

bool seeded_all_pass(LemmaKind kind, std::uint64_t first, int count, Outcome& out, int* checked = nullptr) {
  bool ok = true;
  for (int k = 0; k < count; ++k) {
    const auto c = run_seeded(kind, first + static_cast<std::uint64_t>(k));
    if (!c.report.pass) {
      out.fail(c.report.instance);
      report_replay(c);
      ok = false;
    }
    if (checked) ++*checked;
  }
  return ok;
}

// 1
Outcome free_algebra_growth() {
  Outcome out;
  FpCategory cat(free_algebra_presentation());
  const auto table = word_growth(cat, {word("x"), word("y")}, 15);
  for (int n = 1; n <= 15; ++n) {
    const Count want = (Count{1} << (n + 1)) - 2;
    if (table.at(n) != want) out.fail("d_" + std::to_string(n) + " = " + std::to_string(table.at(n)));
  }
  const auto c = classify_growth(table, 1, 15);
  if (c.verdict != Verdict::Exponential) out.fail("verdict " + to_string(c.verdict));
  if (std::abs(c.rate - std::log(2.0)) > kRateTolerance) out.fail("rate " + std::to_string(c.rate));
  if (out.pass) out.detail = "d_n = 2^(n+1)-2 for n <= 15, rate " + std::to_string(c.rate);
  return out;
}

// 2
Outcome surface_balls() {
  Outcome out;
  const auto t = surface_group_ball(2, true, 5);
  const auto brute = oracle::surface_group_ball_closure(2, true, 5);
  for (int n = 0; n <= 5; ++n)
    if (t.sizes[n] != brute[n])
      out.fail("B_" + std::to_string(n) + " = " + std::to_string(t.sizes[n]) + " vs brute " + std::to_string(brute[n]));
  if (t.sizes[1] != 9 || t.sizes[2] != 65) out.fail("B_1, B_2 != 9, 65");
  const std::vector<Count> balls(t.sizes.begin() + 1, t.sizes.end());
  const auto c = classify_values(balls, 1, 5);
  if (c.verdict != Verdict::Exponential) out.fail("verdict " + to_string(c.verdict));
  if (out.pass) out.detail = "B_0..B_5 match brute force, B_5 = " + std::to_string(t.sizes[5]);
  return out;
}

// 3
Outcome pbw_round_trip() {
  Outcome out;
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng(Rng::derive(3, k));
    std::vector<int> d(static_cast<std::size_t>(rng.uniform(1, 6)));
    for (auto& x : d) x = static_cast<int>(rng.uniform(1, 6));
    const auto r = pbw_check(d, 20);
    if (!r.ok) out.fail("multiset " + std::to_string(k) + " fails at degree " + std::to_string(r.first_failure));
  }
  const auto w = graded_witt_dims({1, 1}, 2);
  if (w.lie_dims[1] != 2 || w.lie_dims[2] != 3) out.fail("degrees {1,1}: l_1, l_2 != 2, 3");
  if (out.pass) out.detail = "50 multisets to order 20; l_1 = 2, l_2 = 3";
  return out;
}

// 4
Outcome tw_sign_coherence() {
  Outcome out;
  int n = 0;
  // Odd seeds are dg fixtures (12 of them), even seeds gauge fixtures with mu^3.
  seeded_all_pass(LemmaKind::TwRelations, 1, 24, out, &n);
  if (out.pass) out.detail = std::to_string(n) + " fixtures, pools of 1-4 complexes, arity 3, Cone(id) acyclic";
  return out;
}

// 5
Outcome filtration_axiom() {
  Outcome out;
  for (const auto& [fixture, window] : std::vector<std::pair<std::string, int>>{
           {"surface", 4}, {"free-group", 6}, {"free-algebra", 6}}) {
    const auto r = run_fixture(LemmaKind::FiltrationAxiom, fixture, window);
    if (!r.pass) out.fail(r.instance);
  }
  int n = 0;
  seeded_all_pass(LemmaKind::FiltrationAxiom, 1, 20, out, &n);
  if (out.pass) out.detail = "3 group/free-algebra fixtures, " + std::to_string(n) + " seeded categories with Phi_c";
  return out;
}

// 6
Outcome growth_to_filtration() {
  Outcome out;
  // Free algebra with word-length levels, B = 1: the level-n part of End(K)
  // has 2^(n+1)-1 words (the identity included) against 2^(n+1)-2 words in
  // W(n), so the inequality is tight up to the identity.
  const int n_max = 10;
  const auto fx = free_algebra_fixture(2, n_max + 1);
  const std::vector<Vec> sigma{Vec::unit(*fx.category->find_label("x")), Vec::unit(*fx.category->find_label("y"))};
  const auto r = verify_growth_to_filtration(*fx.category, fx.filtration, sigma, 0, n_max);
  if (!r.pass) out.fail(r.instance);
  for (int n = 1; n <= n_max; ++n) {
    const Count i = persistence_dim(*fx.category, fx.filtration, 0, 0, Rational(n));
    if (i != (Count{1} << (n + 1)) - 1) out.fail("i(" + std::to_string(n) + ") = " + std::to_string(i));
  }
  const auto s = run_fixture(LemmaKind::GrowthToFiltration, "surface", 6);
  if (!s.pass) out.fail(s.instance);
  if (out.pass) out.detail = "free algebra n <= 10 (gap exactly 1), surface group window 6";
  return out;
}

// 7
Outcome tw_generator_bound() {
  Outcome out;
  int n = 0, m_max = 0;
  for (std::uint64_t seed = 7; seed < 37; ++seed) {
    const auto c = run_seeded(LemmaKind::TwGeneratorBound, seed);
    ++n;
    for (const auto& [k, v] : c.report.constants)
      if (k == "m") m_max = std::max(m_max, std::stoi(v));
    if (!c.report.pass) {
      out.fail(c.report.instance);
      report_replay(c);
    }
  }
  if (m_max > 4) out.fail("complex with m = " + std::to_string(m_max));
  if (out.pass) out.detail = std::to_string(n) + " seeded complexes, m <= " + std::to_string(m_max);
  return out;
}

// 8
Outcome retract_transport_equal() {
  Outcome out;
  int n = 0;
  seeded_all_pass(LemmaKind::Retract, 1, 10, out, &n);
  if (out.pass) out.detail = std::to_string(n) + " retract instances, n <= 8";
  return out;
}

// 9
Outcome category_to_object() {
  Outcome out;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Rng rng(Rng::derive(90, seed));
    const int objects = static_cast<int>(rng.uniform(2, 4));
    Presentation p;
    for (int o = 0; o < objects; ++o) p.objects.push_back("O" + std::to_string(o));
    SigmaSpec sigma;
    for (int g = 0; g < objects + 2; ++g) {
      const std::string name = "g" + std::to_string(g);
      p.generators.push_back({name, p.objects[rng.uniform(0, objects - 1)], p.objects[rng.uniform(0, objects - 1)], 0});
      sigma.push_back(word(name));
    }
    FpCategory cat(p);
    const auto check = check_category_to_object(cat, sigma, 8);
    ++checked;
    if (!check.pass) out.fail("seed " + std::to_string(seed));
  }
  if (out.pass) out.detail = std::to_string(checked) + " categories with 2-4 objects, n <= 8";
  return out;
}

FilteredGrowthProfile synthetic(const std::string& name, int n_max, const std::function<Count(int)>& f) {
  std::vector<Rational> grid;
  std::vector<Count> values;
  for (int n = 1; n <= n_max; ++n) {
    grid.emplace_back(n);
    values.push_back(f(n));
  }
  return make_profile(name, grid, values);
}

// 10
Outcome bounds() {
  Outcome out;
  const auto exp07 = synthetic("ceil(e^0.7n)", 40, [](int n) { return static_cast<Count>(std::ceil(std::exp(0.7 * n))); });
  const auto cubic = synthetic("n^3", 40, [](int n) { return static_cast<Count>(n) * n * n; });
  const double entropy = to_double(entropy_lower_bound(exp07, Rational(2)).estimate);
  if (std::abs(entropy - kEntropyTarget) > kEntropyTolerance) out.fail("entropy bound " + std::to_string(entropy));
  if (affine_consistency(cubic, 6).verdict.rfind("consistent", 0) != 0) out.fail("n^3 not affine-consistent");

  FpCategory cat(free_algebra_presentation());
  const auto free_table = word_growth(cat, {word("x"), word("y")}, 15);
  std::vector<FilteredGrowthProfile> suite{
      exp07,
      cubic,
      synthetic("2^n", 40, [](int n) { return Count{1} << n; }),
      synthetic("3^n", 30, [](int n) { Count v = 1; for (int k = 0; k < n; ++k) v *= 3; return v; }),
      synthetic("n^2", 40, [](int n) { return static_cast<Count>(n) * n; }),
      synthetic("n", 40, [](int n) { return static_cast<Count>(n); }),
      synthetic("1", 40, [](int) { return Count{1}; }),
      synthetic("0", 40, [](int) { return Count{0}; }),
      synthetic("free algebra", 15, [&](int n) { return free_table.at(n); }),
  };
  int exponential = 0;
  for (const auto& p : suite) {
    const bool is_exp = classify_profile(p).verdict == Verdict::Exponential;
    const bool affine = affine_consistency(p, 6).verdict.rfind("consistent", 0) == 0;
    exponential += is_exp;
    if (is_exp && affine) out.fail(p.pair + ": exponential and affine-consistent");
  }
  if (exponential < 4) out.fail("only " + std::to_string(exponential) + " profiles classified exponential");
  if (out.pass)
    out.detail = "entropy " + std::to_string(entropy) + ", n^3 consistent, " + std::to_string(exponential) + "/" +
                 std::to_string(suite.size()) + " exponential profiles all inconsistent";
  return out;
}

std::string run_cli(const std::string& args, int& status) {
  const std::string cmd = std::string(ALGROWTH_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  status = pclose(pipe);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// 11
Outcome determinism() {
  Outcome out;
  const std::string d = std::string(ALGROWTH_DATA) + "/";
  const std::vector<std::pair<std::string, std::string>> cases{
      {"growth --presentation " + d + "free_algebra.json --sigma " + d + "free_algebra_sigma.json --n-max 12",
       "growth_free_algebra.tsv"},
      {"growth --presentation " + d + "commutative.json --sigma " + d + "commutative_sigma.json --n-max 10",
       "growth_commutative.tsv"},
      {"growth --presentation " + d + "quiver.json --sigma " + d + "quiver_sigma.json --n-max 10 --at-object A",
       "growth_quiver_at_A.tsv"},
      {"loop hilbert --degrees 1,1 --n 10", "loop_hilbert_11.tsv"},
      {"loop witt --degrees 1,1 --n 6", "loop_witt_11.tsv"},
      {"loop ball --surface-genus 2 --n 5", "loop_ball_genus2.tsv"},
      {"ainf-check --input " + d + "dg_idempotent.json", "ainf_check_ok.txt"},
      {"ainf-check --input " + d + "dg_idempotent_sign_corrupted.json", "ainf_check_sign_corrupted.txt"},
      {"tw --input " + d + "dg_idempotent.json", "tw_dg_idempotent.txt"},
      {"filtered-growth --input " + d + "dg_idempotent.json --twisted --from cone_b --to cone_b --grid 0:4",
       "filtered_growth_cone_b.tsv"},
      {"verify lemma-4-8 --seed 7 --count 30", "verify_tw_generator_bound_7x30.txt"},
      {"bounds --profile " + d + "exp07_profile.tsv --max-f 2 --ambient-dim 6 --format tsv", "bounds_exp07.tsv"},
      {"bounds --profile " + d + "cubic_profile.tsv --ambient-dim 6", "bounds_cubic.txt"},
  };
  for (const auto& [args, golden] : cases) {
    const std::string want = read_file(std::string(ALGROWTH_GOLDEN) + "/" + golden);
    if (want.empty()) {
      out.fail("missing golden " + golden);
      continue;
    }
    for (const char* threads : {"1", "1", "4"}) {
      int status = 0;
      const std::string got = run_cli(std::string("--threads ") + threads + " " + args, status);
      if (got != want) out.fail(golden + " differs with --threads " + threads);
    }
  }
  if (out.pass) out.detail = std::to_string(cases.size()) + " goldens, byte-identical over two runs and --threads 1/4";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "free-algebra growth", 5, free_algebra_growth},
      {2, "surface-group balls", 30, surface_balls},
      {3, "PBW round trip", 5, pbw_round_trip},
      {4, "Tw sign coherence", 60, tw_sign_coherence},
      {5, "filtration axiom and Phi_c", 60, filtration_axiom},
      {6, "growth to filtration", 0, growth_to_filtration},
      {7, "Tw generator bound", 0, tw_generator_bound},
      {8, "retract transport", 0, retract_transport_equal},
      {9, "category-to-object bound", 0, category_to_object},
      {10, "bounds", 1, bounds},
      {11, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) o.fail("runtime over " + std::to_string(c.limit_seconds) + " s");
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << "  [" << timing << "]  " << o.detail
              << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all 11 criteria passed")) << "\n";
  return failed ? 1 : 0;
}
