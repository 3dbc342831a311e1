// algrowth: batch front end for growth tables, loop-space models, A-infinity
// checks, filtered growth profiles, lemma verification and bound reports.
//
// Exit codes: 0 ok, 1 verification failed, 2 parse error, 3 validation
// error, 4 unsupported input, 5 resource limit.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "algrowth/bounds.hpp"
#include "algrowth/fpcat.hpp"
#include "algrowth/io.hpp"
#include "algrowth/loopmodels.hpp"
#include "algrowth/parallel.hpp"
#include "algrowth/random.hpp"
#include "algrowth/suites.hpp"
#include "algrowth/twisted.hpp"

using namespace algrowth;

namespace {

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(what + ": not an integer list: \"" + text + "\"");
    }
  }
  if (out.empty()) throw ValidationError(what + ": empty list");
  return out;
}

/// "lo:hi", "lo:hi:step" or "x1,x2,...", all exact rationals.
std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  if (text.find(':') != std::string::npos) {
    std::vector<Rational> parts;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ':')) parts.push_back(parse_rational(item));
    if (parts.size() < 2 || parts.size() > 3) throw ValidationError("grid: expected lo:hi or lo:hi:step");
    const Rational step = parts.size() == 3 ? parts[2] : Rational(1);
    if (step <= 0) throw ValidationError("grid: step must be positive");
    if (parts[1] < parts[0]) throw ValidationError("grid: hi < lo");
    for (Rational x = parts[0]; x <= parts[1]; x += step) out.push_back(x);
  } else {
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) out.push_back(parse_rational(item));
    for (std::size_t i = 1; i < out.size(); ++i)
      if (out[i] <= out[i - 1]) throw ValidationError("grid: values must increase");
  }
  if (out.empty()) throw ValidationError("grid: empty");
  return out;
}

std::pair<int, int> parse_window(const std::string& text, int n_max) {
  if (text.empty()) return {1, n_max};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("window: expected A:B");
  try {
    const int a = std::stoi(text.substr(0, colon)), b = std::stoi(text.substr(colon + 1));
    if (a < 1 || b > n_max || a >= b) throw ValidationError("window: need 1 <= A < B <= n-max");
    return {a, b};
  } catch (const std::invalid_argument&) {
    throw ValidationError("window: expected A:B");
  }
}

int object_index(const AInfOps& ops, const std::string& name) {
  for (int o = 0; o < ops.object_count(); ++o)
    if (ops.object_name(o) == name) return o;
  throw ValidationError("unknown object \"" + name + "\"");
}

constexpr std::size_t kMaxListed = 20;

template <class T, class F>
void print_capped(std::ostream& os, const std::vector<T>& items, F&& line) {
  for (std::size_t k = 0; k < items.size() && k < kMaxListed; ++k) os << line(items[k]) << "\n";
  if (items.size() > kMaxListed) os << "... " << items.size() - kMaxListed << " more\n";
}

class Output {
 public:
  std::ostringstream text;
  void flush(const std::string& path) const {
    if (path.empty()) {
      std::cout << text.str();
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + path);
    f << text.str();
  }
};

GrowthTable growth_from_files(const std::string& presentation, const std::string& sigma_path, int n_max,
                              const std::string& at_object, int slack) {
  FpCategory cat(io::presentation_from_json(io::read_json_file(presentation)));
  const SigmaSpec sigma = io::sigma_from_json(io::read_json_file(sigma_path));
  GrowthOptions opts;
  opts.slack = slack;
  return at_object.empty() ? word_growth(cat, sigma, n_max, opts) : word_growth_at_object(cat, sigma, at_object, n_max, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact growth invariants of linear and A-infinity categories"};
  app.require_subcommand(1);
  std::string output_path;
  std::size_t threads = 0;
  app.add_option("-o,--output", output_path, "Write results to this file instead of standard output");
  app.add_option("--threads", threads, "Worker threads (default: ALGROWTH_THREADS or 1)");

  // growth
  auto* growth = app.add_subcommand("growth", "Word growth d_n of a sigma set in a presented category");
  std::string presentation, sigma_file, at_object, window;
  int n_max = 10, slack = 2;
  growth->add_option("--presentation", presentation, "Presentation file (JSON)")->required();
  growth->add_option("--sigma", sigma_file, "Sigma file (JSON)")->required();
  growth->add_option("--n-max", n_max, "Largest word length")->check(CLI::Range(1, 10000));
  growth->add_option("--at-object", at_object, "Count only words from and to this object");
  growth->add_option("--window", window, "Classifier window A:B (default 1:n-max)");
  growth->add_option("--slack", slack, "Extra length for inhomogeneous relations")->check(CLI::Range(0, 100));

  // loop
  auto* loop = app.add_subcommand("loop", "Loop-space models: Hilbert series, Lie dimensions, PBW, group balls");
  loop->require_subcommand(1);
  std::string degrees;
  int loop_n = 10;
  auto* hilbert = loop->add_subcommand("hilbert", "Coefficients of 1/(1 - sum t^d)");
  hilbert->add_option("--degrees", degrees, "Generator degrees, e.g. 1,1")->required();
  hilbert->add_option("--n", loop_n, "Highest degree")->check(CLI::Range(1, 100000));
  auto* witt = loop->add_subcommand("witt", "Graded free Lie algebra dimensions");
  witt->add_option("--degrees", degrees, "Generator degrees")->required();
  witt->add_option("--n", loop_n, "Highest degree")->check(CLI::Range(1, 100000));
  auto* pbw = loop->add_subcommand("pbw-check", "PBW identity at the level of Hilbert series");
  std::uint64_t pbw_seed = 0;
  int pbw_count = 0;
  pbw->add_option("--degrees", degrees, "Generator degrees");
  pbw->add_option("--seed", pbw_seed, "Seed for random degree multisets");
  pbw->add_option("--count", pbw_count, "Number of random multisets (size <= 6, degrees <= 6)")->check(CLI::Range(0, 100000));
  pbw->add_option("--n", loop_n, "Highest degree")->check(CLI::Range(1, 100000));
  auto* ball = loop->add_subcommand("ball", "Word-ball sizes of free and surface groups");
  int genus = 0, free_rank = 0;
  bool non_orientable = false;
  ball->add_option("--surface-genus", genus, "Surface genus");
  ball->add_flag("--non-orientable", non_orientable, "Non-orientable surface (genus >= 3)");
  ball->add_option("--free-rank", free_rank, "Free group rank instead of a surface");
  ball->add_option("--n", loop_n, "Largest radius")->check(CLI::Range(0, 1000));

  // ainf-check
  auto* ainf = app.add_subcommand("ainf-check", "A-infinity relations (and the filtration axiom when levels are given)");
  std::string input;
  int arity = 0;
  ainf->add_option("--input", input, "A-infinity file (JSON)")->required();
  ainf->add_option("--arity", arity, "Largest relation arity (default max(3, max_arity + 1))")->check(CLI::Range(1, 12));

  // tw
  auto* tw_cmd = app.add_subcommand("tw", "Validate twisted complexes and tabulate their hom complexes");
  tw_cmd->add_option("--input", input, "A-infinity file with a \"twisted\" list")->required();
  tw_cmd->add_option("--arity", arity, "Largest relation arity checked on Tw (default 3)")->check(CLI::Range(1, 8));

  // filtered-growth
  auto* fg = app.add_subcommand("filtered-growth", "Persistence profile i_{K,L}(x) over a grid");
  std::string from, to, grid_text = "0:10", threshold_text;
  bool twisted = false;
  fg->add_option("--input", input, "A-infinity file with levels")->required();
  fg->add_option("--from", from, "Source object (or twisted complex with --twisted)")->required();
  fg->add_option("--to", to, "Target object (or twisted complex with --twisted)")->required();
  fg->add_option("--grid", grid_text, "lo:hi[:step] or a comma list (default 0:10)");
  fg->add_flag("--twisted", twisted, "Use the twisted complexes of the file with the induced filtration");
  fg->add_option("--threshold", threshold_text, "Threshold c for --twisted (default: the file's)");

  // verify
  auto* verify = app.add_subcommand("verify", "Machine-check a lemma on seeded, named or file instances");
  std::string lemma, fixture, replay_dir;
  std::uint64_t seed = 1;
  int count = 1, fixture_window = 4, verify_arity = 3;
  verify->add_option("lemma", lemma,
                     "filtration-axiom | lemma-4-6 (growth-to-filtration) | lemma-4-8 (tw-generator-bound) | "
                     "cor-4-9 (tw-action-object) | tw-ainf (tw-relations) | retract (retract-transport)")
      ->required();
  auto* v_input = verify->add_option("--input", input, "Instance or replay file");
  auto* v_fixture = verify->add_option("--fixture", fixture, "Named fixture: surface | free-group | free-algebra");
  verify->add_option("--seed", seed, "First seed");
  verify->add_option("--count", count, "Number of consecutive seeds")->check(CLI::Range(1, 100000));
  verify->add_option("--window", fixture_window, "Window for --fixture")->check(CLI::Range(1, 12));
  verify->add_option("--arity", verify_arity, "Arity bound for --input checks")->check(CLI::Range(2, 8));
  verify->add_option("--replay-dir", replay_dir, "Write failing instances here (default: standard error)");
  v_input->excludes(v_fixture);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Affine-consistency and entropy reports on a growth profile");
  std::string profile_path, from_growth, max_f_text = "1", format = "text";
  int ambient_dim = 0;
  auto* b_profile = bounds->add_option("--profile", profile_path, "Profile file (TSV x<TAB>i, or JSON)");
  auto* b_growth = bounds->add_option("--from-growth", from_growth, "Presentation file; uses --sigma and --n-max");
  bounds->add_option("--sigma", sigma_file, "Sigma file for --from-growth");
  bounds->add_option("--n-max", n_max, "Largest word length for --from-growth")->check(CLI::Range(1, 10000));
  bounds->add_option("--max-f", max_f_text, "Contact-form ratio max f >= 1 (exact rational, default 1)");
  bounds->add_option("--ambient-dim", ambient_dim, "Even ambient dimension")->required();
  bounds->add_option("--format", format, "text | tsv")->check(CLI::IsMember({"text", "tsv"}));
  b_profile->excludes(b_growth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Validation);
  }

  Output out;
  int status = 0;
  try {
    if (threads > 0) set_thread_count(threads);

    if (*growth) {
      const auto table = growth_from_files(presentation, sigma_file, n_max, at_object, slack);
      const auto [a, b] = parse_window(window, n_max);
      for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
      out.text << io::growth_table_tsv(table);
      if (b - a >= 4 || !window.empty())
        out.text << io::classification_line(classify_growth(table, a, b));
      else
        out.text << "# classification: unavailable\twindow shorter than 4 steps\n";
    } else if (*loop) {
      if (*hilbert) {
        const auto series = tensor_hilbert(parse_int_list(degrees, "degrees"), loop_n);
        out.text << "n\tc_n\n";
        for (std::size_t n = 0; n < series.coefficients.size(); ++n) out.text << n << "\t" << series.coefficients[n] << "\n";
        if (loop_n >= 5) {
          out.text << io::classification_line(rational_hyperbolicity(series, 1, loop_n));
        }
      } else if (*witt) {
        const auto table = graded_witt_dims(parse_int_list(degrees, "degrees"), loop_n);
        out.text << "j\tl_j\n";
        for (std::size_t j = 1; j < table.lie_dims.size(); ++j) out.text << j << "\t" << table.lie_dims[j] << "\n";
      } else if (*pbw) {
        std::vector<std::vector<int>> cases;
        if (!degrees.empty()) cases.push_back(parse_int_list(degrees, "degrees"));
        for (int k = 0; k < pbw_count; ++k) {
          Rng rng(Rng::derive(pbw_seed, static_cast<std::uint64_t>(k)));
          std::vector<int> d(static_cast<std::size_t>(rng.uniform(1, 6)));
          for (auto& x : d) x = static_cast<int>(rng.uniform(1, 6));
          cases.push_back(d);
        }
        if (cases.empty()) throw ValidationError("pbw-check needs --degrees or --count");
        out.text << "degrees\tok\tfirst_failure\n";
        for (const auto& d : cases) {
          const auto r = pbw_check(d, loop_n);
          std::string ds;
          for (std::size_t i = 0; i < d.size(); ++i) ds += (i ? "," : "") + std::to_string(d[i]);
          out.text << ds << "\t" << (r.ok ? "true" : "false") << "\t" << r.first_failure << "\n";
          if (!r.ok) status = static_cast<int>(ExitCode::VerificationFailed);
        }
      } else if (*ball) {
        BallTable t;
        if (free_rank > 0) {
          if (genus > 0) throw ValidationError("give either --surface-genus or --free-rank");
          t = free_group_ball(free_rank, loop_n);
        } else {
          if (genus <= 0) throw ValidationError("give --surface-genus or --free-rank");
          t = surface_group_ball(genus, !non_orientable, loop_n);
        }
        out.text << "# group: " << t.group << "\n";
        out.text << "n\tball\tsphere\n";
        for (std::size_t n = 0; n < t.sizes.size(); ++n)
          out.text << n << "\t" << t.sizes[n] << "\t" << (n ? t.sizes[n] - t.sizes[n - 1] : t.sizes[0]) << "\n";
        if (t.sizes.size() >= 6) {
          std::vector<Count> balls(t.sizes.begin() + 1, t.sizes.end());
          out.text << io::classification_line(classify_values(balls, 1, static_cast<int>(balls.size())));
        }
      }
    } else if (*ainf) {
      const auto doc = io::ainf_from_json(io::read_json_file(input));
      const int bound = arity > 0 ? arity : std::max(3, doc.category->max_arity() + 1);
      const auto v = check_ainf(*doc.category, bound);
      print_capped(out.text, v, [&](const auto& x) { return describe(*doc.category, x); });
      out.text << "# A-infinity relations up to arity " << bound << ": "
               << (v.empty() ? "ok" : std::to_string(v.size()) + " failures") << "\n";
      if (!v.empty()) status = static_cast<int>(ExitCode::VerificationFailed);
      if (doc.filtration) {
        const auto fv = check_filtration_axiom(*doc.category, *doc.filtration, bound);
        for (const auto& x : fv) {
          out.text << "filtration: (";
          for (std::size_t k = 0; k < x.inputs.size(); ++k) out.text << (k ? ", " : "") << doc.category->basis(x.inputs[k]).label;
          out.text << ") -> " << doc.category->basis(x.component).label << " excess " << to_string(x.excess) << "\n";
        }
        out.text << "# filtration axiom up to arity " << bound << ": "
                 << (fv.empty() ? "ok" : std::to_string(fv.size()) + " failures") << "\n";
        if (!fv.empty()) status = static_cast<int>(ExitCode::VerificationFailed);
      }
    } else if (*tw_cmd) {
      const auto doc = io::ainf_from_json(io::read_json_file(input));
      if (doc.twisted.empty()) throw ValidationError("the file lists no twisted complexes");
      out.text << "complex\tsummands\tvalid\tmessage\n";
      bool all_valid = true;
      for (const auto& t : doc.twisted) {
        const auto v = validate_twisted_complex(*doc.category, t);
        out.text << t.name << "\t" << t.summands.size() << "\t" << (v.ok ? "true" : "false") << "\t"
                 << (v.ok ? "-" : v.message) << "\n";
        all_valid = all_valid && v.ok;
      }
      if (!all_valid) {
        out.flush(output_path);
        std::cerr << "error: invalid twisted complex\n";
        return static_cast<int>(ExitCode::Validation);
      }
      TwCategory tw(*doc.category, doc.twisted);
      out.text << "source\ttarget\tdim\tcohomology\n";
      for (int p = 0; p < tw.object_count(); ++p)
        for (int q = 0; q < tw.object_count(); ++q) {
          const auto h = hom_complex(tw, p, q);
          out.text << tw.object_name(p) << "\t" << tw.object_name(q) << "\t" << h.dim() << "\t" << cohomology_dim(h) << "\n";
        }
      const int bound = arity > 0 ? arity : 3;
      const auto v = check_ainf(tw, bound);
      print_capped(out.text, v, [&](const auto& x) { return describe(tw, x); });
      out.text << "# Tw relations up to arity " << bound << ": "
               << (v.empty() ? "ok" : std::to_string(v.size()) + " failures") << "\n";
      if (!v.empty()) status = static_cast<int>(ExitCode::VerificationFailed);
    } else if (*fg) {
      const auto doc = io::ainf_from_json(io::read_json_file(input));
      if (!doc.filtration) throw ValidationError("filtered-growth needs a level on every basis vector");
      const auto grid = parse_grid(grid_text);
      FilteredGrowthProfile p;
      if (twisted) {
        if (doc.twisted.empty()) throw ValidationError("the file lists no twisted complexes");
        const Rational c = !threshold_text.empty() ? parse_rational(threshold_text)
                           : doc.threshold         ? *doc.threshold
                                                   : throw ValidationError("--twisted needs a threshold");
        TwCategory tw(*doc.category, doc.twisted);
        const auto phi = tw_filtration(tw, *doc.filtration, c);
        p = filtered_growth_profile(tw, phi, object_index(tw, from), object_index(tw, to), grid);
      } else {
        p = filtered_growth_profile(*doc.category, *doc.filtration, object_index(*doc.category, from),
                                    object_index(*doc.category, to), grid);
      }
      out.text << io::profile_tsv(p);
    } else if (*verify) {
      const LemmaKind kind = parse_lemma(lemma);
      std::vector<SeededCase> cases;
      if (!input.empty()) {
        cases.push_back(run_document(kind, io::read_json_file(input), verify_arity));
      } else if (!fixture.empty()) {
        SeededCase sc;
        sc.report = run_fixture(kind, fixture, fixture_window);
        cases.push_back(std::move(sc));
      } else {
        for (int k = 0; k < count; ++k) cases.push_back(run_seeded(kind, seed + static_cast<std::uint64_t>(k)));
      }
      int passed = 0;
      for (std::size_t k = 0; k < cases.size(); ++k) {
        if (k) out.text << "\n";
        out.text << cases[k].report.to_text();
        if (cases[k].report.pass) {
          ++passed;
          continue;
        }
        status = static_cast<int>(ExitCode::VerificationFailed);
        if (cases[k].replay.is_null()) continue;
        const std::string body = cases[k].replay.dump(2) + "\n";
        if (replay_dir.empty()) {
          std::cerr << "replay (" << cases[k].report.instance << "):\n" << body;
        } else {
          std::filesystem::create_directories(replay_dir);
          const std::string path = replay_dir + "/" + lemma_name(kind) + "-" +
                                   (input.empty() ? "seed" + std::to_string(cases[k].seed) : std::string("input")) + ".json";
          std::ofstream(path, std::ios::binary) << body;
          std::cerr << "replay written to " << path << "\n";
        }
      }
      out.text << "\nsummary: " << passed << "/" << cases.size() << " passed\n";
    } else if (*bounds) {
      FilteredGrowthProfile p;
      if (!profile_path.empty()) {
        p = io::profile_from_text(io::read_text_file(profile_path), profile_path);
        if (p.pair == profile_path) p.pair = std::filesystem::path(profile_path).filename().string();
      } else if (!from_growth.empty()) {
        if (sigma_file.empty()) throw ValidationError("--from-growth needs --sigma");
        const auto table = growth_from_files(from_growth, sigma_file, n_max, "", 2);
        std::vector<Rational> grid;
        for (int n = 1; n <= table.n_max(); ++n) grid.emplace_back(n);
        p = make_profile("growth of " + std::filesystem::path(from_growth).filename().string(), grid, table.dims);
      } else {
        throw ValidationError("bounds needs --profile or --from-growth");
      }
      const Rational max_f = parse_rational(max_f_text);
      const std::vector<BoundReport> reports{affine_consistency(p, ambient_dim), entropy_lower_bound(p, max_f)};
      if (format == "tsv") {
        out.text << bound_reports_tsv(reports);
      } else {
        out.text << reports[0].to_text() << "\n" << reports[1].to_text();
      }
    }
    out.flush(output_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return static_cast<int>(ExitCode::Resource);
  }
  return status;
}
