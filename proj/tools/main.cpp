// kpol: generate, solve, verify and benchmark algebraic degeneracy-testing
// instances. See README.md for the file formats and solver names.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kpol/adt.hpp"
#include "kpol/baselines.hpp"
#include "kpol/errors.hpp"
#include "kpol/fitting.hpp"
#include "kpol/instance.hpp"
#include "kpol/kpol_solver.hpp"

namespace {

using namespace kpol;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitUnknownSolver = 3;

struct SolverOptions {
  long g = 0;
  std::string mode = "fredman";
  int r = 8;
  int n0 = 64;
};

AdtConfig adt_config(const SolverOptions& opt) {
  AdtConfig cfg;
  cfg.g = opt.g;
  if (opt.mode == "direct")
    cfg.mode = AdtConfig::Mode::Direct;
  else if (opt.mode == "fredman")
    cfg.mode = AdtConfig::Mode::Fredman;
  else
    throw ParseError("mode must be 'direct' or 'fredman'");
  cfg.engine.r = opt.r;
  cfg.engine.n0 = opt.n0;
  return cfg;
}

SolveResult run_solver(const std::string& solver, const KPolInstance& inst,
                       const SolverOptions& opt) {
  if (solver == "brute") return brute_force(inst);
  if (solver == "naive") return naive_solve(inst);
  if (solver == "mitm") return mitm_ksum(inst);
  if (solver == "kpol") {
    EngineConfig cfg;
    cfg.r = opt.r;
    cfg.n0 = opt.n0;
    return kpol_solve(inst, cfg);
  }
  if (solver == "adt4") return solve_4pol(inst, adt_config(opt));
  if (solver == "adt5") return solve_5pol(inst, adt_config(opt));
  throw UnknownSolver(solver);
}

KPolInstance make_instance(const std::string& family, int k, int n, std::uint64_t seed) {
  if (family == "figure1") {
    // the worked affine-reduction example: three plane curves with a planted
    // collinear triple at t = (5, 0, 20/3)
    auto fam = figure_curves();
    Rng rng(seed);
    std::vector<std::vector<Rat>> sets(3);
    sets[0].push_back(Rat(5));
    sets[1].push_back(Rat(0));
    sets[2].push_back(parse_rat("20/3"));
    for (int i = 0; i < 3; ++i)
      while (static_cast<int>(sets[i].size()) < n) sets[i].emplace_back(rng.int_in(-8, 8));
    auto inst = affine_reduce(fam, sets);
    inst.seed = seed;
    inst.family = "figure1";
    return inst;
  }
  return make_family_instance(family, k, n, seed, -2 * std::max(4L, static_cast<long>(n)),
                              2 * std::max(4L, static_cast<long>(n)));
}

std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::stol(cur));
  return out;
}

std::vector<std::string> parse_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void print_result(const std::string& solver, const SolveResult& res) {
  std::cout << "solver: " << solver << "\n";
  std::cout << "decision: " << (res.yes ? "YES" : "NO") << "\n";
  if (res.witness) std::cout << "witness: " << rat_vec_to_string(res.witness->tuple) << "\n";
  std::cout << "sign_tests: " << res.counters.sign_tests << "\n";
  std::cout << "lookups: " << res.counters.lookups << "\n";
  std::cout << "ram_ops: " << res.counters.ram_ops << "\n";
  for (const auto& [key, value] : res.aux) std::cout << "aux." << key << ": " << value << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic degeneracy testing at desk scale"};
  app.require_subcommand(1);

  int k = 3, n = 8, r = 8, n0 = 64, trials = 10;
  std::uint64_t seed = 1;
  long g = 0;
  std::string family = "random", solver = "kpol", mode = "fredman";
  std::string out_path, in_path, n_list = "8,16,32", solvers = "brute,naive";
  std::string svg_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--k", k, "number of sets");
    cmd->add_option("--n", n, "values per set");
    cmd->add_option("--seed", seed, "generator seed");
    cmd->add_option("--family", family,
                    "instance family: random|planted|ksum|hyper|circle|circle5|figure1");
  };
  auto add_solver_opts = [&](CLI::App* cmd) {
    cmd->add_option("--solver", solver, "brute|naive|mitm|kpol|adt4|adt5");
    cmd->add_option("--g", g, "ADT block size (0 = balanced default)");
    cmd->add_option("--mode", mode, "ADT predicate mode: direct|fredman");
    cmd->add_option("--r", r, "engine branching parameter");
    cmd->add_option("--n0", n0, "engine brute-force threshold");
  };

  auto* cmd_gen = app.add_subcommand("gen", "generate an instance file");
  add_common(cmd_gen);
  cmd_gen->add_option("--out", out_path, "output path (default stdout)");

  auto* cmd_solve = app.add_subcommand("solve", "run one solver on an instance");
  add_common(cmd_solve);
  add_solver_opts(cmd_solve);
  cmd_solve->add_option("--in", in_path, "instance file (otherwise generated from flags)");

  auto* cmd_verify = app.add_subcommand("verify", "compare a solver against brute force");
  add_common(cmd_verify);
  add_solver_opts(cmd_verify);
  cmd_verify->add_option("--trials", trials, "number of seeded instances");

  auto* cmd_bench = app.add_subcommand("bench", "counter benchmark, CSV output");
  add_common(cmd_bench);
  add_solver_opts(cmd_bench);
  cmd_bench->add_option("--solvers", solvers, "comma-separated solver list");
  cmd_bench->add_option("--n-list", n_list, "comma-separated instance sizes");
  cmd_bench->add_option("--trials", trials, "instances per size");
  cmd_bench->add_option("--out", out_path, "CSV path (default stdout)");
  cmd_bench->add_option("--svg", svg_path, "write a log-log scaling plot");

  app.add_subcommand("exponents", "print the theoretical exponent table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParseError;
  }

  try {
    if (cmd_gen->parsed()) {
      auto inst = make_instance(family, k, n, seed);
      if (out_path.empty())
        std::cout << instance_to_json(inst);
      else
        save_instance(inst, out_path);
      return kExitOk;
    }

    if (cmd_solve->parsed()) {
      SolverOptions opt{g, mode, r, n0};
      KPolInstance inst =
          in_path.empty() ? make_instance(family, k, n, seed) : load_instance(in_path);
      auto res = run_solver(solver, inst, opt);
      print_result(solver, res);
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      SolverOptions opt{g, mode, r, n0};
      bool all_ok = true;
      for (int t = 0; t < trials; ++t) {
        auto inst = make_instance(family, k, n, seed + t);
        auto got = run_solver(solver, inst, opt);
        auto expect = brute_force(inst);
        bool ok = got.yes == expect.yes && (!got.witness || inst.is_witness(*got.witness));
        if (!ok) {
          std::cout << "MISMATCH seed=" << seed + t << " solver=" << (got.yes ? "YES" : "NO")
                    << " brute=" << (expect.yes ? "YES" : "NO") << "\n";
          all_ok = false;
        }
      }
      std::cout << (all_ok ? "verify: OK" : "verify: FAILED") << " (" << trials << " instances)"
                << "\n";
      return all_ok ? kExitOk : kExitVerifyFailed;
    }

    if (cmd_bench->parsed()) {
      SolverOptions opt{g, mode, r, n0};
      std::ostringstream csv;
      csv << kBenchCsvHeader << "\n";
      std::vector<SvgSeries> series;
      for (const auto& sv : parse_names(solvers)) {
        SvgSeries sr;
        sr.label = sv;
        for (long nn : parse_list(n_list)) {
          double mean_tests = 0;
          for (int t = 0; t < trials; ++t) {
            auto inst = make_instance(family, k, static_cast<int>(nn), seed + t);
            auto start = std::chrono::steady_clock::now();
            auto res = run_solver(sv, inst, opt);
            auto stop = std::chrono::steady_clock::now();
            BenchRow row;
            row.n = nn;
            row.k = k;
            row.solver = sv;
            row.family = family;
            row.seed = seed + t;
            row.decision = res.yes;
            row.sign_tests = res.counters.sign_tests;
            row.lookups = res.counters.lookups;
            row.ram_ops = res.counters.ram_ops;
            row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            csv << bench_row_to_csv(row) << "\n";
            mean_tests += static_cast<double>(res.counters.sign_tests);
          }
          sr.points.emplace_back(static_cast<double>(nn), std::max(1.0, mean_tests / trials));
        }
        if (sr.points.size() >= 2)
          std::cout << "# " << sv << " fitted exponent: " << fit_exponent(sr.points) << "\n";
        series.push_back(std::move(sr));
      }
      if (out_path.empty())
        std::cout << csv.str();
      else {
        std::ofstream f(out_path);
        f << csv.str();
      }
      if (!svg_path.empty()) {
        std::ofstream f(svg_path);
        f << render_loglog_svg(series, "sign tests vs n (" + family + ")");
      }
      return kExitOk;
    }

    // exponents
    std::cout << "k-POL real-RAM main-term exponents (k - 2 + (k-2)/(st-1)):\n";
    for (int kk = 4; kk <= 12; ++kk) {
      Rat e = kpol_exponent(kk);
      std::cout << "  k=" << kk << "  " << rat_to_string(e) << "  ~" << e.get_d() << "\n";
    }
    std::cout << "incidence engine exponents (exp_M, exp_N):\n";
    for (auto [t, s] : {std::pair{2, 2}, {2, 3}, {3, 3}, {3, 6}}) {
      auto [em, en] = main_term_exponents(t, s);
      std::cout << "  t=" << t << " s=" << s << "  (" << rat_to_string(em) << ", "
                << rat_to_string(en) << ")\n";
    }
    std::cout << "decision-tree block sizes: g = n^" << rat_to_string(balance_block_size(4))
              << " (k=4), n^" << rat_to_string(balance_block_size(5)) << " (k=5)\n";
    std::cout << "decision-tree totals: "
              << rat_to_string(Rat(3) - balance_block_size(4)) << " (k=4), "
              << rat_to_string(Rat(4) - 2 * balance_block_size(5)) << " (k=5)\n";
    return kExitOk;
  } catch (const UnknownSolver& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknownSolver;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  }
}
