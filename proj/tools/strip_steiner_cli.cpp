// Command-line front end: generate | solve | check | render | stats | bench.
//
// Exit codes: 0 success, 2 parse/usage error, 3 infeasible, 4 verification
// mismatch, 5 resource limit.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "strip_steiner/errors.hpp"
#include "strip_steiner/json_io.hpp"
#include "strip_steiner/oracle.hpp"
#include "strip_steiner/random_model.hpp"
#include "strip_steiner/sparse_dp.hpp"
#include "strip_steiner/svg.hpp"
#include "strip_steiner/walls.hpp"

using namespace strip_steiner;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerify = 4;
constexpr int kExitResource = 5;

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::size_t worker_count() {
  if (const char* env = std::getenv("STRIP_STEINER_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct SolveOutcome {
  SteinerSolution solution;
  json report;
};

SolveOutcome dispatch_solve(const InstanceFile& inst, std::string algorithm,
                            const std::string& cap_arg, std::int64_t delta_threshold,
                            std::size_t dw_limit) {
  const PointSet& ps = inst.points;
  if (algorithm == "auto") {
    if (inst.generator) {
      algorithm = "fpt";
    } else if (ps.sparseness_k) {
      algorithm = "sparse-dp";
    } else if (ps.size() <= dw_limit) {
      algorithm = "oracle";
    } else {
      throw TooManyTerminals("auto: no applicable algorithm for " +
                             std::to_string(ps.size()) + " points");
    }
  }

  SolveOutcome out;
  if (algorithm == "oracle") {
    out.solution = oracle_solve(ps, dw_limit);
    out.report["algorithm"] = "oracle";
  } else if (algorithm == "brute") {
    out.solution = brute_solve(ps);
    out.report["algorithm"] = "brute";
  } else if (algorithm == "sparse-dp") {
    std::optional<std::size_t> cap;
    if (cap_arg.empty() || cap_arg == "auto") {
      cap = std::nullopt;
    } else {
      cap = static_cast<std::size_t>(std::stoull(cap_arg));
    }
    const SparseResult res = solve_sparse(ps, cap);
    out.solution = res.solution;
    out.report["algorithm"] = "sparse-dp";
    out.report["cap_used"] = res.report.cap_used;
    out.report["cap_was_auto"] = res.report.cap_was_auto;
    out.report["cap_saturated"] = res.report.cap_saturated;
    out.report["stages"] = res.report.stages;
    out.report["max_patterns_per_stage"] = res.report.max_patterns_per_stage;
    out.report["tonicity_profile"] = res.report.tonicity_profile;
  } else if (algorithm == "fpt") {
    FptConfig cfg;
    cfg.delta_threshold = delta_threshold;
    cfg.dw_terminal_limit = dw_limit;
    if (!cap_arg.empty() && cap_arg != "auto") {
      cfg.soft_cap = static_cast<std::size_t>(std::stoull(cap_arg));
    }
    const FptResult res = compute_mrst(ps, cfg);
    out.solution = res.solution;
    out.report["algorithm"] = "fpt";
    out.report["used_dp"] = res.report.used_dp;
    out.report["hard_walls"] = res.report.walls.stride_detected;
    out.report["soft_walls_per_interval"] = res.report.walls.soft_per_interval;
    out.report["interval_sizes"] = res.report.interval_sizes;
    out.report["stage_sizes"] = res.report.stage_sizes;
  } else {
    throw std::invalid_argument("unknown algorithm: " + algorithm);
  }
  out.report["length_units"] = out.solution.length;
  return out;
}

// Returns an error message when verification fails.
std::optional<std::string> verify_solution(const PointSet& ps,
                                           const SteinerSolution& sol,
                                           std::size_t dw_limit) {
  const HananGrid grid = build_hanan_grid(ps);
  RectTree tree;
  try {
    tree = tree_from_segments(grid, sol.segments);
  } catch (const GridMismatch& e) {
    return std::string("tree off grid: ") + e.what();
  }
  if (tree_length(tree) != sol.length) return "length does not match edge sum";
  const auto report = validate_steiner_tree(tree, ps);
  if (!report.valid()) return "not a valid Steiner tree";
  const auto prof = tonicity(tree, ps);
  if (prof.max > static_cast<int>(ps.size())) return "tonicity exceeds n";
  if (!check_wide_separator_monotonicity(tree, ps)) {
    return "wide separator crossed more than once";
  }
  if (!check_parallel_edge_bound(tree, ps)) return "parallel edge bound violated";
  if (ps.size() <= dw_limit) {
    const auto oracle = oracle_solve(ps, dw_limit);
    if (oracle.length != sol.length) {
      return "oracle mismatch: got " + std::to_string(sol.length) + ", optimal " +
             std::to_string(oracle.length);
    }
  }
  return std::nullopt;
}

int cmd_generate(const std::string& out_path, std::size_t n, double delta,
                 std::uint64_t seed, std::int64_t scale, const std::string& hooks,
                 const std::string& probes) {
  InstanceFile inst;
  GeneratorMetadata meta;
  if (!hooks.empty()) {
    HookSpec spec;
    const auto xpos = hooks.find('x');
    if (xpos == std::string::npos) {
      std::cerr << "--hooks must look like MxH (e.g. 2x3)\n";
      return kExitParse;
    }
    spec.num_hooks = std::stoull(hooks.substr(0, xpos));
    spec.points_per_hook = std::stoull(hooks.substr(xpos + 1));
    spec.delta = delta;
    spec.scale = scale;
    std::stringstream ss(probes);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) spec.probe_choices.push_back(std::stoull(tok));
    }
    inst.points = generate_hooks(spec);
    meta.kind = "hooks";
    meta.seed = 0;
    meta.params = "hooks=" + hooks + ";probes=" + probes;
  } else {
    GenSpec spec{n, delta, seed, scale};
    inst.points = generate_random_instance(spec);
    meta.kind = "random";
    meta.seed = seed;
    meta.params = "n=" + std::to_string(n) + ";delta=" + std::to_string(delta) +
                  ";scale=" + std::to_string(scale);
  }
  inst.generator = meta;
  const std::string text = instance_to_json(inst);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file_atomic(out_path, text);
  }
  return kExitOk;
}

int cmd_stats(double delta, std::size_t windows, std::uint64_t seed,
              std::int64_t scale, bool soft, std::size_t solve_sample,
              std::size_t sample_n, const std::string& out_path) {
  json j;
  j["delta"] = delta;
  j["windows"] = windows;
  if (windows > 0 && !soft) {
    GenSpec spec{5 * windows + 5, delta, seed, scale};
    const PointSet ps = generate_random_instance(spec);
    std::size_t hits = 0, candidates = 0;
    for (std::size_t jj = 0; 5 * jj + 4 < ps.size() && jj < windows; ++jj) {
      ++candidates;
      if (is_hard_wall(ps, 5 * jj)) ++hits;
    }
    const double rate = candidates ? static_cast<double>(hits) / candidates : 0.0;
    const double expected = std::exp(-4.0 * delta) / 6.0;
    j["kind"] = "hard_wall_rate";
    j["candidates"] = candidates;
    j["hits"] = hits;
    j["rate"] = rate;
    j["expected"] = expected;
    j["binomial_se"] = candidates ? std::sqrt(rate * (1 - rate) / candidates) : 0.0;
  } else if (windows > 0) {
    const Unit q = ceil_sqrt_delta(static_cast<Unit>(std::llround(delta * scale)), scale);
    GenSpec spec{static_cast<std::size_t>(q) * (windows + 1) + 1, delta, seed, scale};
    const PointSet ps = generate_random_instance_spacing_capped(spec);
    std::size_t hits = 0, candidates = 0;
    for (std::size_t r = 0; r + q <= ps.size() - 1 && candidates < windows;
         r += static_cast<std::size_t>(q)) {
      ++candidates;
      if (is_soft_wall(ps, r)) ++hits;
    }
    const double rate = candidates ? static_cast<double>(hits) / candidates : 0.0;
    j["kind"] = "soft_wall_rate";
    j["candidates"] = candidates;
    j["hits"] = hits;
    j["rate"] = rate;
    j["lower_bound"] = 1.0 - std::pow(2.0, 3.0 - static_cast<double>(q) / 2.0);
    j["binomial_se"] = candidates ? std::sqrt(rate * (1 - rate) / candidates) : 0.0;
  } else {
    j["kind"] = "empty";
  }

  if (solve_sample > 0) {
    // Tonicity profiles of exactly solved random instances, fanned out over
    // workers.
    const std::size_t workers = std::min(worker_count(), solve_sample);
    std::vector<int> max_tonicity(solve_sample, 0);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < solve_sample;
             i = next.fetch_add(1)) {
          GenSpec spec{sample_n, delta, seed + 1000 + i, scale};
          const PointSet ps = generate_random_instance(spec);
          const auto sol = oracle_solve(ps);
          const HananGrid grid = build_hanan_grid(ps);
          const RectTree tree = tree_from_segments(grid, sol.segments);
          max_tonicity[i] = tonicity(tree, ps).max;
        }
      });
    }
    for (auto& th : pool) th.join();
    j["solved_sample"] = {{"count", solve_sample},
                          {"n", sample_n},
                          {"max_tonicity", max_tonicity}};
  }

  const std::string text = j.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file_atomic(out_path, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact minimum rectilinear Steiner trees in a narrow strip"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random or hook instance");
  std::size_t gen_n = 10;
  double gen_delta = 1.0;
  std::uint64_t gen_seed = 0;
  std::int64_t gen_scale = kDefaultScale;
  std::string gen_out, gen_hooks, gen_probes;
  gen->add_option("--n", gen_n, "number of points");
  gen->add_option("--delta", gen_delta, "strip height")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("--scale", gen_scale, "fixed-point scale")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "output instance file ('-' for stdout)");
  gen->add_option("--hooks", gen_hooks, "hook gadget MxH (e.g. 2x3)");
  gen->add_option("--probes", gen_probes, "comma-separated probe choices, one per hook");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance exactly");
  std::string solve_in, solve_algo = "auto", solve_cap, solve_tree_out, solve_report_out;
  std::int64_t solve_threshold = 100;
  std::size_t solve_dw_limit = 16;
  bool solve_verify = false, solve_time = false, solve_escalate = false;
  solve->add_option("--input", solve_in, "instance file")->required();
  solve->add_option("--algorithm", solve_algo,
                    "auto|sparse-dp|fpt|oracle|brute");
  solve->add_option("--cap", solve_cap, "crossing cap for sparse-dp/fpt ('auto')");
  solve->add_flag("--escalate", solve_escalate,
                  "heuristic: double the cap until the length stabilises twice");
  solve->add_option("--delta-threshold", solve_threshold,
                    "fpt: oracle below, soft-wall DP at or above");
  solve->add_option("--dw-limit", solve_dw_limit, "oracle terminal limit");
  solve->add_flag("--verify", solve_verify, "verify the result, exit 4 on mismatch");
  solve->add_flag("--time", solve_time, "report per-phase wall-clock times");
  solve->add_option("--tree-out", solve_tree_out, "tree file output");
  solve->add_option("--report-out", solve_report_out, "report file output");

  // check
  auto* check = app.add_subcommand("check", "Validate a tree file against an instance");
  std::string check_in, check_tree;
  check->add_option("--input", check_in, "instance file")->required();
  check->add_option("--tree", check_tree, "tree file")->required();

  // render
  auto* render = app.add_subcommand("render", "Render instance and tree to SVG");
  std::string render_in, render_tree, render_out;
  bool render_walls = false, render_separators = false;
  render->add_option("--input", render_in, "instance file")->required();
  render->add_option("--tree", render_tree, "tree file");
  render->add_option("--out", render_out, "output SVG ('-' for stdout)");
  render->add_flag("--show-walls", render_walls, "dashed lines at hard walls");
  render->add_flag("--show-separators", render_separators, "dashed separators");

  // stats
  auto* stats = app.add_subcommand("stats", "Empirical wall statistics");
  double stats_delta = 0.5;
  std::size_t stats_windows = 0;
  std::uint64_t stats_seed = 1;
  std::int64_t stats_scale = kDefaultScale;
  bool stats_soft = false;
  std::size_t stats_solve_sample = 0, stats_sample_n = 8;
  std::string stats_out;
  stats->add_option("--delta", stats_delta, "strip height")->check(CLI::PositiveNumber);
  stats->add_option("--windows", stats_windows, "number of candidate windows");
  stats->add_option("--seed", stats_seed, "PRNG seed");
  stats->add_option("--scale", stats_scale, "fixed-point scale");
  stats->add_flag("--soft", stats_soft, "soft-wall rate (with spacing rejection)");
  stats->add_option("--solve-sample", stats_solve_sample,
                    "also solve this many instances for tonicity profiles");
  stats->add_option("--sample-n", stats_sample_n, "points per solved instance");
  stats->add_option("--out", stats_out, "output report ('-' for stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Phase timings for regression tracking");
  std::string bench_in, bench_out, bench_algo = "auto";
  bench->add_option("--input", bench_in, "instance file")->required();
  bench->add_option("--algorithm", bench_algo, "algorithm to time");
  bench->add_option("--out", bench_out, "output report ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;  // --help stays 0
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(gen_out, gen_n, gen_delta, gen_seed, gen_scale, gen_hooks,
                          gen_probes);
    }

    if (solve->parsed()) {
      const double t0 = now_ms();
      const InstanceFile inst = instance_from_json(read_file(solve_in));
      const double t1 = now_ms();
      SolveOutcome outcome;
      if (solve_escalate && solve_algo == "sparse-dp") {
        // Heuristic escalation: double the cap until the length repeats twice.
        std::size_t cap = 2;
        Unit last = -1;
        int stable = 0;
        while (true) {
          outcome = dispatch_solve(inst, solve_algo, std::to_string(cap),
                                   solve_threshold, solve_dw_limit);
          stable = outcome.solution.length == last ? stable + 1 : 0;
          last = outcome.solution.length;
          if (stable >= 2 || cap >= inst.points.size()) break;
          cap *= 2;
        }
        outcome.report["escalated"] = true;
      } else {
        outcome = dispatch_solve(inst, solve_algo, solve_cap, solve_threshold,
                                 solve_dw_limit);
      }
      const double t2 = now_ms();

      if (solve_verify) {
        const auto err = verify_solution(inst.points, outcome.solution, solve_dw_limit);
        if (err) {
          std::cerr << "verification failed: " << *err << "\n";
          return kExitVerify;
        }
      }
      const double t3 = now_ms();
      if (solve_time) {
        outcome.report["phase_ms"] = {{"parse", t1 - t0},
                                      {"solve", t2 - t1},
                                      {"verify", t3 - t2}};
      }

      if (!solve_tree_out.empty()) {
        TreeFile tf{outcome.solution.length, inst.points.scale,
                    outcome.solution.segments};
        write_file_atomic(solve_tree_out, tree_to_json(tf));
      }
      const std::string report_text = outcome.report.dump(2) + "\n";
      if (solve_report_out.empty() || solve_report_out == "-") {
        std::cout << report_text;
      } else {
        write_file_atomic(solve_report_out, report_text);
      }
      return kExitOk;
    }

    if (check->parsed()) {
      const InstanceFile inst = instance_from_json(read_file(check_in));
      const TreeFile tf = tree_from_json(read_file(check_tree));
      if (tf.scale != inst.points.scale) {
        std::cerr << "verification failed: scale mismatch\n";
        return kExitVerify;
      }
      SteinerSolution sol{tf.length_units, tf.edges};
      const auto err = verify_solution(inst.points, sol, 16);
      if (err) {
        std::cerr << "verification failed: " << *err << "\n";
        return kExitVerify;
      }
      std::cout << "ok\n";
      return kExitOk;
    }

    if (render->parsed()) {
      const InstanceFile inst = instance_from_json(read_file(render_in));
      std::vector<Segment> edges;
      if (!render_tree.empty()) {
        const TreeFile tf = tree_from_json(read_file(render_tree));
        if (tf.scale != inst.points.scale) {
          std::cerr << "render: scale mismatch between instance and tree\n";
          return kExitVerify;
        }
        edges = tf.edges;
      }
      SvgOptions opt;
      opt.show_walls = render_walls;
      if (render_walls) {
        const WallSet ws = find_hard_walls(inst.points);
        for (std::size_t c : ws.stride_detected) {
          opt.wall_abscissae2.push_back(2 * inst.points.points[c].x);
        }
      }
      if (render_separators) {
        for (std::size_t i : inst.points.separator_indices()) {
          opt.separator_abscissae2.push_back(inst.points.separator_abscissa_doubled(i));
        }
      }
      const std::string svg = render_svg(inst.points, edges, opt);
      if (render_out.empty() || render_out == "-") {
        std::cout << svg;
      } else {
        write_file_atomic(render_out, svg);
      }
      return kExitOk;
    }

    if (stats->parsed()) {
      return cmd_stats(stats_delta, stats_windows, stats_seed, stats_scale, stats_soft,
                       stats_solve_sample, stats_sample_n, stats_out);
    }

    if (bench->parsed()) {
      const double t0 = now_ms();
      const InstanceFile inst = instance_from_json(read_file(bench_in));
      const double t1 = now_ms();
      const WallSet ws = find_hard_walls(inst.points);
      const double t2 = now_ms();
      const SolveOutcome outcome =
          dispatch_solve(inst, bench_algo, "", 100, 16);
      const double t3 = now_ms();
      json j;
      j["phase_ms"] = {{"parse", t1 - t0},
                       {"wall_scan", t2 - t1},
                       {"solve", t3 - t2}};
      j["hard_walls_found"] = ws.stride_detected.size();
      j["length_units"] = outcome.solution.length;
      j["algorithm_report"] = outcome.report;
      const std::string text = j.dump(2) + "\n";
      if (bench_out.empty() || bench_out == "-") {
        std::cout << text;
      } else {
        write_file_atomic(bench_out, text);
      }
      return kExitOk;
    }
  } catch (const NoSolution& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const TooManyTerminals& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const TooManyEdges& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const SubproblemTooLarge& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const CoordOverflow& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const OutOfStrip& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitOk;
}
