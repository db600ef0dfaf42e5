#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>

#include "strip_steiner/json_io.hpp"
#include "strip_steiner/oracle.hpp"
#include "strip_steiner/random_model.hpp"
#include "strip_steiner/svg.hpp"

using namespace strip_steiner;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/strip_steiner_test_") + name;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(STRIP_STEINER_CLI_PATH) + " " + args +
                          " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("instance json round-trip is identity") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    GenSpec spec{20, 2.5, rng(), 1'000'000};
    InstanceFile inst;
    inst.points = generate_random_instance(spec);
    inst.points.sparseness_k = 3;
    GeneratorMetadata meta;
    meta.kind = "random";
    meta.seed = spec.seed;
    meta.params = "n=20";
    inst.generator = meta;
    const auto back = instance_from_json(instance_to_json(inst));
    CHECK(back.points.points == inst.points.points);
    CHECK(back.points.delta == inst.points.delta);
    CHECK(back.points.scale == inst.points.scale);
    REQUIRE(back.points.sparseness_k.has_value());
    CHECK(*back.points.sparseness_k == 3);
    REQUIRE(back.generator.has_value());
    CHECK(back.generator->seed == meta.seed);
    CHECK(back.generator->prng == std::string(Prng::kAlgorithm));
  }
}

TEST_CASE("tree json round-trip is identity") {
  TreeFile tf;
  tf.length_units = 9;
  tf.scale = 1000;
  tf.edges = {Segment(0, 0, 3, 0), Segment(3, 0, 3, 2), Segment(3, 2, 7, 2)};
  const auto back = tree_from_json(tree_to_json(tf));
  CHECK(back.length_units == tf.length_units);
  CHECK(back.scale == tf.scale);
  CHECK(back.edges == tf.edges);
}

TEST_CASE("svg rendering") {
  SUBCASE("two-point L-path renders two tree strokes") {
    auto ps = make_point_set({{0, 0}, {3, 2}}, 2);
    const auto sol = oracle_solve(ps);
    const std::string svg = render_svg(ps, sol.segments);
    std::size_t lines = 0, pos = 0;
    while ((pos = svg.find("<line", pos)) != std::string::npos) {
      ++lines;
      pos += 5;
    }
    CHECK(lines == 2);
    CHECK(svg.find("<circle") != std::string::npos);
  }
  SUBCASE("cross instance renders four strokes meeting at a point") {
    auto ps = make_point_set({{1, 0}, {0, 1}, {2, 1}, {1, 2}}, 2);
    const auto sol = oracle_solve(ps);
    const std::string svg = render_svg(ps, sol.segments);
    std::size_t lines = 0, pos = 0;
    while ((pos = svg.find("<line", pos)) != std::string::npos) {
      ++lines;
      pos += 5;
    }
    CHECK(lines == 4);
    // One hollow circle at the Steiner point.
    CHECK(svg.find("fill=\"#ffffff\"") != std::string::npos);
  }
  SUBCASE("rendering is deterministic byte for byte") {
    GenSpec spec{12, 2.0, 5, 1000};
    auto ps = generate_random_instance(spec);
    const auto sol = oracle_solve(ps);
    CHECK(render_svg(ps, sol.segments) == render_svg(ps, sol.segments));
  }
  SUBCASE("show-walls adds dashed lines") {
    auto ps = make_point_set({{0, 0}, {3, 2}}, 2);
    SvgOptions opt;
    opt.show_walls = true;
    opt.wall_abscissae2 = {2};
    const std::string svg = render_svg(ps, {}, opt);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
  }
}

TEST_CASE("cli end to end") {
  const std::string inst = temp_path("inst.json");
  const std::string tree = temp_path("tree.json");
  const std::string report = temp_path("report.json");
  const std::string svg = temp_path("out.svg");

  SUBCASE("generate, solve, check, render") {
    REQUIRE(run_cli("generate --n 8 --delta 2 --seed 7 --scale 1000 --out " + inst) == 0);
    REQUIRE(run_cli("solve --input " + inst + " --algorithm oracle --verify --tree-out " +
                    tree + " --report-out " + report) == 0);
    CHECK(run_cli("check --input " + inst + " --tree " + tree) == 0);
    CHECK(run_cli("render --input " + inst + " --tree " + tree + " --out " + svg) == 0);

    // Deterministic generation: same seed, same bytes.
    const std::string inst2 = temp_path("inst2.json");
    REQUIRE(run_cli("generate --n 8 --delta 2 --seed 7 --scale 1000 --out " + inst2) == 0);
    CHECK(read_file(inst) == read_file(inst2));
  }

  SUBCASE("corrupted tree file fails check with exit 4") {
    REQUIRE(run_cli("generate --n 6 --delta 2 --seed 9 --scale 1000 --out " + inst) == 0);
    REQUIRE(run_cli("solve --input " + inst + " --algorithm oracle --tree-out " + tree +
                    " --report-out " + report) == 0);
    auto tf = tree_from_json(read_file(tree));
    tf.length_units += 1;  // corrupt the recorded length
    write_file_atomic(tree, tree_to_json(tf));
    CHECK(run_cli("check --input " + inst + " --tree " + tree) == 4);
  }

  SUBCASE("parse failures exit 2") {
    write_file_atomic(inst, "{not json");
    CHECK(run_cli("solve --input " + inst) == 2);
    CHECK(run_cli("generate --delta 0 --out " + inst) == 2);
  }

  SUBCASE("infeasible cap exits 3") {
    REQUIRE(run_cli("generate --n 5 --delta 2 --seed 3 --scale 1000 --out " + inst) == 0);
    CHECK(run_cli("solve --input " + inst + " --algorithm sparse-dp --cap 0") == 3);
  }

  SUBCASE("resource limits exit 5") {
    REQUIRE(run_cli("generate --n 20 --delta 2 --seed 3 --scale 1000 --out " + inst) == 0);
    CHECK(run_cli("solve --input " + inst + " --algorithm oracle --dw-limit 16") == 5);
    CHECK(run_cli("solve --input " + inst + " --algorithm brute") == 5);
  }

  SUBCASE("hooks generation and sparse solve") {
    REQUIRE(run_cli("generate --hooks 2x3 --probes 1,2 --out " + inst) == 0);
    REQUIRE(run_cli("solve --input " + inst + " --algorithm oracle --verify "
                    "--tree-out " + tree + " --report-out " + report) == 0);
  }

  SUBCASE("stats with no windows is an empty report, exit 0") {
    const std::string stats = temp_path("stats.json");
    CHECK(run_cli("stats --delta 0.5 --windows 0 --out " + stats) == 0);
    CHECK(read_file(stats).find("empty") != std::string::npos);
  }

  SUBCASE("bench writes phase timings") {
    const std::string benchf = temp_path("bench.json");
    REQUIRE(run_cli("generate --n 8 --delta 2 --seed 11 --scale 1000 --out " + inst) == 0);
    REQUIRE(run_cli("bench --input " + inst + " --algorithm oracle --out " + benchf) == 0);
    const std::string text = read_file(benchf);
    CHECK(text.find("phase_ms") != std::string::npos);
    CHECK(text.find("wall_scan") != std::string::npos);
  }
}

TEST_CASE("auto algorithm dispatch") {
  const std::string inst = temp_path("auto_inst.json");
  const std::string report = temp_path("auto_report.json");
  // Generated instances carry metadata: auto picks fpt.
  REQUIRE(run_cli("generate --n 8 --delta 2 --seed 21 --scale 1000 --out " + inst) == 0);
  REQUIRE(run_cli("solve --input " + inst + " --report-out " + report) == 0);
  CHECK(read_file(report).find("\"fpt\"") != std::string::npos);

  // Stripped metadata with sparseness: sparse-dp with cap auto.
  auto parsed = instance_from_json(read_file(inst));
  parsed.generator.reset();
  parsed.points.sparseness_k = measure_sparseness(parsed.points);
  write_file_atomic(inst, instance_to_json(InstanceFile{parsed.points, std::nullopt}));
  REQUIRE(run_cli("solve --input " + inst + " --report-out " + report) == 0);
  CHECK(read_file(report).find("\"sparse-dp\"") != std::string::npos);

  // No metadata, no sparseness, small n: oracle.
  parsed.points.sparseness_k.reset();
  write_file_atomic(inst, instance_to_json(InstanceFile{parsed.points, std::nullopt}));
  REQUIRE(run_cli("solve --input " + inst + " --report-out " + report) == 0);
  CHECK(read_file(report).find("\"oracle\"") != std::string::npos);
}
