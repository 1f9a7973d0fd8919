#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dynwalk/types.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(DYNWALK_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe))
        r.output.append(buf, n);
    const int rc = pclose(pipe);
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string golden(const std::string& name) {
    return slurp(fs::path(DYNWALK_SOURCE_DIR) / "tests" / "golden" / name);
}

std::string strip_volatile(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("wall_ms=", 0) == 0) continue;
        out << line << '\n';
    }
    return out.str();
}

fs::path temp_path(const std::string& name) {
    return fs::temp_directory_path() / ("dynwalk_cli_" + name);
}

std::string workload(const std::string& file) {
    return (fs::path(DYNWALK_SOURCE_DIR) / "workloads" / file).string();
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (const char c : text)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("walk emits one path line per query, capped at steps+1 nodes") {
    const fs::path paths = temp_path("paths.txt");
    const fs::path stats = temp_path("stats.txt");
    const auto r = run_cli("walk --gen ba:n=120,deg=5 --undirected --weights uniform:low=1,high=5"
                           " --model node2vec --queries all --seed 7 --steps 80 --workers 2"
                           " --edge-cost-ratio 4.0 --out " + paths.string() +
                           " --stats " + stats.string());
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(paths);
    CHECK(count_lines(text) == 120);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::size_t nodes = 0;
        while (ls >> tok) ++nodes;
        CHECK(nodes >= 1);
        CHECK(nodes <= 81);
    }
    fs::remove(paths);
    fs::remove(stats);
}

TEST_CASE("metapath paths never exceed the schema length") {
    const fs::path paths = temp_path("mp.txt");
    const auto r = run_cli("walk --gen ba:n=100,deg=5 --undirected --weights uniform:low=1,high=5"
                           " --labels 0,4 --model metapath --queries all --seed 3 --steps 80"
                           " --mode force-ervs --out " + paths.string());
    REQUIRE(r.exit_code == 0);
    std::istringstream in(slurp(paths));
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::size_t nodes = 0;
        while (ls >> tok) ++nodes;
        CHECK(nodes <= 6);
    }
    fs::remove(paths);
}

TEST_CASE("usage errors exit nonzero") {
    CHECK(run_cli("walk --model node2vec").exit_code == 2);          // no graph source
    CHECK(run_cli("walk --graph /no/such/file.txt").exit_code == 2); // missing file
    CHECK(run_cli("verify --samples 0").exit_code == 2);             // zero samples
    CHECK(run_cli("walk --gen ba:n=10,deg=2 --mode bogus").exit_code == 2);
    CHECK(run_cli("bogus-subcommand").exit_code != 0);
}

TEST_CASE("stats report matches the golden file") {
    const fs::path stats = temp_path("golden_stats.txt");
    const auto r = run_cli("walk --gen ba:n=50,deg=4 --undirected --weights uniform:low=1,high=5"
                           " --model node2vec --queries all --seed 13 --steps 10 --workers 2"
                           " --edge-cost-ratio 4.0 --stats " + stats.string());
    REQUIRE(r.exit_code == 0);
    CHECK(strip_volatile(slurp(stats)) == strip_volatile(golden("stats_walk.txt")));
    fs::remove(stats);
}

TEST_CASE("analyzer reports match their golden files") {
    for (const auto& [wf, gold] :
         {std::pair{std::string("node2vec.wf"), std::string("analyze_node2vec.txt")},
          std::pair{std::string("node2vec_unweighted.wf"),
                    std::string("analyze_node2vec_unweighted.txt")},
          std::pair{std::string("metapath.wf"), std::string("analyze_metapath.txt")},
          std::pair{std::string("second_order_pr.wf"),
                    std::string("analyze_second_order_pr.txt")}}) {
        const auto r = run_cli("analyze --dsl " + workload(wf));
        REQUIRE(r.exit_code == 0);
        CHECK(r.output == golden(gold));
    }
    const std::string loop_wf =
        (fs::path(DYNWALK_SOURCE_DIR) / "tests" / "data" / "loop.wf").string();
    const auto r = run_cli("analyze --dsl " + loop_wf);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output == golden("analyze_loop.txt"));
}

TEST_CASE("bench reports one row per mode and the jump saves draws") {
    const fs::path stats = temp_path("bench.txt");
    const auto r = run_cli("bench --gen ba:n=200,deg=6 --undirected"
                           " --weights uniform:low=1,high=5 --model node2vec --queries all"
                           " --seed 5 --steps 20 --modes force-ervs,ervs-nojump --stats " +
                           stats.string());
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(stats);
    CHECK(count_lines(text) == 2);
    std::uint64_t draws[2] = {0, 0};
    std::istringstream in(text);
    std::string line;
    for (int i = 0; std::getline(in, line); ++i) {
        const auto at = line.find("rng_draws=");
        REQUIRE(at != std::string::npos);
        draws[i] = std::stoull(line.substr(at + 10));
    }
    CHECK(draws[0] < draws[1]); // jump variant draws strictly less
    fs::remove(stats);
}

TEST_CASE("single-mode bench emits one row") {
    const fs::path stats = temp_path("bench1.txt");
    const auto r = run_cli("bench --gen uniform:n=60,deg=4 --model static --queries all"
                           " --seed 2 --steps 5 --modes force-its --stats " + stats.string());
    REQUIRE(r.exit_code == 0);
    CHECK(count_lines(slurp(stats)) == 1);
    fs::remove(stats);
}

TEST_CASE("paths files are byte-identical across worker counts") {
    const fs::path p1 = temp_path("det1.txt");
    const fs::path p8 = temp_path("det8.txt");
    const std::string common =
        "walk --gen ba:n=150,deg=5 --undirected --weights pareto:alpha=1.5 --model pr2"
        " --queries all --seed 21 --steps 40 --edge-cost-ratio 3.0 ";
    REQUIRE(run_cli(common + "--workers 1 --out " + p1.string()).exit_code == 0);
    REQUIRE(run_cli(common + "--workers 8 --out " + p8.string()).exit_code == 0);
    CHECK(slurp(p1) == slurp(p8));
    fs::remove(p1);
    fs::remove(p8);
}

TEST_CASE("verify self-test passes, and fails loudly with an injected bad bound") {
    const auto ok = run_cli("verify --samples 30000 --seed 11 --workers 2");
    INFO(ok.output);
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("[FAIL]") == std::string::npos);

    const auto bad = run_cli("verify --samples 30000 --seed 11 --workers 2 --inject-bad-bound");
    INFO(bad.output);
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("[FAIL] bound-soundness") != std::string::npos);
}

TEST_CASE("alpha sweep prints one row per shape") {
    const auto r = run_cli("walk --gen ba:n=150,deg=5 --undirected --model node2vec"
                           " --queries all --seed 4 --steps 10 --edge-cost-ratio 2.0"
                           " --alpha-sweep 1.0,4.0");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("[alpha_sweep]") != std::string::npos);
    CHECK(r.output.find("alpha=1.00") != std::string::npos);
    CHECK(r.output.find("alpha=4.00") != std::string::npos);
}

TEST_CASE("binary graph cache round-trips through the CLI") {
    const fs::path cache = temp_path("cache.bin");
    const fs::path out1 = temp_path("c1.txt");
    const fs::path out2 = temp_path("c2.txt");
    REQUIRE(run_cli("walk --gen ba:n=80,deg=4 --undirected --weights uniform:low=1,high=5"
                    " --model static --queries all --seed 6 --steps 10 --mode force-ervs"
                    " --save-graph " + cache.string() + " --out " + out1.string())
                .exit_code == 0);
    REQUIRE(run_cli("walk --graph " + cache.string() +
                    " --model static --queries all --seed 6 --steps 10 --mode force-ervs"
                    " --out " + out2.string())
                .exit_code == 0);
    CHECK(slurp(out1) == slurp(out2));
    fs::remove(cache);
    fs::remove(out1);
    fs::remove(out2);
}

} // TEST_SUITE
