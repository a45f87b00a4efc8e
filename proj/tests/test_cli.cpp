#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpde/manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DPDE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("dpde_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        lines.push_back(line);
    }
    return lines;
}

// Drops the wall-clock column, which is the one field not derived from
// (flags, seed).
std::string strip_elapsed(const std::string& csv_line) {
    const auto pos = csv_line.rfind(',');
    return csv_line.substr(0, pos);
}

} // namespace

TEST_CASE("cli run: records CSV has the exact header and one row per generation") {
    const auto dir = fresh_dir("run_basic");
    const int rc = run_cli("run --objective ackley --d 6 --np 8 --f 0.5 --cr 0.2 --max-gen 10 "
                           "--crossover nec-par --selection random --engine par --seed 3 --out " +
                           dir.string());
    REQUIRE(rc == 0);

    const auto lines = lines_of(slurp(dir / "records.csv"));
    REQUIRE(lines.size() == 12); // header + init row + 10 generations
    CHECK(lines[0] == "generation,best_fitness,mean_fitness,best_gen,evaluations,elapsed_s");

    const auto manifest_json = json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest_json.at("schema_version") == 1);
    CHECK(manifest_json.at("objective") == "ackley");
    const auto summary = json::parse(slurp(dir / "summary.json"));
    CHECK(summary.at("schema_version") == 1);
    CHECK(summary.at("generations_executed") == 10);
    CHECK(summary.at("evaluations") == 8 * 11);
}

TEST_CASE("cli run: identical flags reproduce identical records") {
    const auto dir_a = fresh_dir("run_repro_a");
    const auto dir_b = fresh_dir("run_repro_b");
    const std::string flags = "run --objective griewank --d 5 --np 10 --f 0.6 --cr 0.5 "
                              "--max-gen 8 --crossover bin --selection perm --engine seq --seed 9";
    REQUIRE(run_cli(flags + " --out " + dir_a.string()) == 0);
    REQUIRE(run_cli(flags + " --out " + dir_b.string()) == 0);

    const auto a = lines_of(slurp(dir_a / "records.csv"));
    const auto b = lines_of(slurp(dir_b / "records.csv"));
    REQUIRE(a.size() == b.size());
    // all columns except wall time are byte-identical
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(strip_elapsed(a[i]) == strip_elapsed(b[i]));
    }
    CHECK(slurp(dir_a / "summary.json") == slurp(dir_b / "summary.json"));
}

TEST_CASE("cli run: max-gen 0 leaves a single initialization record") {
    const auto dir = fresh_dir("run_gen0");
    REQUIRE(run_cli("run --objective ackley --max-gen 0 --out " + dir.string()) == 0);
    const auto lines = lines_of(slurp(dir / "records.csv"));
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].rfind("0,", 0) == 0);
}

TEST_CASE("cli run: engines agree on the deterministic columns") {
    const auto dir_seq = fresh_dir("run_eng_seq");
    const auto dir_par = fresh_dir("run_eng_par");
    const std::string flags = "run --objective rosenbrock --d 4 --np 12 --f 0.7 --cr 0.8 "
                              "--max-gen 15 --crossover exp --selection offset --seed 21";
    REQUIRE(run_cli(flags + " --engine seq --out " + dir_seq.string()) == 0);
    REQUIRE(run_cli(flags + " --engine par --out " + dir_par.string()) == 0);
    const auto a = lines_of(slurp(dir_seq / "records.csv"));
    const auto b = lines_of(slurp(dir_par / "records.csv"));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(strip_elapsed(a[i]) == strip_elapsed(b[i]));
    }
}

TEST_CASE("cli usage errors exit with code 2") {
    CHECK(run_cli("run --objective ackley --no-such-flag 1") == 2);
    CHECK(run_cli("run") == 2);                              // missing required flag
    CHECK(run_cli("run --objective nope") == 2);             // unknown objective
    CHECK(run_cli("run --objective ackley --cr 1.5") == 2);  // invalid rate
    CHECK(run_cli("run --objective ackley --np 2") == 2);    // population too small
    CHECK(run_cli("bench --suite nonsense") == 2);
    CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("cli dist-test: healthy sampler passes, corrupted sampler exits 3") {
    const auto dir = fresh_dir("dist_ok");
    REQUIRE(run_cli("dist-test --cr 0.5 --d 10 --samples 200000 --seed 4 --out " +
                    dir.string()) == 0);
    const auto report = json::parse(slurp(dir / "dist_test.json"));
    CHECK(report.at("pass") == true);
    CHECK(report.at("gof_nec").at("p_value").get<double>() > 0.01);
    CHECK(report.at("two_sample").at("p_value").get<double>() > 0.01);

    const auto dir_bad = fresh_dir("dist_bad");
    CHECK(run_cli("dist-test --cr 0.5 --d 10 --samples 200000 --seed 4 --corrupt-sampler --out " +
                  dir_bad.string()) == 3);
    const auto bad = json::parse(slurp(dir_bad / "dist_test.json"));
    CHECK(bad.at("pass") == false);
}

TEST_CASE("cli dist-test: cr=0 concentrates both histograms at length 1") {
    const auto dir = fresh_dir("dist_cr0");
    REQUIRE(run_cli("dist-test --cr 0 --d 10 --samples 20000 --out " + dir.string()) == 0);
    const auto report = json::parse(slurp(dir / "dist_test.json"));
    CHECK(report.at("hist_exp").at("counts")[0] == 20000);
    CHECK(report.at("hist_nec").at("counts")[0] == 20000);
}

TEST_CASE("cli bench: crossover grid produces one entry per cell and kind") {
    const auto dir = fresh_dir("bench_grid");
    REQUIRE(run_cli("bench --suite crossover --d-list 4,8 --np-list 10 --cr-list 0.2,0.8 "
                    "--repeats 3 --threads 1 --out " +
                    dir.string()) == 0);
    const auto entries = json::parse(slurp(dir / "bench_crossover.json"));
    REQUIRE(entries.is_array());
    CHECK(entries.size() == 2 * 1 * 2 * 4);
    for (const auto& entry : entries) {
        CHECK(entry.at("samples").size() == 3);
        CHECK(entry.at("params").at("threads") == 1);
    }
    const auto csv = lines_of(slurp(dir / "bench_crossover.csv"));
    CHECK(csv[0] == "d,np,cr,kind,threads,median_s");
    CHECK(csv.size() == 1 + 2 * 1 * 2 * 4);
}

TEST_CASE("cli bench: repeats defaults to 100") {
    const auto dir = fresh_dir("bench_default");
    REQUIRE(run_cli("bench --suite crossover --d-list 4 --np-list 8 --cr-list 0.5 --threads 1 "
                    "--out " +
                    dir.string()) == 0);
    const auto entries = json::parse(slurp(dir / "bench_crossover.json"));
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].at("repeats") == 100);
}

TEST_CASE("cli bench: engine suite emits speedup per cell") {
    const auto dir = fresh_dir("bench_engine");
    REQUIRE(run_cli("bench --suite engine --d-list 4 --np-list 8 --cr-list 0.5 --repeats 3 "
                    "--max-gen 5 --threads auto --out " +
                    dir.string()) == 0);
    const auto entries = json::parse(slurp(dir / "bench_engine.json"));
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].contains("speedup"));
    CHECK(entries[0].at("sequential").at("samples").size() == 3);
}

TEST_CASE("manifest round-trips losslessly through JSON") {
    dpde::RunManifest manifest;
    manifest.config.f = 0.65;
    manifest.config.cr = 0.95;
    manifest.config.np = 50;
    manifest.config.d = 2;
    manifest.config.max_gen = 500;
    manifest.config.crossover_kind = dpde::CrossoverKind::Binomial;
    manifest.config.selection_kind = dpde::SelectionKind::Permutation;
    manifest.config.seed = 42;
    manifest.config.target_fitness = 1e-8;
    manifest.config.set_uniform_bounds(-5.12, 5.12);
    manifest.objective = "rosenbrock";
    manifest.records_csv = "records.csv";
    manifest.summary_json = "summary.json";
    manifest.version = dpde::tool_version();
    manifest.timestamp = "2026-01-02T03:04:05Z";

    const auto j = dpde::to_json(manifest);
    CHECK(dpde::manifest_from_json(j) == manifest);

    manifest.config.target_fitness.reset();
    CHECK(dpde::manifest_from_json(dpde::to_json(manifest)) == manifest);

    // round-trip through actual serialized text as well
    const auto reparsed = json::parse(dpde::to_json(manifest).dump());
    CHECK(dpde::manifest_from_json(reparsed) == manifest);
}
