// dpde — differential evolution runner, crossover benchmarks, and
// segment-length distribution tests.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error,
// 3 statistical rejection (dist-test only).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpde/engine.hpp"
#include "dpde/manifest.hpp"
#include "dpde/objectives.hpp"
#include "dpde/stats.hpp"
#include "dpde/threading.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRejected = 3;

struct RunArgs {
    std::string objective;
    int d = 10;
    int np = 50;
    double f = 0.5;
    double cr = 0.2;
    int max_gen = 100;
    std::string crossover = "nec-par";
    std::string selection = "random";
    std::string engine = "par";
    std::uint64_t seed = 1;
    std::string out = "out";
    double target = 0.0;
    bool has_target = false;
};

struct BenchArgs {
    std::string suite;
    std::vector<int> d_list{10};
    std::vector<int> np_list{100};
    std::vector<double> cr_list{0.2};
    int repeats = 100;
    std::string threads = "auto";
    std::string out = "out";
    std::string objective = "ackley";
    double f = 0.5;
    int max_gen = 100;
};

struct DistArgs {
    double cr = 0.5;
    int d = 10;
    std::int64_t samples = 1000000;
    std::uint64_t seed = 1;
    std::string out = "out";
    bool corrupt = false;
};

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

void write_json_file(const fs::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

std::string format_records_csv(const std::vector<dpde::RunRecord>& records) {
    std::string csv = "generation,best_fitness,mean_fitness,best_gen,evaluations,elapsed_s\n";
    char line[256];
    for (const auto& rec : records) {
        std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%d,%lld,%.6f\n", rec.generation,
                      rec.best_fitness, rec.mean_fitness, rec.best_generation,
                      static_cast<long long>(rec.evaluations), rec.elapsed_s);
        csv += line;
    }
    return csv;
}

json gof_to_json(const dpde::GofResult& gof) {
    return json{{"statistic", gof.statistic}, {"p_value", gof.p_value}, {"dof", gof.dof}};
}

int resolve_threads(const std::string& threads) {
    if (threads == "auto") {
        return static_cast<int>(dpde::max_threads());
    }
    const int n = std::stoi(threads);
    if (n < 1) {
        throw std::invalid_argument("--threads must be a positive integer or 'auto'");
    }
    return n;
}

int cmd_run(const RunArgs& args) {
    dpde::DeConfig config;
    config.f = args.f;
    config.cr = args.cr;
    config.np = args.np;
    config.d = args.d;
    config.max_gen = args.max_gen;
    config.crossover_kind = dpde::crossover_kind_from_string(args.crossover);
    config.selection_kind = dpde::selection_kind_from_string(args.selection);
    config.seed = args.seed;
    if (args.has_target) {
        config.target_fitness = args.target;
    }

    const dpde::Objective objective = dpde::make_objective(args.objective, args.d);
    config.lower = objective.lower();
    config.upper = objective.upper();
    config.validate();

    if (args.engine != "seq" && args.engine != "par") {
        throw std::invalid_argument("--engine must be 'seq' or 'par'");
    }

    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);

    dpde::RunManifest manifest;
    manifest.config = config;
    manifest.objective = objective.name();
    manifest.records_csv = "records.csv";
    manifest.summary_json = "summary.json";
    manifest.version = dpde::tool_version();
    manifest.timestamp = dpde::iso8601_utc_now();
    write_json_file(out_dir / "manifest.json", dpde::to_json(manifest));

    const dpde::RunResult result = args.engine == "seq"
                                       ? dpde::run_sequential(config, objective)
                                       : dpde::run_parallel(config, objective);

    write_text_file(out_dir / manifest.records_csv, format_records_csv(result.records));

    json summary{
        {"schema_version", dpde::kSchemaVersion},
        {"objective", objective.name()},
        {"engine", args.engine},
        {"config", dpde::to_json(config)},
        {"best_fitness", result.best_fitness},
        {"best_genome", result.best_genome},
        {"generations_executed", result.population.generation},
        {"evaluations", result.records.back().evaluations},
        {"best_generation", result.records.back().best_generation},
    };
    write_json_file(out_dir / manifest.summary_json, summary);

    std::printf("run complete: objective=%s engine=%s generations=%d best=%.8e\n",
                objective.name().c_str(), args.engine.c_str(), result.population.generation,
                result.best_fitness);
    return kExitOk;
}

int cmd_bench(const BenchArgs& args) {
    const int threads = resolve_threads(args.threads);
    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);

    json entries = json::array();
    if (args.suite == "crossover") {
        const std::vector<dpde::CrossoverKind> kinds = {
            dpde::CrossoverKind::ExponentialTraditional,
            dpde::CrossoverKind::NecSequential,
            dpde::CrossoverKind::Binomial,
            dpde::CrossoverKind::NecParallel,
        };
        std::string csv = "d,np,cr,kind,threads,median_s\n"; // plot-ready summary
        for (int d : args.d_list) {
            for (int np : args.np_list) {
                for (double cr : args.cr_list) {
                    const auto reports =
                        dpde::bench_crossover_set(kinds, cr, np, d, args.repeats, threads);
                    for (std::size_t k = 0; k < kinds.size(); ++k) {
                        json entry = dpde::to_json(reports[k]);
                        entry["params"] = {{"d", d},
                                           {"np", np},
                                           {"cr", cr},
                                           {"kind", std::string(dpde::to_string(kinds[k]))},
                                           {"threads", threads}};
                        entries.push_back(std::move(entry));
                        char line[160];
                        std::snprintf(line, sizeof(line), "%d,%d,%g,%s,%d,%.9g\n", d, np, cr,
                                      std::string(dpde::to_string(kinds[k])).c_str(), threads,
                                      reports[k].median);
                        csv += line;
                    }
                }
            }
        }
        write_json_file(out_dir / "bench_crossover.json", entries);
        write_text_file(out_dir / "bench_crossover.csv", csv);
    } else if (args.suite == "engine") {
        std::string csv = "d,np,cr,threads,seq_median_s,par_median_s,speedup\n";
        for (int d : args.d_list) {
            for (int np : args.np_list) {
                for (double cr : args.cr_list) {
                    const dpde::Objective objective = dpde::make_objective(args.objective, d);
                    dpde::DeConfig config;
                    config.f = args.f;
                    config.cr = cr;
                    config.np = np;
                    config.d = d;
                    config.max_gen = args.max_gen;
                    config.lower = objective.lower();
                    config.upper = objective.upper();
                    config.validate();

                    auto report = dpde::bench_engine(config, objective, args.repeats, threads);
                    json entry{
                        {"schema_version", dpde::kSchemaVersion},
                        {"params",
                         {{"objective", args.objective},
                          {"d", d},
                          {"np", np},
                          {"cr", cr},
                          {"f", args.f},
                          {"max_gen", args.max_gen},
                          {"threads", report.parallel_threads}}},
                        {"sequential", dpde::to_json(report.sequential)},
                        {"parallel", dpde::to_json(report.parallel)},
                        {"speedup", report.speedup},
                    };
                    entries.push_back(std::move(entry));
                    char line[160];
                    std::snprintf(line, sizeof(line), "%d,%d,%g,%d,%.9g,%.9g,%.4g\n", d, np, cr,
                                  report.parallel_threads, report.sequential.median,
                                  report.parallel.median, report.speedup);
                    csv += line;
                }
            }
        }
        write_json_file(out_dir / "bench_engine.json", entries);
        write_text_file(out_dir / "bench_engine.csv", csv);
    } else {
        throw std::invalid_argument("--suite must be 'crossover' or 'engine'");
    }

    std::printf("bench complete: suite=%s entries=%zu threads=%d\n", args.suite.c_str(),
                entries.size(), threads);
    return kExitOk;
}

int cmd_dist_test(const DistArgs& args) {
    dpde::RngStream root(args.seed);
    dpde::LengthComparison cmp =
        dpde::compare_crossover_lengths(args.cr, args.d, args.samples, root);

    if (args.corrupt) {
        // Fault-injection hook: replaces the direct sampler's uniforms with
        // u^2, which shifts the length distribution and must be rejected.
        dpde::Histogram corrupted(args.d);
        const dpde::RngStream nec_root = root.derive(1);
        for (std::int64_t k = 0; k < args.samples; ++k) {
            dpde::RngStream s = nec_root.derive(static_cast<std::uint64_t>(k));
            const double u = s.next_open01();
            corrupted.add(dpde::sample_length(args.cr, args.d, u * u));
        }
        cmp.hist_nec = corrupted;
        cmp.gof_nec = dpde::chi_square_gof(cmp.hist_nec,
                                           dpde::GeometricLaw::truncated(args.cr, args.d));
        cmp.two_sample = dpde::two_sample_chi_square(cmp.hist_exp, cmp.hist_nec);
    }

    const bool pass = cmp.gof_exp.p_value > 0.01 && cmp.gof_nec.p_value > 0.01 &&
                      cmp.two_sample.p_value > 0.01;

    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);
    json report{
        {"schema_version", dpde::kSchemaVersion},
        {"params",
         {{"cr", args.cr},
          {"d", args.d},
          {"samples", args.samples},
          {"seed", args.seed},
          {"corrupt_sampler", args.corrupt}}},
        {"hist_exp", dpde::to_json(cmp.hist_exp)},
        {"hist_nec", dpde::to_json(cmp.hist_nec)},
        {"gof_exp", gof_to_json(cmp.gof_exp)},
        {"gof_nec", gof_to_json(cmp.gof_nec)},
        {"two_sample", gof_to_json(cmp.two_sample)},
        {"pass", pass},
    };
    write_json_file(out_dir / "dist_test.json", report);

    std::printf("dist-test: cr=%g d=%d samples=%lld p_exp=%.4g p_nec=%.4g p_two=%.4g -> %s\n",
                args.cr, args.d, static_cast<long long>(args.samples), cmp.gof_exp.p_value,
                cmp.gof_nec.p_value, cmp.two_sample.p_value, pass ? "PASS" : "REJECT");
    return pass ? kExitOk : kExitRejected;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dpde: data-parallel differential evolution"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "execute one DE run and log per-generation records");
    run->add_option("--objective", run_args.objective, "objective name: ackley|griewank|rosenbrock")
        ->required();
    run->add_option("--d", run_args.d, "genome dimension");
    run->add_option("--np", run_args.np, "population size (>= 4)");
    run->add_option("--f", run_args.f, "differential weight F");
    run->add_option("--cr", run_args.cr, "crossover rate in [0,1]");
    run->add_option("--max-gen", run_args.max_gen, "generation budget");
    run->add_option("--crossover", run_args.crossover, "bin|exp|nec|nec-par")
        ->check(CLI::IsMember({"bin", "exp", "nec", "nec-par"}));
    run->add_option("--selection", run_args.selection, "random|offset|perm")
        ->check(CLI::IsMember({"random", "offset", "perm"}));
    run->add_option("--engine", run_args.engine, "seq|par")
        ->check(CLI::IsMember({"seq", "par"}));
    run->add_option("--seed", run_args.seed, "random seed");
    run->add_option("--out", run_args.out, "output directory");
    auto* target_opt = run->add_option("--target", run_args.target, "stop at this best fitness");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "timing suites for crossovers and engines");
    bench->add_option("--suite", bench_args.suite, "crossover|engine")->required();
    bench->add_option("--d-list", bench_args.d_list, "dimensions")->delimiter(',');
    bench->add_option("--np-list", bench_args.np_list, "population sizes")->delimiter(',');
    bench->add_option("--cr-list", bench_args.cr_list, "crossover rates")->delimiter(',');
    bench->add_option("--repeats", bench_args.repeats, "timed repeats per cell (default 100)");
    bench->add_option("--threads", bench_args.threads, "1..n or 'auto'");
    bench->add_option("--out", bench_args.out, "output directory");
    bench->add_option("--objective", bench_args.objective, "objective for the engine suite");
    bench->add_option("--f", bench_args.f, "differential weight for the engine suite");
    bench->add_option("--max-gen", bench_args.max_gen, "generations for the engine suite");

    DistArgs dist_args;
    CLI::App* dist = app.add_subcommand(
        "dist-test", "segment-length distribution check (exit 3 on rejection)");
    dist->add_option("--cr", dist_args.cr, "crossover rate");
    dist->add_option("--d", dist_args.d, "dimension");
    dist->add_option("--samples", dist_args.samples, "sample count (default 10^6)");
    dist->add_option("--seed", dist_args.seed, "random seed");
    dist->add_option("--out", dist_args.out, "output directory");
    dist->add_flag("--corrupt-sampler", dist_args.corrupt)->group(""); // test-only hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        run_args.has_target = target_opt->count() > 0;
        if (run->parsed()) {
            return cmd_run(run_args);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_args);
        }
        if (dist->parsed()) {
            return cmd_dist_test(dist_args);
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
