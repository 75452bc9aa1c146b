#include "tnvs/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "tnvs/codec.hpp"
#include "tnvs/dataset.hpp"
#include "tnvs/eval.hpp"
#include "tnvs/report.hpp"
#include "tnvs/selector.hpp"
#include "tnvs/simgen.hpp"

namespace tnvs {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TNVS_SEED")) {
        std::uint64_t v = 0;
        std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size()) return v;
        throw UsageError("TNVS_SEED is not an unsigned integer: '" + std::string(s) + "'");
    }
    return 0;
}

std::optional<std::size_t> parse_dmax(const std::string& s) {
    if (s == "auto") return std::nullopt;
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
        throw UsageError("--dmax must be 'auto' or a positive integer");
    return v;
}

SelectionMode parse_mode(const std::string& s) { return s == "foci" ? SelectionMode::Foci : SelectionMode::Tnvs; }

struct SelectorFlags {
    double alpha1 = 0.01, alpha2 = -0.01, alpha3 = 0.01;
    std::string dmax = "auto";
    std::string mode = "tnvs";
    std::optional<std::uint64_t> seed;
    std::optional<double> time_budget;

    void attach(CLI::App* app) {
        app->add_option("--alpha1", alpha1, "Uninformative threshold")->capture_default_str();
        app->add_option("--alpha2", alpha2, "Relevant threshold")->capture_default_str();
        app->add_option("--alpha3", alpha3, "Redundant threshold")->capture_default_str();
        app->add_option("--dmax", dmax, "Maximum model size: 'auto' = ceil(n / ln n), or an integer")
            ->capture_default_str();
        app->add_option("--mode", mode, "Search mode")->check(CLI::IsMember({"tnvs", "foci"}))->capture_default_str();
        app->add_option("--seed", seed, "Random seed (falls back to TNVS_SEED, then 0)");
        app->add_option("--time-budget", time_budget, "Wall-clock cap in seconds")->check(CLI::NonNegativeNumber);
    }

    SelectorConfig config() const {
        SelectorConfig c;
        c.alpha1 = alpha1;
        c.alpha2 = alpha2;
        c.alpha3 = alpha3;
        c.d_max = parse_dmax(dmax);
        c.mode = parse_mode(mode);
        c.seed = seed ? *seed : default_seed();
        c.time_budget_seconds = time_budget;
        try {
            c.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return c;
    }
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw DataError("cannot write '" + path + "'");
    f << text;
}

SimulationSpec simulation_spec(const std::string& setting, std::uint64_t seed, std::optional<std::size_t> n,
                               std::optional<std::size_t> p) {
    SimulationSpec s;
    if (setting == "toy") {
        s = toy_spec(n.value_or(2000), seed);
        if (p && *p != 6) throw UsageError("the toy setting always has p = 6");
    } else {
        s = setting_spec(std::stoi(setting), seed);
        if (n) s.n = *n;
        if (p) s.p = *p;
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transparent nonlinear variable selection"};
    app.name("tnvs");
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

    // select
    auto* select = app.add_subcommand("select", "Partition predictors of a CSV file into S, A1, A2, A3");
    std::string input, response, output;
    bool quiet = false;
    SelectorFlags sel_flags;
    select->add_option("--input", input, "CSV file with a header row")->required();
    select->add_option("--response", response, "Name of the response column")->required();
    select->add_option("--output", output, "Write the JSON result here instead of stdout");
    select->add_flag("--quiet", quiet, "Do not print the text report to stderr");
    sel_flags.attach(select);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Write a synthetic benchmark dataset and its ground truth");
    std::string setting = "1", out_dir;
    std::optional<std::uint64_t> sim_seed;
    std::optional<std::size_t> sim_n, sim_p;
    std::optional<double> sim_lambda;
    simulate->add_option("--setting", setting, "1, 2, 3 or toy")->check(CLI::IsMember({"1", "2", "3", "toy"}))->required();
    simulate->add_option("--seed", sim_seed, "Random seed (falls back to TNVS_SEED, then 0)");
    simulate->add_option("--out", out_dir, "Output directory")->required();
    simulate->add_option("--n", sim_n, "Override the number of rows")->check(CLI::PositiveNumber);
    simulate->add_option("--p", sim_p, "Override the number of predictors")->check(CLI::PositiveNumber);
    simulate->add_option("--lambda", sim_lambda, "Companion noise scale")->check(CLI::NonNegativeNumber);

    // bench
    auto* bench = app.add_subcommand("bench", "Repeat selection on simulated data and score it");
    std::string bench_setting = "1", bench_output;
    std::size_t reps = 20;
    std::optional<std::size_t> bench_datasets, bench_n, bench_p;
    double subsample = 0.9;
    SelectorFlags bench_flags;
    bench->add_option("--setting", bench_setting, "1, 2, 3 or toy")
        ->check(CLI::IsMember({"1", "2", "3", "toy"}))
        ->capture_default_str();
    bench->add_option("--reps", reps, "Number of selection runs")->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--datasets", bench_datasets, "Independent datasets (default min(10, reps))")
        ->check(CLI::PositiveNumber);
    bench->add_option("--n", bench_n, "Override the number of rows")->check(CLI::PositiveNumber);
    bench->add_option("--p", bench_p, "Override the number of predictors")->check(CLI::PositiveNumber);
    bench->add_option("--subsample", subsample, "Row fraction kept per run")
        ->check(CLI::Range(0.01, 1.0))
        ->capture_default_str();
    bench->add_option("--output", bench_output, "Write the JSON report here");
    bench_flags.attach(bench);

    // codec
    auto* codec = app.add_subcommand("codec", "Evaluate T_n(Y, X | X_given) on standardized columns");
    std::string codec_input, codec_y, codec_x;
    std::vector<std::string> given;
    std::optional<std::uint64_t> codec_seed;
    codec->add_option("--input", codec_input, "CSV file with a header row")->required();
    codec->add_option("--y", codec_y, "Response column")->required();
    codec->add_option("--x", codec_x, "Candidate column")->required();
    codec->add_option("--given", given, "Comma-separated conditioning columns")->delimiter(',');
    codec->add_option("--seed", codec_seed, "Tie-breaking seed (falls back to TNVS_SEED, then 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*select) {
            const auto cfg = sel_flags.config();
            const auto data = load_csv(input, response);
            const auto result = run_selection(data, cfg);
            const auto doc = result_document(result, cfg, data.column_names(), data.n());
            write_text(output, doc.dump(2) + "\n", out);
            if (!quiet) err << describe(result, data.column_names());
        } else if (*simulate) {
            const auto spec = simulation_spec(setting, sim_seed ? *sim_seed : default_seed(), sim_n, sim_p);
            auto s = spec;
            if (sim_lambda) s.lambda = *sim_lambda;
            const auto [data, gt] = generate(s);
            const auto files = write_simulation(data, gt, out_dir);
            out << "wrote " << files.data.string() << " (" << data.n() << " x " << data.p() + 1 << ")\n"
                << "wrote " << files.ground_truth.string() << "\n";
        } else if (*bench) {
            const auto cfg = bench_flags.config();
            const std::uint64_t seed = bench_flags.seed ? *bench_flags.seed : default_seed();
            const auto spec = simulation_spec(bench_setting, seed, bench_n, bench_p);
            const std::size_t datasets = bench_datasets.value_or(std::min<std::size_t>(10, reps));
            if (datasets > reps) throw UsageError("--datasets cannot exceed --reps");
            BenchmarkOptions opt;
            opt.subsample = subsample;
            const auto rep = run_benchmark(spec, cfg, reps, datasets, opt);
            if (!bench_output.empty()) write_text(bench_output, eval_report_json(rep).dump(2) + "\n", out);
            out << table_header() << '\n' << table_row(rep, to_string(cfg.mode)) << '\n';
        } else if (*codec) {
            const auto data = load_csv(codec_input, codec_y);
            auto column_of = [&](const std::string& name) {
                const auto j = data.find_column(name);
                if (j == data.p()) throw DataError("unknown column '" + name + "'");
                return j;
            };
            const auto view = standardize(data);
            const auto xj = view.column(column_of(codec_x));
            std::vector<std::span<const double>> cond;
            for (const auto& g : given) cond.push_back(view.column(column_of(g)));
            const TieStream stream(codec_seed ? *codec_seed : default_seed());
            const auto value = cond.empty() ? codec_unconditional(data.response(), xj, stream)
                                            : codec_conditional(data.response(), xj, cond, stream);
            out << value.to_string() << '\n';
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitOk;
}

}  // namespace tnvs
