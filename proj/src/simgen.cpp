#include "tnvs/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "tnvs/tie_stream.hpp"

namespace tnvs {

void SimulationSpec::validate() const {
    if (scenario == Scenario::Toy) {
        if (n < 10) throw std::invalid_argument("toy data needs n >= 10");
        return;
    }
    if (p == 0 || p % 10 != 0) throw std::invalid_argument("p must be a positive multiple of 10");
    if (n < 10) throw std::invalid_argument("n must be >= 10");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(nonzero_prop >= 0.0 && nonzero_prop <= 1.0)) throw std::invalid_argument("nonzero_prop must be in [0, 1]");
    if (!(noise_sd >= 0.0)) throw std::invalid_argument("noise_sd must be >= 0");
}

SimulationSpec setting_spec(int setting, std::uint64_t seed) {
    SimulationSpec s;
    s.seed = seed;
    s.n = 2000;
    switch (setting) {
        case 1: s.p = 1000; break;
        case 2: s.p = 2000; break;
        case 3: s.p = 5000; break;
        default: throw std::invalid_argument("setting must be 1, 2 or 3");
    }
    return s;
}

SimulationSpec toy_spec(std::size_t n, std::uint64_t seed) {
    SimulationSpec s;
    s.scenario = Scenario::Toy;
    s.n = n;
    s.p = 6;
    s.seed = seed;
    return s;
}

std::string_view to_string(GroundTruthLabel l) noexcept {
    switch (l) {
        case GroundTruthLabel::RelevantSignal: return "relevant-signal";
        case GroundTruthLabel::RedundantCompanion: return "redundant-companion";
        case GroundTruthLabel::Uninformative: return "uninformative";
        case GroundTruthLabel::OtherSignal: return "other-signal";
    }
    return "unknown";
}

std::size_t uninformative_nonzero_count(std::size_t n, double nonzero_prop) {
    return std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(nonzero_prop * static_cast<double>(n))));
}

namespace {

// Every column gets its own engine so columns could be generated in any order.
std::mt19937_64 column_engine(std::uint64_t seed, std::uint64_t column) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(column), static_cast<std::uint32_t>(column >> 32), 0x7e57u};
    return std::mt19937_64(seq);
}

std::vector<double> normal_column(std::mt19937_64& rng, std::size_t n, double sd) {
    std::normal_distribution<double> dist(0.0, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

// Fixed number of nonzero entries at uniformly chosen rows.
std::vector<double> sparse_column(std::mt19937_64& rng, std::size_t n, double nonzero_prop) {
    std::vector<double> v(n, 0.0);
    const std::size_t k = uninformative_nonzero_count(n, nonzero_prop);
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    std::normal_distribution<double> dist(0.0, 0.1);
    for (std::size_t s = 0; s < k; ++s) {
        std::uniform_int_distribution<std::size_t> pick(s, n - 1);
        std::swap(rows[s], rows[pick(rng)]);
        double value = 0.0;
        while (value == 0.0) value = dist(rng);
        v[rows[s]] = value;
    }
    return v;
}

std::vector<std::string> x_names(std::size_t p) {
    std::vector<std::string> names(p);
    for (std::size_t j = 0; j < p; ++j) names[j] = "X" + std::to_string(j + 1);
    return names;
}

constexpr std::uint64_t kResponseStream = ~std::uint64_t{0};

}  // namespace

std::pair<Dataset, GroundTruth> generate_setting(const SimulationSpec& spec) {
    SimulationSpec s = spec;
    s.scenario = Scenario::Layout;
    s.validate();
    const std::size_t n = s.n, p = s.p, block = p / 10;

    GroundTruth gt;
    gt.label_of.resize(p);
    gt.group_of.assign(p, 0);
    std::vector<std::vector<double>> cols(p);

    for (std::size_t g = 0; g < 9; ++g) {
        const std::size_t t = g * block;
        gt.signal_indices.push_back(t);
        auto rng = column_engine(s.seed, t);
        cols[t] = normal_column(rng, n, 1.0);
        const bool relevant = g < 4;
        gt.label_of[t] = relevant ? GroundTruthLabel::RelevantSignal : GroundTruthLabel::OtherSignal;
        gt.group_of[t] = g + 1;
        std::vector<std::size_t> members{t};
        for (std::size_t j = 1; j < block; ++j) {
            auto crng = column_engine(s.seed, t + j);
            auto eps = normal_column(crng, n, 1.0);
            std::vector<double> c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = cols[t][i] + s.lambda * eps[i];
            cols[t + j] = std::move(c);
            gt.label_of[t + j] = relevant ? GroundTruthLabel::RedundantCompanion : GroundTruthLabel::OtherSignal;
            gt.group_of[t + j] = g + 1;
            members.push_back(t + j);
        }
        if (relevant) gt.relevant_groups.push_back(std::move(members));
    }
    for (std::size_t j = 9 * block; j < p; ++j) {
        auto rng = column_engine(s.seed, j);
        cols[j] = sparse_column(rng, n, s.nonzero_prop);
        gt.label_of[j] = GroundTruthLabel::Uninformative;
        gt.uninformative_indices.push_back(j);
    }

    auto rng = column_engine(s.seed, kResponseStream);
    auto eps = normal_column(rng, n, 1.0);
    const auto& x1 = cols[gt.signal_indices[0]];
    const auto& x2 = cols[gt.signal_indices[1]];
    const auto& x3 = cols[gt.signal_indices[2]];
    const auto& x4 = cols[gt.signal_indices[3]];
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = 2.0 * x1[i] * x2[i] + std::cos(std::numbers::pi * x3[i] * x4[i]) + s.noise_sd * eps[i];

    return {Dataset(std::move(cols), std::move(y), x_names(p), "Y"), std::move(gt)};
}

std::pair<Dataset, GroundTruth> generate_toy(std::size_t n, std::uint64_t seed) {
    toy_spec(n, seed).validate();
    std::vector<std::vector<double>> cols(6);
    for (std::size_t j = 0; j < 3; ++j) {
        auto rng = column_engine(seed, j);
        cols[j] = normal_column(rng, n, 1.0);
    }
    cols[3].resize(n);
    cols[4].resize(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cols[3][i] = cols[0][i] + cols[1][i];
        cols[4][i] = cols[0][i] + cols[2][i];
        y[i] = cols[0][i] * cols[1][i];
    }
    auto rng = column_engine(seed, 5);
    cols[5] = sparse_column(rng, n, 0.001);

    GroundTruth gt;
    // Any two of {X1, X2, X4} determine Y: X1 stands for one factor, X2 for
    // the other, and X4 can stand in for either.
    gt.relevant_groups = {{0, 3}, {1, 3}};
    gt.signal_indices = {0, 1};
    gt.uninformative_indices = {5};
    gt.label_of = {GroundTruthLabel::RelevantSignal, GroundTruthLabel::RelevantSignal,
                   GroundTruthLabel::OtherSignal,    GroundTruthLabel::RedundantCompanion,
                   GroundTruthLabel::OtherSignal,    GroundTruthLabel::Uninformative};
    gt.group_of = {1, 2, 0, 1, 0, 0};
    return {Dataset(std::move(cols), std::move(y), x_names(6), "Y"), std::move(gt)};
}

std::pair<Dataset, GroundTruth> generate(const SimulationSpec& spec) {
    return spec.scenario == Scenario::Toy ? generate_toy(spec.n, spec.seed) : generate_setting(spec);
}

WrittenFiles write_simulation(const Dataset& d, const GroundTruth& gt, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError("cannot create '" + dir.string() + "': " + ec.message());
    WrittenFiles files{dir / "data.csv", dir / "ground_truth.csv"};
    write_csv(d, files.data);

    std::ofstream out(files.ground_truth);
    if (!out) throw DataError("cannot write '" + files.ground_truth.string() + "'");
    out << "column_name,label,group_id\n";
    for (std::size_t j = 0; j < d.p(); ++j)
        out << d.column_names()[j] << ',' << to_string(gt.label_of[j]) << ',' << gt.group_of[j] << '\n';
    if (!out) throw DataError("write to '" + files.ground_truth.string() + "' failed");
    return files;
}

}  // namespace tnvs
