#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tnvs/dataset.hpp"

namespace tnvs {

enum class Scenario {
    Layout,  ///< nine signal groups plus an uninformative block (Settings 1-3)
    Toy,     ///< six-predictor example with X4 = X1 + X2, X5 = X1 + X3
};

struct SimulationSpec {
    Scenario scenario = Scenario::Layout;
    std::size_t n = 2000;
    std::size_t p = 1000;
    double lambda = 0.01;         ///< companion noise scale
    double nonzero_prop = 0.001;  ///< share of nonzero entries per uninformative column
    double noise_sd = 0.1;        ///< response noise
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument when p % 10 != 0 or n < 10 (Layout).
    void validate() const;
};

/// Settings 1, 2, 3 at their standard (n, p); `setting` outside 1..3 throws.
SimulationSpec setting_spec(int setting, std::uint64_t seed);
SimulationSpec toy_spec(std::size_t n, std::uint64_t seed);

enum class GroundTruthLabel { RelevantSignal, RedundantCompanion, Uninformative, OtherSignal };

std::string_view to_string(GroundTruthLabel l) noexcept;

struct GroundTruth {
    /// Index groups that each must be represented in S. Members of a group
    /// are interchangeable representatives; groups may overlap (toy data).
    std::vector<std::vector<std::size_t>> relevant_groups;
    std::vector<std::size_t> signal_indices;         ///< 0-based t_1..t_9 (Layout)
    std::vector<std::size_t> uninformative_indices;
    std::vector<GroundTruthLabel> label_of;          ///< one per column
    std::vector<std::size_t> group_of;               ///< 1-based group id, 0 for none
};

/// Number of nonzero entries in each uninformative column.
std::size_t uninformative_nonzero_count(std::size_t n, double nonzero_prop);

std::pair<Dataset, GroundTruth> generate_setting(const SimulationSpec& spec);
std::pair<Dataset, GroundTruth> generate_toy(std::size_t n, std::uint64_t seed);
std::pair<Dataset, GroundTruth> generate(const SimulationSpec& spec);

struct WrittenFiles {
    std::filesystem::path data;
    std::filesystem::path ground_truth;
};

/// Writes `<dir>/data.csv` (predictors then "Y") and `<dir>/ground_truth.csv`
/// with columns column_name,label,group_id.
WrittenFiles write_simulation(const Dataset& d, const GroundTruth& gt, const std::filesystem::path& dir);

}  // namespace tnvs
