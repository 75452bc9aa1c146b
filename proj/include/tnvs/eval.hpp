#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tnvs/selector.hpp"
#include "tnvs/simgen.hpp"

namespace tnvs {

/// Ground-truth roles in table order: Rel, Uin, Red, Cind.
enum class TruthType : std::size_t { Relevant = 0, Uninformative = 1, Redundant = 2, CondIndependent = 3 };
/// Output subsets in table order: S, A1, A2, A3.
enum class OutputSubset : std::size_t { Selected = 0, Uninformative = 1, Redundant = 2, CondIndependent = 3 };

using Proportions = std::array<double, 4>;
using ProportionMatrix = std::array<Proportions, 4>;

/// Number of relevant groups that can be matched to distinct members of S.
/// With disjoint groups this is simply the number of groups hit.
std::size_t coverage_of(std::span<const std::size_t> selected, const GroundTruth& gt);

/// Shortest prefix of the selection order reaching full coverage.
std::optional<std::size_t> min_model_size(std::span<const std::size_t> selected, const GroundTruth& gt);

/// Role of every column for one run. Selected members of a relevant group are
/// Relevant; a group with no selected member keeps its first member as
/// Relevant; all other group members are Redundant.
std::vector<TruthType> truth_types(std::span<const std::size_t> selected, const GroundTruth& gt);

struct Confusion {
    Proportions precision{};          ///< truth-type shares inside S
    ProportionMatrix recall{};        ///< row = truth type, column = output subset
    bool has_selection = false;
    std::array<bool, 4> row_support{};  ///< truth type present in this run
};

Confusion confusion(const SelectionResult& result, const GroundTruth& gt);

struct RunRecord {
    std::size_t dataset = 0;
    std::size_t fold = 0;
    std::size_t coverage = 0;
    std::optional<std::size_t> model_size;
    double seconds = 0.0;
    std::size_t selected = 0;
    Termination termination = Termination::CandidatesExhausted;
    Confusion confusion;
};

struct EvalReport {
    std::size_t runs = 0;
    std::size_t full_coverage = 0;  ///< groups required for full coverage
    double pa = 0.0;
    std::optional<double> m_mean, m_sd;
    double coverage_mean = 0.0, coverage_sd = 0.0;
    double time_mean = 0.0, time_sd = 0.0;
    Proportions precision_props{};
    ProportionMatrix recall_matrix{};
    std::vector<RunRecord> records;
};

RunRecord evaluate_run(const SelectionResult& result, const GroundTruth& gt, double seconds);

/// Reduces per-run records; the result does not depend on record order.
EvalReport aggregate(std::vector<RunRecord> records, std::size_t full_coverage);

struct BenchmarkOptions {
    double subsample = 0.9;  ///< fraction of rows kept per fold
    SelectorOptions selector;
};

/// Generates `datasets` datasets and runs `reps` selections spread across them
/// (run r uses dataset r % datasets), each on a fresh seeded row subsample.
EvalReport run_benchmark(const SimulationSpec& spec, const SelectorConfig& cfg, std::size_t reps,
                         std::size_t datasets, const BenchmarkOptions& opt = {});

}  // namespace tnvs
