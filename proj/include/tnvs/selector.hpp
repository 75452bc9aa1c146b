#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tnvs/codec.hpp"
#include "tnvs/dataset.hpp"

namespace tnvs {

enum class SelectionMode {
    Tnvs,  ///< prefilter, forward selection, batch deletion
    Foci,  ///< forward selection only; stops once every RelS <= 0
};

struct SelectorConfig {
    double alpha1 = 0.01;   ///< uninformative threshold
    double alpha2 = -0.01;  ///< relevant threshold
    double alpha3 = 0.01;   ///< redundant threshold
    std::optional<std::size_t> d_max;  ///< defaults to ceil(n / ln n)
    std::uint64_t seed = 0;
    SelectionMode mode = SelectionMode::Tnvs;
    std::optional<double> time_budget_seconds;

    /// Throws std::invalid_argument on alpha1 < 0, alpha3 < 0, d_max == 0.
    void validate() const;
    std::size_t resolved_d_max(std::size_t n) const;
};

/// Smallest integer no less than n / ln(n).
std::size_t default_d_max(std::size_t n);

/// How conditional neighbours are searched during a run. Every strategy
/// returns identical neighbours for the same tie streams.
enum class ConditionalSearch {
    Auto,        ///< ConditioningIndex when n <= index_max_rows
    Index,       ///< always ConditioningIndex
    PointCloud,  ///< rebuild a PointCloud per candidate
};

struct SelectorOptions {
    ConditionalSearch search = ConditionalSearch::Auto;
    NeighborBackend backend = NeighborBackend::Auto;  ///< for PointCloud searches
    std::size_t index_max_rows = 4096;
};

enum class Termination {
    RelevanceBelowThreshold,
    UndefinedCodec,
    DmaxReached,
    CandidatesExhausted,
    TimeBudget,
};

std::string_view to_string(Termination t) noexcept;
std::string_view to_string(SelectionMode m) noexcept;

struct SelectedPredictor {
    std::size_t index;
    double relevance;               ///< winning RelS
    std::size_t candidates_remaining;  ///< |V| after this step's batch deletion
    double elapsed_ms;
};

struct UninformativePredictor {
    std::size_t index;
    double score;  ///< UinS
};

struct RedundantPredictor {
    std::size_t index;
    std::size_t selected_count;  ///< |S| when it was deleted
    double score;                ///< RedS
};

struct IterationRecord {
    std::size_t candidates;  ///< |V| at the start of the iteration
    CodecValue best_score;   ///< Undefined when the shared denominator was 0
    double elapsed_ms;
};

struct SelectionResult {
    std::size_t p = 0;
    std::vector<SelectedPredictor> selected;  ///< S, in selection order
    std::vector<UninformativePredictor> uninformative;
    std::vector<RedundantPredictor> redundant;
    std::vector<std::size_t> cond_independent;
    Termination termination = Termination::CandidatesExhausted;
    std::vector<IterationRecord> trace;
    double total_ms = 0.0;

    std::vector<std::size_t> selected_indices() const;
};

/// RelS(j | S): unconditional CODEC when S is empty, else CODEC conditioned on
/// the standardized columns of S.
CodecValue relevance_score(std::span<const double> y, std::span<const double> xj,
                           std::span<const std::size_t> selected, const StandardizedView& view,
                           TieStream stream);

SelectionResult run_selection(const Dataset& d, const SelectorConfig& cfg, const SelectorOptions& opt = {});

/// Human-readable listing of the four subsets, termination and timing.
std::string describe(const SelectionResult& r, std::span<const std::string> column_names);

}  // namespace tnvs
