#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tnvs/dataset.hpp"

namespace tnvs {

enum class DiscretizationScheme { DistinctValues, EqualWidth };

struct Discretization {
    std::vector<std::size_t> cells;  ///< cell label per observation, 0-based
    std::size_t cell_count = 0;
    DiscretizationScheme scheme = DiscretizationScheme::DistinctValues;
};

/// Up to ceil(sqrt(n)) distinct values: one cell per value. Otherwise
/// floor(log2 n) + 1 equal-width bins over [min, max], max in the last bin.
Discretization discretize(std::span<const double> x);

/// Shannon entropy (nats) of the discretized column.
struct EntropyScore {
    double value = 0.0;
    std::size_t bins = 0;
    DiscretizationScheme scheme = DiscretizationScheme::DistinctValues;
};

EntropyScore uninformative_score(std::span<const double> x);

struct PrefilterResult {
    std::vector<std::size_t> uninformative;  ///< A1, ascending
    std::vector<std::size_t> survivors;      ///< complement, ascending
    std::vector<double> scores;              ///< UinS for every column
};

/// A1 = { j : UinS(j) < alpha1 }.
PrefilterResult prefilter(const Dataset& d, double alpha1);

}  // namespace tnvs
