#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tnvs {

/// R_h = #{i : y_i <= y_h} and L_h = #{i : y_i >= y_h}; ties count inclusively.
struct RankData {
    std::vector<std::int64_t> ranks;
    std::vector<std::int64_t> antiranks;
};

RankData compute_ranks(std::span<const double> y);

}  // namespace tnvs
