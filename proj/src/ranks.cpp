#include "tnvs/ranks.hpp"

#include <algorithm>
#include <numeric>

namespace tnvs {

RankData compute_ranks(std::span<const double> y) {
    const std::size_t n = y.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });

    RankData r{std::vector<std::int64_t>(n), std::vector<std::int64_t>(n)};
    const auto total = static_cast<std::int64_t>(n);
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo;
        while (hi < n && y[order[hi]] == y[order[lo]]) ++hi;
        // Block [lo, hi) shares one value: lo entries below it, n - hi above.
        for (std::size_t k = lo; k < hi; ++k) {
            r.ranks[order[k]] = static_cast<std::int64_t>(hi);
            r.antiranks[order[k]] = total - static_cast<std::int64_t>(lo);
        }
        lo = hi;
    }
    return r;
}

}  // namespace tnvs
