#include "tnvs/screening.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace tnvs {

Discretization discretize(std::span<const double> x) {
    const std::size_t n = x.size();
    Discretization out;
    out.cells.resize(n);
    if (n == 0) return out;

    const auto distinct_cap = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::unordered_map<double, std::size_t> label;
    bool too_many = false;
    for (std::size_t i = 0; i < n && !too_many; ++i) {
        auto [it, inserted] = label.try_emplace(x[i], label.size());
        too_many = inserted && label.size() > distinct_cap;
        out.cells[i] = it->second;
    }
    if (!too_many) {
        out.cell_count = label.size();
        out.scheme = DiscretizationScheme::DistinctValues;
        return out;
    }

    const auto bins = static_cast<std::size_t>(std::bit_width(n));  // floor(log2 n) + 1
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it, hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i < n; ++i) {
        auto b = static_cast<std::size_t>((x[i] - lo) / width);
        out.cells[i] = std::min(b, bins - 1);
    }
    out.cell_count = bins;
    out.scheme = DiscretizationScheme::EqualWidth;
    return out;
}

EntropyScore uninformative_score(std::span<const double> x) {
    const auto disc = discretize(x);
    std::vector<std::size_t> counts(disc.cell_count, 0);
    for (auto c : disc.cells) ++counts[c];
    const double n = static_cast<double>(x.size());
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double pk = static_cast<double>(c) / n;
        h -= pk * std::log(pk);
    }
    return {std::max(h, 0.0), disc.cell_count, disc.scheme};
}

PrefilterResult prefilter(const Dataset& d, double alpha1) {
    if (!(alpha1 >= 0.0)) throw std::invalid_argument("alpha1 must be >= 0");
    PrefilterResult r;
    r.scores.resize(d.p());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(d.p()); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        r.scores[j] = uninformative_score(d.column(j)).value;
    }
    for (std::size_t j = 0; j < d.p(); ++j) (r.scores[j] < alpha1 ? r.uninformative : r.survivors).push_back(j);
    return r;
}

}  // namespace tnvs
