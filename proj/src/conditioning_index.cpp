#include "tnvs/conditioning_index.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "tnvs/neighbors.hpp"

namespace tnvs {

ConditioningIndex::ConditioningIndex(std::size_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("conditioning index needs at least 2 rows");
    if (n > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("too many rows");
    dist_.assign(n * n, 0.0);
    order_.resize(n * (n - 1));
    for (std::size_t h = 0; h < n; ++h) {
        std::uint32_t* r = row(h);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (i != h) r[k++] = static_cast<std::uint32_t>(i);
    }
}

void ConditioningIndex::append(std::span<const double> column) {
    if (column.size() != n_) throw std::invalid_argument("column length does not match index");
    const std::size_t m = n_ - 1;
#pragma omp parallel
    {
        std::vector<std::uint32_t> changed;
        std::vector<std::uint32_t> kept;
        std::vector<std::uint32_t> merged(m);
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t hh = 0; hh < static_cast<std::ptrdiff_t>(n_); ++hh) {
            const auto h = static_cast<std::size_t>(hh);
            double* d = dist_.data() + h * n_;
            for (std::size_t i = 0; i < n_; ++i) {
                const double diff = column[h] - column[i];
                d[i] += diff * diff;
            }
            auto less = [d](std::uint32_t a, std::uint32_t b) { return d[a] < d[b] || (d[a] == d[b] && a < b); };
            std::uint32_t* r = row(h);
            changed.clear();
            kept.clear();
            for (std::size_t k = 0; k < m; ++k) (column[r[k]] != column[h] ? changed : kept).push_back(r[k]);
            if (dim_ == 0 || changed.size() * 8 > m) {
                std::sort(r, r + m, less);
            } else if (!changed.empty()) {
                // Untouched entries are still in order; only the moved ones
                // need sorting before a linear merge.
                std::sort(changed.begin(), changed.end(), less);
                std::merge(kept.begin(), kept.end(), changed.begin(), changed.end(), merged.begin(), less);
                std::copy(merged.begin(), merged.end(), r);
            }
        }
    }
    ++dim_;
}

std::vector<std::size_t> ConditioningIndex::conditioning_neighbors(NeighborStream stream) const {
    if (dim_ == 0) throw std::logic_error("conditioning index has no coordinates");
    const std::size_t m = n_ - 1;
    std::vector<std::size_t> out(n_);
#pragma omp parallel
    {
        std::vector<std::size_t> ties;
#pragma omp for schedule(static)
        for (std::ptrdiff_t hh = 0; hh < static_cast<std::ptrdiff_t>(n_); ++hh) {
            const auto h = static_cast<std::size_t>(hh);
            const std::uint32_t* r = row(h);
            const double best = dist(h, r[0]);
            ties.clear();
            for (std::size_t k = 0; k < m && dist(h, r[k]) == best; ++k) ties.push_back(r[k]);
            out[h] = resolve_tie(ties, stream.uniform(h));
        }
    }
    return out;
}

std::vector<std::size_t> ConditioningIndex::joint_neighbors(std::span<const double> candidate,
                                                            NeighborStream stream) const {
    if (dim_ == 0) throw std::logic_error("conditioning index has no coordinates");
    if (candidate.size() != n_) throw std::invalid_argument("candidate length does not match index");
    const std::size_t m = n_ - 1;
    std::vector<std::size_t> out(n_);
    std::vector<std::size_t> ties;
    // Called from inside parallel candidate loops; stays serial per call.
    for (std::size_t h = 0; h < n_; ++h) {
        const std::uint32_t* r = row(h);
        const double* d = dist_.data() + h * n_;
        const double c = candidate[h];
        double best = std::numeric_limits<double>::infinity();
        ties.clear();
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = r[k];
            const double base = d[i];
            if (base > best) break;
            const double diff = c - candidate[i];
            const double joint = base + diff * diff;
            if (joint < best) {
                best = joint;
                ties.clear();
                ties.push_back(i);
            } else if (joint == best) {
                ties.push_back(i);
            }
        }
        out[h] = resolve_tie(ties, stream.uniform(h));
    }
    return out;
}

}  // namespace tnvs
