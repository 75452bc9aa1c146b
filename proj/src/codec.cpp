#include "tnvs/codec.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace tnvs {

std::string CodecValue::to_string() const {
    if (is_undefined()) return "undefined";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *value_);
    return buf;
}

std::int64_t unconditional_denominator(const RankData& r) {
    const auto n = static_cast<std::int64_t>(r.antiranks.size());
    std::int64_t den = 0;
    for (auto l : r.antiranks) den += l * (n - l);
    return den;
}

std::int64_t conditional_denominator(const RankData& r, std::span<const std::size_t> n_index) {
    std::int64_t den = 0;
    for (std::size_t h = 0; h < n_index.size(); ++h)
        den += r.ranks[h] - std::min(r.ranks[h], r.ranks[n_index[h]]);
    return den;
}

CodecTerms unconditional_terms(const RankData& r, std::span<const std::size_t> m_index) {
    const auto n = static_cast<std::int64_t>(r.ranks.size());
    CodecTerms t;
    for (std::size_t h = 0; h < m_index.size(); ++h) {
        const std::int64_t l = r.antiranks[h];
        t.numerator += n * std::min(r.ranks[h], r.ranks[m_index[h]]) - l * l;
    }
    t.denominator = unconditional_denominator(r);
    return t;
}

CodecTerms conditional_terms(const RankData& r, std::span<const std::size_t> m_index,
                             std::span<const std::size_t> n_index) {
    CodecTerms t;
    for (std::size_t h = 0; h < m_index.size(); ++h)
        t.numerator += std::min(r.ranks[h], r.ranks[m_index[h]]) - std::min(r.ranks[h], r.ranks[n_index[h]]);
    t.denominator = conditional_denominator(r, n_index);
    return t;
}

CodecValue codec_unconditional(std::span<const double> y, std::span<const double> xj, TieStream stream,
                               NeighborBackend backend) {
    if (y.size() != xj.size()) throw std::invalid_argument("y and x_j differ in length");
    if (y.size() < 3) throw std::invalid_argument("CODEC needs n >= 3");
    const auto ranks = compute_ranks(y);
    const std::span<const double> cols[] = {xj};
    const auto m = nearest_neighbors(PointCloud::from_columns(cols), stream.joint(), backend);
    return unconditional_terms(ranks, m).value();
}

CodecValue codec_conditional(std::span<const double> y, std::span<const double> xj,
                             std::span<const std::span<const double>> given, TieStream stream,
                             NeighborBackend backend) {
    if (y.size() != xj.size()) throw std::invalid_argument("y and x_j differ in length");
    if (given.empty()) throw std::invalid_argument("conditional CODEC needs a conditioning column");
    for (auto g : given)
        if (g.size() != y.size()) throw std::invalid_argument("conditioning column length mismatch");
    if (y.size() < 3) throw std::invalid_argument("CODEC needs n >= 3");

    const auto ranks = compute_ranks(y);
    std::vector<std::span<const double>> joint(given.begin(), given.end());
    joint.push_back(xj);
    // The conditioning-only cloud has dim q; Sorted1D is fine there for q = 1.
    auto pick = [&](std::size_t dim) {
        return (backend == NeighborBackend::Sorted1D && dim != 1) ? NeighborBackend::Auto : backend;
    };
    const auto n_index =
        nearest_neighbors(PointCloud::from_columns(given), stream.conditioning(), pick(given.size()));
    const auto m_index =
        nearest_neighbors(PointCloud::from_columns(joint), stream.joint(), pick(joint.size()));
    return conditional_terms(ranks, m_index, n_index).value();
}

}  // namespace tnvs
