#include "tnvs/ortho.hpp"

#include <algorithm>
#include <numeric>

namespace tnvs {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<double> OrthoBasis::residual(std::span<const double> x) const {
    if (x.size() != n_) throw std::invalid_argument("column length does not match basis");
    std::vector<double> z(x.begin(), x.end());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const double coef = dot(z, basis_[k]) / norms_sq_[k];
        const auto& zk = basis_[k];
        for (std::size_t i = 0; i < n_; ++i) z[i] -= coef * zk[i];
    }
    return z;
}

bool OrthoBasis::try_extend(std::span<const double> x) {
    auto z = residual(x);
    const double nsq = dot(z, z);
    if (!(nsq >= 1e-12 * static_cast<double>(n_))) return false;
    basis_.push_back(std::move(z));
    norms_sq_.push_back(nsq);
    return true;
}

void OrthoBasis::extend(std::span<const double> x) {
    if (!try_extend(x))
        throw CollinearColumnError("column lies in the span of the basis; delete it as redundant first");
}

OrthoBasis extend_basis(OrthoBasis b, std::span<const double> x_new) {
    b.extend(x_new);
    return b;
}

double redundancy_score(const OrthoBasis& b, std::span<const double> x) {
    const auto z = b.residual(x);
    const double n = static_cast<double>(z.size());
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : z) ss += (v - mean) * (v - mean);
    return ss / n;
}

BatchDeleteResult batch_delete(const OrthoBasis& b, std::span<const std::size_t> candidates,
                               const StandardizedView& view, double alpha3) {
    BatchDeleteResult r;
    r.scores.resize(candidates.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t kk = 0; kk < static_cast<std::ptrdiff_t>(candidates.size()); ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        r.scores[k] = redundancy_score(b, view.column(candidates[k]));
    }
    for (std::size_t k = 0; k < candidates.size(); ++k)
        (r.scores[k] < alpha3 ? r.redundant : r.survivors).push_back(candidates[k]);
    std::sort(r.redundant.begin(), r.redundant.end());
    std::sort(r.survivors.begin(), r.survivors.end());
    return r;
}

}  // namespace tnvs
