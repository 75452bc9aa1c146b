#include "tnvs/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tnvs {

PointCloud PointCloud::from_columns(std::span<const std::span<const double>> columns) {
    if (columns.empty()) throw std::invalid_argument("point cloud needs at least one coordinate");
    const std::size_t n = columns.front().size();
    PointCloud pc(n, columns.size());
    for (std::size_t d = 0; d < columns.size(); ++d) {
        if (columns[d].size() != n) throw std::invalid_argument("coordinate columns differ in length");
        for (std::size_t h = 0; h < n; ++h) pc.point(h)[d] = columns[d][h];
    }
    return pc;
}

std::size_t resolve_tie(std::vector<std::size_t>& ties, double u) {
    if (ties.size() == 1) return ties.front();
    std::sort(ties.begin(), ties.end());
    auto k = static_cast<std::size_t>(u * static_cast<double>(ties.size()));
    return ties[std::min(k, ties.size() - 1)];
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t scan_one(const PointCloud& pts, std::size_t h, double u, std::vector<std::size_t>& ties) {
    ties.clear();
    double best = kInf;
    const double* q = pts.point(h);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == h) continue;
        const double d = squared_distance(q, pts.point(i), pts.dim());
        if (d < best) {
            best = d;
            ties.clear();
            ties.push_back(i);
        } else if (d == best) {
            ties.push_back(i);
        }
    }
    return resolve_tie(ties, u);
}

std::vector<std::size_t> exhaustive(const PointCloud& pts, NeighborStream stream) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> out(n);
#pragma omp parallel
    {
        std::vector<std::size_t> ties;
#pragma omp for schedule(static)
        for (std::ptrdiff_t hh = 0; hh < static_cast<std::ptrdiff_t>(n); ++hh) {
            const auto h = static_cast<std::size_t>(hh);
            out[h] = scan_one(pts, h, stream.uniform(h), ties);
        }
    }
    return out;
}

std::vector<std::size_t> kdtree(const PointCloud& pts, NeighborStream stream) {
    const std::size_t n = pts.size();
    KdTree tree(pts);
    std::vector<std::size_t> out(n);
#pragma omp parallel
    {
        std::vector<std::size_t> ties;
#pragma omp for schedule(static)
        for (std::ptrdiff_t hh = 0; hh < static_cast<std::ptrdiff_t>(n); ++hh) {
            const auto h = static_cast<std::size_t>(hh);
            ties.clear();
            tree.nearest(pts.point(h), h, ties);
            out[h] = resolve_tie(ties, stream.uniform(h));
        }
    }
    return out;
}

// One dimension: sort once, then each point's nearest neighbours live in its
// own value group or the adjacent groups.
std::vector<std::size_t> sorted_1d(const PointCloud& pts, NeighborStream stream) {
    if (pts.dim() != 1) throw std::invalid_argument("Sorted1D backend requires dim 1");
    const std::size_t n = pts.size();
    auto x = [&](std::size_t i) { return *pts.point(i); };

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x(a) < x(b) || (x(a) == x(b) && a < b);
    });
    // group_start[g] .. group_start[g+1] is one run of equal values.
    std::vector<std::size_t> group_start;
    std::vector<std::size_t> group_of(n);
    std::vector<std::size_t> pos_of(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == 0 || x(order[k]) != x(order[k - 1])) group_start.push_back(k);
        group_of[order[k]] = group_start.size() - 1;
        pos_of[order[k]] = k;
    }
    const std::size_t groups = group_start.size();
    group_start.push_back(n);
    auto gval = [&](std::size_t g) { return x(order[group_start[g]]); };
    auto gdist = [&](double v, std::size_t g) {
        const double diff = v - gval(g);
        return diff * diff;
    };

    std::vector<std::size_t> out(n);
#pragma omp parallel
    {
        std::vector<std::size_t> ties;
#pragma omp for schedule(static)
        for (std::ptrdiff_t hh = 0; hh < static_cast<std::ptrdiff_t>(n); ++hh) {
            const auto h = static_cast<std::size_t>(hh);
            const double u = stream.uniform(h);
            const std::size_t g = group_of[h];
            const std::size_t lo = group_start[g], hi = group_start[g + 1];
            if (hi - lo > 1) {
                // Distance 0 to the rest of the group; indices there are sorted.
                auto k = static_cast<std::size_t>(u * static_cast<double>(hi - lo - 1));
                k = std::min(k, hi - lo - 2);
                const std::size_t self = pos_of[h] - lo;
                out[h] = order[lo + (k < self ? k : k + 1)];
                continue;
            }
            const double v = x(h);
            double best = kInf;
            if (g > 0) best = gdist(v, g - 1);
            if (g + 1 < groups) best = std::min(best, gdist(v, g + 1));
            // Rounding can make a farther group tie the adjacent one, so walk
            // outward while the squared distance still equals the best.
            ties.clear();
            for (std::size_t gg = g; gg-- > 0 && gdist(v, gg) == best;)
                for (std::size_t k = group_start[gg]; k < group_start[gg + 1]; ++k) ties.push_back(order[k]);
            for (std::size_t gg = g + 1; gg < groups && gdist(v, gg) == best; ++gg)
                for (std::size_t k = group_start[gg]; k < group_start[gg + 1]; ++k) ties.push_back(order[k]);
            out[h] = resolve_tie(ties, u);
        }
    }
    return out;
}

}  // namespace

std::vector<std::size_t> nearest_neighbors(const PointCloud& points, NeighborStream stream,
                                           NeighborBackend backend) {
    if (points.size() < 2) throw std::invalid_argument("nearest neighbours need at least 2 points");
    if (points.dim() == 0) throw std::invalid_argument("nearest neighbours need dim >= 1");
    if (backend == NeighborBackend::Auto) {
        if (points.dim() == 1)
            backend = NeighborBackend::Sorted1D;
        else if (points.dim() <= kKdTreeMaxDim)
            backend = NeighborBackend::KdTree;
        else
            backend = NeighborBackend::Exhaustive;
    }
    switch (backend) {
        case NeighborBackend::Sorted1D: return sorted_1d(points, stream);
        case NeighborBackend::KdTree: return kdtree(points, stream);
        default: return exhaustive(points, stream);
    }
}

std::vector<std::size_t> nearest_neighbors_reference(const PointCloud& points, NeighborStream stream) {
    if (points.size() < 2) throw std::invalid_argument("nearest neighbours need at least 2 points");
    std::vector<std::size_t> out(points.size());
    std::vector<std::size_t> ties;
    for (std::size_t h = 0; h < points.size(); ++h) out[h] = scan_one(points, h, stream.uniform(h), ties);
    return out;
}

KdTree::KdTree(const PointCloud& points, std::size_t leaf_size)
    : points_(points), leaf_size_(std::max<std::size_t>(leaf_size, 1)), index_(points.size()) {
    std::iota(index_.begin(), index_.end(), std::size_t{0});
    nodes_.reserve(2 * points.size() / leaf_size_ + 1);
    if (!index_.empty()) build(0, index_.size());
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back({begin, end, 0, 0.0, 0, 0});
    if (end - begin <= leaf_size_) return id;

    const std::size_t dim = points_.dim();
    std::size_t best_dim = 0;
    double best_spread = -1.0;
    for (std::size_t d = 0; d < dim; ++d) {
        double lo = kInf, hi = -kInf;
        for (std::size_t k = begin; k < end; ++k) {
            const double v = points_.point(index_[k])[d];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            best_dim = d;
        }
    }
    if (best_spread <= 0.0) return id;  // all points coincide

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(begin),
                     index_.begin() + static_cast<std::ptrdiff_t>(mid),
                     index_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                         return points_.point(a)[best_dim] < points_.point(b)[best_dim];
                     });
    const double split = points_.point(index_[mid])[best_dim];
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    nodes_[id].dim = best_dim;
    nodes_[id].split = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

double KdTree::nearest(const double* query, std::size_t exclude, std::vector<std::size_t>& ties) const {
    double best = kInf;
    if (!nodes_.empty()) search(0, query, exclude, best, ties);
    return best;
}

void KdTree::search(std::size_t node, const double* query, std::size_t exclude, double& best,
                    std::vector<std::size_t>& ties) const {
    const Node& nd = nodes_[node];
    if (nd.left == 0) {
        for (std::size_t k = nd.begin; k < nd.end; ++k) {
            const std::size_t i = index_[k];
            if (i == exclude) continue;
            const double d = squared_distance(query, points_.point(i), points_.dim());
            if (d < best) {
                best = d;
                ties.clear();
                ties.push_back(i);
            } else if (d == best) {
                ties.push_back(i);
            }
        }
        return;
    }
    // Left subtree holds coordinates <= split, right holds >= split.
    const double diff = query[nd.dim] - nd.split;
    const std::size_t near = diff < 0.0 ? nd.left : nd.right;
    const std::size_t far = diff < 0.0 ? nd.right : nd.left;
    search(near, query, exclude, best, ties);
    // Inclusive bound: a far point at exactly `best` is still a tie.
    if (diff * diff <= best) search(far, query, exclude, best, ties);
}

}  // namespace tnvs
