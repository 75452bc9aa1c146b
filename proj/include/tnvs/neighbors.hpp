#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tnvs/tie_stream.hpp"

namespace tnvs {

/// Row-major n x dim point set for nearest-neighbour queries.
class PointCloud {
public:
    PointCloud(std::size_t n, std::size_t dim) : n_(n), dim_(dim), coords_(n * dim) {}

    /// Point h is (columns[0][h], columns[1][h], ...).
    static PointCloud from_columns(std::span<const std::span<const double>> columns);

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return dim_; }
    const double* point(std::size_t h) const noexcept { return coords_.data() + h * dim_; }
    double* point(std::size_t h) noexcept { return coords_.data() + h * dim_; }

private:
    std::size_t n_;
    std::size_t dim_;
    std::vector<double> coords_;
};

enum class NeighborBackend {
    Auto,        ///< Sorted1D for dim 1, KdTree up to kKdTreeMaxDim, else Exhaustive
    Exhaustive,  ///< OpenMP-parallel brute force
    KdTree,
    Sorted1D,    ///< sort + adjacent groups; dim must be 1
};

inline constexpr std::size_t kKdTreeMaxDim = 16;

/// Squared Euclidean distance accumulated left to right over coordinates.
/// Every backend uses this exact summation order, so distance ties are
/// identical across backends.
inline double squared_distance(const double* a, const double* b, std::size_t dim) noexcept {
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double diff = a[d] - b[d];
        acc += diff * diff;
    }
    return acc;
}

/// Picks one of the exactly-tied indices: sorted ascending, entry floor(u * k).
std::size_t resolve_tie(std::vector<std::size_t>& ties, double u);

/// For every h, an index i != h at minimum Euclidean distance; exact ties are
/// resolved by resolve_tie with stream.uniform(h). Throws if n < 2.
std::vector<std::size_t> nearest_neighbors(const PointCloud& points, NeighborStream stream,
                                           NeighborBackend backend = NeighborBackend::Auto);

/// Serial exhaustive scan. Kept as the oracle the faster backends are
/// checked against.
std::vector<std::size_t> nearest_neighbors_reference(const PointCloud& points, NeighborStream stream);

/// Static k-d tree over a PointCloud with all-ties nearest-neighbour queries.
class KdTree {
public:
    explicit KdTree(const PointCloud& points, std::size_t leaf_size = 8);

    /// Appends every index i != exclude at minimum distance to `query`;
    /// returns that distance.
    double nearest(const double* query, std::size_t exclude, std::vector<std::size_t>& ties) const;

private:
    struct Node {
        std::size_t begin, end;
        std::size_t dim;
        double split;
        std::size_t left, right;  // 0 marks a leaf (node 0 is the root)
    };

    std::size_t build(std::size_t begin, std::size_t end);
    void search(std::size_t node, const double* query, std::size_t exclude, double& best,
                std::vector<std::size_t>& ties) const;

    const PointCloud& points_;
    std::size_t leaf_size_;
    std::vector<std::size_t> index_;
    std::vector<Node> nodes_;
};

}  // namespace tnvs
