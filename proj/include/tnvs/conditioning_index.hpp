#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tnvs/tie_stream.hpp"

namespace tnvs {

/// Pairwise squared distances in the conditioning space X_G, grown one
/// coordinate at a time, with every row kept sorted by distance.
///
/// Joint-space neighbours for a candidate column x_j are found by walking
/// row h in increasing conditioning distance and stopping once that distance
/// alone exceeds the best joint distance, which keeps each query near
/// O(log n) work regardless of |G|. Distances are accumulated in coordinate
/// order, so results match PointCloud backends bit for bit.
///
/// Memory is n^2 doubles plus n^2 32-bit indices.
class ConditioningIndex {
public:
    explicit ConditioningIndex(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return dim_; }

    /// Adds one conditioning coordinate.
    void append(std::span<const double> column);

    /// N(h): neighbour of row h in the conditioning space. Requires dim() >= 1.
    std::vector<std::size_t> conditioning_neighbors(NeighborStream stream) const;

    /// M(h): neighbour of (x_G[h], candidate[h]) in the joint space.
    std::vector<std::size_t> joint_neighbors(std::span<const double> candidate,
                                             NeighborStream stream) const;

    static std::size_t bytes_for(std::size_t n) noexcept {
        return n * n * (sizeof(double) + sizeof(std::uint32_t));
    }

private:
    double dist(std::size_t h, std::size_t i) const noexcept { return dist_[h * n_ + i]; }
    std::uint32_t* row(std::size_t h) noexcept { return order_.data() + h * (n_ - 1); }
    const std::uint32_t* row(std::size_t h) const noexcept { return order_.data() + h * (n_ - 1); }

    std::size_t n_;
    std::size_t dim_ = 0;
    std::vector<double> dist_;
    std::vector<std::uint32_t> order_;
};

}  // namespace tnvs
