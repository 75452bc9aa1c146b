#pragma once

#include <cstddef>
#include <cstdint>

namespace tnvs {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(a ^ splitmix64(b + 0x632BE59BD9B4E019ULL));
}

/// Counter-based source of uniforms for breaking nearest-neighbour ties.
/// Query h always consumes uniform(h), independent of evaluation order or
/// thread count, so every search backend resolves a tie identically.
class NeighborStream {
public:
    constexpr explicit NeighborStream(std::uint64_t key) noexcept : key_(key) {}

    /// Uniform in [0, 1) attached to query row h.
    constexpr double uniform(std::size_t h) const noexcept {
        return static_cast<double>(mix_keys(key_, h) >> 11) * 0x1.0p-53;
    }
    constexpr std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
};

/// The pair of neighbour streams one CODEC evaluation consumes: one for the
/// joint (conditioning + candidate) search M, one for the conditioning-only
/// search N.
class TieStream {
public:
    constexpr explicit TieStream(std::uint64_t seed) noexcept
        : joint_(mix_keys(seed, 0xA1)), conditioning_(mix_keys(seed, 0xB2)) {}

    /// Stream for scoring `candidate` at step `iteration` of a selection run.
    /// The conditioning half depends only on (seed, iteration), so N and the
    /// shared denominator are identical for every candidate of that step.
    static constexpr TieStream for_candidate(std::uint64_t seed, std::size_t iteration,
                                             std::size_t candidate) noexcept {
        const std::uint64_t step = mix_keys(seed, iteration);
        return TieStream(NeighborStream(mix_keys(mix_keys(step, 0xA1), candidate)),
                         NeighborStream(mix_keys(step, 0xB2)));
    }

    constexpr NeighborStream joint() const noexcept { return joint_; }
    constexpr NeighborStream conditioning() const noexcept { return conditioning_; }

private:
    constexpr TieStream(NeighborStream j, NeighborStream c) noexcept : joint_(j), conditioning_(c) {}
    NeighborStream joint_;
    NeighborStream conditioning_;
};

}  // namespace tnvs
