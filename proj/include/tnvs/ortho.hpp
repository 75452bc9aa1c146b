#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "tnvs/dataset.hpp"

namespace tnvs {

/// Thrown when a column adds no new direction to the basis.
class CollinearColumnError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Orthogonal companions Z of the selected columns, built by modified
/// Gram-Schmidt (each projection subtracted from the running residual).
class OrthoBasis {
public:
    explicit OrthoBasis(std::size_t n) : n_(n) {}

    std::size_t rows() const noexcept { return n_; }
    std::size_t size() const noexcept { return basis_.size(); }
    bool empty() const noexcept { return basis_.empty(); }
    std::span<const double> column(std::size_t k) const { return basis_[k]; }
    double norm_sq(std::size_t k) const { return norms_sq_[k]; }

    /// x minus its projection onto span(Z).
    std::vector<double> residual(std::span<const double> x) const;

    /// Appends Z_new. Throws CollinearColumnError when ||Z_new||^2 falls
    /// below 1e-12 * n.
    void extend(std::span<const double> x);

    /// Like extend, but returns false instead of throwing.
    bool try_extend(std::span<const double> x);

private:
    std::size_t n_;
    std::vector<std::vector<double>> basis_;
    std::vector<double> norms_sq_;
};

/// Returns a copy of `b` extended with x_new.
OrthoBasis extend_basis(OrthoBasis b, std::span<const double> x_new);

/// RedS: population variance of the residual of x after projection on b.
double redundancy_score(const OrthoBasis& b, std::span<const double> x);

struct BatchDeleteResult {
    std::vector<std::size_t> redundant;   ///< ascending
    std::vector<std::size_t> survivors;   ///< ascending
    std::vector<double> scores;           ///< RedS per candidate, in input order
};

/// Splits `candidates` into { RedS < alpha3 } and the rest.
BatchDeleteResult batch_delete(const OrthoBasis& b, std::span<const std::size_t> candidates,
                               const StandardizedView& view, double alpha3);

}  // namespace tnvs
