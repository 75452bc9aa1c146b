#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnvs/neighbors.hpp"
#include "tnvs/ranks.hpp"
#include "tnvs/tie_stream.hpp"

namespace tnvs {

/// A CODEC estimate, or Undefined when the formula's denominator is exactly 0.
class CodecValue {
public:
    static CodecValue undefined() noexcept { return CodecValue(); }
    static CodecValue of(double v) noexcept { return CodecValue(v); }

    bool is_undefined() const noexcept { return !value_; }
    double value() const { return value_.value(); }
    double value_or(double fallback) const noexcept { return value_.value_or(fallback); }
    std::string to_string() const;

    friend bool operator==(const CodecValue&, const CodecValue&) = default;

private:
    CodecValue() = default;
    explicit CodecValue(double v) : value_(v) {}
    std::optional<double> value_;
};

/// Integer numerator/denominator of one CODEC evaluation. Both sums are exact,
/// so the Undefined test is an exact comparison with 0.
struct CodecTerms {
    std::int64_t numerator = 0;
    std::int64_t denominator = 0;

    CodecValue value() const noexcept {
        return denominator == 0 ? CodecValue::undefined()
                                : CodecValue::of(static_cast<double>(numerator) /
                                                 static_cast<double>(denominator));
    }
};

/// sum_h L_h (n - L_h); depends on y only.
std::int64_t unconditional_denominator(const RankData& r);
/// sum_h (R_h - min(R_h, R_N(h))); depends on y and the conditioning set only.
std::int64_t conditional_denominator(const RankData& r, std::span<const std::size_t> n_index);

CodecTerms unconditional_terms(const RankData& r, std::span<const std::size_t> m_index);
CodecTerms conditional_terms(const RankData& r, std::span<const std::size_t> m_index,
                             std::span<const std::size_t> n_index);

/// T_n(Y, X_j) with M from neighbours of x_j alone (stream.joint()).
CodecValue codec_unconditional(std::span<const double> y, std::span<const double> xj, TieStream stream,
                               NeighborBackend backend = NeighborBackend::Auto);

/// T_n(Y, X_j | X_G): M from (x_G, x_j) via stream.joint(), N from x_G via
/// stream.conditioning(). `given` lists the conditioning columns.
CodecValue codec_conditional(std::span<const double> y, std::span<const double> xj,
                             std::span<const std::span<const double>> given, TieStream stream,
                             NeighborBackend backend = NeighborBackend::Auto);

}  // namespace tnvs
