#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tnvs {

/// Raised for any problem with input data: unreadable files, malformed cells,
/// shape violations.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable n x p predictor matrix plus response. Predictors are stored
/// column-major so each X_j is a contiguous span.
class Dataset {
public:
    static constexpr std::size_t kMinRows = 3;

    /// Takes ownership of column-major predictor storage. Throws DataError when
    /// shapes disagree, names repeat, a value is non-finite, or n < kMinRows.
    Dataset(std::vector<std::vector<double>> columns, std::vector<double> response,
            std::vector<std::string> column_names, std::string response_name = "Y");

    std::size_t n() const noexcept { return response_.size(); }
    std::size_t p() const noexcept { return names_.size(); }

    std::span<const double> column(std::size_t j) const {
        return {values_.data() + j * n(), n()};
    }
    std::span<const double> response() const noexcept { return response_; }
    const std::vector<std::string>& column_names() const noexcept { return names_; }
    const std::string& response_name() const noexcept { return response_name_; }

    /// Index of a predictor by name, or p() when absent.
    std::size_t find_column(std::string_view name) const;

    /// New dataset restricted to the given rows (in the given order).
    Dataset select_rows(std::span<const std::size_t> rows) const;

private:
    std::vector<double> values_;
    std::vector<double> response_;
    std::vector<std::string> names_;
    std::string response_name_;
};

/// Per-column z-scores with population standard deviation (divisor n).
/// Zero-variance columns become all-zeros and keep stddev 0.
class StandardizedView {
public:
    explicit StandardizedView(const Dataset& d);

    std::size_t n() const noexcept { return n_; }
    std::size_t p() const noexcept { return means_.size(); }
    std::span<const double> column(std::size_t j) const {
        return {values_.data() + j * n_, n_};
    }
    std::span<const double> means() const noexcept { return means_; }
    std::span<const double> stddevs() const noexcept { return stddevs_; }

private:
    std::size_t n_;
    std::vector<double> values_;
    std::vector<double> means_;
    std::vector<double> stddevs_;
};

StandardizedView standardize(const Dataset& d);

/// Reads a header-first, comma-separated numeric table; `response_column`
/// becomes the response and every other column a predictor, in file order.
Dataset load_csv(const std::filesystem::path& path, std::string_view response_column);

/// Writes predictors followed by the response column.
void write_csv(const Dataset& d, const std::filesystem::path& path);

}  // namespace tnvs
