#include "tnvs/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

namespace tnvs {

Dataset::Dataset(std::vector<std::vector<double>> columns, std::vector<double> response,
                 std::vector<std::string> column_names, std::string response_name)
    : response_(std::move(response)),
      names_(std::move(column_names)),
      response_name_(std::move(response_name)) {
    if (columns.size() != names_.size())
        throw DataError("column count does not match column name count");
    if (names_.empty()) throw DataError("dataset has no predictor columns");
    if (response_.size() < kMinRows)
        throw DataError("dataset needs at least " + std::to_string(kMinRows) + " rows, got " +
                        std::to_string(response_.size()));
    std::unordered_set<std::string> seen;
    for (const auto& name : names_)
        if (!seen.insert(name).second) throw DataError("duplicate column name '" + name + "'");
    if (seen.contains(response_name_))
        throw DataError("response name '" + response_name_ + "' collides with a predictor");

    const std::size_t rows = response_.size();
    for (double v : response_)
        if (!std::isfinite(v)) throw DataError("response contains a non-finite value");
    values_.reserve(rows * columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw DataError("column '" + names_[j] + "' has " + std::to_string(columns[j].size()) +
                            " rows, expected " + std::to_string(rows));
        for (double v : columns[j])
            if (!std::isfinite(v))
                throw DataError("column '" + names_[j] + "' contains a non-finite value");
        values_.insert(values_.end(), columns[j].begin(), columns[j].end());
    }
}

std::size_t Dataset::find_column(std::string_view name) const {
    for (std::size_t j = 0; j < names_.size(); ++j)
        if (names_[j] == name) return j;
    return names_.size();
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
    std::vector<std::vector<double>> cols(p(), std::vector<double>(rows.size()));
    std::vector<double> y(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= n()) throw std::out_of_range("row index out of range");
        y[r] = response_[rows[r]];
    }
    for (std::size_t j = 0; j < p(); ++j) {
        auto src = column(j);
        for (std::size_t r = 0; r < rows.size(); ++r) cols[j][r] = src[rows[r]];
    }
    return Dataset(std::move(cols), std::move(y), names_, response_name_);
}

StandardizedView::StandardizedView(const Dataset& d)
    : n_(d.n()), values_(d.n() * d.p()), means_(d.p()), stddevs_(d.p()) {
    const double inv_n = 1.0 / static_cast<double>(n_);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(d.p()); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        auto x = d.column(j);
        double mean = 0.0;
        for (double v : x) mean += v;
        mean *= inv_n;
        double ss = 0.0;
        for (double v : x) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss * inv_n);
        means_[j] = mean;
        double* out = values_.data() + j * n_;
        // A column of identical doubles can still produce a tiny nonzero ss
        // through rounding of the mean; treat it as constant.
        bool constant = true;
        for (double v : x)
            if (v != x[0]) {
                constant = false;
                break;
            }
        if (constant || sd == 0.0) {
            stddevs_[j] = 0.0;
            std::fill(out, out + n_, 0.0);
        } else {
            stddevs_[j] = sd;
            for (std::size_t i = 0; i < n_; ++i) out[i] = (x[i] - mean) / sd;
        }
    }
}

StandardizedView standardize(const Dataset& d) { return StandardizedView(d); }

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string unquote(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, std::string_view response_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path.string() + "' is empty");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<std::string> header;
    for (auto f : split_fields(line)) header.push_back(unquote(f));

    std::size_t response_idx = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] != response_column) continue;
        if (response_idx != header.size())
            throw DataError("response column '" + std::string(response_column) + "' appears twice");
        response_idx = c;
    }
    if (response_idx == header.size())
        throw DataError("response column '" + std::string(response_column) + "' not found");

    std::vector<std::vector<double>> cols(header.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw DataError("row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(header.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            auto cell = trim(fields[c]);
            if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() ||
                !std::isfinite(v))
                throw DataError("non-numeric cell '" + std::string(cell) + "' at row " +
                                std::to_string(row) + ", column '" + header[c] + "'");
            cols[c].push_back(v);
        }
    }

    std::vector<double> y = std::move(cols[response_idx]);
    std::vector<std::vector<double>> predictors;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == response_idx) continue;
        predictors.push_back(std::move(cols[c]));
        names.push_back(header[c]);
    }
    return Dataset(std::move(predictors), std::move(y), std::move(names), std::string(response_column));
}

void write_csv(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    for (const auto& name : d.column_names()) out << name << ',';
    out << d.response_name() << '\n';
    // Shortest round-trip representation keeps files reproducible and exact.
    char buf[32];
    auto put = [&](double v) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        out.write(buf, end - buf);
    };
    for (std::size_t i = 0; i < d.n(); ++i) {
        for (std::size_t j = 0; j < d.p(); ++j) {
            put(d.column(j)[i]);
            out << ',';
        }
        put(d.response()[i]);
        out << '\n';
    }
    if (!out) throw DataError("write to '" + path.string() + "' failed");
}

}  // namespace tnvs
