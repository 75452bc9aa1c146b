#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "tnvs/tie_stream.hpp"

namespace tnvs::check {

inline std::vector<double> normal_vector(std::mt19937_64& rng, std::size_t n, double sd = 1.0) {
    std::normal_distribution<double> d(0.0, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

/// Brute-force ranks straight from the counting definitions.
inline void oracle_ranks(const std::vector<double>& y, std::vector<std::int64_t>& r, std::vector<std::int64_t>& l) {
    const std::size_t n = y.size();
    r.assign(n, 0);
    l.assign(n, 0);
    for (std::size_t h = 0; h < n; ++h)
        for (std::size_t i = 0; i < n; ++i) {
            r[h] += y[i] <= y[h];
            l[h] += y[i] >= y[h];
        }
}

/// Brute-force nearest neighbour over row-major points; ties sorted by index
/// and entry floor(u * k) taken, u = stream.uniform(h).
inline std::vector<std::size_t> oracle_neighbors(const std::vector<std::vector<double>>& cols,
                                                 NeighborStream stream) {
    const std::size_t n = cols.front().size();
    std::vector<std::size_t> out(n);
    for (std::size_t h = 0; h < n; ++h) {
        std::vector<double> d(n, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            if (i == h) continue;
            double acc = 0.0;
            for (const auto& c : cols) {
                const double diff = c[h] - c[i];
                acc += diff * diff;
            }
            d[i] = acc;
        }
        const double best = *std::min_element(d.begin(), d.end());
        std::vector<std::size_t> ties;
        for (std::size_t i = 0; i < n; ++i)
            if (i != h && d[i] == best) ties.push_back(i);
        auto k = static_cast<std::size_t>(stream.uniform(h) * static_cast<double>(ties.size()));
        out[h] = ties[std::min(k, ties.size() - 1)];
    }
    return out;
}

/// Direct evaluation of both CODEC formulas from brute-force pieces.
/// Returns {numerator, denominator}.
inline std::pair<std::int64_t, std::int64_t> oracle_codec(const std::vector<double>& y,
                                                          const std::vector<std::size_t>& m,
                                                          const std::vector<std::size_t>* n_index) {
    std::vector<std::int64_t> r, l;
    oracle_ranks(y, r, l);
    const auto n = static_cast<std::int64_t>(y.size());
    std::int64_t num = 0, den = 0;
    for (std::size_t h = 0; h < y.size(); ++h) {
        if (n_index) {
            num += std::min(r[h], r[m[h]]) - std::min(r[h], r[(*n_index)[h]]);
            den += r[h] - std::min(r[h], r[(*n_index)[h]]);
        } else {
            num += n * std::min(r[h], r[m[h]]) - l[h] * l[h];
            den += l[h] * (n - l[h]);
        }
    }
    return {num, den};
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("tnvs_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& f) const { return path_ / f; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace tnvs::check
