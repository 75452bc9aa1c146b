#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tnvs/screening.hpp"
#include "tnvs/simgen.hpp"

using namespace tnvs;

TEST(Discretize, TwoDistinctValues) {
    const std::vector<double> x{0, 0, 0, 1};
    const auto d = discretize(x);
    EXPECT_EQ(d.cell_count, 2u);
    EXPECT_EQ(d.scheme, DiscretizationScheme::DistinctValues);
    EXPECT_EQ(d.cells[0], d.cells[1]);
    EXPECT_NE(d.cells[0], d.cells[3]);
}

TEST(Discretize, ContinuousUsesLogBins) {
    std::mt19937_64 rng(1);
    const auto x = check::normal_vector(rng, 2000);
    const auto d = discretize(x);
    EXPECT_EQ(d.scheme, DiscretizationScheme::EqualWidth);
    EXPECT_EQ(d.cell_count, 11u);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    EXPECT_EQ(d.cells[lo - x.begin()], 0u);
    EXPECT_EQ(d.cells[hi - x.begin()], 10u);
}

TEST(Discretize, ConstantIsOneCell) {
    EXPECT_EQ(discretize(std::vector<double>(50, 2.5)).cell_count, 1u);
}

TEST(UninformativeScore, Examples) {
    EXPECT_EQ(uninformative_score(std::vector<double>(30, 1.0)).value, 0.0);
    const std::vector<double> u{1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4};
    EXPECT_NEAR(uninformative_score(u).value, std::log(4.0), 1e-12);

    std::vector<double> sparse(2000, 0.0);
    sparse[10] = 0.7;
    sparse[1500] = -1.3;
    const double want = -(0.999 * std::log(0.999) + 2 * 0.0005 * std::log(0.0005));
    const auto s = uninformative_score(sparse);
    EXPECT_NEAR(s.value, want, 1e-12);
    EXPECT_NEAR(s.value, 0.0086, 5e-5);
    EXPECT_LT(s.value, 0.01);
}

TEST(UninformativeScore, BoundedByLogCells) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> len(1, 400), levels(1, 30);
    for (int rep = 0; rep < 300; ++rep) {
        const auto n = static_cast<std::size_t>(len(rng));
        auto x = check::normal_vector(rng, n);
        if (rep % 2) {
            const int k = levels(rng);
            for (auto& v : x) v = std::floor(v * k);
        }
        const auto s = uninformative_score(x);
        EXPECT_GE(s.value, 0.0);
        EXPECT_LE(s.value, std::log(static_cast<double>(s.bins)) + 1e-12);
    }
}

TEST(UninformativeScore, AffineInvariantOnDistinctValues) {
    const std::vector<double> x{0, 1, 1, 2, 2, 2, 5, 5, 0, 1};
    std::vector<double> t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) t[i] = -3.0 * x[i] + 7.0;
    EXPECT_DOUBLE_EQ(uninformative_score(x).value, uninformative_score(t).value);
}

TEST(Prefilter, AllConstant) {
    Dataset d({std::vector<double>(5, 1.0), std::vector<double>(5, 2.0)}, {1, 2, 3, 4, 5}, {"a", "b"});
    const auto r = prefilter(d, 0.01);
    EXPECT_EQ(r.uninformative, (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(r.survivors.empty());
}

TEST(Prefilter, ToyFlagsOnlyX6) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto [d, gt] = generate_toy(2000, s);
        const auto r = prefilter(d, 0.01);
        EXPECT_EQ(r.uninformative, (std::vector<std::size_t>{5}));
        EXPECT_EQ(r.survivors, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
    }
}

TEST(Prefilter, SettingOneFlagsLastTenPercent) {
    const auto [d, gt] = generate(setting_spec(1, 3));
    const auto r = prefilter(d, 0.01);
    EXPECT_EQ(r.uninformative, gt.uninformative_indices);
    EXPECT_EQ(r.uninformative.size(), 100u);
    EXPECT_EQ(r.uninformative.size() + r.survivors.size(), d.p());
}
