#include "tnvs/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "tnvs/tie_stream.hpp"

namespace tnvs {

namespace {

// Kuhn's augmenting paths; groups are few so this is cheap.
bool augment(std::size_t g, const std::vector<std::vector<std::size_t>>& options,
             std::vector<std::size_t>& owner, std::vector<bool>& seen) {
    for (auto s : options[g]) {
        if (seen[s]) continue;
        seen[s] = true;
        if (owner[s] == SIZE_MAX || augment(owner[s], options, owner, seen)) {
            owner[s] = g;
            return true;
        }
    }
    return false;
}

std::size_t matching(std::span<const std::size_t> selected, const GroundTruth& gt) {
    const std::size_t groups = gt.relevant_groups.size();
    std::vector<std::vector<std::size_t>> options(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        const auto& members = gt.relevant_groups[g];
        for (std::size_t s = 0; s < selected.size(); ++s)
            if (std::find(members.begin(), members.end(), selected[s]) != members.end()) options[g].push_back(s);
    }
    std::vector<std::size_t> owner(selected.size(), SIZE_MAX);
    std::size_t matched = 0;
    for (std::size_t g = 0; g < groups; ++g) {
        std::vector<bool> seen(selected.size(), false);
        if (augment(g, options, owner, seen)) ++matched;
    }
    return matched;
}

double sample_sd(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::size_t coverage_of(std::span<const std::size_t> selected, const GroundTruth& gt) {
    return matching(selected, gt);
}

std::optional<std::size_t> min_model_size(std::span<const std::size_t> selected, const GroundTruth& gt) {
    const std::size_t full = gt.relevant_groups.size();
    for (std::size_t len = 0; len <= selected.size(); ++len)
        if (matching(selected.first(len), gt) == full) return len;
    return std::nullopt;
}

std::vector<TruthType> truth_types(std::span<const std::size_t> selected, const GroundTruth& gt) {
    const std::size_t p = gt.label_of.size();
    std::vector<TruthType> t(p, TruthType::CondIndependent);
    std::vector<bool> is_selected(p, false);
    for (auto s : selected) is_selected.at(s) = true;
    for (auto u : gt.uninformative_indices) t[u] = TruthType::Uninformative;
    for (const auto& group : gt.relevant_groups)
        for (auto j : group) t[j] = is_selected[j] ? TruthType::Relevant : TruthType::Redundant;
    for (const auto& group : gt.relevant_groups) {
        const bool hit = std::any_of(group.begin(), group.end(), [&](std::size_t j) { return is_selected[j]; });
        if (!hit && !group.empty()) t[group.front()] = TruthType::Relevant;
    }
    return t;
}

Confusion confusion(const SelectionResult& result, const GroundTruth& gt) {
    const auto selected = result.selected_indices();
    const auto types = truth_types(selected, gt);
    const std::size_t p = types.size();

    std::vector<OutputSubset> placed(p, OutputSubset::CondIndependent);
    for (auto j : selected) placed[j] = OutputSubset::Selected;
    for (const auto& e : result.uninformative) placed[e.index] = OutputSubset::Uninformative;
    for (const auto& e : result.redundant) placed[e.index] = OutputSubset::Redundant;

    Confusion c;
    std::array<std::array<std::size_t, 4>, 4> counts{};
    std::array<std::size_t, 4> row_total{};
    for (std::size_t j = 0; j < p; ++j) {
        const auto r = static_cast<std::size_t>(types[j]);
        ++counts[r][static_cast<std::size_t>(placed[j])];
        ++row_total[r];
    }
    for (std::size_t r = 0; r < 4; ++r) {
        c.row_support[r] = row_total[r] > 0;
        for (std::size_t s = 0; s < 4; ++s)
            c.recall[r][s] = row_total[r] ? static_cast<double>(counts[r][s]) / static_cast<double>(row_total[r]) : 0.0;
    }
    c.has_selection = !selected.empty();
    if (c.has_selection)
        for (std::size_t r = 0; r < 4; ++r)
            c.precision[r] = static_cast<double>(counts[r][0]) / static_cast<double>(selected.size());
    return c;
}

RunRecord evaluate_run(const SelectionResult& result, const GroundTruth& gt, double seconds) {
    const auto selected = result.selected_indices();
    RunRecord rec;
    rec.coverage = coverage_of(selected, gt);
    rec.model_size = min_model_size(selected, gt);
    rec.seconds = seconds;
    rec.selected = selected.size();
    rec.termination = result.termination;
    rec.confusion = confusion(result, gt);
    return rec;
}

EvalReport aggregate(std::vector<RunRecord> records, std::size_t full_coverage) {
    // Fixed order so floating-point sums are independent of input order.
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.dataset, a.fold) < std::tie(b.dataset, b.fold);
    });
    EvalReport rep;
    rep.runs = records.size();
    rep.full_coverage = full_coverage;
    if (records.empty()) return rep;

    std::vector<double> cov, sizes, times;
    std::size_t hits = 0, with_selection = 0;
    std::array<std::size_t, 4> row_runs{};
    for (const auto& r : records) {
        cov.push_back(static_cast<double>(r.coverage));
        times.push_back(r.seconds);
        if (r.coverage == full_coverage) ++hits;
        if (r.model_size) sizes.push_back(static_cast<double>(*r.model_size));
        if (r.confusion.has_selection) {
            ++with_selection;
            for (std::size_t t = 0; t < 4; ++t) rep.precision_props[t] += r.confusion.precision[t];
        }
        for (std::size_t t = 0; t < 4; ++t) {
            if (!r.confusion.row_support[t]) continue;
            ++row_runs[t];
            for (std::size_t s = 0; s < 4; ++s) rep.recall_matrix[t][s] += r.confusion.recall[t][s];
        }
    }
    const double runs = static_cast<double>(records.size());
    rep.pa = static_cast<double>(hits) / runs;
    rep.coverage_mean = mean_of(cov);
    rep.coverage_sd = sample_sd(cov, rep.coverage_mean);
    rep.time_mean = mean_of(times);
    rep.time_sd = sample_sd(times, rep.time_mean);
    if (!sizes.empty()) {
        rep.m_mean = mean_of(sizes);
        rep.m_sd = sample_sd(sizes, *rep.m_mean);
    }
    if (with_selection)
        for (auto& v : rep.precision_props) v /= static_cast<double>(with_selection);
    for (std::size_t t = 0; t < 4; ++t)
        if (row_runs[t])
            for (auto& v : rep.recall_matrix[t]) v /= static_cast<double>(row_runs[t]);
    rep.records = std::move(records);
    return rep;
}

EvalReport run_benchmark(const SimulationSpec& spec, const SelectorConfig& cfg, std::size_t reps,
                         std::size_t datasets, const BenchmarkOptions& opt) {
    if (reps == 0) throw std::invalid_argument("reps must be >= 1");
    if (datasets == 0 || datasets > reps) throw std::invalid_argument("datasets must be in [1, reps]");
    if (!(opt.subsample > 0.0 && opt.subsample <= 1.0)) throw std::invalid_argument("subsample must be in (0, 1]");
    spec.validate();
    cfg.validate();

    std::vector<RunRecord> records;
    std::size_t full = 0;
    for (std::size_t ds = 0; ds < datasets; ++ds) {
        SimulationSpec s = spec;
        s.seed = mix_keys(spec.seed, ds);
        auto [data, gt] = generate(s);
        full = gt.relevant_groups.size();
        const auto keep = std::max<std::size_t>(
            Dataset::kMinRows, static_cast<std::size_t>(std::floor(opt.subsample * static_cast<double>(data.n()))));

        for (std::size_t r = ds, fold = 0; r < reps; r += datasets, ++fold) {
            std::vector<std::size_t> rows(data.n());
            std::iota(rows.begin(), rows.end(), std::size_t{0});
            std::mt19937_64 rng(mix_keys(s.seed, 0xF01D0000ULL + fold));
            std::shuffle(rows.begin(), rows.end(), rng);
            rows.resize(std::min(keep, data.n()));
            std::sort(rows.begin(), rows.end());
            const auto sub = data.select_rows(rows);

            SelectorConfig c = cfg;
            c.seed = mix_keys(cfg.seed, r);
            const auto result = run_selection(sub, c, opt.selector);
            auto rec = evaluate_run(result, gt, result.total_ms / 1000.0);
            rec.dataset = ds;
            rec.fold = fold;
            records.push_back(std::move(rec));
        }
    }
    return aggregate(std::move(records), full);
}

}  // namespace tnvs
