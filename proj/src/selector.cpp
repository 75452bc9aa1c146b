#include "tnvs/selector.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "tnvs/conditioning_index.hpp"
#include "tnvs/ortho.hpp"
#include "tnvs/screening.hpp"

namespace tnvs {

void SelectorConfig::validate() const {
    if (!(alpha1 >= 0.0)) throw std::invalid_argument("alpha1 must be >= 0");
    if (!(alpha3 >= 0.0)) throw std::invalid_argument("alpha3 must be >= 0");
    if (!std::isfinite(alpha2)) throw std::invalid_argument("alpha2 must be finite");
    if (d_max && *d_max == 0) throw std::invalid_argument("d_max must be >= 1");
    if (time_budget_seconds && !(*time_budget_seconds >= 0.0))
        throw std::invalid_argument("time budget must be >= 0");
}

std::size_t default_d_max(std::size_t n) {
    if (n < 2) return 1;
    const double v = static_cast<double>(n) / std::log(static_cast<double>(n));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
}

std::size_t SelectorConfig::resolved_d_max(std::size_t n) const { return d_max.value_or(default_d_max(n)); }

std::string_view to_string(Termination t) noexcept {
    switch (t) {
        case Termination::RelevanceBelowThreshold: return "relevance-below-threshold";
        case Termination::UndefinedCodec: return "undefined-codec";
        case Termination::DmaxReached: return "d_max-reached";
        case Termination::CandidatesExhausted: return "candidates-exhausted";
        case Termination::TimeBudget: return "time-budget";
    }
    return "unknown";
}

std::string_view to_string(SelectionMode m) noexcept { return m == SelectionMode::Tnvs ? "tnvs" : "foci"; }

std::vector<std::size_t> SelectionResult::selected_indices() const {
    std::vector<std::size_t> out;
    out.reserve(selected.size());
    for (const auto& s : selected) out.push_back(s.index);
    return out;
}

CodecValue relevance_score(std::span<const double> y, std::span<const double> xj,
                           std::span<const std::size_t> selected, const StandardizedView& view,
                           TieStream stream) {
    if (selected.empty()) return codec_unconditional(y, xj, stream);
    std::vector<std::span<const double>> given;
    for (auto s : selected) given.push_back(view.column(s));
    return codec_conditional(y, xj, given, stream);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

SelectionResult run_selection(const Dataset& d, const SelectorConfig& cfg, const SelectorOptions& opt) {
    cfg.validate();
    const auto t0 = Clock::now();
    const std::size_t n = d.n();
    const auto view = standardize(d);
    const auto ranks = compute_ranks(d.response());
    const std::size_t d_max = cfg.resolved_d_max(n);
    const bool tnvs = cfg.mode == SelectionMode::Tnvs;

    SelectionResult res;
    res.p = d.p();
    std::vector<std::size_t> candidates;

    if (tnvs) {
        auto pf = prefilter(d, cfg.alpha1);
        for (auto j : pf.uninformative) res.uninformative.push_back({j, pf.scores[j]});
        candidates = std::move(pf.survivors);
    } else {
        // FOCI only drops zero-variance columns up front.
        for (std::size_t j = 0; j < d.p(); ++j) {
            if (view.stddevs()[j] == 0.0)
                res.uninformative.push_back({j, 0.0});
            else
                candidates.push_back(j);
        }
    }

    const bool use_index = opt.search == ConditionalSearch::Index ||
                           (opt.search == ConditionalSearch::Auto && n <= opt.index_max_rows);
    std::optional<ConditioningIndex> index;
    std::vector<std::span<const double>> selected_cols;
    OrthoBasis basis(n);
    std::vector<std::int64_t> numerators;

    for (std::size_t iter = 0;; ++iter) {
        if (candidates.empty()) {
            res.termination = Termination::CandidatesExhausted;
            break;
        }
        if (res.selected.size() >= d_max) {
            res.termination = Termination::DmaxReached;
            break;
        }
        if (cfg.time_budget_seconds && ms_since(t0) > *cfg.time_budget_seconds * 1000.0) {
            res.termination = Termination::TimeBudget;
            break;
        }

        // The denominator depends on Y and X_S only, so one check per
        // iteration decides whether every candidate's RelS is undefined.
        const bool conditional = !res.selected.empty();
        std::vector<std::size_t> n_index;
        std::int64_t denominator = 0;
        if (conditional) {
            const auto stream = TieStream::for_candidate(cfg.seed, iter, 0).conditioning();
            if (index) {
                n_index = index->conditioning_neighbors(stream);
            } else {
                n_index = nearest_neighbors(PointCloud::from_columns(selected_cols), stream, opt.backend);
            }
            denominator = conditional_denominator(ranks, n_index);
        } else {
            denominator = unconditional_denominator(ranks);
        }
        if (denominator == 0) {
            res.trace.push_back({candidates.size(), CodecValue::undefined(), ms_since(t0)});
            res.termination = Termination::UndefinedCodec;
            break;
        }

        numerators.assign(candidates.size(), 0);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t cc = 0; cc < static_cast<std::ptrdiff_t>(candidates.size()); ++cc) {
            const auto c = static_cast<std::size_t>(cc);
            const std::size_t j = candidates[c];
            const auto stream = TieStream::for_candidate(cfg.seed, iter, j).joint();
            const auto xj = view.column(j);
            std::vector<std::size_t> m_index;
            if (!conditional) {
                const std::span<const double> cols[] = {xj};
                m_index = nearest_neighbors(PointCloud::from_columns(cols), stream, opt.backend);
                numerators[c] = unconditional_terms(ranks, m_index).numerator;
            } else {
                if (index) {
                    m_index = index->joint_neighbors(xj, stream);
                } else {
                    auto cols = selected_cols;
                    cols.push_back(xj);
                    m_index = nearest_neighbors(PointCloud::from_columns(cols), stream, opt.backend);
                }
                numerators[c] = conditional_terms(ranks, m_index, n_index).numerator;
            }
        }

        // Candidates are ascending, so the first maximum is the lowest index.
        const auto best_it = std::max_element(numerators.begin(), numerators.end());
        const auto best_pos = static_cast<std::size_t>(best_it - numerators.begin());
        const double best = CodecTerms{*best_it, denominator}.value().value();
        res.trace.push_back({candidates.size(), CodecValue::of(best), ms_since(t0)});

        const bool stop = tnvs ? best < cfg.alpha2 : best <= 0.0;
        if (stop) {
            res.termination = Termination::RelevanceBelowThreshold;
            break;
        }

        const std::size_t k = candidates[best_pos];
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best_pos));
        selected_cols.push_back(view.column(k));
        if (use_index) {
            if (!index) index.emplace(n);
            index->append(view.column(k));
        }

        if (tnvs) {
            // A column already in span(Z_S) adds no direction; RedS against
            // the unchanged basis stays valid.
            basis.try_extend(view.column(k));
            if (!basis.empty() && !candidates.empty()) {
                auto bd = batch_delete(basis, candidates, view, cfg.alpha3);
                for (std::size_t c = 0; c < candidates.size(); ++c)
                    if (bd.scores[c] < cfg.alpha3)
                        res.redundant.push_back({candidates[c], res.selected.size() + 1, bd.scores[c]});
                candidates = std::move(bd.survivors);
            }
        }
        res.selected.push_back({k, best, candidates.size(), ms_since(t0)});
    }

    res.cond_independent = std::move(candidates);
    res.total_ms = ms_since(t0);
    return res;
}

std::string describe(const SelectionResult& r, std::span<const std::string> names) {
    auto name = [&](std::size_t j) { return j < names.size() ? names[j] : "#" + std::to_string(j); };
    std::ostringstream os;
    char buf[64];

    os << "Relevant subset S (" << r.selected.size() << ")\n";
    if (r.selected.empty()) os << "  no relevant predictors found\n";
    for (std::size_t s = 0; s < r.selected.size(); ++s) {
        const auto& e = r.selected[s];
        std::snprintf(buf, sizeof buf, "RelS=%+.6f", e.relevance);
        os << "  " << s + 1 << ". " << name(e.index) << "  " << buf << "  candidates left " << e.candidates_remaining
           << '\n';
    }
    os << "Uninformative subset A1 (" << r.uninformative.size() << ")\n";
    for (const auto& e : r.uninformative) {
        std::snprintf(buf, sizeof buf, "UinS=%.6f", e.score);
        os << "  " << name(e.index) << "  " << buf << '\n';
    }
    os << "Redundant subset A2 (" << r.redundant.size() << ")\n";
    for (const auto& e : r.redundant) {
        std::snprintf(buf, sizeof buf, "RedS=%.3e", e.score);
        os << "  " << name(e.index) << "  " << buf << "  after |S|=" << e.selected_count << '\n';
    }
    os << "Conditionally independent subset A3 (" << r.cond_independent.size() << ")\n";
    for (auto j : r.cond_independent) os << "  " << name(j) << '\n';

    os << "Termination: " << to_string(r.termination) << '\n';
    std::snprintf(buf, sizeof buf, "%.1f ms over %zu iterations", r.total_ms, r.trace.size());
    os << "Time: " << buf << '\n';
    for (std::size_t t = 0; t < r.trace.size(); ++t) {
        const auto& it = r.trace[t];
        std::snprintf(buf, sizeof buf, "%8.1f ms", it.elapsed_ms);
        os << "  iter " << t + 1 << ": " << it.candidates << " candidates, best " << it.best_score.to_string()
           << ", " << buf << '\n';
    }
    return os.str();
}

}  // namespace tnvs
