#include "tnvs/report.hpp"

#include <cstdio>

namespace tnvs {

using nlohmann::json;

json result_document(const SelectionResult& r, const SelectorConfig& cfg, std::span<const std::string> names,
                     std::size_t n) {
    auto name = [&](std::size_t j) { return j < names.size() ? names[j] : std::string(); };

    json config = {{"alpha1", cfg.alpha1},
                   {"alpha2", cfg.alpha2},
                   {"alpha3", cfg.alpha3},
                   {"d_max", cfg.resolved_d_max(n)},
                   {"d_max_auto", !cfg.d_max.has_value()},
                   {"seed", cfg.seed},
                   {"mode", std::string(to_string(cfg.mode))},
                   {"time_budget", nullptr}};
    if (cfg.time_budget_seconds) config["time_budget"] = *cfg.time_budget_seconds;

    json selected = json::array(), uninformative = json::array(), redundant = json::array(),
         cond = json::array(), trace = json::array();
    for (std::size_t s = 0; s < r.selected.size(); ++s) {
        const auto& e = r.selected[s];
        selected.push_back({{"index", e.index}, {"name", name(e.index)}, {"rels", e.relevance}});
        trace.push_back({{"step", s + 1},
                         {"index", e.index},
                         {"name", name(e.index)},
                         {"rels", e.relevance},
                         {"candidates_remaining", e.candidates_remaining},
                         {"elapsed_ms", e.elapsed_ms}});
    }
    for (const auto& e : r.uninformative)
        uninformative.push_back({{"index", e.index}, {"name", name(e.index)}, {"uins", e.score}});
    for (const auto& e : r.redundant)
        redundant.push_back(
            {{"index", e.index}, {"name", name(e.index)}, {"reds", e.score}, {"selected_count", e.selected_count}});
    for (auto j : r.cond_independent) cond.push_back({{"index", j}, {"name", name(j)}});

    return json{{"version", std::string(kResultSchemaVersion)},
                {"config", std::move(config)},
                {"input", {{"n", n}, {"p", r.p}}},
                {"subsets",
                 {{"selected", std::move(selected)},
                  {"uninformative", std::move(uninformative)},
                  {"redundant", std::move(redundant)},
                  {"cond_independent", std::move(cond)}}},
                {"selection_trace", std::move(trace)},
                {"termination", std::string(to_string(r.termination))},
                {"timings", {{"total_ms", r.total_ms}}}};
}

json strip_timings(json doc) {
    doc.erase("timings");
    if (doc.contains("selection_trace"))
        for (auto& step : doc["selection_trace"]) step.erase("elapsed_ms");
    return doc;
}

json eval_report_json(const EvalReport& rep) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json runs = json::array();
    for (const auto& r : rep.records)
        runs.push_back({{"dataset", r.dataset},
                        {"fold", r.fold},
                        {"coverage", r.coverage},
                        {"model_size", r.model_size ? json(*r.model_size) : json(nullptr)},
                        {"selected", r.selected},
                        {"termination", std::string(to_string(r.termination))},
                        {"seconds", r.seconds}});
    static constexpr const char* kTypes[] = {"Rel_GT", "Uin_GT", "Red_GT", "Cind_GT"};
    static constexpr const char* kSubsets[] = {"Rel_pred", "Uin_pred", "Red_pred", "Cind_pred"};
    json precision = json::object(), recall = json::object();
    for (std::size_t t = 0; t < 4; ++t) {
        precision[kTypes[t]] = rep.precision_props[t];
        json row = json::object();
        for (std::size_t s = 0; s < 4; ++s) row[kSubsets[s]] = rep.recall_matrix[t][s];
        recall[kTypes[t]] = std::move(row);
    }
    return json{{"runs", rep.runs},
                {"pa", rep.pa},
                {"m_mean", opt(rep.m_mean)},
                {"m_sd", opt(rep.m_sd)},
                {"coverage_mean", rep.coverage_mean},
                {"coverage_sd", rep.coverage_sd},
                {"time_mean", rep.time_mean},
                {"time_sd", rep.time_sd},
                {"precision_props", std::move(precision)},
                {"recall_matrix", std::move(recall)},
                {"records", std::move(runs)}};
}

std::string table_header() {
    return "method      runs     Pa      M (sd)           coverage (sd)    time s (sd)";
}

std::string table_row(const EvalReport& rep, std::string_view label) {
    char m[32];
    if (rep.m_mean)
        std::snprintf(m, sizeof m, "%.2f (%.2f)", *rep.m_mean, rep.m_sd.value_or(0.0));
    else
        std::snprintf(m, sizeof m, "- (-)");
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-10.10s %5zu   %.2f    %-16s %.2f (%.2f)      %.2f (%.2f)",
                  std::string(label).c_str(), rep.runs, rep.pa, m, rep.coverage_mean, rep.coverage_sd,
                  rep.time_mean, rep.time_sd);
    return buf;
}

}  // namespace tnvs
