#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tnvs/eval.hpp"
#include "tnvs/selector.hpp"

namespace tnvs {

inline constexpr std::string_view kResultSchemaVersion = "1";

/// Machine-readable selection result (schema version "1"). Indices are 0-based
/// predictor positions; names come from the input header.
nlohmann::json result_document(const SelectionResult& r, const SelectorConfig& cfg,
                               std::span<const std::string> names, std::size_t n);

/// Drops every wall-clock field so two documents can be compared byte-for-byte.
nlohmann::json strip_timings(nlohmann::json doc);

nlohmann::json eval_report_json(const EvalReport& rep);

/// One row of the effectiveness table:
/// Pa, M mean (sd), coverage mean (sd), time mean (sd).
std::string table_header();
std::string table_row(const EvalReport& rep, std::string_view label);

}  // namespace tnvs
