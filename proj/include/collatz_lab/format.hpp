#pragma once

// Serialization of reports and per-number results. Nat values are always
// written as decimal strings in JSON.

#include <string>
#include <vector>

#include <json.hpp>

#include "collatz_lab/claims.hpp"
#include "collatz_lab/core.hpp"

namespace collatz_lab::format {

using Json = nlohmann::ordered_json;

enum class OutputFormat { HumanTable, Json, Csv };

/// "human", "json", "csv".
std::optional<OutputFormat> parse_format(std::string_view text);

/// Field order: id, policy, range, budget, checked, counterexample_total,
/// counterexamples, inconclusive_total, inconclusive, statistics, notes,
/// verdict, elapsed. `elapsed` is last so it can be stripped for comparisons.
Json report_json(const claims::ClaimReport& report);
Json reports_json(const std::vector<claims::ClaimReport>& reports);

/// Removes every "elapsed" member, recursively.
Json without_elapsed(Json value);

std::string csv_header();
std::string csv_row(const claims::ClaimReport& report);

std::string human_report(const claims::ClaimReport& report, std::size_t max_listed = 10);

/// {"n":"3","tau":3,"ind":4,"status":"converged"}; tau and ind are null on a
/// budget hit.
Json order_json(const Nat& n, const OrderIndex& oi);

/// Comma-joined values; more than `limit` elements collapse into a trailing
/// ellipsis unless limit == 0.
std::string join_values(const std::vector<Nat>& values, std::size_t limit = 20);

std::string csv_escape(const std::string& field);

}  // namespace collatz_lab::format
