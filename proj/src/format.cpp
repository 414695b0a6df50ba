#include "collatz_lab/format.hpp"

#include <cstdio>
#include <sstream>

namespace collatz_lab::format {

using collatz_lab::to_string;
using claims::to_string;

namespace {

Json statistic_json(const claims::Statistic& s) {
  if (const auto* n = std::get_if<std::uint64_t>(&s)) return *n;
  return std::get<std::string>(s);
}

std::string statistic_text(const claims::Statistic& s) {
  if (const auto* n = std::get_if<std::uint64_t>(&s)) return std::to_string(*n);
  return std::get<std::string>(s);
}

Json findings_json(const std::vector<claims::Finding>& findings) {
  Json out = Json::array();
  for (const auto& f : findings) out.push_back(Json{{"input", f.input}, {"detail", f.detail}});
  return out;
}

std::string seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", s);
  return buf;
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view text) {
  if (text == "human") return OutputFormat::HumanTable;
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

Json report_json(const claims::ClaimReport& r) {
  Json j;
  j["id"] = r.id;
  j["policy"] = r.policy ? Json(std::string(to_string(*r.policy))) : Json(nullptr);
  j["range"] = Json{{"lo", std::to_string(r.range.lo)}, {"hi", std::to_string(r.range.hi)}};
  j["budget"] = Json{{"max_steps", r.budget.max_steps}, {"depth", r.budget.depth}, {"window", r.budget.window}};
  j["checked"] = r.checked;
  j["counterexample_total"] = r.counterexample_total;
  j["counterexamples"] = findings_json(r.counterexamples);
  j["inconclusive_total"] = r.inconclusive_total;
  j["inconclusive"] = findings_json(r.inconclusive);
  Json stats = Json::object();
  for (const auto& [k, v] : r.statistics) stats[k] = statistic_json(v);
  j["statistics"] = stats;
  j["notes"] = r.notes;
  j["verdict"] = std::string(to_string(r.verdict));
  j["elapsed"] = r.elapsed.count();
  return j;
}

Json reports_json(const std::vector<claims::ClaimReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(report_json(r));
  return out;
}

Json without_elapsed(Json value) {
  if (value.is_object()) {
    value.erase("elapsed");
    for (auto& [k, v] : value.items()) v = without_elapsed(std::move(v));
  } else if (value.is_array()) {
    for (auto& v : value) v = without_elapsed(std::move(v));
  }
  return value;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_header() {
  return "id,range_lo,range_hi,max_steps,depth,window,checked,counterexamples,inconclusive,"
         "verdict,statistics,elapsed";
}

std::string csv_row(const claims::ClaimReport& r) {
  std::string stats;
  for (const auto& [k, v] : r.statistics) {
    if (!stats.empty()) stats += ';';
    stats += k + "=" + statistic_text(v);
  }
  std::ostringstream out;
  out << r.id << ',' << r.range.lo << ',' << r.range.hi << ',' << r.budget.max_steps << ','
      << r.budget.depth << ',' << r.budget.window << ',' << r.checked << ','
      << r.counterexample_total << ',' << r.inconclusive_total << ',' << to_string(r.verdict)
      << ',' << csv_escape(stats) << ',' << seconds(r.elapsed.count());
  return out.str();
}

std::string human_report(const claims::ClaimReport& r, std::size_t max_listed) {
  std::ostringstream out;
  out << r.id << "  [" << to_string(r.verdict) << "]\n";
  out << "  range        " << r.range.lo << ".." << r.range.hi << '\n';
  out << "  budget       max_steps=" << r.budget.max_steps << " depth=" << r.budget.depth
      << " window=" << r.budget.window << '\n';
  if (r.policy) out << "  policy       " << to_string(*r.policy) << '\n';
  out << "  checked      " << r.checked << '\n';
  out << "  counterex.   " << r.counterexample_total << '\n';
  out << "  inconclusive " << r.inconclusive_total << '\n';
  auto list = [&](const char* title, const std::vector<claims::Finding>& fs, std::uint64_t total) {
    if (fs.empty()) return;
    out << "  " << title << ":\n";
    for (std::size_t i = 0; i < fs.size() && i < max_listed; ++i) {
      out << "    " << fs[i].input << ": " << fs[i].detail << '\n';
    }
    if (total > max_listed) out << "    ... (" << total - max_listed << " more)\n";
  };
  list("counterexamples", r.counterexamples, r.counterexample_total);
  list("inconclusive", r.inconclusive, r.inconclusive_total);
  if (!r.statistics.empty()) {
    out << "  statistics:\n";
    for (const auto& [k, v] : r.statistics) out << "    " << k << " = " << statistic_text(v) << '\n';
  }
  for (const auto& n : r.notes) out << "  note: " << n << '\n';
  out << "  elapsed      " << seconds(r.elapsed.count()) << " s\n";
  return out.str();
}

Json order_json(const Nat& n, const OrderIndex& oi) {
  Json j;
  j["n"] = to_string(n);
  j["tau"] = oi.tau ? Json(*oi.tau) : Json(nullptr);
  j["ind"] = oi.ind ? Json(*oi.ind) : Json(nullptr);
  j["status"] = oi.is_converged() ? "converged" : "cap_exceeded";
  return j;
}

std::string join_values(const std::vector<Nat>& values, std::size_t limit) {
  std::string out;
  const std::size_t shown = limit == 0 ? values.size() : std::min(limit, values.size());
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += to_string(values[i]);
  }
  if (shown < values.size()) out += ", ...";
  return out;
}

}  // namespace collatz_lab::format
