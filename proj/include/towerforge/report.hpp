#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "towerforge/pipeline.hpp"

namespace towerforge {

enum class ReportFormat { Json, Csv, Text };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  throw std::invalid_argument("unknown report format '" + s + "' (expected json, csv or text)");
}

namespace detail {

inline nlohmann::ordered_json signed_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline nlohmann::ordered_json row_json(const TableRow& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["m"] = r.m;
  j["field"] = r.field();
  j["h_minus"] = r.h_minus.to_string();
  j["h"] = signed_to_json(r.h);
  j["f"] = signed_to_json(r.f);
  j["regular"] = r.regular;
  j["cond_I"] = {{"holds", r.cond_I.holds}, {"margin", signed_to_json(r.cond_I.margin)}};
  j["cond_II"] = {{"holds", r.cond_II.holds},
                  {"bound", signed_to_json(r.cond_II.bound)},
                  {"margin", signed_to_json(r.cond_II.margin)}};
  j["conclusion"] = to_string(r.conclusion);
  return j;
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace detail

/// Deterministic serialization: fixed field order, no timestamps.
inline std::string emit_report(const std::vector<TableRow>& rows, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : rows) arr.push_back(detail::row_json(r));
      return rows.empty() ? arr.dump() : arr.dump(2);
    }
    case ReportFormat::Csv: {
      std::ostringstream os;
      os << "p,m,field,h_minus,h,f,regular,cond_I,cond_I_margin,cond_II,cond_II_bound,conclusion\n";
      for (const auto& r : rows) {
        os << r.p << ',' << r.m << ',' << r.field() << ',' << r.h_minus.to_string() << ',' << r.h << ',' << r.f
           << ',' << detail::yes_no(r.regular) << ',' << detail::yes_no(r.cond_I.holds) << ',' << r.cond_I.margin
           << ',' << detail::yes_no(r.cond_II.holds) << ',' << r.cond_II.bound << ',' << to_string(r.conclusion)
           << '\n';
      }
      return os.str();
    }
    case ReportFormat::Text: {
      std::vector<std::vector<std::string>> cells{
          {"p", "K", "h-", "h", "f_{p,h}", "cond I (margin)", "cond II (bound)", "conclusion"}};
      for (const auto& r : rows) {
        cells.push_back({std::to_string(r.p), r.field(), r.h_minus.to_string(), r.h.get_str(), r.f.get_str(),
                         std::string(detail::yes_no(r.cond_I.holds)) + " (" + r.cond_I.margin.get_str() + ")",
                         std::string(detail::yes_no(r.cond_II.holds)) + " (" + r.cond_II.bound.get_str() + ")",
                         to_string(r.conclusion)});
      }
      std::vector<std::size_t> width(cells.front().size(), 0);
      for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
      std::ostringstream os;
      auto rule = [&] {
        for (std::size_t i = 0; i < width.size(); ++i) os << (i ? "-+-" : "") << std::string(width[i], '-');
        os << '\n';
      };
      for (std::size_t k = 0; k < cells.size(); ++k) {
        for (std::size_t i = 0; i < cells[k].size(); ++i) {
          os << (i ? " | " : "") << cells[k][i];
          if (i + 1 < cells[k].size()) os << std::string(width[i] - cells[k][i].size(), ' ');
        }
        os << '\n';
        if (k == 0) rule();
      }
      return os.str();
    }
  }
  throw std::invalid_argument("unknown report format");
}

inline std::string emit_report(const std::vector<CriterionReport>& reports, ReportFormat format) {
  std::vector<TableRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back(to_row(r));
  return emit_report(rows, format);
}

}  // namespace towerforge
