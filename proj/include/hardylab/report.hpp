// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HARDYLAB_REPORT_HPP
#define HARDYLAB_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace hardylab {

/// One verification record: a computed value against its reference, with
/// rel_err = |computed - reference| / max(|reference|, 1e-300).
///
/// Two-sided checks pass iff rel_err <= tolerance.  One-sided checks
/// (lower bounds, monotone trends) set `pass` from the stated predicate and
/// say so in `notes`.
struct VerificationReport {
  std::string case_id;
  std::vector<std::pair<std::string, std::string>> params;
  double computed = 0.0;
  double reference = 0.0;
  double rel_err = 0.0;
  bool pass = false;
  std::string notes;
};

inline double relative_error(double computed, double reference) {
  return std::fabs(computed - reference) / std::fmax(std::fabs(reference), 1e-300);
}

inline VerificationReport make_report(std::string case_id, double computed, double reference,
                                      double tolerance, std::string notes = {},
                                      std::vector<std::pair<std::string, std::string>> params = {}) {
  VerificationReport r;
  r.case_id = std::move(case_id);
  r.params = std::move(params);
  r.computed = computed;
  r.reference = reference;
  r.rel_err = relative_error(computed, reference);
  r.pass = r.rel_err <= tolerance;
  r.notes = std::move(notes);
  return r;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

}  // namespace detail

/// One JSON object per line, keys in fixed order: deterministic bytes for
/// identical inputs.
inline std::string to_json_line(const VerificationReport& r) {
  std::string out = "{\"case_id\":\"" + detail::json_escape(r.case_id) + "\",\"params\":{";
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (i > 0) out += ",";
    out += "\"" + detail::json_escape(r.params[i].first) + "\":\"" +
           detail::json_escape(r.params[i].second) + "\"";
  }
  out += "},\"computed\":" + detail::num(r.computed);
  out += ",\"reference\":" + detail::num(r.reference);
  out += ",\"rel_err\":" + detail::num(r.rel_err);
  out += std::string(",\"pass\":") + (r.pass ? "true" : "false");
  out += ",\"notes\":\"" + detail::json_escape(r.notes) + "\"}";
  return out;
}

inline std::string csv_header() { return "case_id,computed,reference,rel_err,pass,notes,params"; }

inline std::string to_csv_line(const VerificationReport& r) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += "\"\"";
      else q += c;
    }
    return q + "\"";
  };
  std::string params;
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (i > 0) params += ";";
    params += r.params[i].first + "=" + r.params[i].second;
  }
  return quote(r.case_id) + "," + detail::num(r.computed) + "," + detail::num(r.reference) + "," +
         detail::num(r.rel_err) + "," + (r.pass ? "true" : "false") + "," + quote(r.notes) + "," +
         quote(params);
}

}  // namespace hardylab

#endif  // HARDYLAB_REPORT_HPP
