#pragma once

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "belyi/expectations.hpp"
#include "belyi/experiments.hpp"
#include "belyi/roots.hpp"

namespace belyi {

enum class OutputFormat { csv, json };

/// Shortest text that round-trips: 17 significant digits.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline double parse_number(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw std::runtime_error("malformed number in CSV: '" + s + "'");
  return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Aggregate

inline std::vector<std::string> aggregate_columns(int k_max) {
  std::vector<std::string> cols = {"n", "trials", "mean_F", "var_F", "mean_genus", "simple_frac", "connected_frac"};
  for (int k = 1; k <= k_max; ++k) cols.push_back("mean_X" + std::to_string(k));
  cols.insert(cols.end(), {"ref_lower_sum", "ref_upper_bound", "d", "connected_trials", "mean_F_connected",
                           "mean_genus_all"});
  for (int k = 1; k <= k_max; ++k) cols.push_back("var_X" + std::to_string(k));
  for (int k = 1; k <= k_max; ++k) cols.push_back("ref_EX" + std::to_string(k));
  return cols;
}

inline void write_aggregate_csv(std::ostream& os, const Aggregate& agg) {
  const auto cols = aggregate_columns(agg.k_max);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& s : agg.sizes) {
    os << s.n << ',' << s.trials << ',' << format_number(s.mean_faces) << ',' << format_number(s.var_faces) << ','
       << format_number(s.mean_genus) << ',' << format_number(s.simple_fraction) << ','
       << format_number(s.connected_fraction);
    for (double x : s.mean_cycles) os << ',' << format_number(x);
    os << ',' << format_number(s.ref_lower_sum) << ',' << format_number(s.ref_upper_bound) << ',' << agg.d << ','
       << s.connected_trials << ',' << format_number(s.mean_faces_connected) << ','
       << format_number(s.mean_genus_all);
    for (double x : s.var_cycles) os << ',' << format_number(x);
    for (double x : s.ref_cycles) os << ',' << format_number(x);
    os << '\n';
  }
}

inline Aggregate read_aggregate_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("aggregate CSV is empty");
  const auto header = detail::split_csv(line);
  int k_max = 0;
  while (std::find(header.begin(), header.end(), "mean_X" + std::to_string(k_max + 1)) != header.end()) ++k_max;
  if (header != aggregate_columns(k_max)) throw std::runtime_error("aggregate CSV header not recognised");

  Aggregate agg;
  agg.k_max = k_max;
  bool have_d = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != header.size()) throw std::runtime_error("aggregate CSV row has wrong width");
    std::size_t c = 0;
    auto next = [&] { return detail::parse_number(cells[c++]); };
    SizeSummary s;
    s.n = static_cast<int>(next());
    s.trials = static_cast<int>(next());
    s.mean_faces = next();
    s.var_faces = next();
    s.mean_genus = next();
    s.simple_fraction = next();
    s.connected_fraction = next();
    for (int k = 0; k < k_max; ++k) s.mean_cycles.push_back(next());
    s.ref_lower_sum = next();
    s.ref_upper_bound = next();
    const int d = static_cast<int>(next());
    if (have_d && d != agg.d) throw std::runtime_error("aggregate CSV mixes degrees");
    agg.d = d;
    have_d = true;
    s.connected_trials = static_cast<int>(next());
    s.mean_faces_connected = next();
    s.mean_genus_all = next();
    for (int k = 0; k < k_max; ++k) s.var_cycles.push_back(next());
    for (int k = 0; k < k_max; ++k) s.ref_cycles.push_back(next());
    agg.sizes.push_back(std::move(s));
  }
  return agg;
}

inline nlohmann::json to_json(const Aggregate& agg) {
  nlohmann::json j;
  j["d"] = agg.d;
  j["k_max"] = agg.k_max;
  j["sizes"] = nlohmann::json::array();
  for (const auto& s : agg.sizes) {
    j["sizes"].push_back({{"n", s.n},
                          {"trials", s.trials},
                          {"mean_F", s.mean_faces},
                          {"var_F", s.var_faces},
                          {"mean_genus", s.mean_genus},
                          {"simple_frac", s.simple_fraction},
                          {"connected_frac", s.connected_fraction},
                          {"mean_X", s.mean_cycles},
                          {"ref_lower_sum", s.ref_lower_sum},
                          {"ref_upper_bound", s.ref_upper_bound},
                          {"connected_trials", s.connected_trials},
                          {"mean_F_connected", s.mean_faces_connected},
                          {"mean_genus_all", s.mean_genus_all},
                          {"var_X", s.var_cycles},
                          {"ref_EX", s.ref_cycles}});
  }
  return j;
}

inline Aggregate aggregate_from_json(const nlohmann::json& j) {
  Aggregate agg;
  agg.d = j.at("d").get<int>();
  agg.k_max = j.at("k_max").get<int>();
  for (const auto& r : j.at("sizes")) {
    SizeSummary s;
    s.n = r.at("n").get<int>();
    s.trials = r.at("trials").get<int>();
    s.mean_faces = r.at("mean_F").get<double>();
    s.var_faces = r.at("var_F").get<double>();
    s.mean_genus = r.at("mean_genus").get<double>();
    s.simple_fraction = r.at("simple_frac").get<double>();
    s.connected_fraction = r.at("connected_frac").get<double>();
    s.mean_cycles = r.at("mean_X").get<std::vector<double>>();
    s.ref_lower_sum = r.at("ref_lower_sum").get<double>();
    s.ref_upper_bound = r.at("ref_upper_bound").get<double>();
    s.connected_trials = r.at("connected_trials").get<int>();
    s.mean_faces_connected = r.at("mean_F_connected").get<double>();
    s.mean_genus_all = r.at("mean_genus_all").get<double>();
    s.var_cycles = r.at("var_X").get<std::vector<double>>();
    s.ref_cycles = r.at("ref_EX").get<std::vector<double>>();
    agg.sizes.push_back(std::move(s));
  }
  return agg;
}

// ---------------------------------------------------------------------------
// Trial records

inline void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records, int k_max) {
  os << "n,trial,F,face_length_total,chi,connected,simple,genus,total_genus,rejections";
  for (int k = 1; k <= k_max; ++k) os << ",X" << k;
  os << ",face_length_histogram\n";
  for (const auto& r : records) {
    os << r.n << ',' << r.trial << ',' << r.faces << ',' << r.face_length_total << ',' << r.euler_characteristic
       << ',' << r.connected << ',' << r.simple << ',';
    if (r.genus) os << *r.genus;
    os << ',' << r.total_genus << ',' << r.rejections;
    for (auto x : r.cycle_counts) os << ',' << x;
    os << ',';
    for (std::size_t b = 0; b < r.face_length_histogram.size(); ++b)
      os << (b ? ";" : "") << r.face_length_histogram[b];
    os << '\n';
  }
}

inline nlohmann::json to_json(const TrialRecord& r) {
  nlohmann::json j = {{"n", r.n},
                      {"trial", r.trial},
                      {"F", r.faces},
                      {"face_length_total", r.face_length_total},
                      {"chi", r.euler_characteristic},
                      {"connected", r.connected},
                      {"simple", r.simple},
                      {"total_genus", r.total_genus},
                      {"rejections", r.rejections},
                      {"X", r.cycle_counts},
                      {"face_length_histogram", r.face_length_histogram}};
  j["genus"] = r.genus ? nlohmann::json(*r.genus) : nlohmann::json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Expectation table

inline void write_expectation_csv(std::ostream& os, const ExpectationTable& t) {
  os << "k,E_Xk_exact,a_k_exact,a_k_asymptotic\n";
  for (const auto& r : t.rows)
    os << r.k << ',' << format_number(r.expected_cycles) << ',' << format_number(r.a_k) << ','
       << format_number(r.a_k_asymptotic) << '\n';
  auto opt = [](const auto& v, auto get) { return v ? format_number(get(*v)) : std::string("NA"); };
  os << '\n';
  os << "n," << t.n << '\n';
  os << "d," << t.d << '\n';
  os << "m," << t.m << '\n';
  os << "lower_bound_sum," << opt(t.lower_bound_sum, [](double x) { return x; }) << '\n';
  os << "small_face_upper_bound," << opt(t.face_bound, [](const FaceCountBound& b) { return b.small_face_sum; })
     << '\n';
  os << "large_face_bound," << opt(t.face_bound, [](const FaceCountBound& b) { return b.large_face_bound; })
     << '\n';
  os << "total_face_bound," << opt(t.face_bound, [](const FaceCountBound& b) { return b.total; }) << '\n';
  os << "p_simple_asymptotic," << format_number(t.p_simple_asymptotic) << '\n';
}

inline nlohmann::json to_json(const ExpectationTable& t) {
  nlohmann::json j = {{"n", t.n}, {"d", t.d}, {"m", t.m}, {"p_simple_asymptotic", t.p_simple_asymptotic}};
  j["rows"] = nlohmann::json::array();
  for (const auto& r : t.rows)
    j["rows"].push_back(
        {{"k", r.k}, {"E_Xk_exact", r.expected_cycles}, {"a_k_exact", r.a_k}, {"a_k_asymptotic", r.a_k_asymptotic}});
  j["lower_bound_sum"] = t.lower_bound_sum ? nlohmann::json(*t.lower_bound_sum) : nlohmann::json(nullptr);
  if (t.face_bound) {
    j["small_face_upper_bound"] = t.face_bound->small_face_sum;
    j["large_face_bound"] = t.face_bound->large_face_bound;
    j["total_face_bound"] = t.face_bound->total;
  } else {
    j["small_face_upper_bound"] = j["large_face_bound"] = j["total_face_bound"] = nullptr;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Roots

inline nlohmann::json to_json(const RootPath& r) {
  return {{"vertices", r.vertices},
          {"defect", r.defect ? nlohmann::json(*r.defect) : nlohmann::json(nullptr)},
          {"length", r.length()}};
}

// ---------------------------------------------------------------------------
// Plot

/// Mean F against n on a log-x axis, with sqrt(n) and log(n) reference
/// curves scaled to pass through the smallest-n point.
inline void write_faces_svg(std::ostream& os, const Aggregate& agg) {
  constexpr double width = 640, height = 400, left = 60, right = 20, top = 30, bottom = 50;
  auto sizes = agg.sizes;
  std::sort(sizes.begin(), sizes.end(), [](const auto& a, const auto& b) { return a.n < b.n; });

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (sizes.empty()) {
    os << "</svg>\n";
    return;
  }

  const double n_lo = sizes.front().n / 1.25, n_hi = sizes.back().n * 1.25;
  const double sqrt_scale = sizes.front().mean_faces / std::sqrt(static_cast<double>(sizes.front().n));
  const double log_scale = sizes.front().mean_faces / std::log(static_cast<double>(sizes.front().n));
  double y_hi = 0.0;
  for (const auto& s : sizes)
    y_hi = std::max({y_hi, s.mean_faces, sqrt_scale * std::sqrt(static_cast<double>(s.n)),
                     log_scale * std::log(static_cast<double>(s.n))});
  y_hi *= 1.1;

  auto px = [&](double n) { return left + (std::log(n) - std::log(n_lo)) / (std::log(n_hi) - std::log(n_lo)) * (width - left - right); };
  auto py = [&](double y) { return height - bottom - y / y_hi * (height - top - bottom); };
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return std::string(buf);
  };

  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  for (const auto& s : sizes)
    os << "<text x=\"" << num(px(s.n)) << "\" y=\"" << height - bottom + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
       << s.n << "</text>\n";
  os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10
     << "\" font-size=\"12\" text-anchor=\"middle\">n (log scale)</text>\n";
  os << "<text x=\"15\" y=\"" << top - 10 << "\" font-size=\"12\">mean F (y max " << num(y_hi) << ")</text>\n";

  auto curve = [&](auto f, const char* colour, const char* dash, const char* label) {
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\"" << dash << " points=\"";
    constexpr int steps = 64;
    for (int i = 0; i <= steps; ++i) {
      const double n = std::exp(std::log(n_lo) + (std::log(n_hi) - std::log(n_lo)) * i / steps);
      os << (i ? " " : "") << num(px(n)) << ',' << num(py(f(n)));
    }
    os << "\"/>\n";
    os << "<text x=\"" << width - right - 4 << "\" y=\"" << num(py(f(n_hi)) - 4)
       << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << colour << "\">" << label << "</text>\n";
  };
  curve([&](double n) { return sqrt_scale * std::sqrt(n); }, "#c0392b", " stroke-dasharray=\"6,4\"", "c sqrt(n)");
  curve([&](double n) { return log_scale * std::log(n); }, "#2874a6", " stroke-dasharray=\"2,3\"", "c log(n)");

  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < sizes.size(); ++i)
    os << (i ? " " : "") << num(px(sizes[i].n)) << ',' << num(py(sizes[i].mean_faces));
  os << "\"/>\n";
  for (const auto& s : sizes)
    os << "<circle cx=\"" << num(px(s.n)) << "\" cy=\"" << num(py(s.mean_faces)) << "\" r=\"3\"/>\n";
  os << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Files

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

/// Writes the aggregate to `path` and, when records are given, the trial
/// stream to `<path>.trials.<ext>`.
inline void export_results(const Aggregate& agg, const std::vector<TrialRecord>& records, OutputFormat format,
                           const std::string& path) {
  {
    auto out = open_output(path);
    if (format == OutputFormat::csv)
      write_aggregate_csv(out, agg);
    else
      out << to_json(agg).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
  }
  if (records.empty()) return;
  const std::string trials_path = path + (format == OutputFormat::csv ? ".trials.csv" : ".trials.json");
  auto out = open_output(trials_path);
  if (format == OutputFormat::csv) {
    write_records_csv(out, records, agg.k_max);
  } else {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : records) j.push_back(to_json(r));
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + trials_path);
}

inline Aggregate import_aggregate(const std::string& path, OutputFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open aggregate file: " + path);
  if (format == OutputFormat::csv) return read_aggregate_csv(in);
  return aggregate_from_json(nlohmann::json::parse(in));
}

}  // namespace belyi
