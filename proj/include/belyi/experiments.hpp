#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "belyi/config_model.hpp"
#include "belyi/expectations.hpp"
#include "belyi/random.hpp"
#include "belyi/rotation_map.hpp"

namespace belyi {

enum class SamplingMode { raw, simple_only };

/// Rejections allowed per trial in simple-only mode.
inline constexpr long kMaxRejections = 1'000'000;

struct ExperimentSpec {
  std::vector<int> n_values;
  int d = 3;
  int trials = 1;
  std::uint64_t master_seed = 0;
  SamplingMode mode = SamplingMode::raw;
  int k_max = 3;

  void validate() const {
    if (n_values.empty()) throw std::invalid_argument("experiment needs at least one n");
    if (d < 3) throw std::invalid_argument("degree must be at least 3");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
    for (int n : n_values) {
      if (n < 4) throw std::invalid_argument("experiment sizes must satisfy n >= 4");
      if ((static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("n*d must be even for n = " + std::to_string(n));
    }
  }
};

struct TrialRecord {
  int n = 0;
  int trial = 0;
  int faces = 0;
  long face_length_total = 0;
  int euler_characteristic = 0;
  bool connected = false;
  bool simple = false;
  std::optional<int> genus;      // connected maps
  int total_genus = 0;           // sum over components
  long rejections = 0;
  std::vector<int> face_length_histogram;  // bucket b: lengths in [2^b, 2^(b+1))
  std::vector<std::uint64_t> cycle_counts; // X_1..X_kmax
};

/// Welford accumulator; merge() is the pairwise combination of Chan et al.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(count_ + other.count_);
    const double delta = other.mean_ - mean_;
    mean_ += delta * static_cast<double>(other.count_) / total;
    m2_ += other.m2_ + delta * delta * static_cast<double>(count_) * static_cast<double>(other.count_) / total;
    count_ += other.count_;
  }

  long count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
  double standard_error() const { return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0; }

 private:
  long count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Per-size summary. Genus means are over the connected subsample, except
/// mean_genus_all which sums component genera over every trial.
struct SizeSummary {
  int n = 0;
  int trials = 0;
  double mean_faces = 0.0;
  double var_faces = 0.0;
  double mean_genus = 0.0;
  double simple_fraction = 0.0;
  double connected_fraction = 0.0;
  std::vector<double> mean_cycles;
  double ref_lower_sum = 0.0;
  double ref_upper_bound = 0.0;  // small-face sum + 3 sqrt(n)
  int connected_trials = 0;
  double mean_faces_connected = 0.0;
  double mean_genus_all = 0.0;
  std::vector<double> var_cycles;
  std::vector<double> ref_cycles;  // E(X_k)

  friend bool operator==(const SizeSummary&, const SizeSummary&) = default;
};

struct Aggregate {
  int d = 3;
  int k_max = 3;
  std::vector<SizeSummary> sizes;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct ExperimentResult {
  Aggregate aggregate;
  std::vector<TrialRecord> records;  // ordered by (n index, trial)
};

inline TrialRecord run_trial(int n, int d, int trial, std::uint64_t master_seed, SamplingMode mode, int k_max) {
  Rng rng = make_stream(master_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial));
  TrialRecord r;
  r.n = n;
  r.trial = trial;

  DartPairing pairing = sample_configuration(n, d, rng);
  r.simple = is_simple(pairing);
  if (mode == SamplingMode::simple_only) {
    while (!r.simple) {
      if (++r.rejections > kMaxRejections)
        throw std::runtime_error("simple-only sampling exceeded the rejection limit at n = " + std::to_string(n));
      pairing = sample_configuration(n, d, rng);
      r.simple = is_simple(pairing);
    }
  }
  const CombinatorialMap map(std::move(pairing), sample_orientation(n, d, rng));
  const FaceDecomposition faces = trace_faces(map);
  const SurfaceStats stats = surface_stats(map, faces);

  r.faces = faces.count();
  r.euler_characteristic = stats.euler_characteristic;
  r.connected = stats.connected;
  r.genus = stats.genus;
  r.total_genus = stats.total_genus();
  const int buckets = static_cast<int>(std::bit_width(static_cast<unsigned>(n * d)));
  r.face_length_histogram.assign(buckets, 0);
  for (const auto& f : faces.faces) {
    r.face_length_total += static_cast<long>(f.size());
    ++r.face_length_histogram[std::bit_width(f.size()) - 1];
  }
  const CycleCensus census = count_k_cycles(map.pairing(), k_max);
  for (int k = 1; k <= k_max; ++k) r.cycle_counts.push_back(census[k]);
  return r;
}

/// Summarises the trials of one size, in trial order.
inline SizeSummary summarize(int n, int d, int k_max, std::span<const TrialRecord> trials) {
  SizeSummary s;
  s.n = n;
  s.trials = static_cast<int>(trials.size());
  RunningStats faces, faces_connected, genus, genus_all;
  std::vector<RunningStats> cycles(k_max);
  long simple = 0;
  for (const auto& r : trials) {
    faces.add(r.faces);
    genus_all.add(r.total_genus);
    if (r.connected) {
      faces_connected.add(r.faces);
      genus.add(*r.genus);
    }
    simple += r.simple ? 1 : 0;
    for (int k = 0; k < k_max; ++k) cycles[k].add(static_cast<double>(r.cycle_counts[k]));
  }
  s.mean_faces = faces.mean();
  s.var_faces = faces.variance();
  s.mean_genus = genus.mean();
  s.connected_trials = static_cast<int>(genus.count());
  s.mean_faces_connected = faces_connected.mean();
  s.mean_genus_all = genus_all.mean();
  s.simple_fraction = static_cast<double>(simple) / static_cast<double>(s.trials);
  s.connected_fraction = static_cast<double>(s.connected_trials) / static_cast<double>(s.trials);
  for (int k = 0; k < k_max; ++k) {
    s.mean_cycles.push_back(cycles[k].mean());
    s.var_cycles.push_back(cycles[k].variance());
    s.ref_cycles.push_back(expected_k_cycles_exact(n, d, k + 1));
  }
  s.ref_lower_sum = lower_bound_sum(n, d);
  s.ref_upper_bound = small_face_upper_bound(n, d).total;
  return s;
}

/// Runs every (n, trial) task on `workers` threads. Trial i at size n draws
/// from make_stream(master_seed, n, i) and summaries are formed in trial
/// order, so the result does not depend on the worker count.
inline ExperimentResult run_trials(const ExperimentSpec& spec, unsigned workers = 1) {
  spec.validate();
  if (workers == 0) workers = 1;
  const std::size_t per_size = static_cast<std::size_t>(spec.trials);
  const std::size_t total = spec.n_values.size() * per_size;

  ExperimentResult result;
  result.records.resize(total);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t task = w; task < total; task += workers) {
        const int n = spec.n_values[task / per_size];
        const int trial = static_cast<int>(task % per_size);
        result.records[task] = run_trial(n, spec.d, trial, spec.master_seed, spec.mode, spec.k_max);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  result.aggregate.d = spec.d;
  result.aggregate.k_max = spec.k_max;
  for (std::size_t i = 0; i < spec.n_values.size(); ++i) {
    std::span<const TrialRecord> slice(result.records.data() + i * per_size, per_size);
    result.aggregate.sizes.push_back(summarize(spec.n_values[i], spec.d, spec.k_max, slice));
  }
  return result;
}

struct BoundsRow {
  int n = 0;
  double mean_faces = 0.0;
  double faces_over_log_n = 0.0;
  double faces_over_sqrt_n = 0.0;
  double genus_over_n = 0.0;
  double genus_identity_error = 0.0;  // |mean genus - (1 + n(d-2)/4 - mean F/2)|, connected subsample
};

struct BoundsReport {
  std::vector<BoundsRow> rows;  // sorted by n
  bool faces_increasing = false;
  bool sqrt_ratio_nonincreasing = false;
  double log_ratio_window = 0.0;  // max / min of mean F / log n
  bool log_ratio_within_window = false;
  bool genus_ratio_converging = false;
  double max_genus_identity_error = 0.0;
};

/// Largest max/min spread of mean F / log n accepted as log-order growth.
inline constexpr double kLogWindowFactor = 3.0;
/// Smallest max(n)/min(n) span accepted by compare_bounds.
inline constexpr double kMinSweepSpan = 16.0;

/// Empirical side of C1 log n <= E(F) <= C2 sqrt n and E(genus) = Theta(n).
inline BoundsReport compare_bounds(const Aggregate& agg) {
  std::vector<SizeSummary> sizes = agg.sizes;
  std::sort(sizes.begin(), sizes.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  std::set<int> distinct;
  for (const auto& s : sizes) distinct.insert(s.n);
  if (distinct.size() < 3 || distinct.size() != sizes.size())
    throw std::invalid_argument("bound comparison needs at least 3 distinct sizes, each once");
  if (static_cast<double>(sizes.back().n) < kMinSweepSpan * sizes.front().n)
    throw std::invalid_argument("bound comparison needs max(n) / min(n) >= 16");

  BoundsReport rep;
  for (const auto& s : sizes) {
    BoundsRow row;
    row.n = s.n;
    row.mean_faces = s.mean_faces;
    row.faces_over_log_n = s.mean_faces / std::log(static_cast<double>(s.n));
    row.faces_over_sqrt_n = s.mean_faces / std::sqrt(static_cast<double>(s.n));
    row.genus_over_n = s.mean_genus / static_cast<double>(s.n);
    row.genus_identity_error = std::abs(s.mean_genus - genus_from_face_count(s.n, agg.d, 0) +
                                        0.5 * s.mean_faces_connected);
    rep.max_genus_identity_error = std::max(rep.max_genus_identity_error, row.genus_identity_error);
    rep.rows.push_back(row);
  }

  rep.faces_increasing = true;
  rep.sqrt_ratio_nonincreasing = true;
  rep.genus_ratio_converging = true;
  double lo = rep.rows.front().faces_over_log_n, hi = lo;
  double prev_step = INFINITY;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    rep.faces_increasing = rep.faces_increasing && b.mean_faces > a.mean_faces;
    rep.sqrt_ratio_nonincreasing = rep.sqrt_ratio_nonincreasing && b.faces_over_sqrt_n <= a.faces_over_sqrt_n;
    lo = std::min(lo, b.faces_over_log_n);
    hi = std::max(hi, b.faces_over_log_n);
    const double step = std::abs(b.genus_over_n - a.genus_over_n);
    rep.genus_ratio_converging = rep.genus_ratio_converging && step <= prev_step;
    prev_step = step;
  }
  rep.log_ratio_window = hi / lo;
  rep.log_ratio_within_window = rep.log_ratio_window <= kLogWindowFactor;
  return rep;
}

}  // namespace belyi
