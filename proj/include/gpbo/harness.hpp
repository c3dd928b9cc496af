#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpbo/ackley.hpp"
#include "gpbo/bo_loop.hpp"

namespace gpbo {

inline constexpr const char* kVersion = "0.1.0";

struct SuiteConfig {
  int seed_lo = 0;
  int seed_hi = 100;  // inclusive
  int budget = 30;
  bool run_mlii = true;
  bool run_fbo = true;
  std::string out_dir = "out";
  int workers = 0;  // 0 -> hardware concurrency
  Bounds bounds = ackley_bounds(2);
  double noise_variance = 1e-6;
  double output_scale_mean = 10.0;
  double output_scale_std = 10.0;
  double length_scale_mean = 0.5;
  double length_scale_std = 0.5;
  SamplerConfig sampler;
  MLIIConfig mlii;
  AcquisitionOptConfig acquisition;

  void validate() const;
  [[nodiscard]] PriorSet priors() const;
};

// One row per (seed, method, step). Error marker rows carry step = -1 and
// NaN data fields; details land in the manifest.
struct RegretRecord {
  int seed = 0;
  Method method = Method::mlii;
  int step = 0;
  Eigen::VectorXd x_raw;
  double observed = 0.0;
  double best = 0.0;
  double regret = 0.0;
  double seconds = 0.0;
};

struct RunFailure {
  int seed = 0;
  Method method = Method::mlii;
  int step = 0;
  std::string message;
};

struct SuiteResult {
  std::vector<RegretRecord> records;  // sorted by (seed, method, step)
  std::vector<RunFailure> failures;
  double mlii_seconds = 0.0;  // summed per-step wall clock across runs
  double fbo_seconds = 0.0;
  double total_seconds = 0.0;
};

// Uniform draw over the bounds from the (seed, step 0, initial_point)
// substream; identical for every method at a given seed.
Eigen::VectorXd initial_point(std::uint64_t seed, const Bounds& bounds);

// The full benchmark: for every (seed, method) run the BO loop on Ackley,
// convert histories to regret records, and sort. Failed runs contribute
// their partial records plus a marker row; the suite keeps going.
SuiteResult run_suite(const SuiteConfig& cfg);

// --- aggregation ---------------------------------------------------------

// Linear-interpolation percentile between order statistics, p in [0, 100].
double percentile_linear(std::vector<double> values, double p);

struct PercentileRow {
  int step = 0;
  double p10 = 0.0;
  double median = 0.0;
  double p90 = 0.0;
};

// Across-seed percentiles of regret per step, complete runs only.
std::vector<PercentileRow> aggregate_percentiles(const std::vector<RegretRecord>& records,
                                                 Method method);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  int count = 0;
};

// Fixed-width bins over [0, max regret at `step`] (or [0, 1] when the
// maximum is zero).
std::vector<HistogramBin> emit_histogram(const std::vector<RegretRecord>& records, Method method,
                                         int step, int bins = 20);

// --- file IO --------------------------------------------------------------

// records.csv: seed,method,step,x0..x{d-1},f,best,regret. Shortest
// round-trip float formatting; byte-identical for identical configs.
void write_records_csv(const std::string& path, const std::vector<RegretRecord>& records);
std::vector<RegretRecord> read_records_csv(const std::string& path);

// timings.csv: seed,method,step,seconds (not deterministic across reruns).
void write_timings_csv(const std::string& path, const std::vector<RegretRecord>& records);

// manifest.json: config echo, version, totals, failures.
void write_manifest(const std::string& path, const SuiteConfig& cfg, const SuiteResult& result);

void write_percentiles_csv(const std::string& path, const std::vector<PercentileRow>& rows);
void write_histogram_csv(const std::string& path, const std::vector<HistogramBin>& bins);

}  // namespace gpbo
