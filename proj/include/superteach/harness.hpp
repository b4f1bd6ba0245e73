#pragma once

#include "superteach/core.hpp"
#include "superteach/teachers.hpp"

#include <string>
#include <vector>

namespace superteach {

struct TeacherSpec {
  enum class Kind { Identity, OptimalK, MostSymmetric, SubsetSearch };
  Kind kind = Kind::Identity;
  int k = 1;                  // OptimalK
  SearchStrategy strategy;    // SubsetSearch
};

struct ExperimentConfig {
  TaskSpec task;
  TeacherSpec teacher;
  std::vector<int> n_list;
  int trials = 10;
  uint64_t master_seed = 0;
  int jobs = 1;
};

struct TrialRecord {
  int n = 0;
  int d = 1;
  int trial_index = 0;
  uint64_t seed = 0;
  double risk_full = 0.0;
  double risk_subset = 0.0;
  double ratio = 0.0;         // NaN when risk_full = 0 or on error
  double subset_fraction = 0.0;
  double wall_ms = 0.0;
  std::string error;          // empty on success
};

struct SummaryRow {
  int key = 0;                // n (or d for dimension sweeps)
  double median_ratio = 0.0;
  double median_subset_fraction = 0.0;
  double median_time_s = 0.0;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct TailEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// One Monte Carlo sweep: trials x |n_list| records, per-trial seed
// trial_seed(master_seed, n, trial_index), sorted by (n, trial_index).
// Per-trial failures land in TrialRecord::error, not exceptions.
std::vector<TrialRecord> run_trials(const ExperimentConfig& config);

// Per-key medians (lower-of-two convention). Records with errors or missing
// ratios are excluded from the ratio median.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
std::vector<SummaryRow> summarize_by_d(const std::vector<TrialRecord>& records);

// Least-squares line through (log n, log value).
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

// Exact tail P{R(theta_hat_S) > eps} for the 1D large margin learner on the
// full sample: (1-eps)^n + eps^n for eps <= 1/2, (1/2)^(n-1) for eps < 1,
// 0 at eps = 1.
double margin_tail_exact(int n, double eps);

// Monte Carlo counterpart with a binomial standard error.
TailEstimate margin_tail_mc(int n, double eps, int trials, Seed seed);

enum class BracketMode { FullSample, KSubset };

// Fraction of trials where the Gaussian-mean risk falls strictly inside the
// rate bracket: (n^(-1/2-eps), n^(-1/2+eps)) for the full sample, or
// ((1/sqrt k)(k/n)^(k+eps), (1/sqrt k)(k/n)^(k-eps)) for the optimal
// k-subset teacher.
double check_bracket(BracketMode mode, int k, int n, double eps_param,
                     int trials, Seed seed);

}  // namespace superteach
