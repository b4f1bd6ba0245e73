#include "superteach/harness.hpp"

#include "superteach/datagen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

namespace superteach {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TrainingSet sample_for_task(const TaskSpec& task, int n, uint64_t seed) {
  switch (task.task) {
    case Task::Gauss1D:
      return sample_gauss1d(n, task.theta_star.as_scalar(), Seed{seed});
    case Task::Margin1D:
      return sample_margin1d(n, Seed{seed});
    case Task::Halfspace:
      return sample_halfspace(n, task.d, task.theta_star.as_vector(), Seed{seed});
    case Task::LinReg:
      return sample_linreg(n, task.d, task.theta_star.as_vector(),
                           task.noise_var, Seed{seed});
    default:
      throw std::invalid_argument("run_trials: unsupported task");
  }
}

LearnerSpec learner_for_task(const TaskSpec& task) {
  LearnerSpec l;
  switch (task.task) {
    case Task::Gauss1D:
      l.kind = LearnerKind::GaussMeanMLE;
      break;
    case Task::Margin1D:
      l.kind = LearnerKind::LargeMargin1D;
      break;
    case Task::Halfspace:
      l.kind = LearnerKind::LogisticERM;
      break;
    case Task::LinReg:
      l.kind = LearnerKind::RidgeERM;
      break;
    default:
      throw std::invalid_argument("run_trials: unsupported task");
  }
  l.lambda = task.lambda;
  return l;
}

RiskSpec risk_for_task(const TaskSpec& task) {
  return RiskSpec{task.risk_kind, task.theta_star};
}

TrialRecord one_trial(const ExperimentConfig& config, int n, int trial) {
  TrialRecord rec;
  rec.n = n;
  rec.d = config.task.d;
  rec.trial_index = trial;
  rec.seed = trial_seed(config.master_seed, static_cast<uint64_t>(n),
                        static_cast<uint64_t>(trial));
  rec.ratio = kNaN;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const TrainingSet S = sample_for_task(config.task, n, rec.seed);
    const LearnerSpec learner = learner_for_task(config.task);
    const RiskSpec risk = risk_for_task(config.task);

    TeachingResult res;
    switch (config.teacher.kind) {
      case TeacherSpec::Kind::Identity:
        res = teach_identity(S, learner, risk);
        break;
      case TeacherSpec::Kind::OptimalK:
        res = teach_optimal_k_subset(S, config.teacher.k, learner, risk);
        break;
      case TeacherSpec::Kind::MostSymmetric:
        res = teach_most_symmetric(S, risk.theta_star.as_scalar());
        break;
      case TeacherSpec::Kind::SubsetSearch: {
        SearchStrategy strat = config.teacher.strategy;
        strat.seed = Seed{mix64(rec.seed + 1)};
        res = teach_subset_search(S, learner, risk, strat);
        break;
      }
    }
    rec.risk_full = res.risk_full;
    rec.risk_subset = res.risk_subset;
    rec.ratio = res.ratio;
    rec.subset_fraction = static_cast<double>(res.mask.count()) / n;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_trials(const ExperimentConfig& config) {
  if (config.trials < 1)
    throw std::invalid_argument("run_trials: trials must be >= 1");
  if (config.n_list.empty())
    throw std::invalid_argument("run_trials: empty n_list");
  for (size_t i = 1; i < config.n_list.size(); ++i)
    if (config.n_list[i] <= config.n_list[i - 1])
      throw std::invalid_argument("run_trials: n_list must be strictly increasing");
  config.task.validate();

  const size_t total = config.n_list.size() * static_cast<size_t>(config.trials);
  std::vector<TrialRecord> records(total);
  const auto work = [&](size_t start, size_t stride) {
    for (size_t f = start; f < total; f += stride) {
      const int n = config.n_list[f / static_cast<size_t>(config.trials)];
      const int trial = static_cast<int>(f % static_cast<size_t>(config.trials));
      records[f] = one_trial(config, n, trial);
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back(work, static_cast<size_t>(j), static_cast<size_t>(jobs));
    for (auto& t : pool) t.join();
  }
  // records are already sorted by (n, trial_index) by construction
  return records;
}

namespace {

// Lower-of-two median, documented convention for even counts.
double lower_median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

std::vector<SummaryRow> summarize_keyed(const std::vector<TrialRecord>& records,
                                        bool by_d) {
  std::map<int, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[by_d ? r.d : r.n].push_back(&r);
  std::vector<SummaryRow> rows;
  for (const auto& [key, group] : groups) {
    SummaryRow row;
    row.key = key;
    std::vector<double> ratios, fracs, times;
    for (const TrialRecord* r : group) {
      if (!r->error.empty()) continue;
      if (std::isfinite(r->ratio)) ratios.push_back(r->ratio);
      fracs.push_back(r->subset_fraction);
      times.push_back(r->wall_ms / 1000.0);
    }
    row.median_ratio = lower_median(std::move(ratios));
    row.median_subset_fraction = lower_median(std::move(fracs));
    row.median_time_s = lower_median(std::move(times));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  return summarize_keyed(records, false);
}

std::vector<SummaryRow> summarize_by_d(const std::vector<TrialRecord>& records) {
  return summarize_keyed(records, true);
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_rate: need at least 3 points");
  const int m = static_cast<int>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(points.size()), ly(points.size());
  for (int i = 0; i < m; ++i) {
    if (points[static_cast<size_t>(i)].second <= 0)
      throw std::invalid_argument("fit_rate: nonpositive value");
    lx[static_cast<size_t>(i)] = std::log(points[static_cast<size_t>(i)].first);
    ly[static_cast<size_t>(i)] = std::log(points[static_cast<size_t>(i)].second);
    sx += lx[static_cast<size_t>(i)];
    sy += ly[static_cast<size_t>(i)];
    sxx += lx[static_cast<size_t>(i)] * lx[static_cast<size_t>(i)];
    sxy += lx[static_cast<size_t>(i)] * ly[static_cast<size_t>(i)];
  }
  RateFit fit;
  const double denom = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / m;
  for (int i = 0; i < m; ++i) {
    const double e = ly[static_cast<size_t>(i)] -
                     (fit.intercept + fit.slope * lx[static_cast<size_t>(i)]);
    ss_res += e * e;
    ss_tot += (ly[static_cast<size_t>(i)] - ybar) * (ly[static_cast<size_t>(i)] - ybar);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

double margin_tail_exact(int n, double eps) {
  if (n < 1) throw std::invalid_argument("margin_tail_exact: n must be >= 1");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("margin_tail_exact: eps must be in (0, 1]");
  if (eps == 1.0) return 0.0;
  if (eps <= 0.5)
    return std::pow(1.0 - eps, n) + std::pow(eps, n);
  return std::pow(0.5, n - 1);
}

TailEstimate margin_tail_mc(int n, double eps, int trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("margin_tail_mc: trials must be >= 1");
  Rng rng(seed.value);
  long hits = 0;
  for (int t = 0; t < trials; ++t) {
    double x_minus = -std::numeric_limits<double>::infinity();
    double x_plus = std::numeric_limits<double>::infinity();
    bool has_neg = false, has_pos = false;
    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform(-1.0, 1.0);
      if (x >= 0.0) {
        has_pos = true;
        x_plus = std::min(x_plus, x);
      } else {
        has_neg = true;
        x_minus = std::max(x_minus, x);
      }
    }
    const double risk =
        (has_neg && has_pos) ? std::abs((x_minus + x_plus) / 2.0) : 1.0;
    if (risk > eps) ++hits;
  }
  TailEstimate est;
  est.estimate = static_cast<double>(hits) / trials;
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / trials);
  return est;
}

double check_bracket(BracketMode mode, int k, int n, double eps_param,
                     int trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("check_bracket: trials must be >= 1");
  if (mode == BracketMode::KSubset && !(eps_param > 0 && eps_param < k))
    throw std::invalid_argument("check_bracket: eps must be in (0, k)");
  if (mode == BracketMode::FullSample && eps_param <= 0)
    throw std::invalid_argument("check_bracket: eps must be positive");

  double lo, hi;
  if (mode == BracketMode::FullSample) {
    lo = std::pow(n, -0.5 - eps_param);
    hi = std::pow(n, -0.5 + eps_param);
  } else {
    const double kn = static_cast<double>(k) / n;
    lo = std::pow(kn, k + eps_param) / std::sqrt(static_cast<double>(k));
    hi = std::pow(kn, k - eps_param) / std::sqrt(static_cast<double>(k));
  }

  const LearnerSpec learner{LearnerKind::GaussMeanMLE};
  const RiskSpec risk{RiskKind::ParamDistance, Hypothesis::scalar(0.0)};
  int inside = 0;
  for (int t = 0; t < trials; ++t) {
    const uint64_t s = trial_seed(seed.value, static_cast<uint64_t>(n),
                                  static_cast<uint64_t>(t));
    const TrainingSet S = sample_gauss1d(n, 0.0, Seed{s});
    double r;
    if (mode == BracketMode::FullSample) {
      r = risk(learn_gauss_mean(S));
    } else {
      r = teach_optimal_k_subset(S, k, learner, risk).risk_subset;
    }
    if (r > lo && r < hi) ++inside;
  }
  return static_cast<double>(inside) / trials;
}

}  // namespace superteach
