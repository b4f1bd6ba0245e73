#include "superteach/teachers.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace superteach {

namespace {

using Clock = std::chrono::steady_clock;

// Recompute everything from scratch from the winning mask; search-time
// values are never reported directly.
TeachingResult finalize(const TrainingSet& S, const LearnerSpec& learner,
                        const RiskSpec& risk, const IndexSet& winner,
                        uint64_t evaluations, Clock::time_point t0) {
  TeachingResult out;
  out.mask = SubsetMask::from_indices(S.n(), winner);
  out.theta_subset = apply_learner(S.subset(winner), learner);
  out.risk_subset = risk(out.theta_subset);
  out.theta_full = apply_learner(S, learner);
  out.risk_full = risk(out.theta_full);
  out.ratio = out.risk_full > 0.0
                  ? out.risk_subset / out.risk_full
                  : std::numeric_limits<double>::quiet_NaN();
  out.proper_subset = static_cast<int>(winner.size()) < S.n();
  out.evaluations = evaluations;
  out.wall_time_s =
      std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

// Incremental enumeration of size-k index sets over scalar data, tracking
// the running sum; avoids building a TrainingSet per candidate.
SearchResult best_k_subset_mean(const std::vector<double>& xs, int k,
                                double theta_star) {
  const int n = static_cast<int>(xs.size());
  IndexSet idx(static_cast<size_t>(k));
  std::vector<double> prefix(static_cast<size_t>(k));
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    idx[static_cast<size_t>(i)] = i;
    acc += xs[static_cast<size_t>(i)];
    prefix[static_cast<size_t>(i)] = acc;
  }
  SearchResult best;
  best.value = std::numeric_limits<double>::infinity();
  while (true) {
    const double v =
        std::abs(prefix[static_cast<size_t>(k - 1)] / k - theta_star);
    ++best.evaluations;
    if (v < best.value) {
      best.value = v;
      best.mask = idx;
    }
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    for (int j = i; j < k; ++j) {
      const double base = j > 0 ? prefix[static_cast<size_t>(j - 1)] : 0.0;
      prefix[static_cast<size_t>(j)] =
          base + xs[static_cast<size_t>(idx[static_cast<size_t>(j)])];
    }
  }
  return best;
}

}  // namespace

TeachingResult teach_optimal_k_subset(const TrainingSet& S, int k,
                                      const LearnerSpec& learner,
                                      const RiskSpec& risk, uint64_t budget) {
  const auto t0 = Clock::now();
  const int n = S.n();
  if (k < 1 || k > n)
    throw std::invalid_argument("teach_optimal_k_subset: need 1 <= k <= n");
  if (binomial(n, k) > budget)
    throw std::invalid_argument(
        "teach_optimal_k_subset: C(n,k) exceeds the evaluation budget; "
        "use a smaller k or a sampling strategy");

  SearchResult found;
  if (learner.kind == LearnerKind::GaussMeanMLE &&
      risk.kind == RiskKind::ParamDistance) {
    std::vector<double> xs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<size_t>(i)] = S.x1(i);
    found = best_k_subset_mean(xs, k, risk.theta_star.as_scalar());
  } else {
    found = exhaustive_min_fixed_k(
        n, k,
        [&](const IndexSet& idx) { return risk(apply_learner(S.subset(idx), learner)); },
        budget);
  }
  return finalize(S, learner, risk, found.mask, found.evaluations, t0);
}

TeachingResult teach_most_symmetric(const TrainingSet& S, double theta_star) {
  const auto t0 = Clock::now();
  if (S.empty()) throw std::invalid_argument("teach_most_symmetric: empty S");
  if (S.d != 1) throw std::invalid_argument("teach_most_symmetric: d must be 1");

  const int n = S.n();
  std::vector<int> neg, pos;
  for (int i = 0; i < n; ++i) {
    if (!S.examples[static_cast<size_t>(i)].y)
      throw std::invalid_argument("teach_most_symmetric: unlabeled item");
    (S.label(i) > 0 ? pos : neg).push_back(i);
  }

  LearnerSpec learner{LearnerKind::LargeMargin1D};
  RiskSpec risk{RiskKind::ParamDistance, Hypothesis::scalar(theta_star)};

  IndexSet winner;
  uint64_t evals = 0;
  if (neg.empty() || pos.empty()) {
    winner = {0};  // fallback: the first item of S
    evals = 1;
  } else {
    double best = std::numeric_limits<double>::infinity();
    bool have = false;
    for (int i : neg) {
      const double xi = S.x1(i);
      for (int j : pos) {
        const double v = std::abs((xi + S.x1(j)) / 2.0 - theta_star);
        ++evals;
        if (!have || v < best) {
          best = v;
          winner = i < j ? IndexSet{i, j} : IndexSet{j, i};
          have = true;
        } else if (v == best) {
          const IndexSet cand = i < j ? IndexSet{i, j} : IndexSet{j, i};
          if (mask_value_less(v, cand, best, winner)) winner = cand;
        }
      }
    }
  }
  return finalize(S, learner, risk, winner, evals, t0);
}

TeachingResult teach_subset_search(const TrainingSet& S,
                                   const LearnerSpec& learner,
                                   const RiskSpec& risk,
                                   const SearchStrategy& strategy) {
  const auto t0 = Clock::now();
  if (!learner.is_erm())
    throw std::invalid_argument(
        "teach_subset_search: learner must be an ERM learner");
  const int n = S.n();
  const MaskEvaluator eval = [&](const IndexSet& idx) {
    return risk(apply_learner(S.subset(idx), learner));
  };

  SearchResult found;
  switch (strategy.kind) {
    case SearchStrategy::Kind::Exhaustive:
      found = exhaustive_min(n, eval, strategy.exhaustive_cap);
      break;
    case SearchStrategy::Kind::FixedK:
      found = exhaustive_min_fixed_k(n, strategy.k, eval);
      break;
    case SearchStrategy::Kind::GreedyForward:
      found = greedy_forward_min(n, eval);
      break;
    case SearchStrategy::Kind::LocalSwap: {
      const int iters = strategy.max_iters > 0 ? strategy.max_iters : 50 * n;
      found = local_swap_min(n, eval, SubsetMask::all_ones(n).indices(), iters,
                             strategy.restarts, strategy.seed);
      break;
    }
  }
  return finalize(S, learner, risk, found.mask, found.evaluations, t0);
}

TeachingResult teach_identity(const TrainingSet& S, const LearnerSpec& learner,
                              const RiskSpec& risk) {
  const auto t0 = Clock::now();
  return finalize(S, learner, risk, SubsetMask::all_ones(S.n()).indices(), 1, t0);
}

}  // namespace superteach
