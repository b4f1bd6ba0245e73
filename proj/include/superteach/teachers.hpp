#pragma once

#include "superteach/core.hpp"
#include "superteach/learners.hpp"
#include "superteach/search.hpp"

namespace superteach {

struct TeachingResult {
  SubsetMask mask;
  Hypothesis theta_subset;
  Hypothesis theta_full;
  double risk_subset = 0.0;
  double risk_full = 0.0;
  double ratio = 0.0;       // risk_subset / risk_full; NaN when risk_full = 0
  bool proper_subset = false;
  uint64_t evaluations = 0;
  double wall_time_s = 0.0;
};

struct SearchStrategy {
  enum class Kind { Exhaustive, FixedK, GreedyForward, LocalSwap };
  Kind kind = Kind::Exhaustive;
  int k = 1;                 // FixedK
  int max_iters = 0;         // LocalSwap; 0 means the default 50 n
  int restarts = 5;          // LocalSwap
  Seed seed{0};              // stochastic strategies
  int exhaustive_cap = kExhaustiveCap;
};

// Exact minimizer of the learner risk over all C(n, k) subsets of size k.
TeachingResult teach_optimal_k_subset(const TrainingSet& S, int k,
                                      const LearnerSpec& learner,
                                      const RiskSpec& risk,
                                      uint64_t budget = 100000000ULL);

// Most-symmetric pair about theta_star for the 1D large margin learner;
// falls back to the first item when one label is absent.
TeachingResult teach_most_symmetric(const TrainingSet& S, double theta_star);

// Subset-selection teacher for ERM learners: enumerate or locally search the
// binary mask, solving the inner convex problem exactly per mask.
TeachingResult teach_subset_search(const TrainingSet& S,
                                   const LearnerSpec& learner,
                                   const RiskSpec& risk,
                                   const SearchStrategy& strategy);

// The no-op teacher B(S) = S; the ratio-1 control.
TeachingResult teach_identity(const TrainingSet& S, const LearnerSpec& learner,
                              const RiskSpec& risk);

}  // namespace superteach
