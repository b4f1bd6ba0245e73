#pragma once

#include "superteach/core.hpp"

namespace superteach {

enum class LearnerKind {
  GaussMeanMLE,
  LargeMargin1D,
  LogisticERM,
  RidgeERM,
  IntervalMLE,
  LeastConsistent,
  GreatestConsistent,
};

enum class ConsistentMode { Least, Greatest };

struct SolveReport {
  Hypothesis theta_hat;
  double kkt_residual_norm = 0.0;
  int iterations = 0;
};

// Parameters needed to invoke any learner uniformly (teachers, harness, CLI).
struct LearnerSpec {
  LearnerKind kind = LearnerKind::GaussMeanMLE;
  double lambda = 0.1;          // ERM learners
  double tol = 1e-8;            // logistic stationarity tolerance
  double domain_lo = 0.0;       // consistent-interval learners
  double domain_hi = 1.0;

  bool is_erm() const {
    return kind == LearnerKind::LogisticERM || kind == LearnerKind::RidgeERM;
  }
};

// Sample mean of an unlabeled 1D set.
Hypothesis learn_gauss_mean(const TrainingSet& subset);

// Midpoint of the innermost opposite-label pair; -1 if all positive, +1 if
// all negative. Rejects label-inconsistent input (a negative to the right of
// a positive).
Hypothesis learn_large_margin_1d(const TrainingSet& subset);

// Regularized logistic regression:
//   min_theta  sum_i log(1 + exp(-y_i x_i.theta)) + lambda/2 |theta|^2
// solved by damped Newton to stationarity residual <= tol. The empty set
// yields theta = 0.
SolveReport learn_logistic_erm(const TrainingSet& subset, double lambda,
                               double tol = 1e-8);

// Ridge regression with the loss sum_i (x_i.theta - y_i)^2 (no 1/2), so the
// normal system is (lambda/2 I + X'X) theta = X'y. Exact SPD solve.
SolveReport learn_ridge_erm(const TrainingSet& subset, double lambda);

// max_i x_i over an unlabeled nonnegative 1D set.
Hypothesis learn_interval_mle(const TrainingSet& subset);

// Least: tightest interval over positive items. Greatest: widest integer
// interval containing all positives and no negatives. Empty if no positives.
Hypothesis learn_consistent_interval(const TrainingSet& subset,
                                     ConsistentMode mode, double domain_lo,
                                     double domain_hi);

// Loss used by the generic Newton path (dual route to the ridge closed form).
enum class ErmLoss { Logistic, Squared };

// Generic damped-Newton minimizer of
//   sum_i loss(x_i.theta; y_i) + lambda/2 |theta|^2.
SolveReport erm_newton(const TrainingSet& subset, ErmLoss loss, double lambda,
                       double tol, int max_iters = 200);

// Dispatch by LearnerSpec. For ERM learners the empty subset is legal and
// returns the zero vector.
Hypothesis apply_learner(const TrainingSet& subset, const LearnerSpec& spec);

}  // namespace superteach
