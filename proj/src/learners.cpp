#include "superteach/learners.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace superteach {

Hypothesis learn_gauss_mean(const TrainingSet& subset) {
  if (subset.empty())
    throw std::invalid_argument("MLE undefined on empty set");
  if (subset.d != 1)
    throw std::invalid_argument("learn_gauss_mean: d must be 1");
  double sum = 0.0;
  for (int i = 0; i < subset.n(); ++i) sum += subset.x1(i);
  return Hypothesis::scalar(sum / subset.n());
}

Hypothesis learn_large_margin_1d(const TrainingSet& subset) {
  if (subset.empty())
    throw std::invalid_argument("learn_large_margin_1d: empty set");
  if (subset.d != 1)
    throw std::invalid_argument("learn_large_margin_1d: d must be 1");
  bool has_neg = false, has_pos = false;
  double x_minus = -std::numeric_limits<double>::infinity();
  double x_plus = std::numeric_limits<double>::infinity();
  for (int i = 0; i < subset.n(); ++i) {
    const auto& ex = subset.examples[static_cast<size_t>(i)];
    if (!ex.y) throw std::invalid_argument("learn_large_margin_1d: unlabeled item");
    if (*ex.y > 0) {
      has_pos = true;
      x_plus = std::min(x_plus, ex.x[0]);
    } else {
      has_neg = true;
      x_minus = std::max(x_minus, ex.x[0]);
    }
  }
  if (!has_neg) return Hypothesis::scalar(-1.0);
  if (!has_pos) return Hypothesis::scalar(1.0);
  if (x_minus > x_plus)
    throw std::invalid_argument("learn_large_margin_1d: not realizable");
  return Hypothesis::scalar((x_minus + x_plus) / 2.0);
}

SolveReport erm_newton(const TrainingSet& subset, ErmLoss loss, double lambda,
                       double tol, int max_iters) {
  if (lambda <= 0) throw std::invalid_argument("erm_newton: lambda must be positive");
  if (tol <= 0) throw std::invalid_argument("erm_newton: tol must be positive");
  const int d = subset.d;
  const int n = subset.n();

  Eigen::MatrixXd X(n, d);
  Vec y(n);
  for (int i = 0; i < n; ++i) {
    const auto& ex = subset.examples[static_cast<size_t>(i)];
    X.row(i) = ex.x.transpose();
    if (!ex.y) throw std::invalid_argument("erm_newton: unlabeled item");
    y[i] = *ex.y;
    if (loss == ErmLoss::Logistic && *ex.y != 1.0 && *ex.y != -1.0)
      throw std::invalid_argument("erm_newton: labels must be +/-1");
  }

  const auto gradient_at = [&](const Vec& theta) {
    Vec g = lambda * theta;
    const Vec u = X * theta;
    for (int i = 0; i < n; ++i) {
      if (loss == ErmLoss::Logistic) {
        g += (-y[i] / (1.0 + std::exp(y[i] * u[i]))) * X.row(i).transpose();
      } else {
        g += 2.0 * (u[i] - y[i]) * X.row(i).transpose();
      }
    }
    return g;
  };

  Vec theta = Vec::Zero(d);
  Vec grad = gradient_at(theta);
  Eigen::MatrixXd hess(d, d);

  int iter = 0;
  for (; iter < max_iters; ++iter) {
    const double gnorm = grad.norm();
    if (gnorm <= tol) return {Hypothesis::vector(theta), gnorm, iter};

    hess = lambda * Eigen::MatrixXd::Identity(d, d);
    const Vec u = X * theta;
    for (int i = 0; i < n; ++i) {
      if (loss == ErmLoss::Logistic) {
        const double m = y[i] * u[i];
        const double p = 1.0 / (1.0 + std::exp(-m));
        hess += (p * (1.0 - p)) * X.row(i).transpose() * X.row(i);
      } else {
        hess += 2.0 * X.row(i).transpose() * X.row(i);
      }
    }
    const Vec step = hess.ldlt().solve(grad);

    // Damped step: halve until the stationarity residual shrinks. Near the
    // optimum the objective decrease underflows but the residual does not.
    double t = 1.0;
    bool moved = false;
    for (int h = 0; h < 60; ++h) {
      const Vec cand = theta - t * step;
      Vec cand_grad = gradient_at(cand);
      if (cand_grad.norm() < gnorm) {
        theta = cand;
        grad = std::move(cand_grad);
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }

  const double gnorm = grad.norm();
  if (gnorm > tol)
    throw std::runtime_error("erm_newton: no convergence, residual " +
                             std::to_string(gnorm));
  return {Hypothesis::vector(theta), gnorm, iter};
}

SolveReport learn_logistic_erm(const TrainingSet& subset, double lambda,
                               double tol) {
  if (subset.empty())
    return {Hypothesis::vector(Vec::Zero(subset.d)), 0.0, 0};
  return erm_newton(subset, ErmLoss::Logistic, lambda, tol);
}

SolveReport learn_ridge_erm(const TrainingSet& subset, double lambda) {
  if (lambda <= 0)
    throw std::invalid_argument("learn_ridge_erm: lambda must be positive");
  const int d = subset.d;
  if (subset.empty()) return {Hypothesis::vector(Vec::Zero(d)), 0.0, 0};

  Eigen::MatrixXd M = (0.5 * lambda) * Eigen::MatrixXd::Identity(d, d);
  Vec rhs = Vec::Zero(d);
  for (const auto& ex : subset.examples) {
    if (!ex.y) throw std::invalid_argument("learn_ridge_erm: unlabeled item");
    if (ex.x.size() != d)
      throw std::invalid_argument("learn_ridge_erm: dimension mismatch");
    M.noalias() += ex.x * ex.x.transpose();
    rhs.noalias() += *ex.y * ex.x;
  }
  const Vec theta = M.ldlt().solve(rhs);

  // Stationarity: lambda theta + 2 sum (x.theta - y) x.
  Vec res = lambda * theta;
  for (const auto& ex : subset.examples)
    res.noalias() += 2.0 * (ex.x.dot(theta) - *ex.y) * ex.x;
  return {Hypothesis::vector(theta), res.norm(), 1};
}

Hypothesis learn_interval_mle(const TrainingSet& subset) {
  if (subset.empty())
    throw std::invalid_argument("MLE undefined on empty set");
  if (subset.d != 1)
    throw std::invalid_argument("learn_interval_mle: d must be 1");
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < subset.n(); ++i) {
    const double x = subset.x1(i);
    if (x < 0)
      throw std::invalid_argument("learn_interval_mle: negative item");
    m = std::max(m, x);
  }
  return Hypothesis::scalar(m);
}

Hypothesis learn_consistent_interval(const TrainingSet& subset,
                                     ConsistentMode mode, double domain_lo,
                                     double domain_hi) {
  if (subset.d != 1)
    throw std::invalid_argument("learn_consistent_interval: d must be 1");
  bool has_pos = false;
  double pos_lo = 0, pos_hi = 0;
  for (int i = 0; i < subset.n(); ++i) {
    const auto& ex = subset.examples[static_cast<size_t>(i)];
    if (!ex.y)
      throw std::invalid_argument("learn_consistent_interval: unlabeled item");
    if (*ex.y > 0) {
      const double x = ex.x[0];
      if (!has_pos) {
        pos_lo = pos_hi = x;
        has_pos = true;
      } else {
        pos_lo = std::min(pos_lo, x);
        pos_hi = std::max(pos_hi, x);
      }
    }
  }
  if (!has_pos) return Hypothesis::none();

  // Inconsistency check: a negative strictly inside the positive span.
  for (int i = 0; i < subset.n(); ++i) {
    const auto& ex = subset.examples[static_cast<size_t>(i)];
    if (*ex.y < 0 && ex.x[0] >= pos_lo && ex.x[0] <= pos_hi)
      throw std::invalid_argument("learn_consistent_interval: not realizable");
  }

  if (mode == ConsistentMode::Least)
    return Hypothesis::interval(pos_lo, pos_hi);

  // Greatest: grow to the grid points adjacent to the nearest negatives.
  double lo = domain_lo, hi = domain_hi;
  for (int i = 0; i < subset.n(); ++i) {
    const auto& ex = subset.examples[static_cast<size_t>(i)];
    if (*ex.y < 0) {
      const double x = ex.x[0];
      if (x < pos_lo) lo = std::max(lo, x + 1.0);
      if (x > pos_hi) hi = std::min(hi, x - 1.0);
    }
  }
  return Hypothesis::interval(lo, hi);
}

Hypothesis apply_learner(const TrainingSet& subset, const LearnerSpec& spec) {
  switch (spec.kind) {
    case LearnerKind::GaussMeanMLE:
      return learn_gauss_mean(subset);
    case LearnerKind::LargeMargin1D:
      return learn_large_margin_1d(subset);
    case LearnerKind::LogisticERM:
      return learn_logistic_erm(subset, spec.lambda, spec.tol).theta_hat;
    case LearnerKind::RidgeERM:
      return learn_ridge_erm(subset, spec.lambda).theta_hat;
    case LearnerKind::IntervalMLE:
      return learn_interval_mle(subset);
    case LearnerKind::LeastConsistent:
      return learn_consistent_interval(subset, ConsistentMode::Least,
                                       spec.domain_lo, spec.domain_hi);
    case LearnerKind::GreatestConsistent:
      return learn_consistent_interval(subset, ConsistentMode::Greatest,
                                       spec.domain_lo, spec.domain_hi);
  }
  throw std::logic_error("unreachable");
}

}  // namespace superteach
