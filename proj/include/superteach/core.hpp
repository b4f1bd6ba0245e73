#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace superteach {

using Vec = Eigen::VectorXd;

// One training item z = (x, y). y is absent for unsupervised tasks,
// real-valued for regression, and +/-1 for classification.
struct Example {
  Vec x;
  std::optional<double> y;
};

// An ordered multiset of examples. Order is stable: subset masks refer to
// items by index.
struct TrainingSet {
  std::vector<Example> examples;
  int d = 0;

  int n() const { return static_cast<int>(examples.size()); }
  bool empty() const { return examples.empty(); }

  // Scalar view of a 1D item.
  double x1(int i) const { return examples[static_cast<size_t>(i)].x[0]; }
  double label(int i) const { return *examples[static_cast<size_t>(i)].y; }

  static TrainingSet from_scalars(const std::vector<double>& xs);
  static TrainingSet from_labeled_scalars(const std::vector<double>& xs,
                                          const std::vector<double>& ys);

  // The sub-multiset selected by a strictly increasing index list.
  TrainingSet subset(const std::vector<int>& indices) const;
};

// Length-n binary selection vector over a TrainingSet.
struct SubsetMask {
  std::vector<uint8_t> bits;

  int n() const { return static_cast<int>(bits.size()); }
  int count() const;
  std::vector<int> indices() const;

  static SubsetMask all_ones(int n);
  static SubsetMask from_indices(int n, const std::vector<int>& idx);
};

struct IntervalHyp {
  double lo = 0.0;
  double hi = 0.0;
};

// Learner output. Scalar for 1D estimation, Vector for d-dim models,
// Interval for the consistent-interval learners, Empty when a learner has
// nothing to return (no positive items).
class Hypothesis {
 public:
  struct EmptyTag {};

  Hypothesis() : value_(EmptyTag{}) {}
  static Hypothesis scalar(double v) { return Hypothesis(v); }
  static Hypothesis vector(Vec v) { return Hypothesis(std::move(v)); }
  static Hypothesis interval(double lo, double hi);
  static Hypothesis none() { return Hypothesis(); }

  bool is_scalar() const { return std::holds_alternative<double>(value_); }
  bool is_vector() const { return std::holds_alternative<Vec>(value_); }
  bool is_interval() const { return std::holds_alternative<IntervalHyp>(value_); }
  bool is_empty() const { return std::holds_alternative<EmptyTag>(value_); }

  double as_scalar() const { return std::get<double>(value_); }
  const Vec& as_vector() const { return std::get<Vec>(value_); }
  const IntervalHyp& as_interval() const { return std::get<IntervalHyp>(value_); }

  std::string describe() const;

 private:
  explicit Hypothesis(double v) : value_(v) {}
  explicit Hypothesis(Vec v) : value_(std::move(v)) {}
  explicit Hypothesis(IntervalHyp v) : value_(v) {}

  std::variant<double, Vec, IntervalHyp, EmptyTag> value_;
};

enum class Task {
  Gauss1D,
  Margin1D,
  Halfspace,
  LinReg,
  IntervalMle,
  ConsistentInterval,
};

enum class RiskKind {
  ParamDistance,
  Angular01,
  SymmetricDifference,
};

struct TaskSpec {
  Task task = Task::Gauss1D;
  int d = 1;
  Hypothesis theta_star;
  double noise_var = 0.0;
  double lambda = 0.1;
  RiskKind risk_kind = RiskKind::ParamDistance;

  // Throws std::invalid_argument on task/risk or theta_star mismatch.
  void validate() const;
};

// Euclidean parameter distance ||theta_hat - theta_star||.
double risk_param_distance(const Hypothesis& theta_hat,
                           const Hypothesis& theta_star);

// Expected 0-1 loss of a halfspace under N(0, I): angle / pi.
// theta_hat = 0 has no direction and scores 0.5.
double risk_angular_01(const Vec& theta_hat, const Vec& theta_star);

// Length of the symmetric difference between two intervals, normalized by
// the domain length. Empty counts as a zero-length interval.
double risk_symmetric_difference(const Hypothesis& theta_hat,
                                 const Hypothesis& theta_star,
                                 double domain_lo, double domain_hi);

// A risk functional bound to its target, usable uniformly by teachers.
struct RiskSpec {
  RiskKind kind = RiskKind::ParamDistance;
  Hypothesis theta_star;
  double domain_lo = 0.0;
  double domain_hi = 1.0;

  double operator()(const Hypothesis& theta_hat) const;
};

}  // namespace superteach
