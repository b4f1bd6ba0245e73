#include "superteach/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace superteach {

TrainingSet TrainingSet::from_scalars(const std::vector<double>& xs) {
  TrainingSet s;
  s.d = 1;
  s.examples.reserve(xs.size());
  for (double v : xs) {
    Vec x(1);
    x[0] = v;
    s.examples.push_back({std::move(x), std::nullopt});
  }
  return s;
}

TrainingSet TrainingSet::from_labeled_scalars(const std::vector<double>& xs,
                                              const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("from_labeled_scalars: size mismatch");
  TrainingSet s;
  s.d = 1;
  s.examples.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    Vec x(1);
    x[0] = xs[i];
    s.examples.push_back({std::move(x), ys[i]});
  }
  return s;
}

TrainingSet TrainingSet::subset(const std::vector<int>& indices) const {
  TrainingSet out;
  out.d = d;
  out.examples.reserve(indices.size());
  for (int i : indices) {
    if (i < 0 || i >= n()) throw std::invalid_argument("subset: index out of range");
    out.examples.push_back(examples[static_cast<size_t>(i)]);
  }
  return out;
}

int SubsetMask::count() const {
  return static_cast<int>(std::count(bits.begin(), bits.end(), uint8_t{1}));
}

std::vector<int> SubsetMask::indices() const {
  std::vector<int> idx;
  for (int i = 0; i < n(); ++i)
    if (bits[static_cast<size_t>(i)]) idx.push_back(i);
  return idx;
}

SubsetMask SubsetMask::all_ones(int n) {
  SubsetMask m;
  m.bits.assign(static_cast<size_t>(n), 1);
  return m;
}

SubsetMask SubsetMask::from_indices(int n, const std::vector<int>& idx) {
  SubsetMask m;
  m.bits.assign(static_cast<size_t>(n), 0);
  for (int i : idx) {
    if (i < 0 || i >= n) throw std::invalid_argument("from_indices: out of range");
    m.bits[static_cast<size_t>(i)] = 1;
  }
  return m;
}

Hypothesis Hypothesis::interval(double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("interval: lo > hi");
  return Hypothesis(IntervalHyp{lo, hi});
}

std::string Hypothesis::describe() const {
  std::ostringstream os;
  if (is_empty()) {
    os << "empty";
  } else if (is_scalar()) {
    os << as_scalar();
  } else if (is_interval()) {
    os << "[" << as_interval().lo << ", " << as_interval().hi << "]";
  } else {
    os << "(";
    const Vec& v = as_vector();
    for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
  }
  return os.str();
}

void TaskSpec::validate() const {
  if (d < 1) throw std::invalid_argument("TaskSpec: d must be positive");
  if (lambda <= 0) throw std::invalid_argument("TaskSpec: lambda must be positive");
  if (noise_var < 0) throw std::invalid_argument("TaskSpec: negative noise_var");
  switch (task) {
    case Task::Halfspace:
      if (risk_kind != RiskKind::Angular01)
        throw std::invalid_argument("TaskSpec: Halfspace requires Angular01 risk");
      if (!theta_star.is_vector())
        throw std::invalid_argument("TaskSpec: Halfspace needs vector theta_star");
      break;
    case Task::ConsistentInterval:
      if (risk_kind != RiskKind::SymmetricDifference)
        throw std::invalid_argument(
            "TaskSpec: ConsistentInterval requires SymmetricDifference risk");
      if (!theta_star.is_interval())
        throw std::invalid_argument("TaskSpec: interval theta_star expected");
      break;
    case Task::LinReg:
      if (risk_kind != RiskKind::ParamDistance)
        throw std::invalid_argument("TaskSpec: LinReg requires ParamDistance risk");
      if (!theta_star.is_vector())
        throw std::invalid_argument("TaskSpec: LinReg needs vector theta_star");
      break;
    default:
      if (risk_kind != RiskKind::ParamDistance)
        throw std::invalid_argument("TaskSpec: ParamDistance risk expected");
      if (!theta_star.is_scalar())
        throw std::invalid_argument("TaskSpec: scalar theta_star expected");
      break;
  }
}

double risk_param_distance(const Hypothesis& theta_hat,
                           const Hypothesis& theta_star) {
  if (theta_hat.is_empty() || theta_star.is_empty())
    throw std::invalid_argument("undefined risk: empty hypothesis");
  if (theta_hat.is_scalar() && theta_star.is_scalar())
    return std::abs(theta_hat.as_scalar() - theta_star.as_scalar());
  if (theta_hat.is_vector() && theta_star.is_vector()) {
    const Vec& a = theta_hat.as_vector();
    const Vec& b = theta_star.as_vector();
    if (a.size() != b.size())
      throw std::invalid_argument("risk_param_distance: dimension mismatch");
    return (a - b).norm();
  }
  throw std::invalid_argument("risk_param_distance: incompatible hypotheses");
}

double risk_angular_01(const Vec& theta_hat, const Vec& theta_star) {
  if (theta_star.norm() == 0.0)
    throw std::invalid_argument("risk_angular_01: zero theta_star");
  if (theta_hat.size() != theta_star.size())
    throw std::invalid_argument("risk_angular_01: dimension mismatch");
  const double nh = theta_hat.norm();
  if (nh == 0.0) return 0.5;  // direction-free predictor
  double c = theta_hat.dot(theta_star) / (nh * theta_star.norm());
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c) / M_PI;
}

namespace {
double interval_len(const Hypothesis& h) {
  if (h.is_empty()) return 0.0;
  const IntervalHyp& iv = h.as_interval();
  return iv.hi - iv.lo;
}

double intersection_len(const Hypothesis& a, const Hypothesis& b) {
  if (a.is_empty() || b.is_empty()) return 0.0;
  const IntervalHyp& u = a.as_interval();
  const IntervalHyp& v = b.as_interval();
  return std::max(0.0, std::min(u.hi, v.hi) - std::max(u.lo, v.lo));
}
}  // namespace

double risk_symmetric_difference(const Hypothesis& theta_hat,
                                 const Hypothesis& theta_star,
                                 double domain_lo, double domain_hi) {
  if (!(domain_hi > domain_lo))
    throw std::invalid_argument("risk_symmetric_difference: degenerate domain");
  if (!theta_hat.is_empty() && !theta_hat.is_interval())
    throw std::invalid_argument("risk_symmetric_difference: interval expected");
  if (!theta_star.is_empty() && !theta_star.is_interval())
    throw std::invalid_argument("risk_symmetric_difference: interval expected");
  const double sym = interval_len(theta_hat) + interval_len(theta_star) -
                     2.0 * intersection_len(theta_hat, theta_star);
  return sym / (domain_hi - domain_lo);
}

double RiskSpec::operator()(const Hypothesis& theta_hat) const {
  switch (kind) {
    case RiskKind::ParamDistance:
      return risk_param_distance(theta_hat, theta_star);
    case RiskKind::Angular01:
      if (theta_hat.is_empty())
        throw std::invalid_argument("undefined risk: empty hypothesis");
      return risk_angular_01(theta_hat.as_vector(), theta_star.as_vector());
    case RiskKind::SymmetricDifference:
      return risk_symmetric_difference(theta_hat, theta_star, domain_lo, domain_hi);
  }
  throw std::logic_error("unreachable");
}

}  // namespace superteach
