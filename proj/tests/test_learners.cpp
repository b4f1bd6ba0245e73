#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superteach/datagen.hpp"
#include "superteach/learners.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace superteach;

namespace {

double logistic_objective(const TrainingSet& s, double lambda, const Vec& theta) {
  double obj = 0.5 * lambda * theta.squaredNorm();
  for (const auto& ex : s.examples) {
    const double m = *ex.y * ex.x.dot(theta);
    obj += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
  }
  return obj;
}

double ridge_objective(const TrainingSet& s, double lambda, const Vec& theta) {
  double obj = 0.5 * lambda * theta.squaredNorm();
  for (const auto& ex : s.examples) {
    const double r = ex.x.dot(theta) - *ex.y;
    obj += r * r;
  }
  return obj;
}

// Bisection on the scalar stationarity equation lambda t = 1/(1 + e^t).
double logistic_1d_oracle(double lambda) {
  double lo = 0.0, hi = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (lambda * mid < 1.0 / (1.0 + std::exp(mid)) ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

TrainingSet labeled_1d(std::vector<std::pair<double, double>> items) {
  std::vector<double> xs, ys;
  for (auto [x, y] : items) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return TrainingSet::from_labeled_scalars(xs, ys);
}

}  // namespace

TEST_CASE("gauss mean learner") {
  CHECK(learn_gauss_mean(TrainingSet::from_scalars({3.0})).as_scalar() == 3.0);
  CHECK(learn_gauss_mean(TrainingSet::from_scalars({1.0, 2.0, 3.0})).as_scalar() ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(learn_gauss_mean(TrainingSet{}), std::invalid_argument);
}

TEST_CASE("large margin 1d learner") {
  const auto s =
      labeled_1d({{-0.6, -1}, {-0.2, -1}, {0.3, 1}, {0.9, 1}});
  CHECK(learn_large_margin_1d(s).as_scalar() == doctest::Approx(0.05));
  CHECK(learn_large_margin_1d(labeled_1d({{0.3, 1}, {0.9, 1}})).as_scalar() ==
        -1.0);
  CHECK(learn_large_margin_1d(labeled_1d({{-0.6, -1}})).as_scalar() == 1.0);
  CHECK_THROWS_AS(learn_large_margin_1d(TrainingSet{}), std::invalid_argument);
  // negative to the right of a positive
  CHECK_THROWS_AS(learn_large_margin_1d(labeled_1d({{0.5, -1}, {0.1, 1}})),
                  std::invalid_argument);
}

TEST_CASE("logistic ERM solves the stationarity equation") {
  TrainingSet empty;
  empty.d = 2;
  const auto zero = learn_logistic_erm(empty, 0.1);
  CHECK(zero.theta_hat.as_vector().norm() == 0.0);

  const auto single = labeled_1d({{1.0, 1.0}});
  const auto rep = learn_logistic_erm(single, 0.1);
  CHECK(rep.kkt_residual_norm <= 1e-8);
  CHECK(rep.theta_hat.as_vector()[0] ==
        doctest::Approx(logistic_1d_oracle(0.1)).epsilon(1e-8));
  CHECK(rep.theta_hat.as_vector()[0] == doctest::Approx(1.634).epsilon(1e-3));
}

TEST_CASE("logistic ERM is invariant under joint negation of (x, y)") {
  const auto s = labeled_1d({{0.4, 1}, {-0.7, -1}, {1.2, 1}, {-0.1, 1}});
  TrainingSet flipped = s;
  for (auto& ex : flipped.examples) {
    ex.x = -ex.x;
    ex.y = -*ex.y;
  }
  const auto a = learn_logistic_erm(s, 0.1).theta_hat.as_vector();
  const auto b = learn_logistic_erm(flipped, 0.1).theta_hat.as_vector();
  CHECK((a - b).norm() <= 1e-12);
}

TEST_CASE("ERM gradients match central finite differences") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3;
    const auto s = sample_halfspace(12, d, default_theta_star(d), Seed{rng.next_u64()});
    const double lambda = 0.1;

    for (const bool logistic : {true, false}) {
      TrainingSet data = s;
      if (!logistic)
        for (auto& ex : data.examples) ex.y = ex.x.sum() + 0.1;  // regression-ish
      const SolveReport rep =
          logistic ? learn_logistic_erm(data, lambda)
                   : learn_ridge_erm(data, lambda);
      const Vec theta = rep.theta_hat.as_vector();
      CHECK(rep.kkt_residual_norm <= 1e-7);

      // central differences of the objective at a nearby random point
      Vec probe = theta;
      for (int i = 0; i < d; ++i) probe[i] += 0.05 * rng.normal();
      const double h = 1e-6;
      for (int i = 0; i < d; ++i) {
        Vec p = probe, q = probe;
        p[i] += h;
        q[i] -= h;
        const double fd =
            logistic
                ? (logistic_objective(data, lambda, p) -
                   logistic_objective(data, lambda, q)) / (2 * h)
                : (ridge_objective(data, lambda, p) -
                   ridge_objective(data, lambda, q)) / (2 * h);
        // analytic gradient component at probe
        double g = lambda * probe[i];
        for (const auto& ex : data.examples) {
          if (logistic) {
            g += -(*ex.y) * ex.x[i] / (1.0 + std::exp(*ex.y * ex.x.dot(probe)));
          } else {
            g += 2.0 * (ex.x.dot(probe) - *ex.y) * ex.x[i];
          }
        }
        CHECK(fd == doctest::Approx(g).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("ridge ERM closed form") {
  const auto s = labeled_1d({{1.0, 2.0}});
  const auto rep = learn_ridge_erm(s, 0.1);
  CHECK(rep.theta_hat.as_vector()[0] == doctest::Approx(2.0 / 1.05).epsilon(1e-12));
  CHECK(rep.kkt_residual_norm <= 1e-10);

  TrainingSet empty;
  empty.d = 3;
  CHECK(learn_ridge_erm(empty, 0.1).theta_hat.as_vector().norm() == 0.0);
}

TEST_CASE("ridge with vanishing lambda recovers noiseless data") {
  const int d = 3;
  Vec t(d);
  t << 0.5, -1.0, 2.0;
  const auto s = sample_linreg(50, d, t, 0.0, Seed{99});
  const auto rep = learn_ridge_erm(s, 1e-8);
  CHECK((rep.theta_hat.as_vector() - t).norm() <= 1e-3);

  // independent oracle: exact least squares on the same data
  Eigen::MatrixXd X(s.n(), d);
  Vec y(s.n());
  for (int i = 0; i < s.n(); ++i) {
    X.row(i) = s.examples[i].x.transpose();
    y[i] = *s.examples[i].y;
  }
  const Vec ls = (X.transpose() * X).ldlt().solve(X.transpose() * y);
  CHECK((rep.theta_hat.as_vector() - ls).norm() <= 1e-6);
}

TEST_CASE("ridge closed form agrees with the generic Newton route") {
  Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_u64() % 4);
    Vec t(d);
    for (int i = 0; i < d; ++i) t[i] = rng.normal();
    const auto s = sample_linreg(10, d, t, 0.1, Seed{rng.next_u64()});
    const Vec direct = learn_ridge_erm(s, 0.1).theta_hat.as_vector();
    const Vec newton =
        erm_newton(s, ErmLoss::Squared, 0.1, 1e-12).theta_hat.as_vector();
    CHECK((direct - newton).norm() <= 1e-8);
  }
}

TEST_CASE("interval MLE") {
  CHECK(learn_interval_mle(TrainingSet::from_scalars({0.3, 0.7, 0.5})).as_scalar() ==
        0.7);
  CHECK(learn_interval_mle(TrainingSet::from_scalars({0.7})).as_scalar() == 0.7);
  CHECK_THROWS_AS(learn_interval_mle(TrainingSet{}), std::invalid_argument);

  // monotone under subsets, exhaustively
  Rng rng(7);
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(rng.uniform(0, 1));
  const auto S = TrainingSet::from_scalars(xs);
  const double full = learn_interval_mle(S).as_scalar();
  for (uint32_t bits = 1; bits < (1u << 10); ++bits) {
    std::vector<int> idx;
    for (int i = 0; i < 10; ++i)
      if (bits & (1u << i)) idx.push_back(i);
    CHECK(learn_interval_mle(S.subset(idx)).as_scalar() <= full);
  }
}

TEST_CASE("consistent interval learners on the documented grid set") {
  const auto S = labeled_1d({{1, -1}, {4, 1}, {5, 1}, {8, -1}});
  const auto least = learn_consistent_interval(S, ConsistentMode::Least, 0, 10);
  CHECK(least.as_interval().lo == 4.0);
  CHECK(least.as_interval().hi == 5.0);
  const auto greatest =
      learn_consistent_interval(S, ConsistentMode::Greatest, 0, 10);
  CHECK(greatest.as_interval().lo == 2.0);
  CHECK(greatest.as_interval().hi == 7.0);

  const auto none = labeled_1d({{1, -1}, {8, -1}});
  CHECK(learn_consistent_interval(none, ConsistentMode::Least, 0, 10).is_empty());

  const auto bad = labeled_1d({{3, 1}, {5, -1}, {7, 1}});
  CHECK_THROWS_AS(learn_consistent_interval(bad, ConsistentMode::Least, 0, 10),
                  std::invalid_argument);
}

TEST_CASE("least is nested inside theta_star inside greatest") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int lo = 0, hi = 20;
    int a = static_cast<int>(rng.next_u64() % 18) + 1;
    int b = a + static_cast<int>(rng.next_u64() % (19 - a));
    std::vector<double> xs, ys;
    bool any_pos = false;
    for (int i = 0; i < 12; ++i) {
      const int x = static_cast<int>(rng.next_u64() % 21);
      const bool pos = x >= a && x <= b;
      any_pos |= pos;
      xs.push_back(x);
      ys.push_back(pos ? 1.0 : -1.0);
    }
    if (!any_pos) continue;
    const auto S = TrainingSet::from_labeled_scalars(xs, ys);
    const auto L = learn_consistent_interval(S, ConsistentMode::Least, lo, hi);
    const auto G = learn_consistent_interval(S, ConsistentMode::Greatest, lo, hi);
    CHECK(L.as_interval().lo >= a);
    CHECK(L.as_interval().hi <= b);
    CHECK(G.as_interval().lo <= a);
    CHECK(G.as_interval().hi >= b);
    CHECK(L.as_interval().lo >= G.as_interval().lo);
    CHECK(L.as_interval().hi <= G.as_interval().hi);
  }
}
