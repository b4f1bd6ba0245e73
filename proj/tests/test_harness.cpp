#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superteach/harness.hpp"

#include <cmath>

using namespace superteach;

namespace {

ExperimentConfig gauss_identity_config() {
  ExperimentConfig c;
  c.task.task = Task::Gauss1D;
  c.task.theta_star = Hypothesis::scalar(0.0);
  c.task.risk_kind = RiskKind::ParamDistance;
  c.teacher.kind = TeacherSpec::Kind::Identity;
  c.n_list = {8, 16};
  c.trials = 5;
  c.master_seed = 42;
  return c;
}

TrialRecord rec_with_ratio(int n, int trial, double ratio) {
  TrialRecord r;
  r.n = n;
  r.trial_index = trial;
  r.ratio = ratio;
  r.subset_fraction = 1.0;
  return r;
}

}  // namespace

TEST_CASE("identity sweep: shape, order, determinism, unit ratios") {
  const auto cfg = gauss_identity_config();
  const auto recs = run_trials(cfg);
  CHECK(recs.size() == 10);
  for (size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    CHECK(r.error.empty());
    CHECK(r.ratio == doctest::Approx(1.0));
    CHECK(r.subset_fraction == 1.0);
    CHECK(r.n == (i < 5 ? 8 : 16));
    CHECK(r.trial_index == static_cast<int>(i % 5));
    CHECK(r.seed == trial_seed(42, static_cast<uint64_t>(r.n),
                               static_cast<uint64_t>(r.trial_index)));
  }

  const auto again = run_trials(cfg);
  for (size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].risk_full == again[i].risk_full);
    CHECK(recs[i].risk_subset == again[i].risk_subset);
  }
}

TEST_CASE("threaded runs produce the same records as sequential runs") {
  auto cfg = gauss_identity_config();
  cfg.teacher.kind = TeacherSpec::Kind::OptimalK;
  cfg.teacher.k = 1;
  const auto seq = run_trials(cfg);
  cfg.jobs = 3;
  const auto par = run_trials(cfg);
  REQUIRE(seq.size() == par.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].n == par[i].n);
    CHECK(seq[i].trial_index == par[i].trial_index);
    CHECK(seq[i].risk_subset == par[i].risk_subset);
    CHECK(seq[i].ratio == par[i].ratio);
  }
}

TEST_CASE("run_trials validates its configuration") {
  auto cfg = gauss_identity_config();
  cfg.n_list = {16, 8};
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
  cfg.n_list = {8, 8};
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
  cfg.n_list = {};
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
  cfg = gauss_identity_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
}

TEST_CASE("summarize uses the lower-of-two median and skips bad ratios") {
  std::vector<TrialRecord> recs;
  recs.push_back(rec_with_ratio(8, 0, 0.1));
  recs.push_back(rec_with_ratio(8, 1, 0.3));
  recs.push_back(rec_with_ratio(16, 0, 0.5));
  recs.push_back(rec_with_ratio(16, 1, 0.2));
  recs.push_back(rec_with_ratio(16, 2, 0.9));
  auto nanrec = rec_with_ratio(16, 3, std::numeric_limits<double>::quiet_NaN());
  recs.push_back(nanrec);
  auto failed = rec_with_ratio(8, 2, 0.0);
  failed.error = "boom";
  recs.push_back(failed);

  const auto rows = summarize(recs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].key == 8);
  CHECK(rows[0].median_ratio == 0.1);  // lower of {0.1, 0.3}
  CHECK(rows[1].key == 16);
  CHECK(rows[1].median_ratio == 0.5);  // median of {0.5, 0.2, 0.9}; NaN dropped
  CHECK(rows[0].median_subset_fraction == 1.0);
}

TEST_CASE("summarize_by_d groups on dimension") {
  std::vector<TrialRecord> recs;
  for (int d : {2, 2, 8}) {
    auto r = rec_with_ratio(16, 0, d * 0.1);
    r.d = d;
    recs.push_back(r);
  }
  const auto rows = summarize_by_d(recs);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].key == 2);
  CHECK(rows[0].median_ratio == doctest::Approx(0.2));
  CHECK(rows[1].key == 8);
  CHECK(rows[1].median_ratio == doctest::Approx(0.8));
}

TEST_CASE("fit_rate recovers exact power laws") {
  for (const double s : {-2.0, 0.0, -0.5}) {
    std::vector<std::pair<double, double>> pts;
    for (double n : {10.0, 100.0, 1000.0, 10000.0})
      pts.emplace_back(n, 3.7 * std::pow(n, s));
    const auto fit = fit_rate(pts);
    CHECK(fit.slope == doctest::Approx(s).epsilon(1e-10));
    CHECK(fit.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(fit_rate({{1.0, 1.0}, {2.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({{1.0, 1.0}, {2.0, 0.0}, {3.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("margin tail closed form") {
  CHECK(margin_tail_exact(2, 0.5) == doctest::Approx(0.5));
  CHECK(margin_tail_exact(3, 0.7) == doctest::Approx(0.25));
  CHECK(margin_tail_exact(1, 0.3) == doctest::Approx(1.0));  // single item
  CHECK(margin_tail_exact(5, 1.0) == 0.0);
  // the two branches agree at eps = 1/2
  for (int n : {2, 5, 9})
    CHECK(margin_tail_exact(n, 0.5) ==
          doctest::Approx(std::pow(0.5, n - 1)).epsilon(1e-12));
  // monotone in n and eps
  for (int n = 2; n < 30; ++n)
    CHECK(margin_tail_exact(n + 1, 0.2) <= margin_tail_exact(n, 0.2));
  for (double e = 0.05; e < 0.45; e += 0.05)
    CHECK(margin_tail_exact(10, e + 0.05) <= margin_tail_exact(10, e) + 1e-15);

  CHECK_THROWS_AS(margin_tail_exact(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(margin_tail_exact(5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(margin_tail_exact(5, 1.5), std::invalid_argument);
}

TEST_CASE("margin tail Monte Carlo matches the closed form") {
  for (const auto& [n, eps] : std::vector<std::pair<int, double>>{
           {2, 0.5}, {3, 0.7}, {8, 0.2}, {16, 0.1}}) {
    const auto est = margin_tail_mc(n, eps, 200000, Seed{17});
    const double exact = margin_tail_exact(n, eps);
    CHECK(std::abs(est.estimate - exact) <= 4.0 * est.std_error + 1e-9);
    CHECK(est.std_error < 0.01);
  }
  const auto a = margin_tail_mc(5, 0.3, 1000, Seed{4});
  const auto b = margin_tail_mc(5, 0.3, 1000, Seed{4});
  CHECK(a.estimate == b.estimate);
}

TEST_CASE("rate brackets hold with high probability") {
  const double full = check_bracket(BracketMode::FullSample, 1, 10000, 0.3,
                                    400, Seed{23});
  CHECK(full >= 0.85);
  const double sub =
      check_bracket(BracketMode::KSubset, 1, 1000, 0.5, 300, Seed{29});
  CHECK(sub >= 0.85);
  CHECK(check_bracket(BracketMode::FullSample, 1, 100, 0.3, 50, Seed{1}) ==
        check_bracket(BracketMode::FullSample, 1, 100, 0.3, 50, Seed{1}));

  CHECK_THROWS_AS(check_bracket(BracketMode::KSubset, 1, 100, 1.5, 10, Seed{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_bracket(BracketMode::FullSample, 1, 100, -0.1, 10, Seed{1}),
                  std::invalid_argument);
}
