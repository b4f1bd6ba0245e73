// Command line front end: data generation, teaching, experiment sweeps,
// rate fitting, and tail validation.

#include "superteach/datagen.hpp"
#include "superteach/harness.hpp"
#include "superteach/io.hpp"
#include "superteach/teachers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using json = nlohmann::json;
using namespace superteach;

namespace {

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

struct TaskSetup {
  TaskSpec spec;
  LearnerSpec learner;
};

// Resolve task name + flags into a TaskSpec/LearnerSpec pair.
TaskSetup make_task(const std::string& task, int d, const std::string& theta_star,
                    double noise_var, double lambda) {
  TaskSetup out;
  out.spec.d = d;
  out.spec.lambda = lambda;
  out.spec.noise_var = noise_var;
  out.learner.lambda = lambda;

  const auto scalar_theta = [&](double dflt) {
    return theta_star.empty() ? dflt : parse_doubles(theta_star).at(0);
  };
  const auto vector_theta = [&]() {
    if (theta_star.empty()) return default_theta_star(d);
    const auto v = parse_doubles(theta_star);
    if (static_cast<int>(v.size()) != d)
      throw std::invalid_argument("--theta-star length must equal d");
    Vec t(d);
    for (int i = 0; i < d; ++i) t[i] = v[static_cast<size_t>(i)];
    return t;
  };

  if (task == "gauss1d") {
    out.spec.task = Task::Gauss1D;
    out.spec.d = 1;
    out.spec.theta_star = Hypothesis::scalar(scalar_theta(0.0));
    out.learner.kind = LearnerKind::GaussMeanMLE;
  } else if (task == "margin1d") {
    out.spec.task = Task::Margin1D;
    out.spec.d = 1;
    out.spec.theta_star = Hypothesis::scalar(scalar_theta(0.0));
    out.learner.kind = LearnerKind::LargeMargin1D;
  } else if (task == "logistic" || task == "halfspace") {
    out.spec.task = Task::Halfspace;
    out.spec.risk_kind = RiskKind::Angular01;
    out.spec.theta_star = Hypothesis::vector(vector_theta());
    out.learner.kind = LearnerKind::LogisticERM;
  } else if (task == "ridge" || task == "linreg") {
    out.spec.task = Task::LinReg;
    out.spec.theta_star = Hypothesis::vector(vector_theta());
    out.learner.kind = LearnerKind::RidgeERM;
  } else {
    throw std::invalid_argument("unknown task '" + task + "'");
  }
  return out;
}

TeacherSpec make_teacher(const std::string& teacher, int k,
                         const std::string& strategy, uint64_t seed) {
  TeacherSpec t;
  if (teacher == "identity") {
    t.kind = TeacherSpec::Kind::Identity;
  } else if (teacher == "bk") {
    t.kind = TeacherSpec::Kind::OptimalK;
    t.k = k;
  } else if (teacher == "bms") {
    t.kind = TeacherSpec::Kind::MostSymmetric;
  } else if (teacher == "search") {
    t.kind = TeacherSpec::Kind::SubsetSearch;
    if (strategy == "exhaustive") {
      t.strategy.kind = SearchStrategy::Kind::Exhaustive;
    } else if (strategy == "greedy") {
      t.strategy.kind = SearchStrategy::Kind::GreedyForward;
    } else if (strategy == "localswap") {
      t.strategy.kind = SearchStrategy::Kind::LocalSwap;
      t.strategy.seed = Seed{seed};
    } else if (strategy == "fixedk") {
      t.strategy.kind = SearchStrategy::Kind::FixedK;
      t.strategy.k = k;
    } else {
      throw std::invalid_argument("unknown strategy '" + strategy + "'");
    }
  } else {
    throw std::invalid_argument("unknown teacher '" + teacher + "'");
  }
  return t;
}

json theta_to_json(const Hypothesis& h) {
  json arr = json::array();
  if (h.is_scalar()) {
    arr.push_back(h.as_scalar());
  } else if (h.is_vector()) {
    for (int i = 0; i < h.as_vector().size(); ++i)
      arr.push_back(h.as_vector()[i]);
  }
  return arr;
}

void write_or_stdout(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
  } else {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    os << body;
  }
}

TrainingSet load_data(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open input file " + path);
  return read_data_csv(is);
}

void check_schema(const TrainingSet& s, const TaskSetup& t) {
  const bool labeled =
      !s.examples.empty() && s.examples.front().y.has_value();
  const bool wants_labels = t.spec.task != Task::Gauss1D;
  if (labeled != wants_labels)
    throw std::invalid_argument("data schema does not match the task");
  if ((t.spec.task == Task::Gauss1D || t.spec.task == Task::Margin1D) &&
      s.d != 1)
    throw std::invalid_argument("task requires 1D data");
}

int cmd_gen(const std::string& task, int n, int d, const std::string& theta_star,
            double noise_var, uint64_t seed, const std::string& out) {
  const TaskSetup setup = make_task(task, d, theta_star, noise_var, 0.1);
  TrainingSet s;
  switch (setup.spec.task) {
    case Task::Gauss1D:
      s = sample_gauss1d(n, setup.spec.theta_star.as_scalar(), Seed{seed});
      break;
    case Task::Margin1D:
      s = sample_margin1d(n, Seed{seed});
      break;
    case Task::Halfspace:
      s = sample_halfspace(n, d, setup.spec.theta_star.as_vector(), Seed{seed});
      break;
    case Task::LinReg:
      s = sample_linreg(n, d, setup.spec.theta_star.as_vector(), noise_var,
                        Seed{seed});
      break;
    default:
      throw std::invalid_argument("unsupported task");
  }
  std::ostringstream body;
  write_data_csv(s, body);
  write_or_stdout(out, body.str());
  std::cerr << "wrote " << n << " examples (task " << task << ")\n";
  return 0;
}

int cmd_teach(const std::string& task, const std::string& teacher, int k,
              const std::string& strategy, const std::string& theta_star,
              double lambda, uint64_t seed, const std::string& in,
              const std::string& out, const std::string& emit_plot) {
  const TrainingSet S = load_data(in);
  const TaskSetup setup =
      make_task(task, S.d, theta_star, 0.1, lambda);
  check_schema(S, setup);
  const RiskSpec risk{setup.spec.risk_kind, setup.spec.theta_star};

  TeachingResult res;
  const TeacherSpec tspec = make_teacher(teacher, k, strategy, seed);
  switch (tspec.kind) {
    case TeacherSpec::Kind::Identity:
      res = teach_identity(S, setup.learner, risk);
      break;
    case TeacherSpec::Kind::OptimalK:
      res = teach_optimal_k_subset(S, k, setup.learner, risk);
      break;
    case TeacherSpec::Kind::MostSymmetric:
      res = teach_most_symmetric(S, setup.spec.theta_star.as_scalar());
      break;
    case TeacherSpec::Kind::SubsetSearch:
      res = teach_subset_search(S, setup.learner, risk, tspec.strategy);
      break;
  }

  json j;
  j["indices"] = res.mask.indices();
  j["theta_subset"] = theta_to_json(res.theta_subset);
  j["theta_full"] = theta_to_json(res.theta_full);
  j["risk_subset"] = res.risk_subset;
  j["risk_full"] = res.risk_full;
  j["ratio"] = res.ratio;
  j["evaluations"] = res.evaluations;
  write_or_stdout(out, j.dump(2) + "\n");

  if (!emit_plot.empty()) {
    std::ofstream pts(emit_plot + "_points.csv", std::ios::binary);
    for (int c = 0; c < S.d; ++c) pts << "x" << c << ",";
    const bool labeled = S.examples.front().y.has_value();
    if (labeled) pts << "y,";
    pts << "selected\n";
    for (int i = 0; i < S.n(); ++i) {
      for (int c = 0; c < S.d; ++c)
        pts << format_double(S.examples[static_cast<size_t>(i)].x[c]) << ",";
      if (labeled) pts << format_double(S.label(i)) << ",";
      pts << int(res.mask.bits[static_cast<size_t>(i)]) << "\n";
    }
    std::ofstream lines(emit_plot + "_lines.csv", std::ios::binary);
    lines << "model";
    const int dim = setup.spec.theta_star.is_scalar()
                        ? 1
                        : static_cast<int>(setup.spec.theta_star.as_vector().size());
    for (int c = 0; c < dim; ++c) lines << ",c" << c;
    lines << "\n";
    const auto emit = [&](const std::string& name, const Hypothesis& h) {
      lines << name;
      for (const auto& v : theta_to_json(h))
        lines << "," << format_double(v.get<double>());
      lines << "\n";
    };
    emit("theta_full", res.theta_full);
    emit("theta_subset", res.theta_subset);
    emit("theta_star", setup.spec.theta_star);
  }

  std::cerr << "ratio " << res.ratio << " with " << res.mask.count() << "/"
            << S.n() << " items\n";
  return 0;
}

int cmd_experiment(const std::string& task, const std::string& teacher, int k,
                   const std::string& strategy, const std::string& theta_star,
                   double lambda, double noise_var, const std::string& n_list,
                   const std::string& d_list, int n_fixed, int d_fixed,
                   int trials, uint64_t seed, int jobs, const std::string& out,
                   const std::string& medians_out) {
  if (n_list.empty() && d_list.empty())
    throw std::invalid_argument("one of --n-list or --d-list is required");

  std::vector<TrialRecord> records;
  std::vector<SummaryRow> medians;
  if (!d_list.empty()) {
    for (int d : parse_ints(d_list)) {
      ExperimentConfig cfg;
      const TaskSetup setup = make_task(task, d, theta_star, noise_var, lambda);
      cfg.task = setup.spec;
      cfg.teacher = make_teacher(teacher, k, strategy, seed);
      cfg.n_list = {n_fixed};
      cfg.trials = trials;
      cfg.master_seed = mix64(seed ^ static_cast<uint64_t>(d));
      cfg.jobs = jobs;
      const auto recs = run_trials(cfg);
      records.insert(records.end(), recs.begin(), recs.end());
    }
    medians = summarize_by_d(records);
  } else {
    ExperimentConfig cfg;
    const TaskSetup setup = make_task(task, d_fixed, theta_star, noise_var, lambda);
    cfg.task = setup.spec;
    cfg.teacher = make_teacher(teacher, k, strategy, seed);
    cfg.n_list = parse_ints(n_list);
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.jobs = jobs;
    records = run_trials(cfg);
    medians = summarize(records);
  }

  {
    std::ostringstream body;
    write_results_csv(records, task, teacher, body);
    write_or_stdout(out, body.str());
  }
  {
    std::ostringstream body;
    write_medians_csv(medians, body);
    write_or_stdout(medians_out, body.str());
  }
  int failures = 0;
  for (const auto& r : records)
    if (!r.error.empty()) ++failures;
  std::cerr << records.size() << " trials, " << failures << " failed\n";
  return 0;
}

int cmd_rates(const std::string& in) {
  std::ifstream is(in);
  if (!is) throw std::invalid_argument("cannot open input file " + in);
  const auto records = read_results_csv(is);

  std::map<int, std::vector<double>> full, sub;
  for (const auto& r : records) {
    if (!r.error.empty()) continue;
    full[r.n].push_back(r.risk_full);
    sub[r.n].push_back(r.risk_subset);
  }
  if (full.size() < 3)
    throw std::invalid_argument("rates: need at least 3 distinct n");

  const auto median_points = [](std::map<int, std::vector<double>>& groups) {
    std::vector<std::pair<double, double>> pts;
    for (auto& [n, vals] : groups) {
      std::sort(vals.begin(), vals.end());
      pts.emplace_back(n, vals[(vals.size() - 1) / 2]);
    }
    return pts;
  };

  json j;
  for (const auto& [name, groups] : std::map<std::string,
                                             std::map<int, std::vector<double>>*>{
           {"risk_full", &full}, {"risk_subset", &sub}}) {
    const RateFit fit = fit_rate(median_points(*groups));
    j[name] = {{"slope", fit.slope},
               {"intercept", fit.intercept},
               {"r_squared", fit.r_squared}};
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_tail(int n, double eps, int trials, uint64_t seed) {
  const double exact = margin_tail_exact(n, eps);
  const TailEstimate mc = margin_tail_mc(n, eps, trials, Seed{seed});
  // SE floor from the exact probability so that tails far below 1/trials
  // with zero observed hits still count as agreement
  const double se =
      std::max(mc.std_error, std::sqrt(exact * (1.0 - exact) / trials));
  const bool pass =
      std::abs(mc.estimate - exact) <= 4.0 * se || mc.estimate == exact;
  json j = {{"exact", exact},
            {"mc_estimate", mc.estimate},
            {"std_error", mc.std_error},
            {"pass", pass}};
  std::cout << j.dump(2) << "\n";
  std::cerr << (pass ? "pass" : "FAIL") << " at 4 standard errors\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"super-teaching subset selection toolkit"};
  app.require_subcommand(1);

  std::string task, teacher = "bk", strategy = "exhaustive", theta_star;
  std::string in, out, medians_out, emit_plot, n_list, d_list;
  int n = 0, d = 2, k = 1, trials = 10, jobs = 1;
  double lambda = 0.1, noise_var = 0.1, eps = 0.5;
  uint64_t seed = 0;

  auto* gen = app.add_subcommand("gen", "generate a synthetic data CSV");
  gen->add_option("--task", task)->required();
  gen->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  gen->add_option("--d", d);
  gen->add_option("--theta-star", theta_star);
  gen->add_option("--noise-var", noise_var);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out);

  auto* teach = app.add_subcommand("teach", "select a teaching subset");
  teach->add_option("--task", task)->required();
  teach->add_option("--teacher", teacher)->required();
  teach->add_option("--k", k);
  teach->add_option("--strategy", strategy);
  teach->add_option("--theta-star", theta_star);
  teach->add_option("--lambda", lambda);
  teach->add_option("--seed", seed);
  teach->add_option("--in", in)->required();
  teach->add_option("--out", out);
  teach->add_option("--emit-plot", emit_plot);

  auto* exp = app.add_subcommand("experiment", "Monte Carlo teaching sweep");
  exp->add_option("--task", task)->required();
  exp->add_option("--teacher", teacher);
  exp->add_option("--k", k);
  exp->add_option("--strategy", strategy);
  exp->add_option("--theta-star", theta_star);
  exp->add_option("--lambda", lambda);
  exp->add_option("--noise-var", noise_var);
  exp->add_option("--n-list", n_list);
  exp->add_option("--d-list", d_list);
  exp->add_option("--n", n);
  exp->add_option("--d", d);
  exp->add_option("--trials", trials)->check(CLI::PositiveNumber);
  exp->add_option("--seed", seed);
  exp->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  exp->add_option("--out", out);
  exp->add_option("--medians", medians_out);

  auto* rates = app.add_subcommand("rates", "fit log-log risk rates");
  rates->add_option("--in", in)->required();

  auto* tail = app.add_subcommand("tail", "validate the exact margin tail law");
  tail->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  tail->add_option("--eps", eps)->required();
  int tail_trials = 1000000;
  tail->add_option("--trials", tail_trials)->check(CLI::PositiveNumber);
  tail->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed())
      return cmd_gen(task, n, d, theta_star, noise_var, seed, out);
    if (teach->parsed())
      return cmd_teach(task, teacher, k, strategy, theta_star, lambda, seed, in,
                       out, emit_plot);
    if (exp->parsed())
      return cmd_experiment(task, teacher, k, strategy, theta_star, lambda,
                            noise_var, n_list, d_list, n, d,
                            trials, seed, jobs,
                            out.empty() ? "results.csv" : out,
                            medians_out.empty() ? "medians.csv" : medians_out);
    if (rates->parsed()) return cmd_rates(in);
    if (tail->parsed()) return cmd_tail(n, eps, tail_trials, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
