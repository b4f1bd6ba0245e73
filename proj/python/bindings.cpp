// Python surface over the C++ core: samplers, risks, learners, teachers,
// and the Monte Carlo helpers.

#include "superteach/datagen.hpp"
#include "superteach/harness.hpp"
#include "superteach/learners.hpp"
#include "superteach/teachers.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace superteach;

namespace {

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

std::vector<double> to_list(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

py::dict theta_entry(const Hypothesis& h) {
  py::dict d;
  if (h.is_scalar()) {
    d["theta"] = h.as_scalar();
  } else if (h.is_vector()) {
    d["theta"] = to_list(h.as_vector());
  } else if (h.is_interval()) {
    d["theta"] = py::make_tuple(h.as_interval().lo, h.as_interval().hi);
  } else {
    d["theta"] = py::none();
  }
  return d;
}

py::dict result_to_dict(const TeachingResult& r) {
  py::dict d;
  d["indices"] = r.mask.indices();
  d["theta_subset"] = theta_entry(r.theta_subset)["theta"];
  d["theta_full"] = theta_entry(r.theta_full)["theta"];
  d["risk_subset"] = r.risk_subset;
  d["risk_full"] = r.risk_full;
  d["ratio"] = r.ratio;
  d["proper_subset"] = r.proper_subset;
  d["evaluations"] = r.evaluations;
  return d;
}

LearnerSpec learner_by_name(const std::string& name, double lambda) {
  LearnerSpec l;
  l.lambda = lambda;
  if (name == "logistic") {
    l.kind = LearnerKind::LogisticERM;
  } else if (name == "ridge") {
    l.kind = LearnerKind::RidgeERM;
  } else {
    throw std::invalid_argument("learner must be 'logistic' or 'ridge'");
  }
  return l;
}

SearchStrategy strategy_by_name(const std::string& name, uint64_t seed) {
  SearchStrategy s;
  if (name == "exhaustive") {
    s.kind = SearchStrategy::Kind::Exhaustive;
  } else if (name == "greedy") {
    s.kind = SearchStrategy::Kind::GreedyForward;
  } else if (name == "localswap") {
    s.kind = SearchStrategy::Kind::LocalSwap;
    s.seed = Seed{seed};
  } else {
    throw std::invalid_argument(
        "strategy must be 'exhaustive', 'greedy' or 'localswap'");
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(superteach, m) {
  m.doc() = "training-subset selection that teaches a known target model";

  py::class_<TrainingSet>(m, "TrainingSet")
      .def_static(
          "from_arrays",
          [](const std::vector<std::vector<double>>& xs,
             const std::optional<std::vector<double>>& ys) {
            TrainingSet s;
            if (xs.empty()) throw std::invalid_argument("empty training set");
            s.d = static_cast<int>(xs.front().size());
            for (size_t i = 0; i < xs.size(); ++i) {
              Example ex;
              ex.x = to_vec(xs[i]);
              if (ex.x.size() != s.d)
                throw std::invalid_argument("ragged feature rows");
              if (ys) ex.y = ys->at(i);
              s.examples.push_back(std::move(ex));
            }
            return s;
          },
          py::arg("xs"), py::arg("ys") = std::nullopt)
      .def_property_readonly("n", &TrainingSet::n)
      .def_readonly("d", &TrainingSet::d)
      .def("x",
           [](const TrainingSet& s, int i) {
             return to_list(s.examples.at(static_cast<size_t>(i)).x);
           })
      .def("y", [](const TrainingSet& s, int i) {
        return s.examples.at(static_cast<size_t>(i)).y;
      });

  m.def("sample_gauss1d",
        [](int n, double theta_star, uint64_t seed) {
          return sample_gauss1d(n, theta_star, Seed{seed});
        },
        py::arg("n"), py::arg("theta_star"), py::arg("seed"));
  m.def("sample_margin1d",
        [](int n, uint64_t seed) { return sample_margin1d(n, Seed{seed}); },
        py::arg("n"), py::arg("seed"));
  m.def("sample_halfspace",
        [](int n, int d, const std::vector<double>& theta_star, uint64_t seed) {
          return sample_halfspace(n, d, to_vec(theta_star), Seed{seed});
        },
        py::arg("n"), py::arg("d"), py::arg("theta_star"), py::arg("seed"));
  m.def("sample_linreg",
        [](int n, int d, const std::vector<double>& theta_star,
           double noise_var, uint64_t seed) {
          return sample_linreg(n, d, to_vec(theta_star), noise_var, Seed{seed});
        },
        py::arg("n"), py::arg("d"), py::arg("theta_star"),
        py::arg("noise_var"), py::arg("seed"));
  m.def("default_theta_star",
        [](int d) { return to_list(default_theta_star(d)); });

  m.def("risk_param_distance",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return risk_param_distance(Hypothesis::vector(to_vec(a)),
                                     Hypothesis::vector(to_vec(b)));
        });
  m.def("risk_angular_01",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return risk_angular_01(to_vec(a), to_vec(b));
        });
  m.def("risk_symmetric_difference",
        [](std::optional<std::pair<double, double>> a,
           std::optional<std::pair<double, double>> b, double lo, double hi) {
          const auto h = [](const std::optional<std::pair<double, double>>& p) {
            return p ? Hypothesis::interval(p->first, p->second)
                     : Hypothesis::none();
          };
          return risk_symmetric_difference(h(a), h(b), lo, hi);
        });

  m.def("learn_gauss_mean",
        [](const TrainingSet& s) { return learn_gauss_mean(s).as_scalar(); });
  m.def("learn_large_margin_1d", [](const TrainingSet& s) {
    return learn_large_margin_1d(s).as_scalar();
  });
  m.def("learn_logistic_erm",
        [](const TrainingSet& s, double lambda, double tol) {
          const SolveReport r = learn_logistic_erm(s, lambda, tol);
          py::dict d;
          d["theta"] = to_list(r.theta_hat.as_vector());
          d["kkt_residual_norm"] = r.kkt_residual_norm;
          d["iterations"] = r.iterations;
          return d;
        },
        py::arg("subset"), py::arg("lambda_") = 0.1, py::arg("tol") = 1e-8);
  m.def("learn_ridge_erm",
        [](const TrainingSet& s, double lambda) {
          const SolveReport r = learn_ridge_erm(s, lambda);
          py::dict d;
          d["theta"] = to_list(r.theta_hat.as_vector());
          d["kkt_residual_norm"] = r.kkt_residual_norm;
          return d;
        },
        py::arg("subset"), py::arg("lambda_") = 0.1);

  m.def("teach_optimal_k_subset",
        [](const TrainingSet& s, int k, double theta_star) {
          const LearnerSpec learner{LearnerKind::GaussMeanMLE};
          const RiskSpec risk{RiskKind::ParamDistance,
                              Hypothesis::scalar(theta_star)};
          return result_to_dict(teach_optimal_k_subset(s, k, learner, risk));
        },
        py::arg("S"), py::arg("k"), py::arg("theta_star"));
  m.def("teach_most_symmetric",
        [](const TrainingSet& s, double theta_star) {
          return result_to_dict(teach_most_symmetric(s, theta_star));
        },
        py::arg("S"), py::arg("theta_star"));
  m.def("teach_subset_search",
        [](const TrainingSet& s, const std::string& learner,
           const std::vector<double>& theta_star, const std::string& strategy,
           double lambda, uint64_t seed) {
          const LearnerSpec l = learner_by_name(learner, lambda);
          const RiskSpec risk{l.kind == LearnerKind::LogisticERM
                                  ? RiskKind::Angular01
                                  : RiskKind::ParamDistance,
                              Hypothesis::vector(to_vec(theta_star))};
          return result_to_dict(
              teach_subset_search(s, l, risk, strategy_by_name(strategy, seed)));
        },
        py::arg("S"), py::arg("learner"), py::arg("theta_star"),
        py::arg("strategy") = "exhaustive", py::arg("lambda_") = 0.1,
        py::arg("seed") = 0);

  m.def("margin_tail_exact", &margin_tail_exact, py::arg("n"), py::arg("eps"));
  m.def("margin_tail_mc",
        [](int n, double eps, int trials, uint64_t seed) {
          const TailEstimate e = margin_tail_mc(n, eps, trials, Seed{seed});
          return py::make_tuple(e.estimate, e.std_error);
        },
        py::arg("n"), py::arg("eps"), py::arg("trials"), py::arg("seed") = 0);
  m.def("fit_rate",
        [](const std::vector<std::pair<double, double>>& pts) {
          const RateFit f = fit_rate(pts);
          py::dict d;
          d["slope"] = f.slope;
          d["intercept"] = f.intercept;
          d["r_squared"] = f.r_squared;
          return d;
        });
  m.def("count_overlapping_pairs_exact", &count_overlapping_pairs_exact,
        py::arg("n"), py::arg("k"));
  m.def("trial_seed", &trial_seed);
}
