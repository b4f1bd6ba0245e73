#pragma once

#include "superteach/core.hpp"

#include <cstdint>

namespace superteach {

// Frozen counter-style generator: a splitmix64 stream. Every float in the
// artifact flows through this so identical seeds give identical samples on
// any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();

  // Uniform in (0, 1].
  double uniform_open();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller, second value cached.
  double normal();

 private:
  uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// 64-bit finalizer used for all seed derivation.
uint64_t mix64(uint64_t z);

// Per-trial seed: mix64 chain over (master_seed, n, trial_index).
uint64_t trial_seed(uint64_t master_seed, uint64_t n, uint64_t trial_index);

struct Seed {
  uint64_t value = 0;
};

// n unlabeled scalars, iid N(theta_star, 1).
TrainingSet sample_gauss1d(int n, double theta_star, Seed seed);

// x ~ U[-1, 1], y = +1 iff x >= 0 else -1 (threshold at theta_star = 0).
TrainingSet sample_margin1d(int n, Seed seed);

// x ~ N(0, I), y = +1 iff x.theta_star > 0 else -1.
TrainingSet sample_halfspace(int n, int d, const Vec& theta_star, Seed seed);

// x ~ N(0, I), y = x.theta_star + N(0, noise_var).
TrainingSet sample_linreg(int n, int d, const Vec& theta_star, double noise_var,
                          Seed seed);

// The experiment default theta* = (1/sqrt(d), ..., 1/sqrt(d)).
Vec default_theta_star(int d);

}  // namespace superteach
