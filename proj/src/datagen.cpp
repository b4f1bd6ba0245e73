#include "superteach/datagen.hpp"

#include <cmath>
#include <stdexcept>

namespace superteach {

uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t trial_seed(uint64_t master_seed, uint64_t n, uint64_t trial_index) {
  return mix64(mix64(mix64(master_seed) ^ n) ^ trial_index);
}

uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform_open() {
  // 53 random bits, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform_open();
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * M_PI * u2;
  cached_ = r * std::sin(t);
  has_cached_ = true;
  return r * std::cos(t);
}

TrainingSet sample_gauss1d(int n, double theta_star, Seed seed) {
  if (n < 1) throw std::invalid_argument("sample_gauss1d: n must be >= 1");
  Rng rng(seed.value);
  TrainingSet s;
  s.d = 1;
  s.examples.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec x(1);
    x[0] = theta_star + rng.normal();
    s.examples.push_back({std::move(x), std::nullopt});
  }
  return s;
}

TrainingSet sample_margin1d(int n, Seed seed) {
  if (n < 1) throw std::invalid_argument("sample_margin1d: n must be >= 1");
  Rng rng(seed.value);
  TrainingSet s;
  s.d = 1;
  s.examples.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec x(1);
    x[0] = rng.uniform(-1.0, 1.0);
    const double y = x[0] >= 0.0 ? 1.0 : -1.0;  // x = 0 labeled positive
    s.examples.push_back({std::move(x), y});
  }
  return s;
}

TrainingSet sample_halfspace(int n, int d, const Vec& theta_star, Seed seed) {
  if (n < 1) throw std::invalid_argument("sample_halfspace: n must be >= 1");
  if (d < 1) throw std::invalid_argument("sample_halfspace: d must be >= 1");
  if (theta_star.size() != d)
    throw std::invalid_argument("sample_halfspace: theta_star dimension mismatch");
  if (theta_star.norm() == 0.0)
    throw std::invalid_argument("sample_halfspace: zero theta_star");
  Rng rng(seed.value);
  TrainingSet s;
  s.d = d;
  s.examples.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.normal();
    const double y = x.dot(theta_star) > 0.0 ? 1.0 : -1.0;
    s.examples.push_back({std::move(x), y});
  }
  return s;
}

TrainingSet sample_linreg(int n, int d, const Vec& theta_star, double noise_var,
                          Seed seed) {
  if (n < 1) throw std::invalid_argument("sample_linreg: n must be >= 1");
  if (d < 1) throw std::invalid_argument("sample_linreg: d must be >= 1");
  if (theta_star.size() != d)
    throw std::invalid_argument("sample_linreg: theta_star dimension mismatch");
  if (noise_var < 0)
    throw std::invalid_argument("sample_linreg: negative noise_var");
  Rng rng(seed.value);
  const double sigma = std::sqrt(noise_var);
  TrainingSet s;
  s.d = d;
  s.examples.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.normal();
    const double y = x.dot(theta_star) + sigma * rng.normal();
    s.examples.push_back({std::move(x), y});
  }
  return s;
}

Vec default_theta_star(int d) {
  Vec t(d);
  t.setConstant(1.0 / std::sqrt(static_cast<double>(d)));
  return t;
}

}  // namespace superteach
