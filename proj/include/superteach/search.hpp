#pragma once

#include "superteach/datagen.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace superteach {

// Strictly increasing index set; the canonical mask form inside the engines.
using IndexSet = std::vector<int>;

// Outer objective R(theta_hat restricted to mask). Pure by contract.
using MaskEvaluator = std::function<double(const IndexSet&)>;

struct SearchResult {
  IndexSet mask;
  double value = 0.0;
  uint64_t evaluations = 0;
};

inline constexpr int kExhaustiveCap = 22;

// All C(n, k) strictly increasing index sets in lexicographic order.
void iterate_subsets_fixed_k(int n, int k,
                             const std::function<void(const IndexSet&)>& fn);

// Global minimum over all 2^n masks (empty included). Ties break to the
// lexicographically smallest index set.
SearchResult exhaustive_min(int n, const MaskEvaluator& eval,
                            int cap = kExhaustiveCap);

// Global minimum over all C(n, k) masks of size exactly k.
SearchResult exhaustive_min_fixed_k(int n, int k, const MaskEvaluator& eval,
                                    uint64_t budget = 100000000ULL);

// Greedy item addition from the empty mask; returns the best prefix seen
// (the risk is not monotone in subset size).
SearchResult greedy_forward_min(int n, const MaskEvaluator& eval);

// Steepest-descent single-bit-flip search, best over init plus random
// restarts. Deterministic given seed.
SearchResult local_swap_min(int n, const MaskEvaluator& eval,
                            const IndexSet& init, int max_iters, int restarts,
                            Seed seed);

// (value, index set) comparison used by every engine's argmin reduction.
bool mask_value_less(double va, const IndexSet& a, double vb, const IndexSet& b);

uint64_t binomial(int n, int k);

// Exact number of ordered pairs of k-subsets of {1..n} that overlap but are
// not identical: sum over t=1..k-1 of C(n,2k-t) C(2k-t,t) C(2k-2t,k-t).
uint64_t count_overlapping_pairs_exact(int n, int k);

// The coarse bound 4^k C(2k,k) C(n,2k-1) the exact count must respect for
// n >= 4k.
uint64_t overlapping_pairs_bound(int n, int k);

}  // namespace superteach
