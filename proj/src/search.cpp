#include "superteach/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace superteach {

bool mask_value_less(double va, const IndexSet& a, double vb,
                     const IndexSet& b) {
  if (va != vb) return va < vb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void iterate_subsets_fixed_k(int n, int k,
                             const std::function<void(const IndexSet&)>& fn) {
  if (k < 0 || k > n) throw std::invalid_argument("iterate_subsets_fixed_k: bad k");
  IndexSet idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    fn(idx);
    // advance to the next combination in lexicographic order
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

SearchResult exhaustive_min(int n, const MaskEvaluator& eval, int cap) {
  if (n > cap)
    throw std::invalid_argument("exhaustive_min: n exceeds cap " +
                                std::to_string(cap));
  SearchResult best;
  bool have = false;
  IndexSet scratch;
  const uint64_t total = 1ULL << n;
  for (uint64_t bits = 0; bits < total; ++bits) {
    scratch.clear();
    for (int i = 0; i < n; ++i)
      if (bits & (1ULL << i)) scratch.push_back(i);
    const double v = eval(scratch);
    ++best.evaluations;
    if (!have || mask_value_less(v, scratch, best.value, best.mask)) {
      best.value = v;
      best.mask = scratch;
      have = true;
    }
  }
  return best;
}

SearchResult exhaustive_min_fixed_k(int n, int k, const MaskEvaluator& eval,
                                    uint64_t budget) {
  if (k < 0 || k > n)
    throw std::invalid_argument("exhaustive_min_fixed_k: bad k");
  if (binomial(n, k) > budget)
    throw std::invalid_argument(
        "exhaustive_min_fixed_k: C(n,k) exceeds the evaluation budget; "
        "use a smaller k or a sampling strategy");
  SearchResult best;
  bool have = false;
  iterate_subsets_fixed_k(n, k, [&](const IndexSet& idx) {
    const double v = eval(idx);
    ++best.evaluations;
    // lexicographic enumeration + strict improvement keeps the lex-smallest tie
    if (!have || v < best.value) {
      best.value = v;
      best.mask = idx;
      have = true;
    }
  });
  return best;
}

SearchResult greedy_forward_min(int n, const MaskEvaluator& eval) {
  if (n < 1) throw std::invalid_argument("greedy_forward_min: n must be >= 1");
  SearchResult best;
  IndexSet current;
  std::vector<char> in(static_cast<size_t>(n), 0);

  best.mask = current;
  best.value = eval(current);
  ++best.evaluations;

  IndexSet cand;
  while (static_cast<int>(current.size()) < n) {
    double best_add_v = 0.0;
    int best_add = -1;
    for (int i = 0; i < n; ++i) {
      if (in[static_cast<size_t>(i)]) continue;
      cand = current;
      cand.insert(std::upper_bound(cand.begin(), cand.end(), i), i);
      const double v = eval(cand);
      ++best.evaluations;
      if (best_add < 0 || v < best_add_v) {  // ties to smallest index
        best_add_v = v;
        best_add = i;
      }
    }
    in[static_cast<size_t>(best_add)] = 1;
    current.insert(std::upper_bound(current.begin(), current.end(), best_add),
                   best_add);
    if (mask_value_less(best_add_v, current, best.value, best.mask)) {
      best.value = best_add_v;
      best.mask = current;
    }
  }
  return best;
}

namespace {

IndexSet bits_vec_to_indices(const std::vector<char>& bits) {
  IndexSet idx;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) idx.push_back(static_cast<int>(i));
  return idx;
}

}  // namespace

SearchResult local_swap_min(int n, const MaskEvaluator& eval,
                            const IndexSet& init, int max_iters, int restarts,
                            Seed seed) {
  SearchResult best;
  bool have = false;
  Rng rng(seed.value);

  for (int r = 0; r <= restarts; ++r) {
    std::vector<char> bits(static_cast<size_t>(n), 0);
    if (r == 0) {
      for (int i : init) {
        if (i < 0 || i >= n)
          throw std::invalid_argument("local_swap_min: init index out of range");
        bits[static_cast<size_t>(i)] = 1;
      }
    } else {
      for (int i = 0; i < n; ++i)
        bits[static_cast<size_t>(i)] = (rng.next_u64() & 1u) ? 1 : 0;
    }

    IndexSet cur = bits_vec_to_indices(bits);
    double cur_v = eval(cur);
    ++best.evaluations;
    if (!have || mask_value_less(cur_v, cur, best.value, best.mask)) {
      best.value = cur_v;
      best.mask = cur;
      have = true;
    }

    for (int iter = 0; iter < max_iters; ++iter) {
      // steepest descent: evaluate all single-bit flips, take the best
      double best_flip_v = 0.0;
      int best_flip = -1;
      IndexSet best_flip_mask;
      for (int i = 0; i < n; ++i) {
        bits[static_cast<size_t>(i)] ^= 1;
        IndexSet cand = bits_vec_to_indices(bits);
        bits[static_cast<size_t>(i)] ^= 1;
        const double v = eval(cand);
        ++best.evaluations;
        if (best_flip < 0 ||
            mask_value_less(v, cand, best_flip_v, best_flip_mask)) {
          best_flip_v = v;
          best_flip = i;
          best_flip_mask = std::move(cand);
        }
      }
      if (best_flip_v >= cur_v) break;  // 1-flip local optimum
      bits[static_cast<size_t>(best_flip)] ^= 1;
      cur = std::move(best_flip_mask);
      cur_v = best_flip_v;
      if (mask_value_less(cur_v, cur, best.value, best.mask)) {
        best.value = cur_v;
        best.mask = cur;
      }
    }
  }
  return best;
}

uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
  return r;
}

uint64_t count_overlapping_pairs_exact(int n, int k) {
  if (k < 1 || 2 * k > n)
    throw std::invalid_argument("count_overlapping_pairs_exact: need 2k <= n");
  uint64_t total = 0;
  for (int t = 1; t <= k - 1; ++t) {
    total += binomial(n, 2 * k - t) * binomial(2 * k - t, t) *
             binomial(2 * k - 2 * t, k - t);
  }
  return total;
}

uint64_t overlapping_pairs_bound(int n, int k) {
  uint64_t pow4 = 1;
  for (int i = 0; i < k; ++i) pow4 *= 4;
  return pow4 * binomial(2 * k, k) * binomial(n, 2 * k - 1);
}

}  // namespace superteach
