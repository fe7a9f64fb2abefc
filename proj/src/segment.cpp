#include "penlearn/segment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "penlearn/errors.hpp"

namespace penlearn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cumulative sums of d and d^2 so any segment's squared-error cost is O(1).
struct PrefixSums {
  std::vector<double> sum, sumsq;

  explicit PrefixSums(const std::vector<double>& d) {
    sum.assign(d.size() + 1, 0.0);
    sumsq.assign(d.size() + 1, 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      sum[i + 1] = sum[i] + d[i];
      sumsq[i + 1] = sumsq[i] + d[i] * d[i];
    }
  }

  // Squared-error cost of fitting points a..b (1-based, inclusive) with their
  // mean: sum d^2 - (sum d)^2 / n. Rounding residue is clamped at zero.
  double cost(int a, int b) const {
    const int n = b - a + 1;
    const double s = sum[b] - sum[a - 1];
    const double s2 = sumsq[b] - sumsq[a - 1];
    const double c = s2 - s * s / n;
    return c > 0 ? c : 0.0;
  }

  double mean(int a, int b) const { return (sum[b] - sum[a - 1]) / (b - a + 1); }
};

void check_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda <= 0) {
    throw DomainError("penalty lambda must be finite and > 0, got " + std::to_string(lambda));
  }
}

void check_nonempty(const Sequence& seq) {
  if (seq.n() < 1) throw DomainError("sequence '" + seq.id + "' is empty");
}

Segmentation finalize(const Sequence& seq, std::vector<int> changepoints, double lambda,
                      const PrefixSums& ps) {
  Segmentation out;
  out.changepoints = std::move(changepoints);
  int start = 1;
  for (std::size_t s = 0; s <= out.changepoints.size(); ++s) {
    const int end = s < out.changepoints.size() ? out.changepoints[s] : seq.n();
    out.means.push_back(ps.mean(start, end));
    out.data_cost += ps.cost(start, end);
    start = end + 1;
  }
  out.penalized_cost = out.data_cost + lambda * static_cast<double>(out.changepoints.size());
  return out;
}

}  // namespace

Segmentation opart(const Sequence& seq, double lambda) {
  check_lambda(lambda);
  check_nonempty(seq);
  const int n = seq.n();
  const PrefixSums ps(seq.values);

  // best[j]: optimal penalized cost of prefix 1..j; back[j]: start of its last
  // segment; count[j]: its changepoint count. Ties resolve to fewer
  // changepoints, then the lexicographically smallest changepoint list.
  std::vector<double> best(n + 1, kInf);
  std::vector<int> back(n + 1, 1), count(n + 1, 0);
  best[0] = 0.0;

  auto rebuild = [&](int j) {
    std::vector<int> list;
    while (j > 0) {
      const int t = back[j];
      if (t > 1) list.push_back(t - 1);
      j = t - 1;
    }
    std::reverse(list.begin(), list.end());
    return list;
  };

  for (int j = 1; j <= n; ++j) {
    for (int t = 1; t <= j; ++t) {
      const double cand = (t == 1 ? 0.0 : best[t - 1] + lambda) + ps.cost(t, j);
      const int cand_count = t == 1 ? 0 : count[t - 1] + 1;
      bool take = cand < best[j];
      if (!take && cand == best[j]) {
        if (cand_count < count[j]) {
          take = true;
        } else if (cand_count == count[j]) {
          auto lhs = rebuild(t - 1);
          if (t > 1) lhs.push_back(t - 1);
          take = lhs < rebuild(j);
        }
      }
      if (take) {
        best[j] = cand;
        back[j] = t;
        count[j] = cand_count;
      }
    }
  }
  return finalize(seq, rebuild(n), lambda, ps);
}

SegmentCosts segment_costs(const Sequence& seq, int k_max) {
  check_nonempty(seq);
  const int n = seq.n();
  if (k_max < 1 || k_max > n) {
    throw DomainError("k_max " + std::to_string(k_max) + " outside 1.." + std::to_string(n));
  }
  const PrefixSums ps(seq.values);

  // prev[j] = optimal cost of prefix j with exactly k-1 segments.
  std::vector<double> prev(n + 1, kInf), cur(n + 1, kInf);
  SegmentCosts out;
  out.k_max = k_max;
  for (int j = 1; j <= n; ++j) prev[j] = ps.cost(1, j);
  out.costs.push_back(prev[n]);
  for (int k = 2; k <= k_max; ++k) {
    std::fill(cur.begin(), cur.end(), kInf);
    for (int j = k; j <= n; ++j) {
      double m = kInf;
      for (int t = k; t <= j; ++t) {
        const double c = prev[t - 1] + ps.cost(t, j);
        if (c < m) m = c;
      }
      cur[j] = m;
    }
    // C_k is mathematically non-increasing; clamp sub-ulp rounding wiggle so
    // downstream hull code can rely on it exactly.
    out.costs.push_back(std::min(cur[n], out.costs.back()));
    std::swap(prev, cur);
  }
  return out;
}

Segmentation brute_force_opart(const Sequence& seq, double lambda) {
  check_lambda(lambda);
  check_nonempty(seq);
  const int n = seq.n();
  if (n > 16) throw DomainError("brute-force oracle refuses N > 16 (got " + std::to_string(n) + ")");

  // Cost of a segment computed directly (mean pass + residual pass), kept
  // independent of the prefix-sum path used by opart.
  auto direct_cost = [&](int a, int b) {
    double m = 0;
    for (int i = a; i <= b; ++i) m += seq.values[i - 1];
    m /= (b - a + 1);
    double c = 0;
    for (int i = a; i <= b; ++i) {
      const double r = seq.values[i - 1] - m;
      c += r * r;
    }
    return c;
  };
  auto total_cost = [&](const std::vector<int>& cps) {
    double c = 0;
    int start = 1;
    for (std::size_t s = 0; s <= cps.size(); ++s) {
      const int end = s < cps.size() ? cps[s] : n;
      c += direct_cost(start, end);
      start = end + 1;
    }
    return c + lambda * static_cast<double>(cps.size());
  };

  // Enumerate subsets ordered by (size, lexicographic list); keeping the first
  // strict minimum realizes the tie-break rule.
  std::vector<int> best_cps;
  double best = total_cost({});
  std::vector<int> combo;
  for (int size = 1; size <= n - 1; ++size) {
    combo.resize(size);
    for (int i = 0; i < size; ++i) combo[i] = i + 1;
    while (true) {
      const double c = total_cost(combo);
      if (c < best) {
        best = c;
        best_cps = combo;
      }
      // next combination of {1..n-1} in lexicographic order
      int i = size - 1;
      while (i >= 0 && combo[i] == n - 1 - (size - 1 - i)) --i;
      if (i < 0) break;
      ++combo[i];
      for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  const PrefixSums ps(seq.values);
  return finalize(seq, std::move(best_cps), lambda, ps);
}

std::vector<double> changepoint_positions(const Sequence& seq, const std::vector<int>& changepoints) {
  std::vector<double> out;
  out.reserve(changepoints.size());
  for (int c : changepoints) {
    out.push_back((seq.positions[c - 1] + seq.positions[c]) / 2.0);
  }
  return out;
}

}  // namespace penlearn
