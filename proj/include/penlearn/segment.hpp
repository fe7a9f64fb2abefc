#ifndef PENLEARN_SEGMENT_HPP
#define PENLEARN_SEGMENT_HPP

#include <vector>

#include "penlearn/types.hpp"

namespace penlearn {

// Optimal piecewise-constant fit of one sequence. Changepoint indices are
// 1-based: index i means the mean changes between data points i and i+1.
struct Segmentation {
  std::vector<int> changepoints;
  std::vector<double> means;  // one per segment
  double data_cost = 0;
  double penalized_cost = 0;
};

// C_k = minimal squared-error data cost over segmentations with exactly k
// segments, k = 1..k_max.
struct SegmentCosts {
  std::vector<double> costs;
  int k_max = 0;

  double at(int k) const { return costs[k - 1]; }
};

// Optimal partitioning: minimizes data cost + lambda * (#changepoints) over
// all segmentations. Ties are broken toward fewer changepoints, then the
// lexicographically smallest changepoint list. O(N^2).
Segmentation opart(const Sequence& seq, double lambda);

// Segment-neighborhood dynamic program, O(k_max * N^2).
SegmentCosts segment_costs(const Sequence& seq, int k_max);

// Test oracle: enumerates all 2^(N-1) changepoint subsets with the same
// tie-break rule as opart. Refuses N > 16.
Segmentation brute_force_opart(const Sequence& seq, double lambda);

// Midpoint coordinates (positions[i] + positions[i+1]) / 2 for each
// changepoint index i of a segmentation of `seq`.
std::vector<double> changepoint_positions(const Sequence& seq, const std::vector<int>& changepoints);

}  // namespace penlearn

#endif
