#ifndef PENLEARN_PENALTY_PATH_HPP
#define PENLEARN_PENALTY_PATH_HPP

#include <vector>

#include "penlearn/segment.hpp"
#include "penlearn/types.hpp"

namespace penlearn {

// One piece of the model-selection path: model size k is optimal for
// lambda in [lambda_low, lambda_high). A lambda exactly on a boundary
// belongs to the piece on its right (the smaller model wins ties).
struct PathPiece {
  int k = 0;
  double lambda_low = 0;
  double lambda_high = 0;  // +inf on the last piece
  double data_cost = 0;    // C_k
};

struct PenaltyPath {
  std::vector<PathPiece> pieces;  // lambda ascending, k strictly decreasing
};

struct LabelErrors {
  int fp = 0;
  int fn = 0;

  int total() const { return fp + fn; }
};

// Piecewise-constant label-error function of log(lambda).
struct ErrorPiece {
  double loglam_low = 0;   // -inf on the first piece
  double loglam_high = 0;  // +inf on the last piece
  int fp = 0;
  int fn = 0;
  int k = 0;
};

struct ErrorFunction {
  std::vector<ErrorPiece> pieces;
  int label_count = 0;
  // Set when the minimal error is attained only on the k = k_max piece,
  // i.e. k_max may have truncated the path too early.
  bool kmax_warning = false;
};

// Exact path from the lower convex hull of the points (k-1, C_k):
// k minimizes C_k + lambda*(k-1) on each piece.
PenaltyPath model_selection_path(const SegmentCosts& costs);

// For each label, counts the changepoint midpoints p with start <= p <= end;
// more than expected is a false positive, fewer a false negative.
LabelErrors count_label_errors(const std::vector<double>& changepoint_positions,
                               const std::vector<Label>& labels);

// Evaluates the optimal segmentation at an interior lambda of every path
// piece and counts its label errors. Labels must belong to `seq`.
ErrorFunction error_function(const Sequence& seq, const std::vector<Label>& labels, int k_max);

// Among maximal runs of pieces attaining the minimal error, returns the
// widest in log(lambda); ties go to the run with the smallest lower bound.
TargetInterval target_interval(const ErrorFunction& err);

// O(log n) lookup; a boundary value belongs to the piece on its right.
LabelErrors eval_errors_at(const ErrorFunction& err, double loglam);

// Default path truncation used by the harness and CLI.
inline int default_k_max(int n, int k_max_setting) { return n < k_max_setting ? n : k_max_setting; }

}  // namespace penlearn

#endif
