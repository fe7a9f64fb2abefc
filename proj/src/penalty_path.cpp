#include "penlearn/penalty_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "penlearn/errors.hpp"

namespace penlearn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PenaltyPath model_selection_path(const SegmentCosts& costs) {
  const int k_max = costs.k_max;
  for (int k = 2; k <= k_max; ++k) {
    if (costs.at(k) > costs.at(k - 1)) {
      throw DomainError("segment costs must be non-increasing in k");
    }
  }

  // As lambda -> 0+ the optimal model is the smallest k among the minimizers
  // of C_k. From there, repeatedly jump to the model j < k with the smallest
  // crossing penalty (C_j - C_k) / (k - j); ties prefer the smallest j, which
  // collapses collinear hull points in one step.
  int k = 1;
  for (int j = 2; j <= k_max; ++j) {
    if (costs.at(j) < costs.at(k)) k = j;
  }

  PenaltyPath path;
  double lambda_low = 0;
  while (true) {
    double best_lambda = kInf;
    int best_j = -1;
    for (int j = 1; j < k; ++j) {
      const double lam = (costs.at(j) - costs.at(k)) / (k - j);
      if (lam < best_lambda) {
        best_lambda = lam;
        best_j = j;
      }
    }
    if (best_j < 0) {
      path.pieces.push_back({k, lambda_low, kInf, costs.at(k)});
      break;
    }
    path.pieces.push_back({k, lambda_low, best_lambda, costs.at(k)});
    lambda_low = best_lambda;
    k = best_j;
  }
  return path;
}

LabelErrors count_label_errors(const std::vector<double>& changepoint_positions,
                               const std::vector<Label>& labels) {
  LabelErrors errors;
  for (const auto& lab : labels) {
    int n = 0;
    for (double p : changepoint_positions) {
      if (p >= lab.start && p <= lab.end) ++n;
    }
    if (n > lab.changes) ++errors.fp;
    if (n < lab.changes) ++errors.fn;
  }
  return errors;
}

namespace {

// A lambda strictly inside the piece, placed well away from both boundaries.
double interior_lambda(const PathPiece& piece) {
  if (piece.lambda_low == 0) {
    return std::isinf(piece.lambda_high) ? 1.0 : piece.lambda_high / 2;
  }
  if (std::isinf(piece.lambda_high)) return piece.lambda_low * 2;
  return std::sqrt(piece.lambda_low * piece.lambda_high);
}

}  // namespace

ErrorFunction error_function(const Sequence& seq, const std::vector<Label>& labels, int k_max) {
  for (const auto& lab : labels) {
    if (lab.sequence_id != seq.id) {
      throw ValidationError("label for sequence '" + lab.sequence_id +
                            "' passed with sequence '" + seq.id + "'");
    }
  }
  const SegmentCosts costs = segment_costs(seq, k_max);
  const PenaltyPath path = model_selection_path(costs);

  ErrorFunction err;
  err.label_count = static_cast<int>(labels.size());
  for (const auto& piece : path.pieces) {
    const Segmentation seg = opart(seq, interior_lambda(piece));
    const LabelErrors counts = count_label_errors(changepoint_positions(seq, seg.changepoints), labels);
    ErrorPiece ep;
    ep.loglam_low = piece.lambda_low == 0 ? -kInf : std::log(piece.lambda_low);
    ep.loglam_high = std::isinf(piece.lambda_high) ? kInf : std::log(piece.lambda_high);
    ep.fp = counts.fp;
    ep.fn = counts.fn;
    ep.k = piece.k;
    err.pieces.push_back(ep);
  }

  int min_err = err.pieces.front().fp + err.pieces.front().fn;
  for (const auto& p : err.pieces) min_err = std::min(min_err, p.fp + p.fn);
  bool only_at_kmax = true;
  for (const auto& p : err.pieces) {
    if (p.fp + p.fn == min_err && p.k != k_max) only_at_kmax = false;
  }
  err.kmax_warning = only_at_kmax;
  return err;
}

TargetInterval target_interval(const ErrorFunction& err) {
  int min_err = err.pieces.front().fp + err.pieces.front().fn;
  for (const auto& p : err.pieces) min_err = std::min(min_err, p.fp + p.fn);

  TargetInterval best;
  double best_width = -1;
  bool have = false;
  std::size_t i = 0;
  while (i < err.pieces.size()) {
    if (err.pieces[i].fp + err.pieces[i].fn != min_err) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < err.pieces.size() &&
           err.pieces[j + 1].fp + err.pieces[j + 1].fn == min_err) {
      ++j;
    }
    const double lo = err.pieces[i].loglam_low;
    const double hi = err.pieces[j].loglam_high;
    const double width = hi - lo;  // +inf when either bound is infinite
    if (!have || width > best_width || (width == best_width && lo < best.lower)) {
      best.lower = lo;
      best.upper = hi;
      best_width = width;
      have = true;
    }
    i = j + 1;
  }
  return best;
}

LabelErrors eval_errors_at(const ErrorFunction& err, double loglam) {
  // Last piece whose lower bound is <= loglam: boundaries belong to the right
  // piece, matching the smaller-k-wins convention of the path.
  auto it = std::upper_bound(err.pieces.begin(), err.pieces.end(), loglam,
                             [](double v, const ErrorPiece& p) { return v < p.loglam_low; });
  --it;
  return {it->fp, it->fn};
}

}  // namespace penlearn
