#ifndef PENLEARN_TYPES_HPP
#define PENLEARN_TYPES_HPP

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace penlearn {

// One univariate data sequence: values d_1..d_N measured at strictly
// increasing integer positions.
struct Sequence {
  std::string id;
  std::vector<int> positions;
  std::vector<double> values;

  int n() const { return static_cast<int>(values.size()); }
};

// Expert annotation: the region [start, end] (position coordinates) is
// expected to contain exactly `changes` changepoints.
struct Label {
  std::string sequence_id;
  int start = 0;
  int end = 0;
  int changes = 0;
};

// Partition of sequence ids into folds 1..k.
struct FoldAssignment {
  std::map<std::string, int> fold_of;
  int k = 0;
};

// Regression target: the interval of log(lambda) minimizing a sequence's
// label errors. Either bound may be infinite (left/right censoring).
struct TargetInterval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

}  // namespace penlearn

#endif
