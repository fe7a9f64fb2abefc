#ifndef PENLEARN_DATA_HPP
#define PENLEARN_DATA_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "penlearn/types.hpp"

namespace penlearn {

// Reads `sequenceID,position,value`. Rows may arrive in any order; they are
// grouped by id and sorted by position. Throws FormatError for a bad header
// or unparseable cell, ValidationError for duplicate positions or non-finite
// values (naming the sequence and row).
std::vector<Sequence> load_sequences(const std::string& path);

// Reads `sequenceID,start,end,changes` and validates every label against the
// given sequences: known id, start < end, bounds inside the sequence's
// position span, and pairwise non-overlap (shared endpoints count as overlap).
std::vector<Label> load_labels(const std::string& path, const std::vector<Sequence>& sequences);

// Optional fold override file `sequenceID,fold`.
FoldAssignment load_folds(const std::string& path, int k);

void write_sequences(const std::string& path, const std::vector<Sequence>& sequences);
void write_labels(const std::string& path, const std::vector<Label>& labels);

struct SyntheticConfig {
  int n_sequences = 1;
  int length_min = 20;
  int length_max = 80;
  int segments_min = 1;
  int segments_max = 4;
  double noise_sd = 1.0;
  double label_coverage = 0.5;  // fraction of each sequence covered by labels
};

// Piecewise-constant mean sequences plus Gaussian noise, with labels that are
// consistent with the generating truth: each label's expected count equals
// the number of generated changepoints whose midpoint falls inside it.
// Byte-identical output for identical (config, seed).
std::pair<std::vector<Sequence>, std::vector<Label>> generate_synthetic(
    const SyntheticConfig& config, std::uint64_t seed);

// Deterministic fold assignment: ids ordered by a stable hash of (seed, id),
// then dealt round-robin, so fold sizes differ by at most one.
FoldAssignment assign_folds(const std::vector<std::string>& ids, int k, std::uint64_t seed);

}  // namespace penlearn

#endif
