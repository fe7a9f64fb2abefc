#include "penlearn/data.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "penlearn/csv.hpp"
#include "penlearn/errors.hpp"
#include "penlearn/rng.hpp"

namespace penlearn {

std::vector<Sequence> load_sequences(const std::string& path) {
  const CsvTable table = read_csv(path);
  const int id_col = table.require_column("sequenceID", path);
  const int pos_col = table.require_column("position", path);
  const int val_col = table.require_column("value", path);

  std::map<std::string, std::vector<std::pair<int, double>>> grouped;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string ctx = path + ": row " + std::to_string(r + 2);
    const long long pos = parse_int(row[pos_col], ctx);
    const double val = parse_double(row[val_col], ctx);
    if (!std::isfinite(val)) {
      throw ValidationError(ctx + ": non-finite value for sequence '" + row[id_col] + "'");
    }
    grouped[row[id_col]].emplace_back(static_cast<int>(pos), val);
  }

  std::vector<Sequence> out;
  out.reserve(grouped.size());
  for (auto& [id, rows] : grouped) {
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Sequence seq;
    seq.id = id;
    seq.positions.reserve(rows.size());
    seq.values.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i].first == rows[i - 1].first) {
        throw ValidationError(path + ": duplicate position " + std::to_string(rows[i].first) +
                              " in sequence '" + id + "'");
      }
      seq.positions.push_back(rows[i].first);
      seq.values.push_back(rows[i].second);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<Label> load_labels(const std::string& path, const std::vector<Sequence>& sequences) {
  const CsvTable table = read_csv(path);
  const int id_col = table.require_column("sequenceID", path);
  const int start_col = table.require_column("start", path);
  const int end_col = table.require_column("end", path);
  const int changes_col = table.require_column("changes", path);

  std::map<std::string, std::pair<int, int>> spans;
  for (const auto& seq : sequences) {
    spans[seq.id] = {seq.positions.front(), seq.positions.back()};
  }

  std::vector<Label> labels;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string ctx = path + ": row " + std::to_string(r + 2);
    Label lab;
    lab.sequence_id = row[id_col];
    lab.start = static_cast<int>(parse_int(row[start_col], ctx));
    lab.end = static_cast<int>(parse_int(row[end_col], ctx));
    lab.changes = static_cast<int>(parse_int(row[changes_col], ctx));
    auto it = spans.find(lab.sequence_id);
    if (it == spans.end()) {
      throw ValidationError(ctx + ": unknown sequence '" + lab.sequence_id + "'");
    }
    if (lab.start >= lab.end) {
      throw ValidationError(ctx + ": label start " + std::to_string(lab.start) +
                            " must be less than end " + std::to_string(lab.end));
    }
    if (lab.start < it->second.first || lab.end > it->second.second) {
      throw ValidationError(ctx + ": label [" + std::to_string(lab.start) + ", " +
                            std::to_string(lab.end) + "] outside sequence '" + lab.sequence_id +
                            "' span [" + std::to_string(it->second.first) + ", " +
                            std::to_string(it->second.second) + "]");
    }
    if (lab.changes < 0) {
      throw ValidationError(ctx + ": negative expected change count");
    }
    labels.push_back(lab);
  }

  // Non-overlap check per sequence; shared endpoints count as overlap.
  std::map<std::string, std::vector<std::pair<int, int>>> by_seq;
  for (const auto& lab : labels) by_seq[lab.sequence_id].emplace_back(lab.start, lab.end);
  for (auto& [id, ranges] : by_seq) {
    std::sort(ranges.begin(), ranges.end());
    for (std::size_t i = 1; i < ranges.size(); ++i) {
      if (ranges[i].first <= ranges[i - 1].second) {
        throw ValidationError(path + ": overlapping labels on sequence '" + id + "' near position " +
                              std::to_string(ranges[i].first));
      }
    }
  }
  return labels;
}

FoldAssignment load_folds(const std::string& path, int k) {
  const CsvTable table = read_csv(path);
  const int id_col = table.require_column("sequenceID", path);
  const int fold_col = table.require_column("fold", path);
  FoldAssignment out;
  out.k = k;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string ctx = path + ": row " + std::to_string(r + 2);
    const int fold = static_cast<int>(parse_int(row[fold_col], ctx));
    if (fold < 1 || fold > k) {
      throw ValidationError(ctx + ": fold " + std::to_string(fold) + " outside 1.." +
                            std::to_string(k));
    }
    if (!out.fold_of.emplace(row[id_col], fold).second) {
      throw ValidationError(ctx + ": duplicate sequence '" + row[id_col] + "'");
    }
  }
  return out;
}

void write_sequences(const std::string& path, const std::vector<Sequence>& sequences) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& seq : sequences) {
    for (int i = 0; i < seq.n(); ++i) {
      rows.push_back({seq.id, std::to_string(seq.positions[i]), format_double(seq.values[i])});
    }
  }
  write_csv(path, {"sequenceID", "position", "value"}, rows);
}

void write_labels(const std::string& path, const std::vector<Label>& labels) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& lab : labels) {
    rows.push_back({lab.sequence_id, std::to_string(lab.start), std::to_string(lab.end),
                    std::to_string(lab.changes)});
  }
  write_csv(path, {"sequenceID", "start", "end", "changes"}, rows);
}

namespace {

// Changepoint index c (change between data points c and c+1, positions 1..N)
// has midpoint c + 0.5, so label [a, b] covers the change iff a <= c <= b-1.
int changes_covered(const std::vector<int>& cps, int a, int b) {
  int n = 0;
  for (int c : cps) {
    if (c >= a && c <= b - 1) ++n;
  }
  return n;
}

}  // namespace

std::pair<std::vector<Sequence>, std::vector<Label>> generate_synthetic(
    const SyntheticConfig& config, std::uint64_t seed) {
  if (config.n_sequences < 1) throw ConfigError("synthetic: n_sequences must be >= 1");
  if (config.length_min < 2 || config.length_min > config.length_max) {
    throw ConfigError("synthetic: length range must be non-empty with minimum >= 2");
  }
  if (config.segments_min < 1 || config.segments_min > config.segments_max) {
    throw ConfigError("synthetic: segments range must be non-empty with minimum >= 1");
  }
  if (config.segments_max > config.length_min) {
    throw ConfigError("synthetic: up to " + std::to_string(config.segments_max) +
                      " segments requested but sequences may have only " +
                      std::to_string(config.length_min) + " points");
  }
  if (!(config.noise_sd > 0)) throw ConfigError("synthetic: noise sd must be > 0");
  if (!(config.label_coverage > 0) || config.label_coverage > 1) {
    throw ConfigError("synthetic: label coverage must be in (0, 1]");
  }

  std::vector<Sequence> sequences;
  std::vector<Label> labels;
  const int id_width = static_cast<int>(std::to_string(config.n_sequences).size());

  for (int s = 0; s < config.n_sequences; ++s) {
    SplitMix64 rng(stable_hash(seed, "synthetic", static_cast<std::uint64_t>(s)));
    const int n = static_cast<int>(rng.uniform_int(config.length_min, config.length_max));
    const int n_segments = static_cast<int>(rng.uniform_int(config.segments_min, config.segments_max));

    // Distinct changepoint indices via partial Fisher-Yates over 1..n-1.
    std::vector<int> candidates(n - 1);
    std::iota(candidates.begin(), candidates.end(), 1);
    std::vector<int> cps;
    for (int j = 0; j < n_segments - 1; ++j) {
      const int pick = static_cast<int>(rng.uniform_int(j, static_cast<int>(candidates.size()) - 1));
      std::swap(candidates[j], candidates[pick]);
      cps.push_back(candidates[j]);
    }
    std::sort(cps.begin(), cps.end());

    // Segment mean levels: jumps of magnitude 3..6 with random sign.
    std::vector<double> level(n_segments);
    level[0] = rng.uniform(-2.0, 2.0);
    for (int j = 1; j < n_segments; ++j) {
      const double jump = rng.uniform(3.0, 6.0);
      level[j] = level[j - 1] + (rng.uniform() < 0.5 ? -jump : jump);
    }

    Sequence seq;
    std::string num = std::to_string(s + 1);
    seq.id = "seq" + std::string(id_width - num.size(), '0') + num;
    seq.positions.resize(n);
    seq.values.resize(n);
    int seg = 0;
    for (int i = 0; i < n; ++i) {
      if (seg < static_cast<int>(cps.size()) && i >= cps[seg]) ++seg;
      seq.positions[i] = i + 1;
      seq.values[i] = level[seg] + config.noise_sd * rng.normal();
    }

    // Candidate label windows in position order: a positive window around each
    // changepoint, a negative window inside each long-enough segment.
    struct Window {
      int a, b;
    };
    std::vector<Window> candidates_w;
    std::vector<int> seg_starts{1};
    for (int c : cps) seg_starts.push_back(c + 1);
    seg_starts.push_back(n + 1);
    for (int j = 0; j < n_segments; ++j) {
      const int seg_lo = seg_starts[j];
      const int seg_hi = seg_starts[j + 1] - 1;  // inclusive span of data indices
      if (seg_hi - seg_lo >= 3) {
        const int a = static_cast<int>(rng.uniform_int(seg_lo, seg_hi - 2));
        const int len = static_cast<int>(rng.uniform_int(2, std::min(4, seg_hi - a)));
        candidates_w.push_back({a, a + len});
      }
      if (j < static_cast<int>(cps.size())) {
        const int w = static_cast<int>(rng.uniform_int(1, 3));
        const int a = std::max(1, cps[j] - w);
        const int b = std::min(n, cps[j] + w);
        candidates_w.push_back({a, b});
      }
    }

    int covered = 0;
    int last_end = 0;
    const double target_cover = config.label_coverage * n;
    bool any = false;
    for (const auto& win : candidates_w) {
      if (win.a <= last_end) continue;
      if (any && covered >= target_cover) break;
      Label lab;
      lab.sequence_id = seq.id;
      lab.start = win.a;
      lab.end = win.b;
      lab.changes = changes_covered(cps, win.a, win.b);
      labels.push_back(lab);
      covered += win.b - win.a;
      last_end = win.b;
      any = true;
    }
    if (!any) {
      // Always emit at least one label; n >= 2 guarantees this window exists.
      Label lab;
      lab.sequence_id = seq.id;
      lab.start = 1;
      lab.end = std::min(n, 3);
      lab.changes = changes_covered(cps, lab.start, lab.end);
      labels.push_back(lab);
    }
    sequences.push_back(std::move(seq));
  }
  return {std::move(sequences), std::move(labels)};
}

FoldAssignment assign_folds(const std::vector<std::string>& ids, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("fold count must be >= 2");
  if (k > static_cast<int>(ids.size())) {
    throw ConfigError("fold count " + std::to_string(k) + " exceeds number of sequences " +
                      std::to_string(ids.size()));
  }
  std::set<std::string> distinct(ids.begin(), ids.end());
  if (distinct.size() != ids.size()) throw ValidationError("duplicate sequence ids in fold assignment");

  std::vector<std::pair<std::uint64_t, std::string>> keyed;
  keyed.reserve(ids.size());
  for (const auto& id : ids) keyed.emplace_back(stable_hash(seed, "folds", id), id);
  std::sort(keyed.begin(), keyed.end());

  FoldAssignment out;
  out.k = k;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    out.fold_of[keyed[i].second] = static_cast<int>(i % k) + 1;
  }
  return out;
}

}  // namespace penlearn
