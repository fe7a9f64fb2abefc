#include "penlearn/features.hpp"

#include <algorithm>
#include <cmath>

#include "penlearn/errors.hpp"

namespace penlearn {

const std::vector<std::string>& BaseStats::names() {
  static const std::vector<std::string> kNames = {
      "count", "mean",   "variance", "sd",    "min",          "max",
      "q25",   "median", "q75",      "range", "sum_abs_diff", "mean_abs_diff"};
  return kNames;
}

std::vector<double> BaseStats::as_vector() const {
  return {count, mean, variance, sd, min, max, q25, median, q75, range, sum_abs_diff, mean_abs_diff};
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BaseStats base_statistics(const Sequence& seq) {
  const auto& d = seq.values;
  const int n = seq.n();
  if (n < 1) throw DomainError("sequence '" + seq.id + "' is empty");

  BaseStats s{};
  s.count = n;
  double sum = 0;
  for (double v : d) sum += v;
  s.mean = sum / n;
  double ss = 0;
  for (double v : d) ss += (v - s.mean) * (v - s.mean);
  s.variance = n > 1 ? ss / (n - 1) : 0.0;
  s.sd = std::sqrt(s.variance);

  std::vector<double> sorted(d);
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q25 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q75 = quantile_sorted(sorted, 0.75);
  s.range = s.max - s.min;

  s.sum_abs_diff = 0;
  for (int i = 0; i + 1 < n; ++i) s.sum_abs_diff += std::abs(d[i + 1] - d[i]);
  s.mean_abs_diff = n > 1 ? s.sum_abs_diff / (n - 1) : 0.0;
  return s;
}

namespace {

struct Transform {
  const char* name;
  double (*apply)(double);
};

const Transform kTransforms[] = {
    {"identity", [](double x) { return x; }},
    {"abs", [](double x) { return std::abs(x); }},
    {"square", [](double x) { return x * x; }},
    {"sqrt", [](double x) { return std::sqrt(std::abs(x)); }},
    {"log", [](double x) { return std::log(x); }},
    {"loglog", [](double x) { return std::log(std::log(x)); }},
    {"log1p", [](double x) { return std::log1p(std::abs(x)); }},
};

}  // namespace

FeatureVector feature_catalog(const BaseStats& stats) {
  FeatureVector fv;
  fv.names = catalog_names();
  fv.values.reserve(fv.names.size());
  const std::vector<double> base = stats.as_vector();
  for (const auto& t : kTransforms) {
    for (double v : base) fv.values.push_back(t.apply(v));
  }
  return fv;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> kCatalog = [] {
    std::vector<std::string> names;
    for (const auto& t : kTransforms) {
      for (const auto& stat : BaseStats::names()) {
        names.push_back(std::string(t.name) + "." + stat);
      }
    }
    return names;
  }();
  return kCatalog;
}

std::vector<std::string> named_feature_set(const std::string& which) {
  if (which == "f1") return {"loglog.count"};
  if (which == "f2") return {"loglog.count", "log.variance"};
  if (which == "f4") return {"loglog.count", "log.variance", "log.range", "loglog.sum_abs_diff"};
  if (which == "full") return catalog_names();
  throw ConfigError("unknown feature set '" + which + "' (expected f1, f2, f4 or full)");
}

std::vector<std::string> ColumnMask::kept_names(const std::vector<std::string>& names) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (keep[i]) out.push_back(names[i]);
  }
  return out;
}

ColumnMask select_finite_columns(const std::vector<std::vector<double>>& train_rows) {
  if (train_rows.empty()) throw PipelineError("no training rows to fit the feature mask on");
  const std::size_t cols = train_rows.front().size();
  ColumnMask mask;
  mask.keep.assign(cols, true);
  mask.train_mean.assign(cols, 0.0);
  for (const auto& row : train_rows) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!std::isfinite(row[c])) mask.keep[c] = false;
    }
  }
  std::size_t kept = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!mask.keep[c]) continue;
    ++kept;
    double sum = 0;
    for (const auto& row : train_rows) sum += row[c];
    mask.train_mean[c] = sum / static_cast<double>(train_rows.size());
  }
  if (kept == 0) throw PipelineError("every feature column contains non-finite training values");
  return mask;
}

MaskedMatrix apply_mask(const ColumnMask& mask, const std::vector<std::vector<double>>& rows) {
  MaskedMatrix out;
  out.rows.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<double> kept;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!mask.keep[c]) continue;
      if (std::isfinite(row[c])) {
        kept.push_back(row[c]);
      } else {
        kept.push_back(mask.train_mean[c]);
        ++out.imputed;
      }
    }
    out.rows.push_back(std::move(kept));
  }
  return out;
}

Standardizer fit_standardizer(const std::vector<std::vector<double>>& train_rows) {
  if (train_rows.empty()) throw PipelineError("no training rows to fit the standardizer on");
  const std::size_t cols = train_rows.front().size();
  const double n = static_cast<double>(train_rows.size());
  Standardizer st;
  st.mean.assign(cols, 0.0);
  st.sd.assign(cols, 0.0);
  for (const auto& row : train_rows) {
    for (std::size_t c = 0; c < cols; ++c) st.mean[c] += row[c];
  }
  for (std::size_t c = 0; c < cols; ++c) st.mean[c] /= n;
  if (train_rows.size() > 1) {
    for (const auto& row : train_rows) {
      for (std::size_t c = 0; c < cols; ++c) {
        const double r = row[c] - st.mean[c];
        st.sd[c] += r * r;
      }
    }
    for (std::size_t c = 0; c < cols; ++c) st.sd[c] = std::sqrt(st.sd[c] / (n - 1));
  }
  return st;
}

std::vector<std::vector<double>> apply_standardizer(const Standardizer& st,
                                                    const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<double> z(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      z[c] = st.sd[c] > 0 ? (row[c] - st.mean[c]) / st.sd[c] : 0.0;
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace penlearn
