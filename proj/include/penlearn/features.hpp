#ifndef PENLEARN_FEATURES_HPP
#define PENLEARN_FEATURES_HPP

#include <string>
#include <vector>

#include "penlearn/types.hpp"

namespace penlearn {

// The 12 base statistics, in catalog order.
struct BaseStats {
  double count, mean, variance, sd, min, max, q25, median, q75, range, sum_abs_diff, mean_abs_diff;

  std::vector<double> as_vector() const;
  static const std::vector<std::string>& names();
};

struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;  // may contain non-finite entries before masking
};

// Variance uses the N-1 denominator (0 when N = 1); quartiles use linear
// interpolation on the sorted values.
BaseStats base_statistics(const Sequence& seq);

// Cross product of the 12 base statistics with the transforms
// {identity, abs, square, sqrt, log, loglog, log1p}; sqrt and log1p are
// applied to |x|. Names are "<transform>.<stat>". Non-finite results are
// kept; filtering happens later against training rows.
FeatureVector feature_catalog(const BaseStats& stats);

const std::vector<std::string>& catalog_names();

// Feature sets from the model table: f1 = {loglog.count},
// f2 = f1 + {log.variance}, f4 = f2 + {log.range, loglog.sum_abs_diff},
// full = the whole catalog.
std::vector<std::string> named_feature_set(const std::string& which);

// Linear-interpolation quantile of already sorted data, p in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double p);

// Column filter fitted on training rows: keeps the columns that are finite in
// every training row and remembers their training means for test imputation.
struct ColumnMask {
  std::vector<bool> keep;
  std::vector<double> train_mean;  // full catalog width; meaningful where kept

  std::vector<std::string> kept_names(const std::vector<std::string>& names) const;
};

ColumnMask select_finite_columns(const std::vector<std::vector<double>>& train_rows);

struct MaskedMatrix {
  std::vector<std::vector<double>> rows;
  std::size_t imputed = 0;  // kept-column cells replaced by the training mean
};

MaskedMatrix apply_mask(const ColumnMask& mask, const std::vector<std::vector<double>>& rows);

// Per-column centering and scaling fitted on training rows; zero-sd columns
// map to 0.
struct Standardizer {
  std::vector<double> mean, sd;
};

Standardizer fit_standardizer(const std::vector<std::vector<double>>& train_rows);
std::vector<std::vector<double>> apply_standardizer(const Standardizer& st,
                                                    const std::vector<std::vector<double>>& rows);

}  // namespace penlearn

#endif
