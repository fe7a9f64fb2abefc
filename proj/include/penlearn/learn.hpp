#ifndef PENLEARN_LEARN_HPP
#define PENLEARN_LEARN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "penlearn/types.hpp"

namespace penlearn {

// loss = ReLU(y_l - yhat + margin)^2 + ReLU(yhat - y_u + margin)^2, with
// infinite bounds contributing zero; dloss is the exact derivative in yhat.
struct HingeValue {
  double loss = 0;
  double dloss = 0;
};

HingeValue squared_hinge(double yhat, const TargetInterval& target, double margin);

// Unsupervised baseline: log(lambda) = log(log(N)). Requires N >= 2.
double bic_predict(long long n);

struct IntervalDataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> x;
  std::vector<TargetInterval> y;

  std::size_t size() const { return x.size(); }
};

// Throws on rows with y_l >= y_u, no finite bound, or non-finite features.
void validate_dataset(const IntervalDataset& data);

struct AdamOptions {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int max_iterations = 12000;
  int patience = 20;
  double margin = 1.0;
  bool record_trace = false;
};

// Absolute improvement below this does not reset the patience counter.
constexpr double kImprovementThreshold = 1e-9;

struct TrainInfo {
  int stop_iteration = 0;
  double best_loss = std::numeric_limits<double>::infinity();
  std::vector<double> trace;  // per-iteration objective when recorded
};

struct LinearModel {
  std::vector<double> w;
  double b = 0;
  TrainInfo info;
};

// Full-batch Adam on the mean squared hinge loss plus l1_strength*||w||_1
// (intercept unpenalized, proximal soft-threshold step after each update).
// Parameters start at zero, so the seed only labels the run.
LinearModel train_linear(const IntervalDataset& data, double l1_strength, const AdamOptions& opt,
                         std::uint64_t seed);

double linear_predict(const LinearModel& model, const std::vector<double>& x);

// Mean squared hinge loss of the linear model and its exact gradient
// (d/dw, d/db); regularization excluded. Used by gradient checks.
double linear_batch_loss(const LinearModel& model, const IntervalDataset& data, double margin);
void linear_batch_gradient(const LinearModel& model, const IntervalDataset& data, double margin,
                           std::vector<double>& grad_w, double& grad_b);

struct MLPArch {
  int layers = 1;
  int width = 2;
};

struct MLPModel {
  std::vector<int> layer_sizes;          // [input, hidden.., 1]
  std::vector<Eigen::MatrixXd> weights;  // (out x in) per layer
  std::vector<Eigen::VectorXd> biases;
  std::uint64_t seed = 0;
  TrainInfo info;
};

// Glorot-uniform weights from a splitmix64 stream, zero biases.
MLPModel init_mlp(int input_dim, const MLPArch& arch, std::uint64_t seed);

// Full-batch Adam, rectifier hidden activations, linear output; stops when
// the training loss fails to improve by >= 1e-9 for `patience` consecutive
// iterations or at max_iterations, and returns the best-loss parameters.
MLPModel train_mlp(const IntervalDataset& data, const MLPArch& arch, const AdamOptions& opt,
                   std::uint64_t seed);

double mlp_predict(const MLPModel& model, const std::vector<double>& x);

// Flat parameter access (per layer: weights row-major, then bias) and the
// full-batch objective/gradient, exposed for finite-difference verification.
std::vector<double> mlp_parameters(const MLPModel& model);
void set_mlp_parameters(MLPModel& model, const std::vector<double>& params);
double mlp_batch_loss(const MLPModel& model, const IntervalDataset& data, double margin);
std::vector<double> mlp_batch_gradient(const MLPModel& model, const IntervalDataset& data,
                                       double margin);

// ---- Max-margin interval tree ----

struct LeafFit {
  double value = 0;
  double loss = 0;
};

// Exact minimizer of the total squared hinge loss of one constant prediction:
// breakpoint sweep over the sorted hinge breakpoints. A flat minimum resolves
// to the midpoint of the flat region, or its finite endpoint when the region
// is half-infinite (0 if the loss is zero everywhere).
LeafFit mmit_leaf_value(const std::vector<TargetInterval>& targets, double margin);

struct MMITHyper {
  int max_depth = 4;
  int min_samples_split = 2;
  double margin = 1.0;
};

// Nodes stored by index; feature < 0 marks a leaf.
struct TreeNode {
  int feature = -1;
  double threshold = 0;
  int left = -1;
  int right = -1;
  double value = 0;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // root at index 0
  MMITHyper hyper;
};

// Greedy top-down: every feature, every midpoint between consecutive sorted
// unique values; stops at max_depth, below min_samples_split, or when no
// split strictly reduces the loss. Ties prefer the lowest feature index,
// then the lowest threshold.
TreeModel train_mmit(const IntervalDataset& data, const MMITHyper& hyper);

double tree_predict(const TreeModel& model, const std::vector<double>& x);

}  // namespace penlearn

#endif
