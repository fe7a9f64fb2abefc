#include "penlearn/learn.hpp"

#include <algorithm>
#include <cmath>

#include "penlearn/errors.hpp"
#include "penlearn/rng.hpp"

namespace penlearn {

HingeValue squared_hinge(double yhat, const TargetInterval& target, double margin) {
  HingeValue out;
  if (std::isfinite(target.lower)) {
    const double arg = target.lower - yhat + margin;
    if (arg > 0) {
      out.loss += arg * arg;
      out.dloss -= 2 * arg;
    }
  }
  if (std::isfinite(target.upper)) {
    const double arg = yhat - target.upper + margin;
    if (arg > 0) {
      out.loss += arg * arg;
      out.dloss += 2 * arg;
    }
  }
  return out;
}

double bic_predict(long long n) {
  if (n <= 1) throw DomainError("BIC prediction requires N >= 2, got " + std::to_string(n));
  return std::log(std::log(static_cast<double>(n)));
}

void validate_dataset(const IntervalDataset& data) {
  if (data.size() == 0) throw ValidationError("interval dataset is empty");
  if (data.x.size() != data.y.size()) {
    throw ValidationError("interval dataset has mismatched feature/target counts");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.x[i].size() != data.feature_names.size()) {
      throw ValidationError("row " + std::to_string(i) + " has wrong feature count");
    }
    for (double v : data.x[i]) {
      if (!std::isfinite(v)) {
        throw ValidationError("row " + std::to_string(i) + " has a non-finite feature");
      }
    }
    const auto& t = data.y[i];
    if (!(t.lower < t.upper)) {
      throw ValidationError("row " + std::to_string(i) + " has an empty target interval");
    }
    if (!std::isfinite(t.lower) && !std::isfinite(t.upper)) {
      throw ValidationError("row " + std::to_string(i) + " has no finite target bound");
    }
  }
}

namespace {

// Keras-style patience bookkeeping shared by the trainers.
class EarlyStopping {
 public:
  EarlyStopping(int patience, int max_iterations)
      : patience_(patience), max_iterations_(max_iterations) {}

  // Returns true when training should halt after this iteration.
  bool observe(double loss, int iteration) {
    if (loss < best_ - kImprovementThreshold) {
      best_ = loss;
      wait_ = 0;
    } else {
      ++wait_;
      if (wait_ >= patience_) return true;
    }
    return iteration >= max_iterations_;
  }

 private:
  int patience_;
  int max_iterations_;
  double best_ = std::numeric_limits<double>::infinity();
  int wait_ = 0;
};

}  // namespace

LinearModel train_linear(const IntervalDataset& data, double l1_strength, const AdamOptions& opt,
                         std::uint64_t seed) {
  validate_dataset(data);
  if (l1_strength < 0) throw DomainError("l1 strength must be >= 0");
  const std::size_t d = data.feature_names.size();
  const double n = static_cast<double>(data.size());

  LinearModel model;
  model.w.assign(d, 0.0);
  model.b = 0.0;
  (void)seed;  // convex objective, zero init, full batch: nothing to randomize

  std::vector<double> mw(d, 0.0), vw(d, 0.0), gw(d);
  double mb = 0, vb = 0;
  std::vector<double> best_w = model.w;
  double best_b = model.b;

  EarlyStopping stopper(opt.patience, opt.max_iterations);
  for (int t = 1; t <= opt.max_iterations; ++t) {
    std::fill(gw.begin(), gw.end(), 0.0);
    double gb = 0, hinge = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      double pred = model.b;
      for (std::size_t j = 0; j < d; ++j) pred += model.w[j] * data.x[i][j];
      const HingeValue h = squared_hinge(pred, data.y[i], opt.margin);
      hinge += h.loss;
      for (std::size_t j = 0; j < d; ++j) gw[j] += h.dloss * data.x[i][j];
      gb += h.dloss;
    }
    hinge /= n;
    double objective = hinge;
    for (double w : model.w) objective += l1_strength * std::abs(w);
    if (!std::isfinite(objective)) {
      throw TrainingError("non-finite training objective at iteration " + std::to_string(t));
    }
    if (opt.record_trace) model.info.trace.push_back(objective);
    if (objective < model.info.best_loss) {
      model.info.best_loss = objective;
      best_w = model.w;
      best_b = model.b;
    }
    if (stopper.observe(objective, t)) {
      model.info.stop_iteration = t;
      break;
    }

    const double bc1 = 1.0 - std::pow(opt.beta1, t);
    const double bc2 = 1.0 - std::pow(opt.beta2, t);
    for (std::size_t j = 0; j < d; ++j) {
      const double g = gw[j] / n;
      mw[j] = opt.beta1 * mw[j] + (1 - opt.beta1) * g;
      vw[j] = opt.beta2 * vw[j] + (1 - opt.beta2) * g * g;
      model.w[j] -= opt.learning_rate * (mw[j] / bc1) / (std::sqrt(vw[j] / bc2) + opt.epsilon);
      // proximal step for the L1 penalty
      const double shrink = opt.learning_rate * l1_strength;
      if (model.w[j] > shrink) {
        model.w[j] -= shrink;
      } else if (model.w[j] < -shrink) {
        model.w[j] += shrink;
      } else {
        model.w[j] = 0.0;
      }
    }
    const double g = gb / n;
    mb = opt.beta1 * mb + (1 - opt.beta1) * g;
    vb = opt.beta2 * vb + (1 - opt.beta2) * g * g;
    model.b -= opt.learning_rate * (mb / bc1) / (std::sqrt(vb / bc2) + opt.epsilon);
  }
  if (model.info.stop_iteration == 0) model.info.stop_iteration = opt.max_iterations;
  model.w = best_w;
  model.b = best_b;
  return model;
}

double linear_predict(const LinearModel& model, const std::vector<double>& x) {
  if (x.size() != model.w.size()) throw DomainError("feature dimension mismatch in linear_predict");
  double pred = model.b;
  for (std::size_t j = 0; j < x.size(); ++j) pred += model.w[j] * x[j];
  return pred;
}

double linear_batch_loss(const LinearModel& model, const IntervalDataset& data, double margin) {
  double loss = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    loss += squared_hinge(linear_predict(model, data.x[i]), data.y[i], margin).loss;
  }
  return loss / static_cast<double>(data.size());
}

void linear_batch_gradient(const LinearModel& model, const IntervalDataset& data, double margin,
                           std::vector<double>& grad_w, double& grad_b) {
  grad_w.assign(model.w.size(), 0.0);
  grad_b = 0;
  const double n = static_cast<double>(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const HingeValue h = squared_hinge(linear_predict(model, data.x[i]), data.y[i], margin);
    for (std::size_t j = 0; j < model.w.size(); ++j) grad_w[j] += h.dloss * data.x[i][j] / n;
    grad_b += h.dloss / n;
  }
}

namespace {

void check_arch(const MLPArch& arch) {
  if (arch.layers < 1 || arch.layers > 4) {
    throw DomainError("hidden layer count must be 1..4, got " + std::to_string(arch.layers));
  }
  bool ok = false;
  for (int w = 2; w <= 512; w *= 2) ok = ok || arch.width == w;
  if (!ok) {
    throw DomainError("hidden width must be a power of two in 2..512, got " +
                      std::to_string(arch.width));
  }
}

struct AdamState {
  std::vector<Eigen::MatrixXd> mw, vw;
  std::vector<Eigen::VectorXd> mb, vb;

  explicit AdamState(const MLPModel& model) {
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
      mw.push_back(Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols()));
      vw.push_back(Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols()));
      mb.push_back(Eigen::VectorXd::Zero(model.biases[l].size()));
      vb.push_back(Eigen::VectorXd::Zero(model.biases[l].size()));
    }
  }
};

struct BatchTargets {
  Eigen::ArrayXd lower, upper;  // +-inf where unbounded
};

BatchTargets make_targets(const IntervalDataset& data) {
  BatchTargets t;
  const auto n = static_cast<Eigen::Index>(data.size());
  t.lower.resize(n);
  t.upper.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t.lower[i] = data.y[i].lower;
    t.upper[i] = data.y[i].upper;
  }
  return t;
}

Eigen::MatrixXd make_matrix(const IntervalDataset& data) {
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto d = static_cast<Eigen::Index>(data.feature_names.size());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = data.x[i][j];
  }
  return x;
}

// Forward pass over a row-batch; activations are kept for backprop.
struct ForwardPass {
  std::vector<Eigen::MatrixXd> act;  // act[0] = input, act[l] = relu output
  Eigen::VectorXd pred;
};

ForwardPass forward(const MLPModel& model, const Eigen::MatrixXd& x) {
  ForwardPass fp;
  fp.act.push_back(x);
  const std::size_t hidden = model.weights.size() - 1;
  for (std::size_t l = 0; l < hidden; ++l) {
    Eigen::MatrixXd z = fp.act.back() * model.weights[l].transpose();
    z.rowwise() += model.biases[l].transpose();
    fp.act.push_back(z.cwiseMax(0.0));
  }
  fp.pred = fp.act.back() * model.weights.back().transpose();
  fp.pred.array() += model.biases.back()[0];
  return fp;
}

// Mean squared hinge loss of predictions and its derivative per row.
double batch_hinge(const Eigen::VectorXd& pred, const BatchTargets& t, double margin,
                   Eigen::VectorXd* dpred) {
  const Eigen::Index n = pred.size();
  double loss = 0;
  if (dpred) dpred->setZero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const HingeValue h =
        squared_hinge(pred[i], TargetInterval{t.lower[i], t.upper[i]}, margin);
    loss += h.loss;
    if (dpred) (*dpred)[i] = h.dloss / static_cast<double>(n);
  }
  return loss / static_cast<double>(n);
}

struct Gradients {
  std::vector<Eigen::MatrixXd> gw;
  std::vector<Eigen::VectorXd> gb;
};

Gradients backward(const MLPModel& model, const ForwardPass& fp, const Eigen::VectorXd& dpred) {
  const std::size_t n_layers = model.weights.size();
  Gradients g;
  g.gw.resize(n_layers);
  g.gb.resize(n_layers);

  g.gw[n_layers - 1] = dpred.transpose() * fp.act.back();
  g.gb[n_layers - 1] = Eigen::VectorXd::Constant(1, dpred.sum());

  Eigen::MatrixXd delta = dpred * model.weights.back();  // (n x h)
  for (std::size_t l = n_layers - 1; l-- > 0;) {
    // rectifier derivative: pass gradient only where the activation is positive
    delta = (fp.act[l + 1].array() > 0.0).select(delta, 0.0);
    g.gw[l] = delta.transpose() * fp.act[l];
    g.gb[l] = delta.colwise().sum();
    if (l > 0) delta = (delta * model.weights[l]).eval();
  }
  return g;
}

}  // namespace

MLPModel init_mlp(int input_dim, const MLPArch& arch, std::uint64_t seed) {
  check_arch(arch);
  if (input_dim < 1) throw DomainError("MLP input dimension must be >= 1");
  MLPModel model;
  model.seed = seed;
  model.layer_sizes.push_back(input_dim);
  for (int l = 0; l < arch.layers; ++l) model.layer_sizes.push_back(arch.width);
  model.layer_sizes.push_back(1);

  SplitMix64 rng(seed);
  for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
    const int fan_in = model.layer_sizes[l];
    const int fan_out = model.layer_sizes[l + 1];
    const double a = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-a, a);
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return model;
}

MLPModel train_mlp(const IntervalDataset& data, const MLPArch& arch, const AdamOptions& opt,
                   std::uint64_t seed) {
  validate_dataset(data);
  MLPModel model = init_mlp(static_cast<int>(data.feature_names.size()), arch, seed);
  const Eigen::MatrixXd x = make_matrix(data);
  const BatchTargets targets = make_targets(data);

  AdamState adam(model);
  std::vector<Eigen::MatrixXd> best_w = model.weights;
  std::vector<Eigen::VectorXd> best_b = model.biases;

  Eigen::VectorXd dpred;
  EarlyStopping stopper(opt.patience, opt.max_iterations);
  for (int t = 1; t <= opt.max_iterations; ++t) {
    const ForwardPass fp = forward(model, x);
    const double loss = batch_hinge(fp.pred, targets, opt.margin, &dpred);
    if (!std::isfinite(loss)) {
      throw TrainingError("non-finite training loss at iteration " + std::to_string(t));
    }
    if (opt.record_trace) model.info.trace.push_back(loss);
    if (loss < model.info.best_loss) {
      model.info.best_loss = loss;
      best_w = model.weights;
      best_b = model.biases;
    }
    if (stopper.observe(loss, t)) {
      model.info.stop_iteration = t;
      break;
    }

    const Gradients g = backward(model, fp, dpred);
    const double bc1 = 1.0 - std::pow(opt.beta1, t);
    const double bc2 = 1.0 - std::pow(opt.beta2, t);
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
      adam.mw[l] = opt.beta1 * adam.mw[l] + (1 - opt.beta1) * g.gw[l];
      adam.vw[l] = opt.beta2 * adam.vw[l] + (1 - opt.beta2) * g.gw[l].cwiseProduct(g.gw[l]);
      model.weights[l] -= opt.learning_rate *
                          ((adam.mw[l] / bc1).array() / ((adam.vw[l] / bc2).array().sqrt() + opt.epsilon))
                              .matrix();
      adam.mb[l] = opt.beta1 * adam.mb[l] + (1 - opt.beta1) * g.gb[l];
      adam.vb[l] = opt.beta2 * adam.vb[l] + (1 - opt.beta2) * g.gb[l].cwiseProduct(g.gb[l]);
      model.biases[l] -= opt.learning_rate *
                         ((adam.mb[l] / bc1).array() / ((adam.vb[l] / bc2).array().sqrt() + opt.epsilon))
                             .matrix();
    }
  }
  if (model.info.stop_iteration == 0) model.info.stop_iteration = opt.max_iterations;
  model.weights = std::move(best_w);
  model.biases = std::move(best_b);
  return model;
}

double mlp_predict(const MLPModel& model, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != model.layer_sizes.front()) {
    throw DomainError("feature dimension mismatch in mlp_predict");
  }
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  const std::size_t hidden = model.weights.size() - 1;
  for (std::size_t l = 0; l < hidden; ++l) {
    a = ((model.weights[l] * a + model.biases[l]).cwiseMax(0.0)).eval();
  }
  return (model.weights.back() * a)(0) + model.biases.back()[0];
}

std::vector<double> mlp_parameters(const MLPModel& model) {
  std::vector<double> out;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    const auto& w = model.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) out.push_back(w(r, c));
    }
    for (Eigen::Index i = 0; i < model.biases[l].size(); ++i) out.push_back(model.biases[l][i]);
  }
  return out;
}

void set_mlp_parameters(MLPModel& model, const std::vector<double>& params) {
  std::size_t idx = 0;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    auto& w = model.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = params.at(idx++);
    }
    for (Eigen::Index i = 0; i < model.biases[l].size(); ++i) model.biases[l][i] = params.at(idx++);
  }
  if (idx != params.size()) throw DomainError("parameter vector size mismatch");
}

double mlp_batch_loss(const MLPModel& model, const IntervalDataset& data, double margin) {
  const ForwardPass fp = forward(model, make_matrix(data));
  return batch_hinge(fp.pred, make_targets(data), margin, nullptr);
}

std::vector<double> mlp_batch_gradient(const MLPModel& model, const IntervalDataset& data,
                                       double margin) {
  const ForwardPass fp = forward(model, make_matrix(data));
  Eigen::VectorXd dpred;
  batch_hinge(fp.pred, make_targets(data), margin, &dpred);
  const Gradients g = backward(model, fp, dpred);
  std::vector<double> out;
  for (std::size_t l = 0; l < g.gw.size(); ++l) {
    for (Eigen::Index r = 0; r < g.gw[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < g.gw[l].cols(); ++c) out.push_back(g.gw[l](r, c));
    }
    for (Eigen::Index i = 0; i < g.gb[l].size(); ++i) out.push_back(g.gb[l][i]);
  }
  return out;
}

}  // namespace penlearn
