// Copyright 2026 The learnfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEARNFUZZ_CHARLM_HPP_
#define LEARNFUZZ_CHARLM_HPP_

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "learnfuzz/corpus.hpp"
#include "learnfuzz/error.hpp"
#include "learnfuzz/rng.hpp"

namespace learnfuzz::charlm {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Byte-level vocabulary: an ordered list of distinct characters.
class Vocab {
 public:
  Vocab() { index_.fill(-1); }

  explicit Vocab(std::vector<unsigned char> chars) : chars_(std::move(chars)) {
    index_.fill(-1);
    for (std::size_t i = 0; i < chars_.size(); ++i) {
      if (index_[chars_[i]] >= 0) {
        throw Error(Errc::invalid_config, "duplicate character in vocabulary");
      }
      index_[chars_[i]] = static_cast<int>(i);
    }
  }

  /// Sorted distinct characters of `text` plus those of "obj " and "endobj".
  static Vocab from_text(std::string_view text) {
    std::array<bool, 256> seen{};
    for (unsigned char c : text) seen[c] = true;
    for (unsigned char c : std::string_view("obj endobj")) seen[c] = true;
    std::vector<unsigned char> chars;
    for (int c = 0; c < 256; ++c) {
      if (seen[c]) chars.push_back(static_cast<unsigned char>(c));
    }
    return Vocab(std::move(chars));
  }

  std::size_t size() const { return chars_.size(); }
  bool contains(char c) const { return index_[static_cast<unsigned char>(c)] >= 0; }
  char at(std::size_t i) const { return static_cast<char>(chars_[i]); }
  const std::vector<unsigned char>& chars() const { return chars_; }

  int index_of(char c) const {
    const int i = index_[static_cast<unsigned char>(c)];
    if (i < 0) {
      throw Error(Errc::unknown_character,
                  "character code " +
                      std::to_string(static_cast<unsigned char>(c)) +
                      " is not in the vocabulary");
    }
    return i;
  }

  std::vector<int> encode(std::string_view text) const {
    std::vector<int> out;
    out.reserve(text.size());
    for (char c : text) out.push_back(index_of(c));
    return out;
  }

  friend bool operator==(const Vocab& a, const Vocab& b) {
    return a.chars_ == b.chars_;
  }

 private:
  std::vector<unsigned char> chars_;
  std::array<int, 256> index_;
};

/// One LSTM layer. Gate rows are stacked as [input, forget, output,
/// candidate], each block hidden_size rows tall.
struct LayerParams {
  Matrix w_input;      // 4H x input width (V for layer 0, H above)
  Matrix w_recurrent;  // 4H x H
  Vector bias;         // 4H
};

struct ModelParams {
  Vocab vocab;
  int num_layers = 0;
  int hidden_size = 0;
  std::vector<LayerParams> layers;
  Matrix w_output;  // H x V
  Vector b_output;  // V

  static ModelParams zeros(Vocab vocab, int num_layers, int hidden_size) {
    if (num_layers < 1 || hidden_size < 1 || vocab.size() == 0) {
      throw Error(Errc::invalid_config, "model dimensions must be positive");
    }
    ModelParams p;
    p.num_layers = num_layers;
    p.hidden_size = hidden_size;
    const auto V = static_cast<Eigen::Index>(vocab.size());
    const Eigen::Index H = hidden_size;
    for (int l = 0; l < num_layers; ++l) {
      LayerParams layer;
      layer.w_input = Matrix::Zero(4 * H, l == 0 ? V : H);
      layer.w_recurrent = Matrix::Zero(4 * H, H);
      layer.bias = Vector::Zero(4 * H);
      p.layers.push_back(std::move(layer));
    }
    p.w_output = Matrix::Zero(H, V);
    p.b_output = Vector::Zero(V);
    p.vocab = std::move(vocab);
    return p;
  }

  /// Uniform weights in [-scale, scale]; forget-gate biases set to 1.
  static ModelParams initialized(Vocab vocab, int num_layers, int hidden_size,
                                 std::uint64_t seed, double scale = 0.08) {
    ModelParams p = zeros(std::move(vocab), num_layers, hidden_size);
    Rng rng = make_rng(seed, {0x494e4954});
    for (auto t : p.tensors()) {
      for (double& w : t) w = (2.0 * uniform01(rng) - 1.0) * scale;
    }
    for (auto& layer : p.layers) {
      layer.bias.segment(hidden_size, hidden_size).setConstant(1.0);
    }
    return p;
  }

  /// Every weight tensor, in checkpoint order.
  std::vector<std::span<double>> tensors() {
    std::vector<std::span<double>> out;
    for (auto& l : layers) {
      out.emplace_back(l.w_input.data(), static_cast<std::size_t>(l.w_input.size()));
      out.emplace_back(l.w_recurrent.data(),
                       static_cast<std::size_t>(l.w_recurrent.size()));
      out.emplace_back(l.bias.data(), static_cast<std::size_t>(l.bias.size()));
    }
    out.emplace_back(w_output.data(), static_cast<std::size_t>(w_output.size()));
    out.emplace_back(b_output.data(), static_cast<std::size_t>(b_output.size()));
    return out;
  }

  std::vector<std::span<const double>> tensors() const {
    std::vector<std::span<const double>> out;
    for (auto t : const_cast<ModelParams*>(this)->tensors()) out.emplace_back(t);
    return out;
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (auto t : tensors()) n += t.size();
    return n;
  }

  bool all_finite() const {
    for (auto t : tensors()) {
      for (double w : t) {
        if (!std::isfinite(w)) return false;
      }
    }
    return true;
  }

  void set_zero() {
    for (auto t : tensors()) std::fill(t.begin(), t.end(), 0.0);
  }
};

inline bool bit_identical(const ModelParams& a, const ModelParams& b) {
  if (!(a.vocab == b.vocab) || a.num_layers != b.num_layers ||
      a.hidden_size != b.hidden_size) {
    return false;
  }
  auto ta = a.tensors();
  auto tb = b.tensors();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].size() != tb[i].size() ||
        std::memcmp(ta[i].data(), tb[i].data(), ta[i].size_bytes()) != 0) {
      return false;
    }
  }
  return true;
}

struct RecurrentState {
  std::vector<Vector> h;
  std::vector<Vector> c;

  static RecurrentState zeros(const ModelParams& p) {
    RecurrentState s;
    s.h.assign(static_cast<std::size_t>(p.num_layers), Vector::Zero(p.hidden_size));
    s.c.assign(static_cast<std::size_t>(p.num_layers), Vector::Zero(p.hidden_size));
    return s;
  }
};

namespace detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline void softmax_into(const Vector& logits, Vector& out) {
  const double m = logits.maxCoeff();
  out = (logits.array() - m).exp();
  out /= out.sum();
}

// Applies the gate nonlinearities in place on the 4H pre-activation vector.
inline void activate_gates(Vector& z, Eigen::Index H) {
  for (Eigen::Index k = 0; k < 3 * H; ++k) z[k] = sigmoid(z[k]);
  for (Eigen::Index k = 3 * H; k < 4 * H; ++k) z[k] = std::tanh(z[k]);
}

}  // namespace detail

/// Incremental evaluator: feeds one character at a time and exposes the
/// next-character distribution.
class Stepper {
 public:
  explicit Stepper(const ModelParams& params)
      : params_(params), state_(RecurrentState::zeros(params)) {
    recompute_output();
  }

  Stepper(const ModelParams& params, RecurrentState state)
      : params_(params), state_(std::move(state)) {
    recompute_output();
  }

  void reset() {
    state_ = RecurrentState::zeros(params_);
    recompute_output();
  }

  const Vector& step(int index) {
    const Eigen::Index H = params_.hidden_size;
    for (int l = 0; l < params_.num_layers; ++l) {
      const auto& L = params_.layers[static_cast<std::size_t>(l)];
      auto& h = state_.h[static_cast<std::size_t>(l)];
      auto& c = state_.c[static_cast<std::size_t>(l)];
      if (l == 0) {
        z_ = L.w_input.col(index) + L.bias;
      } else {
        z_ = L.w_input * state_.h[static_cast<std::size_t>(l - 1)] + L.bias;
      }
      z_.noalias() += L.w_recurrent * h;
      detail::activate_gates(z_, H);
      c = z_.segment(H, H).cwiseProduct(c) +
          z_.segment(0, H).cwiseProduct(z_.segment(3 * H, H));
      h = z_.segment(2 * H, H).cwiseProduct(c.array().tanh().matrix());
    }
    recompute_output();
    return probs_;
  }

  const Vector& step(char c) { return step(params_.vocab.index_of(c)); }

  const Vector& distribution() const { return probs_; }
  const RecurrentState& state() const { return state_; }

 private:
  void recompute_output() {
    logits_.noalias() = params_.w_output.transpose() * state_.h.back();
    logits_ += params_.b_output;
    detail::softmax_into(logits_, probs_);
  }

  const ModelParams& params_;
  RecurrentState state_;
  Vector z_;
  Vector logits_;
  Vector probs_;
};

/// Next-character distribution after consuming `prefix` from `state`
/// (zeros when absent), together with the resulting state.
inline std::pair<Vector, RecurrentState> forward(
    const ModelParams& params, std::string_view prefix,
    const std::optional<RecurrentState>& state = std::nullopt) {
  const auto encoded = params.vocab.encode(prefix);
  Stepper stepper = state ? Stepper(params, *state) : Stepper(params);
  for (int idx : encoded) stepper.step(idx);
  return {stepper.distribution(), stepper.state()};
}

/// Forward/backward workspace for one window; buffers are reused between
/// calls so training does not allocate per step.
class Bptt {
 public:
  // Mean per-position cross-entropy; forward pass only.
  double loss(const ModelParams& p, std::span<const int> input,
              std::span<const int> target) {
    return run_forward(p, input, target);
  }

  // Adds d(mean loss)/d(params) into `grad` and returns the loss.
  double accumulate(const ModelParams& p, std::span<const int> input,
                    std::span<const int> target, ModelParams& grad) {
    const double loss = run_forward(p, input, target);
    backward(p, input, target, grad);
    return loss;
  }

 private:
  double run_forward(const ModelParams& p, std::span<const int> input,
                     std::span<const int> target) {
    if (input.size() != target.size() || input.empty()) {
      throw Error(Errc::invalid_config, "window input/target length mismatch");
    }
    const std::size_t T = input.size();
    const auto L = static_cast<std::size_t>(p.num_layers);
    const Eigen::Index H = p.hidden_size;
    resize(T, L, p);
    zero_h_.setZero(H);
    double total = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t l = 0; l < L; ++l) {
        const auto& layer = p.layers[l];
        const Vector& h_prev = t > 0 ? hidden_[t - 1][l] : zero_h_;
        const Vector& c_prev = t > 0 ? cell_[t - 1][l] : zero_h_;
        Vector& z = gates_[t][l];
        if (l == 0) {
          z = layer.w_input.col(input[t]) + layer.bias;
        } else {
          z = layer.w_input * hidden_[t][l - 1] + layer.bias;
        }
        z.noalias() += layer.w_recurrent * h_prev;
        detail::activate_gates(z, H);
        cell_[t][l] = z.segment(H, H).cwiseProduct(c_prev) +
                      z.segment(0, H).cwiseProduct(z.segment(3 * H, H));
        tanh_c_[t][l] = cell_[t][l].array().tanh();
        hidden_[t][l] = z.segment(2 * H, H).cwiseProduct(tanh_c_[t][l]);
      }
      logits_.noalias() = p.w_output.transpose() * hidden_[t][L - 1];
      logits_ += p.b_output;
      detail::softmax_into(logits_, probs_[t]);
      total -= std::log(probs_[t][target[t]]);
    }
    return total / static_cast<double>(T);
  }

  void backward(const ModelParams& p, std::span<const int> input,
                std::span<const int> target, ModelParams& grad) {
    const std::size_t T = input.size();
    const auto L = static_cast<std::size_t>(p.num_layers);
    const Eigen::Index H = p.hidden_size;
    const double inv_t = 1.0 / static_cast<double>(T);
    for (std::size_t l = 0; l < L; ++l) {
      dh_next_[l].setZero(H);
      dc_next_[l].setZero(H);
    }
    for (std::size_t t = T; t-- > 0;) {
      dlogits_ = probs_[t];
      dlogits_[target[t]] -= 1.0;
      dlogits_ *= inv_t;
      grad.b_output += dlogits_;
      grad.w_output.noalias() += hidden_[t][L - 1] * dlogits_.transpose();
      dh_above_.noalias() = p.w_output * dlogits_;
      for (std::size_t l = L; l-- > 0;) {
        const auto& layer = p.layers[l];
        auto& glayer = grad.layers[l];
        const Vector& z = gates_[t][l];
        const auto i = z.segment(0, H).array();
        const auto f = z.segment(H, H).array();
        const auto o = z.segment(2 * H, H).array();
        const auto g = z.segment(3 * H, H).array();
        const auto tc = tanh_c_[t][l].array();
        const Vector& c_prev = t > 0 ? cell_[t - 1][l] : zero_h_;
        const Vector& h_prev = t > 0 ? hidden_[t - 1][l] : zero_h_;

        dh_ = dh_above_ + dh_next_[l];
        dc_ = (dh_.array() * o * (1.0 - tc.square())).matrix() + dc_next_[l];
        dz_.resize(4 * H);
        dz_.segment(0, H) = (dc_.array() * g * i * (1.0 - i)).matrix();
        dz_.segment(H, H) =
            (dc_.array() * c_prev.array() * f * (1.0 - f)).matrix();
        dz_.segment(2 * H, H) = (dh_.array() * tc * o * (1.0 - o)).matrix();
        dz_.segment(3 * H, H) = (dc_.array() * i * (1.0 - g.square())).matrix();
        dc_next_[l] = (dc_.array() * f).matrix();

        glayer.bias += dz_;
        if (t > 0) glayer.w_recurrent.noalias() += dz_ * h_prev.transpose();
        if (l == 0) {
          glayer.w_input.col(input[t]) += dz_;
        } else {
          glayer.w_input.noalias() += dz_ * hidden_[t][l - 1].transpose();
          dh_above_.noalias() = layer.w_input.transpose() * dz_;
        }
        dh_next_[l].noalias() = layer.w_recurrent.transpose() * dz_;
      }
    }
  }

  void resize(std::size_t T, std::size_t L, const ModelParams& p) {
    auto fit = [&](std::vector<std::vector<Vector>>& v) {
      if (v.size() < T) v.resize(T);
      for (std::size_t t = 0; t < T; ++t) {
        if (v[t].size() != L) v[t].resize(L);
      }
    };
    fit(gates_);
    fit(cell_);
    fit(tanh_c_);
    fit(hidden_);
    if (probs_.size() < T) probs_.resize(T);
    dh_next_.resize(L);
    dc_next_.resize(L);
    (void)p;
  }

  std::vector<std::vector<Vector>> gates_, cell_, tanh_c_, hidden_;
  std::vector<Vector> probs_;
  std::vector<Vector> dh_next_, dc_next_;
  Vector zero_h_, logits_, dlogits_, dh_above_, dh_, dc_, dz_;
};

inline std::pair<std::vector<int>, std::vector<int>> encode_window(
    const ModelParams& p, const corpus::Window& window) {
  if (window.input.size() != window.target.size()) {
    throw Error(Errc::invalid_config, "window input/target length mismatch");
  }
  return {p.vocab.encode(window.input), p.vocab.encode(window.target)};
}

/// Mean over positions of -log p(target[k] | input[0..k]).
inline double loss(const ModelParams& params, const corpus::Window& window) {
  const auto [in, tgt] = encode_window(params, window);
  Bptt bptt;
  return bptt.loss(params, in, tgt);
}

/// Analytic gradient of loss() by backpropagation through time.
inline ModelParams grad(const ModelParams& params, const corpus::Window& window) {
  const auto [in, tgt] = encode_window(params, window);
  ModelParams g = ModelParams::zeros(params.vocab, params.num_layers,
                                     params.hidden_size);
  Bptt bptt;
  bptt.accumulate(params, in, tgt, g);
  return g;
}

struct TrainConfig {
  int epochs = 50;
  std::size_t window_size = 64;
  std::size_t batch_size = 1;
  double learning_rate = 1.5;
  double gradient_clip = 5.0;
  // Learning rate halves every this many epochs; 0 disables the schedule.
  int lr_halving_period = 10;
  std::uint64_t rng_seed = 42;
  std::set<int> checkpoint_epochs;
  int num_layers = 2;
  int hidden_size = 128;
  double init_scale = 0.08;

  /// Small profile for CI-scale runs.
  static TrainConfig tiny() {
    TrainConfig c;
    c.num_layers = 1;
    c.hidden_size = 32;
    return c;
  }

  double learning_rate_at(int epoch) const {
    if (lr_halving_period <= 0) return learning_rate;
    return learning_rate * std::ldexp(1.0, -((epoch - 1) / lr_halving_period));
  }

  void validate() const {
    if (epochs < 1 || window_size < 1 || batch_size < 1 ||
        !(learning_rate > 0) || !(gradient_clip > 0) || num_layers < 1 ||
        hidden_size < 1) {
      throw Error(Errc::invalid_config, "training parameters must be positive");
    }
    for (int e : checkpoint_epochs) {
      if (e < 1 || e > epochs) {
        throw Error(Errc::invalid_config,
                    "checkpoint epoch " + std::to_string(e) +
                        " outside [1, epochs]");
      }
    }
  }
};

struct Checkpoint {
  ModelParams params;
  int epoch = 0;
  // Mean per-character cross-entropy over the windows of this epoch.
  double training_loss = 0.0;
};

// Scales each gradient tensor down to L2 norm <= clip.
inline void clip_per_tensor(ModelParams& grad, double clip) {
  for (auto t : grad.tensors()) {
    double sq = 0.0;
    for (double g : t) sq += g * g;
    const double norm = std::sqrt(sq);
    if (norm > clip) {
      const double scale = clip / norm;
      for (double& g : t) g *= scale;
    }
  }
}

struct EpochReport {
  int epoch = 0;
  double training_loss = 0.0;
  double learning_rate = 0.0;
};

/// Plain SGD with per-tensor clipping over the shuffled windows of the
/// training set. Hidden state starts at zero for every window. Deterministic
/// for a given config.
inline std::vector<Checkpoint> train(
    const corpus::TrainingSet& set, const TrainConfig& config,
    const std::function<void(const EpochReport&)>& on_epoch = {}) {
  config.validate();
  if (set.windows.empty()) {
    throw Error(Errc::corpus_too_small, "training set has no windows");
  }
  ModelParams params =
      ModelParams::initialized(Vocab::from_text(set.text), config.num_layers,
                               config.hidden_size, config.rng_seed,
                               config.init_scale);
  std::vector<std::vector<int>> inputs, targets;
  inputs.reserve(set.windows.size());
  targets.reserve(set.windows.size());
  for (const auto& w : set.windows) {
    inputs.push_back(params.vocab.encode(w.input));
    targets.push_back(params.vocab.encode(w.target));
  }

  ModelParams g = ModelParams::zeros(params.vocab, params.num_layers,
                                     params.hidden_size);
  Bptt bptt;
  std::vector<std::size_t> order(set.windows.size());
  std::vector<Checkpoint> checkpoints;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    Rng rng = make_rng(config.rng_seed, {0x45504f43, static_cast<std::uint64_t>(epoch)});
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    learnfuzz::shuffle(order, rng);
    const double lr = config.learning_rate_at(epoch);
    double epoch_loss = 0.0;
    for (std::size_t b = 0; b < order.size(); b += config.batch_size) {
      const std::size_t end = std::min(order.size(), b + config.batch_size);
      g.set_zero();
      for (std::size_t k = b; k < end; ++k) {
        epoch_loss += bptt.accumulate(params, inputs[order[k]],
                                      targets[order[k]], g);
      }
      const double inv = 1.0 / static_cast<double>(end - b);
      auto pt = params.tensors();
      auto gt = g.tensors();
      for (auto t : gt) {
        for (double& x : t) x *= inv;
      }
      clip_per_tensor(g, config.gradient_clip);
      for (std::size_t i = 0; i < pt.size(); ++i) {
        for (std::size_t j = 0; j < pt[i].size(); ++j) pt[i][j] -= lr * gt[i][j];
      }
    }
    epoch_loss /= static_cast<double>(order.size());
    if (!std::isfinite(epoch_loss) || !params.all_finite()) {
      throw Error(Errc::divergence,
                  "training diverged at epoch " + std::to_string(epoch));
    }
    if (on_epoch) on_epoch(EpochReport{epoch, epoch_loss, lr});
    if (config.checkpoint_epochs.count(epoch)) {
      checkpoints.push_back(Checkpoint{params, epoch, epoch_loss});
    }
  }
  return checkpoints;
}

// ---------------------------------------------------------------------------
// Checkpoint container, all integers and floats little-endian:
//
//   magic      8 bytes  "LFZCKPT\0"
//   version    u32      1
//   epoch      u32
//   loss       f64
//   V          u32, then V vocabulary bytes
//   layers     u32
//   hidden     u32
//   weights    f64 each, for every layer: w_input (4H x in, row-major),
//              w_recurrent (4H x H, row-major), bias (4H); then
//              w_output (H x V, row-major), b_output (V).
// ---------------------------------------------------------------------------

inline constexpr std::string_view kCheckpointMagic{"LFZCKPT\0", 8};
inline constexpr std::uint32_t kCheckpointVersion = 1;

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

inline void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u64(out, bits);
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::string_view bytes(std::size_t n) {
    if (data_.size() - pos_ < n) corrupt("truncated file");
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() {
    auto s = bytes(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[i]);
    return v;
  }
  double f64() {
    auto s = bytes(8);
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | static_cast<unsigned char>(s[i]);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  bool done() const { return pos_ == data_.size(); }

  [[noreturn]] static void corrupt(const std::string& why) {
    throw Error(Errc::corrupt_checkpoint, why);
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string serialize_checkpoint(const Checkpoint& ckpt) {
  const ModelParams& p = ckpt.params;
  std::string out(kCheckpointMagic);
  detail::put_u32(out, kCheckpointVersion);
  detail::put_u32(out, static_cast<std::uint32_t>(ckpt.epoch));
  detail::put_f64(out, ckpt.training_loss);
  detail::put_u32(out, static_cast<std::uint32_t>(p.vocab.size()));
  for (unsigned char c : p.vocab.chars()) out += static_cast<char>(c);
  detail::put_u32(out, static_cast<std::uint32_t>(p.num_layers));
  detail::put_u32(out, static_cast<std::uint32_t>(p.hidden_size));
  for (auto t : p.tensors()) {
    for (double w : t) detail::put_f64(out, w);
  }
  return out;
}

inline Checkpoint parse_checkpoint(std::string_view data) {
  detail::Reader r(data);
  if (r.bytes(8) != kCheckpointMagic) detail::Reader::corrupt("bad magic");
  if (r.u32() != kCheckpointVersion) detail::Reader::corrupt("unsupported version");
  Checkpoint ckpt;
  ckpt.epoch = static_cast<int>(r.u32());
  ckpt.training_loss = r.f64();
  const std::uint32_t v = r.u32();
  if (v == 0 || v > 256) detail::Reader::corrupt("bad vocabulary size");
  auto chars = r.bytes(v);
  std::vector<unsigned char> vocab_chars(chars.begin(), chars.end());
  const std::uint32_t layers = r.u32();
  const std::uint32_t hidden = r.u32();
  if (layers == 0 || layers > 64 || hidden == 0 || hidden > 8192) {
    detail::Reader::corrupt("bad model dimensions");
  }
  Vocab vocab;
  try {
    vocab = Vocab(std::move(vocab_chars));
  } catch (const Error&) {
    detail::Reader::corrupt("duplicate vocabulary entries");
  }
  ckpt.params = ModelParams::zeros(std::move(vocab), static_cast<int>(layers),
                                   static_cast<int>(hidden));
  for (auto t : ckpt.params.tensors()) {
    for (double& w : t) w = r.f64();
  }
  if (!r.done()) detail::Reader::corrupt("trailing bytes after weights");
  return ckpt;
}

inline void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  const std::string data = serialize_checkpoint(ckpt);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw Error(Errc::io, "cannot write " + path);
}

inline Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  return parse_checkpoint(data);
}

}  // namespace learnfuzz::charlm

#endif  // LEARNFUZZ_CHARLM_HPP_
