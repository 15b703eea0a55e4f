// Copyright 2026 The plink authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PLINK_RANKER_MODEL_HPP_
#define PLINK_RANKER_MODEL_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "plink/core/error.hpp"
#include "plink/core/kernels.hpp"
#include "plink/core/rng.hpp"
#include "plink/encoder/represent.hpp"
#include "plink/ranker/config.hpp"

// The pointwise ranker: two towers over the string pair (m_s, e_s) and the
// context pair (m_c, e_c), a scoring head over their concatenation (plus the
// popularity scalar under +P), tanh output.  The optional shared invariant
// layer h_s0 rewrites m_s and e_s before the string tower, and the optional
// language classifier h_adv reads the h_s0 outputs.  Everything is templated
// on the scalar so the float production model and the double gradient-check
// instantiation share one implementation.

namespace plink::ranker {

template <typename T>
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<T> data;  // row-major

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, T(0)) {}
};

template <typename T>
struct Linear {
  Matrix<T> w;
  std::vector<T> b;

  Linear() = default;
  Linear(size_t out, size_t in) : w(out, in), b(out, T(0)) {}
  size_t out_dim() const { return w.rows; }
  size_t in_dim() const { return w.cols; }
};

template <typename T>
struct Mlp {
  std::vector<Linear<T>> layers;
  bool linear_output = false;  // last layer skips relu/dropout (scoring head)
  bool use_dropout = true;
};

template <typename T>
struct RankerModel {
  RankerConfig config;
  std::optional<Linear<T>> h_s0;  // shared invariant layer, rectified
  Mlp<T> string_mlp;
  Mlp<T> context_mlp;
  Mlp<T> final_mlp;
  std::optional<Mlp<T>> h_adv;  // d -> adv_hidden -> 2 logits

  size_t string_out() const { return string_mlp.layers.back().out_dim(); }
  size_t context_out() const { return context_mlp.layers.back().out_dim(); }
};

// --- parameter table ------------------------------------------------------

template <typename T>
struct ParamRef {
  std::string name;
  T* data;
  size_t size;
};

namespace detail {

template <typename T>
void add_linear_params(const std::string& prefix, Linear<T>& linear,
                       std::vector<ParamRef<T>>& out) {
  out.push_back({prefix + ".w", linear.w.data.data(), linear.w.data.size()});
  out.push_back({prefix + ".b", linear.b.data(), linear.b.size()});
}

template <typename T>
void add_mlp_params(const std::string& prefix, Mlp<T>& mlp,
                    std::vector<ParamRef<T>>& out) {
  for (size_t i = 0; i < mlp.layers.size(); ++i)
    add_linear_params(prefix + "." + std::to_string(i), mlp.layers[i], out);
}

}  // namespace detail

// Flat parameter list in checkpoint order.  The order is part of the
// checkpoint format: h_s0, string tower, context tower, final head, h_adv.
template <typename T>
std::vector<ParamRef<T>> param_table(RankerModel<T>& model) {
  std::vector<ParamRef<T>> out;
  if (model.h_s0) detail::add_linear_params("h_s0", *model.h_s0, out);
  detail::add_mlp_params("string_mlp", model.string_mlp, out);
  detail::add_mlp_params("context_mlp", model.context_mlp, out);
  detail::add_mlp_params("final_mlp", model.final_mlp, out);
  if (model.h_adv) detail::add_mlp_params("h_adv", *model.h_adv, out);
  return out;
}

// Read-only view of the same table.
template <typename T>
std::vector<ParamRef<const T>> param_table(const RankerModel<T>& model) {
  auto table = param_table(const_cast<RankerModel<T>&>(model));
  std::vector<ParamRef<const T>> out;
  out.reserve(table.size());
  for (const auto& p : table) out.push_back({p.name, p.data, p.size});
  return out;
}

template <typename T>
bool is_classifier_param(const ParamRef<T>& p) {
  return p.name.rfind("h_adv", 0) == 0;
}

// Zero-filled structural copy used as a gradient accumulator.
template <typename T>
RankerModel<T> zeros_like(const RankerModel<T>& model) {
  RankerModel<T> z = model;
  auto table = param_table(z);
  for (auto& p : table)
    for (size_t i = 0; i < p.size; ++i) p.data[i] = T(0);
  return z;
}

// --- construction ---------------------------------------------------------

namespace detail {

template <typename T>
void init_linear(Linear<T>& linear, Rng& rng, bool output_layer = false) {
  // Symmetric uniform scaled by fan-in; rectified layers carry the usual
  // gain so activations keep their variance through depth, while linear
  // output layers start near zero - scores then open in the responsive
  // band of tanh instead of its tails.  Biases start at zero.
  const double limit =
      output_layer ? 1.0 / static_cast<double>(linear.in_dim())
                   : std::sqrt(6.0 / static_cast<double>(linear.in_dim()));
  for (auto& w : linear.w.data)
    w = static_cast<T>(rng.uniform(-limit, limit));
}

template <typename T>
Mlp<T> make_mlp(size_t input, const std::vector<size_t>& widths,
                bool linear_output, bool use_dropout) {
  Mlp<T> mlp;
  mlp.linear_output = linear_output;
  mlp.use_dropout = use_dropout;
  size_t in = input;
  for (size_t w : widths) {
    mlp.layers.emplace_back(w, in);
    in = w;
  }
  return mlp;
}

}  // namespace detail

template <typename T>
RankerModel<T> init_model(const RankerConfig& config, uint64_t seed) {
  config.validate();
  RankerModel<T> model;
  model.config = config;
  const size_t d = config.dim;

  if (config.invariant_layer) model.h_s0 = Linear<T>(d, d);
  model.string_mlp =
      detail::make_mlp<T>(2 * d, config.string_layers, false, true);
  model.context_mlp =
      detail::make_mlp<T>(2 * d, config.context_layers, false, true);
  std::vector<size_t> head = config.final_layers;
  head.push_back(1);
  const size_t head_in = model.string_out() + model.context_out() +
                         (config.use_popularity ? 1 : 0);
  model.final_mlp = detail::make_mlp<T>(head_in, head, true, true);
  if (config.adv_hidden > 0) {
    if (!config.invariant_layer)
      throw ValidationError("language classifier requires the invariant layer");
    std::vector<size_t> adv{config.adv_hidden, 2};
    model.h_adv = detail::make_mlp<T>(d, adv, true, false);
  }

  // Weights are drawn in checkpoint order so a seed fixes every bit.
  Rng rng(seed);
  auto init_mlp = [&rng](Mlp<T>& mlp) {
    for (size_t i = 0; i < mlp.layers.size(); ++i)
      detail::init_linear(mlp.layers[i], rng,
                          mlp.linear_output && i + 1 == mlp.layers.size());
  };
  if (model.h_s0) detail::init_linear(*model.h_s0, rng);
  init_mlp(model.string_mlp);
  init_mlp(model.context_mlp);
  init_mlp(model.final_mlp);
  if (model.h_adv) init_mlp(*model.h_adv);
  return model;
}

// --- forward --------------------------------------------------------------

template <typename T>
struct MlpTrace {
  std::vector<std::vector<T>> inputs;  // input to each layer
  std::vector<std::vector<T>> preact;  // W x + b
  std::vector<std::vector<T>> mask;    // dropout scale per hidden unit
  std::vector<T> out;
};

namespace detail {

template <typename T>
std::vector<T> mlp_forward(const Mlp<T>& mlp, std::vector<T> x, bool train,
                           double dropout, Rng* rng, MlpTrace<T>* trace) {
  const bool drop = train && mlp.use_dropout && dropout > 0.0;
  if (drop && rng == nullptr)
    throw ValidationError("training forward pass needs an rng for dropout");
  for (size_t i = 0; i < mlp.layers.size(); ++i) {
    const Linear<T>& layer = mlp.layers[i];
    if (x.size() != layer.in_dim())
      throw ValidationError("mlp layer input dim mismatch: got " +
                            std::to_string(x.size()) + ", want " +
                            std::to_string(layer.in_dim()));
    std::vector<T> pre(layer.out_dim());
    kernels::affine(layer.w.data.data(), layer.b.data(), x.data(), pre.data(),
                    layer.out_dim(), layer.in_dim());
    if (trace) trace->inputs.push_back(std::move(x));
    const bool is_output = mlp.linear_output && i + 1 == mlp.layers.size();
    std::vector<T> h = pre;
    if (!is_output) {
      kernels::relu(h.data(), h.size());
      if (drop) {
        std::vector<T> mask(h.size());
        const T keep_scale = static_cast<T>(1.0 / (1.0 - dropout));
        for (size_t j = 0; j < h.size(); ++j) {
          mask[j] = rng->uniform() < dropout ? T(0) : keep_scale;
          h[j] *= mask[j];
        }
        if (trace) trace->mask.push_back(std::move(mask));
      } else if (trace) {
        trace->mask.emplace_back();
      }
    } else if (trace) {
      trace->mask.emplace_back();
    }
    if (trace) trace->preact.push_back(std::move(pre));
    x = std::move(h);
  }
  if (trace) trace->out = x;
  return x;
}

// Accumulates parameter gradients into `grads` (when non-null) and returns
// the gradient with respect to the input.
template <typename T>
std::vector<T> mlp_backward(const Mlp<T>& mlp, const MlpTrace<T>& trace,
                            std::vector<T> dout, Mlp<T>* grads) {
  for (size_t i = mlp.layers.size(); i-- > 0;) {
    const Linear<T>& layer = mlp.layers[i];
    const bool is_output = mlp.linear_output && i + 1 == mlp.layers.size();
    std::vector<T> dpre(layer.out_dim());
    if (is_output) {
      dpre = std::move(dout);
    } else {
      if (!trace.mask[i].empty())
        for (size_t j = 0; j < dout.size(); ++j) dout[j] *= trace.mask[i][j];
      kernels::relu_backward(trace.preact[i].data(), dout.data(), dpre.data(),
                             dpre.size());
    }
    if (grads) {
      Linear<T>& g = grads->layers[i];
      kernels::affine_acc_grad_params(g.w.data.data(), g.b.data(), dpre.data(),
                                      trace.inputs[i].data(), layer.out_dim(),
                                      layer.in_dim());
    }
    std::vector<T> dx(layer.in_dim());
    kernels::affine_grad_input(layer.w.data.data(), dpre.data(), dx.data(),
                               layer.out_dim(), layer.in_dim());
    dout = std::move(dx);
  }
  return dout;
}

template <typename T>
std::vector<T> concat(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

template <typename T>
struct PairTrace {
  std::vector<T> ms_raw, es_raw;  // inputs to h_s0 (empty when disabled)
  std::vector<T> ms_pre, es_pre;  // h_s0 preactivations
  std::vector<T> ms_rep, es_rep;  // string-tower inputs (post h_s0)
  MlpTrace<T> string_trace, context_trace, final_trace;
  T score = T(0);
};

// Applies h_s0 (affine + relu) to one vector, recording the preactivation.
template <typename T>
std::vector<T> invariant_forward(const RankerModel<T>& model,
                                 const std::vector<T>& x,
                                 std::vector<T>* pre_out) {
  const Linear<T>& layer = *model.h_s0;
  std::vector<T> pre(layer.out_dim());
  kernels::affine(layer.w.data.data(), layer.b.data(), x.data(), pre.data(),
                  layer.out_dim(), layer.in_dim());
  if (pre_out) *pre_out = pre;
  kernels::relu(pre.data(), pre.size());
  return pre;
}

template <typename T>
T forward_pair(const RankerModel<T>& model, const encoder::Bundle<T>& bundle,
               bool train, Rng* rng, PairTrace<T>* trace) {
  const RankerConfig& cfg = model.config;
  if (bundle.m_s.size() != cfg.dim || bundle.e_s.size() != cfg.dim ||
      bundle.m_c.size() != cfg.dim || bundle.e_c.size() != cfg.dim)
    throw ValidationError("bundle dimension does not match model config");

  std::vector<T> ms = bundle.m_s, es = bundle.e_s;
  if (model.h_s0) {
    if (trace) {
      trace->ms_raw = bundle.m_s;
      trace->es_raw = bundle.e_s;
    }
    ms = invariant_forward(model, bundle.m_s, trace ? &trace->ms_pre : nullptr);
    es = invariant_forward(model, bundle.e_s, trace ? &trace->es_pre : nullptr);
  }
  if (trace) {
    trace->ms_rep = ms;
    trace->es_rep = es;
  }

  auto r_s = detail::mlp_forward(model.string_mlp, detail::concat(ms, es),
                                 train, cfg.dropout, rng,
                                 trace ? &trace->string_trace : nullptr);
  auto r_c = detail::mlp_forward(
      model.context_mlp, detail::concat(bundle.m_c, bundle.e_c), train,
      cfg.dropout, rng, trace ? &trace->context_trace : nullptr);

  std::vector<T> head_in = detail::concat(r_s, r_c);
  if (cfg.use_popularity) head_in.push_back(bundle.popularity);
  auto out = detail::mlp_forward(model.final_mlp, std::move(head_in), train,
                                 cfg.dropout, rng,
                                 trace ? &trace->final_trace : nullptr);
  const T score = static_cast<T>(std::tanh(static_cast<double>(out[0])));
  if (trace) trace->score = score;
  return score;
}

// Evaluation-mode score (no dropout), strictly inside (-1, 1).
template <typename T>
T forward_score(const RankerModel<T>& model, const encoder::Bundle<T>& bundle) {
  return forward_pair<T>(model, bundle, false, nullptr, nullptr);
}

// Gradient of one h_s0 application given dL/d(relu output).
template <typename T>
void backward_invariant(const RankerModel<T>& model,
                        const std::vector<T>& pre, const std::vector<T>& raw,
                        const std::vector<T>& dout, RankerModel<T>* grads) {
  (void)model;
  std::vector<T> dpre(dout.size());
  kernels::relu_backward(pre.data(), dout.data(), dpre.data(), dpre.size());
  Linear<T>& g = *grads->h_s0;
  kernels::affine_acc_grad_params(g.w.data.data(), g.b.data(), dpre.data(),
                                  raw.data(), g.out_dim(), g.in_dim());
}

// Backpropagates dL/dscore through one scored pair, accumulating parameter
// gradients.  h_s0 gradients receive contributions from both the m and e
// applications (the layer is weight-tied by construction).
template <typename T>
void backward_pair(const RankerModel<T>& model, const PairTrace<T>& trace,
                   T dscore, RankerModel<T>* grads) {
  const T dpre_tanh = dscore * (T(1) - trace.score * trace.score);
  std::vector<T> dhead =
      detail::mlp_backward(model.final_mlp, trace.final_trace,
                           std::vector<T>{dpre_tanh}, &grads->final_mlp);

  const size_t s_out = model.string_out();
  const size_t c_out = model.context_out();
  std::vector<T> dr_s(dhead.begin(),
                      dhead.begin() + static_cast<ptrdiff_t>(s_out));
  std::vector<T> dr_c(dhead.begin() + static_cast<ptrdiff_t>(s_out),
                      dhead.begin() + static_cast<ptrdiff_t>(s_out + c_out));
  // The popularity input, if present, is data, not a parameter.

  std::vector<T> dstring_in = detail::mlp_backward(
      model.string_mlp, trace.string_trace, std::move(dr_s),
      &grads->string_mlp);
  detail::mlp_backward(model.context_mlp, trace.context_trace, std::move(dr_c),
                       &grads->context_mlp);

  if (model.h_s0) {
    const size_t d = model.config.dim;
    std::vector<T> dms(dstring_in.begin(),
                       dstring_in.begin() + static_cast<ptrdiff_t>(d));
    std::vector<T> des(dstring_in.begin() + static_cast<ptrdiff_t>(d),
                       dstring_in.end());
    backward_invariant(model, trace.ms_pre, trace.ms_raw, dms, grads);
    backward_invariant(model, trace.es_pre, trace.es_raw, des, grads);
  }
}

// --- language classifier head ---------------------------------------------

template <typename T>
struct ClassifierTrace {
  MlpTrace<T> mlp_trace;
  std::vector<T> probs;  // softmax over the 2 logits
};

template <typename T>
std::vector<T> softmax2(const std::vector<T>& logits) {
  const T m = std::max(logits[0], logits[1]);
  const double e0 = std::exp(static_cast<double>(logits[0] - m));
  const double e1 = std::exp(static_cast<double>(logits[1] - m));
  const double z = e0 + e1;
  return {static_cast<T>(e0 / z), static_cast<T>(e1 / z)};
}

// p = softmax(h_adv(rep)); rep is an h_s0 output.
template <typename T>
std::vector<T> classifier_forward(const RankerModel<T>& model,
                                  const std::vector<T>& rep,
                                  ClassifierTrace<T>* trace) {
  auto logits = detail::mlp_forward(*model.h_adv, rep, false, 0.0, nullptr,
                                    trace ? &trace->mlp_trace : nullptr);
  auto probs = softmax2(logits);
  if (trace) trace->probs = probs;
  return probs;
}

// MSE(p, y) over the two components, with y one-hot.
template <typename T>
double classifier_mse(const std::vector<T>& probs, const std::vector<T>& label) {
  const double d0 = static_cast<double>(probs[0] - label[0]);
  const double d1 = static_cast<double>(probs[1] - label[1]);
  return (d0 * d0 + d1 * d1) / 2.0;
}

// Backward of scale * MSE(softmax(logits), label) to the classifier input.
// Accumulates h_adv parameter gradients only when `adv_grads` is non-null,
// so the main pass can flow gradients through a frozen classifier.
template <typename T>
std::vector<T> classifier_backward(const RankerModel<T>& model,
                                   const ClassifierTrace<T>& trace,
                                   const std::vector<T>& label, T scale,
                                   Mlp<T>* adv_grads) {
  const std::vector<T>& p = trace.probs;
  // dL/dp_i = (p_i - y_i); through softmax: dz_j = p_j (g_j - sum_i g_i p_i).
  std::vector<T> g{(p[0] - label[0]), (p[1] - label[1])};
  const T inner = g[0] * p[0] + g[1] * p[1];
  std::vector<T> dz{scale * p[0] * (g[0] - inner),
                    scale * p[1] * (g[1] - inner)};
  return detail::mlp_backward(*model.h_adv, trace.mlp_trace, std::move(dz),
                              adv_grads);
}

// --- parameter update -----------------------------------------------------

// p -= lr * g for every parameter selected by `include`.
template <typename T, typename Pred>
void sgd_step(RankerModel<T>& model, RankerModel<T>& grads, double lr,
              Pred include) {
  auto params = param_table(model);
  auto gparams = param_table(grads);
  for (size_t i = 0; i < params.size(); ++i) {
    if (!include(params[i])) continue;
    const T step = static_cast<T>(lr);
    for (size_t j = 0; j < params[i].size; ++j)
      params[i].data[j] -= step * gparams[i].data[j];
  }
}

template <typename T>
void zero_grads(RankerModel<T>& grads) {
  for (auto& p : param_table(grads))
    for (size_t j = 0; j < p.size; ++j) p.data[j] = T(0);
}

}  // namespace plink::ranker

#endif  // PLINK_RANKER_MODEL_HPP_
