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

#ifndef PLINK_RANKER_TRAINER_HPP_
#define PLINK_RANKER_TRAINER_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plink/core/error.hpp"
#include "plink/core/kernels.hpp"
#include "plink/core/rng.hpp"
#include "plink/ranker/model.hpp"

namespace plink::ranker {

// Max-margin loss against the best-scoring negative:
// max(0, margin - (pos - max(negs))).
template <typename T>
double hinge_loss(T pos_score, const std::vector<T>& neg_scores, double margin) {
  if (neg_scores.empty())
    throw ValidationError("hinge loss needs at least one negative score");
  const double best_neg = static_cast<double>(
      *std::max_element(neg_scores.begin(), neg_scores.end()));
  return std::max(0.0, margin - (static_cast<double>(pos_score) - best_neg));
}

// n ids != gold drawn uniformly without replacement from the candidate set,
// topped up from the whole KB when the candidates run out.  Throws when the
// KB has no entity besides the gold one.
std::vector<std::string> sample_negatives(
    const std::vector<std::string>& candidate_ids, const std::string& gold_id,
    size_t n, const kb::KnowledgeBase& kb, Rng& rng);

// Cosine between the mention string and entity name representations; the
// training-free baseline.  Throws on zero vectors.
template <typename T>
double nn_baseline_score(const encoder::Bundle<T>& bundle) {
  auto norm_sq = [](const std::vector<T>& v) {
    double s = 0.0;
    for (T x : v) s += static_cast<double>(x) * static_cast<double>(x);
    return s;
  };
  if (norm_sq(bundle.m_s) == 0.0 || norm_sq(bundle.e_s) == 0.0)
    throw ValidationError("nn baseline: zero representation vector");
  return kernels::cosine(bundle.m_s.data(), bundle.e_s.data(),
                         bundle.m_s.size());
}

// One training mention: the gold pair plus its sampled negative pairs.
// `label` is the language index (0 = source) used by the classifier terms.
template <typename T>
struct TrainExample {
  encoder::Bundle<T> pos;
  std::vector<encoder::Bundle<T>> negs;
  int label = 0;
  std::string mention_id;
};

template <typename T>
struct BatchStats {
  double hinge = 0.0;  // mean hinge loss over the batch
  double cls = 0.0;    // mean raw classifier MSE (0 without a classifier)
};

namespace detail {

template <typename T>
std::vector<T> one_hot2(int index) {
  return index == 0 ? std::vector<T>{T(1), T(0)} : std::vector<T>{T(0), T(1)};
}

}  // namespace detail

// Forward/backward/update over one batch.  The loss per mention is
//   hinge + lambda * (MSE(p_M, y) + MSE(p_E, y))
// with p_M, p_E the classifier outputs on the h_s0 representations of the
// mention string and the gold entity name; the batch gradient is the mean.
// The update touches every parameter except h_adv, whose gradients the
// classifier terms flow *through* but never into.
template <typename T>
BatchStats<T> run_batch(RankerModel<T>& model,
                        std::span<const TrainExample<T>> batch, double lambda,
                        Rng& rng, RankerModel<T>& grads) {
  const RankerConfig& cfg = model.config;
  const bool classify = model.h_adv.has_value();
  if (lambda > 0.0 && !classify)
    throw ValidationError("lambda > 0 requires the language classifier head");

  zero_grads(grads);
  BatchStats<T> stats;
  const double inv_batch = 1.0 / static_cast<double>(batch.size());

  for (const TrainExample<T>& example : batch) {
    if (example.negs.empty())
      throw ValidationError("training example without negatives: " +
                            example.mention_id);

    PairTrace<T> pos_trace;
    const T pos =
        forward_pair(model, example.pos, true, &rng, &pos_trace);

    std::vector<PairTrace<T>> neg_traces(example.negs.size());
    std::vector<T> neg_scores(example.negs.size());
    for (size_t i = 0; i < example.negs.size(); ++i)
      neg_scores[i] =
          forward_pair(model, example.negs[i], true, &rng, &neg_traces[i]);

    const size_t best = static_cast<size_t>(
        std::max_element(neg_scores.begin(), neg_scores.end()) -
        neg_scores.begin());
    const double hinge =
        std::max(0.0, cfg.margin - (static_cast<double>(pos) -
                                    static_cast<double>(neg_scores[best])));
    stats.hinge += hinge * inv_batch;
    if (!std::isfinite(hinge))
      throw Error("non-finite hinge loss on mention " + example.mention_id);

    if (hinge > 0.0) {
      backward_pair(model, pos_trace, static_cast<T>(-inv_batch), &grads);
      backward_pair(model, neg_traces[best], static_cast<T>(inv_batch),
                    &grads);
    }

    if (classify) {
      const auto label = detail::one_hot2<T>(example.label);
      ClassifierTrace<T> m_trace, e_trace;
      const auto p_m = classifier_forward(model, pos_trace.ms_rep, &m_trace);
      const auto p_e = classifier_forward(model, pos_trace.es_rep, &e_trace);
      const double mse = classifier_mse(p_m, label) + classifier_mse(p_e, label);
      stats.cls += mse * inv_batch;
      if (!std::isfinite(mse))
        throw Error("non-finite classifier loss on mention " +
                    example.mention_id);
      if (lambda > 0.0) {
        const T scale = static_cast<T>(lambda * inv_batch);
        // h_adv stays frozen here: gradients pass through it into h_s0.
        auto dm = classifier_backward<T>(model, m_trace, label, scale, nullptr);
        auto de = classifier_backward<T>(model, e_trace, label, scale, nullptr);
        backward_invariant(model, pos_trace.ms_pre, pos_trace.ms_raw, dm,
                           &grads);
        backward_invariant(model, pos_trace.es_pre, pos_trace.es_raw, de,
                           &grads);
      }
    }
  }

  sgd_step(model, grads, cfg.learning_rate,
           [](const ParamRef<T>& p) { return !is_classifier_param(p); });
  return stats;
}

// One pass over the data in order, batched by config.batch_size.
// Returns the mean hinge loss over all examples.
template <typename T>
double train_epoch(RankerModel<T>& model,
                   std::span<const TrainExample<T>> data, Rng& rng,
                   double lambda = 0.0, double* cls_loss_out = nullptr) {
  if (data.empty()) throw ValidationError("train_epoch: empty dataset");
  RankerModel<T> grads = zeros_like(model);
  double hinge_sum = 0.0, cls_sum = 0.0;
  size_t done = 0;
  while (done < data.size()) {
    const size_t take = std::min(model.config.batch_size, data.size() - done);
    auto stats = run_batch<T>(model, data.subspan(done, take), lambda, rng, grads);
    hinge_sum += stats.hinge * static_cast<double>(take);
    cls_sum += stats.cls * static_cast<double>(take);
    done += take;
  }
  if (cls_loss_out) *cls_loss_out = cls_sum / static_cast<double>(data.size());
  return hinge_sum / static_cast<double>(data.size());
}

}  // namespace plink::ranker

#endif  // PLINK_RANKER_TRAINER_HPP_
