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

#ifndef PLINK_ADVERSARIAL_ADVERSARIAL_HPP_
#define PLINK_ADVERSARIAL_ADVERSARIAL_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plink/core/error.hpp"
#include "plink/core/rng.hpp"
#include "plink/ranker/trainer.hpp"

// Language-invariance training.  Each epoch runs two passes over the model:
// an adversarial pass that updates only the language classifier h_adv toward
// the *reversed* language labels of unlabeled text, and a main pass that
// updates everything except h_adv, adding the lambda-weighted classifier
// loss under the *correct* labels to the ranking loss.  The push-pull drives
// the shared layer h_s0 toward representations the classifier cannot
// separate by language.

namespace plink::adversarial {

enum class AdvTextKind { kName, kDescription };

struct AdversarialConfig {
  double lambda = 0.25;  // classifier-loss weight in the main pass
  size_t y = 5;          // unlabeled samples per language per adversarial pass
  // Epoch count after which the adversarial pass stops (unset = never).
  std::optional<size_t> adv_stop_epoch;
  // Trailing epochs trained on the linking loss alone (the +EL schedule).
  size_t el_only_epochs = 0;
  size_t classifier_hidden = 256;
  std::vector<std::string> languages;  // exactly two: source, target
  AdvTextKind adv_text_kind = AdvTextKind::kName;
  // Learning rate of the h_adv update in the adversarial pass.  The pass
  // sees only 2y samples at a time, so the classifier usually needs a much
  // larger step than the ranker to stay a live opponent.  Unset: the
  // ranker's learning rate.
  std::optional<double> adv_learning_rate;
  // How often the adversarial pass runs within an epoch: 0 keeps a single
  // pass ahead of the main pass (one block per epoch); a positive value k
  // also reruns it before every k-th main batch, keeping the classifier
  // current against the moving shared layer.
  size_t adv_interval_batches = 0;
  // Swaps which pass sees reversed labels (the classic adversary layout).
  // Off by default: the adversarial pass uses reversed labels.
  bool classic_assignment = false;

  void validate() const {
    if (lambda < 0.0) throw ValidationError("adversarial: lambda must be >= 0");
    if (y < 1) throw ValidationError("adversarial: y must be >= 1");
    if (languages.size() != 2)
      throw ValidationError("adversarial: exactly two languages required");
    if (classifier_hidden < 1)
      throw ValidationError("adversarial: classifier hidden width must be >= 1");
  }
};

// Shipped presets reflecting the two tuned settings.
AdversarialConfig tac_adv_preset(std::string source, std::string target);
AdversarialConfig wiki_adv_preset(std::string source, std::string target);

// Raw text per language for the adversarial pass (entity names or
// description prefixes).  Both languages must be non-empty before any
// adversarial step runs.
struct UnlabeledPool {
  std::vector<std::string> texts[2];  // indexed by language position

  void require_populated() const {
    if (texts[0].empty() || texts[1].empty())
      throw ValidationError("unlabeled pool: both languages need text");
  }
};

// pool file: JSONL {language, text}.  Languages outside `languages` fail.
UnlabeledPool load_pool(const std::filesystem::path& path,
                        const std::vector<std::string>& languages);

// Represents one pool item the way m_s is built: standalone encoding pooled
// over at most subword_limit subwords.  Name text is short; description text
// gets clipped to the first subword_limit subwords.
std::vector<float> encode_pool_text(const encoder::EncoderAdapter& enc,
                                    const std::string& text);

// MSE over the two components of a softmax output against a one-hot label.
// The output must lie on the 2-simplex within 1e-6.
template <typename T>
double language_mse_loss(const std::vector<T>& output,
                         const std::vector<T>& label) {
  if (output.size() != 2 || label.size() != 2)
    throw ValidationError("language_mse_loss: expected 2-vectors");
  const double sum = static_cast<double>(output[0]) + static_cast<double>(output[1]);
  if (std::abs(sum - 1.0) > 1e-6)
    throw ValidationError("language_mse_loss: output is not on the simplex");
  const double d0 = static_cast<double>(output[0]) - static_cast<double>(label[0]);
  const double d1 = static_cast<double>(output[1]) - static_cast<double>(label[1]);
  return (d0 * d0 + d1 * d1) / 2.0;
}

// For two languages, reversing a one-hot label is swapping its components.
template <typename T>
std::vector<T> reversed_label(const std::vector<T>& label) {
  return {label[1], label[0]};
}

// Supplies the representation of one unlabeled pool item: language position
// and item index to a d-vector, built the same way as m_s.
template <typename T>
using PoolEncodeFn = std::function<std::vector<T>(int language, size_t item)>;

// The adversarial pass: draw y items per language, score them through
// h_adv(h_s0(t)), accumulate MSE against the reversed labels, and update
// only h_adv.  Returns the mean MSE over the 2y samples.
template <typename T>
double adversarial_step(ranker::RankerModel<T>& model,
                        const AdversarialConfig& config,
                        const UnlabeledPool& pool,
                        const PoolEncodeFn<T>& encode_item, Rng& rng) {
  config.validate();
  pool.require_populated();
  if (!model.h_s0 || !model.h_adv)
    throw ValidationError("adversarial step needs h_s0 and h_adv");

  ranker::RankerModel<T> grads = ranker::zeros_like(model);
  double loss_sum = 0.0;
  const size_t total = 2 * config.y;
  const T scale = static_cast<T>(1.0 / static_cast<double>(total));

  for (int language = 0; language < 2; ++language) {
    const auto correct = ranker::detail::one_hot2<T>(language);
    const auto target_label =
        config.classic_assignment ? correct : reversed_label(correct);
    for (size_t draw = 0; draw < config.y; ++draw) {
      const size_t item = static_cast<size_t>(
          rng.below(pool.texts[language].size()));
      const std::vector<T> rep = encode_item(language, item);
      std::vector<T> pre;
      const std::vector<T> shared = ranker::invariant_forward(model, rep, &pre);
      ranker::ClassifierTrace<T> trace;
      const auto probs = ranker::classifier_forward(model, shared, &trace);
      loss_sum += language_mse_loss(probs, target_label);
      // Parameter gradients stop at h_adv: h_s0 is frozen in this pass.
      ranker::classifier_backward(model, trace, target_label, scale,
                                  &*grads.h_adv);
    }
  }

  const double lr = config.adv_learning_rate.value_or(model.config.learning_rate);
  ranker::sgd_step(model, grads, lr,
                   [](const auto& p) { return ranker::is_classifier_param(p); });
  return loss_sum / static_cast<double>(total);
}

// The main pass over one batch: ranking loss plus lambda-weighted classifier
// loss under correct labels; updates everything except h_adv.
template <typename T>
ranker::BatchStats<T> main_step(ranker::RankerModel<T>& model,
                                std::span<const ranker::TrainExample<T>> batch,
                                const AdversarialConfig& config, Rng& rng,
                                ranker::RankerModel<T>& grads) {
  const double lambda = config.lambda;
  return ranker::run_batch<T>(model, batch, lambda, rng, grads);
}

struct EpochRecord {
  size_t epoch = 0;          // 1-based
  double el_loss = 0.0;      // mean hinge loss
  double cls_loss = 0.0;     // mean raw classifier MSE (unweighted)
  std::optional<double> adv_loss;  // present only when the pass ran
};

using History = std::vector<EpochRecord>;

// Serializes per-epoch records as JSONL {epoch, el_loss, adv_loss?, cls_loss}.
void save_history(const History& history, const std::filesystem::path& path);

// Builds the epoch's training examples (negative sampling happens here, so
// negatives are redrawn every epoch from the same seeded stream).
template <typename T>
using ExampleProvider =
    std::function<std::vector<ranker::TrainExample<T>>(size_t epoch, Rng& rng)>;

// Full schedule: per epoch one adversarial pass (until adv_stop_epoch, when
// set) followed by the main pass over all batches; then el_only_epochs more
// epochs of pure linking loss.  Deterministic for a fixed rng seed.  The
// adversarial pass draws from a forked stream so the main-pass sampling
// (negatives, dropout) is identical between a run and its lambda = 0
// ablation - paired comparisons differ only by the adversarial updates.
template <typename T>
History train_with_adversary(ranker::RankerModel<T>& model,
                             const AdversarialConfig& config,
                             const ExampleProvider<T>& provide,
                             const UnlabeledPool& pool,
                             const PoolEncodeFn<T>& encode_item, Rng& rng) {
  config.validate();
  History history;
  ranker::RankerModel<T> grads = ranker::zeros_like(model);
  const size_t epochs = model.config.epochs;
  Rng adversary_rng = rng.fork(0xadfULL);

  for (size_t epoch = 1; epoch <= epochs + config.el_only_epochs; ++epoch) {
    EpochRecord record;
    record.epoch = epoch;
    const bool el_only = epoch > epochs;
    const bool adversary_active =
        !el_only &&
        (!config.adv_stop_epoch || epoch <= *config.adv_stop_epoch);

    double adv_sum = 0.0;
    size_t adv_blocks = 0;
    if (adversary_active) {
      adv_sum +=
          adversarial_step(model, config, pool, encode_item, adversary_rng);
      ++adv_blocks;
    }

    const auto examples = provide(epoch, rng);
    if (examples.empty()) throw ValidationError("empty training epoch");
    const double lambda = el_only ? 0.0 : config.lambda;
    double hinge_sum = 0.0, cls_sum = 0.0;
    size_t done = 0, batch_index = 0;
    while (done < examples.size()) {
      if (adversary_active && config.adv_interval_batches > 0 &&
          batch_index > 0 && batch_index % config.adv_interval_batches == 0) {
        adv_sum += adversarial_step(model, config, pool, encode_item,
                                    adversary_rng);
        ++adv_blocks;
      }
      const size_t take =
          std::min(model.config.batch_size, examples.size() - done);
      auto stats = ranker::run_batch<T>(
          model, std::span<const ranker::TrainExample<T>>(examples).subspan(done, take),
          lambda, rng, grads);
      hinge_sum += stats.hinge * static_cast<double>(take);
      cls_sum += stats.cls * static_cast<double>(take);
      done += take;
      ++batch_index;
    }
    if (adv_blocks > 0)
      record.adv_loss = adv_sum / static_cast<double>(adv_blocks);
    record.el_loss = hinge_sum / static_cast<double>(examples.size());
    record.cls_loss = cls_sum / static_cast<double>(examples.size());
    history.push_back(record);
  }
  return history;
}

}  // namespace plink::adversarial

#endif  // PLINK_ADVERSARIAL_ADVERSARIAL_HPP_
