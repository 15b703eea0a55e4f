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

#ifndef PLINK_EVAL_EVALUATE_HPP_
#define PLINK_EVAL_EVALUATE_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plink/corpus/corpus.hpp"
#include "plink/triage/triage.hpp"

namespace plink::eval {

struct Prediction {
  std::string mention_id;
  std::string predicted;  // entity id or corpus::kNil
  std::optional<double> score;  // absent only for empty candidate sets

  bool is_nil() const { return predicted == corpus::kNil; }
};

// Per-metric-set tuple in the report's column order.
struct MetricSet {
  double entity_avg_precision = 0.0;  // "micro": mean per-gold-entity accuracy
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double nn_f1 = 0.0;             // gold-NIL mentions discarded first
  double mention_accuracy = 0.0;  // NIL correct iff both sides are NIL
  size_t n_mentions = 0;
  size_t n_gold_nil = 0;
  // Metrics whose denominator was zero and were reported as 0.
  std::vector<std::string> zero_denominator;
};

struct EvaluationReport {
  MetricSet all;
  std::map<std::string, MetricSet> per_type;  // untyped grouped under OTHER
};

// Scores every candidate with `score`, picks the argmax (ties by ascending
// entity id), and predicts NIL when the candidate set is empty or the best
// score is strictly below the threshold.
Prediction predict_with_nil(
    const std::string& mention_id,
    const std::vector<triage::Candidate>& candidates,
    const std::function<double(const std::string& entity_id)>& score,
    double threshold);

// TAC-style scoring.  The prediction set must cover exactly the gold mention
// ids; anything missing or extra raises an error listing the ids.  Zero
// denominators score 0 and are flagged rather than raised.
EvaluationReport evaluate(std::span<const corpus::Mention> gold,
                          std::span<const Prediction> predictions);

// The per-type section of evaluate(), exposed on its own.
std::map<std::string, MetricSet> breakdown_by_type(
    std::span<const corpus::Mention> gold,
    std::span<const Prediction> predictions);

// predictions.jsonl: {mention_id, predicted, score?}
void save_predictions(std::span<const Prediction> predictions,
                      const std::filesystem::path& path);
std::vector<Prediction> load_predictions(const std::filesystem::path& path);

// Report as JSON and as an aligned text table with the column order
// micro, p, r, F1, nn F1.
std::string report_to_json(const EvaluationReport& report);
std::string report_to_table(const EvaluationReport& report);

}  // namespace plink::eval

#endif  // PLINK_EVAL_EVALUATE_HPP_
