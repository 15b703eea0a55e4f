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

#include "plink/eval/evaluate.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "plink/core/error.hpp"
#include "plink/core/io.hpp"

namespace plink::eval {

using nlohmann::json;

Prediction predict_with_nil(
    const std::string& mention_id,
    const std::vector<triage::Candidate>& candidates,
    const std::function<double(const std::string& entity_id)>& score,
    double threshold) {
  Prediction prediction;
  prediction.mention_id = mention_id;
  if (candidates.empty()) {
    prediction.predicted = corpus::kNil;
    return prediction;
  }
  std::string best_id;
  double best_score = 0.0;
  for (const auto& candidate : candidates) {
    const double s = score(candidate.entity_id);
    if (best_id.empty() || s > best_score ||
        (s == best_score && candidate.entity_id < best_id)) {
      best_id = candidate.entity_id;
      best_score = s;
    }
  }
  prediction.score = best_score;
  prediction.predicted = best_score < threshold ? corpus::kNil : best_id;
  return prediction;
}

namespace {

MetricSet score_mentions(std::span<const corpus::Mention> gold,
                         const std::map<std::string, const Prediction*>& by_id) {
  MetricSet m;
  m.n_mentions = gold.size();

  size_t correct_non_nil = 0;   // predicted == gold, both non-NIL
  size_t predicted_non_nil = 0;
  size_t gold_non_nil = 0;
  size_t mention_correct = 0;
  // nn view: gold-NIL mentions discarded entirely.
  size_t nn_correct = 0, nn_predicted_non_nil = 0;
  std::map<std::string, std::pair<size_t, size_t>> entity_tally;  // total, hit

  for (const auto& mention : gold) {
    const Prediction& p = *by_id.at(mention.id);
    const bool gold_nil = mention.is_nil();
    const bool pred_nil = p.is_nil();
    if (gold_nil) ++m.n_gold_nil;
    if (!pred_nil) ++predicted_non_nil;
    if (!gold_nil) ++gold_non_nil;

    const bool hit = !gold_nil && !pred_nil && p.predicted == mention.gold;
    if (hit) ++correct_non_nil;
    if ((gold_nil && pred_nil) || hit) ++mention_correct;

    if (!gold_nil) {
      auto& tally = entity_tally[mention.gold];
      ++tally.first;
      if (hit) ++tally.second;
      if (!pred_nil) ++nn_predicted_non_nil;
      if (hit) ++nn_correct;
    }
  }

  auto ratio = [&](size_t num, size_t den, const std::string& name) {
    if (den == 0) {
      m.zero_denominator.push_back(name);
      return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
  };
  auto harmonic = [](double p, double r) {
    return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  };

  m.precision = ratio(correct_non_nil, predicted_non_nil, "precision");
  m.recall = ratio(correct_non_nil, gold_non_nil, "recall");
  m.f1 = harmonic(m.precision, m.recall);

  const double nn_p = ratio(nn_correct, nn_predicted_non_nil, "nn_precision");
  const double nn_r = ratio(nn_correct, gold_non_nil, "nn_recall");
  m.nn_f1 = harmonic(nn_p, nn_r);

  m.mention_accuracy = ratio(mention_correct, gold.size(), "mention_accuracy");

  if (entity_tally.empty()) {
    m.zero_denominator.push_back("entity_avg_precision");
    m.entity_avg_precision = 0.0;
  } else {
    double sum = 0.0;
    for (const auto& [id, tally] : entity_tally)
      sum += static_cast<double>(tally.second) /
             static_cast<double>(tally.first);
    m.entity_avg_precision = sum / static_cast<double>(entity_tally.size());
  }
  return m;
}

std::map<std::string, const Prediction*> index_predictions(
    std::span<const corpus::Mention> gold,
    std::span<const Prediction> predictions) {
  std::map<std::string, const Prediction*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.mention_id, &p).second)
      throw ValidationError("duplicate prediction for mention " + p.mention_id);
  }
  std::vector<std::string> missing, extra;
  std::set<std::string> gold_ids;
  for (const auto& mention : gold) {
    gold_ids.insert(mention.id);
    if (!by_id.count(mention.id)) missing.push_back(mention.id);
  }
  for (const auto& [id, p] : by_id)
    if (!gold_ids.count(id)) extra.push_back(id);
  if (!missing.empty() || !extra.empty()) {
    std::ostringstream msg;
    msg << "prediction set does not cover the gold mentions;";
    if (!missing.empty()) {
      msg << " missing:";
      for (const auto& id : missing) msg << ' ' << id;
    }
    if (!extra.empty()) {
      msg << " extra:";
      for (const auto& id : extra) msg << ' ' << id;
    }
    throw ValidationError(msg.str());
  }
  return by_id;
}

}  // namespace

EvaluationReport evaluate(std::span<const corpus::Mention> gold,
                          std::span<const Prediction> predictions) {
  const auto by_id = index_predictions(gold, predictions);
  EvaluationReport report;
  report.all = score_mentions(gold, by_id);

  std::map<std::string, std::vector<corpus::Mention>> groups;
  for (const auto& mention : gold)
    groups[mention.mention_type.value_or("OTHER")].push_back(mention);
  for (const auto& [type, mentions] : groups)
    report.per_type.emplace(type, score_mentions(mentions, by_id));
  return report;
}

std::map<std::string, MetricSet> breakdown_by_type(
    std::span<const corpus::Mention> gold,
    std::span<const Prediction> predictions) {
  return evaluate(gold, predictions).per_type;
}

void save_predictions(std::span<const Prediction> predictions,
                      const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& p : predictions) {
    json obj{{"mention_id", p.mention_id}, {"predicted", p.predicted}};
    if (p.score) obj["score"] = *p.score;
    out << obj.dump() << '\n';
  }
  write_text_file(path, out.str());
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  std::vector<Prediction> out;
  for_each_line(path, [&](size_t line_number, std::string_view line) {
    try {
      const json obj = json::parse(line);
      Prediction p;
      p.mention_id = obj.at("mention_id").get<std::string>();
      p.predicted = obj.at("predicted").get<std::string>();
      if (obj.contains("score") && !obj["score"].is_null())
        p.score = obj["score"].get<double>();
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": bad prediction line: " + e.what());
    }
  });
  return out;
}

namespace {

json metric_set_to_json(const MetricSet& m) {
  return json{{"micro", m.entity_avg_precision},
              {"precision", m.precision},
              {"recall", m.recall},
              {"f1", m.f1},
              {"nn_f1", m.nn_f1},
              {"mention_accuracy", m.mention_accuracy},
              {"n_mentions", m.n_mentions},
              {"n_gold_nil", m.n_gold_nil},
              {"zero_denominator", m.zero_denominator}};
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
  json j;
  // The metric definitions are this toolkit's own reconstruction of the
  // TAC-style scorer; see the README for the exact formulas.
  j["scorer"] = "plink-scorer-v1 (local metric definitions, see README)";
  j["all"] = metric_set_to_json(report.all);
  j["per_type"] = json::object();
  for (const auto& [type, metrics] : report.per_type)
    j["per_type"][type] = metric_set_to_json(metrics);
  return j.dump(2) + "\n";
}

std::string report_to_table(const EvaluationReport& report) {
  std::ostringstream out;
  out << "# plink-scorer-v1; metric definitions are local reconstructions "
         "(see README)\n";
  out << std::left << std::setw(12) << "set" << std::right << std::setw(8)
      << "micro" << std::setw(8) << "p" << std::setw(8) << "r" << std::setw(8)
      << "F1" << std::setw(8) << "nnF1" << '\n';
  auto row = [&](const std::string& name, const MetricSet& m) {
    out << std::left << std::setw(12) << name << std::right << std::fixed
        << std::setprecision(3) << std::setw(8) << m.entity_avg_precision
        << std::setw(8) << m.precision << std::setw(8) << m.recall
        << std::setw(8) << m.f1 << std::setw(8) << m.nn_f1 << '\n';
  };
  row("all", report.all);
  for (const auto& [type, metrics] : report.per_type) row(type, metrics);
  return out.str();
}

}  // namespace plink::eval
