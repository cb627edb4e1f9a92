#include "prl/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "prl/errors.hpp"

namespace prl {

double accuracy(const Model& model, const Dataset& data) {
  if (data.rows() == 0) throw DataError("accuracy over an empty dataset");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) correct += predict(model, data.row(i)) == data.labels[i];
  return 100.0 * static_cast<double>(correct) / static_cast<double>(data.rows());
}

double balanced_accuracy(const Model& model, const Dataset& data) {
  if (data.label_space.size() != 2) throw ConfigurationError("balanced accuracy needs a binary task");
  std::size_t pos = 0, neg = 0, tp = 0, tn = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const LabelIndex y = predict(model, data.row(i));
    if (data.labels[i] == 1) {
      ++pos;
      tp += y == 1;
    } else {
      ++neg;
      tn += y == 0;
    }
  }
  if (pos == 0 || neg == 0) throw DataError("balanced accuracy needs both classes present");
  return 50.0 * (static_cast<double>(tp) / static_cast<double>(pos) +
                 static_cast<double>(tn) / static_cast<double>(neg));
}

RuleReport top_rules(const Model& model, std::size_t k, std::span<const std::string> variable_names) {
  if (k == 0) throw ConfigurationError("rule report size k must be at least 1");
  std::map<std::pair<FeatureDescriptor, LabelIndex>, double> weights;
  for (const auto& a : model.atoms()) {
    const LabelIndex orientation = a.coefficient >= 0.0 ? a.y_plus : a.y_minus;
    weights[{a.feature, orientation}] += std::abs(a.coefficient);
  }
  const bool binary = model.label_space().size() == 2;
  std::vector<RuleEntry> entries;
  entries.reserve(weights.size());
  for (const auto& [key, w] : weights) {
    RuleEntry e;
    e.feature = key.first;
    e.orientation = key.second;
    e.weight = w;
    e.negative = binary && key.second == 0;
    e.rendered = describe(key.first, variable_names);
    entries.push_back(std::move(e));
  }
  // std::map iteration already orders ties by (feature, orientation).
  std::stable_sort(entries.begin(), entries.end(),
                   [](const RuleEntry& a, const RuleEntry& b) { return a.weight > b.weight; });
  RuleReport report;
  report.distinct_entries = entries.size();
  report.exhausted = k > entries.size();
  entries.resize(std::min(k, entries.size()));
  for (std::size_t r = 0; r < entries.size(); ++r) entries[r].rank = r + 1;
  report.entries = std::move(entries);
  return report;
}

Model restrict_to_rules(const Model& model, const RuleReport& report) {
  std::set<FeatureDescriptor> keep;
  for (const auto& e : report.entries) keep.insert(e.feature);
  std::vector<ScoringAtom> atoms;
  for (const auto& a : model.atoms()) {
    if (keep.count(a.feature)) atoms.push_back(a);
  }
  return model.with_atoms(std::move(atoms));
}

std::vector<std::pair<std::size_t, double>> rule_subset_accuracy(const Model& model, const Dataset& data,
                                                                 std::span<const std::size_t> k_values) {
  if (!std::is_sorted(k_values.begin(), k_values.end())) {
    throw ConfigurationError("rule counts must be sorted ascending");
  }
  std::vector<std::pair<std::size_t, double>> curve;
  for (std::size_t k : k_values) {
    const Model sub = restrict_to_rules(model, top_rules(model, k));
    curve.emplace_back(k, accuracy(sub, data));
  }
  return curve;
}

FeaturePairExport export_feature_pairs(const Model& model, std::size_t k) {
  FeaturePairExport out;
  for (const auto& e : top_rules(model, k).entries) {
    const auto& f = e.feature;
    if (f.kind() != FeatureKind::Monomial || f.degree() != 2) {
      ++out.skipped;
      continue;
    }
    const auto& t = f.terms();
    const std::uint32_t a = t.front().var;
    const std::uint32_t b = t.size() == 1 ? a : t.back().var;
    out.pairs.push_back({a, b, e.weight, e.orientation});
  }
  return out;
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "text" || text == "txt") return ReportFormat::Text;
  if (text == "tsv") return ReportFormat::Tsv;
  throw ConfigurationError("unknown report format '" + text + "'");
}

void write_rule_report(const RuleReport& report, const LabelSpace& labels, ReportFormat format,
                       std::ostream& out) {
  char buf[64];
  if (format == ReportFormat::Tsv) {
    out << "rank\tweight\tclass\tnegative\trule\n";
    for (const auto& e : report.entries) {
      std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
      out << e.rank << '\t' << buf << '\t' << labels.name(e.orientation) << '\t' << (e.negative ? 1 : 0)
          << '\t' << e.rendered << '\n';
    }
    return;
  }
  std::size_t class_width = 5;
  for (const auto& e : report.entries) class_width = std::max(class_width, labels.name(e.orientation).size());
  std::snprintf(buf, sizeof(buf), "%-5s %-12s ", "rank", "weight");
  out << buf << "class" << std::string(class_width - 5 + 2, ' ') << "rule\n";
  for (const auto& e : report.entries) {
    std::snprintf(buf, sizeof(buf), "%-5zu %-12.6f ", e.rank, e.weight);
    const std::string& cls = labels.name(e.orientation);
    out << buf << cls << std::string(class_width - cls.size() + 2, ' ') << (e.negative ? "~" : "")
        << e.rendered << '\n';
  }
  if (report.exhausted) {
    out << "(only " << report.entries.size() << " distinct rules available)\n";
  }
}

}  // namespace prl
