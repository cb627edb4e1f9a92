#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prl/core_types.hpp"
#include "prl/model.hpp"

namespace prl {

// Percentage of instances whose prediction matches the label.
double accuracy(const Model& model, const Dataset& data);

// (TP/P + TN/N) / 2 * 100 with label 1 as the positive class.
double balanced_accuracy(const Model& model, const Dataset& data);

struct RuleEntry {
  std::size_t rank = 0;  // 1-based
  FeatureDescriptor feature;
  std::string rendered;
  // Label the feature votes for: y_plus of its atoms, or y_minus for
  // atoms with a negative coefficient.
  LabelIndex orientation = 0;
  // Sum of |coefficient| over the feature's atoms with this orientation.
  double weight = 0.0;
  // Binary tasks only: the entry favours label 0 (shown with a '~').
  bool negative = false;
};

struct RuleReport {
  std::vector<RuleEntry> entries;
  std::size_t distinct_entries = 0;
  // Fewer entries than requested were available.
  bool exhausted = false;
};

RuleReport top_rules(const Model& model, std::size_t k,
                     std::span<const std::string> variable_names = {});

// Model restricted to the atoms whose feature appears in `report`.
Model restrict_to_rules(const Model& model, const RuleReport& report);

std::vector<std::pair<std::size_t, double>> rule_subset_accuracy(
    const Model& model, const Dataset& data, std::span<const std::size_t> k_values);

struct FeaturePair {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  double weight = 0.0;
  LabelIndex orientation = 0;
};

struct FeaturePairExport {
  std::vector<FeaturePair> pairs;
  std::size_t skipped = 0;
};

// Degree-2 monomials among the top-k report entries.
FeaturePairExport export_feature_pairs(const Model& model, std::size_t k);

enum class ReportFormat { Text, Tsv };
ReportFormat parse_report_format(const std::string& text);

void write_rule_report(const RuleReport& report, const LabelSpace& labels, ReportFormat format,
                       std::ostream& out);

}  // namespace prl
