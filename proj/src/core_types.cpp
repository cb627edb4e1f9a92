#include "prl/core_types.hpp"

#include <cmath>
#include <unordered_set>

#include "prl/errors.hpp"
#include "prl/featgen.hpp"

namespace prl {

LabelSpace::LabelSpace(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) {
    throw ConfigurationError("label space needs at least 2 labels, got " +
                             std::to_string(names_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw ConfigurationError("duplicate label name '" + n + "'");
  }
}

LabelIndex LabelSpace::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<LabelIndex>(i);
  }
  return static_cast<LabelIndex>(names_.size());
}

void Dataset::validate() const {
  if (values.size() != rows() * dim) {
    throw DataError("dataset holds " + std::to_string(values.size()) + " values for " +
                    std::to_string(rows()) + " rows of dimension " + std::to_string(dim));
  }
  if (!variable_names.empty() && variable_names.size() != dim) {
    throw DataError("dataset has " + std::to_string(variable_names.size()) +
                    " variable names for dimension " + std::to_string(dim));
  }
  for (LabelIndex y : labels) {
    if (y >= label_space.size()) {
      throw DataError("label index " + std::to_string(y) + " outside label space of size " +
                      std::to_string(label_space.size()));
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError("dataset contains a non-finite value");
  }
}

void PreferenceSet::validate(const Dataset& data) const {
  if (prefs.empty()) throw ConfigurationError("empty preference set");
  if (!(label_space == data.label_space)) {
    throw ConfigurationError("preference set and dataset use different label spaces");
  }
  const std::size_t m = label_space.size();
  for (const auto& p : prefs) {
    if (p.instance >= data.rows()) {
      throw DimensionError("preference references instance " + std::to_string(p.instance) +
                           " of a dataset with " + std::to_string(data.rows()) + " rows");
    }
    if (p.y_plus >= m || p.y_minus >= m || p.y_plus == p.y_minus) {
      throw ConfigurationError("invalid preference label pair (" + std::to_string(p.y_plus) +
                               ", " + std::to_string(p.y_minus) + ")");
    }
  }
}

int kron_sign(const LabelSpace& space_a, const Preference& a, const LabelSpace& space_b,
              const Preference& b) {
  if (!(space_a == space_b)) {
    throw ConfigurationError("kron_sign over preferences from different label spaces");
  }
  const std::size_t m = space_a.size();
  if (a.y_plus >= m || a.y_minus >= m || b.y_plus >= m || b.y_minus >= m) {
    throw ConfigurationError("preference label outside the label space");
  }
  return kron_sign(a, b);
}

double matrix_entry(const Preference& row, const Preference& col_pref,
                    const FeatureDescriptor& col_feat, const Dataset& data) {
  if (row.instance >= data.rows() || col_pref.instance >= data.rows()) {
    throw DimensionError("preference instance outside the dataset");
  }
  if (col_feat.min_dimension() > data.dim) {
    throw DimensionError("feature references variable " +
                         std::to_string(col_feat.min_dimension() - 1) + " of a " +
                         std::to_string(data.dim) + "-dimensional dataset");
  }
  const int sign = kron_sign(row, col_pref);
  if (sign == 0) return 0.0;
  return evaluate(col_feat, data.row(row.instance)) *
         evaluate(col_feat, data.row(col_pref.instance)) * sign;
}

}  // namespace prl
