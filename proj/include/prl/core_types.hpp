#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace prl {

using LabelIndex = std::uint32_t;

// The finite label set. Names are display strings and must be unique.
class LabelSpace {
 public:
  LabelSpace() = default;
  explicit LabelSpace(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(LabelIndex y) const { return names_.at(y); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  // Returns size() when the name is unknown.
  LabelIndex find(const std::string& name) const;

  bool operator==(const LabelSpace&) const = default;

 private:
  std::vector<std::string> names_;
};

// Dense row-major instance matrix with one label per row.
struct Dataset {
  std::size_t dim = 0;
  std::vector<double> values;  // rows() * dim entries
  std::vector<LabelIndex> labels;
  LabelSpace label_space;
  std::vector<std::string> variable_names;
  // Category names for columns that were read as strings (empty otherwise);
  // the stored value is the index into this list.
  std::vector<std::vector<std::string>> categories;

  std::size_t rows() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
  // Throws DataError when the invariants do not hold.
  void validate() const;
};

// y_plus is preferred to y_minus for the instance.
struct Preference {
  std::size_t instance = 0;
  LabelIndex y_plus = 0;
  LabelIndex y_minus = 1;

  bool operator==(const Preference&) const = default;
};

struct PreferenceSet {
  std::vector<Preference> prefs;
  LabelSpace label_space;

  std::size_t size() const noexcept { return prefs.size(); }
  const Preference& operator[](std::size_t i) const { return prefs[i]; }
  // Throws when empty, when a label is out of range or y_plus == y_minus, or
  // when an instance index is not valid for `data`.
  void validate(const Dataset& data) const;
};

// Inner product of the label parts (e_{a+} - e_{a-}) and (e_{b+} - e_{b-}).
constexpr int kron_sign(const Preference& a, const Preference& b) noexcept {
  return (a.y_plus == b.y_plus) - (a.y_plus == b.y_minus) - (a.y_minus == b.y_plus) +
         (a.y_minus == b.y_minus);
}

// Checked variant: both preferences must live in the same label space.
int kron_sign(const LabelSpace& space_a, const Preference& a, const LabelSpace& space_b,
              const Preference& b);

class FeatureDescriptor;

// Game-matrix entry z_row[f]^T z_col[f] = phi_f(x_row) phi_f(x_col) kron_sign.
double matrix_entry(const Preference& row, const Preference& col_pref,
                    const FeatureDescriptor& col_feat, const Dataset& data);

}  // namespace prl
