#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "prl/core_types.hpp"
#include "prl/featgen.hpp"
#include "prl/game.hpp"

namespace prl {

struct WorkingSet;

// One weighted term of the scoring function:
// score(x, y) += coefficient * phi(x) * ([y == y_plus] - [y == y_minus]).
struct ScoringAtom {
  FeatureDescriptor feature;
  LabelIndex y_plus = 0;
  LabelIndex y_minus = 1;
  double coefficient = 0.0;

  bool operator==(const ScoringAtom&) const = default;
};

struct ModelMetadata {
  GeneratorConfig generator;
  std::uint64_t seed = 0;
  std::size_t train_instances = 0;
  std::size_t dimension = 0;
  std::size_t working_set_size = 0;
  std::size_t epochs = 0;
  std::uint64_t fict_play_iterations = 0;
  // Free-form key/value pairs (e.g. preprocessing used by the CLI).
  std::vector<std::pair<std::string, std::string>> extra;

  const std::string* find_extra(const std::string& key) const;
  bool operator==(const ModelMetadata&) const = default;
};

class Model {
 public:
  Model() = default;
  Model(LabelSpace labels, std::vector<ScoringAtom> atoms, ModelMetadata metadata = {});

  const LabelSpace& label_space() const noexcept { return labels_; }
  const std::vector<ScoringAtom>& atoms() const noexcept { return atoms_; }
  const ModelMetadata& metadata() const noexcept { return metadata_; }
  ModelMetadata& metadata() noexcept { return metadata_; }

  // Same label space and metadata, only the given atoms.
  Model with_atoms(std::vector<ScoringAtom> atoms) const;

  bool operator==(const Model&) const = default;

 private:
  LabelSpace labels_;
  std::vector<ScoringAtom> atoms_;
  ModelMetadata metadata_;
};

// One atom per column with q_k > 0 and q_k * phi_k(x_{j_k}) != 0.
Model from_solution(const Strategy& q, const WorkingSet& ws, const PreferenceSet& prefs,
                    const Dataset& data);

double score(const Model& model, std::span<const double> x, LabelIndex y);
// Scores of every label.
std::vector<double> scores(const Model& model, std::span<const double> x);
// argmax_y score(x, y); ties go to the lowest label index.
LabelIndex predict(const Model& model, std::span<const double> x);
double margin_of(const Model& model, const Preference& pref, const Dataset& data);

// Versioned line-oriented text format, see README.
inline constexpr int kModelFormatVersion = 1;
void write_model(const Model& model, std::ostream& out);
Model read_model(std::istream& in, const std::string& source = "<stream>");
// Writes to a temporary sibling and renames, so a failed save leaves no file.
void save(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace prl
