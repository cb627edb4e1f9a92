#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prl/core_types.hpp"
#include "prl/rng.hpp"

namespace prl {

enum class FeatureKind : std::uint8_t { Monomial, Rule, Bias };
enum class Relation : std::uint8_t { EQ, LE, GE };

struct MonomialTerm {
  std::uint32_t var = 0;
  std::uint32_t exponent = 1;

  auto operator<=>(const MonomialTerm&) const = default;
};

struct Condition {
  std::uint32_t var = 0;
  Relation rel = Relation::EQ;
  double threshold = 0.0;

  auto operator<=>(const Condition&) const = default;
};

// A scalar map over instances: a monomial, a conjunction of threshold
// conditions, or the always-true bias rule. Payloads are kept sorted by
// variable so equal features compare equal.
class FeatureDescriptor {
 public:
  static FeatureDescriptor monomial(std::vector<MonomialTerm> terms);
  static FeatureDescriptor rule(std::vector<Condition> conditions);
  static FeatureDescriptor bias();

  FeatureKind kind() const noexcept { return kind_; }
  const std::vector<MonomialTerm>& terms() const noexcept { return terms_; }
  const std::vector<Condition>& conditions() const noexcept { return conditions_; }

  std::uint32_t degree() const noexcept;
  // Largest referenced variable index + 1 (0 for Bias).
  std::size_t min_dimension() const noexcept;

  auto operator<=>(const FeatureDescriptor&) const = default;

 private:
  FeatureKind kind_ = FeatureKind::Bias;
  std::vector<MonomialTerm> terms_;
  std::vector<Condition> conditions_;
};

double evaluate(const FeatureDescriptor& f, std::span<const double> x);

// "x8*x17*x26", "(x0 >= 5) AND (x3 = 1)", "TRUE". Default names are x<i>.
std::string describe(const FeatureDescriptor& f);
std::string describe(const FeatureDescriptor& f, std::span<const std::string> names);

std::string to_string(Relation rel);
std::string relation_symbol(Relation rel);
// Accepts "eq", "le", "ge" (case-insensitive) and "=", "<=", ">=".
Relation parse_relation(const std::string& text);

enum class FeatureScheme : std::uint8_t { Polynomial, Rule, RawCoordinate };

std::string to_string(FeatureScheme scheme);
FeatureScheme parse_scheme(const std::string& text);

struct GeneratorConfig {
  FeatureScheme scheme = FeatureScheme::RawCoordinate;
  std::uint32_t degree = 1;
  std::vector<Relation> relations;
  bool bias_enabled = false;
  std::uint64_t seed = 0;

  // Throws ConfigurationError when degree is 0 or a Rule scheme has no relations.
  void validate() const;
  bool operator==(const GeneratorConfig&) const = default;
};

// Sorted unique training values per variable; rule thresholds come from here.
class ValueTable {
 public:
  ValueTable() = default;
  explicit ValueTable(const Dataset& data);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values(std::size_t var) const { return values_.at(var); }

 private:
  std::vector<std::vector<double>> values_;
};

class FeatureGenerator {
 public:
  // working_set_size sets the bias emission probability 1 / (B + 1).
  FeatureGenerator(GeneratorConfig config, ValueTable table, std::size_t working_set_size);

  FeatureDescriptor generate(Rng& rng) const;

  const GeneratorConfig& config() const noexcept { return config_; }
  const ValueTable& table() const noexcept { return table_; }
  double bias_probability() const noexcept { return bias_probability_; }

 private:
  FeatureDescriptor generate_monomial(Rng& rng, std::uint32_t degree) const;
  FeatureDescriptor generate_rule(Rng& rng) const;

  GeneratorConfig config_;
  ValueTable table_;
  double bias_probability_;
};

}  // namespace prl
