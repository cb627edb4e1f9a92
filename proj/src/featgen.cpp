#include "prl/featgen.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <utility>

#include "prl/errors.hpp"

namespace prl {

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string variable_name(std::uint32_t var, std::span<const std::string> names) {
  if (names.empty()) return "x" + std::to_string(var);
  if (var >= names.size()) {
    throw DimensionError("no name for variable " + std::to_string(var));
  }
  return names[var];
}

}  // namespace

FeatureDescriptor FeatureDescriptor::monomial(std::vector<MonomialTerm> terms) {
  if (terms.empty()) throw ConfigurationError("monomial without terms");
  std::map<std::uint32_t, std::uint32_t> merged;
  for (const auto& t : terms) {
    if (t.exponent == 0) throw ConfigurationError("monomial exponent must be positive");
    merged[t.var] += t.exponent;
  }
  FeatureDescriptor f;
  f.kind_ = FeatureKind::Monomial;
  for (const auto& [var, exp] : merged) f.terms_.push_back({var, exp});
  return f;
}

FeatureDescriptor FeatureDescriptor::rule(std::vector<Condition> conditions) {
  if (conditions.empty()) throw ConfigurationError("rule without conditions");
  std::sort(conditions.begin(), conditions.end());
  for (std::size_t i = 1; i < conditions.size(); ++i) {
    if (conditions[i].var == conditions[i - 1].var && conditions[i].rel == conditions[i - 1].rel) {
      throw ConfigurationError("rule repeats relation " + to_string(conditions[i].rel) +
                               " on variable " + std::to_string(conditions[i].var));
    }
  }
  FeatureDescriptor f;
  f.kind_ = FeatureKind::Rule;
  f.conditions_ = std::move(conditions);
  return f;
}

FeatureDescriptor FeatureDescriptor::bias() { return FeatureDescriptor{}; }

std::uint32_t FeatureDescriptor::degree() const noexcept {
  switch (kind_) {
    case FeatureKind::Monomial: {
      std::uint32_t d = 0;
      for (const auto& t : terms_) d += t.exponent;
      return d;
    }
    case FeatureKind::Rule:
      return static_cast<std::uint32_t>(conditions_.size());
    case FeatureKind::Bias:
      break;
  }
  return 0;
}

std::size_t FeatureDescriptor::min_dimension() const noexcept {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max<std::size_t>(d, t.var + 1);
  for (const auto& c : conditions_) d = std::max<std::size_t>(d, c.var + 1);
  return d;
}

double evaluate(const FeatureDescriptor& f, std::span<const double> x) {
  if (f.min_dimension() > x.size()) {
    throw DimensionError("feature references variable " + std::to_string(f.min_dimension() - 1) +
                         " of a " + std::to_string(x.size()) + "-dimensional instance");
  }
  switch (f.kind()) {
    case FeatureKind::Monomial: {
      double v = 1.0;
      for (const auto& t : f.terms()) {
        for (std::uint32_t e = 0; e < t.exponent; ++e) v *= x[t.var];
      }
      return v;
    }
    case FeatureKind::Rule:
      for (const auto& c : f.conditions()) {
        const double xv = x[c.var];
        const bool holds = c.rel == Relation::EQ   ? xv == c.threshold
                           : c.rel == Relation::LE ? xv <= c.threshold
                                                   : xv >= c.threshold;
        if (!holds) return 0.0;
      }
      return 1.0;
    case FeatureKind::Bias:
      break;
  }
  return 1.0;
}

std::string describe(const FeatureDescriptor& f) { return describe(f, {}); }

std::string describe(const FeatureDescriptor& f, std::span<const std::string> names) {
  std::string out;
  switch (f.kind()) {
    case FeatureKind::Monomial:
      for (const auto& t : f.terms()) {
        if (!out.empty()) out += '*';
        out += variable_name(t.var, names);
        if (t.exponent > 1) out += "^" + std::to_string(t.exponent);
      }
      return out;
    case FeatureKind::Rule:
      for (const auto& c : f.conditions()) {
        if (!out.empty()) out += " AND ";
        out += "(" + variable_name(c.var, names) + " " + relation_symbol(c.rel) + " " +
               format_number(c.threshold) + ")";
      }
      return out;
    case FeatureKind::Bias:
      break;
  }
  return "TRUE";
}

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::EQ: return "EQ";
    case Relation::LE: return "LE";
    case Relation::GE: return "GE";
  }
  return "?";
}

std::string relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::EQ: return "=";
    case Relation::LE: return "<=";
    case Relation::GE: return ">=";
  }
  return "?";
}

Relation parse_relation(const std::string& text) {
  const std::string t = lower(text);
  if (t == "eq" || t == "=") return Relation::EQ;
  if (t == "le" || t == "<=") return Relation::LE;
  if (t == "ge" || t == ">=") return Relation::GE;
  throw ConfigurationError("unknown relation '" + text + "'");
}

std::string to_string(FeatureScheme scheme) {
  switch (scheme) {
    case FeatureScheme::Polynomial: return "poly";
    case FeatureScheme::Rule: return "rule";
    case FeatureScheme::RawCoordinate: return "raw";
  }
  return "?";
}

FeatureScheme parse_scheme(const std::string& text) {
  const std::string t = lower(text);
  if (t == "poly" || t == "polynomial") return FeatureScheme::Polynomial;
  if (t == "rule" || t == "rules") return FeatureScheme::Rule;
  if (t == "raw" || t == "linear") return FeatureScheme::RawCoordinate;
  throw ConfigurationError("unknown feature scheme '" + text + "'");
}

void GeneratorConfig::validate() const {
  if (degree == 0) throw ConfigurationError("feature degree must be at least 1");
  if (scheme == FeatureScheme::Rule && relations.empty()) {
    throw ConfigurationError("rule generation needs at least one relation");
  }
}

ValueTable::ValueTable(const Dataset& data) : values_(data.dim) {
  if (data.rows() == 0) throw DataError("value table over an empty dataset");
  for (std::size_t v = 0; v < data.dim; ++v) {
    auto& col = values_[v];
    col.reserve(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) col.push_back(data.values[i * data.dim + v]);
    std::sort(col.begin(), col.end());
    col.erase(std::unique(col.begin(), col.end()), col.end());
  }
}

FeatureGenerator::FeatureGenerator(GeneratorConfig config, ValueTable table,
                                   std::size_t working_set_size)
    : config_(std::move(config)),
      table_(std::move(table)),
      bias_probability_(1.0 / (static_cast<double>(working_set_size) + 1.0)) {
  config_.validate();
  if (table_.dim() == 0) throw ConfigurationError("feature generator over zero variables");
  std::sort(config_.relations.begin(), config_.relations.end());
  config_.relations.erase(std::unique(config_.relations.begin(), config_.relations.end()),
                          config_.relations.end());
}

FeatureDescriptor FeatureGenerator::generate(Rng& rng) const {
  if (config_.bias_enabled && rng.uniform01() < bias_probability_) {
    return FeatureDescriptor::bias();
  }
  switch (config_.scheme) {
    case FeatureScheme::Polynomial: return generate_monomial(rng, config_.degree);
    case FeatureScheme::Rule: return generate_rule(rng);
    case FeatureScheme::RawCoordinate: return generate_monomial(rng, 1);
  }
  return FeatureDescriptor::bias();
}

FeatureDescriptor FeatureGenerator::generate_monomial(Rng& rng, std::uint32_t degree) const {
  std::vector<MonomialTerm> draws;
  draws.reserve(degree);
  for (std::uint32_t k = 0; k < degree; ++k) {
    draws.push_back({static_cast<std::uint32_t>(rng.uniform_index(table_.dim())), 1});
  }
  return FeatureDescriptor::monomial(std::move(draws));
}

FeatureDescriptor FeatureGenerator::generate_rule(Rng& rng) const {
  const auto& rels = config_.relations;
  const std::uint64_t distinct_slots = table_.dim() * rels.size();
  const std::uint64_t count =
      std::min<std::uint64_t>(1 + rng.uniform_index(config_.degree), distinct_slots);
  std::set<std::pair<std::uint32_t, Relation>> used;
  std::vector<Condition> conditions;
  while (conditions.size() < count) {
    const auto var = static_cast<std::uint32_t>(rng.uniform_index(table_.dim()));
    const Relation rel = rels[rng.uniform_index(rels.size())];
    const auto values = table_.values(var);
    const double threshold = values[rng.uniform_index(values.size())];
    if (!used.insert({var, rel}).second) continue;
    conditions.push_back({var, rel, threshold});
  }
  return FeatureDescriptor::rule(std::move(conditions));
}

}  // namespace prl
