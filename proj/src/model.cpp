#include "prl/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "prl/errors.hpp"
#include "prl/prl.hpp"

namespace prl {

const std::string* ModelMetadata::find_extra(const std::string& key) const {
  for (const auto& [k, v] : extra) {
    if (k == key) return &v;
  }
  return nullptr;
}

Model::Model(LabelSpace labels, std::vector<ScoringAtom> atoms, ModelMetadata metadata)
    : labels_(std::move(labels)), atoms_(std::move(atoms)), metadata_(std::move(metadata)) {
  for (const auto& a : atoms_) {
    if (a.y_plus >= labels_.size() || a.y_minus >= labels_.size() || a.y_plus == a.y_minus) {
      throw ConfigurationError("scoring atom with an invalid label pair");
    }
    if (!std::isfinite(a.coefficient)) throw ConfigurationError("scoring atom with a non-finite coefficient");
  }
}

Model Model::with_atoms(std::vector<ScoringAtom> atoms) const {
  return Model(labels_, std::move(atoms), metadata_);
}

Model from_solution(const Strategy& q, const WorkingSet& ws, const PreferenceSet& prefs,
                    const Dataset& data) {
  if (q.size() != ws.size()) throw DimensionError("strategy and working set differ in length");
  std::vector<ScoringAtom> atoms;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    if (!(q[k] > 0.0)) continue;
    const Column& col = ws.columns[k];
    if (col.preference >= prefs.size()) throw DimensionError("column references an unknown preference");
    const Preference& pref = prefs[col.preference];
    const double coefficient = q[k] * evaluate(col.feature, data.row(pref.instance));
    if (coefficient == 0.0) continue;
    atoms.push_back({col.feature, pref.y_plus, pref.y_minus, coefficient});
  }
  return Model(prefs.label_space, std::move(atoms));
}

double score(const Model& model, std::span<const double> x, LabelIndex y) {
  double acc = 0.0;
  for (const auto& a : model.atoms()) {
    if (a.y_plus == y) {
      acc += a.coefficient * evaluate(a.feature, x);
    } else if (a.y_minus == y) {
      acc -= a.coefficient * evaluate(a.feature, x);
    }
  }
  return acc;
}

std::vector<double> scores(const Model& model, std::span<const double> x) {
  std::vector<double> s(model.label_space().size(), 0.0);
  for (const auto& a : model.atoms()) {
    const double phi = evaluate(a.feature, x);
    s[a.y_plus] += a.coefficient * phi;
    s[a.y_minus] -= a.coefficient * phi;
  }
  return s;
}

LabelIndex predict(const Model& model, std::span<const double> x) {
  const auto s = scores(model, x);
  LabelIndex best = 0;
  for (LabelIndex y = 1; y < s.size(); ++y) {
    if (s[y] > s[best]) best = y;
  }
  return best;
}

double margin_of(const Model& model, const Preference& pref, const Dataset& data) {
  if (pref.instance >= data.rows()) throw DimensionError("preference instance outside the dataset");
  const auto x = data.row(pref.instance);
  return score(model, x, pref.y_plus) - score(model, x, pref.y_minus);
}

// ---- persistence ----

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next line; throws on end of input.
  std::string next(const char* expecting) {
    std::string line;
    if (!std::getline(in_, line)) fail(std::string("unexpected end of file, expected ") + expecting);
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_ + 1, what); }
  [[noreturn]] void fail_here(const std::string& what) const { throw ParseError(source_, line_, what); }

  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

template <typename T>
T read_token(std::istringstream& tokens, LineReader& reader, const char* what) {
  std::string tok;
  if (!(tokens >> tok)) reader.fail_here(std::string("missing ") + what);
  if constexpr (std::is_same_v<T, double>) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) reader.fail_here(std::string("bad ") + what + " '" + tok + "'");
    return v;
  } else if constexpr (std::is_same_v<T, std::string>) {
    return tok;
  } else {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok.front() == '-') reader.fail_here(std::string("bad ") + what + " '" + tok + "'");
    return static_cast<T>(v);
  }
}

std::string keyed_value(LineReader& reader, const std::string& line, const std::string& key) {
  if (line.rfind(key + " ", 0) != 0) reader.fail_here("expected '" + key + "'");
  return line.substr(key.size() + 1);
}

}  // namespace

void write_model(const Model& model, std::ostream& out) {
  const auto& meta = model.metadata();
  out << "PRLMODEL " << kModelFormatVersion << '\n';
  out << "labels " << model.label_space().size() << '\n';
  for (const auto& name : model.label_space().names()) out << name << '\n';
  out << "meta scheme " << to_string(meta.generator.scheme) << '\n';
  out << "meta degree " << meta.generator.degree << '\n';
  out << "meta relations";
  if (meta.generator.relations.empty()) out << " -";
  for (Relation r : meta.generator.relations) out << ' ' << to_string(r);
  out << '\n';
  out << "meta bias " << (meta.generator.bias_enabled ? 1 : 0) << '\n';
  out << "meta seed " << meta.seed << '\n';
  out << "meta train_instances " << meta.train_instances << '\n';
  out << "meta dimension " << meta.dimension << '\n';
  out << "meta working_set_size " << meta.working_set_size << '\n';
  out << "meta epochs " << meta.epochs << '\n';
  out << "meta fict_play_iterations " << meta.fict_play_iterations << '\n';
  out << "extras " << meta.extra.size() << '\n';
  for (const auto& [k, v] : meta.extra) out << k << ' ' << v << '\n';
  out << "atoms " << model.atoms().size() << '\n';
  for (const auto& a : model.atoms()) {
    const auto& f = a.feature;
    switch (f.kind()) {
      case FeatureKind::Monomial:
        out << "MONO " << f.terms().size();
        for (const auto& t : f.terms()) out << ' ' << t.var << ' ' << t.exponent;
        break;
      case FeatureKind::Rule:
        out << "RULE " << f.conditions().size();
        for (const auto& c : f.conditions()) out << ' ' << c.var << ' ' << to_string(c.rel) << ' ' << fmt17(c.threshold);
        break;
      case FeatureKind::Bias:
        out << "BIAS";
        break;
    }
    out << ' ' << a.y_plus << ' ' << a.y_minus << ' ' << fmt17(a.coefficient) << '\n';
  }
  out << "end\n";
}

Model read_model(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  {
    std::istringstream header(reader.next("header"));
    std::string magic;
    int version = 0;
    if (!(header >> magic) || magic != "PRLMODEL") reader.fail_here("not a PRL model file");
    if (!(header >> version)) reader.fail_here("missing format version");
    if (version != kModelFormatVersion) {
      throw VersionError(source + ": model format version " + std::to_string(version) +
                         " is not supported (expected " + std::to_string(kModelFormatVersion) + ")");
    }
  }

  std::vector<std::string> names;
  {
    std::istringstream tokens(keyed_value(reader, reader.next("labels"), "labels"));
    const auto m = read_token<std::size_t>(tokens, reader, "label count");
    for (std::size_t i = 0; i < m; ++i) names.push_back(reader.next("label name"));
  }
  LabelSpace labels;
  try {
    labels = LabelSpace(names);
  } catch (const ConfigurationError& e) {
    reader.fail_here(e.what());
  }

  ModelMetadata meta;
  auto meta_line = [&](const char* key) {
    return keyed_value(reader, reader.next(key), std::string("meta ") + key);
  };
  try {
    meta.generator.scheme = parse_scheme(meta_line("scheme"));
  } catch (const ConfigurationError& e) {
    reader.fail_here(e.what());
  }
  {
    std::istringstream t(meta_line("degree"));
    meta.generator.degree = read_token<std::uint32_t>(t, reader, "degree");
  }
  {
    std::istringstream t(meta_line("relations"));
    std::string tok;
    while (t >> tok) {
      if (tok == "-") continue;
      try {
        meta.generator.relations.push_back(parse_relation(tok));
      } catch (const ConfigurationError& e) {
        reader.fail_here(e.what());
      }
    }
  }
  {
    std::istringstream t(meta_line("bias"));
    meta.generator.bias_enabled = read_token<int>(t, reader, "bias flag") != 0;
  }
  {
    std::istringstream t(meta_line("seed"));
    meta.seed = read_token<std::uint64_t>(t, reader, "seed");
    meta.generator.seed = meta.seed;
  }
  {
    std::istringstream t(meta_line("train_instances"));
    meta.train_instances = read_token<std::size_t>(t, reader, "train_instances");
  }
  {
    std::istringstream t(meta_line("dimension"));
    meta.dimension = read_token<std::size_t>(t, reader, "dimension");
  }
  {
    std::istringstream t(meta_line("working_set_size"));
    meta.working_set_size = read_token<std::size_t>(t, reader, "working_set_size");
  }
  {
    std::istringstream t(meta_line("epochs"));
    meta.epochs = read_token<std::size_t>(t, reader, "epochs");
  }
  {
    std::istringstream t(meta_line("fict_play_iterations"));
    meta.fict_play_iterations = read_token<std::uint64_t>(t, reader, "fict_play_iterations");
  }
  {
    std::istringstream t(keyed_value(reader, reader.next("extras"), "extras"));
    const auto n = read_token<std::size_t>(t, reader, "extras count");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string line = reader.next("extra entry");
      const auto sp = line.find(' ');
      if (sp == std::string::npos || sp == 0) reader.fail_here("malformed extra entry");
      meta.extra.emplace_back(line.substr(0, sp), line.substr(sp + 1));
    }
  }

  std::vector<ScoringAtom> atoms;
  {
    std::istringstream t(keyed_value(reader, reader.next("atoms"), "atoms"));
    const auto n = read_token<std::size_t>(t, reader, "atom count");
    atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::istringstream tokens(reader.next("atom"));
      const auto kind = read_token<std::string>(tokens, reader, "atom kind");
      ScoringAtom atom;
      try {
        if (kind == "MONO") {
          const auto count = read_token<std::size_t>(tokens, reader, "term count");
          std::vector<MonomialTerm> terms;
          for (std::size_t c = 0; c < count; ++c) {
            const auto var = read_token<std::uint32_t>(tokens, reader, "variable");
            const auto exp = read_token<std::uint32_t>(tokens, reader, "exponent");
            terms.push_back({var, exp});
          }
          atom.feature = FeatureDescriptor::monomial(std::move(terms));
        } else if (kind == "RULE") {
          const auto count = read_token<std::size_t>(tokens, reader, "condition count");
          std::vector<Condition> conds;
          for (std::size_t c = 0; c < count; ++c) {
            const auto var = read_token<std::uint32_t>(tokens, reader, "variable");
            const Relation rel = parse_relation(read_token<std::string>(tokens, reader, "relation"));
            const double thr = read_token<double>(tokens, reader, "threshold");
            conds.push_back({var, rel, thr});
          }
          atom.feature = FeatureDescriptor::rule(std::move(conds));
        } else if (kind == "BIAS") {
          atom.feature = FeatureDescriptor::bias();
        } else {
          reader.fail_here("unknown atom kind '" + kind + "'");
        }
      } catch (const ConfigurationError& e) {
        reader.fail_here(e.what());
      }
      atom.y_plus = read_token<LabelIndex>(tokens, reader, "y_plus");
      atom.y_minus = read_token<LabelIndex>(tokens, reader, "y_minus");
      atom.coefficient = read_token<double>(tokens, reader, "coefficient");
      std::string extra;
      if (tokens >> extra) reader.fail_here("trailing token '" + extra + "'");
      if (atom.y_plus >= labels.size() || atom.y_minus >= labels.size() || atom.y_plus == atom.y_minus) {
        reader.fail_here("atom label pair outside the label space");
      }
      if (!std::isfinite(atom.coefficient)) reader.fail_here("non-finite coefficient");
      atoms.push_back(std::move(atom));
    }
  }
  if (reader.next("end") != "end") reader.fail_here("expected 'end'");
  return Model(std::move(labels), std::move(atoms), std::move(meta));
}

void save(const Model& model, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    write_model(model, out);
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw DataError("failed writing '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model '" + path.string() + "'");
  return read_model(in, path.string());
}

}  // namespace prl
