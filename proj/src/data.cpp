#include "prl/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "prl/errors.hpp"

namespace prl {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool is_missing(const std::string& cell) { return cell.empty() || cell == "?"; }

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

// Orders label strings numerically when all of them are numbers.
LabelSpace make_label_space(const std::set<std::string>& distinct) {
  std::vector<std::string> names(distinct.begin(), distinct.end());
  bool numeric = true;
  for (const auto& n : names) {
    double v;
    numeric = numeric && parse_double(n, v);
  }
  if (numeric) {
    std::stable_sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      double va = 0, vb = 0;
      parse_double(a, va);
      parse_double(b, vb);
      return va < vb;
    });
  }
  if (names.size() < 2) {
    throw DataError("dataset has " + std::to_string(names.size()) + " distinct label(s); need >= 2");
  }
  return LabelSpace(std::move(names));
}

void shuffle(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_index(i));
    std::swap(idx[i - 1], idx[j]);
  }
}

}  // namespace

std::string to_string(DataFormat format) {
  switch (format) {
    case DataFormat::Csv: return "csv";
    case DataFormat::Libsvm: return "libsvm";
    case DataFormat::Poker: return "poker";
  }
  return "?";
}

DataFormat parse_format(const std::string& text) {
  if (text == "csv") return DataFormat::Csv;
  if (text == "libsvm" || text == "svmlight") return DataFormat::Libsvm;
  if (text == "poker") return DataFormat::Poker;
  throw ConfigurationError("unknown data format '" + text + "'");
}

Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options) {
  auto in = open_input(path);
  const std::string source = path.string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw ParseError(source, lineno, "missing header");
  const auto header = split_csv_line(line);

  std::size_t label_col = header.size() - 1;
  if (!options.label_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), options.label_column);
    if (it == header.end()) {
      throw DataError(source + ": no label column '" + options.label_column + "'");
    }
    label_col = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_col) continue;
    if (std::find(options.ignore_columns.begin(), options.ignore_columns.end(), header[c]) !=
        options.ignore_columns.end()) {
      continue;
    }
    feature_cols.push_back(c);
  }
  for (const auto& name : options.ignore_columns) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw DataError(source + ": no column '" + name + "' to ignore");
    }
  }

  std::vector<std::vector<std::string>> cells;  // per kept row, features then label
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto row = split_csv_line(line);
    if (row.size() != header.size()) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(header.size()) + " cells, got " +
                           std::to_string(row.size()));
    }
    bool missing = is_missing(row[label_col]);
    std::vector<std::string> kept;
    kept.reserve(feature_cols.size() + 1);
    for (std::size_t c : feature_cols) {
      missing = missing || is_missing(row[c]);
      kept.push_back(std::move(row[c]));
    }
    if (missing) continue;
    kept.push_back(std::move(row[label_col]));
    cells.push_back(std::move(kept));
  }
  if (cells.empty()) throw DataError(source + ": no complete rows");

  Dataset data;
  data.dim = feature_cols.size();
  data.categories.resize(data.dim);
  for (std::size_t c : feature_cols) data.variable_names.push_back(header[c]);
  data.values.assign(cells.size() * data.dim, 0.0);
  for (std::size_t v = 0; v < data.dim; ++v) {
    bool numeric = true;
    for (const auto& row : cells) {
      double x;
      if (!parse_double(row[v], x)) {
        numeric = false;
        break;
      }
    }
    if (numeric) {
      for (std::size_t i = 0; i < cells.size(); ++i) parse_double(cells[i][v], data.values[i * data.dim + v]);
      continue;
    }
    std::set<std::string> distinct;
    for (const auto& row : cells) distinct.insert(row[v]);
    auto& cats = data.categories[v];
    cats.assign(distinct.begin(), distinct.end());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto pos = std::lower_bound(cats.begin(), cats.end(), cells[i][v]) - cats.begin();
      data.values[i * data.dim + v] = static_cast<double>(pos);
    }
  }

  std::set<std::string> label_names;
  for (const auto& row : cells) label_names.insert(row.back());
  data.label_space = make_label_space(label_names);
  data.labels.reserve(cells.size());
  for (const auto& row : cells) data.labels.push_back(data.label_space.find(row.back()));
  data.validate();
  return data;
}

Dataset load_libsvm(const std::filesystem::path& path, const LoadOptions& options) {
  auto in = open_input(path);
  const std::string source = path.string();
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<std::string> labels;
  std::size_t max_index = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string label;
    if (!(tokens >> label)) continue;
    double label_value;
    if (!parse_double(label, label_value)) throw ParseError(source, lineno, "bad label '" + label + "'");
    std::vector<std::pair<std::size_t, double>> entries;
    std::string tok;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw ParseError(source, lineno, "expected idx:val, got '" + tok + "'");
      std::size_t idx = 0;
      const auto idx_text = std::string_view(tok).substr(0, colon);
      const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
      double val;
      if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || idx == 0 ||
          !parse_double(std::string_view(tok).substr(colon + 1), val)) {
        throw ParseError(source, lineno, "bad entry '" + tok + "'");
      }
      if (options.dimension != 0 && idx > options.dimension) {
        throw ParseError(source, lineno,
                         "index " + std::to_string(idx) + " exceeds dimension " +
                             std::to_string(options.dimension));
      }
      max_index = std::max(max_index, idx);
      entries.emplace_back(idx - 1, val);
    }
    labels.push_back(format_short(label_value));
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw DataError(source + ": no rows");

  Dataset data;
  data.dim = options.dimension != 0 ? options.dimension : max_index;
  data.values.assign(rows.size() * data.dim, 0.0);
  data.categories.resize(data.dim);
  for (std::size_t v = 0; v < data.dim; ++v) data.variable_names.push_back("x" + std::to_string(v));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [idx, val] : rows[i]) data.values[i * data.dim + idx] = val;
  }
  data.label_space = make_label_space(std::set<std::string>(labels.begin(), labels.end()));
  for (const auto& l : labels) data.labels.push_back(data.label_space.find(l));
  data.validate();
  return data;
}

Dataset load_poker(const std::filesystem::path& path, const LoadOptions& options) {
  auto in = open_input(path);
  const std::string source = path.string();
  std::vector<Hand> hands;
  std::vector<int> classes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 11) {
      throw ParseError(source, lineno, "expected 11 integers, got " + std::to_string(cells.size()));
    }
    std::array<int, 11> v{};
    for (std::size_t c = 0; c < 11; ++c) {
      const auto& s = cells[c];
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v[c]);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(source, lineno, "bad integer '" + s + "'");
      }
    }
    Hand hand;
    for (std::size_t c = 0; c < 5; ++c) hand[c] = Card{v[2 * c + 1], v[2 * c] - 1};
    try {
      validate_hand(hand);
    } catch (const DataError& e) {
      throw ParseError(source, lineno, e.what());
    }
    if (v[10] < 0 || v[10] > 9) throw ParseError(source, lineno, "class outside 0..9");
    hands.push_back(hand);
    classes.push_back(v[10]);
  }
  if (hands.empty()) throw DataError(source + ": no hands");
  return make_poker_dataset(hands, classes, options.poker_level);
}

Dataset load(const std::filesystem::path& path, DataFormat format, const LoadOptions& options) {
  switch (format) {
    case DataFormat::Csv: return load_csv(path, options);
    case DataFormat::Libsvm: return load_libsvm(path, options);
    case DataFormat::Poker: return load_poker(path, options);
  }
  throw ConfigurationError("unknown data format");
}

void save_csv(const Dataset& data, const std::filesystem::path& path, const std::string& label_header) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  for (std::size_t v = 0; v < data.dim; ++v) {
    out << (v < data.variable_names.size() ? data.variable_names[v] : "x" + std::to_string(v)) << ',';
  }
  out << label_header << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    for (std::size_t v = 0; v < data.dim; ++v) {
      if (v < data.categories.size() && !data.categories[v].empty()) {
        out << data.categories[v].at(static_cast<std::size_t>(row[v]));
      } else {
        out << format_value(row[v]);
      }
      out << ',';
    }
    out << data.label_space.name(data.labels[i]) << '\n';
  }
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

std::vector<std::size_t> categorical_columns(const Dataset& data) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < data.categories.size(); ++v) {
    if (!data.categories[v].empty()) out.push_back(v);
  }
  return out;
}

Dataset one_hot(const Dataset& data, std::span<const std::size_t> columns) {
  std::vector<char> expand(data.dim, 0);
  for (std::size_t c : columns) {
    if (c >= data.dim) {
      throw DimensionError("one-hot column " + std::to_string(c) + " outside dimension " +
                           std::to_string(data.dim));
    }
    expand[c] = 1;
  }
  // Output layout: per source column, its observed values or itself.
  std::vector<std::vector<double>> levels(data.dim);
  std::size_t out_dim = 0;
  for (std::size_t v = 0; v < data.dim; ++v) {
    if (expand[v]) {
      std::set<double> distinct;
      for (std::size_t i = 0; i < data.rows(); ++i) distinct.insert(data.values[i * data.dim + v]);
      levels[v].assign(distinct.begin(), distinct.end());
      out_dim += levels[v].size();
    } else {
      ++out_dim;
    }
  }

  Dataset out;
  out.dim = out_dim;
  out.labels = data.labels;
  out.label_space = data.label_space;
  out.categories.resize(out_dim);
  out.values.assign(data.rows() * out_dim, 0.0);
  std::size_t o = 0;
  for (std::size_t v = 0; v < data.dim; ++v) {
    const std::string base = v < data.variable_names.size() ? data.variable_names[v] : "x" + std::to_string(v);
    const bool cat = v < data.categories.size() && !data.categories[v].empty();
    if (!expand[v]) {
      out.variable_names.push_back(base);
      if (cat) out.categories[o] = data.categories[v];
      for (std::size_t i = 0; i < data.rows(); ++i) out.values[i * out_dim + o] = data.values[i * data.dim + v];
      ++o;
      continue;
    }
    for (double level : levels[v]) {
      const std::string value_name =
          cat ? data.categories[v].at(static_cast<std::size_t>(level)) : format_short(level);
      out.variable_names.push_back(base + "=" + value_name);
      for (std::size_t i = 0; i < data.rows(); ++i) {
        out.values[i * out_dim + o] = data.values[i * data.dim + v] == level ? 1.0 : 0.0;
      }
      ++o;
    }
  }
  out.validate();
  return out;
}

PreferenceSet make_preferences(const Dataset& data) {
  PreferenceSet set;
  set.label_space = data.label_space;
  const auto m = static_cast<LabelIndex>(data.label_space.size());
  set.prefs.reserve(data.rows() * (m > 0 ? m - 1 : 0));
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (LabelIndex other = 0; other < m; ++other) {
      if (other != data.labels[i]) set.prefs.push_back({i, data.labels[i], other});
    }
  }
  return set;
}

Dataset subset(const Dataset& data, std::span<const std::size_t> indices) {
  Dataset out;
  out.dim = data.dim;
  out.label_space = data.label_space;
  out.variable_names = data.variable_names;
  out.categories = data.categories;
  out.values.reserve(indices.size() * data.dim);
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= data.rows()) throw DimensionError("subset index outside the dataset");
    const auto row = data.row(i);
    out.values.insert(out.values.end(), row.begin(), row.end());
    out.labels.push_back(data.labels[i]);
  }
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw ConfigurationError("train fraction must lie in (0, 1)");
  }
  const std::size_t n = data.rows();
  const auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.train_fraction));
  if (n_train == 0 || n_train >= n) {
    throw DataError("split of " + std::to_string(n) + " rows at fraction " +
                    format_short(spec.train_fraction) + " leaves an empty side");
  }
  Rng rng(spec.seed);
  if (!spec.stratified) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    shuffle(idx, rng);
    const std::span<const std::size_t> all(idx);
    return {subset(data, all.first(n_train)), subset(data, all.subspan(n_train))};
  }
  std::vector<std::vector<std::size_t>> by_label(data.label_space.size());
  for (std::size_t i = 0; i < n; ++i) by_label[data.labels[i]].push_back(i);
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (auto& members : by_label) {
    shuffle(members, rng);
    const auto k = static_cast<std::size_t>(
        std::llround(static_cast<double>(members.size()) * spec.train_fraction));
    train_idx.insert(train_idx.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(k));
    test_idx.insert(test_idx.end(), members.begin() + static_cast<std::ptrdiff_t>(k), members.end());
  }
  if (train_idx.empty() || test_idx.empty()) {
    throw DataError("stratified split of " + std::to_string(n) + " rows at fraction " +
                    format_short(spec.train_fraction) + " leaves an empty side");
  }
  shuffle(train_idx, rng);
  shuffle(test_idx, rng);
  return {subset(data, train_idx), subset(data, test_idx)};
}

std::vector<std::size_t> proportional_counts(const Dataset& data, std::size_t total) {
  const std::size_t n = data.rows();
  if (total > n) {
    throw DataError("cannot draw " + std::to_string(total) + " of " + std::to_string(n) + " rows");
  }
  std::vector<std::size_t> have(data.label_space.size(), 0);
  for (auto y : data.labels) ++have[y];
  // Largest remainder; ties go to the lower label.
  std::vector<std::size_t> counts(have.size());
  std::vector<std::pair<std::uint64_t, std::size_t>> rest;
  std::size_t assigned = 0;
  for (std::size_t y = 0; y < have.size(); ++y) {
    const std::uint64_t scaled = static_cast<std::uint64_t>(have[y]) * total;
    counts[y] = static_cast<std::size_t>(scaled / n);
    assigned += counts[y];
    rest.emplace_back(scaled % n, y);
  }
  std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < total; ++r, ++assigned) ++counts[rest[r].second];
  return counts;
}

Dataset subsample_by_class(const Dataset& data, std::span<const std::size_t> counts, std::uint64_t seed) {
  if (counts.size() != data.label_space.size()) {
    throw ConfigurationError("need one count per label");
  }
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> by_label(counts.size());
  for (std::size_t i = 0; i < data.rows(); ++i) by_label[data.labels[i]].push_back(i);
  std::vector<std::size_t> chosen;
  for (std::size_t y = 0; y < counts.size(); ++y) {
    if (by_label[y].size() < counts[y]) {
      throw DataError("label '" + data.label_space.name(static_cast<LabelIndex>(y)) + "' has " +
                      std::to_string(by_label[y].size()) + " instances, " +
                      std::to_string(counts[y]) + " requested");
    }
    shuffle(by_label[y], rng);
    chosen.insert(chosen.end(), by_label[y].begin(), by_label[y].begin() + static_cast<std::ptrdiff_t>(counts[y]));
  }
  shuffle(chosen, rng);
  return subset(data, chosen);
}

// ---- poker ----

void validate_hand(const Hand& hand) {
  for (std::size_t a = 0; a < hand.size(); ++a) {
    if (hand[a].rank < 1 || hand[a].rank > 13 || hand[a].suit < 0 || hand[a].suit > 3) {
      throw DataError("invalid card (rank " + std::to_string(hand[a].rank) + ", suit " +
                      std::to_string(hand[a].suit) + ")");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (hand[a] == hand[b]) throw DataError("hand repeats a card");
    }
  }
}

std::vector<double> poker_features(const Hand& hand, int level) {
  if (level < 1 || level > 3) throw ConfigurationError("poker level must be 1, 2 or 3");
  validate_hand(hand);
  std::vector<double> out(kPokerLevelDims[level], 0.0);
  for (const auto& c : hand) out[static_cast<std::size_t>(c.suit * 13 + c.rank - 1)] = 1.0;
  if (level == 1) return out;

  std::array<int, 4> suits{};
  std::array<int, 13> ranks{};
  for (const auto& c : hand) {
    ++suits[static_cast<std::size_t>(c.suit)];
    ++ranks[static_cast<std::size_t>(c.rank - 1)];
  }
  for (std::size_t s = 0; s < 4; ++s) out[52 + s] = suits[s];
  for (std::size_t r = 0; r < 13; ++r) out[56 + r] = ranks[r];
  if (level == 2) return out;

  int lo = 13, hi = 1;
  for (const auto& c : hand) {
    lo = std::min(lo, c.rank);
    hi = std::max(hi, c.rank);
  }
  out[69] = static_cast<double>(std::count_if(ranks.begin(), ranks.end(), [](int n) { return n > 0; }));
  out[70] = static_cast<double>(std::count_if(suits.begin(), suits.end(), [](int n) { return n > 0; }));
  out[71] = *std::max_element(suits.begin(), suits.end());
  out[72] = *std::max_element(ranks.begin(), ranks.end());
  out[73] = hi - lo;
  return out;
}

std::vector<std::string> poker_feature_names(int level) {
  if (level < 1 || level > 3) throw ConfigurationError("poker level must be 1, 2 or 3");
  static const char* kSuits[] = {"H", "S", "D", "C"};
  static const char* kRanks[] = {"A", "2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K"};
  std::vector<std::string> names;
  for (int s = 0; s < 4; ++s) {
    for (int r = 0; r < 13; ++r) names.push_back(std::string(kRanks[r]) + kSuits[s]);
  }
  if (level >= 2) {
    for (int s = 0; s < 4; ++s) names.push_back(std::string("#suit_") + kSuits[s]);
    for (int r = 0; r < 13; ++r) names.push_back(std::string("#rank_") + kRanks[r]);
  }
  if (level >= 3) {
    for (const char* n : {"#ranks", "#suits", "#max-suit-count", "#max-rank-count", "max-rank-diff"}) {
      names.emplace_back(n);
    }
  }
  return names;
}

int classify_poker_hand(const Hand& hand) {
  validate_hand(hand);
  std::array<int, 13> ranks{};
  bool flush = true;
  for (const auto& c : hand) {
    ++ranks[static_cast<std::size_t>(c.rank - 1)];
    flush = flush && c.suit == hand[0].suit;
  }
  std::vector<int> counts;
  for (int n : ranks) {
    if (n > 0) counts.push_back(n);
  }
  std::sort(counts.rbegin(), counts.rend());
  bool straight = false, ace_high = false;
  if (counts.size() == 5) {
    int lo = 13, hi = 1;
    for (const auto& c : hand) {
      lo = std::min(lo, c.rank);
      hi = std::max(hi, c.rank);
    }
    ace_high = ranks[0] && ranks[9] && ranks[10] && ranks[11] && ranks[12];
    straight = hi - lo == 4 || ace_high;
  }
  if (straight && flush) return ace_high ? 9 : 8;
  if (counts[0] == 4) return 7;
  if (counts[0] == 3 && counts[1] == 2) return 6;
  if (flush) return 5;
  if (straight) return 4;
  if (counts[0] == 3) return 3;
  if (counts[0] == 2 && counts[1] == 2) return 2;
  if (counts[0] == 2) return 1;
  return 0;
}

Hand deal_poker_hand(Rng& rng) {
  std::array<int, 52> deck{};
  std::iota(deck.begin(), deck.end(), 0);
  Hand hand;
  for (std::size_t k = 0; k < 5; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.uniform_index(52 - k));
    std::swap(deck[k], deck[j]);
    hand[k] = Card{deck[k] % 13 + 1, deck[k] / 13};
  }
  return hand;
}

Dataset make_poker_dataset(std::span<const Hand> hands, std::span<const int> classes, int level) {
  if (hands.size() != classes.size()) throw DimensionError("hands and classes differ in length");
  Dataset data;
  data.dim = kPokerLevelDims[level < 1 || level > 3 ? 0 : level];
  data.variable_names = poker_feature_names(level);
  data.categories.resize(data.dim);
  std::vector<std::string> names;
  for (int c = 0; c < 10; ++c) names.push_back(std::to_string(c));
  data.label_space = LabelSpace(std::move(names));
  data.values.reserve(hands.size() * data.dim);
  for (std::size_t i = 0; i < hands.size(); ++i) {
    if (classes[i] < 0 || classes[i] > 9) throw DataError("poker class outside 0..9");
    const auto f = poker_features(hands[i], level);
    data.values.insert(data.values.end(), f.begin(), f.end());
    data.labels.push_back(static_cast<LabelIndex>(classes[i]));
  }
  return data;
}

std::string to_string(PokerTarget target) {
  switch (target) {
    case PokerTarget::ThreeOfAKind: return "TOK";
    case PokerTarget::Flush: return "Flush";
    case PokerTarget::Straight: return "Straight";
  }
  return "?";
}

PokerTarget parse_poker_target(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "tok" || t == "three-of-a-kind") return PokerTarget::ThreeOfAKind;
  if (t == "flush") return PokerTarget::Flush;
  if (t == "straight") return PokerTarget::Straight;
  throw ConfigurationError("unknown poker target '" + text + "'");
}

int poker_class(PokerTarget target) {
  switch (target) {
    case PokerTarget::ThreeOfAKind: return 3;
    case PokerTarget::Flush: return 5;
    case PokerTarget::Straight: return 4;
  }
  return -1;
}

Dataset derive_binary_task(const Dataset& data, PokerTarget target) {
  if (data.label_space.size() != 10) {
    throw ConfigurationError("binary poker tasks need the 10-class poker label space");
  }
  const auto cls = data.label_space.find(std::to_string(poker_class(target)));
  if (cls >= data.label_space.size()) throw ConfigurationError("poker label space lacks the target class");
  Dataset out = data;
  out.label_space = LabelSpace({"rest", to_string(target)});
  std::size_t positives = 0;
  for (auto& y : out.labels) {
    y = y == cls ? 1 : 0;
    positives += y;
  }
  if (positives == 0 || positives == out.rows()) {
    throw DataError(to_string(target) + " task is degenerate: " + std::to_string(positives) +
                    " positives among " + std::to_string(out.rows()) + " hands");
  }
  return out;
}

// ---- tic-tac-toe ----

namespace {

constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

bool has_line(const std::array<char, 9>& cells, char who) {
  for (const auto& l : kLines) {
    if (cells[l[0]] == who && cells[l[1]] == who && cells[l[2]] == who) return true;
  }
  return false;
}

void play_out(std::array<char, 9>& cells, char to_move, std::map<std::array<char, 9>, bool>& finals) {
  const bool x_won = has_line(cells, 'x');
  const bool full = std::find(cells.begin(), cells.end(), 'b') == cells.end();
  if (x_won || has_line(cells, 'o') || full) {
    finals.emplace(cells, x_won);
    return;
  }
  for (auto& c : cells) {
    if (c != 'b') continue;
    c = to_move;
    play_out(cells, to_move == 'x' ? 'o' : 'x', finals);
    c = 'b';
  }
}

}  // namespace

std::vector<TicTacToeBoard> tictactoe_endgames() {
  std::map<std::array<char, 9>, bool> finals;
  std::array<char, 9> cells;
  cells.fill('b');
  play_out(cells, 'x', finals);
  std::vector<TicTacToeBoard> out;
  out.reserve(finals.size());
  for (const auto& [board, win] : finals) out.push_back({board, win});
  return out;
}

}  // namespace prl
