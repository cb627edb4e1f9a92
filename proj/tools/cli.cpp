#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "prl/data.hpp"
#include "prl/errors.hpp"
#include "prl/eval.hpp"
#include "prl/game.hpp"
#include "prl/model.hpp"
#include "prl/prl.hpp"

namespace prl::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PRL_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
  }
  return 0;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

// How a data file becomes a Dataset. Recorded in the model so predict,
// evaluate and report see the same preprocessing as train.
struct DataConfig {
  std::string path;
  std::string format = "csv";
  std::string label_column;
  std::vector<std::string> ignore_columns;
  std::string one_hot = "auto";  // auto | none | comma-separated column names
  int poker_level = 3;
  std::string poker_target;  // empty keeps the 10 poker classes

  void add_options(CLI::App& app, bool required) {
    auto* opt = app.add_option("--data", path, "Data file");
    if (required) opt->required();
    app.add_option("--data-format", format, "csv | libsvm | poker")->capture_default_str();
    app.add_option("--label-column", label_column, "CSV label column (default: last)");
    app.add_option("--ignore-column", ignore_columns, "CSV column to drop (repeatable)");
    app.add_option("--one-hot", one_hot, "auto | none | comma-separated columns")->capture_default_str();
    app.add_option("--poker-level", poker_level, "Poker feature level 1-3")->capture_default_str();
    app.add_option("--poker-task", poker_target, "Poker binary task: tok | flush | straight");
  }

  void record(ModelMetadata& meta) const {
    meta.extra.emplace_back("data.format", format);
    if (!label_column.empty()) meta.extra.emplace_back("data.label_column", label_column);
    if (!ignore_columns.empty()) meta.extra.emplace_back("data.ignore_columns", join(ignore_columns));
    meta.extra.emplace_back("data.one_hot", one_hot);
    if (format == "poker") {
      meta.extra.emplace_back("data.poker_level", std::to_string(poker_level));
      if (!poker_target.empty()) meta.extra.emplace_back("data.poker_task", poker_target);
    }
  }

  // Fills every option the user did not give from the model record.
  void inherit(const ModelMetadata& meta, const CLI::App& app) {
    auto take = [&](const char* flag, const char* key, auto&& assign) {
      if (app.count(flag) == 0) {
        if (const std::string* v = meta.find_extra(key)) assign(*v);
      }
    };
    take("--data-format", "data.format", [&](const std::string& v) { format = v; });
    take("--label-column", "data.label_column", [&](const std::string& v) { label_column = v; });
    take("--ignore-column", "data.ignore_columns", [&](const std::string& v) { ignore_columns = split_list(v); });
    take("--one-hot", "data.one_hot", [&](const std::string& v) { one_hot = v; });
    take("--poker-level", "data.poker_level", [&](const std::string& v) { poker_level = std::stoi(v); });
    take("--poker-task", "data.poker_task", [&](const std::string& v) { poker_target = v; });
  }

  Dataset load_dataset() const {
    LoadOptions options;
    options.label_column = label_column;
    options.ignore_columns = ignore_columns;
    options.poker_level = poker_level;
    const DataFormat fmt = parse_format(format);
    Dataset data = load(path, fmt, options);
    if (!poker_target.empty()) {
      if (fmt != DataFormat::Poker) throw UsageError("--poker-task needs --format poker");
      data = derive_binary_task(data, parse_poker_target(poker_target));
    }
    std::vector<std::size_t> cols;
    if (one_hot == "auto") {
      cols = categorical_columns(data);
    } else if (one_hot != "none") {
      for (const auto& name : split_list(one_hot)) {
        const auto it = std::find(data.variable_names.begin(), data.variable_names.end(), name);
        if (it == data.variable_names.end()) throw DataError("no column '" + name + "' to one-hot encode");
        cols.push_back(static_cast<std::size_t>(it - data.variable_names.begin()));
      }
    }
    if (!cols.empty()) data = prl::one_hot(data, cols);
    return data;
  }
};

struct TrainOptions {
  DataConfig data;
  std::string features = "raw";
  std::uint32_t degree = 1;
  std::string relations = "ge,le";
  bool bias = false;
  std::string preset = "full";
  std::size_t working_set_size = 0;
  std::size_t epochs = 0;
  std::uint64_t fict_play_iterations = 0;
  double split = 0.7;
  bool stratify = false;
  std::uint64_t seed = default_seed();
  std::string model_path;
  bool quiet = false;
};

struct ModelOptions {
  DataConfig data;
  std::string model_path;
  std::string part = "all";
  std::size_t k = 10;
  std::string format = "text";
  std::string curve;
  bool pairs = false;
};

struct GameOptions {
  std::string path;
  std::uint64_t iterations = 1000000;
  std::uint64_t seed = default_seed();
  bool exact = false;
};

void check_writable_target(const std::string& path) {
  const auto parent = std::filesystem::absolute(path).parent_path();
  if (!std::filesystem::is_directory(parent)) {
    throw UsageError("output directory '" + parent.string() + "' does not exist");
  }
}

void print_metrics(std::ostream& out, const char* name, const Model& model, const Dataset& data) {
  out << name << "_accuracy " << fixed(accuracy(model, data), 2) << '\n';
  if (data.label_space.size() == 2) {
    bool both = false;
    for (std::size_t i = 1; i < data.rows() && !both; ++i) both = data.labels[i] != data.labels[0];
    if (both) out << name << "_bacc " << fixed(balanced_accuracy(model, data), 2) << '\n';
  }
}

int run_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  check_writable_target(o.model_path);
  TrainConfig tc;
  if (o.preset == "full") {
    tc = {2000, 1000, 1000000};
  } else if (o.preset == "desk") {
    tc = {500, 100, 100000};
  } else {
    throw UsageError("unknown preset '" + o.preset + "'");
  }
  if (o.working_set_size) tc.working_set_size = o.working_set_size;
  if (o.epochs) tc.epochs = o.epochs;
  if (o.fict_play_iterations) tc.fict_play_iterations = o.fict_play_iterations;

  GeneratorConfig gc;
  gc.scheme = parse_scheme(o.features);
  gc.degree = o.degree;
  for (const auto& r : split_list(o.relations)) gc.relations.push_back(parse_relation(r));
  gc.bias_enabled = o.bias;
  gc.seed = o.seed;
  gc.validate();
  tc.validate();

  const Dataset all = o.data.load_dataset();
  const auto [train_set, test_set] = split(all, {o.split, o.seed, o.stratify});
  const PreferenceSet prefs = make_preferences(train_set);
  const FeatureGenerator gen(gc, ValueTable(train_set), tc.working_set_size);
  Rng rng(o.seed);

  auto progress = [&](const EpochRecord& r) {
    if (o.quiet) return;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "epoch %zu value %.9f support %zu replaced %zu gap %.3g\n", r.epoch, r.value,
                  r.support, r.replaced, r.duality_gap);
    err << buf;
  };
  TrainResult result = train(prefs, train_set, gen, tc, rng, progress);

  auto& meta = result.model.metadata();
  o.data.record(meta);
  meta.extra.emplace_back("split.fraction", fixed(o.split, 6));
  meta.extra.emplace_back("split.seed", std::to_string(o.seed));
  meta.extra.emplace_back("split.stratified", o.stratify ? "1" : "0");
  save(result.model, o.model_path);

  const auto& last = result.trace.epochs.back();
  out << "value " << fixed(last.value, 6) << '\n';
  out << "support " << last.support << '\n';
  out << "atoms " << result.model.atoms().size() << '\n';
  print_metrics(out, "train", result.model, train_set);
  print_metrics(out, "test", result.model, test_set);
  return kOk;
}

Dataset select_part(const Dataset& all, const Model& model, const std::string& part) {
  if (part == "all") return all;
  if (part != "train" && part != "test") throw UsageError("--part must be all, train or test");
  const std::string* frac = model.metadata().find_extra("split.fraction");
  const std::string* seed = model.metadata().find_extra("split.seed");
  if (!frac || !seed) throw UsageError("model does not record its train/test split");
  const std::string* strat = model.metadata().find_extra("split.stratified");
  auto parts = split(all, {std::stod(*frac), std::stoull(*seed), strat && *strat == "1"});
  return part == "train" ? std::move(parts.first) : std::move(parts.second);
}

int run_predict(ModelOptions& o, const CLI::App& app, std::ostream& out) {
  const Model model = load_model(o.model_path);
  o.data.inherit(model.metadata(), app);
  const Dataset data = select_part(o.data.load_dataset(), model, o.part);
  for (std::size_t i = 0; i < data.rows(); ++i) out << model.label_space().name(predict(model, data.row(i))) << '\n';
  return kOk;
}

int run_evaluate(ModelOptions& o, const CLI::App& app, std::ostream& out) {
  const Model model = load_model(o.model_path);
  o.data.inherit(model.metadata(), app);
  const Dataset data = select_part(o.data.load_dataset(), model, o.part);
  const ReportFormat fmt = parse_report_format(o.format);
  const double acc = accuracy(model, data);
  const bool binary = data.label_space.size() == 2;
  const double bacc = binary ? balanced_accuracy(model, data) : 0.0;
  if (fmt == ReportFormat::Tsv) {
    out << "metric\tvalue\n";
    out << "instances\t" << data.rows() << '\n';
    out << "accuracy\t" << fixed(acc, 4) << '\n';
    if (binary) out << "balanced_accuracy\t" << fixed(bacc, 4) << '\n';
  } else {
    out << "instances          " << data.rows() << '\n';
    out << "accuracy           " << fixed(acc, 2) << '\n';
    if (binary) out << "balanced_accuracy  " << fixed(bacc, 2) << '\n';
  }
  return kOk;
}

int run_report(ModelOptions& o, const CLI::App& app, std::ostream& out) {
  const Model model = load_model(o.model_path);
  const ReportFormat fmt = parse_report_format(o.format);
  Dataset data;
  const bool have_data = !o.data.path.empty();
  if (have_data) {
    o.data.inherit(model.metadata(), app);
    data = select_part(o.data.load_dataset(), model, o.part);
  }
  const std::vector<std::string> names = have_data ? data.variable_names : std::vector<std::string>{};
  const RuleReport report = top_rules(model, o.k, names);
  write_rule_report(report, model.label_space(), fmt, out);

  if (!o.curve.empty()) {
    if (!have_data) throw UsageError("--curve needs --data");
    std::vector<std::size_t> ks;
    for (const auto& item : split_list(o.curve)) ks.push_back(std::stoul(item));
    const auto curve = rule_subset_accuracy(model, data, ks);
    out << (fmt == ReportFormat::Tsv ? "rules\taccuracy\n" : "\nrules  accuracy\n");
    for (const auto& [k, acc] : curve) {
      out << k << (fmt == ReportFormat::Tsv ? "\t" : "      ") << fixed(acc, 2) << '\n';
    }
  }
  if (o.pairs) {
    const auto pairs = export_feature_pairs(model, o.k);
    out << (fmt == ReportFormat::Tsv ? "first\tsecond\tweight\tclass\n" : "\nfirst  second  weight        class\n");
    for (const auto& p : pairs.pairs) {
      if (fmt == ReportFormat::Tsv) {
        out << p.first << '\t' << p.second << '\t' << fixed(p.weight, 9) << '\t'
            << model.label_space().name(p.orientation) << '\n';
      } else {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%-6u %-7u %-13.9f ", p.first, p.second, p.weight);
        out << buf << model.label_space().name(p.orientation) << '\n';
      }
    }
    out << "skipped " << pairs.skipped << '\n';
  }
  return kOk;
}

GameMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::size_t rows = 0, cols = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream header(line);
    if (header >> rows) {
      if (!(header >> cols) || rows == 0 || cols == 0) throw ParseError(path, lineno, "expected 'P B' header");
      break;
    }
  }
  if (rows == 0) throw ParseError(path, lineno, "missing 'P B' header");
  GameMatrix m(rows, cols);
  std::size_t read = 0;
  while (read < rows * cols && std::getline(in, line)) {
    ++lineno;
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      if (read == rows * cols) throw ParseError(path, lineno, "more than P*B entries");
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size() || !std::isfinite(v)) {
        throw ParseError(path, lineno, "bad matrix entry '" + tok + "'");
      }
      m(read / cols, read % cols) = v;
      ++read;
    }
  }
  if (read != rows * cols) {
    throw ParseError(path, lineno, "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(read));
  }
  return m;
}

int run_solve_game(const GameOptions& o, std::ostream& out) {
  const GameMatrix m = read_matrix_file(o.path);
  GameSolution sol;
  double gap = 0.0;
  if (o.exact) {
    sol = exact_solve(m);
    gap = duality_gap(m, sol.p, sol.q);
  } else {
    Rng rng(o.seed);
    const auto fp = fict_play(m, o.iterations, rng);
    sol = fp.solution;
    gap = fp.duality_gap;
  }
  out << "V " << fixed(sol.value, 6) << '\n';
  out << "p";
  for (double w : sol.p.weights) out << ' ' << fixed(w, 6);
  out << "\nq";
  for (double w : sol.q.weights) out << ' ' << fixed(w, 6);
  out << "\ngap " << fixed(gap, 6) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Preference and rule learning with zero-sum games", "prl"};
  app.require_subcommand(1);

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "Train a model");
  train_opts.data.add_options(*train_cmd, true);
  train_cmd->add_option("--features", train_opts.features, "poly | rule | raw")->capture_default_str();
  train_cmd->add_option("--degree", train_opts.degree, "Monomial degree / max rule arity")->capture_default_str();
  train_cmd->add_option("--relations", train_opts.relations, "Rule relations: eq,le,ge")->capture_default_str();
  train_cmd->add_flag("--bias", train_opts.bias, "Allow the always-true rule");
  train_cmd->add_option("--preset", train_opts.preset, "full (B=2000,T=1000,Te=1e6) | desk (B=500,T=100,Te=1e5)")
      ->capture_default_str();
  train_cmd->add_option("-B,--working-set", train_opts.working_set_size, "Working set size");
  train_cmd->add_option("-T,--epochs", train_opts.epochs, "Epochs");
  train_cmd->add_option("--Te,--iterations", train_opts.fict_play_iterations, "FictPlay iterations per epoch");
  train_cmd->add_option("--split", train_opts.split, "Training fraction")->capture_default_str();
  train_cmd->add_flag("--stratify", train_opts.stratify, "Split every class separately");
  train_cmd->add_option("--seed", train_opts.seed, "Random seed (default $PRL_SEED or 0)");
  train_cmd->add_option("--model", train_opts.model_path, "Output model file")->required();
  train_cmd->add_flag("-q,--quiet", train_opts.quiet, "No per-epoch progress");

  ModelOptions model_opts;
  auto add_model_cmd = [&](const char* name, const char* desc, bool data_required) {
    auto* cmd = app.add_subcommand(name, desc);
    model_opts.data.add_options(*cmd, data_required);
    cmd->add_option("--model", model_opts.model_path, "Model file")->required();
    cmd->add_option("--part", model_opts.part, "all | train | test (the model's recorded split)")
        ->capture_default_str();
    return cmd;
  };
  auto* predict_cmd = add_model_cmd("predict", "Predict one label per instance", true);
  auto* evaluate_cmd = add_model_cmd("evaluate", "Accuracy and balanced accuracy", true);
  evaluate_cmd->add_option("--format", model_opts.format, "text | tsv")->capture_default_str();
  auto* report_cmd = add_model_cmd("report", "Top weighted rules", false);
  report_cmd->add_option("-k", model_opts.k, "Number of rules")->capture_default_str();
  report_cmd->add_option("--format", model_opts.format, "text | tsv")->capture_default_str();
  report_cmd->add_option("--curve", model_opts.curve, "Accuracy using the top-k rules, e.g. 1,2,5,10 (needs --data)");
  report_cmd->add_flag("--pairs", model_opts.pairs, "Export degree-2 monomials as variable pairs");

  GameOptions game_opts;
  auto* game_cmd = app.add_subcommand("solve-game", "Solve a matrix game file");
  game_cmd->add_option("matrix", game_opts.path, "File: 'P B' then P rows of B reals")->required();
  game_cmd->add_option("--iterations", game_opts.iterations, "FictPlay iterations")->capture_default_str();
  game_cmd->add_option("--seed", game_opts.seed, "Random seed (default $PRL_SEED or 0)");
  game_cmd->add_flag("--exact", game_opts.exact, "Support enumeration instead of FictPlay (min(P,B) <= 8)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "prl: " << e.what() << '\n';
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kUsage;
  }

  try {
    if (*train_cmd) return run_train(train_opts, out, err);
    if (*predict_cmd) return run_predict(model_opts, *predict_cmd, out);
    if (*evaluate_cmd) return run_evaluate(model_opts, *evaluate_cmd, out);
    if (*report_cmd) return run_report(model_opts, *report_cmd, out);
    if (*game_cmd) return run_solve_game(game_opts, out);
  } catch (const UsageError& e) {
    err << "prl: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigurationError& e) {
    err << "prl: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "prl: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "prl: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsage;
}

}  // namespace prl::cli
