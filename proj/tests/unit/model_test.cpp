#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "prl/data.hpp"
#include "prl/errors.hpp"
#include "prl/model.hpp"
#include "prl/prl.hpp"

namespace prl {
namespace {

Dataset three_labels() {
  Dataset d;
  d.dim = 2;
  d.values = {3.0, 0.5, 1.0, 2.0, 0.0, 1.0};
  d.labels = {0, 1, 2};
  d.label_space = LabelSpace({"a", "b", "c"});
  return d;
}

const FeatureDescriptor kX0 = FeatureDescriptor::monomial({{0, 1}});
const FeatureDescriptor kX1 = FeatureDescriptor::monomial({{1, 1}});

TEST(FromSolution, CoefficientIsWeightTimesFeatureValue) {
  const Dataset d = three_labels();
  const auto prefs = make_preferences(d);
  const WorkingSet ws{{{0, kX0}, {1, kX0}}};
  const Model m = from_solution(Strategy::pure(2, 0), ws, prefs, d);
  ASSERT_EQ(m.atoms().size(), 1u);
  EXPECT_EQ(m.atoms()[0].coefficient, 3.0);
  EXPECT_EQ(m.atoms()[0].y_plus, prefs[0].y_plus);
  EXPECT_EQ(m.atoms()[0].y_minus, prefs[0].y_minus);
  EXPECT_EQ(m.atoms()[0].feature, kX0);
}

TEST(FromSolution, SkipsZeroWeightAndZeroFeatureColumns) {
  const Dataset d = three_labels();
  const auto prefs = make_preferences(d);
  // Instance 2 has x0 = 0, so its column contributes nothing.
  const WorkingSet ws{{{0, kX0}, {4, kX0}, {2, kX1}}};
  const Model m = from_solution(Strategy{{0.5, 0.5, 0.0}}, ws, prefs, d);
  ASSERT_EQ(m.atoms().size(), 1u);
  EXPECT_EQ(m.atoms()[0].coefficient, 1.5);
}

TEST(FromSolution, LengthMismatchThrows) {
  const Dataset d = three_labels();
  const WorkingSet ws{{{0, kX0}}};
  EXPECT_THROW(from_solution(Strategy::uniform(2), ws, make_preferences(d), d), DimensionError);
}

TEST(Score, BiasAtom) {
  const Model m(LabelSpace({"a", "b", "c"}), {{FeatureDescriptor::bias(), 0, 1, 1.0}});
  const std::vector<double> x{0.0, 0.0};
  EXPECT_EQ(score(m, x, 0), 1.0);
  EXPECT_EQ(score(m, x, 1), -1.0);
  EXPECT_EQ(score(m, x, 2), 0.0);
  EXPECT_EQ(predict(m, x), 0u);
}

TEST(Predict, TiesGoToLowestLabel) {
  const Model empty(LabelSpace({"a", "b", "c"}), {});
  const std::vector<double> x{1.0, 1.0};
  EXPECT_EQ(predict(empty, x), 0u);
  const Model m(LabelSpace({"a", "b", "c"}), {{kX0, 2, 0, 1.0}, {kX0, 1, 0, 1.0}});
  EXPECT_EQ(predict(m, x), 1u);
}

TEST(Margin, SignFollowsOrientation) {
  Dataset d = three_labels();
  const Model m(d.label_space, {{kX1, 0, 1, 1.0}});
  // x1 of instance 0 is 0.5, score(a) = 0.5, score(b) = -0.5.
  EXPECT_DOUBLE_EQ(margin_of(m, {0, 0, 1}, d), 1.0);
  EXPECT_DOUBLE_EQ(margin_of(m, {0, 1, 0}, d), -1.0);
  d.values[1] = 1.0;
  EXPECT_DOUBLE_EQ(margin_of(m, {0, 0, 1}, d), 2.0);
  EXPECT_DOUBLE_EQ(margin_of(m, {0, 1, 0}, d), -2.0);
}

Dataset random_data(std::uint64_t seed) {
  Dataset d;
  d.dim = 4;
  d.label_space = LabelSpace({"a", "b", "c"});
  Rng rng(seed);
  for (int i = 0; i < 25; ++i) {
    for (int k = 0; k < 4; ++k) d.values.push_back(rng.uniform01() * 2.0 - 0.5);
    d.labels.push_back(static_cast<LabelIndex>(i % 3));
  }
  return d;
}

TrainResult small_run(const Dataset& d, std::uint64_t seed) {
  GeneratorConfig g;
  g.scheme = FeatureScheme::Polynomial;
  g.degree = 2;
  TrainConfig c;
  c.working_set_size = 12;
  c.epochs = 4;
  c.fict_play_iterations = 4000;
  Rng rng(seed);
  return train(make_preferences(d), d, FeatureGenerator(g, ValueTable(d), 12), c, rng);
}

TEST(Margin, AntisymmetricAndScaleInvariantPredictions) {
  const Dataset d = random_data(1);
  const Model m = small_run(d, 2).model;
  std::vector<ScoringAtom> scaled = m.atoms();
  for (auto& a : scaled) a.coefficient *= 3.7;
  const Model m2 = m.with_atoms(scaled);
  for (const auto& p : make_preferences(d).prefs) {
    EXPECT_NEAR(margin_of(m, p, d), -margin_of(m, {p.instance, p.y_minus, p.y_plus}, d), 1e-12);
  }
  for (std::size_t i = 0; i < d.rows(); ++i) EXPECT_EQ(predict(m, d.row(i)), predict(m2, d.row(i)));
}

TEST(Margin, WeightedByRowStrategyEqualsGameValue) {
  const Dataset d = random_data(3);
  const auto prefs = make_preferences(d);
  const auto r = small_run(d, 4);
  double acc = 0.0;
  for (std::size_t i = 0; i < prefs.size(); ++i) acc += r.last.solution.p[i] * margin_of(r.model, prefs[i], d);
  EXPECT_NEAR(acc, r.last.solution.value, 1e-6);
}

TEST(Serialization, RoundTripIsExact) {
  const Dataset d = random_data(5);
  Model m = small_run(d, 6).model;
  m.metadata().extra = {{"split.fraction", "0.7"}, {"note", "two words"}};
  std::vector<ScoringAtom> atoms = m.atoms();
  atoms.push_back({FeatureDescriptor::rule({{1, Relation::GE, 0.1 + 0.2}}), 2, 1, 1.0 / 3.0});
  atoms.push_back({FeatureDescriptor::bias(), 0, 2, 5e-324});
  m = m.with_atoms(atoms);

  std::stringstream s;
  write_model(m, s);
  const Model back = read_model(s);
  EXPECT_EQ(back, m);
  std::stringstream again;
  write_model(back, again);
  std::stringstream first;
  write_model(m, first);
  EXPECT_EQ(again.str(), first.str());
}

TEST(Serialization, EmptyModelRoundTrips) {
  const Model m(LabelSpace({"no", "yes"}), {});
  std::stringstream s;
  write_model(m, s);
  EXPECT_EQ(read_model(s), m);
}

TEST(Serialization, FileRoundTrip) {
  const Dataset d = random_data(7);
  const Model m = small_run(d, 8).model;
  const auto path = std::filesystem::temp_directory_path() / "prl_model_test.model";
  save(m, path);
  EXPECT_EQ(load_model(path), m);
  std::filesystem::remove(path);
}

TEST(Serialization, TruncatedFileIsAParseError) {
  const Dataset d = random_data(9);
  std::stringstream s;
  write_model(small_run(d, 10).model, s);
  const std::string text = s.str();
  for (std::size_t cut : {text.size() / 4, text.size() / 2, text.size() - 5}) {
    std::istringstream in(text.substr(0, cut));
    EXPECT_THROW(read_model(in), ParseError) << "cut at " << cut;
  }
}

TEST(Serialization, UnknownVersionIsRejected) {
  std::stringstream s;
  write_model(Model(LabelSpace({"no", "yes"}), {}), s);
  std::string text = s.str();
  const auto eol = text.find('\n');
  text.replace(0, eol, "PRLMODEL 99");
  std::istringstream in(text);
  EXPECT_THROW(read_model(in), VersionError);
}

TEST(Serialization, NotAModel) {
  std::istringstream in("hello world\n");
  EXPECT_THROW(read_model(in), ParseError);
  EXPECT_THROW(load_model("/nonexistent/prl.model"), DataError);
}

}  // namespace
}  // namespace prl
