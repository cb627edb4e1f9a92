#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prl/core_types.hpp"
#include "prl/rng.hpp"

namespace prl {

enum class DataFormat : std::uint8_t { Csv, Libsvm, Poker };

std::string to_string(DataFormat format);
DataFormat parse_format(const std::string& text);

struct LoadOptions {
  // CSV: label column by header name; empty selects the last column.
  std::string label_column;
  // CSV: columns dropped before parsing (e.g. record ids).
  std::vector<std::string> ignore_columns;
  // libsvm: dimension to densify to; 0 uses the largest index seen.
  std::size_t dimension = 0;
  // poker: feature hierarchy level.
  int poker_level = 3;
};

// CSV cells that are empty or "?" are missing; rows containing one are
// dropped. Columns with any non-numeric cell are read as categorical codes
// (index into the sorted distinct strings). Labels are ordered numerically
// when every label parses as a number, lexicographically otherwise.
Dataset load_csv(const std::filesystem::path& path, const LoadOptions& options = {});
// Standard sparse "label idx:val ..." with 1-based indices.
Dataset load_libsvm(const std::filesystem::path& path, const LoadOptions& options = {});
// Raw poker hands: S1,C1,...,S5,C5,CLASS with suits 1-4 and ranks 1-13.
Dataset load_poker(const std::filesystem::path& path, const LoadOptions& options = {});
Dataset load(const std::filesystem::path& path, DataFormat format, const LoadOptions& options = {});

// Writes header + rows (17 significant digits; categorical cells by name).
void save_csv(const Dataset& data, const std::filesystem::path& path,
              const std::string& label_header = "class");

// Expands each listed column into one 0/1 column per observed value (values
// ascending). The expansion happens in place, so other columns keep order.
Dataset one_hot(const Dataset& data, std::span<const std::size_t> columns);
// Indices of columns read as categorical.
std::vector<std::size_t> categorical_columns(const Dataset& data);

// One preference (y > y') per instance and per label y' != y.
PreferenceSet make_preferences(const Dataset& data);

struct SplitSpec {
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  // Split every label separately so both sides keep the label proportions.
  bool stratified = false;
};

Dataset subset(const Dataset& data, std::span<const std::size_t> indices);
// Seeded shuffle, then the first round(n * fraction) rows train. Stratified
// splits apply the rounding per label.
std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

// Draws counts[y] instances of every label y without replacement, in a
// seeded order.
Dataset subsample_by_class(const Dataset& data, std::span<const std::size_t> counts,
                           std::uint64_t seed);
// Per-label counts summing to `total`, proportional to the label frequencies
// of `data` (largest remainder rounding).
std::vector<std::size_t> proportional_counts(const Dataset& data, std::size_t total);

// ---- poker ----

struct Card {
  int rank = 1;  // 1 (ace) .. 13 (king)
  int suit = 0;  // 0 .. 3

  bool operator==(const Card&) const = default;
};
using Hand = std::array<Card, 5>;

inline constexpr std::size_t kPokerLevelDims[] = {0, 52, 69, 74};

// Level 1: card indicators (suit * 13 + rank - 1). Level 2 adds suit counts
// and rank counts. Level 3 adds #distinct ranks, #distinct suits, max suit
// count, max rank count, max rank - min rank.
std::vector<double> poker_features(const Hand& hand, int level);
std::vector<std::string> poker_feature_names(int level);

// Standard 10-class hand value: 0 nothing, 1 pair, 2 two pairs, 3 three of a
// kind, 4 straight, 5 flush, 6 full house, 7 four of a kind, 8 straight
// flush, 9 royal flush. Straights include the ace-high 10-J-Q-K-A.
int classify_poker_hand(const Hand& hand);
Hand deal_poker_hand(Rng& rng);
void validate_hand(const Hand& hand);

Dataset make_poker_dataset(std::span<const Hand> hands, std::span<const int> classes, int level);

enum class PokerTarget : std::uint8_t { ThreeOfAKind, Flush, Straight };

std::string to_string(PokerTarget target);
PokerTarget parse_poker_target(const std::string& text);
int poker_class(PokerTarget target);
// Relabels a 10-class poker dataset as target (1) versus rest (0). Throws
// DataError when either side ends up empty.
Dataset derive_binary_task(const Dataset& data, PokerTarget target);

// ---- tic-tac-toe ----

struct TicTacToeBoard {
  std::array<char, 9> cells{};  // 'x', 'o' or 'b', row-major from the top left
  bool x_wins = false;
};

// Every distinct final board of games where x moves first.
std::vector<TicTacToeBoard> tictactoe_endgames();

}  // namespace prl
