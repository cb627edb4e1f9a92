// Writes the benchmark inputs that can be regenerated exactly: the
// tic-tac-toe endgame table and uniformly dealt poker hands.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "prl/data.hpp"
#include "prl/errors.hpp"

namespace {

void write_tictactoe(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw prl::DataError("cannot write '" + path + "'");
  out << "top-left,top-middle,top-right,middle-left,middle-middle,middle-right,"
         "bottom-left,bottom-middle,bottom-right,class\n";
  for (const auto& board : prl::tictactoe_endgames()) {
    for (char c : board.cells) out << c << ',';
    out << (board.x_wins ? "positive" : "negative") << '\n';
  }
}

void write_poker(const std::string& path, std::size_t hands, std::uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw prl::DataError("cannot write '" + path + "'");
  prl::Rng rng(seed);
  for (std::size_t i = 0; i < hands; ++i) {
    const auto hand = prl::deal_poker_hand(rng);
    for (const auto& c : hand) out << c.suit + 1 << ',' << c.rank << ',';
    out << prl::classify_poker_hand(hand) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark data generator", "prl-datagen"};
  app.require_subcommand(1);
  std::string out_path;
  auto* ttt = app.add_subcommand("tictactoe", "All final tic-tac-toe boards (x moves first)");
  ttt->add_option("output", out_path, "Output CSV")->required();
  std::size_t hands = 25010;
  std::uint64_t seed = 0;
  auto* poker = app.add_subcommand("poker", "Uniformly dealt poker hands, raw 11-integer format");
  poker->add_option("output", out_path, "Output file")->required();
  poker->add_option("--hands", hands, "Number of hands")->capture_default_str();
  poker->add_option("--seed", seed, "Random seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  try {
    if (*ttt) write_tictactoe(out_path);
    if (*poker) write_poker(out_path, hands, seed);
  } catch (const std::exception& e) {
    std::cerr << "prl-datagen: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
