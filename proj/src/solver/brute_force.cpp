#include "lgame/solver.hpp"

namespace lgame {

std::string_view to_string(BruteOutcome o) {
  switch (o) {
    case BruteOutcome::VerifierWin: return "verifier-win";
    case BruteOutcome::FalsifierWin: return "falsifier-win";
    case BruteOutcome::NeitherYet: return "neither-yet";
  }
  return "?";
}

namespace {

Winner minimax(const Position& p, const FormulaTable& table, unsigned depth,
               const GameRules& rules) {
  auto legal = legal_moves(p, table, rules);
  if (auto* t = std::get_if<Terminal>(&legal)) return t->winner;
  if (depth == 0) return Winner::Neither;
  const auto& moves = std::get<std::vector<Move>>(legal);
  const Winner mine = win_for(chooser(p, moves.front().mover));
  const Winner theirs = mine == Winner::Eloise ? Winner::Abelard : Winner::Eloise;
  std::vector<Winner> values;
  values.reserve(moves.size());
  for (const auto& m : moves) {
    values.push_back(minimax(apply_move(p, m, table, rules), table, depth - 1, rules));
  }
  if (std::find(values.begin(), values.end(), mine) != values.end()) return mine;
  if (std::all_of(values.begin(), values.end(), [&](Winner w) { return w == theirs; })) {
    return theirs;
  }
  return Winner::Neither;
}

}  // namespace

BruteOutcome brute_force_enumerate(const Position& p, const FormulaTable& table, unsigned depth,
                                   const GameRules& rules) {
  const Winner w = minimax(p, table, depth, rules);
  if (w == Winner::Neither) return BruteOutcome::NeitherYet;
  return w == win_for(p.verifier) ? BruteOutcome::VerifierWin : BruteOutcome::FalsifierWin;
}

}  // namespace lgame
