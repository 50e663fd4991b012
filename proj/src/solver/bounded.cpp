#include <unordered_map>

#include "lgame/solver.hpp"

namespace lgame {

namespace {

enum class Forced : std::uint8_t { None, Eloise, Abelard };

Forced forced_for(Player p) { return p == Player::Eloise ? Forced::Eloise : Forced::Abelard; }

class DepthLimitedSearch {
 public:
  DepthLimitedSearch(const FormulaTable& table, const GameRules& rules)
      : table_(table), rules_(rules) {}

  /// Which player, if any, can force a win within `remaining` moves.
  Forced search(const Position& p, unsigned remaining) {
    auto legal = legal_moves(p, table_, rules_);
    if (auto* t = std::get_if<Terminal>(&legal)) {
      if (t->winner == Winner::Neither) return Forced::None;
      return t->winner == Winner::Eloise ? Forced::Eloise : Forced::Abelard;
    }
    if (remaining == 0) {
      cutoff_ = true;
      return Forced::None;
    }
    std::string key = canonical_key(p);
    for (int i = 0; i < 4; ++i) key.push_back(static_cast<char>((remaining >> (8 * i)) & 0xff));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const auto& moves = std::get<std::vector<Move>>(legal);
    const Player owner = chooser(p, moves.front().mover);
    bool all_lose = true;
    Forced result = Forced::None;
    for (const auto& m : moves) {
      Forced r = search(detail::apply_unchecked(p, m, table_, rules_), remaining - 1);
      if (r == forced_for(owner)) {
        result = r;
        break;
      }
      all_lose &= r == forced_for(opponent(owner));
    }
    if (result == Forced::None && all_lose) result = forced_for(opponent(owner));
    memo_.emplace(std::move(key), result);
    return result;
  }

  void reset() {
    memo_.clear();
    cutoff_ = false;
  }

  bool cutoff() const { return cutoff_; }

  Trace play(const Position& start, unsigned depth, Player winner) {
    Trace trace;
    trace.start = position_hash(start);
    Position p = start;
    unsigned remaining = depth;
    while (true) {
      auto legal = legal_moves(p, table_, rules_);
      if (auto* t = std::get_if<Terminal>(&legal)) {
        trace.terminal = *t;
        return trace;
      }
      if (remaining == 0) throw SolverError("internal error: trace outran the forced win");
      const auto& moves = std::get<std::vector<Move>>(legal);
      const Player owner = chooser(p, moves.front().mover);
      std::optional<Position> next;
      std::size_t pick = 0;
      for (; pick < moves.size(); ++pick) {
        Position child = detail::apply_unchecked(p, moves[pick], table_, rules_);
        // The loser's first option in source order; the winner's first option
        // that keeps the forced win.
        if (owner != winner || search(child, remaining - 1) == forced_for(winner)) {
          next = std::move(child);
          break;
        }
      }
      if (!next) throw SolverError("internal error: lost the forced win while tracing");
      const auto from = position_hash(p);
      p = std::move(*next);
      trace.steps.push_back({from, moves[pick], position_hash(p)});
      --remaining;
    }
  }

 private:
  const FormulaTable& table_;
  const GameRules& rules_;
  std::unordered_map<std::string, Forced> memo_;
  bool cutoff_ = false;
};

}  // namespace

Verdict solve_bounded(const Position& start, const FormulaTable& table, unsigned budget,
                      const GameRules& rules) {
  DepthLimitedSearch search(table, rules);
  Verdict v;
  for (unsigned depth = 0; depth <= budget; ++depth) {
    search.reset();
    const Forced r = search.search(start, depth);
    v.budget_used = depth;
    if (r != Forced::None) {
      const Player winner = r == Forced::Eloise ? Player::Eloise : Player::Abelard;
      v.outcome = winner == Player::Eloise ? Outcome::Verified : Outcome::Falsified;
      v.depth = depth;
      v.trace = search.play(start, depth, winner);
      return v;
    }
    // Nothing was cut off, so the whole game tree has been seen.
    if (!search.cutoff()) break;
  }
  v.outcome = Outcome::Unknown;
  return v;
}

Verdict solve_bounded(const PartialStructure& s, const Assignment& g, const Formula& phi,
                      unsigned budget, const GameRules& rules) {
  auto table = index_subformulas(phi);
  return solve_bounded(initial_position(s, g, table), table, budget, rules);
}

}  // namespace lgame
