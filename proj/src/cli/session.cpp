#include <algorithm>
#include <tuple>

#include "lgame/cli.hpp"

namespace lgame::cli {

Session::Session(const Problem& problem, Player human, RunConfig config)
    : table_(std::make_shared<const FormulaTable>(index_subformulas(problem.formula))),
      human_(human),
      config_(config) {
  check_game_formula(problem.formula);
  start_ = initial_position(problem.structure, problem.assignment, *table_);
  position_ = start_;
}

std::optional<Terminal> Session::terminal() const {
  auto legal = legal_moves(position_, *table_, config_.rules);
  if (auto* t = std::get_if<Terminal>(&legal)) return *t;
  return std::nullopt;
}

std::vector<Move> Session::moves() const {
  auto legal = legal_moves(position_, *table_, config_.rules);
  if (auto* m = std::get_if<std::vector<Move>>(&legal)) return std::move(*m);
  return {};
}

std::optional<Player> Session::to_move() const {
  auto m = moves();
  if (m.empty()) return std::nullopt;
  if (m.front().mover == Mover::Forced) return human_;
  return chooser(position_, m.front().mover);
}

const Session::Step& Session::play(std::size_t choice) {
  auto m = moves();
  if (m.empty()) throw IllegalMove("the play has already ended");
  if (choice >= m.size()) {
    throw IllegalMove("choice " + std::to_string(choice) + " is out of range (" +
                      std::to_string(m.size()) + " moves available)");
  }
  const Move& move = m[choice];
  Position next = detail::apply_unchecked(position_, move, *table_, config_.rules);
  history_.push_back(Step{choice, chooser(position_, move.mover), move,
                          describe_move(position_, move, *table_), position_hash(position_),
                          position_hash(next)});
  position_ = std::move(next);
  return history_.back();
}

std::vector<Session::Step> Session::engine_turns(std::size_t limit) {
  std::vector<Step> out;
  while (limit-- > 0 && to_move() == opponent(human_)) out.push_back(play(best_choice()));
  return out;
}

std::size_t Session::best_choice() const {
  auto m = moves();
  if (m.size() <= 1) return 0;
  const Player me = chooser(position_, m.front().mover);
  // (class, tiebreak): 0 = forced win, 1 = open, 2 = forced loss.
  std::optional<std::tuple<int, long, std::size_t>> best;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Position child = detail::apply_unchecked(position_, m[i], *table_, config_.rules);
    const Verdict v = run_solver(child, *table_, config_);
    int cls = 1;
    long tiebreak = 0;
    if (v.outcome == Outcome::Verified || v.outcome == Outcome::Falsified) {
      const bool mine = (v.outcome == Outcome::Verified) == (me == Player::Eloise);
      cls = mine ? 0 : 2;
      const long d = static_cast<long>(v.depth.value_or(0));
      tiebreak = mine ? d : -d;
    }
    std::tuple<int, long, std::size_t> key{cls, tiebreak, i};
    if (!best || key < *best) best = key;
  }
  return std::get<2>(*best);
}

Session::Hint Session::hint(unsigned budget) const {
  Hint h{solve_bounded(position_, *table_, budget, config_.rules), std::nullopt};
  auto m = moves();
  if (m.empty()) return h;
  if (m.size() == 1) {
    h.choice = 0;
    return h;
  }
  if (h.verdict.trace && !h.verdict.trace->steps.empty()) {
    const Player me = chooser(position_, m.front().mover);
    const bool mine = (h.verdict.outcome == Outcome::Verified) == (me == Player::Eloise);
    if (mine) {
      const Move& first = h.verdict.trace->steps.front().move;
      h.choice = static_cast<std::size_t>(std::find(m.begin(), m.end(), first) - m.begin());
    }
  }
  return h;
}

Json step_json(const Session::Step& s) {
  return {{"choice", s.choice},
          {"player", to_string(s.player)},
          {"mover", to_string(s.move.mover)},
          {"description", s.description},
          {"from", hash_hex(s.from)},
          {"to", hash_hex(s.to)}};
}

Json session_json(const std::string& id, const Session& s) {
  Json history = Json::array();
  for (const auto& step : s.history()) history.push_back(step_json(step));
  auto to_move = s.to_move();
  return {{"id", id},
          {"humanRole", to_string(s.human())},
          {"position", position_json(s.position(), s.table(), s.config().rules)},
          {"choices", choices_json(s.position(), s.table(), s.config().rules)},
          {"toMove", to_move ? Json(to_string(*to_move)) : Json(nullptr)},
          {"history", std::move(history)}};
}

}  // namespace lgame::cli
