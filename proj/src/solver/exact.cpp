#include <deque>
#include <unordered_map>

#include "lgame/solver.hpp"

namespace lgame {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "verified";
    case Outcome::Falsified: return "falsified";
    case Outcome::IndeterminateProven: return "indeterminate";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

const Trace& extract_trace(const Verdict& v) {
  if ((v.outcome != Outcome::Verified && v.outcome != Outcome::Falsified) || !v.trace) {
    throw NoWitness("no winning play exists for a " + std::string(to_string(v.outcome)) +
                    " verdict");
  }
  return *v.trace;
}

namespace {

constexpr std::uint32_t kUnranked = static_cast<std::uint32_t>(-1);

struct Vertex {
  Position position;
  std::optional<Winner> terminal;
  Player owner = Player::Eloise;
  std::vector<Move> moves;
  std::vector<std::uint32_t> successors;  // parallel to moves
};

class GameGraph {
 public:
  GameGraph(const FormulaTable& table, const GameRules& rules, const ExactLimits& limits)
      : table_(table), rules_(rules), limits_(limits) {}

  void explore(const Position& start) {
    intern(start);
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      auto legal = legal_moves(vertices_[v].position, table_, rules_);
      if (auto* t = std::get_if<Terminal>(&legal)) {
        vertices_[v].terminal = t->winner;
        continue;
      }
      auto moves = std::get<std::vector<Move>>(std::move(legal));
      vertices_[v].owner = chooser(vertices_[v].position, moves.front().mover);
      std::vector<std::uint32_t> succ;
      succ.reserve(moves.size());
      for (const auto& m : moves) {
        succ.push_back(intern(detail::apply_unchecked(vertices_[v].position, m, table_, rules_)));
      }
      vertices_[v].moves = std::move(moves);
      vertices_[v].successors = std::move(succ);
    }
  }

  /// Attractor ranks for `player`: 0 at its winning terminals, kUnranked
  /// outside the attractor.
  std::vector<std::uint32_t> attractor(Player player) const {
    const std::size_t n = vertices_.size();
    std::vector<std::vector<std::uint32_t>> preds(n);
    std::vector<std::uint32_t> pending(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      auto succ = vertices_[v].successors;
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      pending[v] = static_cast<std::uint32_t>(succ.size());
      for (auto w : succ) preds[w].push_back(v);
    }
    std::vector<std::uint32_t> rank(n, kUnranked);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (vertices_[v].terminal == win_for(player)) {
        rank[v] = 0;
        queue.push_back(v);
      }
    }
    // FIFO order keeps ranks non-decreasing, so the rank assigned when a
    // vertex is attracted is its exact forcing distance.
    while (!queue.empty()) {
      const auto w = queue.front();
      queue.pop_front();
      for (auto v : preds[w]) {
        if (rank[v] != kUnranked) continue;
        if (vertices_[v].owner == player || --pending[v] == 0) {
          rank[v] = rank[w] + 1;
          queue.push_back(v);
        }
      }
    }
    return rank;
  }

  Trace strategy_play(Player winner, const std::vector<std::uint32_t>& rank) const {
    Trace trace;
    std::uint32_t v = 0;
    trace.start = position_hash(vertices_[v].position);
    while (!vertices_[v].terminal) {
      const auto& vx = vertices_[v];
      std::size_t pick = 0;
      if (vx.owner == winner) {
        // First move, in source order, that makes progress.
        while (rank[vx.successors[pick]] + 1 != rank[v]) ++pick;
      } else {
        // The loser resists as long as possible.
        for (std::size_t i = 1; i < vx.moves.size(); ++i) {
          if (rank[vx.successors[i]] > rank[vx.successors[pick]]) pick = i;
        }
      }
      const auto w = vx.successors[pick];
      trace.steps.push_back({position_hash(vx.position), vx.moves[pick],
                             position_hash(vertices_[w].position)});
      v = w;
    }
    trace.terminal = Terminal{*vertices_[v].terminal};
    return trace;
  }

  std::size_t size() const { return vertices_.size(); }

 private:
  std::uint32_t intern(Position p) {
    auto key = canonical_key(p);
    auto [it, inserted] = index_.try_emplace(std::move(key), 0);
    if (inserted) {
      if (vertices_.size() >= limits_.max_positions) {
        throw SolverError("exact solver exceeded " + std::to_string(limits_.max_positions) +
                          " positions");
      }
      it->second = static_cast<std::uint32_t>(vertices_.size());
      vertices_.push_back(Vertex{std::move(p), std::nullopt, Player::Eloise, {}, {}});
    }
    return it->second;
  }

  const FormulaTable& table_;
  const GameRules& rules_;
  const ExactLimits& limits_;
  std::vector<Vertex> vertices_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace

Verdict solve_exact(const Position& start, const FormulaTable& table, const GameRules& rules,
                    const ExactLimits& limits) {
  if (table.root().contains(FormulaKind::InsertElem)) {
    throw UnsupportedFragment(
        "formula contains 'insert'; the position space may be infinite, use the bounded "
        "solver");
  }
  GameGraph graph(table, rules, limits);
  graph.explore(start);

  Verdict v;
  v.budget_used = graph.size();
  for (Player p : {Player::Eloise, Player::Abelard}) {
    auto rank = graph.attractor(p);
    if (rank[0] == kUnranked) continue;
    v.outcome = p == Player::Eloise ? Outcome::Verified : Outcome::Falsified;
    v.depth = rank[0];
    v.trace = graph.strategy_play(p, rank);
    return v;
  }
  v.outcome = Outcome::IndeterminateProven;
  return v;
}

Verdict solve_exact(const PartialStructure& s, const Assignment& g, const Formula& phi,
                    const GameRules& rules, const ExactLimits& limits) {
  auto table = index_subformulas(phi);
  return solve_exact(initial_position(s, g, table), table, rules, limits);
}

Verdict solve(const PartialStructure& s, const Assignment& g, const Formula& phi,
              unsigned budget, const GameRules& rules) {
  if (phi.contains(FormulaKind::InsertElem)) return solve_bounded(s, g, phi, budget, rules);
  return solve_exact(s, g, phi, rules);
}

}  // namespace lgame
