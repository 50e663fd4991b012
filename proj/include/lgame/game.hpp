#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lgame/structure.hpp"
#include "lgame/syntax.hpp"

namespace lgame {

enum class Player { Eloise, Abelard };

constexpr Player opponent(Player p) {
  return p == Player::Eloise ? Player::Abelard : Player::Eloise;
}
std::string_view to_string(Player p);

/// Who picks at a position, relative to the current roles.
enum class Mover { Verifier, Falsifier, Forced };
std::string_view to_string(Mover m);

enum class Side { Left, Right };

struct PickDisjunct {
  Side side;
  friend bool operator==(const PickDisjunct&, const PickDisjunct&) = default;
};
struct PickWitness {
  Element element;
  friend bool operator==(const PickWitness&, const PickWitness&) = default;
};
struct PickTuple {
  Tuple elements;
  friend bool operator==(const PickTuple&, const PickTuple&) = default;
};
struct PickClaimBinder {
  NodeId binder;
  friend bool operator==(const PickClaimBinder&, const PickClaimBinder&) = default;
};
struct Descend {
  friend bool operator==(const Descend&, const Descend&) = default;
};

using MovePayload = std::variant<PickDisjunct, PickWitness, PickTuple, PickClaimBinder, Descend>;

struct Move {
  Mover mover;
  MovePayload payload;
  friend bool operator==(const Move&, const Move&) = default;
};

enum class Winner { Eloise, Abelard, Neither };
std::string_view to_string(Winner w);

constexpr Winner win_for(Player p) {
  return p == Player::Eloise ? Winner::Eloise : Winner::Abelard;
}

struct Terminal {
  Winner winner;
  friend bool operator==(const Terminal&, const Terminal&) = default;
};

/// End-of-play conventions. Defaults: a deletion that cannot be carried out
/// loses the play for the verifier; jumping to a claim without a binder ends
/// the play with no winner.
enum class DeleteMiss { Lose, Ignore };
enum class ClaimUnbound { Neither, Lose };
/// Which tuple deleteT removes: the one the verifier picks (and binds), or the
/// one the variables already denote under the current assignment.
enum class TupleDeletion { Chosen, Assigned };

struct GameRules {
  DeleteMiss delete_miss = DeleteMiss::Lose;
  ClaimUnbound claim_unbound = ClaimUnbound::Neither;
  TupleDeletion tuple_deletion = TupleDeletion::Chosen;

  friend bool operator==(const GameRules&, const GameRules&) = default;
};

struct Position {
  PartialStructure structure;
  Assignment assignment;
  NodeId node = 0;
  Player verifier = Player::Eloise;
  std::uint64_t table_id = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

using LegalMoves = std::variant<std::vector<Move>, Terminal>;

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllegalMove : public GameError {
 public:
  using GameError::GameError;
};

/// Rejects formulas containing `wnot` or `det`, which have no game rules.
void check_game_formula(const Formula& phi);

Position initial_position(const PartialStructure& s, const Assignment& g,
                          const FormulaTable& table);

/// The moves available at `p`, in source order, or the terminal that ends the
/// play there.
LegalMoves legal_moves(const Position& p, const FormulaTable& table,
                       const GameRules& rules = {});

/// Applies a move from legal_moves(p); throws IllegalMove otherwise.
Position apply_move(const Position& p, const Move& m, const FormulaTable& table,
                    const GameRules& rules = {});

/// Winner at a relational or equality atom.
Terminal adjudicate_atom(const Position& p, const FormulaTable& table);

/// The player who makes move `m` at `p`. Forced moves are attributed to the
/// current verifier.
Player chooser(const Position& p, Mover m);

/// Byte string identifying a position up to the table it belongs to.
std::string canonical_key(const Position& p);
std::uint64_t position_hash(const Position& p);
std::string hash_hex(std::uint64_t h);

/// Short human-readable label for a move at `p`.
std::string describe_move(const Position& p, const Move& m, const FormulaTable& table);

// ---------------------------------------------------------------------------
// Play records

struct TraceStep {
  std::uint64_t from;
  Move move;
  std::uint64_t to;
};

struct Trace {
  std::uint64_t start = 0;
  std::vector<TraceStep> steps;
  Terminal terminal{Winner::Neither};
};

/// Replays `trace` from `start`, checking every recorded hash, and returns the
/// terminal reached. Throws GameError on any divergence.
Terminal replay_trace(const Position& start, const Trace& trace, const FormulaTable& table,
                      const GameRules& rules = {});

namespace detail {
/// apply_move without the legality check; `m` must come from legal_moves(p).
Position apply_unchecked(const Position& p, const Move& m, const FormulaTable& table,
                         const GameRules& rules);
}  // namespace detail

}  // namespace lgame
