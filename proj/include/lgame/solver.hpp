#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "lgame/game.hpp"

namespace lgame {

/// Game-level verdict, always from Eloise's point of view: Verified means
/// Eloise has a winning strategy, Falsified means Abelard has one.
enum class Outcome { Verified, Falsified, IndeterminateProven, Unknown };

std::string_view to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  /// Number of moves within which the winner can force the win. Every
  /// transition counts, forced ones included.
  std::optional<unsigned> depth;
  /// Exact solver: reachable positions explored. Bounded solver: deepest
  /// iteration run.
  std::size_t budget_used = 0;
  /// One play in which the winner follows the computed strategy.
  std::optional<Trace> trace;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by solve_exact on formulas that can grow the domain.
class UnsupportedFragment : public SolverError {
 public:
  using SolverError::SolverError;
};

class NoWitness : public SolverError {
 public:
  using SolverError::SolverError;
};

struct ExactLimits {
  std::size_t max_positions = 2'000'000;
};

/// Builds the whole reachable game graph and computes both players'
/// attractors to their winning terminals. Positions in neither attractor are
/// indeterminate: some play avoids both winning sets forever. Requires a
/// formula without `insert`, which keeps the position space finite.
Verdict solve_exact(const PartialStructure& s, const Assignment& g, const Formula& phi,
                    const GameRules& rules = {}, const ExactLimits& limits = {});
Verdict solve_exact(const Position& start, const FormulaTable& table,
                    const GameRules& rules = {}, const ExactLimits& limits = {});

/// Iterative-deepening AND-OR search for a forced win within `budget` moves.
/// Sound at every budget; any forced win is found once the budget reaches its
/// depth. Returns Unknown when no side can force a win within the budget.
Verdict solve_bounded(const PartialStructure& s, const Assignment& g, const Formula& phi,
                      unsigned budget, const GameRules& rules = {});
Verdict solve_bounded(const Position& start, const FormulaTable& table, unsigned budget,
                      const GameRules& rules = {});

/// solve_exact for insertion-free formulas, solve_bounded otherwise.
Verdict solve(const PartialStructure& s, const Assignment& g, const Formula& phi,
              unsigned budget, const GameRules& rules = {});

/// The winning play stored in a conclusive verdict; throws NoWitness for
/// indeterminate and unknown verdicts.
const Trace& extract_trace(const Verdict& v);

/// Result of exhaustive minimax, relative to the verifier at the start
/// position.
enum class BruteOutcome { VerifierWin, FalsifierWin, NeitherYet };

std::string_view to_string(BruteOutcome o);

/// Expands the full game tree to `depth` moves without memoization or pruning.
/// Meant as a test oracle for the solvers; exponential in `depth`.
BruteOutcome brute_force_enumerate(const Position& p, const FormulaTable& table, unsigned depth,
                                   const GameRules& rules = {});

}  // namespace lgame
