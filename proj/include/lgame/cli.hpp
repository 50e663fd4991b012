#pragma once

#include <chrono>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "lgame/eval.hpp"
#include "lgame/solver.hpp"
#include "lgame/tm.hpp"

namespace lgame::cli {

using Json = nlohmann::json;

enum class SolveMode { Auto, Exact, Bounded };

struct RunConfig {
  GameRules rules;
  bool fresh_tuples_negative = false;
  unsigned budget = 12;
  SolveMode mode = SolveMode::Auto;
};

/// A model, an assignment and a formula checked against the model's
/// vocabulary.
struct Problem {
  PartialStructure structure;
  Assignment assignment;
  Formula formula;
};

/// Without a model the vocabulary is inferred from the formula: every relation
/// it mentions becomes auxiliary and the domain is empty. With `aux_implicit`,
/// relations missing from the model are added the same way.
Problem load_problem(const std::optional<std::string>& model_text, const std::string& formula,
                     const std::map<std::string, std::string>& assign, bool aux_implicit,
                     bool fresh_tuples_negative);

/// Rules selected by the convention flags, e.g. "lose" / "ignore".
DeleteMiss parse_delete_miss(std::string_view s);
ClaimUnbound parse_claim_unbound(std::string_view s);
TupleDeletion parse_tuple_deletion(std::string_view s);
Player parse_player(std::string_view s);

/// solve_exact or solve_bounded, as selected by `config.mode`.
Verdict run_solver(const Position& start, const FormulaTable& table, const RunConfig& config);

// JSON payloads shared by the CLI and the HTTP service.

Json structure_json(const PartialStructure& s);
Json position_json(const Position& p, const FormulaTable& table, const GameRules& rules);
Json choices_json(const Position& p, const FormulaTable& table, const GameRules& rules);
/// Trace steps carry the index of the move in legal_moves, which is enough to
/// replay them.
Json trace_json(const Position& start, const Trace& trace, const FormulaTable& table,
                const GameRules& rules);
Json verdict_json(const Verdict& v, const Position& start, const FormulaTable& table,
                  const GameRules& rules, std::string_view solver);
Json truth_json(const TruthStatus& t);
Json tm_outcome_json(const TMOutcome& o);

/// Replays a trace_json move list from `start`; returns the final position.
Position replay_choices(const Position& start, const Json& moves, const FormulaTable& table,
                        const GameRules& rules);

int exit_code(Outcome o);

/// One game between a human and the engine.
class Session {
 public:
  struct Step {
    std::size_t choice;
    Player player;
    Move move;
    std::string description;
    std::uint64_t from, to;
  };

  Session(const Problem& problem, Player human, RunConfig config);

  const FormulaTable& table() const { return *table_; }
  const Position& start() const { return start_; }
  const Position& position() const { return position_; }
  Player human() const { return human_; }
  const RunConfig& config() const { return config_; }
  const std::vector<Step>& history() const { return history_; }

  std::optional<Terminal> terminal() const;
  std::vector<Move> moves() const;
  /// The player who picks at the current position. Forced moves belong to the
  /// human so that looping plays wait for input.
  std::optional<Player> to_move() const;

  const Step& play(std::size_t choice);
  /// Plays engine moves until it is the human's turn or the game ends.
  std::vector<Step> engine_turns(std::size_t limit = 1000);
  /// The engine's preferred move for whoever is to pick: a forced win in the
  /// fewest moves, else a move that does not lose, else the longest defence.
  std::size_t best_choice() const;

  struct Hint {
    Verdict verdict;
    std::optional<std::size_t> choice;
  };
  Hint hint(unsigned budget) const;

 private:
  std::shared_ptr<const FormulaTable> table_;
  Position start_, position_;
  Player human_;
  RunConfig config_;
  std::vector<Step> history_;
};

Json step_json(const Session::Step& s);
Json session_json(const std::string& id, const Session& s);

/// In-memory sessions for the HTTP API. Move submissions on one session are
/// serialized: a move arriving while another is being processed gets 409.
class SessionService {
 public:
  using Clock = std::chrono::steady_clock;

  struct Response {
    int status;
    Json body;
  };

  explicit SessionService(std::chrono::seconds idle_limit = std::chrono::minutes(30),
                          std::function<Clock::time_point()> now = &Clock::now);

  Response create(const Json& body);
  Response get(const std::string& id);
  Response move(const std::string& id, const Json& body);
  Response hint(const std::string& id, const Json& body);
  Response remove(const std::string& id);

  /// Drops sessions idle for longer than the limit; returns how many.
  std::size_t expire();
  std::size_t size() const;

 private:
  struct Entry {
    std::mutex move_mutex;
    mutable std::shared_mutex state_mutex;
    std::shared_ptr<const Session> session;
    Clock::time_point last_used;
  };

  std::shared_ptr<Entry> find(const std::string& id);

  std::chrono::seconds idle_limit_;
  std::function<Clock::time_point()> now_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// Runs the command line; returns the process exit code.
int dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err);

}  // namespace lgame::cli
