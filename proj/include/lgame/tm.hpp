#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgame/solver.hpp"

namespace lgame {

inline constexpr char kBlank = '_';
/// On the read side of a rule: any symbol without its own rule. On the write
/// side: leave the cell unchanged.
inline constexpr char kAnySymbol = '*';

enum class Direction { Left, Right };

struct TMRule {
  std::size_t next;
  char write;  // kAnySymbol keeps the symbol read
  Direction move;
};

class MachineError : public std::runtime_error {
 public:
  MachineError(std::string message, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

/// Deterministic single-tape machine on a one-sided tape. A configuration with
/// no applicable rule halts in the reject state.
class TuringMachine {
 public:
  TuringMachine(std::vector<std::string> states, std::size_t start, std::size_t accept,
                std::size_t reject, std::string input_alphabet);

  void add_rule(std::size_t state, char read, TMRule rule);

  const std::vector<std::string>& states() const { return states_; }
  std::size_t start() const { return start_; }
  std::size_t accept() const { return accept_; }
  std::size_t reject() const { return reject_; }
  const std::string& input_alphabet() const { return input_alphabet_; }
  std::optional<std::size_t> state_index(std::string_view name) const;

  /// Rule for reading `symbol` in `state`, falling back to the wildcard rule.
  const TMRule* rule(std::size_t state, char symbol) const;
  const std::map<std::pair<std::size_t, char>, TMRule>& rules() const { return rules_; }

 private:
  std::vector<std::string> states_;
  std::size_t start_, accept_, reject_;
  std::string input_alphabet_;
  std::map<std::pair<std::size_t, char>, TMRule> rules_;
};

/// Symbols encode_model can produce.
std::string default_input_alphabet();

/// Line format:
///   states: q0 q1 yes no
///   start: q0
///   accept: yes
///   reject: no
///   alphabet: 0123456789;:+-?=      (optional)
///   delta: (q0,a) -> (q1,b,R)
/// '#' starts a comment.
TuringMachine parse_machine(std::string_view text);

struct TMOutcome {
  enum class Kind { Accept, Reject, Running, CycleDetected };
  Kind kind = Kind::Running;
  /// Steps executed. For CycleDetected, the step at which the repetition was
  /// observed.
  std::uint64_t steps = 0;
  /// CycleDetected only: the configuration after `cycle_start` steps recurs
  /// after another `cycle_length` steps.
  std::uint64_t cycle_start = 0;
  std::uint64_t cycle_length = 0;

  friend bool operator==(const TMOutcome&, const TMOutcome&) = default;
};

std::string_view to_string(TMOutcome::Kind k);

struct TMConfiguration {
  std::size_t state = 0;
  std::size_t head = 0;
  std::string tape;  // trailing blanks trimmed

  friend bool operator==(const TMConfiguration&, const TMConfiguration&) = default;
};

TMConfiguration initial_configuration(const TuringMachine& tm, std::string_view input);
/// One transition; returns false, leaving `c` untouched, when the machine has
/// halted.
bool step(const TuringMachine& tm, TMConfiguration& c);

/// Runs at most `step_budget` steps. Divergence is reported only when a full
/// configuration repeats.
TMOutcome run_tm(const TuringMachine& tm, std::string_view input, std::uint64_t step_budget);

// Correspondence between machines and formulas.

enum class RowStatus { Agree, Disagree, Inconclusive };
std::string_view to_string(RowStatus s);

struct CorrespondenceRow {
  std::string encoding;
  TMOutcome machine;
  Verdict verdict;
  RowStatus status = RowStatus::Inconclusive;
};

struct CorrespondenceReport {
  std::vector<CorrespondenceRow> rows;

  std::size_t count(RowStatus s) const;
  bool all_agree() const { return !rows.empty() && count(RowStatus::Agree) == rows.size(); }
};

/// Accept/Verified, Reject/Falsified and CycleDetected/IndeterminateProven
/// agree; Running or Unknown on either side is inconclusive.
RowStatus compare(const TMOutcome& machine, Outcome verdict);

struct CorrespondenceBudget {
  std::uint64_t machine_steps = 100'000;
  /// Only used when the formula needs the bounded solver.
  unsigned solver_depth = 12;
};

/// Runs the machine on encode_model(m) and solves phi on m for every model.
/// Models are checked in parallel; rows keep the order of `models`.
CorrespondenceReport check_correspondence(const TuringMachine& tm, const Formula& phi,
                                          const std::vector<PartialStructure>& models,
                                          const CorrespondenceBudget& budget = {},
                                          const GameRules& rules = {});

/// Every structure over the vocabulary and relation modes of `shape` with
/// domain sizes 0..max_size; elements are named a, b, c, ... Functions and
/// constants stay undefined.
std::vector<PartialStructure> enumerate_models(const PartialStructure& shape,
                                               std::size_t max_size);

struct CuratedPair {
  std::string name;
  std::string machine;   // machine file text
  std::string formula;
  std::string vocabulary;  // model-file declarations
  std::string argument;  // why machine and formula agree
  std::size_t max_size = 3;
};

const std::vector<CuratedPair>& curated_pairs();

}  // namespace lgame
