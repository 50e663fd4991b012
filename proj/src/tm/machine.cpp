#include <algorithm>

#include "lgame/tm.hpp"

namespace lgame {

MachineError::MachineError(std::string message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

std::string default_input_alphabet() {
  std::string a = "0123456789;:+-?=";
  for (char c = 'a'; c <= 'z'; ++c) a += c;
  for (char c = 'A'; c <= 'Z'; ++c) a += c;
  return a;
}

TuringMachine::TuringMachine(std::vector<std::string> states, std::size_t start,
                             std::size_t accept, std::size_t reject, std::string input_alphabet)
    : states_(std::move(states)),
      start_(start),
      accept_(accept),
      reject_(reject),
      input_alphabet_(std::move(input_alphabet)) {
  if (start_ >= states_.size() || accept_ >= states_.size() || reject_ >= states_.size()) {
    throw MachineError("start, accept and reject must be declared states");
  }
  if (accept_ == reject_) throw MachineError("accept and reject states must differ");
  for (char c : input_alphabet_) {
    if (c == kBlank || c == kAnySymbol) {
      throw MachineError(std::string("'") + c + "' cannot be an input symbol");
    }
  }
}

void TuringMachine::add_rule(std::size_t state, char read, TMRule rule) {
  if (state >= states_.size() || rule.next >= states_.size()) {
    throw MachineError("rule refers to an undeclared state");
  }
  if (state == accept_ || state == reject_) {
    throw MachineError("halting state '" + states_[state] + "' cannot have rules");
  }
  if (!rules_.emplace(std::pair{state, read}, rule).second) {
    throw MachineError("two rules for state '" + states_[state] + "' reading '" + read + "'");
  }
}

std::optional<std::size_t> TuringMachine::state_index(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

const TMRule* TuringMachine::rule(std::size_t state, char symbol) const {
  if (auto it = rules_.find({state, symbol}); it != rules_.end()) return &it->second;
  if (auto it = rules_.find({state, kAnySymbol}); it != rules_.end()) return &it->second;
  return nullptr;
}

std::string_view to_string(TMOutcome::Kind k) {
  switch (k) {
    case TMOutcome::Kind::Accept: return "accept";
    case TMOutcome::Kind::Reject: return "reject";
    case TMOutcome::Kind::Running: return "running";
    case TMOutcome::Kind::CycleDetected: return "cycle";
  }
  return "?";
}

TMConfiguration initial_configuration(const TuringMachine& tm, std::string_view input) {
  for (char c : input) {
    if (tm.input_alphabet().find(c) == std::string::npos) {
      throw MachineError(std::string("input symbol '") + c + "' is not in the input alphabet");
    }
  }
  return TMConfiguration{tm.start(), 0, std::string(input)};
}

bool step(const TuringMachine& tm, TMConfiguration& c) {
  if (c.state == tm.accept() || c.state == tm.reject()) return false;
  const char read = c.head < c.tape.size() ? c.tape[c.head] : kBlank;
  const TMRule* r = tm.rule(c.state, read);
  if (!r) {
    c.state = tm.reject();
    return true;
  }
  const char write = r->write == kAnySymbol ? read : r->write;
  if (c.head >= c.tape.size() && write != kBlank) c.tape.resize(c.head + 1, kBlank);
  if (c.head < c.tape.size()) c.tape[c.head] = write;
  while (!c.tape.empty() && c.tape.back() == kBlank) c.tape.pop_back();
  c.state = r->next;
  if (r->move == Direction::Right) {
    ++c.head;
  } else if (c.head > 0) {
    --c.head;
  }
  return true;
}

namespace {

bool halted(const TuringMachine& tm, const TMConfiguration& c) {
  return c.state == tm.accept() || c.state == tm.reject();
}

TMOutcome halt_outcome(const TuringMachine& tm, const TMConfiguration& c, std::uint64_t steps) {
  TMOutcome out;
  out.kind = c.state == tm.accept() ? TMOutcome::Kind::Accept : TMOutcome::Kind::Reject;
  out.steps = steps;
  return out;
}

}  // namespace

TMOutcome run_tm(const TuringMachine& tm, std::string_view input, std::uint64_t step_budget) {
  TMConfiguration c = initial_configuration(tm, input);
  // Brent's cycle finding: compare against a saved configuration that is
  // refreshed whenever the distance reaches the next power of two.
  TMConfiguration saved = c;
  std::uint64_t power = 1, lambda = 0;
  for (std::uint64_t steps = 0;; ) {
    if (halted(tm, c)) return halt_outcome(tm, c, steps);
    if (steps == step_budget) return TMOutcome{TMOutcome::Kind::Running, steps, 0, 0};
    step(tm, c);
    ++steps;
    ++lambda;
    if (c == saved) {
      // Locate the first configuration of the cycle by running two copies
      // `lambda` steps apart.
      TMConfiguration a = initial_configuration(tm, input), b = a;
      for (std::uint64_t i = 0; i < lambda; ++i) step(tm, b);
      std::uint64_t mu = 0;
      while (!(a == b)) {
        step(tm, a);
        step(tm, b);
        ++mu;
      }
      return TMOutcome{TMOutcome::Kind::CycleDetected, steps, mu, lambda};
    }
    if (lambda == power) {
      saved = c;
      power *= 2;
      lambda = 0;
    }
  }
}

}  // namespace lgame
