#include <algorithm>
#include <cctype>
#include <sstream>

#include "lgame/tm.hpp"

namespace lgame {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// "(a, b, c)" -> {"a", "b", "c"}
std::vector<std::string> parenthesized(std::string_view s, int line) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw MachineError("expected a parenthesized tuple, found '" + std::string(s) + "'", line);
  }
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  while (true) {
    auto comma = s.find(',');
    parts.emplace_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return parts;
}

char symbol(const std::string& text, int line) {
  if (text.size() != 1) throw MachineError("expected one tape symbol, found '" + text + "'", line);
  return text[0];
}

struct PendingRule {
  int line;
  std::string state, next;
  char read, write;
  Direction move;
};

}  // namespace

TuringMachine parse_machine(std::string_view text) {
  std::vector<std::string> states;
  std::optional<std::string> start, accept, reject, alphabet;
  std::vector<PendingRule> rules;

  auto single = [](std::optional<std::string>& slot, std::string_view value, const char* key,
                   int line) {
    if (slot) throw MachineError(std::string(key) + " given twice", line);
    auto w = words(value);
    if (w.size() != 1) throw MachineError(std::string("expected one state after ") + key, line);
    slot = w[0];
  };

  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    ++number;
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;

    auto colon = raw.find(':');
    if (colon == std::string_view::npos) throw MachineError("expected 'key: value'", number);
    std::string key(trim(raw.substr(0, colon)));
    std::string_view value = trim(raw.substr(colon + 1));

    if (key == "states") {
      if (!states.empty()) throw MachineError("states given twice", number);
      states = words(value);
      if (states.empty()) throw MachineError("no states listed", number);
    } else if (key == "start") {
      single(start, value, "start", number);
    } else if (key == "accept") {
      single(accept, value, "accept", number);
    } else if (key == "reject") {
      single(reject, value, "reject", number);
    } else if (key == "alphabet") {
      if (alphabet) throw MachineError("alphabet given twice", number);
      std::string a;
      for (char c : value) {
        if (!std::isspace(static_cast<unsigned char>(c))) a += c;
      }
      alphabet = a;
    } else if (key == "delta") {
      auto arrow = value.find("->");
      if (arrow == std::string_view::npos) throw MachineError("expected '->'", number);
      auto lhs = parenthesized(value.substr(0, arrow), number);
      auto rhs = parenthesized(value.substr(arrow + 2), number);
      if (lhs.size() != 2) throw MachineError("expected (state,symbol) before '->'", number);
      if (rhs.size() != 3) throw MachineError("expected (state,symbol,L|R) after '->'", number);
      Direction d;
      if (rhs[2] == "L") {
        d = Direction::Left;
      } else if (rhs[2] == "R") {
        d = Direction::Right;
      } else {
        throw MachineError("direction must be L or R", number);
      }
      rules.push_back({number, lhs[0], rhs[0], symbol(lhs[1], number), symbol(rhs[1], number), d});
    } else {
      throw MachineError("unknown key '" + key + "'", number);
    }
  }

  if (states.empty()) throw MachineError("missing 'states:'");
  if (!start || !accept || !reject) throw MachineError("missing start, accept or reject state");
  auto index = [&](const std::string& name, int line) {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) throw MachineError("undeclared state '" + name + "'", line);
    return static_cast<std::size_t>(it - states.begin());
  };
  const auto s = index(*start, 0), a = index(*accept, 0), r = index(*reject, 0);
  TuringMachine tm(states, s, a, r, alphabet ? *alphabet : default_input_alphabet());
  for (const auto& p : rules) {
    try {
      tm.add_rule(index(p.state, p.line), p.read, TMRule{index(p.next, p.line), p.write, p.move});
    } catch (const MachineError& e) {
      if (e.line() > 0) throw;
      throw MachineError(e.what(), p.line);
    }
  }
  return tm;
}

}  // namespace lgame
