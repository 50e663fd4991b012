#include <algorithm>
#include <type_traits>
#include <variant>

#include "lgame/game.hpp"

namespace lgame {

std::string_view to_string(Player p) { return p == Player::Eloise ? "eloise" : "abelard"; }

std::string_view to_string(Mover m) {
  switch (m) {
    case Mover::Verifier: return "verifier";
    case Mover::Falsifier: return "falsifier";
    case Mover::Forced: return "forced";
  }
  return "?";
}

std::string_view to_string(Winner w) {
  switch (w) {
    case Winner::Eloise: return "eloise";
    case Winner::Abelard: return "abelard";
    case Winner::Neither: return "neither";
  }
  return "?";
}

Player chooser(const Position& p, Mover m) {
  return m == Mover::Falsifier ? opponent(p.verifier) : p.verifier;
}

void check_game_formula(const Formula& phi) {
  if (phi.contains(FormulaKind::WNot) || phi.contains(FormulaKind::Det)) {
    throw GameError("'wnot' and 'det' have no game rules");
  }
}

namespace {

void check_position(const Position& p, const FormulaTable& table) {
  if (p.table_id != table.id() || !table.valid(p.node)) {
    throw GameError("position does not belong to this formula table");
  }
}

std::size_t relation_of(const Position& p, const Formula& f) {
  auto idx = p.structure.vocabulary().relation_index(f.symbol());
  if (!idx) throw GameError("unknown relation '" + f.symbol() + "'");
  return *idx;
}

Terminal verifier_loses(const Position& p) { return {win_for(opponent(p.verifier))}; }

// Every tuple over the domain of the given arity, lexicographic in domain order.
std::vector<Move> tuple_moves(const PartialStructure& s, std::size_t arity) {
  std::vector<Move> out;
  const auto& dom = s.domain();
  if (dom.empty()) return out;
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    Tuple t;
    t.reserve(arity);
    for (auto i : idx) t.push_back(dom[i]);
    out.push_back({Mover::Verifier, PickTuple{std::move(t)}});
    std::size_t pos = arity;
    while (pos > 0 && ++idx[pos - 1] == dom.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

std::optional<Tuple> assigned_tuple(const Position& p, const Formula& f) {
  Tuple t;
  for (const auto& v : f.variables()) {
    auto e = p.assignment.get(v);
    if (!e) return std::nullopt;
    t.push_back(*e);
  }
  return t;
}

}  // namespace

Position initial_position(const PartialStructure& s, const Assignment& g,
                          const FormulaTable& table) {
  for (const auto& [var, value] : g.bindings()) {
    if (!s.contains(value)) {
      throw GameError("assignment maps '" + var + "' outside the domain");
    }
  }
  check_game_formula(table.root());
  return Position{s, g, 0, Player::Eloise, table.id()};
}

Terminal adjudicate_atom(const Position& p, const FormulaTable& table) {
  check_position(p, table);
  const Formula& f = table.formula(p.node);
  if (!f.is_fo_atom()) throw GameError("adjudicate_atom needs a relational or equality atom");
  Tuple values;
  for (const auto& t : f.terms()) {
    auto v = eval_term(p.structure, p.assignment, t);
    if (!v) return {Winner::Neither};
    values.push_back(*v);
  }
  bool holds;
  if (f.kind() == FormulaKind::EqAtom) {
    holds = values[0] == values[1];
  } else {
    switch (p.structure.status(relation_of(p, f), values)) {
      case RelStatus::Positive: holds = true; break;
      case RelStatus::Negative: holds = false; break;
      default: return {Winner::Neither};
    }
  }
  return {win_for(holds ? p.verifier : opponent(p.verifier))};
}

LegalMoves legal_moves(const Position& p, const FormulaTable& table, const GameRules& rules) {
  check_position(p, table);
  const Formula& f = table.formula(p.node);
  const auto& dom = p.structure.domain();
  switch (f.kind()) {
    case FormulaKind::RelAtom:
    case FormulaKind::EqAtom:
      return adjudicate_atom(p, table);
    case FormulaKind::And:
    case FormulaKind::Or: {
      const Mover m = f.kind() == FormulaKind::Or ? Mover::Verifier : Mover::Falsifier;
      return std::vector<Move>{{m, PickDisjunct{Side::Left}}, {m, PickDisjunct{Side::Right}}};
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const Mover m = f.kind() == FormulaKind::Exists ? Mover::Verifier : Mover::Falsifier;
      if (dom.empty()) {
        // The player who has to pick a witness cannot move.
        return m == Mover::Verifier ? verifier_loses(p) : Terminal{win_for(p.verifier)};
      }
      std::vector<Move> out;
      out.reserve(dom.size());
      for (Element a : dom) out.push_back({m, PickWitness{a}});
      return out;
    }
    case FormulaKind::Not:
    case FormulaKind::InsertElem:
    case FormulaKind::Claim:
      return std::vector<Move>{{Mover::Forced, Descend{}}};
    case FormulaKind::DeleteElem:
      if (p.assignment.binds(f.symbol()) || rules.delete_miss == DeleteMiss::Ignore) {
        return std::vector<Move>{{Mover::Forced, Descend{}}};
      }
      return verifier_loses(p);
    case FormulaKind::InsertTuple:
      if (dom.empty()) return verifier_loses(p);
      return tuple_moves(p.structure, f.variables().size());
    case FormulaKind::DeleteTuple:
      if (rules.tuple_deletion == TupleDeletion::Assigned) {
        if (assigned_tuple(p, f) || rules.delete_miss == DeleteMiss::Ignore) {
          return std::vector<Move>{{Mover::Forced, Descend{}}};
        }
        return verifier_loses(p);
      }
      if (dom.empty()) return verifier_loses(p);
      return tuple_moves(p.structure, f.variables().size());
    case FormulaKind::ClaimAtom: {
      auto binders = table.claim_binders(f.claim_index());
      if (binders.empty()) {
        return rules.claim_unbound == ClaimUnbound::Lose ? verifier_loses(p)
                                                         : Terminal{Winner::Neither};
      }
      std::vector<Move> out;
      for (NodeId b : binders) out.push_back({Mover::Verifier, PickClaimBinder{b}});
      return out;
    }
    case FormulaKind::WNot:
    case FormulaKind::Det:
      break;
  }
  throw GameError("'" + std::string(to_string(f.kind())) + "' has no game rule");
}

namespace detail {

Position apply_unchecked(const Position& p, const Move& m, const FormulaTable& table,
                         const GameRules& rules) {
  const TableNode& node = table.node(p.node);
  const Formula& f = node.formula;
  Position next = p;
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
      next.node = node.children[std::get<PickDisjunct>(m.payload).side == Side::Left ? 0 : 1];
      return next;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      next.assignment = p.assignment.with(f.symbol(), std::get<PickWitness>(m.payload).element);
      next.node = node.children[0];
      return next;
    case FormulaKind::Not:
      next.verifier = opponent(p.verifier);
      next.node = node.children[0];
      return next;
    case FormulaKind::Claim:
      next.node = node.children[0];
      return next;
    case FormulaKind::ClaimAtom:
      next.node = std::get<PickClaimBinder>(m.payload).binder;
      return next;
    case FormulaKind::InsertElem: {
      auto [s, fresh] = p.structure.insert_element();
      next.structure = std::move(s);
      next.assignment = p.assignment.with(f.symbol(), fresh);
      next.node = node.children[0];
      return next;
    }
    case FormulaKind::DeleteElem: {
      if (auto u = p.assignment.get(f.symbol())) {
        next.structure = p.structure.delete_element(*u);
        next.assignment = p.assignment.without_element(*u);
      }
      next.node = node.children[0];
      return next;
    }
    case FormulaKind::InsertTuple:
    case FormulaKind::DeleteTuple: {
      const auto rel = relation_of(p, f);
      next.node = node.children[0];
      if (f.kind() == FormulaKind::DeleteTuple && rules.tuple_deletion == TupleDeletion::Assigned) {
        if (auto t = assigned_tuple(p, f)) {
          next.structure = p.structure.delete_tuple(rel, std::move(*t));
        }
        return next;
      }
      const Tuple& chosen = std::get<PickTuple>(m.payload).elements;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        next.assignment = next.assignment.with(f.variables()[i], chosen[i]);
      }
      next.structure = f.kind() == FormulaKind::InsertTuple
                           ? p.structure.insert_tuple(rel, chosen)
                           : p.structure.delete_tuple(rel, chosen);
      return next;
    }
    default:
      break;
  }
  throw GameError("no move is possible at a '" + std::string(to_string(f.kind())) + "' node");
}

}  // namespace detail

Position apply_move(const Position& p, const Move& m, const FormulaTable& table,
                    const GameRules& rules) {
  auto legal = legal_moves(p, table, rules);
  const auto* moves = std::get_if<std::vector<Move>>(&legal);
  if (moves == nullptr) throw IllegalMove("the play has already ended at this position");
  if (std::find(moves->begin(), moves->end(), m) == moves->end()) {
    throw IllegalMove("move is not legal at this position");
  }
  return detail::apply_unchecked(p, m, table, rules);
}

std::string canonical_key(const Position& p) {
  std::string out;
  out.reserve(64);
  p.structure.append_key(out);
  for (const auto& [var, value] : p.assignment.bindings()) {
    out += var;
    out.push_back('\0');
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
  out.push_back('\x01');
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((p.node >> (8 * i)) & 0xff));
  out.push_back(p.verifier == Player::Eloise ? 'E' : 'A');
  return out;
}

std::uint64_t position_hash(const Position& p) {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_key(p)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

std::string describe_move(const Position& p, const Move& m, const FormulaTable& table) {
  const Formula& f = table.formula(p.node);
  const auto& s = p.structure;
  return std::visit(
      [&](const auto& payload) -> std::string {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, PickDisjunct>) {
          return std::string("choose the ") + (payload.side == Side::Left ? "left" : "right") +
                 (f.kind() == FormulaKind::And ? " conjunct" : " disjunct");
        } else if constexpr (std::is_same_v<T, PickWitness>) {
          return "choose " + f.symbol() + " := " + s.element_name(payload.element);
        } else if constexpr (std::is_same_v<T, PickTuple>) {
          std::string t = "(";
          for (std::size_t i = 0; i < payload.elements.size(); ++i) {
            if (i) t += ',';
            t += s.element_name(payload.elements[i]);
          }
          return std::string(f.kind() == FormulaKind::InsertTuple ? "insert " : "delete ") + t +
                 ") " + (f.kind() == FormulaKind::InsertTuple ? "into " : "from ") + f.symbol();
        } else if constexpr (std::is_same_v<T, PickClaimBinder>) {
          return "continue from node " + std::to_string(payload.binder) + ": " +
                 print_formula(table.formula(payload.binder));
        } else {
          switch (f.kind()) {
            case FormulaKind::Not: return std::string("swap roles");
            case FormulaKind::InsertElem: return "insert a fresh element as " + f.symbol();
            case FormulaKind::DeleteElem: return "delete the element named " + f.symbol();
            case FormulaKind::DeleteTuple: return "delete the assigned tuple from " + f.symbol();
            default: return std::string("continue");
          }
        }
      },
      m.payload);
}

Terminal replay_trace(const Position& start, const Trace& trace, const FormulaTable& table,
                      const GameRules& rules) {
  Position p = start;
  if (position_hash(p) != trace.start) throw GameError("trace starts at a different position");
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    if (position_hash(p) != step.from) {
      throw GameError("trace step " + std::to_string(i) + " starts at a different position");
    }
    p = apply_move(p, step.move, table, rules);
    if (position_hash(p) != step.to) {
      throw GameError("trace step " + std::to_string(i) + " reaches a different position");
    }
  }
  auto end = legal_moves(p, table, rules);
  const auto* terminal = std::get_if<Terminal>(&end);
  if (terminal == nullptr) throw GameError("trace does not end at a terminal position");
  if (*terminal != trace.terminal) throw GameError("trace reaches a different terminal");
  return *terminal;
}

}  // namespace lgame
