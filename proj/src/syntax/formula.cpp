#include "lgame/syntax.hpp"

#include <algorithm>

namespace lgame {

Term Term::variable(std::string name) { return Term(Kind::Variable, std::move(name), {}); }

Term Term::constant(std::string name) { return Term(Kind::Constant, std::move(name), {}); }

Term Term::apply(std::string function, std::vector<Term> args) {
  return Term(Kind::Apply, std::move(function), std::move(args));
}

std::string_view to_string(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::RelAtom: return "rel-atom";
    case FormulaKind::EqAtom: return "eq-atom";
    case FormulaKind::ClaimAtom: return "claim-atom";
    case FormulaKind::Not: return "not";
    case FormulaKind::WNot: return "wnot";
    case FormulaKind::Det: return "det";
    case FormulaKind::And: return "and";
    case FormulaKind::Or: return "or";
    case FormulaKind::Exists: return "exists";
    case FormulaKind::Forall: return "forall";
    case FormulaKind::InsertElem: return "insert";
    case FormulaKind::DeleteElem: return "delete";
    case FormulaKind::InsertTuple: return "insertT";
    case FormulaKind::DeleteTuple: return "deleteT";
    case FormulaKind::Claim: return "claim";
  }
  return "?";
}

Formula Formula::make(Node node) {
  for (const auto& c : node.children) node.size += c.size();
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::rel_atom(std::string relation, std::vector<Term> args) {
  return make({FormulaKind::RelAtom, std::move(relation), std::move(args), {}, 0, {}});
}

Formula Formula::eq_atom(Term lhs, Term rhs) {
  return make({FormulaKind::EqAtom, {}, {std::move(lhs), std::move(rhs)}, {}, 0, {}});
}

Formula Formula::claim_atom(unsigned index) {
  return make({FormulaKind::ClaimAtom, {}, {}, {}, index, {}});
}

Formula Formula::negation(Formula body) {
  return make({FormulaKind::Not, {}, {}, {}, 0, {std::move(body)}});
}

Formula Formula::weak_negation(Formula body) {
  return make({FormulaKind::WNot, {}, {}, {}, 0, {std::move(body)}});
}

Formula Formula::determinacy(Formula body) {
  return make({FormulaKind::Det, {}, {}, {}, 0, {std::move(body)}});
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return make({FormulaKind::And, {}, {}, {}, 0, {std::move(lhs), std::move(rhs)}});
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return make({FormulaKind::Or, {}, {}, {}, 0, {std::move(lhs), std::move(rhs)}});
}

Formula Formula::exists(std::string var, Formula body) {
  return make({FormulaKind::Exists, std::move(var), {}, {}, 0, {std::move(body)}});
}

Formula Formula::forall(std::string var, Formula body) {
  return make({FormulaKind::Forall, std::move(var), {}, {}, 0, {std::move(body)}});
}

Formula Formula::insert_element(std::string var, Formula body) {
  return make({FormulaKind::InsertElem, std::move(var), {}, {}, 0, {std::move(body)}});
}

Formula Formula::delete_element(std::string var, Formula body) {
  return make({FormulaKind::DeleteElem, std::move(var), {}, {}, 0, {std::move(body)}});
}

Formula Formula::insert_tuple(std::string relation, std::vector<std::string> vars,
                              Formula body) {
  return make({FormulaKind::InsertTuple, std::move(relation), {}, std::move(vars), 0,
               {std::move(body)}});
}

Formula Formula::delete_tuple(std::string relation, std::vector<std::string> vars,
                              Formula body) {
  return make({FormulaKind::DeleteTuple, std::move(relation), {}, std::move(vars), 0,
               {std::move(body)}});
}

Formula Formula::claim(unsigned index, Formula body) {
  return make({FormulaKind::Claim, {}, {}, {}, index, {std::move(body)}});
}

bool Formula::is_atom() const {
  auto k = kind();
  return k == FormulaKind::RelAtom || k == FormulaKind::EqAtom || k == FormulaKind::ClaimAtom;
}

bool Formula::is_fo_atom() const {
  return kind() == FormulaKind::RelAtom || kind() == FormulaKind::EqAtom;
}

bool Formula::contains(FormulaKind k) const {
  if (kind() == k) return true;
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [k](const Formula& c) { return c.contains(k); });
}

bool Formula::has_game_only_constructs() const {
  switch (kind()) {
    case FormulaKind::ClaimAtom:
    case FormulaKind::Claim:
    case FormulaKind::InsertElem:
    case FormulaKind::DeleteElem:
    case FormulaKind::InsertTuple:
    case FormulaKind::DeleteTuple:
      return true;
    default:
      break;
  }
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [](const Formula& c) { return c.has_game_only_constructs(); });
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.size == y.size && x.symbol == y.symbol &&
         x.claim_index == y.claim_index && x.terms == y.terms &&
         x.variables == y.variables && x.children == y.children;
}

SyntaxError::SyntaxError(std::string message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         message),
      message_(std::move(message)),
      line_(line),
      column_(column) {}

}  // namespace lgame
