#include "lgame/syntax.hpp"

namespace lgame {

namespace {

std::string tuple_text(std::span<const std::string> vars) {
  std::string out = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ',';
    out += vars[i];
  }
  return out + ")";
}

void render(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::RelAtom:
      out += print_formula(f);
      return;
    case FormulaKind::EqAtom:
      out += print_term(f.terms()[0]) + " equals " + print_term(f.terms()[1]);
      return;
    case FormulaKind::ClaimAtom:
      out += 'C' + std::to_string(f.claim_index());
      return;
    case FormulaKind::Not:
      out += "it is falsifiable that ";
      break;
    case FormulaKind::WNot:
      out += "it is not verifiable that ";
      break;
    case FormulaKind::Det:
      out += "it is determined whether ";
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      render(f.child(0), out);
      out += f.kind() == FormulaKind::And ? " and " : " or ";
      render(f.child(1), out);
      return;
    case FormulaKind::Exists:
      out += "there exists an " + f.symbol() + " such that ";
      break;
    case FormulaKind::Forall:
      out += "for every " + f.symbol() + " it holds that ";
      break;
    case FormulaKind::InsertElem:
      out += "it is possible to insert a new element " + f.symbol() + " such that ";
      break;
    case FormulaKind::DeleteElem:
      out += "it is possible to delete the element " + f.symbol() + " such that ";
      break;
    case FormulaKind::InsertTuple:
      out += "it is possible to insert a tuple " + tuple_text(f.variables()) + " into " +
             f.symbol() + " such that ";
      break;
    case FormulaKind::DeleteTuple:
      out += "it is possible to delete a tuple " + tuple_text(f.variables()) + " from " +
             f.symbol() + " such that ";
      break;
    case FormulaKind::Claim:
      out += "it is possible to verify the claim C" + std::to_string(f.claim_index()) +
             " which states that ";
      break;
  }
  render(f.child(), out);
}

}  // namespace

std::string render_natural_language(const Formula& formula) {
  std::string out;
  render(formula, out);
  return out;
}

}  // namespace lgame
