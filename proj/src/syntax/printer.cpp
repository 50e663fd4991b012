#include "lgame/syntax.hpp"

namespace lgame {

namespace {

void print_term_to(const Term& t, std::string& out) {
  out += t.name();
  if (t.kind() != Term::Kind::Apply) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print_term_to(t.args()[i], out);
  }
  out += ')';
}

void print_list(std::span<const std::string> vars, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ',';
    out += vars[i];
  }
  out += ')';
}

// Pre-order printer; `counter` tracks the node id so that one node can be
// highlighted.
class Printer {
 public:
  explicit Printer(NodeId active) : active_(active) {}

  void print(const Formula& f, std::string& out) {
    const NodeId id = counter_++;
    const bool mark = id == active_;
    if (mark) out += "[[";
    print_node(f, out);
    if (mark) out += "]]";
  }

 private:
  void print_node(const Formula& f, std::string& out) {
    switch (f.kind()) {
      case FormulaKind::RelAtom:
        out += f.symbol();
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ',';
          print_term_to(f.terms()[i], out);
        }
        out += ')';
        return;
      case FormulaKind::EqAtom:
        print_term_to(f.terms()[0], out);
        out += " = ";
        print_term_to(f.terms()[1], out);
        return;
      case FormulaKind::ClaimAtom:
        out += 'C' + std::to_string(f.claim_index());
        return;
      case FormulaKind::Not:
      case FormulaKind::WNot:
      case FormulaKind::Det:
        out += to_string(f.kind());
        out += ' ';
        print(f.child(), out);
        return;
      case FormulaKind::And:
      case FormulaKind::Or:
        out += '(';
        print(f.child(0), out);
        out += f.kind() == FormulaKind::And ? " & " : " | ";
        print(f.child(1), out);
        out += ')';
        return;
      case FormulaKind::Exists:
      case FormulaKind::Forall:
      case FormulaKind::InsertElem:
      case FormulaKind::DeleteElem:
        out += to_string(f.kind());
        out += ' ';
        out += f.symbol();
        out += ". ";
        print(f.child(), out);
        return;
      case FormulaKind::InsertTuple:
      case FormulaKind::DeleteTuple:
        out += to_string(f.kind());
        out += ' ';
        out += f.symbol();
        print_list(f.variables(), out);
        out += ". ";
        print(f.child(), out);
        return;
      case FormulaKind::Claim:
        out += "claim C" + std::to_string(f.claim_index()) + ". ";
        print(f.child(), out);
        return;
    }
  }

  NodeId active_;
  NodeId counter_ = 0;
};

}  // namespace

std::string print_term(const Term& term) {
  std::string out;
  print_term_to(term, out);
  return out;
}

std::string print_formula(const Formula& formula) {
  std::string out;
  Printer(kNoNode).print(formula, out);
  return out;
}

std::string print_highlighted(const FormulaTable& table, NodeId active) {
  std::string out;
  Printer(active).print(table.root(), out);
  return out;
}

}  // namespace lgame
