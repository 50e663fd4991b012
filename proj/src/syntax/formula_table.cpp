#include <algorithm>
#include <atomic>
#include <set>

#include "lgame/syntax.hpp"

namespace lgame {

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Variable) out.insert(t.name());
  for (const auto& a : t.args()) term_vars(a, out);
}

std::uint64_t next_table_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

std::span<const NodeId> FormulaTable::claim_binders(unsigned index) const {
  auto it = claim_binders_.find(index);
  if (it == claim_binders_.end()) return {};
  return it->second;
}

FormulaTable index_subformulas(const Formula& formula) {
  FormulaTable table;
  table.id_ = next_table_id();
  table.nodes_.reserve(formula.size());

  // Returns the free variables of the subtree rooted at the new node.
  auto visit = [&](auto&& self, const Formula& f, NodeId parent) -> std::set<std::string> {
    const auto id = static_cast<NodeId>(table.nodes_.size());
    table.nodes_.push_back(TableNode{f, parent, {}, {}});
    if (parent != kNoNode) table.nodes_[parent].children.push_back(id);
    if (f.kind() == FormulaKind::Claim) table.claim_binders_[f.claim_index()].push_back(id);

    std::set<std::string> free;
    for (const auto& t : f.terms()) term_vars(t, free);
    for (const auto& c : f.children()) {
      auto sub = self(self, c, id);
      free.insert(sub.begin(), sub.end());
    }
    switch (f.kind()) {
      case FormulaKind::Exists:
      case FormulaKind::Forall:
      case FormulaKind::InsertElem:
      case FormulaKind::DeleteElem:
        free.erase(f.symbol());
        break;
      case FormulaKind::InsertTuple:
      case FormulaKind::DeleteTuple:
        for (const auto& v : f.variables()) free.erase(v);
        break;
      default:
        break;
    }
    table.nodes_[id].free_vars.assign(free.begin(), free.end());
    return free;
  };
  visit(visit, formula, kNoNode);
  return table;
}

}  // namespace lgame
