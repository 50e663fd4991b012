#include <unordered_map>

#include "lgame/eval.hpp"

namespace lgame {

namespace {

class Evaluator {
 public:
  Evaluator(const PartialStructure& s, const Formula& phi)
      : s_(s), table_(index_subformulas(phi)), memo_(table_.size()) {}

  TruthStatus run(const Assignment& g) { return eval(0, g); }

 private:
  // Memo key: the values of the node's free variables under g.
  std::string key(NodeId id, const Assignment& g) const {
    std::string k;
    for (const auto& v : table_.node(id).free_vars) {
      auto e = g.get(v);
      const std::uint32_t x = e ? *e : 0xffffffffu;
      k.append(reinterpret_cast<const char*>(&x), sizeof x);
    }
    return k;
  }

  TruthStatus atom(const Formula& f, const Assignment& g) const {
    Tuple values;
    for (const auto& t : f.terms()) {
      auto v = eval_term(s_, g, t);
      if (!v) return {false, false};
      values.push_back(*v);
    }
    if (f.kind() == FormulaKind::EqAtom) {
      const bool same = values[0] == values[1];
      return {same, !same};
    }
    auto rel = s_.vocabulary().relation_index(f.symbol());
    if (!rel) throw EvaluationError("unknown relation '" + f.symbol() + "'");
    switch (s_.status(*rel, values)) {
      case RelStatus::Positive: return {true, false};
      case RelStatus::Negative: return {false, true};
      case RelStatus::Undefined: return {false, false};
    }
    return {false, false};
  }

  TruthStatus eval(NodeId id, const Assignment& g) {
    auto& cache = memo_[id];
    std::string k = key(id, g);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
    TruthStatus result = compute(id, g);
    cache.emplace(std::move(k), result);
    return result;
  }

  TruthStatus compute(NodeId id, const Assignment& g) {
    const TableNode& node = table_.node(id);
    const Formula& f = node.formula;
    switch (f.kind()) {
      case FormulaKind::RelAtom:
      case FormulaKind::EqAtom:
        return atom(f, g);
      case FormulaKind::Not: {
        auto b = eval(node.children[0], g);
        return {b.minus, b.plus};
      }
      case FormulaKind::WNot: {
        auto b = eval(node.children[0], g);
        return {!b.plus, !b.minus};
      }
      case FormulaKind::Det: {
        auto b = eval(node.children[0], g);
        return {b.plus || b.minus, !b.plus && !b.minus};
      }
      case FormulaKind::And: {
        auto l = eval(node.children[0], g);
        auto r = eval(node.children[1], g);
        return {l.plus && r.plus, l.minus || r.minus};
      }
      case FormulaKind::Or: {
        auto l = eval(node.children[0], g);
        auto r = eval(node.children[1], g);
        return {l.plus || r.plus, l.minus && r.minus};
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool exists = f.kind() == FormulaKind::Exists;
        bool any_plus = false, all_plus = true, any_minus = false, all_minus = true;
        for (Element a : s_.domain()) {
          auto b = eval(node.children[0], g.with(f.symbol(), a));
          any_plus |= b.plus;
          all_plus &= b.plus;
          any_minus |= b.minus;
          all_minus &= b.minus;
        }
        return exists ? TruthStatus{any_plus, all_minus} : TruthStatus{all_plus, any_minus};
      }
      default:
        throw EvaluationError("'" + std::string(to_string(f.kind())) +
                              "' has no compositional semantics; use the game solver");
    }
  }

  const PartialStructure& s_;
  FormulaTable table_;
  std::vector<std::unordered_map<std::string, TruthStatus>> memo_;
};

}  // namespace

TruthStatus evaluate(const PartialStructure& s, const Assignment& g, const Formula& phi) {
  if (phi.has_game_only_constructs()) {
    throw EvaluationError("formula contains insertion, deletion or claim constructs");
  }
  return Evaluator(s, phi).run(g);
}

}  // namespace lgame
