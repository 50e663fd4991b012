#include "generators.hpp"

namespace lgame::testing {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct FormulaGen {
  Rng& rng;
  const Vocabulary& vocab;
  const FormulaShape& shape;
  std::vector<unsigned> open_claims;  // indices bound by enclosing claims

  Term term(int depth) {
    const auto& fns = vocab.functions();
    const auto& consts = vocab.constants();
    if (shape.function_terms && depth > 0 && !fns.empty() && coin(rng, 0.2)) {
      const auto& f = fns[pick(rng, fns.size())];
      std::vector<Term> args;
      for (int i = 0; i < f.arity; ++i) args.push_back(term(depth - 1));
      return Term::apply(f.name, std::move(args));
    }
    if (shape.function_terms && !consts.empty() && coin(rng, 0.2)) {
      return Term::constant(consts[pick(rng, consts.size())]);
    }
    return Term::variable(shape.variables[pick(rng, shape.variables.size())]);
  }

  Formula atom() {
    if (shape.claims && coin(rng, 0.25)) {
      // Mostly refer back to an enclosing claim so that plays can loop.
      if (!open_claims.empty() && coin(rng, 0.8)) {
        return Formula::claim_atom(open_claims[pick(rng, open_claims.size())]);
      }
      return Formula::claim_atom(static_cast<unsigned>(pick(rng, 2)));
    }
    const auto& rels = vocab.relations();
    if (rels.empty() || coin(rng, 0.25)) return Formula::eq_atom(term(1), term(1));
    const auto& r = rels[pick(rng, rels.size())];
    std::vector<Term> args;
    for (int i = 0; i < r.arity; ++i) args.push_back(term(1));
    return Formula::rel_atom(r.name, std::move(args));
  }

  std::string var() { return shape.variables[pick(rng, shape.variables.size())]; }

  Formula formula(std::size_t budget, bool in_game_op) {
    if (budget <= 1) return atom();
    enum Op { Not, WNot, Det, And, Or, Exists, Forall, Insert, Delete, InsertT, DeleteT, Claim };
    std::vector<Op> ops{Not, Exists, Forall};
    if (budget >= 3) {
      ops.push_back(And);
      ops.push_back(Or);
    }
    if (shape.weak_ops && !in_game_op) {
      ops.push_back(WNot);
      ops.push_back(Det);
    }
    if (shape.element_ops) {
      ops.push_back(Insert);
      ops.push_back(Delete);
    }
    std::vector<std::size_t> tuple_rels;
    for (std::size_t r = 0; r < vocab.relations().size(); ++r) {
      if (!shape.unary_tuple_ops || vocab.relations()[r].arity == 1) tuple_rels.push_back(r);
    }
    if (shape.tuple_ops && !tuple_rels.empty()) {
      ops.push_back(InsertT);
      ops.push_back(DeleteT);
    }
    if (shape.claims) ops.push_back(Claim);

    const Op op = ops[pick(rng, ops.size())];
    if (op == And || op == Or) {
      const std::size_t left = 1 + pick(rng, budget - 2);
      Formula a = formula(left, in_game_op), b = formula(budget - 1 - left, in_game_op);
      return op == And ? Formula::conjunction(a, b) : Formula::disjunction(a, b);
    }
    const bool game_op = op == Insert || op == Delete || op == InsertT || op == DeleteT || op == Claim;
    const unsigned claim_index = static_cast<unsigned>(pick(rng, 2));
    if (op == Claim) open_claims.push_back(claim_index);
    Formula body = formula(budget - 1, in_game_op || game_op);
    if (op == Claim) open_claims.pop_back();
    switch (op) {
      case Not: return Formula::negation(body);
      case WNot: return Formula::weak_negation(body);
      case Det: return Formula::determinacy(body);
      case Exists: return Formula::exists(var(), body);
      case Forall: return Formula::forall(var(), body);
      case Insert: return Formula::insert_element(var(), body);
      case Delete: return Formula::delete_element(var(), body);
      case InsertT:
      case DeleteT: {
        const auto& r = vocab.relations()[tuple_rels[pick(rng, tuple_rels.size())]];
        std::vector<std::string> vars;
        for (int i = 0; i < r.arity; ++i) vars.push_back(var());
        return op == InsertT ? Formula::insert_tuple(r.name, vars, body)
                             : Formula::delete_tuple(r.name, vars, body);
      }
      case Claim: return Formula::claim(claim_index, body);
      default: break;
    }
    return body;
  }
};

}  // namespace

Vocabulary test_vocabulary() {
  Vocabulary v;
  v.add_relation("P", 1);
  v.add_relation("Q", 1);
  v.add_relation("R", 2);
  v.add_relation("S", 2);
  v.add_relation("X", 1, RelationKind::Auxiliary);
  v.add_function("f", 1);
  v.add_function("g", 2);
  v.add_constant("c");
  v.add_constant("d");
  return v;
}

Vocabulary game_vocabulary() {
  Vocabulary v;
  v.add_relation("P", 1);
  v.add_relation("Q", 1);
  v.add_relation("R", 2);
  v.add_relation("X", 1, RelationKind::Auxiliary);
  return v;
}

Formula random_formula(Rng& rng, const Vocabulary& vocab, const FormulaShape& shape) {
  FormulaGen gen{rng, vocab, shape};
  // Lean towards the larger sizes, where the interesting interactions are.
  const std::size_t half = (shape.max_size + 1) / 2;
  const std::size_t size = coin(rng, 0.7) ? shape.max_size - pick(rng, half)
                                          : 1 + pick(rng, shape.max_size);
  return gen.formula(size, false);
}

PartialStructure random_structure(Rng& rng, const Vocabulary& vocab, const StructureShape& shape) {
  PartialStructure s(vocab);
  const std::size_t n =
      shape.min_domain + pick(rng, shape.max_domain - shape.min_domain + 1);
  static const char* names[] = {"a", "b", "c0", "d0", "e", "h", "k", "m"};
  for (std::size_t i = 0; i < n; ++i) {
    s = s.with_element(i < std::size(names) ? names[i] : "e" + std::to_string(i));
  }
  const auto& dom = s.domain();
  auto all_tuples = [&](int arity) {
    std::vector<Tuple> out;
    if (dom.empty()) return out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    while (true) {
      Tuple t;
      for (auto i : idx) t.push_back(dom[i]);
      out.push_back(std::move(t));
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] == dom.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
    return out;
  };
  for (std::size_t r = 0; r < vocab.relations().size(); ++r) {
    const auto& sym = vocab.relations()[r];
    const bool total = sym.name == "Q" || sym.name == "S";
    if (total) s = s.with_mode(r, RelationMode::Total);
    for (auto& t : all_tuples(sym.arity)) {
      RelStatus st = coin(rng) ? RelStatus::Positive : RelStatus::Negative;
      if (!total && coin(rng, shape.undefined_rate)) st = RelStatus::Undefined;
      s = s.with_status(r, std::move(t), st);
    }
  }
  for (std::size_t f = 0; f < vocab.functions().size(); ++f) {
    for (auto& t : all_tuples(vocab.functions()[f].arity)) {
      if (coin(rng, shape.undefined_rate)) continue;
      s = s.with_function_entry(f, std::move(t), dom[pick(rng, dom.size())]);
    }
  }
  for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
    if (!dom.empty() && !coin(rng, shape.undefined_rate)) {
      s = s.with_constant(c, dom[pick(rng, dom.size())]);
    }
  }
  return s;
}

Assignment random_assignment(Rng& rng, const PartialStructure& s,
                             const std::vector<std::string>& variables) {
  Assignment g;
  if (s.domain().empty()) return g;
  for (const auto& v : variables) {
    if (coin(rng, 0.6)) g = g.with(v, s.domain()[pick(rng, s.domain().size())]);
  }
  return g;
}

PartialStructure random_mutation(Rng& rng, const PartialStructure& s) {
  const auto& dom = s.domain();
  const auto& rels = s.vocabulary().relations();
  const std::size_t op = pick(rng, 4);
  if (op == 0 || dom.empty()) return s.insert_element().first;
  if (op == 1) return s.delete_element(dom[pick(rng, dom.size())]);
  if (rels.empty()) return s;
  const std::size_t r = pick(rng, rels.size());
  Tuple t;
  for (int i = 0; i < rels[r].arity; ++i) t.push_back(dom[pick(rng, dom.size())]);
  return op == 2 ? s.insert_tuple(r, std::move(t)) : s.delete_tuple(r, std::move(t));
}

}  // namespace lgame::testing
