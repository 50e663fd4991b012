#include <algorithm>
#include <stdexcept>

#include "lgame/cli.hpp"

namespace lgame::cli {

DeleteMiss parse_delete_miss(std::string_view s) {
  if (s == "lose") return DeleteMiss::Lose;
  if (s == "ignore") return DeleteMiss::Ignore;
  throw std::invalid_argument("delete-miss must be 'lose' or 'ignore'");
}

ClaimUnbound parse_claim_unbound(std::string_view s) {
  if (s == "neither") return ClaimUnbound::Neither;
  if (s == "lose") return ClaimUnbound::Lose;
  throw std::invalid_argument("claim-unbound must be 'neither' or 'lose'");
}

TupleDeletion parse_tuple_deletion(std::string_view s) {
  if (s == "chosen") return TupleDeletion::Chosen;
  if (s == "assigned") return TupleDeletion::Assigned;
  throw std::invalid_argument("tuple-deletion must be 'chosen' or 'assigned'");
}

Player parse_player(std::string_view s) {
  if (s == "eloise") return Player::Eloise;
  if (s == "abelard") return Player::Abelard;
  throw std::invalid_argument("role must be 'eloise' or 'abelard'");
}

Problem load_problem(const std::optional<std::string>& model_text, const std::string& formula,
                     const std::map<std::string, std::string>& assign, bool aux_implicit,
                     bool fresh_tuples_negative) {
  Vocabulary vocab;
  PartialStructure s;
  if (model_text) {
    Model m = parse_model(*model_text);
    vocab = std::move(m.vocabulary);
    s = std::move(m.structure);
  } else {
    s = PartialStructure(vocab);
  }
  Formula phi = (aux_implicit || !model_text) ? parse_formula_extending(formula, vocab)
                                              : parse_formula(formula, vocab);
  s = s.with_vocabulary(vocab).with_fresh_tuples_negative(fresh_tuples_negative);
  Assignment g;
  for (const auto& [var, name] : assign) {
    auto e = s.find_element(name);
    if (!e) throw std::invalid_argument("--assign: unknown element '" + name + "'");
    g = g.with(var, *e);
  }
  // A free variable spelled like a domain element denotes that element.
  const FormulaTable table = index_subformulas(phi);
  for (const auto& var : table.node(0).free_vars) {
    if (g.binds(var)) continue;
    if (auto e = s.find_element(var)) g = g.with(var, *e);
  }
  return Problem{std::move(s), std::move(g), std::move(phi)};
}

Verdict run_solver(const Position& start, const FormulaTable& table, const RunConfig& config) {
  const bool grows = table.root().contains(FormulaKind::InsertElem);
  if (config.mode == SolveMode::Bounded || (config.mode == SolveMode::Auto && grows)) {
    return solve_bounded(start, table, config.budget, config.rules);
  }
  return solve_exact(start, table, config.rules);
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Verified: return 10;
    case Outcome::Falsified: return 11;
    case Outcome::IndeterminateProven: return 20;
    case Outcome::Unknown: return 21;
  }
  return 70;
}

namespace {

Json tuple_names(const PartialStructure& s, const Tuple& t) {
  Json out = Json::array();
  for (Element e : t) out.push_back(s.element_name(e));
  return out;
}

constexpr std::size_t kMaxListedTuples = 4096;

}  // namespace

Json structure_json(const PartialStructure& s) {
  const auto& vocab = s.vocabulary();
  const auto& dom = s.domain();
  Json out;
  out["domain"] = Json::array();
  for (Element e : dom) out["domain"].push_back(s.element_name(e));

  out["relations"] = Json::array();
  for (std::size_t r = 0; r < vocab.relations().size(); ++r) {
    const auto& sym = vocab.relations()[r];
    const auto& table = s.relation(r);
    Json rel{{"name", sym.name},
             {"arity", sym.arity},
             {"mode", to_string(table.mode)},
             {"auxiliary", sym.kind == RelationKind::Auxiliary}};
    Json tuples = Json::array();
    std::size_t total = dom.empty() ? 0 : 1;
    for (int i = 0; i < sym.arity && total <= kMaxListedTuples; ++i) total *= dom.size();
    // Small tables list every tuple, so undefined ones are visible too.
    const bool complete = total <= kMaxListedTuples;
    if (complete && total > 0) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(sym.arity), 0);
      while (true) {
        Tuple t;
        for (auto i : idx) t.push_back(dom[i]);
        tuples.push_back({{"tuple", tuple_names(s, t)}, {"status", to_string(s.status(r, t))}});
        std::size_t pos = idx.size();
        while (pos > 0 && ++idx[pos - 1] == dom.size()) idx[--pos] = 0;
        if (pos == 0) break;
      }
    } else if (!complete) {
      for (const auto& t : table.positive) {
        tuples.push_back({{"tuple", tuple_names(s, t)}, {"status", "+"}});
      }
      for (const auto& t : table.negative) {
        tuples.push_back({{"tuple", tuple_names(s, t)}, {"status", "-"}});
      }
    }
    rel["complete"] = complete;
    rel["tuples"] = std::move(tuples);
    out["relations"].push_back(std::move(rel));
  }

  out["functions"] = Json::array();
  for (std::size_t f = 0; f < vocab.functions().size(); ++f) {
    Json entries = Json::array();
    for (const auto& [args, value] : s.function(f)) {
      entries.push_back({{"args", tuple_names(s, args)}, {"value", s.element_name(value)}});
    }
    out["functions"].push_back({{"name", vocab.functions()[f].name},
                                {"arity", vocab.functions()[f].arity},
                                {"entries", std::move(entries)}});
  }

  out["constants"] = Json::array();
  for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
    auto v = s.constant_value(c);
    out["constants"].push_back({{"name", vocab.constants()[c]},
                                {"value", v ? Json(s.element_name(*v)) : Json(nullptr)}});
  }
  return out;
}

Json choices_json(const Position& p, const FormulaTable& table, const GameRules& rules) {
  Json out = Json::array();
  auto legal = legal_moves(p, table, rules);
  if (const auto* moves = std::get_if<std::vector<Move>>(&legal)) {
    for (std::size_t i = 0; i < moves->size(); ++i) {
      const Move& m = (*moves)[i];
      out.push_back({{"index", i},
                     {"mover", to_string(m.mover)},
                     {"player", to_string(chooser(p, m.mover))},
                     {"description", describe_move(p, m, table)}});
    }
  }
  return out;
}

Json position_json(const Position& p, const FormulaTable& table, const GameRules& rules) {
  Json out = structure_json(p.structure);
  Json assignment = Json::object();
  for (const auto& [var, value] : p.assignment.bindings()) {
    assignment[var] = p.structure.contains(value) ? p.structure.element_name(value) : "?";
  }
  out["assignment"] = std::move(assignment);
  out["node"] = p.node;
  out["formula"] = print_highlighted(table, p.node);
  out["subformula"] = print_formula(table.formula(p.node));
  out["verifier"] = to_string(p.verifier);
  out["falsifier"] = to_string(opponent(p.verifier));
  out["hash"] = hash_hex(position_hash(p));
  auto legal = legal_moves(p, table, rules);
  if (const auto* t = std::get_if<Terminal>(&legal)) {
    out["terminal"] = {{"winner", to_string(t->winner)}};
  } else {
    out["terminal"] = nullptr;
  }
  return out;
}

Json trace_json(const Position& start, const Trace& trace, const FormulaTable& table,
                const GameRules& rules) {
  Json moves = Json::array();
  Position p = start;
  for (const auto& step : trace.steps) {
    auto legal = legal_moves(p, table, rules);
    const auto& options = std::get<std::vector<Move>>(legal);
    const auto index = static_cast<std::size_t>(
        std::find(options.begin(), options.end(), step.move) - options.begin());
    moves.push_back({{"choice", index},
                     {"player", to_string(chooser(p, step.move.mover))},
                     {"mover", to_string(step.move.mover)},
                     {"description", describe_move(p, step.move, table)},
                     {"from", hash_hex(step.from)},
                     {"to", hash_hex(step.to)}});
    p = apply_move(p, step.move, table, rules);
  }
  return {{"start", hash_hex(trace.start)},
          {"terminal", to_string(trace.terminal.winner)},
          {"moves", std::move(moves)}};
}

Json verdict_json(const Verdict& v, const Position& start, const FormulaTable& table,
                  const GameRules& rules, std::string_view solver) {
  Json out;
  out["outcome"] = to_string(v.outcome);
  out["depth"] = v.depth ? Json(*v.depth) : Json(nullptr);
  out["solver"] = solver;
  out["budget"] = v.budget_used;
  out["formula"] = print_formula(table.root());
  out["start"] = hash_hex(position_hash(start));
  out["trace"] = v.trace ? trace_json(start, *v.trace, table, rules) : Json(nullptr);
  return out;
}

Json truth_json(const TruthStatus& t) { return {{"plus", t.plus}, {"minus", t.minus}}; }

Json tm_outcome_json(const TMOutcome& o) {
  Json out{{"outcome", to_string(o.kind)}, {"steps", o.steps}};
  if (o.kind == TMOutcome::Kind::CycleDetected) {
    out["cycleStart"] = o.cycle_start;
    out["cycleLength"] = o.cycle_length;
  }
  return out;
}

Position replay_choices(const Position& start, const Json& moves, const FormulaTable& table,
                        const GameRules& rules) {
  Position p = start;
  for (const auto& m : moves) {
    auto legal = legal_moves(p, table, rules);
    const auto* options = std::get_if<std::vector<Move>>(&legal);
    const auto index = m.at("choice").get<std::size_t>();
    if (!options || index >= options->size()) throw IllegalMove("recorded choice is not legal");
    p = detail::apply_unchecked(p, (*options)[index], table, rules);
  }
  return p;
}

}  // namespace lgame::cli
