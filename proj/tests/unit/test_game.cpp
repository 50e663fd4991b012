#include <doctest.h>

#include "generators.hpp"
#include "lgame/game.hpp"

using namespace lgame;

namespace {

struct Game {
  Model m;
  FormulaTable table;
  Position start;
  GameRules rules;

  Game(std::string_view model_text, std::string_view formula, Assignment g = {}, GameRules r = {})
      : m(parse_model(model_text)),
        table(index_subformulas(parse_formula(formula, m.vocabulary))),
        start(initial_position(m.structure, g, table)),
        rules(r) {}

  std::vector<Move> moves(const Position& p) const {
    auto l = legal_moves(p, table, rules);
    REQUIRE(std::holds_alternative<std::vector<Move>>(l));
    return std::get<std::vector<Move>>(l);
  }
  Winner terminal(const Position& p) const {
    auto l = legal_moves(p, table, rules);
    REQUIRE(std::holds_alternative<Terminal>(l));
    return std::get<Terminal>(l).winner;
  }
  Position play(const Position& p, std::size_t i) const { return apply_move(p, moves(p)[i], table, rules); }
  Element el(std::string_view n) const { return *m.structure.find_element(n); }
};

}  // namespace

TEST_CASE("initial position") {
  Game g("domain: a\n", "exists x. x = x");
  CHECK(g.start.node == 0);
  CHECK(g.start.verifier == Player::Eloise);
  CHECK(g.start.assignment.empty());
  Game h("domain: a\n", "x = x", Assignment{{"x", 0}});
  CHECK(h.start.assignment.get("x") == 0u);
  CHECK_THROWS_AS(legal_moves(g.start, h.table), GameError);
}

TEST_CASE("moves of each node kind") {
  Game g("domain: a b\nrelation R/1\n", "exists x. R(x)");
  auto ms = g.moves(g.start);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0] == Move{Mover::Verifier, PickWitness{g.el("a")}});
  CHECK(ms[1] == Move{Mover::Verifier, PickWitness{g.el("b")}});

  Game f("domain: a b\nrelation R/1\n", "forall x. (R(x) & not R(x))");
  CHECK(f.moves(f.start)[0].mover == Mover::Falsifier);
  auto p = f.play(f.start, 0);
  CHECK(f.moves(p)[0] == Move{Mover::Falsifier, PickDisjunct{Side::Left}});

  Game c("domain: a\n", "claim C0. C0");
  auto q = c.play(c.start, 0);
  ms = c.moves(q);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0] == Move{Mover::Verifier, PickClaimBinder{0}});
  CHECK(c.play(q, 0) == c.start);

  Game t("domain:\nrelation R/1\n", "insertT R(x). R(x)");
  CHECK(t.terminal(t.start) == Winner::Abelard);
  Game t2("domain:\nrelation R/1\n", "not deleteT R(x). R(x)");
  CHECK(t2.terminal(t2.play(t2.start, 0)) == Winner::Eloise);
}

TEST_CASE("unbound claims and deletions") {
  Game c("domain: a\n", "C3");
  CHECK(c.terminal(c.start) == Winner::Neither);
  Game c2("domain: a\n", "not C3", {}, GameRules{.claim_unbound = ClaimUnbound::Lose});
  CHECK(c2.terminal(c2.play(c2.start, 0)) == Winner::Eloise);

  Game d("domain: a\n", "delete x. exists y. y = y");
  CHECK(d.terminal(d.start) == Winner::Abelard);
  Game d2("domain: a\n", "delete x. exists y. y = y", {},
          GameRules{.delete_miss = DeleteMiss::Ignore});
  auto p = d2.play(d2.start, 0);
  CHECK(p.structure.domain().size() == 1);
}

TEST_CASE("negation swaps roles") {
  Game g("domain: a\n", "not not x = x");
  auto p = g.play(g.start, 0);
  CHECK(p.verifier == Player::Abelard);
  CHECK(g.moves(g.start)[0].mover == Mover::Forced);
  CHECK(g.play(p, 0).verifier == Player::Eloise);
}

TEST_CASE("deleting an element drops every binding to it") {
  Game g("domain: a b\nrelation R/2\n + (a,b)\n", "exists x. exists y. delete x. R(y,y)");
  auto p = g.play(g.play(g.start, 0), 0);  // x := a, y := a
  CHECK(p.assignment.size() == 2);
  p = g.play(p, 0);
  CHECK(p.assignment.empty());
  CHECK(p.structure.domain() == std::vector<Element>{g.el("b")});
  CHECK(p.structure.relation(0).positive.empty());
  CHECK(g.terminal(p) == Winner::Neither);
}

TEST_CASE("tuple operators bind then modify") {
  Game g("domain: a b\nrelation R/2\n - (a,b)\n", "insertT R(x,y). R(x,y)");
  auto ms = g.moves(g.start);
  CHECK(ms.size() == 4);
  auto p = g.play(g.start, 1);  // (a,b)
  CHECK(p.assignment.get("x") == g.el("a"));
  CHECK(p.assignment.get("y") == g.el("b"));
  CHECK(p.structure.status(0, Tuple{g.el("a"), g.el("b")}) == RelStatus::Positive);
  CHECK(g.terminal(p) == Winner::Eloise);

  Game h("domain: a\nrelation R/1\n + (a)\n", "exists x. deleteT R(x). R(x)", {},
         GameRules{.tuple_deletion = TupleDeletion::Assigned});
  auto q = h.play(h.start, 0);
  CHECK(h.moves(q)[0].mover == Mover::Forced);
  q = h.play(q, 0);
  CHECK(q.structure.status(0, Tuple{h.el("a")}) == RelStatus::Negative);
  Game h2("domain: a\nrelation R/1\n", "deleteT R(x). R(x)", {},
          GameRules{.tuple_deletion = TupleDeletion::Assigned});
  CHECK(h2.terminal(h2.start) == Winner::Abelard);
}

TEST_CASE("insertion keeps old tables") {
  Game g("domain: a\nrelation R/2\n + (a,a)\n", "insert x. R(x,x)");
  auto p = g.play(g.start, 0);
  CHECK(p.structure.relation(0) == g.start.structure.relation(0));
  CHECK(p.structure.domain().size() == 2);
  CHECK(g.terminal(p) == Winner::Neither);
}

TEST_CASE("atom adjudication") {
  Game g("domain: a b\nrelation R/1\n + (a)\n - (b)\n", "R(x)", Assignment{{"x", 0}});
  CHECK(g.terminal(g.start) == Winner::Eloise);
  Game h("domain: a b\nrelation R/1\n + (a)\n - (b)\n", "not R(x)", Assignment{{"x", 1}});
  CHECK(h.terminal(h.play(h.start, 0)) == Winner::Eloise);
  Game k("domain: a b\nrelation R/1\n + (a)\n - (b)\n", "not R(x)", Assignment{{"x", 0}});
  CHECK(k.terminal(k.play(k.start, 0)) == Winner::Abelard);
  Game u("domain: a\nrelation R/1\n", "R(y)");
  CHECK(u.terminal(u.start) == Winner::Neither);
  Game e("domain: a b\n", "x = y", Assignment{{"x", 0}, {"y", 1}});
  CHECK(e.terminal(e.start) == Winner::Abelard);
}

TEST_CASE("illegal moves are rejected") {
  Game g("domain: a\n", "exists x. x = x");
  CHECK_THROWS_AS(apply_move(g.start, Move{Mover::Verifier, PickWitness{7}}, g.table), IllegalMove);
  CHECK_THROWS_AS(apply_move(g.start, Move{Mover::Forced, Descend{}}, g.table), IllegalMove);
  auto p = g.play(g.start, 0);
  CHECK_THROWS_AS(apply_move(p, Move{Mover::Forced, Descend{}}, g.table), IllegalMove);
}

TEST_CASE("game formulas exclude wnot and det") {
  CHECK_THROWS_AS(check_game_formula(Formula::weak_negation(Formula::claim_atom(0))), GameError);
  CHECK_NOTHROW(check_game_formula(Formula::claim(0, Formula::claim_atom(0))));
}

TEST_CASE("canonical keys identify positions") {
  Game g("domain: a b\n", "exists x. exists y. x = y");
  auto p1 = g.play(g.play(g.start, 0), 1);
  auto p2 = g.play(g.play(g.start, 0), 1);
  auto p3 = g.play(g.play(g.start, 1), 0);
  CHECK(canonical_key(p1) == canonical_key(p2));
  CHECK(canonical_key(p1) != canonical_key(p3));
  CHECK(hash_hex(position_hash(p1)).size() == 16);
}

TEST_CASE("random plays respect the engine invariants") {
  testing::Rng rng(17);
  const auto v = testing::game_vocabulary();
  testing::FormulaShape shape;
  shape.max_size = 9;
  shape.element_ops = shape.tuple_ops = shape.claims = true;
  shape.function_terms = false;
  for (int i = 0; i < 1500; ++i) {
    const auto s = testing::random_structure(rng, v, {.max_domain = 3});
    const auto phi = testing::random_formula(rng, v, shape);
    const auto table = index_subformulas(phi);
    Position p = initial_position(s, {}, table);
    Trace trace{position_hash(p), {}, {Winner::Neither}};
    int negations = 0;
    bool ended = false;
    for (int step = 0; step < 30; ++step) {
      auto legal = legal_moves(p, table);
      if (auto* t = std::get_if<Terminal>(&legal)) {
        trace.terminal = *t;
        ended = true;
        break;
      }
      const auto& moves = std::get<std::vector<Move>>(legal);
      REQUIRE_FALSE(moves.empty());
      const auto kind = table.formula(p.node).kind();
      if (moves.front().mover == Mover::Forced) CHECK(moves.size() == 1);
      const std::size_t cap = std::max<std::size_t>(
          {2, p.structure.domain().size() * p.structure.domain().size(), table.size()});
      CHECK(moves.size() <= cap);
      const auto& m = moves[rng() % moves.size()];
      Position next = apply_move(p, m, table);
      if (kind == FormulaKind::Not) ++negations;
      CHECK((next.verifier == Player::Eloise) == (negations % 2 == 0));
      const auto before = p.structure.domain().size(), after = next.structure.domain().size();
      if (kind == FormulaKind::InsertElem) {
        CHECK(after == before + 1);
      } else if (kind == FormulaKind::DeleteElem) {
        CHECK(after + 1 == before);
      } else {
        CHECK(after == before);
      }
      for (const auto& [var, e] : next.assignment.bindings()) CHECK(next.structure.contains(e));
      trace.steps.push_back({position_hash(p), m, position_hash(next)});
      p = std::move(next);
    }
    if (ended) {
      CHECK(replay_trace(initial_position(s, {}, table), trace, table) == trace.terminal);
    }
  }
}
