// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero on any
// failure. Seeds are fixed so runs are reproducible.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "lgame/eval.hpp"
#include "lgame/solver.hpp"
#include "lgame/tm.hpp"

using namespace lgame;
namespace lt = lgame::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, const std::function<Result()>& body) {
  const auto t0 = Clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("%s  %-34s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str(), secs);
  std::fflush(stdout);
  if (!r.pass) ++failures;
}

// First counterexample seen, for the report line.
struct Mismatches {
  std::size_t count = 0;
  std::string first;
  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  std::string summary(std::size_t checked, const char* noun) const {
    std::ostringstream out;
    out << checked << ' ' << noun << ", " << count << " mismatches";
    if (count) out << "; first: " << first;
    return out.str();
  }
};

std::string instance_text(const PartialStructure& s, const Formula& phi) {
  std::string model = print_model(s);
  std::replace(model.begin(), model.end(), '\n', ' ');
  return "[" + print_formula(phi) + "] on [" + model + "]";
}

const std::vector<std::string> kVars{"x", "y", "z"};

Result compositional_matches_game() {
  constexpr std::size_t kInstances = 5000;
  constexpr double kSeconds = 60.0;
  lt::Rng rng(20240501);
  const auto vocab = lt::test_vocabulary();
  lt::FormulaShape shape;  // first-order constructors only
  shape.max_size = 8;
  Mismatches bad;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < kInstances; ++i) {
    const auto s = lt::random_structure(rng, vocab, {.min_domain = 0, .max_domain = 4});
    const auto g = lt::random_assignment(rng, s, kVars);
    const auto phi = lt::random_formula(rng, vocab, shape);
    const TruthStatus t = evaluate(s, g, phi);
    const Outcome o = solve_exact(s, g, phi).outcome;
    if (t.plus != (o == Outcome::Verified) || t.minus != (o == Outcome::Falsified)) {
      bad.add(instance_text(s, phi) + " plus=" + std::to_string(t.plus) +
              " minus=" + std::to_string(t.minus) + " game=" + std::string(to_string(o)));
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool fast = secs < kSeconds;
  return {bad.count == 0 && fast,
          bad.summary(kInstances, "instances") + (fast ? "" : ", over the 60 s limit")};
}

Result self_reference_indeterminate() {
  const Model shape = parse_model("domain:\nrelation P/1 partial\nrelation E/2 total\n");
  const auto models = enumerate_models(shape.structure, 3);
  Mismatches bad;
  for (const char* text : {"claim C0. C0", "claim C0. not C0"}) {
    const Formula phi = parse_formula(text, shape.vocabulary);
    for (const auto& s : models) {
      const Outcome o = solve_exact(s, {}, phi).outcome;
      if (o != Outcome::IndeterminateProven) {
        bad.add(instance_text(s, phi) + " -> " + std::string(to_string(o)));
      }
    }
  }
  return {bad.count == 0 && models.size() == 13975,
          bad.summary(2 * models.size(), "solves over models of size 0-3")};
}

Result weak_operator_truth_table() {
  const Model m = parse_model("domain: p n u\nrelation R/1 partial\n  + (p)\n  - (n)\n");
  const auto at = [&](const char* name) { return Assignment{{"x", *m.structure.find_element(name)}}; };
  struct Row {
    const char* formula;
    const char* element;
    TruthStatus expected;
  };
  const Row rows[] = {
      {"R(x)", "p", {true, false}},      {"R(x)", "n", {false, true}},
      {"R(x)", "u", {false, false}},     {"det R(x)", "p", {true, false}},
      {"det R(x)", "n", {true, false}},  {"det R(x)", "u", {false, true}},
      {"wnot R(x)", "p", {false, true}}, {"wnot R(x)", "n", {true, false}},
      {"wnot R(x)", "u", {true, true}},
  };
  int ok = 0;
  std::string first;
  for (const auto& r : rows) {
    const TruthStatus t = evaluate(m.structure, at(r.element), parse_formula(r.formula, m.vocabulary));
    if (t == r.expected) {
      ++ok;
    } else if (first.empty()) {
      first = std::string("; first: ") + r.formula + " at " + r.element;
    }
  }
  return {ok == 9, std::to_string(ok) + "/9 entries exact" + first};
}

// Random game instances over the full language.
struct GameInstance {
  PartialStructure s;
  Assignment g;
  Formula phi;
};

GameInstance random_game(lt::Rng& rng, const Vocabulary& vocab, std::size_t max_size,
                         std::size_t max_domain) {
  lt::FormulaShape shape;
  shape.max_size = max_size;
  shape.element_ops = shape.tuple_ops = shape.claims = true;
  shape.function_terms = false;
  auto s = lt::random_structure(rng, vocab, {.min_domain = 0, .max_domain = max_domain});
  auto g = lt::random_assignment(rng, s, kVars);
  return {s, g, lt::random_formula(rng, vocab, shape)};
}

Result bounded_matches_brute_force() {
  constexpr std::size_t kInstances = 1000;
  constexpr unsigned kDepth = 10;
  lt::Rng rng(777);
  const auto vocab = lt::game_vocabulary();
  Mismatches unsound, disagree;
  std::size_t conclusive = 0;
  for (std::size_t i = 0; i < kInstances; ++i) {
    const auto inst = random_game(rng, vocab, 7, 3);
    const auto table = index_subformulas(inst.phi);
    const auto start = initial_position(inst.s, inst.g, table);
    const Outcome b = solve_bounded(start, table, kDepth).outcome;
    const BruteOutcome brute = brute_force_enumerate(start, table, kDepth);
    const BruteOutcome expected = b == Outcome::Verified    ? BruteOutcome::VerifierWin
                                  : b == Outcome::Falsified ? BruteOutcome::FalsifierWin
                                                            : BruteOutcome::NeitherYet;
    const std::string what = instance_text(inst.s, inst.phi) + " bounded=" +
                             std::string(to_string(b)) + " brute=" +
                             std::string(to_string(brute));
    if (b != Outcome::Unknown) {
      ++conclusive;
      if (brute != expected) unsound.add(what);
    } else if (brute != expected) {
      disagree.add(what);
    }
  }
  std::string detail = unsound.summary(kInstances, "instances") + " (unsound), " +
                       std::to_string(disagree.count) + " missed wins, " +
                       std::to_string(conclusive) + " conclusive";
  if (disagree.count) detail += "; first missed: " + disagree.first;
  return {unsound.count == 0 && disagree.count == 0, detail};
}

Result monotonicity_and_duality() {
  constexpr std::size_t kInstances = 1000;
  constexpr unsigned kMaxBudget = 8;
  lt::Rng rng(4242);
  const auto vocab = lt::game_vocabulary();
  Mismatches mono, dual;
  std::size_t conclusive = 0;
  for (std::size_t i = 0; i < kInstances; ++i) {
    const auto inst = random_game(rng, vocab, 7, 3);
    const auto table = index_subformulas(inst.phi);
    const auto start = initial_position(inst.s, inst.g, table);

    std::optional<Verdict> first;  // earliest conclusive verdict
    for (unsigned b = 0; b <= kMaxBudget; ++b) {
      const Verdict v = solve_bounded(start, table, b);
      if (!first) {
        if (v.outcome != Outcome::Unknown) first = v;
        continue;
      }
      if (v.outcome != first->outcome || !v.depth || *v.depth > *first->depth) {
        mono.add(instance_text(inst.s, inst.phi) + " budget " + std::to_string(b));
        break;
      }
    }
    conclusive += first.has_value();

    // solve(¬φ) needs one extra move for the role swap.
    const unsigned b = std::uniform_int_distribution<unsigned>(0, kMaxBudget)(rng);
    const Outcome pos = solve(inst.s, inst.g, inst.phi, b).outcome;
    const Outcome neg = solve(inst.s, inst.g, Formula::negation(inst.phi), b + 1).outcome;
    const bool ok = (pos == Outcome::Verified) == (neg == Outcome::Falsified) &&
                    (pos == Outcome::Falsified) == (neg == Outcome::Verified) &&
                    (pos == Outcome::IndeterminateProven) == (neg == Outcome::IndeterminateProven);
    if (!ok) {
      dual.add(instance_text(inst.s, inst.phi) + " phi=" + std::string(to_string(pos)) +
               " not-phi=" + std::string(to_string(neg)));
    }
  }
  std::ostringstream detail;
  detail << "monotonicity: " << mono.summary(kInstances, "instances") << " (" << conclusive
         << " conclusive); duality: " << dual.summary(kInstances, "instances");
  return {mono.count == 0 && dual.count == 0, detail.str()};
}

// Every element mentioned anywhere in the structure.
bool mentions(const PartialStructure& s, Element u) {
  const Vocabulary& v = s.vocabulary();
  auto in = [u](const Tuple& t) { return std::find(t.begin(), t.end(), u) != t.end(); };
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    for (const auto& t : s.relation(r).positive) if (in(t)) return true;
    for (const auto& t : s.relation(r).negative) if (in(t)) return true;
  }
  for (std::size_t f = 0; f < v.functions().size(); ++f) {
    for (const auto& [args, value] : s.function(f)) if (in(args) || value == u) return true;
  }
  for (std::size_t c = 0; c < v.constants().size(); ++c) {
    if (s.constant_value(c) == u) return true;
  }
  return false;
}

std::optional<std::string> broken_invariant(const PartialStructure& s) {
  const Vocabulary& v = s.vocabulary();
  for (std::size_t r = 0; r < v.relations().size(); ++r) {
    const auto& table = s.relation(r);
    for (const auto& t : table.positive) {
      if (table.negative.contains(t)) return "positive and negative overlap";
      for (Element e : t) if (!s.contains(e)) return "tuple outside the domain";
    }
    for (const auto& t : table.negative) {
      for (Element e : t) if (!s.contains(e)) return "tuple outside the domain";
    }
    if (table.mode == RelationMode::Total && !table.negative.empty()) {
      return "total relation with explicit negatives";
    }
  }
  return std::nullopt;
}

Tuple random_tuple(lt::Rng& rng, const PartialStructure& s, int arity) {
  Tuple t;
  for (int i = 0; i < arity; ++i) {
    t.push_back(s.domain()[std::uniform_int_distribution<std::size_t>(0, s.domain().size() - 1)(rng)]);
  }
  return t;
}

Result mutation_fuzz() {
  constexpr std::size_t kSequences = 1000;
  constexpr int kSteps = 25;
  lt::Rng rng(99);
  const auto vocab = lt::test_vocabulary();
  Mismatches bad;
  std::size_t mutations = 0;
  for (std::size_t seq = 0; seq < kSequences; ++seq) {
    PartialStructure s = lt::random_structure(rng, vocab, {});
    for (int step = 0; step < kSteps; ++step) {
      const PartialStructure before = s;
      const std::string snapshot = print_model(s);
      const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
      std::string label;
      if (kind == 0 || s.domain().empty()) {
        auto [next, u] = s.insert_element();
        label = "insert_element";
        if (mentions(next, u)) bad.add("isolation: new element is referenced");
        if (!next.contains(u) || next.domain().size() != s.domain().size() + 1) {
          bad.add("insert_element did not add exactly one element");
        }
        s = std::move(next);
      } else if (kind == 1) {
        const Element u = random_tuple(rng, s, 1)[0];
        label = "delete_element";
        s = s.delete_element(u);
        if (s.contains(u) || mentions(s, u)) bad.add("cascade: deleted element still referenced");
      } else {
        const auto r = std::uniform_int_distribution<std::size_t>(0, vocab.relations().size() - 1)(rng);
        const Tuple t = random_tuple(rng, s, vocab.relations()[r].arity);
        if (kind == 2) {
          label = "insert_tuple";
          s = s.insert_tuple(r, t);
          if (s.status(r, t) != RelStatus::Positive) bad.add("insert_tuple left tuple non-positive");
        } else {
          label = "delete_tuple";
          s = s.delete_tuple(r, t);
          if (s.status(r, t) == RelStatus::Positive) bad.add("delete_tuple left tuple positive");
        }
      }
      ++mutations;
      if (print_model(before) != snapshot) bad.add("persistence: input changed by " + label);
      if (auto broken = broken_invariant(s)) bad.add(*broken + " after " + label);
    }
  }
  return {bad.count == 0, bad.summary(kSequences, "sequences") + " over " +
                              std::to_string(mutations) + " mutations"};
}

Result curated_correspondence() {
  std::size_t pairs = 0, rows = 0, diverge_pairs = 0;
  Mismatches bad;
  for (const auto& pair : curated_pairs()) {
    const Model shape = parse_model("domain:\n" + pair.vocabulary);
    const TuringMachine tm = parse_machine(pair.machine);
    const Formula phi = parse_formula(pair.formula, shape.vocabulary);
    const auto models = enumerate_models(shape.structure, std::max<std::size_t>(pair.max_size, 3));
    const auto report = check_correspondence(tm, phi, models);
    ++pairs;
    rows += report.rows.size();
    bool diverges = !report.rows.empty();
    for (const auto& r : report.rows) {
      if (r.status != RowStatus::Agree) {
        bad.add(pair.name + " on " + r.encoding + ": " + std::string(to_string(r.machine.kind)) +
                " vs " + std::string(to_string(r.verdict.outcome)));
      }
      diverges &= r.machine.kind == TMOutcome::Kind::CycleDetected &&
                  r.verdict.outcome == Outcome::IndeterminateProven;
    }
    diverge_pairs += diverges;
  }
  std::ostringstream detail;
  detail << pairs << " pairs, " << rows << " rows, " << bad.count << " not in agreement, "
         << diverge_pairs << " diverge/indeterminate pair(s)";
  if (bad.count) detail << "; first: " << bad.first;
  return {bad.count == 0 && pairs >= 3 && diverge_pairs >= 1, detail.str()};
}

Result round_trips() {
  constexpr std::size_t kFormulas = 10000;
  constexpr std::size_t kModels = 1000;
  lt::Rng rng(31337);
  const auto vocab = lt::test_vocabulary();
  Mismatches parse_bad, enc_bad;

  for (std::size_t i = 0; i < kFormulas; ++i) {
    lt::FormulaShape shape;
    shape.max_size = std::uniform_int_distribution<std::size_t>(1, 14)(rng);
    const int mix = std::uniform_int_distribution<int>(0, 1)(rng);
    shape.weak_ops = mix == 0;
    shape.element_ops = shape.tuple_ops = shape.claims = mix == 1;
    shape.unary_tuple_ops = false;
    const Formula phi = lt::random_formula(rng, vocab, shape);
    const std::string text = print_formula(phi);
    try {
      if (!(parse_formula(text, vocab) == phi)) parse_bad.add(text);
    } catch (const SyntaxError& e) {
      parse_bad.add(text + " (" + e.what() + ")");
    }
  }

  for (std::size_t i = 0; i < kModels; ++i) {
    const auto s = lt::random_structure(rng, vocab, {});
    const std::string enc = encode_model(s);
    if (encode_model(s) != enc) enc_bad.add("repeat call");
    if (encode_model(parse_model(print_model(s)).structure) != enc) enc_bad.add("print/parse");

    // Same content, table entries supplied in a shuffled order.
    PartialStructure rebuilt(s.vocabulary());
    for (Element e : s.domain()) rebuilt = rebuilt.with_element(s.element_name(e));
    std::vector<std::function<PartialStructure(const PartialStructure&)>> edits;
    auto elem = [&](Element e) { return *rebuilt.find_element(s.element_name(e)); };
    auto remap = [&](const Tuple& t) {
      Tuple out;
      for (Element e : t) out.push_back(elem(e));
      return out;
    };
    for (std::size_t r = 0; r < vocab.relations().size(); ++r) {
      rebuilt = rebuilt.with_mode(r, s.relation(r).mode);
      for (const auto& t : s.relation(r).positive) {
        edits.push_back([=](const PartialStructure& x) {
          return x.with_status(r, remap(t), RelStatus::Positive);
        });
      }
      for (const auto& t : s.relation(r).negative) {
        edits.push_back([=](const PartialStructure& x) {
          return x.with_status(r, remap(t), RelStatus::Negative);
        });
      }
    }
    for (std::size_t f = 0; f < vocab.functions().size(); ++f) {
      for (const auto& [args, value] : s.function(f)) {
        const Tuple a = remap(args);
        const Element v = elem(value);
        edits.push_back([=](const PartialStructure& x) { return x.with_function_entry(f, a, v); });
      }
    }
    for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
      if (auto v = s.constant_value(c)) {
        const Element e = elem(*v);
        edits.push_back([=](const PartialStructure& x) { return x.with_constant(c, e); });
      }
    }
    std::shuffle(edits.begin(), edits.end(), rng);
    for (const auto& edit : edits) rebuilt = edit(rebuilt);
    if (encode_model(rebuilt) != enc) enc_bad.add("shuffled construction of " + enc);
  }

  std::string detail = "parse: " + parse_bad.summary(kFormulas, "formulas") +
                       "; encode: " + enc_bad.summary(kModels, "models");
  return {parse_bad.count == 0 && enc_bad.count == 0, detail};
}

}  // namespace

int main() {
  criterion("compositional = game (5000)", compositional_matches_game);
  criterion("self-reference indeterminate", self_reference_indeterminate);
  criterion("wnot/det truth table", weak_operator_truth_table);
  criterion("bounded vs brute force (depth 10)", bounded_matches_brute_force);
  criterion("monotonicity and duality", monotonicity_and_duality);
  criterion("mutation invariant fuzz", mutation_fuzz);
  criterion("curated machine/formula suite", curated_correspondence);
  criterion("parser and encoding round trips", round_trips);
  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
