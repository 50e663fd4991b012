#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "lgame/tm.hpp"

namespace lgame {

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Agree: return "agree";
    case RowStatus::Disagree: return "disagree";
    case RowStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t CorrespondenceReport::count(RowStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [s](const auto& r) { return r.status == s; }));
}

RowStatus compare(const TMOutcome& machine, Outcome verdict) {
  std::optional<Outcome> expected;
  switch (machine.kind) {
    case TMOutcome::Kind::Accept: expected = Outcome::Verified; break;
    case TMOutcome::Kind::Reject: expected = Outcome::Falsified; break;
    case TMOutcome::Kind::CycleDetected: expected = Outcome::IndeterminateProven; break;
    case TMOutcome::Kind::Running: break;
  }
  if (!expected || verdict == Outcome::Unknown) return RowStatus::Inconclusive;
  return *expected == verdict ? RowStatus::Agree : RowStatus::Disagree;
}

CorrespondenceReport check_correspondence(const TuringMachine& tm, const Formula& phi,
                                          const std::vector<PartialStructure>& models,
                                          const CorrespondenceBudget& budget,
                                          const GameRules& rules) {
  const FormulaTable table = index_subformulas(phi);
  const bool exact = !phi.contains(FormulaKind::InsertElem);

  CorrespondenceReport report;
  report.rows.resize(models.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i; (i = next++) < models.size();) {
      try {
        auto& row = report.rows[i];
        row.encoding = encode_model(models[i]);
        row.machine = run_tm(tm, row.encoding, budget.machine_steps);
        const Position start = initial_position(models[i], Assignment{}, table);
        row.verdict = exact ? solve_exact(start, table, rules)
                            : solve_bounded(start, table, budget.solver_depth, rules);
        row.status = compare(row.machine, row.verdict.outcome);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(models.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

std::vector<PartialStructure> enumerate_models(const PartialStructure& shape,
                                               std::size_t max_size) {
  const Vocabulary& vocab = shape.vocabulary();
  PartialStructure blank(vocab);
  for (std::size_t r = 0; r < vocab.relations().size(); ++r) {
    blank = blank.with_mode(r, shape.relation(r).mode);
  }

  std::vector<PartialStructure> out;
  for (std::size_t n = 0; n <= max_size; ++n) {
    PartialStructure base = blank;
    for (std::size_t i = 0; i < n; ++i) {
      base = base.with_element(i < 26 ? std::string(1, static_cast<char>('a' + i))
                                      : "e" + std::to_string(i));
    }
    // Every (relation, tuple) slot with the statuses it may take.
    struct Slot {
      std::size_t relation;
      Tuple tuple;
      std::vector<RelStatus> choices;
    };
    std::vector<Slot> slots;
    for (std::size_t r = 0; r < vocab.relations().size(); ++r) {
      const int arity = vocab.relations()[r].arity;
      std::vector<RelStatus> choices{RelStatus::Positive, RelStatus::Negative};
      if (shape.relation(r).mode == RelationMode::Partial) choices.push_back(RelStatus::Undefined);
      if (n == 0) continue;
      Tuple t(static_cast<std::size_t>(arity), 0);
      while (true) {
        Tuple elems;
        for (auto i : t) elems.push_back(base.domain()[i]);
        slots.push_back({r, elems, choices});
        int pos = arity - 1;
        while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
      }
    }
    std::vector<std::size_t> pick(slots.size(), 0);
    while (true) {
      PartialStructure s = base;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        s = s.with_status(slots[k].relation, slots[k].tuple, slots[k].choices[pick[k]]);
      }
      out.push_back(std::move(s));
      std::size_t k = 0;
      while (k < slots.size() && ++pick[k] == slots[k].choices.size()) pick[k++] = 0;
      if (k == slots.size()) break;
    }
  }
  return out;
}

}  // namespace lgame
