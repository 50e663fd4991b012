#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lgame/http.hpp"

namespace lgame::cli {

namespace {

constexpr int kUsage = 64;
constexpr int kDataError = 65;
constexpr int kInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct ProblemOptions {
  std::string model_path;
  std::string formula;
  std::vector<std::string> assign;
  bool aux_implicit = false;
  std::string delete_miss = "lose";
  std::string claim_unbound = "neither";
  std::string tuple_deletion = "chosen";
  std::string fresh_status = "undefined";
  bool json = false;

  void add_to(CLI::App* app, bool rules) {
    app->add_option("-m,--model", model_path, "Model file");
    app->add_option("-f,--formula", formula, "Formula text")->required();
    app->add_option("--assign", assign, "Initial assignment entry var=element")
        ->type_name("VAR=ELEM");
    app->add_flag("--aux-implicit", aux_implicit,
                  "Treat relations missing from the model as auxiliary");
    if (rules) {
      app->add_option("--delete-miss", delete_miss,
                      "Deleting an unbound variable: lose (default) or ignore")
          ->check(CLI::IsMember({"lose", "ignore"}));
      app->add_option("--claim-unbound", claim_unbound,
                      "Claim atom without a binder: neither (default) or lose")
          ->check(CLI::IsMember({"neither", "lose"}));
      app->add_option("--tuple-deletion", tuple_deletion,
                      "Tuple removed by deleteT: chosen (default) or assigned")
          ->check(CLI::IsMember({"chosen", "assigned"}));
      app->add_option("--fresh-status", fresh_status,
                      "Status of unlisted tuples with inserted elements: undefined or negative")
          ->check(CLI::IsMember({"undefined", "negative"}));
    }
    app->add_flag("--json", json, "Structured output");
  }

  Problem load() const {
    std::map<std::string, std::string> g;
    for (const auto& a : assign) {
      auto eq = a.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == a.size()) {
        throw UsageError("--assign expects VAR=ELEMENT, got '" + a + "'");
      }
      g[a.substr(0, eq)] = a.substr(eq + 1);
    }
    std::optional<std::string> model;
    if (!model_path.empty()) model = read_file(model_path);
    return load_problem(model, formula, g, aux_implicit, fresh_status == "negative");
  }

  RunConfig config(unsigned budget) const {
    RunConfig c;
    c.rules.delete_miss = parse_delete_miss(delete_miss);
    c.rules.claim_unbound = parse_claim_unbound(claim_unbound);
    c.rules.tuple_deletion = parse_tuple_deletion(tuple_deletion);
    c.fresh_tuples_negative = fresh_status == "negative";
    c.budget = budget;
    return c;
  }
};

void print_trace_text(std::ostream& out, const Json& trace) {
  out << "play:\n";
  for (const auto& m : trace["moves"]) {
    out << "  " << m["player"].get<std::string>() << ": " << m["description"].get<std::string>()
        << '\n';
  }
  out << "  ends: " << trace["terminal"].get<std::string>() << " wins\n";
}

int run_check(const ProblemOptions& o, std::ostream& out) {
  const Problem p = o.load();
  const TruthStatus t = evaluate(p.structure, p.assignment, p.formula);
  if (o.json) {
    out << truth_json(t).dump(2) << '\n';
  } else {
    out << "plus=" << (t.plus ? "true" : "false") << " minus=" << (t.minus ? "true" : "false")
        << '\n';
  }
  return 0;
}

int run_solve(const ProblemOptions& o, unsigned budget, bool exact, bool bounded,
              bool show_trace, std::ostream& out) {
  const Problem p = o.load();
  check_game_formula(p.formula);
  RunConfig config = o.config(budget);
  if (exact && bounded) throw UsageError("--exact and --bounded are mutually exclusive");
  config.mode = exact ? SolveMode::Exact : bounded ? SolveMode::Bounded : SolveMode::Auto;
  if (config.budget < 1) throw UsageError("--budget must be at least 1");

  const FormulaTable table = index_subformulas(p.formula);
  const Position start = initial_position(p.structure, p.assignment, table);
  Verdict v;
  try {
    v = run_solver(start, table, config);
  } catch (const UnsupportedFragment& e) {
    throw UsageError(e.what());
  }
  const bool used_exact = config.mode == SolveMode::Exact ||
                          (config.mode == SolveMode::Auto &&
                           !p.formula.contains(FormulaKind::InsertElem));
  const Json j = verdict_json(v, start, table, config.rules, used_exact ? "exact" : "bounded");
  if (o.json) {
    out << j.dump(2) << '\n';
  } else {
    out << to_string(v.outcome) << '\n';
    if (v.depth) out << "depth: " << *v.depth << '\n';
    out << (used_exact ? "positions: " : "depth searched: ") << v.budget_used << '\n';
    if (show_trace && v.trace) print_trace_text(out, j["trace"]);
  }
  return exit_code(v.outcome);
}

void print_position(std::ostream& out, const Session& s) {
  const Position& p = s.position();
  out << "formula: " << print_highlighted(s.table(), p.node) << '\n';
  std::istringstream model(print_model(p.structure));
  for (std::string line; std::getline(model, line);) out << "  | " << line << '\n';
  out << "assignment:";
  if (p.assignment.empty()) out << " (empty)";
  for (const auto& [var, value] : p.assignment.bindings()) {
    out << ' ' << var << '=' << (p.structure.contains(value) ? p.structure.element_name(value) : "?");
  }
  out << "\nverifier: " << to_string(p.verifier) << '\n';
}

int run_play(const ProblemOptions& o, const std::string& role, unsigned budget,
             std::size_t max_moves, std::istream& in, std::ostream& out) {
  const Problem p = o.load();
  Session s(p, parse_player(role), o.config(budget));
  out << "You play " << role << ". Enter a choice number, :hint, :help or :quit.\n";
  while (true) {
    for (const auto& step : s.engine_turns()) {
      out << "engine (" << to_string(step.player) << "): " << step.description << '\n';
    }
    if (auto t = s.terminal()) {
      print_position(out, s);
      if (t->winner == Winner::Neither) {
        out << "play over: neither player wins\n";
      } else {
        out << "play over: " << to_string(t->winner) << " wins\n";
      }
      return 0;
    }
    if (s.history().size() >= max_moves) {
      out << "move limit reached after " << s.history().size() << " moves; no winner yet\n";
      return 0;
    }
    print_position(out, s);
    const auto moves = s.moves();
    out << "to move: " << to_string(*s.to_move())
        << (moves.front().mover == Mover::Forced ? " (forced)" : "") << '\n';
    for (std::size_t i = 0; i < moves.size(); ++i) {
      out << "  [" << i << "] " << describe_move(s.position(), moves[i], s.table()) << '\n';
    }
    while (true) {
      out << "> " << std::flush;
      std::string line;
      if (!std::getline(in, line) || line == ":quit" || line == ":q") {
        out << "\nquit\n";
        return 0;
      }
      if (line == ":help") {
        out << "Enter the number of a move. :hint asks the solver, :quit ends the play.\n";
        continue;
      }
      if (line == ":hint") {
        const auto h = s.hint(budget);
        out << "solver (budget " << budget << "): " << to_string(h.verdict.outcome);
        if (h.choice) out << ", suggested choice [" << *h.choice << "]";
        out << '\n';
        continue;
      }
      std::size_t choice = 0;
      try {
        std::size_t used = 0;
        choice = std::stoul(line, &used);
        if (used != line.size()) throw std::invalid_argument("trailing input");
      } catch (const std::exception&) {
        out << "not a choice: '" << line << "'\n";
        continue;
      }
      if (choice >= moves.size()) {
        out << "choice out of range\n";
        continue;
      }
      const auto& step = s.play(choice);
      out << "you (" << to_string(step.player) << "): " << step.description << '\n';
      break;
    }
  }
}

int run_render_nl(const ProblemOptions& o, std::ostream& out) {
  const Problem p = o.load();
  out << render_natural_language(p.formula) << '\n';
  return 0;
}

int run_encode(const std::string& model_path, bool json, std::ostream& out) {
  const Model m = parse_model(read_file(model_path));
  const std::string enc = encode_model(m.structure);
  if (json) {
    out << Json{{"encoding", enc}}.dump(2) << '\n';
  } else {
    out << enc << '\n';
  }
  return 0;
}

int run_tm_command(const std::string& machine_path, const std::optional<std::string>& input,
                   const std::string& model_path, std::uint64_t steps, bool json,
                   std::ostream& out) {
  const TuringMachine tm = parse_machine(read_file(machine_path));
  std::string tape;
  if (input) {
    tape = *input;
  } else if (!model_path.empty()) {
    tape = encode_model(parse_model(read_file(model_path)).structure);
  } else {
    throw UsageError("run-tm needs --input or --model");
  }
  const TMOutcome o = run_tm(tm, tape, steps);
  if (json) {
    Json j = tm_outcome_json(o);
    j["input"] = tape;
    out << j.dump(2) << '\n';
  } else {
    out << to_string(o.kind) << " after " << o.steps << " steps";
    if (o.kind == TMOutcome::Kind::CycleDetected) {
      out << " (configuration at step " << o.cycle_start << " recurs every " << o.cycle_length
          << " steps)";
    }
    out << '\n';
  }
  return 0;
}

struct CorrespondenceJob {
  std::string name;
  TuringMachine machine;
  Formula formula;
  std::vector<PartialStructure> models;
};

int run_correspond(std::vector<CorrespondenceJob> jobs, const CorrespondenceBudget& budget,
                   bool json, std::ostream& out) {
  Json all = Json::array();
  bool disagreement = false;
  for (auto& job : jobs) {
    const auto report = check_correspondence(job.machine, job.formula, job.models, budget);
    disagreement |= report.count(RowStatus::Disagree) > 0;
    if (json) {
      Json rows = Json::array();
      for (const auto& r : report.rows) {
        rows.push_back({{"encoding", r.encoding},
                        {"machine", tm_outcome_json(r.machine)},
                        {"verdict", to_string(r.verdict.outcome)},
                        {"status", to_string(r.status)}});
      }
      all.push_back({{"name", job.name},
                     {"formula", print_formula(job.formula)},
                     {"agree", report.count(RowStatus::Agree)},
                     {"disagree", report.count(RowStatus::Disagree)},
                     {"inconclusive", report.count(RowStatus::Inconclusive)},
                     {"rows", std::move(rows)}});
      continue;
    }
    out << job.name << ": " << print_formula(job.formula) << '\n';
    for (const auto& r : report.rows) {
      out << "  " << r.encoding << "  " << to_string(r.machine.kind) << " / "
          << to_string(r.verdict.outcome) << "  " << to_string(r.status) << '\n';
    }
    out << "  " << report.count(RowStatus::Agree) << '/' << report.rows.size() << " agree, "
        << report.count(RowStatus::Disagree) << " disagree, "
        << report.count(RowStatus::Inconclusive) << " inconclusive\n";
  }
  if (json) out << all.dump(2) << '\n';
  return disagreement ? 1 : 0;
}

std::vector<CorrespondenceJob> curated_jobs() {
  std::vector<CorrespondenceJob> jobs;
  for (const auto& pair : curated_pairs()) {
    const Model shape = parse_model("domain:\n" + pair.vocabulary);
    jobs.push_back({pair.name, parse_machine(pair.machine),
                    parse_formula(pair.formula, shape.vocabulary),
                    enumerate_models(shape.structure, pair.max_size)});
  }
  return jobs;
}

std::sig_atomic_t volatile stop_requested = 0;
httplib::Server* running_server = nullptr;

int run_serve(const std::string& host, int port, unsigned idle_minutes, std::ostream& out) {
  SessionService service{std::chrono::minutes(idle_minutes)};
  auto server = make_http_server(service);
  if (!server->bind_to_port(host, port)) throw UsageError("cannot listen on " + host + ":" +
                                                          std::to_string(port));
  out << "listening on http://" << host << ':' << port << std::endl;
  running_server = server.get();
  auto previous = std::signal(SIGINT, [](int) {
    if (running_server) running_server->stop();
  });
  server->listen_after_bind();
  std::signal(SIGINT, previous);
  running_server = nullptr;
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Model checking and semantic games for first-order logic with model mutation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lgame 1.0");

  ProblemOptions check_opts, solve_opts, play_opts, nl_opts;
  auto* check = app.add_subcommand("check", "Evaluate a first-order formula compositionally");
  check_opts.add_to(check, false);

  unsigned budget = 12;
  bool exact = false, bounded = false, show_trace = false;
  auto* solve = app.add_subcommand("solve", "Decide who wins the semantic game");
  solve_opts.add_to(solve, true);
  solve->add_option("--budget", budget, "Move budget for the bounded solver")
      ->capture_default_str();
  solve->add_flag("--exact", exact, "Use the exact solver");
  solve->add_flag("--bounded", bounded, "Use the bounded solver");
  solve->add_flag("--trace", show_trace, "Print a winning play");

  std::string role = "eloise";
  unsigned play_budget = 6;
  std::size_t max_moves = 200;
  auto* play = app.add_subcommand("play", "Play the semantic game against the engine");
  play_opts.add_to(play, true);
  play->add_option("--role", role, "Your role")
      ->check(CLI::IsMember({"eloise", "abelard"}))
      ->capture_default_str();
  play->add_option("--budget", play_budget, "Budget for :hint and the engine")
      ->capture_default_str();
  play->add_option("--max-moves", max_moves, "Stop after this many moves")
      ->capture_default_str();

  auto* nl = app.add_subcommand("render-nl", "Render a formula in English");
  nl_opts.add_to(nl, false);

  std::string encode_model_path;
  bool encode_json = false;
  auto* encode = app.add_subcommand("encode", "Print the machine encoding of a model");
  encode->add_option("-m,--model", encode_model_path, "Model file")->required();
  encode->add_flag("--json", encode_json, "Structured output");

  std::string host = "127.0.0.1";
  int port = 8080;
  unsigned idle_minutes = 30;
  auto* serve = app.add_subcommand("serve", "Serve the game session HTTP API");
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "Address to bind")->capture_default_str();
  serve->add_option("--idle-minutes", idle_minutes, "Expire idle sessions after this long")
      ->capture_default_str();

  std::string machine_path, tm_model;
  std::optional<std::string> tm_input;
  std::uint64_t steps = 100'000;
  bool tm_json = false;
  auto* run = app.add_subcommand("run-tm", "Run a Turing machine");
  run->add_option("--machine", machine_path, "Machine file")->required();
  run->add_option("--input", tm_input, "Input word");
  run->add_option("-m,--model", tm_model, "Use the encoding of this model as input");
  run->add_option("--steps", steps, "Step budget")->capture_default_str();
  run->add_flag("--json", tm_json, "Structured output");

  std::string corr_machine, corr_formula, corr_vocab;
  std::size_t max_size = 3;
  bool curated = false, corr_json = false;
  CorrespondenceBudget corr_budget;
  auto* corr = app.add_subcommand(
      "correspond", "Compare a machine with a formula over all small models");
  corr->add_flag("--curated", curated, "Run the built-in machine/formula pairs");
  corr->add_option("--machine", corr_machine, "Machine file");
  corr->add_option("-f,--formula", corr_formula, "Formula text");
  corr->add_option("--vocab", corr_vocab, "Model file whose declarations fix the vocabulary");
  corr->add_option("--max-size", max_size, "Largest domain size")->capture_default_str();
  corr->add_option("--steps", corr_budget.machine_steps, "Machine step budget")
      ->capture_default_str();
  corr->add_option("--budget", corr_budget.solver_depth, "Bounded solver budget")
      ->capture_default_str();
  corr->add_flag("--json", corr_json, "Structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*check) return run_check(check_opts, out);
    if (*solve) return run_solve(solve_opts, budget, exact, bounded, show_trace, out);
    if (*play) return run_play(play_opts, role, play_budget, max_moves, in, out);
    if (*nl) return run_render_nl(nl_opts, out);
    if (*encode) return run_encode(encode_model_path, encode_json, out);
    if (*serve) return run_serve(host, port, idle_minutes, out);
    if (*run) return run_tm_command(machine_path, tm_input, tm_model, steps, tm_json, out);
    if (*corr) {
      if (curated) return run_correspond(curated_jobs(), corr_budget, corr_json, out);
      if (corr_machine.empty() || corr_formula.empty()) {
        throw UsageError("correspond needs --curated, or --machine and --formula");
      }
      const Model shape =
          corr_vocab.empty() ? parse_model("domain:\n") : parse_model(read_file(corr_vocab));
      std::vector<CorrespondenceJob> jobs;
      jobs.push_back({"custom", parse_machine(read_file(corr_machine)),
                      parse_formula(corr_formula, shape.vocabulary),
                      enumerate_models(shape.structure, max_size)});
      return run_correspond(std::move(jobs), corr_budget, corr_json, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SyntaxError& e) {
    err << "formula error at " << e.line() << ':' << e.column() << ": " << e.message() << '\n';
    return kDataError;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kDataError;
  } catch (const MachineError& e) {
    err << "machine error: " << e.what() << '\n';
    return kDataError;
  } catch (const VocabularyError& e) {
    err << "vocabulary error: " << e.what() << '\n';
    return kDataError;
  } catch (const StructureError& e) {
    err << "model error: " << e.what() << '\n';
    return kDataError;
  } catch (const EvaluationError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const GameError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace lgame::cli
