#include <stdexcept>

#include "lgame/http.hpp"

namespace lgame::cli {

namespace {

SessionService::Response error(int status, const std::string& message) {
  return {status, Json{{"error", message}}};
}

std::optional<std::string> optional_string(const Json& body, const char* key) {
  if (!body.contains(key) || body[key].is_null()) return std::nullopt;
  return body[key].get<std::string>();
}

RunConfig config_from(const Json& config) {
  RunConfig c;
  if (auto v = optional_string(config, "deleteMiss")) c.rules.delete_miss = parse_delete_miss(*v);
  if (auto v = optional_string(config, "claimUnbound")) {
    c.rules.claim_unbound = parse_claim_unbound(*v);
  }
  if (auto v = optional_string(config, "tupleDeletion")) {
    c.rules.tuple_deletion = parse_tuple_deletion(*v);
  }
  if (auto v = optional_string(config, "freshStatus")) {
    if (*v != "undefined" && *v != "negative") {
      throw std::invalid_argument("freshStatus must be 'undefined' or 'negative'");
    }
    c.fresh_tuples_negative = *v == "negative";
  }
  if (config.contains("budget")) c.budget = config["budget"].get<unsigned>();
  if (c.budget < 1) throw std::invalid_argument("budget must be at least 1");
  return c;
}

Json steps_json(const std::vector<Session::Step>& steps) {
  Json out = Json::array();
  for (const auto& s : steps) out.push_back(step_json(s));
  return out;
}

}  // namespace

SessionService::SessionService(std::chrono::seconds idle_limit,
                               std::function<Clock::time_point()> now)
    : idle_limit_(idle_limit), now_(std::move(now)) {}

std::size_t SessionService::expire() {
  std::lock_guard lock(mutex_);
  const auto now = now_();
  return std::erase_if(sessions_,
                       [&](const auto& kv) { return now - kv.second->last_used > idle_limit_; });
}

std::size_t SessionService::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) {
  expire();
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->last_used = now_();
  return it->second;
}

SessionService::Response SessionService::create(const Json& body) {
  expire();
  std::shared_ptr<Session> session;
  std::vector<Session::Step> reply;
  try {
    if (!body.is_object()) return error(400, "request body must be a JSON object");
    const std::string formula = body.at("formula").get<std::string>();
    auto model = optional_string(body, "model");
    if (model && model->empty()) model.reset();
    const Json config = body.value("config", Json::object());
    const RunConfig rc = config_from(config);
    std::map<std::string, std::string> assign;
    if (config.contains("assign")) assign = config["assign"].get<std::map<std::string, std::string>>();
    const Problem problem = load_problem(model, formula, assign, config.value("auxImplicit", false),
                                         rc.fresh_tuples_negative);
    const Player human = parse_player(body.value("humanRole", std::string("eloise")));
    session = std::make_shared<Session>(problem, human, rc);
    reply = session->engine_turns();
  } catch (const SyntaxError& e) {
    return {400, Json{{"error", e.what()}, {"line", e.line()}, {"column", e.column()}}};
  } catch (const ModelError& e) {
    return {400, Json{{"error", e.what()}, {"line", e.line()}}};
  } catch (const Json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, e.what());
  } catch (const VocabularyError& e) {
    return error(400, e.what());
  } catch (const GameError& e) {
    return error(400, e.what());
  } catch (const StructureError& e) {
    return error(400, e.what());
  }

  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = "s" + std::to_string(next_id_++);
    auto entry = std::make_shared<Entry>();
    entry->session = session;
    entry->last_used = now_();
    sessions_.emplace(id, std::move(entry));
  }
  Json out = session_json(id, *session);
  out["engineReply"] = steps_json(reply);
  return {201, std::move(out)};
}

SessionService::Response SessionService::get(const std::string& id) {
  auto entry = find(id);
  if (!entry) return error(404, "no such session");
  std::shared_ptr<const Session> s;
  {
    std::shared_lock lock(entry->state_mutex);
    s = entry->session;
  }
  return {200, session_json(id, *s)};
}

SessionService::Response SessionService::move(const std::string& id, const Json& body) {
  auto entry = find(id);
  if (!entry) return error(404, "no such session");
  std::unique_lock move_lock(entry->move_mutex, std::try_to_lock);
  if (!move_lock.owns_lock()) return error(409, "another move is being processed");

  std::shared_ptr<Session> next;
  {
    std::shared_lock lock(entry->state_mutex);
    next = std::make_shared<Session>(*entry->session);
  }
  if (next->terminal()) return error(409, "the play has already ended");
  std::size_t choice;
  try {
    choice = body.at("choiceIndex").get<std::size_t>();
  } catch (const Json::exception&) {
    return error(400, "expected {\"choiceIndex\": <non-negative integer>}");
  }
  std::vector<Session::Step> reply;
  try {
    next->play(choice);
    reply = next->engine_turns();
  } catch (const IllegalMove& e) {
    return error(400, e.what());
  }
  {
    std::unique_lock lock(entry->state_mutex);
    entry->session = next;
  }
  Json out = session_json(id, *next);
  out["engineReply"] = steps_json(reply);
  return {200, std::move(out)};
}

SessionService::Response SessionService::hint(const std::string& id, const Json& body) {
  auto entry = find(id);
  if (!entry) return error(404, "no such session");
  unsigned budget = 6;
  try {
    if (body.is_object() && body.contains("budget")) budget = body["budget"].get<unsigned>();
  } catch (const Json::exception&) {
    return error(400, "budget must be a positive integer");
  }
  if (budget < 1) return error(400, "budget must be a positive integer");
  std::shared_ptr<const Session> s;
  {
    std::shared_lock lock(entry->state_mutex);
    s = entry->session;
  }
  const auto h = s->hint(budget);
  Json out;
  out["verdict"] = verdict_json(h.verdict, s->position(), s->table(), s->config().rules,
                                "bounded");
  out["suggestedChoice"] = h.choice ? Json(*h.choice) : Json(nullptr);
  return {200, std::move(out)};
}

SessionService::Response SessionService::remove(const std::string& id) {
  expire();
  std::lock_guard lock(mutex_);
  if (sessions_.erase(id) == 0) return error(404, "no such session");
  return {204, nullptr};
}

std::unique_ptr<httplib::Server> make_http_server(SessionService& service) {
  auto server = std::make_unique<httplib::Server>();
  server->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                               {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                               {"Access-Control-Allow-Headers", "Content-Type"}});

  auto reply = [](httplib::Response& res, const SessionService::Response& r) {
    res.status = r.status;
    if (r.status != 204) res.set_content(r.body.dump(), "application/json");
  };
  auto parse = [](const httplib::Request& req) {
    if (req.body.empty()) return Json::object();
    return Json::parse(req.body, nullptr, false);
  };
  auto bad_json = [](httplib::Response& res) {
    res.status = 400;
    res.set_content(Json{{"error", "request body is not valid JSON"}}.dump(), "application/json");
  };

  server->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server->Post("/api/session", [&service, reply, parse, bad_json](const httplib::Request& req,
                                                                  httplib::Response& res) {
    Json body = parse(req);
    if (body.is_discarded()) return bad_json(res);
    reply(res, service.create(body));
  });
  server->Get(R"(/api/session/([A-Za-z0-9]+))",
              [&service, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, service.get(req.matches[1]));
              });
  server->Post(R"(/api/session/([A-Za-z0-9]+)/move)",
               [&service, reply, parse, bad_json](const httplib::Request& req,
                                                  httplib::Response& res) {
                 Json body = parse(req);
                 if (body.is_discarded()) return bad_json(res);
                 reply(res, service.move(req.matches[1], body));
               });
  server->Post(R"(/api/session/([A-Za-z0-9]+)/hint)",
               [&service, reply, parse, bad_json](const httplib::Request& req,
                                                  httplib::Response& res) {
                 Json body = parse(req);
                 if (body.is_discarded()) return bad_json(res);
                 reply(res, service.hint(req.matches[1], body));
               });
  server->Delete(R"(/api/session/([A-Za-z0-9]+))",
                 [&service, reply](const httplib::Request& req, httplib::Response& res) {
                   reply(res, service.remove(req.matches[1]));
                 });
  return server;
}

}  // namespace lgame::cli
