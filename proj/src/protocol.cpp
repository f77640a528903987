#include "holres/protocol.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cctype>
#include <thread>

#include "holres/error.hpp"
#include "holres/fixtures.hpp"

namespace holres {

using nlohmann::json;

namespace {

std::string arity_text(const Arity& a) { return a.to_string(); }

void term_json_into(const Term& t, SkolemLegend* legend, json& out) {
  switch (t.kind()) {
    case TermKind::Const:
      out = {{"kind", "const"}, {"name", t.name()}};
      return;
    case TermKind::Var:
      out = {{"kind", "var"}, {"name", t.name()}, {"generation", t.generation()}, {"arity", arity_text(t.arity())}};
      return;
    case TermKind::Bound:
      out = {{"kind", "bound"}, {"index", t.index()}};
      return;
    case TermKind::Abs: {
      json body;
      term_json_into(t.body(), legend, body);
      out = {{"kind", "abs"}, {"hint", t.name()}, {"arity", arity_text(t.arity())}, {"body", std::move(body)}};
      return;
    }
    case TermKind::App: {
      auto [head, args] = strip_comb(t);
      json h, a = json::array();
      term_json_into(head, legend, h);
      for (const auto& x : args) {
        json j;
        term_json_into(x, legend, j);
        a.push_back(std::move(j));
      }
      out = {{"kind", "app"}, {"head", std::move(h)}, {"args", std::move(a)}};
      return;
    }
    case TermKind::Param: {
      json subs = json::array();
      for (const auto& s : t.subscripts()) {
        json j;
        term_json_into(s, legend, j);
        subs.push_back(std::move(j));
      }
      out = {{"kind", "param"}, {"base", t.name()}, {"subscripts", std::move(subs)}};
      if (legend) out["short"] = legend->name_of(t);
      return;
    }
  }
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"ok", false}, {"error", {{"kind", kind}, {"message", message}}}};
}

std::size_t positive(const json& req, const char* field) {
  if (!req.contains(field)) throw Error(ErrorKind::ProtocolError, std::string("missing field '") + field + "'");
  const json& v = req.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw Error(ErrorKind::ProtocolError, std::string("field '") + field + "' must be a positive integer");
  return v.get<std::size_t>();
}

std::string text_field(const json& req, const char* field) {
  if (!req.contains(field) || !req.at(field).is_string())
    throw Error(ErrorKind::ProtocolError, std::string("missing string field '") + field + "'");
  return req.at(field).get<std::string>();
}

}  // namespace

json term_json(const Term& t, SkolemLegend* legend) {
  json out;
  term_json_into(t, legend, out);
  return out;
}

ProtocolHandler::ProtocolHandler(SessionOptions options) : options_(std::move(options)) {
  for (const auto& name : builtin_logic_names())
    logics_[name] = std::make_shared<const Logic>(*builtin_logic(name));
}

std::shared_ptr<const Logic> ProtocolHandler::logic_named(const std::string& name) {
  auto it = logics_.find(name);
  if (it == logics_.end()) throw Error(ErrorKind::ProtocolError, "unknown logic '" + name + "'");
  return it->second;
}

Session& ProtocolHandler::session() {
  if (!session_ || !session_->has_goal()) throw Error(ErrorKind::EmptyHistory, "no goal; send new-goal first");
  return *session_;
}

json ProtocolHandler::state_json() {
  Session& s = session();
  const auto& sig = s.logic().signature;
  bool compress = s.options().compress_skolem;
  SkolemLegend legend;
  const Rule& r = s.state();
  json subgoals = json::array();
  for (std::size_t i = 0; i < r.premises.size(); ++i)
    subgoals.push_back({{"index", i + 1},
                        {"text", print_term(sig, r.premises[i], compress, &legend)},
                        {"tree", term_json(r.premises[i], &legend)}});
  json constraints = json::array();
  for (const auto& ff : r.flexflex)
    constraints.push_back(print_term(sig, ff.lhs, compress, &legend) + " =?= " +
                          print_term(sig, ff.rhs, compress, &legend));
  json history = json::array();
  for (std::size_t i = 0; i < s.history().size(); ++i)
    history.push_back({{"step", i + 1}, {"command", s.history()[i].command}, {"more", s.has_alternative(i + 1)}});
  std::string conclusion = print_term(sig, r.conclusion, compress, &legend);
  json legend_json = json::array();
  for (std::size_t i = 0; i < legend.entries().size(); ++i) {
    auto e = legend.entries()[i];
    legend_json.push_back({{"name", e.short_name}, {"param", print_term(sig, e.param)}});
  }
  return {{"logic", s.logic().name},
          {"goal", s.goal_text()},
          {"conclusion", conclusion},
          {"subgoals", std::move(subgoals)},
          {"constraints", std::move(constraints)},
          {"history", std::move(history)},
          {"legend", std::move(legend_json)},
          {"done", r.premises.empty()},
          {"display", s.show()}};
}

json ProtocolHandler::dispatch(const std::string& cmd, const json& req) {
  if (cmd == "hello") {
    json names = json::array();
    for (const auto& [n, l] : logics_) names.push_back(n);
    return {{"protocol", kProtocolVersion}, {"logics", names}};
  }
  if (cmd == "list-logics") {
    json out = json::array();
    for (const auto& [n, l] : logics_)
      out.push_back({{"name", n}, {"rules", l->rules.size()}, {"current", n == current_logic_}});
    return {{"logics", out}};
  }
  if (cmd == "load-rules") {
    std::string name = text_field(req, "name");
    std::string text = text_field(req, "text");
    Logic base;
    if (req.contains("base")) base = *logic_named(text_field(req, "base"));
    Logic l = load_logic(text, base);
    l.name = name;
    json rules = json::array();
    for (const auto& r : l.rules.all()) rules.push_back(r.name);
    logics_[name] = std::make_shared<const Logic>(std::move(l));
    current_logic_ = name;
    return {{"logic", name}, {"rules", rules}};
  }
  if (cmd == "new-goal") {
    std::string logic = req.contains("logic") ? text_field(req, "logic") : current_logic_;
    auto l = logic_named(logic);
    auto s = std::make_unique<Session>(l, options_);
    s->new_goal(text_field(req, "goal"));
    session_ = std::move(s);
    current_logic_ = logic;
    return state_json();
  }
  if (cmd == "state") return state_json();
  if (cmd == "applicable-rules") {
    std::size_t goal = positive(req, "goal");
    json out = json::array();
    for (const auto& [name, n] : session().applicable_rules(goal - 1))
      out.push_back({{"name", name}, {"unifiers", n}});
    return {{"goal", goal}, {"rules", out}};
  }
  if (cmd == "apply") {
    session().apply(text_field(req, "tactic"));
    return state_json();
  }
  if (cmd == "backtrack") {
    session().backtrack(positive(req, "step"));
    return state_json();
  }
  if (cmd == "undo") {
    session().undo();
    return state_json();
  }
  if (cmd == "qed") {
    Rule thm = session().qed();
    return {{"theorem", print_rule(session().logic().signature, thm)}, {"premises", thm.premises.size()}};
  }
  if (cmd == "script") return {{"script", session().script()}};
  if (cmd == "solve") {
    std::size_t page = req.contains("page") ? positive(req, "page") : 1;
    std::size_t size = req.contains("page_size") ? positive(req, "page_size") : 10;
    if (!session_) session_ = std::make_unique<Session>(logic_named(current_logic_), options_);
    SolvePage p = session_->solve(text_field(req, "lhs"), text_field(req, "rhs"), (page - 1) * size, size);
    json out = json::array();
    for (const auto& u : p.unifiers) {
      json b = json::array();
      for (const auto& [v, t] : u.bindings) b.push_back({{"var", v}, {"value", t}});
      out.push_back({{"bindings", b}, {"constraints", u.constraints}});
    }
    return {{"page", page}, {"unifiers", out}, {"more", p.more}};
  }
  throw Error(ErrorKind::ProtocolError, "unknown command '" + cmd + "'");
}

json ProtocolHandler::handle(const json& request) {
  json id = request.is_object() && request.contains("id") ? request.at("id") : json();
  json response;
  try {
    if (!request.is_object()) throw Error(ErrorKind::ProtocolError, "request must be a JSON object");
    response = {{"ok", true}, {"result", dispatch(text_field(request, "cmd"), request)}};
  } catch (const Error& e) {
    response = error_json(std::string(error_kind_name(e.kind())), e.what());
  } catch (const json::exception& e) {
    response = error_json("ProtocolError", e.what());
  } catch (const std::exception& e) {
    response = error_json("InternalError", e.what());
  }
  if (!id.is_null()) response["id"] = id;
  return response;
}

std::string ProtocolHandler::handle_text(const std::string& body) {
  json req = json::parse(body, nullptr, false);
  if (req.is_discarded()) return error_json("ProtocolError", "malformed JSON").dump();
  return handle(req).dump();
}

std::string frame_message(const std::string& body) { return std::to_string(body.size()) + "\n" + body; }

namespace {

constexpr std::size_t kMaxMessage = 16u << 20;

bool read_exact(int fd, char* buf, std::size_t n) {
  while (n > 0) {
    ssize_t got = ::recv(fd, buf, n, 0);
    if (got <= 0) return false;
    buf += got;
    n -= static_cast<std::size_t>(got);
  }
  return true;
}

bool write_all(int fd, const std::string& s) {
  const char* p = s.data();
  std::size_t n = s.size();
  while (n > 0) {
    ssize_t put = ::send(fd, p, n, MSG_NOSIGNAL);
    if (put <= 0) return false;
    p += put;
    n -= static_cast<std::size_t>(put);
  }
  return true;
}

void serve_connection(int fd, SessionOptions options) {
  ProtocolHandler handler(options);
  for (;;) {
    std::string len;
    char c = 0;
    bool ok = true;
    while ((ok = read_exact(fd, &c, 1)) && c != '\n') {
      if (!std::isdigit(static_cast<unsigned char>(c)) || len.size() > 9) {
        ok = false;
        break;
      }
      len += c;
    }
    if (!ok || len.empty()) {
      // Framing is lost; report once and drop the connection.
      write_all(fd, frame_message(error_json("ProtocolError", "bad frame header").dump()));
      break;
    }
    std::size_t n = std::stoul(len);
    if (n > kMaxMessage) {
      write_all(fd, frame_message(error_json("ProtocolError", "message too large").dump()));
      break;
    }
    std::string body(n, '\0');
    if (!read_exact(fd, body.data(), n)) break;
    if (!write_all(fd, frame_message(handler.handle_text(body)))) break;
  }
  ::close(fd);
}

}  // namespace

void serve(int port, SessionOptions options, const std::function<void(int)>& ready) {
  int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0) throw Error(ErrorKind::FileError, "socket() failed");
  int yes = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listener, 16) < 0) {
    ::close(listener);
    throw Error(ErrorKind::FileError, "cannot listen on 127.0.0.1:" + std::to_string(port));
  }
  socklen_t alen = sizeof addr;
  ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &alen);
  if (ready) ready(ntohs(addr.sin_port));
  for (;;) {
    int fd = ::accept(listener, nullptr, nullptr);
    if (fd < 0) break;
    std::thread(serve_connection, fd, options).detach();
  }
  ::close(listener);
}

}  // namespace holres
