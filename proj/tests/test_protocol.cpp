#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <condition_variable>
#include <mutex>
#include <thread>

#include "holres/protocol.hpp"

using namespace holres;
using nlohmann::json;

namespace {

json call(ProtocolHandler& h, json req) { return h.handle(req); }

class Client {
 public:
  explicit Client(int port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<uint16_t>(port));
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    REQUIRE(::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
  }
  ~Client() { ::close(fd_); }

  json send(const json& req) {
    std::string out = frame_message(req.dump());
    REQUIRE(::write(fd_, out.data(), out.size()) == static_cast<ssize_t>(out.size()));
    std::string len;
    char c;
    while (::read(fd_, &c, 1) == 1 && c != '\n') len += c;
    std::string body(std::stoul(len), '\0');
    std::size_t got = 0;
    while (got < body.size()) {
      ssize_t n = ::read(fd_, body.data() + got, body.size() - got);
      REQUIRE(n > 0);
      got += static_cast<std::size_t>(n);
    }
    return json::parse(body);
  }

 private:
  int fd_;
};

int start_server() {
  static int port = [] {
    std::mutex m;
    std::condition_variable cv;
    int p = 0;
    std::thread([&] {
      serve(0, {}, [&](int bound) {
        std::lock_guard<std::mutex> lock(m);
        p = bound;
        cv.notify_one();
      });
    }).detach();
    std::unique_lock<std::mutex> lock(m);
    cv.wait(lock, [&] { return p != 0; });
    return p;
  }();
  return port;
}

}  // namespace

TEST_CASE("hello and list-logics") {
  ProtocolHandler h;
  json r = call(h, {{"cmd", "hello"}, {"id", 1}});
  CHECK(r["ok"] == true);
  CHECK(r["id"] == 1);
  CHECK(r["result"]["protocol"] == "holres-protocol/1");
  json l = call(h, {{"cmd", "list-logics"}});
  CHECK(l["result"]["logics"].size() >= 3);
}

TEST_CASE("errors carry a kind and echo the id") {
  ProtocolHandler h;
  json r = call(h, {{"cmd", "frobnicate"}, {"id", "x"}});
  CHECK(r["ok"] == false);
  CHECK(r["error"]["kind"] == "ProtocolError");
  CHECK(r["id"] == "x");
  CHECK(call(h, {{"cmd", "state"}})["error"]["kind"].is_string());
  json bad = call(h, {{"cmd", "new-goal"}, {"goal", "nil |- (A"}});
  CHECK(bad["error"]["kind"] == "SyntaxError");
  CHECK(json::parse(h.handle_text("{not json"))["error"]["kind"] == "ProtocolError");
}

TEST_CASE("goal lifecycle through the handler") {
  ProtocolHandler h;
  json s = call(h, {{"cmd", "new-goal"}, {"goal", "nil |- A --> A"}, {"logic", "fol"}});
  REQUIRE(s["ok"] == true);
  CHECK(s["result"]["subgoals"].size() == 1);
  CHECK(s["result"]["done"] == false);
  json rules = call(h, {{"cmd", "applicable-rules"}, {"goal", 1}});
  bool imp = false;
  for (const auto& r : rules["result"]["rules"])
    if (r["name"] == "impI") imp = r["unifiers"].get<int>() >= 1;
  CHECK(imp);
  json a = call(h, {{"cmd", "apply"}, {"tactic", "impI THEN asm_head"}});
  CHECK(a["result"]["done"] == true);
  CHECK(a["result"]["history"].size() == 1);
  json q = call(h, {{"cmd", "qed"}});
  CHECK(q["result"]["premises"] == 0);
  CHECK(q["result"]["theorem"] == "nil |- A --> A");
}

TEST_CASE("user rule files over the protocol") {
  ProtocolHandler h;
  json r = call(h, {{"cmd", "load-rules"},
                    {"name", "mine"},
                    {"base", "fol"},
                    {"text", "rule twice\npremise \"?G |- ?A\"\nconclusion \"?G |- ?A & ?A\"\n"}});
  REQUIRE(r["ok"] == true);
  CHECK(r["result"]["rules"].size() == 13);
  json s = call(h, {{"cmd", "new-goal"}, {"goal", "nil |- A & A"}});
  CHECK(s["result"]["logic"] == "mine");
  CHECK(call(h, {{"cmd", "apply"}, {"tactic", "twice"}})["ok"] == true);
}

TEST_CASE("solve pages") {
  ProtocolHandler h;
  json r = call(h, {{"cmd", "load-rules"}, {"name", "p"}, {"base", "pure"}, {"text", ""}});
  REQUIRE(r["ok"] == true);
  json p = call(h, {{"cmd", "solve"}, {"lhs", "?f(C, ?x)"}, {"rhs", "A(B)"}, {"page_size", 2}});
  REQUIRE(p["ok"] == true);
  CHECK(p["result"]["unifiers"].size() == 2);
  CHECK(p["result"]["more"] == true);
}

TEST_CASE("framing") { CHECK(frame_message("{}") == "2\n{}"); }

TEST_CASE("live server: new-goal, apply, backtrack, qed on the commuted conjunction") {
  Client c(start_server());
  CHECK(c.send({{"cmd", "hello"}})["ok"] == true);
  json s = c.send({{"cmd", "new-goal"}, {"goal", "nil |- A & B --> B & A"}, {"logic", "fol"}});
  REQUIRE(s["ok"] == true);
  c.send({{"cmd", "apply"}, {"tactic", "impI"}});
  c.send({{"cmd", "apply"}, {"tactic", "conjI"}});
  // conjE1 is tried first and leads nowhere; conjE2 is its alternative
  json a = c.send({{"cmd", "apply"}, {"tactic", "resolve conjE1, conjE2"}});
  REQUIRE(a["ok"] == true);
  CHECK(a["result"]["history"][2]["more"] == true);
  CHECK(c.send({{"cmd", "apply"}, {"tactic", "asm_head"}})["ok"] == false);
  json bt = c.send({{"cmd", "backtrack"}, {"step", 3}});
  REQUIRE(bt["ok"] == true);
  CHECK(bt["result"]["history"][2]["more"] == false);
  json done = c.send({{"cmd", "apply"}, {"tactic", "asm_head THEN conjE1 THEN asm_head"}});
  REQUIRE(done["ok"] == true);
  CHECK(done["result"]["done"] == true);
  CHECK(c.send({{"cmd", "backtrack"}, {"step", 3}})["error"]["kind"] == "BacktrackExhausted");
  json q = c.send({{"cmd", "qed"}});
  CHECK(q["result"]["theorem"] == "nil |- A & B --> B & A");
  CHECK(q["result"]["premises"] == 0);
}

TEST_CASE("bad frames are reported") {
  int port = start_server();
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(port));
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  REQUIRE(::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
  const char* junk = "xyz\n";
  REQUIRE(::write(fd, junk, 4) == 4);
  std::string all;
  char buf[256];
  ssize_t n;
  while ((n = ::read(fd, buf, sizeof buf)) > 0) all.append(buf, static_cast<std::size_t>(n));
  ::close(fd);
  CHECK(all.find("ProtocolError") != std::string::npos);
}
