#pragma once

#include <map>
#include <memory>
#include <string>

#include <json.hpp>

#include "holres/session.hpp"

namespace holres {

inline constexpr const char* kProtocolVersion = "holres-protocol/1";

/// One client's command processor. Requests and responses are JSON objects;
/// see docs/protocol.md. Never throws: every failure becomes an error
/// response and the session carries on.
class ProtocolHandler {
 public:
  explicit ProtocolHandler(SessionOptions options = {});

  nlohmann::json handle(const nlohmann::json& request);
  /// Parses and handles one message body; malformed JSON yields an error response.
  std::string handle_text(const std::string& body);

 private:
  nlohmann::json dispatch(const std::string& cmd, const nlohmann::json& req);
  nlohmann::json state_json();
  Session& session();
  std::shared_ptr<const Logic> logic_named(const std::string& name);

  SessionOptions options_;
  std::map<std::string, std::shared_ptr<const Logic>> logics_;
  std::string current_logic_ = "fol";
  std::unique_ptr<Session> session_;
};

/// Structural form of a term for clients.
nlohmann::json term_json(const Term& t, SkolemLegend* legend = nullptr);

/// Frames a message: decimal byte length, newline, body.
std::string frame_message(const std::string& body);

/// Serves on 127.0.0.1:port, one thread and one session per connection.
/// Blocks until the listening socket fails. If `ready` is given it is called
/// with the bound port once listening.
void serve(int port, SessionOptions options, const std::function<void(int)>& ready = {});

}  // namespace holres
