#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "senso/session.hpp"

namespace senso {

// Live sessions keyed by id. Each message is handled to completion and
// answered with zero or more messages; see docs/protocol.md. Sessions share
// no mutable state, and calls for different sessions may run concurrently.
class ServiceHub {
 public:
  using Clock = std::function<std::string()>;
  explicit ServiceHub(Clock clock = {});

  std::vector<nlohmann::json> handle(const nlohmann::json& msg);
  // Parses one line of JSON; malformed input yields an error message.
  std::vector<nlohmann::json> handle_line(const std::string& line);

  std::size_t session_count() const;

 private:
  struct Live {
    std::mutex mu;
    std::unique_ptr<SessionEngine> engine;
    std::vector<nlohmann::json> outbox;
    bool quiet = false;
    std::optional<SessionRecord> record;
  };

  std::shared_ptr<Live> find(const nlohmann::json& msg);
  std::vector<nlohmann::json> create(const nlohmann::json& msg);
  std::vector<nlohmann::json> dispatch(Live& live, const std::string& id, const std::string& type,
                                       const nlohmann::json& msg);

  Clock clock_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Live>> sessions_;
  std::uint64_t next_id_ = 1;
};

std::string utc_timestamp();
nlohmann::json error_message(const std::string& code, const std::string& message);
nlohmann::json metrics_json(const std::map<GameId, TaskMetrics>& metrics);

// Line-delimited JSON over TCP: one request per line, each reply on its own line.
class TcpServer {
 public:
  // Port 0 picks a free port.
  TcpServer(ServiceHub& hub, std::uint16_t port, const std::string& host = "127.0.0.1");
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  // Blocks until stop() is called.
  void run();
  void stop();

 private:
  void serve_client(int fd);

  ServiceHub& hub_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{false};
  std::mutex clients_mu_;
  std::vector<std::thread> clients_;
  std::vector<int> client_fds_;
};

}  // namespace senso
