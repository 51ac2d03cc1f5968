#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>

#include <boost/asio/co_spawn.hpp>
#include <boost/asio/detached.hpp>
#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/use_awaitable.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <json.hpp>

#include "lionman/service/session.hpp"

namespace lionman::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  SessionOptions session;
  /// Files served for GET requests outside /session; disabled when empty.
  std::filesystem::path static_dir;
};

/// HTTP + WebSocket front end for a SessionRegistry.
///
///   POST /session               -> {"id", "dt", "init"}
///   GET  /session/{id}/trace    -> JSONL trace
///   WS   /session/{id}          -> one reply frame per step frame
///   GET  /anything-else         -> static file (when configured)
///
/// All handlers run on one io_context thread; each connection processes its
/// frames in arrival order.
class Server {
 public:
  explicit Server(ServerOptions options) : options_(std::move(options)), registry_(options_.session) {}
  ~Server() { stop(); }
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts serving on a background thread.
  void start() {
    acceptor_.emplace(ioc_);
    const tcp::endpoint ep(asio::ip::make_address(options_.address), options_.port);
    acceptor_->open(ep.protocol());
    acceptor_->set_option(asio::socket_base::reuse_address(true));
    acceptor_->bind(ep);
    acceptor_->listen();
    port_ = acceptor_->local_endpoint().port();
    asio::co_spawn(ioc_, listen(), asio::detached);
    thread_ = std::thread([this] { ioc_.run(); });
  }

  /// Serves until SIGINT/SIGTERM or stop(); `on_listening` runs once the
  /// port is bound.
  void run(const std::function<void(unsigned short)>& on_listening = {}) {
    asio::signal_set signals(ioc_, SIGINT, SIGTERM);
    signals.async_wait([this](const boost::system::error_code&, int) { ioc_.stop(); });
    start();
    if (on_listening) on_listening(port_);
    if (thread_.joinable()) thread_.join();
  }

  void stop() {
    if (stopped_.exchange(true)) return;
    ioc_.stop();
    if (thread_.joinable() && thread_.get_id() != std::this_thread::get_id()) thread_.join();
  }

  unsigned short port() const { return port_; }
  SessionRegistry& registry() { return registry_; }

 private:
  using Request = http::request<http::string_body>;
  using Response = http::response<http::string_body>;

  asio::awaitable<void> listen() {
    for (;;) {
      tcp::socket socket = co_await acceptor_->async_accept(asio::use_awaitable);
      asio::co_spawn(ioc_, serve(std::move(socket)), asio::detached);
    }
  }

  asio::awaitable<void> serve(tcp::socket socket) {
    beast::tcp_stream stream(std::move(socket));
    beast::flat_buffer buffer;
    try {
      for (;;) {
        Request req;
        co_await http::async_read(stream, buffer, req, asio::use_awaitable);
        if (websocket::is_upgrade(req)) {
          co_await play(std::move(stream), std::move(req));
          co_return;
        }
        Response res = handle(req);
        const bool keep = res.keep_alive();
        co_await http::async_write(stream, res, asio::use_awaitable);
        if (!keep) break;
      }
    } catch (const boost::system::system_error&) {
      // Client went away.
    }
    beast::error_code ec;
    stream.socket().shutdown(tcp::socket::shutdown_send, ec);
  }

  asio::awaitable<void> play(beast::tcp_stream stream, Request req) {
    const auto id = session_id(std::string_view(req.target().data(), req.target().size()), "");
    auto session = id ? registry_.find(*id) : nullptr;
    if (!session) {
      Response res = text(req, http::status::not_found, "unknown session\n");
      co_await http::async_write(stream, res, asio::use_awaitable);
      co_return;
    }
    websocket::stream<beast::tcp_stream> ws(std::move(stream));
    ws.text(true);
    co_await ws.async_accept(req, asio::use_awaitable);
    beast::flat_buffer buffer;
    try {
      for (;;) {
        buffer.clear();
        co_await ws.async_read(buffer, asio::use_awaitable);
        const std::string reply = handle_step_frame(*session, beast::buffers_to_string(buffer.data()));
        co_await ws.async_write(asio::buffer(reply), asio::use_awaitable);
      }
    } catch (const boost::system::system_error&) {
      // Closed by the client.
    }
  }

  Response handle(const Request& req) {
    const std::string_view target(req.target().data(), req.target().size());
    if (req.method() == http::verb::post && (target == "/session" || target == "/session/")) {
      nlohmann::json body = nlohmann::json::object();
      if (!req.body().empty()) {
        body = nlohmann::json::parse(req.body(), nullptr, false);
        if (body.is_discarded()) return text(req, http::status::bad_request, "request body is not JSON\n");
      }
      try {
        auto s = registry_.create(body);
        nlohmann::ordered_json out;
        out["id"] = s->id();
        out["dt"] = s->options().dt;
        out["init"] = s->init_json();
        return json_response(req, http::status::ok, out.dump());
      } catch (const Error& e) {
        return text(req, http::status::unprocessable_entity, std::string(e.what()) + "\n");
      }
    }
    if (req.method() == http::verb::get) {
      if (auto id = session_id(target, "/trace")) {
        auto s = registry_.find(*id);
        if (!s) return text(req, http::status::not_found, "unknown session\n");
        Response res = text(req, http::status::ok, s->trace_jsonl());
        res.set(http::field::content_type, "application/x-ndjson");
        return res;
      }
      if (!options_.static_dir.empty()) return static_file(req);
    }
    return text(req, http::status::not_found, "not found\n");
  }

  // "/session/{id}{suffix}" -> id
  static std::optional<std::string> session_id(std::string_view target, std::string_view suffix) {
    constexpr std::string_view prefix = "/session/";
    if (target.substr(0, prefix.size()) != prefix) return std::nullopt;
    target.remove_prefix(prefix.size());
    if (target.size() < suffix.size() || target.substr(target.size() - suffix.size()) != suffix) return std::nullopt;
    target.remove_suffix(suffix.size());
    if (target.empty() || target.find('/') != std::string_view::npos) return std::nullopt;
    return std::string(target);
  }

  Response static_file(const Request& req) {
    std::string rel(req.target());
    if (auto q = rel.find('?'); q != std::string::npos) rel.resize(q);
    if (rel.empty() || rel == "/") rel = "/index.html";
    if (rel.find("..") != std::string::npos) return text(req, http::status::bad_request, "bad path\n");
    const auto file = options_.static_dir / rel.substr(1);
    std::ifstream in(file, std::ios::binary);
    if (!in) return text(req, http::status::not_found, "not found\n");
    std::ostringstream body;
    body << in.rdbuf();
    Response res = text(req, http::status::ok, body.str());
    res.set(http::field::content_type, mime_type(file.extension().string()));
    return res;
  }

  static std::string mime_type(const std::string& ext) {
    if (ext == ".html") return "text/html";
    if (ext == ".js" || ext == ".mjs") return "application/javascript";
    if (ext == ".css") return "text/css";
    if (ext == ".json") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".png") return "image/png";
    return "application/octet-stream";
  }

  static Response text(const Request& req, http::status status, std::string body) {
    Response res{status, req.version()};
    res.set(http::field::server, "lionman");
    res.set(http::field::content_type, "text/plain");
    res.keep_alive(req.keep_alive());
    res.body() = std::move(body);
    res.prepare_payload();
    return res;
  }

  static Response json_response(const Request& req, http::status status, std::string body) {
    Response res = text(req, status, std::move(body));
    res.set(http::field::content_type, "application/json");
    return res;
  }

  ServerOptions options_;
  SessionRegistry registry_;
  asio::io_context ioc_{1};
  std::optional<tcp::acceptor> acceptor_;
  std::thread thread_;
  std::atomic<bool> stopped_{false};
  unsigned short port_ = 0;
};

}  // namespace lionman::service
