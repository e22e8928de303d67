#include "afcsim/http_service.hpp"

#include <chrono>

#include <httplib.h>

#include "afcsim/errors.hpp"
#include "afcsim/wire.hpp"

namespace afcsim::afc {

UtcSeconds system_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

struct HttpAfcService::Impl {
  Impl(AfcServer s, ClockFn c) : server(std::move(s)), clock(std::move(c)) {}

  AfcServer server;
  ClockFn clock;
  httplib::Server http;
};

HttpAfcService::HttpAfcService(AfcServer server, ClockFn clock)
    : impl_(std::make_unique<Impl>(std::move(server), std::move(clock))) {
  impl_->http.Post(kInquiryPath, [this](const httplib::Request& req, httplib::Response& res) {
    wire::Json body;
    try {
      const auto inquiry = wire::request_from_json(wire::parse_document(req.body));
      body = wire::to_json(impl_->server.handle(inquiry, impl_->clock()));
      res.status = 200;
    } catch (const ParseError& e) {
      body = wire::Json{{"error", e.what()}};
      res.status = 400;
    }
    res.set_content(body.dump(), "application/json");
  });
}

HttpAfcService::~HttpAfcService() { stop(); }

int HttpAfcService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool HttpAfcService::listen_after_bind() { return impl_->http.listen_after_bind(); }

void HttpAfcService::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

bool HttpAfcService::is_running() const { return impl_->http.is_running(); }

SpectrumInquiryResponse post_inquiry(const std::string& host, int port,
                                     const SpectrumInquiryRequest& req) {
  httplib::Client client(host, port);
  client.set_connection_timeout(5);
  client.set_read_timeout(10);
  auto res = client.Post(kInquiryPath, wire::to_json(req).dump(), "application/json");
  if (!res) {
    throw Error("inquiry to " + host + ":" + std::to_string(port) +
                " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error("server answered HTTP " + std::to_string(res->status) + ": " + res->body);
  }
  return wire::response_from_json(wire::parse_document(res->body));
}

}  // namespace afcsim::afc
