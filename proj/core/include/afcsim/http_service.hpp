#pragma once

#include <functional>
#include <memory>
#include <string>

#include "afcsim/afc_server.hpp"

namespace afcsim::afc {

inline constexpr const char* kInquiryPath = "/availableSpectrumInquiry";

using ClockFn = std::function<UtcSeconds()>;

// Wall-clock UTC seconds.
UtcSeconds system_now();

// HTTP/1.1 front end for an AfcServer. Requests are handled concurrently;
// the wrapped server is read-only while listening.
class HttpAfcService {
 public:
  explicit HttpAfcService(AfcServer server, ClockFn clock = system_now);
  ~HttpAfcService();

  HttpAfcService(const HttpAfcService&) = delete;
  HttpAfcService& operator=(const HttpAfcService&) = delete;

  // Binds to host:port; port 0 picks a free one. Returns the bound port or
  // -1 on failure.
  int bind(const std::string& host, int port);

  // Blocks until stop() is called from another thread.
  bool listen_after_bind();

  void stop();
  bool is_running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Synchronous client for the endpoint above. Throws Error on transport
// failure or an undecodable body.
SpectrumInquiryResponse post_inquiry(const std::string& host, int port,
                                     const SpectrumInquiryRequest& req);

}  // namespace afcsim::afc
