// Copyright 2026 The vbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Line-delimited JSON transport for the classical protocol messages.
//
// Simulation only: preparation descriptors cross the wire inside `opaque`
// frames so that the server endpoint can feed them to its in-process backend.
// Anyone reading the socket sees them. Blindness is evaluated through the
// adversary API, never through this channel.

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include <json.hpp>

#include "vbqc/protocol.hpp"
#include "vbqc/server.hpp"

namespace vbqc {

inline constexpr const char *kWireSchema = "vbqc.wire/1";

class TransportError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OpaqueCodec {
    static nlohmann::json encode(const OpaqueQubit &q);
    static OpaqueQubit decode(const nlohmann::json &j);
};

/// Parses one frame. Throws TransportError on bad JSON, a missing or wrong
/// schema, or an unknown type.
nlohmann::json parse_frame(const std::string &line);

struct EndpointOptions {
    /// Close the connection where a Server Redo would be sent.
    bool drop_on_redo = false;
    /// Stop after this many connections; 0 means run until stop().
    std::size_t max_connections = 0;
};

struct EndpointStats {
    std::size_t connections = 0;
    std::size_t verdicts = 0;
    std::size_t errors = 0;
    std::size_t drops = 0;
    std::string last_error;
};

/// TCP server endpoint on 127.0.0.1. Connections are served one at a time
/// and each carries one session.
class SocketServer {
  public:
    SocketServer(Server server, unsigned short port = 0, EndpointOptions opt = {});
    ~SocketServer();
    SocketServer(const SocketServer &) = delete;
    SocketServer &operator=(const SocketServer &) = delete;

    unsigned short port() const;
    /// Accept loop on a background thread.
    void start();
    /// Accept loop on the calling thread.
    void serve();
    void stop();
    EndpointStats stats() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Client endpoint. A lost connection during a run is reported to the
/// protocol as a Server Redo and the link reconnects.
class RemoteLink : public ServerLink {
  public:
    RemoteLink(std::string host, unsigned short port, std::uint64_t session);
    ~RemoteLink() override;

    std::unique_ptr<RunChannel> open_run(std::size_t run, std::size_t attempt) override;
    bool concurrent() const override {
        return false;
    }
    void send_verdict(const Verdict &v);
    std::size_t reconnects() const;

    struct Connection;

  private:
    std::string host_;
    unsigned short port_;
    std::uint64_t session_;
    std::unique_ptr<Connection> conn_;
};

}  // namespace vbqc
