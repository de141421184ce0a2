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

#include "vbqc/transport.hpp"

#include <boost/asio.hpp>

namespace vbqc {

namespace asio = boost::asio;
using asio::ip::tcp;
using nlohmann::json;

json OpaqueCodec::encode(const OpaqueQubit &q) {
    if (const auto *p = std::get_if<PlusTheta>(&q.prepared_)) {
        return {{"plus", p->theta.value()}};
    }
    return {{"basis", std::get<DummyState>(q.prepared_).bit}};
}

OpaqueQubit OpaqueCodec::decode(const json &j) {
    if (!j.is_object() || j.size() != 1) {
        throw TransportError("bad opaque qubit");
    }
    if (j.contains("plus")) {
        return OpaqueQubit(PlusTheta{Angle8::checked(j["plus"].get<long long>())});
    }
    if (j.contains("basis")) {
        const auto b = j["basis"].get<int>();
        if (b != 0 && b != 1) {
            throw TransportError("bad opaque qubit");
        }
        return OpaqueQubit(DummyState{static_cast<Bit>(b)});
    }
    throw TransportError("bad opaque qubit");
}

json parse_frame(const std::string &line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception &) {
        throw TransportError("malformed frame");
    }
    if (!j.is_object() || j.value("schema", std::string()) != kWireSchema) {
        throw TransportError("frame without schema " + std::string(kWireSchema));
    }
    static const char *types[] = {"hello", "prep", "delta", "outcome", "redo", "verdict", "error"};
    const std::string t = j.value("type", std::string());
    for (const char *known : types) {
        if (t == known) {
            return j;
        }
    }
    throw TransportError("unknown frame type '" + t + "'");
}

namespace {

json frame(const char *type) {
    return {{"schema", kWireSchema}, {"type", type}};
}

void write_frame(tcp::socket &s, const json &j) {
    const std::string line = j.dump() + "\n";
    asio::write(s, asio::buffer(line));
}

std::string read_line(tcp::socket &s, asio::streambuf &buf) {
    asio::read_until(s, buf, '\n');
    std::istream is(&buf);
    std::string line;
    std::getline(is, line);
    return line;
}

}  // namespace

// ---------------------------------------------------------------- server

struct SocketServer::Impl {
    Server server;
    EndpointOptions opt;
    asio::io_context io;
    tcp::acceptor acceptor;
    std::thread thread;
    std::atomic<bool> stopping{false};
    mutable std::mutex mu;
    EndpointStats stats;

    Impl(Server s, unsigned short port, EndpointOptions o)
        : server(std::move(s)), opt(o), acceptor(io, tcp::endpoint(asio::ip::address_v4::loopback(), port)) {
    }

    void loop() {
        std::size_t served = 0;
        while (!stopping) {
            tcp::socket sock(io);
            boost::system::error_code ec;
            acceptor.accept(sock, ec);
            if (ec || stopping) {
                break;
            }
            sock.set_option(tcp::no_delay(true), ec);
            session(sock);
            ++served;
            if (opt.max_connections && served >= opt.max_connections) {
                break;
            }
        }
    }

    void record_error(const std::string &msg) {
        std::lock_guard lock(mu);
        ++stats.errors;
        stats.last_error = msg;
    }

    void session(tcp::socket &sock) {
        {
            std::lock_guard lock(mu);
            ++stats.connections;
        }
        asio::streambuf buf;
        std::optional<std::uint64_t> session_id;
        std::unique_ptr<ServerRun> run;
        std::size_t run_index = 0;
        try {
            for (;;) {
                std::string line;
                try {
                    line = read_line(sock, buf);
                } catch (const boost::system::system_error &) {
                    return;  // client closed
                }
                const json f = parse_frame(line);
                const std::string type = f["type"];
                if (type != "hello" && !session_id) {
                    throw TransportError("frame before hello");
                }
                if (type == "hello") {
                    session_id = f.at("session").get<std::uint64_t>();
                    json r = frame("hello");
                    r["vertices"] = server.graph().size();
                    write_frame(sock, r);
                } else if (type == "prep") {
                    run_index = f.at("run").get<std::size_t>();
                    const auto attempt = f.at("attempt").get<std::size_t>();
                    const json &q = f.at("opaque");
                    if (!q.is_array() || q.size() != server.graph().size()) {
                        throw TransportError("prep frame has wrong qubit count");
                    }
                    std::vector<OpaqueQubit> qubits;
                    for (const auto &e : q) {
                        qubits.push_back(OpaqueCodec::decode(e));
                    }
                    run = server.open_run(*session_id, run_index, attempt);
                    run->receive(std::move(qubits));
                } else if (type == "delta") {
                    if (!run || f.at("run").get<std::size_t>() != run_index) {
                        throw TransportError("delta frame for a run that is not open");
                    }
                    const auto v = f.at("vertex").get<std::size_t>();
                    if (v >= server.graph().size()) {
                        throw TransportError("delta frame vertex out of range");
                    }
                    const auto b = run->measure(v, Angle8::checked(f.at("delta").get<long long>()));
                    if (!b) {
                        run.reset();
                        if (opt.drop_on_redo) {
                            std::lock_guard lock(mu);
                            ++stats.drops;
                            return;
                        }
                        json r = frame("redo");
                        r["run"] = run_index;
                        r["by"] = "server";
                        write_frame(sock, r);
                    } else {
                        json r = frame("outcome");
                        r["run"] = run_index;
                        r["vertex"] = v;
                        r["b"] = *b;
                        write_frame(sock, r);
                    }
                } else if (type == "redo") {
                    run.reset();
                } else if (type == "verdict") {
                    {
                        std::lock_guard lock(mu);
                        ++stats.verdicts;
                    }
                    write_frame(sock, frame("verdict"));
                } else {
                    throw TransportError("unexpected frame type '" + type + "'");
                }
            }
        } catch (const std::exception &e) {
            record_error(e.what());
            json r = frame("error");
            r["message"] = e.what();
            boost::system::error_code ec;
            const std::string line = r.dump() + "\n";
            asio::write(sock, asio::buffer(line), ec);
        }
    }
};

SocketServer::SocketServer(Server server, unsigned short port, EndpointOptions opt)
    : impl_(std::make_unique<Impl>(std::move(server), port, opt)) {
}

SocketServer::~SocketServer() {
    stop();
}

unsigned short SocketServer::port() const {
    return impl_->acceptor.local_endpoint().port();
}

void SocketServer::start() {
    impl_->thread = std::thread([this] { impl_->loop(); });
}

void SocketServer::serve() {
    impl_->loop();
}

void SocketServer::stop() {
    if (!impl_ || impl_->stopping.exchange(true)) {
        return;
    }
    if (impl_->thread.joinable()) {
        // Wake a blocking accept.
        try {
            asio::io_context io;
            tcp::socket s(io);
            s.connect(tcp::endpoint(asio::ip::address_v4::loopback(), port()));
        } catch (const std::exception &) {
        }
        impl_->thread.join();
    }
}

EndpointStats SocketServer::stats() const {
    std::lock_guard lock(impl_->mu);
    return impl_->stats;
}

// ---------------------------------------------------------------- client

struct RemoteLink::Connection {
    asio::io_context io;
    tcp::socket sock{io};
    asio::streambuf buf;
    bool broken = true;
    std::size_t reconnects = 0;
    std::size_t connects = 0;
};

namespace {

class RemoteChannel : public RunChannel {
  public:
    RemoteChannel(RemoteLink::Connection &c, std::function<void()> reconnect, std::size_t run, std::size_t attempt)
        : c_(c), reconnect_(std::move(reconnect)), run_(run), attempt_(attempt) {
    }

    void send_preparation(std::vector<OpaqueQubit> qubits) override {
        json f = frame("prep");
        f["run"] = run_;
        f["attempt"] = attempt_;
        json q = json::array();
        for (const auto &x : qubits) {
            q.push_back(OpaqueCodec::encode(x));
        }
        f["opaque"] = q;
        send(f);
    }

    std::optional<Bit> measure(std::size_t vertex, Angle8 delta) override {
        if (c_.broken) {
            return lost();
        }
        json f = frame("delta");
        f["run"] = run_;
        f["vertex"] = vertex;
        f["delta"] = delta.value();
        if (!send(f)) {
            return lost();
        }
        json r;
        try {
            r = parse_frame(read_line(c_.sock, c_.buf));
        } catch (const boost::system::system_error &) {
            return lost();
        }
        const std::string type = r["type"];
        if (type == "outcome") {
            if (r.at("vertex").get<std::size_t>() != vertex) {
                throw TransportError("outcome for the wrong vertex");
            }
            return static_cast<Bit>(r.at("b").get<int>() & 1);
        }
        if (type == "redo") {
            return std::nullopt;
        }
        if (type == "error") {
            throw TransportError("server error: " + r.value("message", std::string()));
        }
        throw TransportError("unexpected frame type '" + type + "'");
    }

    void client_redo() override {
        json f = frame("redo");
        f["run"] = run_;
        f["by"] = "client";
        send(f);
    }

  private:
    bool send(const json &f) {
        if (c_.broken) {
            return false;
        }
        boost::system::error_code ec;
        const std::string line = f.dump() + "\n";
        asio::write(c_.sock, asio::buffer(line), ec);
        if (ec) {
            c_.broken = true;
            return false;
        }
        return true;
    }

    std::optional<Bit> lost() {
        c_.broken = true;
        reconnect_();
        return std::nullopt;
    }

    RemoteLink::Connection &c_;
    std::function<void()> reconnect_;
    std::size_t run_, attempt_;
};

}  // namespace

RemoteLink::RemoteLink(std::string host, unsigned short port, std::uint64_t session)
    : host_(std::move(host)), port_(port), session_(session), conn_(std::make_unique<Connection>()) {
}

RemoteLink::~RemoteLink() = default;

namespace {

void connect(RemoteLink::Connection &c, const std::string &host, unsigned short port, std::uint64_t session) {
    boost::system::error_code ec;
    c.sock.close(ec);
    c.buf.consume(c.buf.size());
    tcp::resolver resolver(c.io);
    try {
        asio::connect(c.sock, resolver.resolve(host, std::to_string(port)));
        c.sock.set_option(tcp::no_delay(true));
        json hello = frame("hello");
        hello["session"] = session;
        write_frame(c.sock, hello);
        const json r = parse_frame(read_line(c.sock, c.buf));
        if (r["type"] != "hello") {
            throw TransportError("handshake failed: " + r.dump());
        }
    } catch (const boost::system::system_error &e) {
        throw TransportError(std::string("cannot reach server: ") + e.what());
    }
    c.broken = false;
    if (c.connects++ > 0) {
        ++c.reconnects;
    }
}

}  // namespace

std::unique_ptr<RunChannel> RemoteLink::open_run(std::size_t run, std::size_t attempt) {
    if (conn_->broken) {
        connect(*conn_, host_, port_, session_);
    }
    auto reconnect = [this] { connect(*conn_, host_, port_, session_); };
    return std::make_unique<RemoteChannel>(*conn_, reconnect, run, attempt);
}

void RemoteLink::send_verdict(const Verdict &v) {
    if (conn_->broken) {
        connect(*conn_, host_, port_, session_);
    }
    json f = frame("verdict");
    f["accepted"] = v.accepted;
    f["reason"] = verdict_name(v);
    f["output"] = v.output;
    try {
        write_frame(conn_->sock, f);
        const json r = parse_frame(read_line(conn_->sock, conn_->buf));
        if (r["type"] != "verdict") {
            throw TransportError("verdict not acknowledged");
        }
    } catch (const boost::system::system_error &e) {
        throw TransportError(std::string("verdict not delivered: ") + e.what());
    }
    boost::system::error_code ec;
    conn_->sock.shutdown(tcp::socket::shutdown_both, ec);
    conn_->sock.close(ec);
    conn_->broken = true;
}

std::size_t RemoteLink::reconnects() const {
    return conn_->reconnects;
}

}  // namespace vbqc
