#pragma once

// The shipped example documents, loaded from data/.

#include <string>

#include "tcpnet/io.hpp"
#include "tcpnet/model.hpp"

#ifndef TCPNET_DATA_DIR
#error "TCPNET_DATA_DIR must point at the data directory"
#endif

namespace fixtures {

inline std::string path(const std::string& file) {
  return std::string(TCPNET_DATA_DIR) + "/" + file;
}

inline tcpnet::NetSpec load(const std::string& file) {
  return tcpnet::parse_net_spec(tcpnet::read_file(path(file)));
}

inline tcpnet::NetSpec evening_dress() { return load("evening_dress.tcpnet"); }
inline tcpnet::NetSpec flight() { return load("flight.tcpnet"); }
inline tcpnet::NetSpec abc_counterexample() {
  return load("abc_counterexample.tcpnet");
}
inline tcpnet::NetSpec mixed_cycle_directed() {
  return load("mixed_cycle_directed.tcpnet");
}
inline tcpnet::NetSpec mixed_cycle_blocked() {
  return load("mixed_cycle_blocked.tcpnet");
}

inline tcpnet::TcpNet net(const std::string& file) {
  return tcpnet::TcpNet::build(load(file));
}

}  // namespace fixtures
