#pragma once

// JSON documents for nets and constraint sets. See docs/format.md.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tcpnet/constraints.hpp"
#include "tcpnet/model.hpp"

namespace tcpnet {

inline constexpr std::string_view kFormatVersion = "1.0";

/// Syntax or schema error. line and column are 1-based and refer to the
/// offending character for syntax errors; schema errors carry the JSON
/// pointer of the offending element in path() and the position of the
/// document start.
class ParseError : public Error {
 public:
  ParseError(std::string reason, std::size_t line, std::size_t column,
             std::string path, const std::string& message);

  /// Short machine code: "syntax", "missing-field", "wrong-type",
  /// "unknown-field", "bad-version", "io".
  const std::string& reason() const noexcept { return reason_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string reason_;
  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

/// Schema-level parse only; the result may still fail validation.
NetSpec parse_net_spec(std::string_view text);
/// Parses and validates. Throws ParseError or ValidationFailed.
TcpNet parse_net(std::string_view text);
/// Pretty-printed, deterministic; missing CPT rows stay missing.
std::string serialize_net(const TcpNet& net);

std::vector<ConstraintSpec> parse_constraints(std::string_view text);
std::string serialize_constraints(const std::vector<ConstraintSpec>& specs);

/// Throws ParseError with reason "io" when the file cannot be read.
std::string read_file(const std::string& path);
TcpNet load_net(const std::string& path);
std::vector<ConstraintSpec> load_constraints(const std::string& path);

}  // namespace tcpnet
