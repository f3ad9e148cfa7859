#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "tcpnet/model.hpp"
#include "tcpnet/semantics.hpp"

namespace tcpnet {

inline constexpr std::size_t kDefaultDominanceBudget = 1'000'000;
inline constexpr std::size_t kUnboundedBudget =
    std::numeric_limits<std::size_t>::max();

/// outcomes.front() is the worse outcome, outcomes.back() the better one;
/// labels[i] sanctions the step outcomes[i] -> outcomes[i + 1].
struct FlippingSequence {
  std::vector<Outcome> outcomes;
  std::vector<FlipLabel> labels;
};

enum class DominanceStatus { Dominates, NotDominated, Unknown };

const char* to_string(DominanceStatus status);

struct DominanceVerdict {
  DominanceStatus status = DominanceStatus::Unknown;
  /// Shortest improving sequence; set only for Dominates.
  FlippingSequence certificate;
  std::size_t expanded = 0;
};

/// Breadth-first search from `worse`; at most `budget` outcomes are expanded.
DominanceVerdict dominates(const TcpNet& net, const Outcome& better,
                           const Outcome& worse,
                           std::size_t budget = kDefaultDominanceBudget);

/// True iff every step is an improving flip carrying the stated label.
bool verify_sequence(const TcpNet& net, const FlippingSequence& seq);

}  // namespace tcpnet
