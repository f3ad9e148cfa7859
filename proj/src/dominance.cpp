#include "tcpnet/dominance.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace tcpnet {

namespace {

struct OutcomeHash {
  std::size_t operator()(const Outcome& o) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (ValueIndex v : o) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

struct Parent {
  Outcome from;
  FlipLabel label;
};

}  // namespace

const char* to_string(DominanceStatus status) {
  switch (status) {
    case DominanceStatus::Dominates: return "Dominates";
    case DominanceStatus::NotDominated: return "NotDominated";
    case DominanceStatus::Unknown: return "Unknown";
  }
  return "?";
}

DominanceVerdict dominates(const TcpNet& net, const Outcome& better,
                           const Outcome& worse, std::size_t budget) {
  check_outcome(net, better);
  check_outcome(net, worse);
  DominanceVerdict verdict;
  if (better == worse) {
    verdict.status = DominanceStatus::NotDominated;
    return verdict;
  }

  // parent[o] is how o was first reached; the root maps to itself.
  std::unordered_map<Outcome, Parent, OutcomeHash> parent;
  parent.emplace(worse, Parent{worse, {}});
  std::deque<Outcome> frontier{worse};
  while (!frontier.empty()) {
    if (verdict.expanded == budget) {
      verdict.status = DominanceStatus::Unknown;
      return verdict;
    }
    const Outcome current = std::move(frontier.front());
    frontier.pop_front();
    ++verdict.expanded;
    for (auto& flip : improving_successors(net, current)) {
      if (parent.count(flip.outcome)) continue;
      parent.emplace(flip.outcome, Parent{current, flip.label});
      if (flip.outcome == better) {
        auto& seq = verdict.certificate;
        for (Outcome at = better; at != worse;) {
          const Parent& p = parent.at(at);
          seq.outcomes.push_back(at);
          seq.labels.push_back(p.label);
          at = p.from;
        }
        seq.outcomes.push_back(worse);
        std::reverse(seq.outcomes.begin(), seq.outcomes.end());
        std::reverse(seq.labels.begin(), seq.labels.end());
        verdict.status = DominanceStatus::Dominates;
        return verdict;
      }
      frontier.push_back(std::move(flip.outcome));
    }
  }
  verdict.status = DominanceStatus::NotDominated;
  return verdict;
}

bool verify_sequence(const TcpNet& net, const FlippingSequence& seq) {
  if (seq.outcomes.empty()) return false;
  if (seq.labels.size() + 1 != seq.outcomes.size()) return false;
  for (const auto& o : seq.outcomes) {
    if (o.size() != net.size()) return false;
    for (VarIndex v = 0; v < net.size(); ++v) {
      if (o[v] >= net.domain_size(v)) return false;
    }
  }
  for (std::size_t i = 0; i + 1 < seq.outcomes.size(); ++i) {
    const auto succ = improving_successors(net, seq.outcomes[i]);
    const bool ok = std::any_of(succ.begin(), succ.end(), [&](const Flip& f) {
      return f.outcome == seq.outcomes[i + 1] && f.label == seq.labels[i];
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace tcpnet
