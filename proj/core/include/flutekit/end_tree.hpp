#pragma once

#include <string>
#include <vector>

#include "flutekit/criteria.hpp"
#include "flutekit/surface.hpp"

namespace flutekit {

// Per-node analysis mirroring the input tree: the aggregate verdict is the
// conjunction over all nodes (Parabolic only when every node is Parabolic;
// NotParabolic as soon as one node is NotParabolic on an iff basis).
struct EndReport {
  std::string name;
  std::string node_kind;  // "flute" | "basic-end"
  Verdict verdict;
  bool beta_bound_checked = false;
  std::uint64_t attach_at = 0;
  std::vector<EndReport> children;
  VerdictKind aggregate = VerdictKind::Inconclusive;
};

// Classifies the embedded flute after verifying the bounded-borders
// hypothesis; refuses when a beta length exceeds the declared bound, since
// no criterion is available for unbounded borders.
Verdict classify_end(const BasicEndDescriptor& node, const DivergencePolicy& policy = {});

EndReport classify_surface(const EndTree& tree, const DivergencePolicy& policy = {});

VerdictKind aggregate_verdicts(VerdictKind a, VerdictKind b);

}  // namespace flutekit
