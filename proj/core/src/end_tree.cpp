#include "flutekit/end_tree.hpp"

#include "flutekit/errors.hpp"

namespace flutekit {

VerdictKind aggregate_verdicts(VerdictKind a, VerdictKind b) {
  if (a == VerdictKind::NotParabolic || b == VerdictKind::NotParabolic) {
    return VerdictKind::NotParabolic;
  }
  if (a == VerdictKind::Inconclusive || b == VerdictKind::Inconclusive) {
    return VerdictKind::Inconclusive;
  }
  return VerdictKind::Parabolic;
}

Verdict classify_end(const BasicEndDescriptor& node, const DivergencePolicy& policy) {
  for (std::size_t i = 0; i < node.beta_lengths.size(); ++i) {
    if (node.beta_lengths[i] > node.beta_bound) {
      throw RefusalError("beta border " + std::to_string(i + 1) + " has length " +
                         node.beta_lengths[i].str(8) + " above the declared bound " +
                         node.beta_bound.str(8) +
                         "; the bounded-borders hypothesis fails and no criterion covers "
                         "unbounded borders, refusing to classify");
    }
  }
  Verdict v = classify_flute(node.flute, policy);
  v.assumptions.push_back("beta borders verified bounded by " + node.beta_bound.str(8) +
                          " (punctures allowed)");
  return v;
}

namespace {

EndReport classify_node(const EndTreeNode& node, const DivergencePolicy& policy) {
  EndReport r;
  r.name = node.name;
  r.attach_at = node.attach_at;
  if (const auto* flute = std::get_if<FluteDescriptor>(&node.surface)) {
    r.node_kind = "flute";
    r.verdict = classify_flute(*flute, policy);
  } else {
    r.node_kind = "basic-end";
    r.verdict = classify_end(std::get<BasicEndDescriptor>(node.surface), policy);
    r.beta_bound_checked = true;
  }
  r.aggregate = r.verdict.kind;
  for (const auto& child : node.children) {
    r.children.push_back(classify_node(child, policy));
    r.aggregate = aggregate_verdicts(r.aggregate, r.children.back().aggregate);
  }
  return r;
}

}  // namespace

EndReport classify_surface(const EndTree& tree, const DivergencePolicy& policy) {
  auto violations = validate_tree(tree);
  if (!violations.empty()) {
    std::string msg = "invalid end tree:";
    for (const auto& v : violations) msg += "\n  - " + v.message;
    throw InputError(msg);
  }
  return classify_node(tree.root, policy);
}

}  // namespace flutekit
