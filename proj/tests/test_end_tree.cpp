#include <doctest.h>

#include <algorithm>
#include <random>

#include "flutekit/end_tree.hpp"
#include "flutekit/errors.hpp"
#include "flutekit/reports.hpp"

using namespace flutekit;

namespace {

FluteDescriptor gen_flute(const std::string& expr, std::uint64_t n, TwistPattern twists) {
  FluteDescriptor d;
  d.generator = LengthGenerator::parse(expr);
  d.truncation = n;
  d.lengths = expand_lengths(*d.generator, n);
  d.twists = std::move(twists);
  return d;
}

FluteDescriptor parabolic_flute() { return gen_flute("plog:2", 1200, TwistPattern::none()); }
FluteDescriptor not_parabolic_flute() { return gen_flute("plog:3", 1200, TwistPattern::none()); }

BasicEndDescriptor basic_end(FluteDescriptor flute, double beta, double bound) {
  BasicEndDescriptor d;
  d.flute = std::move(flute);
  d.beta_lengths.assign(d.flute.truncation - 1, Real(beta));
  d.beta_bound = Real(bound);
  return d;
}

}  // namespace

TEST_CASE("classify_end verifies the beta bound before classifying") {
  auto node = basic_end(gen_flute("pairs-of:plog:2", 1000, TwistPattern::every(1000)), 1.0, 2.0);
  Verdict v = classify_end(node);
  CHECK(v.kind == VerdictKind::Parabolic);
  bool noted = false;
  for (const auto& a : v.assumptions) noted |= a.find("beta borders") != std::string::npos;
  CHECK(noted);

  // beta_n = n against M = 10: refusal at the first offender.
  auto bad = basic_end(parabolic_flute(), 1.0, 10.0);
  for (std::size_t i = 0; i < bad.beta_lengths.size(); ++i) {
    bad.beta_lengths[i] = Real(static_cast<long>(i) + 1L);
  }
  CHECK_THROWS_WITH_AS(classify_end(bad), doctest::Contains("beta border 11"), RefusalError);
}

TEST_CASE("all-puncture basic ends reduce exactly to the flute classifier") {
  auto node = basic_end(parabolic_flute(), 0.0, 1.0);
  Verdict ve = classify_end(node);
  Verdict vf = classify_flute(node.flute);
  CHECK(ve.kind == vf.kind);
  CHECK(ve.row == vf.row);
  CHECK(ve.diagnostics.rule == vf.diagnostics.rule);
  CHECK(ve.diagnostics.power_fit.slope == vf.diagnostics.power_fit.slope);
  CHECK(ve.diagnostics.log_partial_sums == vf.diagnostics.log_partial_sums);
}

TEST_CASE("aggregation is a conjunction over the tree") {
  EndTree tree;
  tree.root.surface = basic_end(parabolic_flute(), 1.0, 2.0);
  tree.root.name = "root";
  EndTreeNode c1;
  c1.surface = parabolic_flute();
  c1.attach_at = 1;
  EndTreeNode c2;
  c2.surface = parabolic_flute();
  c2.attach_at = 2;
  tree.root.children = {c1, c2};

  EndReport all_p = classify_surface(tree);
  CHECK(all_p.aggregate == VerdictKind::Parabolic);
  CHECK(all_p.children.size() == 2);

  tree.root.children[1].surface = not_parabolic_flute();
  EndReport one_np = classify_surface(tree);
  CHECK(one_np.aggregate == VerdictKind::NotParabolic);

  // Inconclusive leaf dominates Parabolic but not NotParabolic.
  FluteDescriptor vague = gen_flute("plog:2", 600, TwistPattern::none());
  std::vector<std::uint64_t> idx;
  for (std::uint64_t n = 2; n <= 600; n += 3) idx.push_back(n);
  if (idx.size() % 2 == 1) idx.pop_back();
  vague.twists = TwistPattern::from_indices(idx, true);  // mixed row, likely inconclusive
  Verdict vv = classify_flute(vague);
  if (vv.kind == VerdictKind::Inconclusive) {
    tree.root.children[1].surface = vague;
    CHECK(classify_surface(tree).aggregate == VerdictKind::Inconclusive);
  }
}

TEST_CASE("aggregate verdict is order independent") {
  std::mt19937_64 rng(8);
  EndTree tree;
  tree.root.surface = basic_end(parabolic_flute(), 0.5, 1.0);
  for (int i = 0; i < 5; ++i) {
    EndTreeNode c;
    c.surface = (i == 2) ? not_parabolic_flute() : parabolic_flute();
    c.attach_at = static_cast<std::uint64_t>(i) + 1;
    tree.root.children.push_back(std::move(c));
  }
  VerdictKind reference = classify_surface(tree).aggregate;
  for (int shuffle = 0; shuffle < 10; ++shuffle) {
    std::shuffle(tree.root.children.begin(), tree.root.children.end(), rng);
    CHECK(classify_surface(tree).aggregate == reference);
  }
}

TEST_CASE("deleting a parabolic leaf never changes the aggregate") {
  EndTree tree;
  tree.root.surface = basic_end(parabolic_flute(), 0.5, 1.0);
  EndTreeNode keep;
  keep.surface = not_parabolic_flute();
  keep.attach_at = 1;
  EndTreeNode extra;
  extra.surface = parabolic_flute();
  extra.attach_at = 2;
  tree.root.children = {keep, extra};
  VerdictKind with_extra = classify_surface(tree).aggregate;
  tree.root.children.pop_back();
  CHECK(classify_surface(tree).aggregate == with_extra);
}

TEST_CASE("nested trees mirror their shape in the report") {
  EndTree tree;
  tree.root.surface = basic_end(parabolic_flute(), 1.0, 2.0);
  EndTreeNode mid;
  mid.surface = basic_end(parabolic_flute(), 1.0, 2.0);
  mid.attach_at = 1;
  mid.name = "middle";
  EndTreeNode leaf;
  leaf.surface = parabolic_flute();
  leaf.attach_at = 2;
  leaf.name = "leaf";
  mid.children.push_back(leaf);
  tree.root.children.push_back(mid);

  EndReport r = classify_surface(tree);
  REQUIRE(r.children.size() == 1);
  REQUIRE(r.children[0].children.size() == 1);
  CHECK(r.children[0].children[0].name == "leaf");
  CHECK(r.aggregate == VerdictKind::Parabolic);

  std::string json = end_report_json(r);
  CHECK(json.find("\"name\": \"leaf\"") != std::string::npos);
  CHECK(json.find("\"aggregate\": \"Parabolic\"") != std::string::npos);
  std::string text = end_report_text(r);
  CHECK(text.find("middle") != std::string::npos);
}
