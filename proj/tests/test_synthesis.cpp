#include <doctest.h>

#include <random>

#include "flutekit/criteria.hpp"
#include "flutekit/errors.hpp"
#include "flutekit/synthesis.hpp"
#include "support/oracles.hpp"

using namespace flutekit;

namespace {

std::vector<Real> reals(std::initializer_list<double> xs) {
  std::vector<Real> out;
  for (double x : xs) out.emplace_back(x);
  return out;
}

Verdict classify(std::vector<Real> lengths, TwistPattern twists) {
  FluteDescriptor d;
  d.truncation = lengths.size();
  d.lengths = std::move(lengths);
  d.twists = std::move(twists);
  return classify_flute(d);
}

}  // namespace

TEST_CASE("raise_lengths pins pairs to the window maximum") {
  auto r = raise_lengths(reals({1, 2, 3, 4, 5, 6}), TwistPattern::every(6));
  CHECK(r.lengths == reals({2, 2, 4, 4, 6, 6}));
  CHECK(r.plan.pairs_used == 3);
  CHECK_FALSE(r.plan.trailing_unpaired.has_value());
  CHECK(r.plan.modified_indices == std::vector<std::uint64_t>{1, 3, 5});

  auto sparse = raise_lengths(reals({1, 10, 100, 1000}),
                              TwistPattern::from_indices({2, 4}, true));
  CHECK(sparse.lengths == reals({1, 1000, 1000, 1000}));

  auto constant = raise_lengths(reals({3, 3, 3, 3}), TwistPattern::every(4));
  CHECK(constant.lengths == reals({3, 3, 3, 3}));
  CHECK(constant.plan.modified_indices.empty());
}

TEST_CASE("lower_lengths mirrors with the window minimum") {
  auto r = lower_lengths(reals({1, 2, 3, 4, 5, 6}), TwistPattern::every(6));
  CHECK(r.lengths == reals({1, 1, 3, 3, 5, 5}));

  auto sparse = lower_lengths(reals({1, 10, 100, 1000}),
                              TwistPattern::from_indices({2, 4}, true));
  CHECK(sparse.lengths == reals({1, 10, 10, 10}));

  auto constant = lower_lengths(reals({2, 2, 2}), TwistPattern::from_indices({1, 2}, true));
  CHECK(constant.lengths == reals({2, 2, 2}));
}

TEST_CASE("odd-sized patterns leave the trailing half-twist alone") {
  auto r = raise_lengths(reals({1, 2, 3, 4, 5}), TwistPattern::from_indices({1, 2, 5}, true));
  CHECK(r.lengths == reals({2, 2, 3, 4, 5}));
  CHECK(r.plan.trailing_unpaired == 5);
  CHECK(r.plan.pairs_used == 1);
}

TEST_CASE("synthesis rejects bad inputs") {
  CHECK_THROWS_AS(raise_lengths(reals({2, 1}), TwistPattern::every(2)), InputError);
  CHECK_THROWS_AS(raise_lengths(reals({1, 2}), TwistPattern::from_indices({1, 5}, true)),
                  InputError);
  CHECK_THROWS_AS(choose_pattern({2, 2}, 10, true), InputError);
  CHECK_THROWS_AS(choose_pattern({2, 30}, 10, true), InputError);
  CHECK(choose_pattern({1, 2, 6, 24}, 24, true).half_indices ==
        std::vector<std::uint64_t>{1, 2, 6, 24});
}

TEST_CASE("synthesizer certificates: dominance, monotonicity, exact nullity, verdict") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    // Random nondecreasing base, occasionally explosive.
    std::vector<Real> base;
    bool exponential = trial % 10 == 0;
    Real v = oracles::uniform_real(rng, 0.2, 2.0);
    std::size_t n = 40 + static_cast<std::size_t>(rng() % 160);
    for (std::size_t i = 0; i < n; ++i) {
      v = exponential ? v * Real(2.0) : v + oracles::uniform_real(rng, 0.0, 2.0);
      base.push_back(v);
    }
    // Random even-size pattern.
    std::vector<std::uint64_t> idx;
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (rng() % 3 == 0) idx.push_back(m);
    }
    if (idx.size() < 8) idx = {1, 2, 3, 4, 5, 6, 7, 8};
    if (idx.size() % 2 == 1) idx.pop_back();
    TwistPattern pattern = TwistPattern::from_indices(idx, true);

    auto raised = raise_lengths(base, pattern);
    auto lowered = lower_lengths(base, pattern);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(raised.lengths[i] >= base[i]);
      CHECK(lowered.lengths[i] <= base[i]);
      if (i > 0) {
        CHECK(raised.lengths[i] >= raised.lengths[i - 1]);
        CHECK(lowered.lengths[i] >= lowered.lengths[i - 1]);
      }
    }
    for (const auto& out : {raised, lowered}) {
      AlternatingSums sums = alternating_sums(out.lengths, pattern);
      for (std::size_t k = 2; k <= sums.sigma.size(); k += 2) {
        CHECK(sums.sigma[k - 1].is_zero());
      }
      Verdict verdict = classify(out.lengths, pattern);
      CHECK(verdict.kind == VerdictKind::Parabolic);
    }

    // Raising is idempotent.
    auto again = raise_lengths(raised.lengths, pattern);
    CHECK(again.plan.modified_indices.empty());
    CHECK(again.lengths == raised.lengths);
  }
}

TEST_CASE("dominance freedom: raising still certifies after adding any constant") {
  std::vector<Real> base;
  for (long i = 1; i <= 60; ++i) base.push_back(Real(i) + Real(100.0));
  TwistPattern pattern = TwistPattern::every(60);
  auto r = raise_lengths(base, pattern);
  CHECK(classify(r.lengths, pattern).kind == VerdictKind::Parabolic);
}
