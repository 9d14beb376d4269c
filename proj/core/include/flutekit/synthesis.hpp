#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "flutekit/real.hpp"
#include "flutekit/surface.hpp"

namespace flutekit {

// Record of a raise/lower synthesis: which entries changed and how.  Equal
// pair lengths are enforced by storing the identical value, so the even
// alternating sums cancel with zero floating error.
struct SynthesisPlan {
  enum class Mode { Raise, Lower };

  Mode mode = Mode::Raise;
  std::vector<std::uint64_t> modified_indices;          // 1-based
  std::vector<std::pair<Real, Real>> before_after;      // aligned with modified_indices
  std::optional<std::uint64_t> trailing_unpaired;       // odd-count pattern leftover
  std::uint64_t pairs_used = 0;
};

struct SynthesisResult {
  std::vector<Real> lengths;
  SynthesisPlan plan;
};

// For each consecutive half-index pair (n_{2k-1}, n_{2k}), every entry in
// the window [n_{2k-1}, n_{2k}] is raised to the value at n_{2k}.  Output
// dominates the input pointwise, stays nondecreasing, and carries exactly
// equal lengths on each pair.
SynthesisResult raise_lengths(std::span<const Real> base, const TwistPattern& pattern);

// Mirror construction: each pair window is lowered to the value at n_{2k-1}.
SynthesisResult lower_lengths(std::span<const Real> lengths, const TwistPattern& pattern);

// Wraps a user-supplied sparse index set into a validated pattern.
TwistPattern choose_pattern(std::vector<std::uint64_t> sparse_indices, std::uint64_t truncation,
                            bool declared_infinite);

}  // namespace flutekit
