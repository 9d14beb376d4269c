#include "flutekit/synthesis.hpp"

#include "flutekit/errors.hpp"

namespace flutekit {

namespace {

void check_inputs(std::span<const Real> values, const TwistPattern& pattern) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > Real(0.0))) {
      throw InputError("length at index " + std::to_string(i + 1) + " must be positive");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw InputError("lengths decrease at index " + std::to_string(i + 1) +
                       "; synthesis needs a nondecreasing base");
    }
  }
  if (!pattern.half_indices.empty() && pattern.half_indices.back() > values.size()) {
    throw InputError("half-twist index " + std::to_string(pattern.half_indices.back()) +
                     " exceeds the length window");
  }
}

SynthesisResult window_adjust(std::span<const Real> values, const TwistPattern& pattern,
                              SynthesisPlan::Mode mode) {
  check_inputs(values, pattern);
  SynthesisResult out;
  out.plan.mode = mode;
  out.lengths.assign(values.begin(), values.end());

  const auto& idx = pattern.half_indices;
  const std::size_t pairs = idx.size() / 2;
  out.plan.pairs_used = pairs;
  if (idx.size() % 2 == 1) out.plan.trailing_unpaired = idx.back();

  for (std::size_t k = 0; k < pairs; ++k) {
    std::uint64_t lo = idx[2 * k];
    std::uint64_t hi = idx[2 * k + 1];
    // The same stored value is written across the window, so the pair's
    // lengths compare equal bit for bit.
    Real target = (mode == SynthesisPlan::Mode::Raise) ? out.lengths[hi - 1] : out.lengths[lo - 1];
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (out.lengths[n - 1] != target) {
        out.plan.modified_indices.push_back(n);
        out.plan.before_after.emplace_back(out.lengths[n - 1], target);
        out.lengths[n - 1] = target;
      }
    }
  }
  return out;
}

}  // namespace

SynthesisResult raise_lengths(std::span<const Real> base, const TwistPattern& pattern) {
  return window_adjust(base, pattern, SynthesisPlan::Mode::Raise);
}

SynthesisResult lower_lengths(std::span<const Real> lengths, const TwistPattern& pattern) {
  return window_adjust(lengths, pattern, SynthesisPlan::Mode::Lower);
}

TwistPattern choose_pattern(std::vector<std::uint64_t> sparse_indices, std::uint64_t truncation,
                            bool declared_infinite) {
  TwistPattern p = TwistPattern::from_indices(std::move(sparse_indices), declared_infinite);
  if (!p.half_indices.empty() && p.half_indices.back() > truncation) {
    throw InputError("pattern index " + std::to_string(p.half_indices.back()) +
                     " exceeds the truncation " + std::to_string(truncation));
  }
  return p;
}

}  // namespace flutekit
