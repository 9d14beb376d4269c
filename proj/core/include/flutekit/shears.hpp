#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flutekit/real.hpp"
#include "flutekit/surface.hpp"

namespace flutekit {

// Orthogeodesic lengths l(eta_n), n = 1..N-1, between consecutive lifted
// cuffs of a flute.
struct EtaSequence {
  std::vector<Real> values;

  const Real& at(std::uint64_t n) const { return values.at(n - 1); }
  std::uint64_t size() const { return values.size(); }
};

// Which formula produced a shear entry.
enum class ShearRule : std::uint8_t {
  Normalized,    // s_1 := 0 (free normalization)
  Even,          // s_{2n}   = log sinh^2(eta_n / 2)
  OddZeroTwist,  // s_{2n-1} = logcoth(eta_{n-1}/2) + logcoth(eta_n/2)
  OddHalfOddK,   // ... + l_n/2   (n = n_k, k odd)
  OddHalfEvenK,  // ... - l_n/2   (n = n_k, k even)
};

struct ShearSequence {
  // shears[i] is s_{i+1}; size 2N-1 with shears[0] = 0.
  std::vector<Real> shears;
  std::vector<ShearRule> provenance;
  // offsets[n-1] is a_n for the cuff index n = 1..N.
  std::vector<Real> offsets;
  EtaSequence etas;  // eta_1..eta_{N-1}
  // The final odd shear needs l_{N+1}; true when it came from repeating the
  // last explicit length rather than evaluating a generator.
  bool extended_by_repeat = false;

  std::uint64_t size() const { return shears.size(); }
  const Real& at(std::uint64_t idx) const { return shears.at(idx - 1); }  // 1-based
};

// Orthogeodesic length between cuffs of lengths la and lb (Lambert
// quadrilateral formula), evaluated as log coth(la/4) + log coth(lb/4).
Real eta_length(const Real& la, const Real& lb);

// s_{2n} = log sinh^2(eta/2); negative exactly when eta < 2 asinh(1).
Real even_shear(const Real& eta);

// s_{2n-1} = log coth(eta_prev/2) + log coth(eta_next/2) + offset.
Real odd_shear(const Real& eta_prev, const Real& eta_next, const Real& offset);

// Full zig-zag shear sequence s_1..s_{2N-1} of a validated descriptor.
ShearSequence shear_sequence(const FluteDescriptor& d);

// Twist offsets a_n for n = 1..N: 0 off-pattern, +l_n/2 at odd-k half
// twists, -l_n/2 at even-k half twists.
std::vector<Real> twist_offsets(std::span<const Real> lengths, const TwistPattern& pattern);

}  // namespace flutekit
