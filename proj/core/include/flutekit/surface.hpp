#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "flutekit/real.hpp"

namespace flutekit {

// Generators like p*log(n) vanish at n = 1; lengths are clamped to this
// floor (the type criteria are tail conditions, so the first term never
// decides a verdict).
inline const double kLengthFloor = 1e-3;

// Indices n with twist 1/2; all other twists are 0.
struct TwistPattern {
  std::vector<std::uint64_t> half_indices;  // strictly increasing, >= 1
  bool declared_infinite = false;

  static TwistPattern none();
  static TwistPattern every(std::uint64_t n);
  static TwistPattern from_indices(std::vector<std::uint64_t> indices, bool declared_infinite);

  bool empty() const { return half_indices.empty(); }
  // Covers every index 1..n.
  bool is_all(std::uint64_t n) const;
};

// Deterministic rule producing a positive nondecreasing length sequence.
struct LengthGenerator {
  enum class Kind { ExplicitList, PLogN, Power, Exponential, Paired };

  Kind kind = Kind::ExplicitList;
  std::vector<Real> values;       // ExplicitList
  Real p{0.0};                    // PLogN: max(floor, p*log n)
  Real coeff{1.0};                // Power: coeff*n^expo; Exponential: coeff*base^n
  Real expo{1.0};
  Real base{1.0};
  std::shared_ptr<const LengthGenerator> paired_base;  // Paired

  // 1-based evaluation; throws InputError past the end of an explicit list.
  Real at(std::uint64_t n) const;

  static LengthGenerator explicit_list(std::vector<Real> values);
  static LengthGenerator p_log_n(Real p);
  static LengthGenerator power(Real coeff, Real expo);
  static LengthGenerator exponential(Real coeff, Real base);
  static LengthGenerator paired(LengthGenerator base);

  // Inline expression, e.g. "plog:2.5", "power:1:2", "exp:1:2.718...",
  // "pairs-of:plog:2", "vals:1,2,3", "list:lengths.txt".
  static LengthGenerator parse(const std::string& expression);
  std::string describe() const;
};

// First N terms of the generated sequence, validated positive and
// nondecreasing (a later expansion extends a shorter one prefix-exactly).
std::vector<Real> expand_lengths(const LengthGenerator& g, std::uint64_t n);

struct FluteDescriptor {
  std::vector<Real> lengths;  // size == truncation
  TwistPattern twists;
  std::uint64_t truncation = 0;
  // Retained so the sequence can be extended past the truncation window
  // (the final odd shear needs one length beyond it).
  std::optional<LengthGenerator> generator;

  // l_n for n > truncation: generator value if available, otherwise the
  // last explicit length repeated.
  Real length_beyond(std::uint64_t n) const;
};

struct Violation {
  std::uint64_t index = 0;  // 1-based offending index, 0 if global
  std::string message;
};

// Structural checks behind the classification theorems: positive
// nondecreasing lengths, strictly increasing half-twist indices inside the
// truncation window, a declared-infinite pattern with at least one witness.
std::vector<Violation> validate_flute(const FluteDescriptor& d);

// Throws InputError listing every violation.
void require_valid(const FluteDescriptor& d);

struct BasicEndDescriptor {
  FluteDescriptor flute;
  std::vector<Real> beta_lengths;  // 0 encodes a puncture
  Real beta_bound{0.0};            // upper bound hypothesis M
  std::vector<std::uint64_t> finite_area_borders;  // metadata only
};

std::vector<Violation> validate_basic_end(const BasicEndDescriptor& d);

struct EndTreeNode {
  std::variant<FluteDescriptor, BasicEndDescriptor> surface;
  std::uint64_t attach_at = 0;  // beta border of the parent; 0 for the root
  std::string name;
  std::vector<EndTreeNode> children;
};

struct EndTree {
  EndTreeNode root;
};

std::vector<Violation> validate_tree(const EndTree& t);

using ParsedSurface = std::variant<FluteDescriptor, BasicEndDescriptor, EndTree>;

// Parses the JSON input document (see README for the schema) and validates
// it; throws InputError with the path of the offending field.
ParsedSurface parse_surface(const std::string& json_text);

// Inline twist-pattern expressions for the CLI: "all", "none", "list:1,2,6",
// "arith:start:step", "geom:first:ratio", "factorial".  Rule-based kinds
// declare an infinite half-twist set; "list:"/"none" do not.
TwistPattern parse_pattern(const std::string& expression, std::uint64_t truncation);

}  // namespace flutekit
