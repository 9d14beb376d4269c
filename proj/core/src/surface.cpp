#include "flutekit/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "flutekit/errors.hpp"

namespace flutekit {

TwistPattern TwistPattern::none() { return TwistPattern{{}, false}; }

TwistPattern TwistPattern::every(std::uint64_t n) {
  TwistPattern p;
  p.half_indices.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) p.half_indices[i] = i + 1;
  p.declared_infinite = true;
  return p;
}

TwistPattern TwistPattern::from_indices(std::vector<std::uint64_t> indices,
                                        bool declared_infinite) {
  TwistPattern p{std::move(indices), declared_infinite};
  for (std::size_t i = 0; i < p.half_indices.size(); ++i) {
    if (p.half_indices[i] < 1) throw InputError("half-twist indices start at 1");
    if (i > 0 && p.half_indices[i] <= p.half_indices[i - 1]) {
      throw InputError("half-twist indices must be strictly increasing; offending entry #" +
                       std::to_string(i + 1) + " = " + std::to_string(p.half_indices[i]));
    }
  }
  return p;
}

bool TwistPattern::is_all(std::uint64_t n) const {
  if (half_indices.size() < n) return false;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (half_indices[i] != i + 1) return false;
  }
  return true;
}

Real LengthGenerator::at(std::uint64_t n) const {
  if (n < 1) throw InputError("length index is 1-based");
  switch (kind) {
    case Kind::ExplicitList:
      if (n > values.size()) {
        // Monotone extension beyond the explicit window.
        return values.empty() ? Real(0.0) : values.back();
      }
      return values[n - 1];
    case Kind::PLogN:
      return max(Real(kLengthFloor), p * log(Real(static_cast<unsigned long>(n))));
    case Kind::Power:
      return coeff * pow(Real(static_cast<unsigned long>(n)), expo);
    case Kind::Exponential:
      return coeff * pow(base, Real(static_cast<unsigned long>(n)));
    case Kind::Paired: {
      std::uint64_t m = (n % 2 == 0) ? n : n + 1;
      return paired_base->at(m);
    }
  }
  throw InputError("unknown generator kind");
}

LengthGenerator LengthGenerator::explicit_list(std::vector<Real> values) {
  LengthGenerator g;
  g.kind = Kind::ExplicitList;
  g.values = std::move(values);
  return g;
}

LengthGenerator LengthGenerator::p_log_n(Real p) {
  LengthGenerator g;
  g.kind = Kind::PLogN;
  g.p = std::move(p);
  return g;
}

LengthGenerator LengthGenerator::power(Real coeff, Real expo) {
  LengthGenerator g;
  g.kind = Kind::Power;
  g.coeff = std::move(coeff);
  g.expo = std::move(expo);
  return g;
}

LengthGenerator LengthGenerator::exponential(Real coeff, Real base) {
  LengthGenerator g;
  g.kind = Kind::Exponential;
  g.coeff = std::move(coeff);
  g.base = std::move(base);
  return g;
}

LengthGenerator LengthGenerator::paired(LengthGenerator base) {
  LengthGenerator g;
  g.kind = Kind::Paired;
  g.paired_base = std::make_shared<const LengthGenerator>(std::move(base));
  return g;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Real parse_real(const std::string& s) {
  if (s.empty()) throw InputError("empty numeric field");
  return Real::from_string(s);
}

}  // namespace

LengthGenerator LengthGenerator::parse(const std::string& expression) {
  auto colon = expression.find(':');
  std::string head = expression.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : expression.substr(colon + 1);
  if (head == "plog") {
    return p_log_n(parse_real(rest));
  }
  if (head == "power") {
    auto parts = split(rest, ':');
    if (parts.size() != 2) throw InputError("power generator wants power:coeff:exponent");
    return power(parse_real(parts[0]), parse_real(parts[1]));
  }
  if (head == "exp") {
    auto parts = split(rest, ':');
    if (parts.size() != 2) throw InputError("exponential generator wants exp:coeff:base");
    return exponential(parse_real(parts[0]), parse_real(parts[1]));
  }
  if (head == "pairs-of") {
    return paired(parse(rest));
  }
  if (head == "vals") {
    std::vector<Real> vs;
    for (const auto& tok : split(rest, ',')) vs.push_back(parse_real(tok));
    return explicit_list(std::move(vs));
  }
  if (head == "list") {
    std::ifstream in(rest);
    if (!in) throw InputError("cannot open length file: " + rest);
    std::vector<Real> vs;
    std::string tok;
    while (in >> tok) vs.push_back(parse_real(tok));
    if (vs.empty()) throw InputError("length file is empty: " + rest);
    return explicit_list(std::move(vs));
  }
  throw InputError("unknown length generator: " + expression);
}

std::string LengthGenerator::describe() const {
  switch (kind) {
    case Kind::ExplicitList:
      return "explicit-list[" + std::to_string(values.size()) + "]";
    case Kind::PLogN:
      return "plog:" + p.str(8);
    case Kind::Power:
      return "power:" + coeff.str(8) + ":" + expo.str(8);
    case Kind::Exponential:
      return "exp:" + coeff.str(8) + ":" + base.str(8);
    case Kind::Paired:
      return "pairs-of:" + paired_base->describe();
  }
  return "?";
}

std::vector<Real> expand_lengths(const LengthGenerator& g, std::uint64_t n) {
  if (n < 1) throw InputError("expand_lengths needs n >= 1");
  if (g.kind == LengthGenerator::Kind::ExplicitList && g.values.size() < n) {
    throw InputError("explicit length list has " + std::to_string(g.values.size()) +
                     " entries, need " + std::to_string(n));
  }
  std::vector<Real> out;
  out.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    Real v = g.at(i);
    if (!(v > Real(0.0))) {
      throw InputError("generator " + g.describe() + " produced a nonpositive length at index " +
                       std::to_string(i));
    }
    if (i > 1 && v < out.back()) {
      throw InputError("generator " + g.describe() + " produced a decreasing length at index " +
                       std::to_string(i));
    }
    out.push_back(std::move(v));
  }
  return out;
}

Real FluteDescriptor::length_beyond(std::uint64_t n) const {
  if (n <= truncation) return lengths[n - 1];
  if (generator.has_value() && generator->kind != LengthGenerator::Kind::ExplicitList) {
    return generator->at(n);
  }
  return lengths.back();
}

std::vector<Violation> validate_flute(const FluteDescriptor& d) {
  std::vector<Violation> out;
  if (d.truncation < 2) out.push_back({0, "truncation must be at least 2"});
  if (d.lengths.size() != d.truncation) {
    out.push_back({0, "descriptor carries " + std::to_string(d.lengths.size()) +
                          " lengths but truncation is " + std::to_string(d.truncation)});
    return out;
  }
  for (std::size_t i = 0; i < d.lengths.size(); ++i) {
    if (!(d.lengths[i] > Real(0.0))) {
      out.push_back({i + 1, "length must be positive"});
    }
    if (i > 0 && d.lengths[i] < d.lengths[i - 1]) {
      out.push_back({i + 1, "lengths decrease at this index"});
    }
  }
  const auto& h = d.twists.half_indices;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] < 1) out.push_back({i + 1, "half-twist index below 1"});
    if (i > 0 && h[i] <= h[i - 1]) {
      out.push_back({i + 1, "half-twist indices not strictly increasing"});
    }
  }
  if (!h.empty() && h.back() > d.truncation) {
    out.push_back({h.back(), "half-twist index exceeds the truncation window"});
  }
  if (d.twists.declared_infinite && h.empty()) {
    out.push_back({0, "pattern is declared infinite but has no witness half-twist in the "
                      "truncation window"});
  }
  return out;
}

void require_valid(const FluteDescriptor& d) {
  auto v = validate_flute(d);
  if (v.empty()) return;
  std::string msg = "invalid flute descriptor:";
  for (const auto& viol : v) {
    msg += "\n  - ";
    if (viol.index > 0) msg += "index " + std::to_string(viol.index) + ": ";
    msg += viol.message;
  }
  throw InputError(msg);
}

std::vector<Violation> validate_basic_end(const BasicEndDescriptor& d) {
  std::vector<Violation> out = validate_flute(d.flute);
  if (!(d.beta_bound > Real(0.0))) {
    out.push_back({0, "beta_bound must be a positive upper bound"});
  }
  for (std::size_t i = 0; i < d.beta_lengths.size(); ++i) {
    if (d.beta_lengths[i] < Real(0.0)) {
      out.push_back({i + 1, "beta length must be nonnegative (0 encodes a puncture)"});
    }
  }
  return out;
}

namespace {

void validate_node(const EndTreeNode& node, const std::string& path,
                   std::vector<Violation>& out) {
  std::vector<Violation> local =
      std::holds_alternative<FluteDescriptor>(node.surface)
          ? validate_flute(std::get<FluteDescriptor>(node.surface))
          : validate_basic_end(std::get<BasicEndDescriptor>(node.surface));
  for (auto& v : local) {
    v.message = path + ": " + v.message;
    out.push_back(std::move(v));
  }
  if (!node.children.empty() && std::holds_alternative<FluteDescriptor>(node.surface)) {
    out.push_back({0, path + ": a flute node has no beta borders to attach children to"});
  }
  std::vector<std::uint64_t> used;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& ch = node.children[i];
    std::string cpath = path + ".children[" + std::to_string(i) + "]";
    if (ch.attach_at < 1) out.push_back({0, cpath + ": attach_at is 1-based"});
    if (std::find(used.begin(), used.end(), ch.attach_at) != used.end()) {
      out.push_back({ch.attach_at, cpath + ": beta border already used by a sibling"});
    }
    used.push_back(ch.attach_at);
    if (const auto* be = std::get_if<BasicEndDescriptor>(&node.surface)) {
      if (ch.attach_at > be->beta_lengths.size()) {
        out.push_back({ch.attach_at, cpath + ": attach_at exceeds the parent's beta borders"});
      }
    }
    validate_node(ch, cpath, out);
  }
}

}  // namespace

std::vector<Violation> validate_tree(const EndTree& t) {
  std::vector<Violation> out;
  validate_node(t.root, "root", out);
  return out;
}

TwistPattern parse_pattern(const std::string& expression, std::uint64_t truncation) {
  auto colon = expression.find(':');
  std::string head = expression.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : expression.substr(colon + 1);
  if (head == "all") return TwistPattern::every(truncation);
  if (head == "none") return TwistPattern::none();
  if (head == "list") {
    std::vector<std::uint64_t> idx;
    for (const auto& tok : split(rest, ',')) idx.push_back(std::stoull(tok));
    return TwistPattern::from_indices(std::move(idx), false);
  }
  if (head == "arith") {
    auto parts = split(rest, ':');
    if (parts.size() != 2) throw InputError("arith pattern wants arith:start:step");
    std::uint64_t start = std::stoull(parts[0]), step = std::stoull(parts[1]);
    if (step < 1) throw InputError("arith pattern needs step >= 1");
    std::vector<std::uint64_t> idx;
    for (std::uint64_t n = start; n <= truncation; n += step) idx.push_back(n);
    return TwistPattern::from_indices(std::move(idx), true);
  }
  if (head == "geom") {
    auto parts = split(rest, ':');
    if (parts.size() != 2) throw InputError("geom pattern wants geom:first:ratio");
    std::uint64_t first = std::stoull(parts[0]), ratio = std::stoull(parts[1]);
    if (ratio < 2) throw InputError("geom pattern needs an integer ratio >= 2");
    std::vector<std::uint64_t> idx;
    for (std::uint64_t n = first; n <= truncation; n *= ratio) idx.push_back(n);
    return TwistPattern::from_indices(std::move(idx), true);
  }
  if (head == "factorial") {
    std::vector<std::uint64_t> idx;
    std::uint64_t f = 1;
    for (std::uint64_t k = 1; f <= truncation; ++k) {
      if (idx.empty() || f != idx.back()) idx.push_back(f);
      if (f > truncation / (k + 1)) break;
      f *= (k + 1);
    }
    return TwistPattern::from_indices(std::move(idx), true);
  }
  throw InputError("unknown twist pattern: " + expression);
}

}  // namespace flutekit
