#include <json.hpp>

#include "flutekit/errors.hpp"
#include "flutekit/surface.hpp"

namespace flutekit {

namespace {

using nlohmann::json;

Real real_field(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Real(static_cast<long>(j.get<long long>()));
  if (j.is_number()) return Real(j.get<double>());
  if (j.is_string()) return Real::from_string(j.get<std::string>());
  throw InputError(where + ": expected a number or numeric string");
}

std::vector<Real> real_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of reals");
  std::vector<Real> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(real_field(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

LengthGenerator generator_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return LengthGenerator::parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) {
    throw InputError(where + ": generator needs a kind");
  }
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "p-log-n") return LengthGenerator::p_log_n(real_field(j.at("p"), where + ".p"));
  if (kind == "power") {
    return LengthGenerator::power(real_field(j.at("coeff"), where + ".coeff"),
                                  real_field(j.at("exponent"), where + ".exponent"));
  }
  if (kind == "exponential") {
    return LengthGenerator::exponential(real_field(j.at("coeff"), where + ".coeff"),
                                        real_field(j.at("base"), where + ".base"));
  }
  if (kind == "paired") {
    return LengthGenerator::paired(generator_from_json(j.at("base"), where + ".base"));
  }
  if (kind == "explicit-list") {
    return LengthGenerator::explicit_list(real_array(j.at("values"), where + ".values"));
  }
  throw InputError(where + ": unknown generator kind '" + kind + "'");
}

FluteDescriptor flute_from_json(const json& j, const std::string& where) {
  FluteDescriptor d;
  if (!j.contains("truncation")) throw InputError(where + ": missing truncation");
  d.truncation = j.at("truncation").get<std::uint64_t>();

  if (j.contains("lengths") == j.contains("generator")) {
    throw InputError(where + ": provide exactly one of lengths / generator");
  }
  if (j.contains("lengths")) {
    auto vals = real_array(j.at("lengths"), where + ".lengths");
    d.generator = LengthGenerator::explicit_list(vals);
    d.lengths = expand_lengths(*d.generator, d.truncation);
  } else {
    d.generator = generator_from_json(j.at("generator"), where + ".generator");
    d.lengths = expand_lengths(*d.generator, d.truncation);
  }

  bool declared = j.value("declared_infinite", false);
  if (j.contains("half_twist_indices") && j.contains("half_twist_pattern")) {
    throw InputError(where + ": provide at most one of half_twist_indices / half_twist_pattern");
  }
  if (j.contains("half_twist_indices")) {
    std::vector<std::uint64_t> idx;
    for (const auto& v : j.at("half_twist_indices")) idx.push_back(v.get<std::uint64_t>());
    d.twists = TwistPattern::from_indices(std::move(idx), declared);
  } else if (j.contains("half_twist_pattern")) {
    d.twists = parse_pattern(j.at("half_twist_pattern").get<std::string>(), d.truncation);
    if (j.contains("declared_infinite")) d.twists.declared_infinite = declared;
  } else {
    d.twists = TwistPattern::none();
    if (j.contains("declared_infinite")) d.twists.declared_infinite = declared;
  }
  return d;
}

BasicEndDescriptor basic_end_from_json(const json& j, const std::string& where) {
  BasicEndDescriptor d;
  d.flute = flute_from_json(j, where);
  if (!j.contains("beta_bound")) {
    throw InputError(where +
                     ": basic-end needs beta_bound (a boundedness hypothesis is required; "
                     "unbounded beta borders are refused)");
  }
  d.beta_bound = real_field(j.at("beta_bound"), where + ".beta_bound");
  if (j.contains("beta_lengths")) {
    d.beta_lengths = real_array(j.at("beta_lengths"), where + ".beta_lengths");
  } else if (j.contains("beta_constant")) {
    Real v = real_field(j.at("beta_constant"), where + ".beta_constant");
    d.beta_lengths.assign(d.flute.truncation > 0 ? d.flute.truncation - 1 : 0, v);
  } else {
    throw InputError(where + ": basic-end needs beta_lengths or beta_constant");
  }
  if (j.contains("finite_area_borders")) {
    for (const auto& v : j.at("finite_area_borders")) {
      d.finite_area_borders.push_back(v.get<std::uint64_t>());
    }
  }
  return d;
}

EndTreeNode node_from_json(const json& j, const std::string& where) {
  EndTreeNode node;
  std::string kind = j.value("kind", "flute");
  if (kind == "flute") {
    node.surface = flute_from_json(j, where);
  } else if (kind == "basic-end") {
    node.surface = basic_end_from_json(j, where);
  } else {
    throw InputError(where + ": tree nodes must be flute or basic-end, got '" + kind + "'");
  }
  node.name = j.value("name", "");
  if (j.contains("children")) {
    const auto& ch = j.at("children");
    if (!ch.is_array()) throw InputError(where + ".children: expected an array");
    for (std::size_t i = 0; i < ch.size(); ++i) {
      std::string cw = where + ".children[" + std::to_string(i) + "]";
      if (!ch[i].contains("attach_at")) throw InputError(cw + ": missing attach_at");
      if (!ch[i].contains("node")) throw InputError(cw + ": missing node");
      EndTreeNode child = node_from_json(ch[i].at("node"), cw + ".node");
      child.attach_at = ch[i].at("attach_at").get<std::uint64_t>();
      node.children.push_back(std::move(child));
    }
  }
  return node;
}

void throw_violations(const std::vector<Violation>& v, const std::string& what) {
  if (v.empty()) return;
  std::string msg = "invalid " + what + ":";
  for (const auto& viol : v) {
    msg += "\n  - ";
    if (viol.index > 0) msg += "index " + std::to_string(viol.index) + ": ";
    msg += viol.message;
  }
  throw InputError(msg);
}

}  // namespace

ParsedSurface parse_surface(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON input: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) {
    throw InputError("input document needs a top-level kind (flute | basic-end | end-tree)");
  }
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "flute") {
    FluteDescriptor d = flute_from_json(j, "flute");
    throw_violations(validate_flute(d), "flute descriptor");
    return d;
  }
  if (kind == "basic-end") {
    BasicEndDescriptor d = basic_end_from_json(j, "basic-end");
    throw_violations(validate_basic_end(d), "basic-end descriptor");
    return d;
  }
  if (kind == "end-tree") {
    if (!j.contains("root")) throw InputError("end-tree: missing root");
    EndTree t{node_from_json(j.at("root"), "root")};
    throw_violations(validate_tree(t), "end tree");
    return t;
  }
  throw InputError("unknown surface kind '" + kind + "'");
}

}  // namespace flutekit
