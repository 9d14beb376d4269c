// Command-line front end: analyze | develop | synthesize | endtree.
//
// Every run embeds its full configuration in the report so results can be
// reproduced byte for byte from the report alone.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "flutekit/criteria.hpp"
#include "flutekit/develop.hpp"
#include "flutekit/end_tree.hpp"
#include "flutekit/errors.hpp"
#include "flutekit/reports.hpp"
#include "flutekit/synthesis.hpp"

namespace {

using flutekit::DivergencePolicy;
using flutekit::FluteDescriptor;
using flutekit::Real;
using ordered_json = nlohmann::ordered_json;

struct CommonOptions {
  std::string input_path;
  std::string generator;
  std::string pattern = "none";
  bool declared_infinite = false;
  std::uint64_t truncation = 0;
  long precision_bits = 256;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out_path;
  DivergencePolicy policy;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool wants_generator) {
  cmd->add_option("--input", opt.input_path, "JSON surface document (see README for the schema)");
  if (wants_generator) {
    cmd->add_option("--generator", opt.generator,
                    "inline length generator, e.g. plog:2, pairs-of:plog:1, power:1:2, "
                    "exp:1:2.5, vals:1,2,3, list:file.txt");
    cmd->add_option("--pattern", opt.pattern,
                    "half-twist pattern: all | none | list:n1,n2 | arith:start:step | "
                    "geom:first:ratio | factorial");
    cmd->add_flag("--declared-infinite", opt.declared_infinite,
                  "declare that a list: pattern continues indefinitely");
    cmd->add_option("--truncate", opt.truncation, "number of cuffs to instantiate");
  }
  cmd->add_option("--precision-bits", opt.precision_bits, "working mantissa width (>= 64)")
      ->default_val(256);
  cmd->add_option("--policy-window", opt.policy.window, "divergence tail window")->default_val(512);
  cmd->add_option("--policy-delta", opt.policy.delta, "bounded-below threshold")
      ->default_val(1e-9);
  cmd->add_option("--policy-margin", opt.policy.margin, "dead band around critical exponents")
      ->default_val(0.05);
  cmd->add_option("--policy-resid", opt.policy.resid, "max residual for a trusted fit")
      ->default_val(0.1);
  cmd->add_option("--seed", opt.seed, "seed recorded for reproducibility")->default_val(0);
  cmd->add_option("--format", opt.format, "text | structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->default_val("text");
  cmd->add_option("--out", opt.out_path, "write the report (or trace) here instead of stdout");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw flutekit::InputError("cannot open input file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw flutekit::InputError("cannot open output file: " + path);
  out << content;
}

ordered_json config_json(const std::string& command, const CommonOptions& opt) {
  return ordered_json{{"command", command},
                      {"input", opt.input_path},
                      {"generator", opt.generator},
                      {"pattern", opt.pattern},
                      {"declared_infinite", opt.declared_infinite},
                      {"truncation", opt.truncation},
                      {"precision_bits", opt.precision_bits},
                      {"policy",
                       ordered_json{{"window", opt.policy.window},
                                    {"delta", opt.policy.delta},
                                    {"margin", opt.policy.margin},
                                    {"resid", opt.policy.resid}}},
                      {"seed", opt.seed},
                      {"format", opt.format}};
}

std::string config_text(const std::string& command, const CommonOptions& opt) {
  std::ostringstream out;
  out << "flutekit " << command << " | precision " << opt.precision_bits << " bits";
  if (!opt.input_path.empty()) out << " | input " << opt.input_path;
  if (!opt.generator.empty()) {
    out << " | generator " << opt.generator << " | pattern " << opt.pattern << " | N "
        << opt.truncation;
  }
  out << " | policy w=" << opt.policy.window << " d=" << opt.policy.delta
      << " m=" << opt.policy.margin << " r=" << opt.policy.resid << " | seed " << opt.seed
      << "\n";
  return out.str();
}

flutekit::ParsedSurface load_surface(const CommonOptions& opt) {
  if (!opt.input_path.empty()) {
    return flutekit::parse_surface(read_file(opt.input_path));
  }
  if (opt.generator.empty()) {
    throw flutekit::InputError("provide --input or --generator");
  }
  if (opt.truncation < 2) throw flutekit::InputError("--truncate must be at least 2");
  FluteDescriptor d;
  d.generator = flutekit::LengthGenerator::parse(opt.generator);
  d.truncation = opt.truncation;
  d.lengths = flutekit::expand_lengths(*d.generator, opt.truncation);
  d.twists = flutekit::parse_pattern(opt.pattern, opt.truncation);
  if (opt.declared_infinite) d.twists.declared_infinite = true;
  return d;
}

FluteDescriptor require_flute(flutekit::ParsedSurface surface, const char* command) {
  if (auto* f = std::get_if<FluteDescriptor>(&surface)) return std::move(*f);
  if (auto* b = std::get_if<flutekit::BasicEndDescriptor>(&surface)) return std::move(b->flute);
  throw flutekit::InputError(std::string(command) +
                             " works on a single flute or basic-end; use `flutekit endtree` "
                             "for trees");
}

std::vector<std::uint64_t> checkpoints(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t cp : {std::uint64_t{100}, std::uint64_t{1000}, std::uint64_t{10000}}) {
    if (cp < n) out.push_back(cp);
  }
  out.push_back(n);
  return out;
}

int run_analyze(const CommonOptions& opt) {
  flutekit::ParsedSurface surface = load_surface(opt);
  flutekit::Verdict verdict;
  bool beta_checked = false;
  const FluteDescriptor* flute = nullptr;
  if (auto* b = std::get_if<flutekit::BasicEndDescriptor>(&surface)) {
    verdict = flutekit::classify_end(*b, opt.policy);
    beta_checked = true;
    flute = &b->flute;
  } else if (auto* f = std::get_if<FluteDescriptor>(&surface)) {
    verdict = flutekit::classify_flute(*f, opt.policy);
    flute = f;
  } else {
    throw flutekit::InputError("analyze works on a flute or basic-end; use `flutekit endtree`");
  }

  // Evidence sections: the alternating sums at checkpoints, and the
  // horocyclic partial sums when the orthogeodesics are representable.
  ordered_json sigma_table = ordered_json::array();
  std::string sigma_text;
  if (!flute->twists.empty()) {
    flutekit::AlternatingSums sums = flutekit::alternating_sums(flute->lengths, flute->twists);
    for (std::uint64_t k : checkpoints(sums.sigma.size())) {
      sigma_table.push_back(
          ordered_json{{"k", k}, {"sigma", sums.sigma[k - 1].str(12)}});
      sigma_text += "  sigma_" + std::to_string(k) + " = " + sums.sigma[k - 1].str(10) + "\n";
    }
  }
  ordered_json horo_table = ordered_json::array();
  std::string horo_text;
  std::string horo_note;
  try {
    flutekit::HorocyclicLengths h =
        flutekit::horocyclic_lengths(flutekit::shear_sequence(*flute));
    for (std::uint64_t k : checkpoints(h.log_values.size())) {
      flutekit::Real ls = flutekit::log_sum_exp(h.log_values, k);
      horo_table.push_back(ordered_json{{"terms", k}, {"log_partial_sum", ls.str(12)}});
      horo_text += "  log sum l(h_1..h_" + std::to_string(k) + ") = " + ls.str(10) + "\n";
    }
  } catch (const flutekit::PrecisionError& e) {
    horo_note = e.what();
  }

  if (opt.format == "structured") {
    ordered_json doc{{"config", config_json("analyze", opt)},
                     {"beta_bound_checked", beta_checked},
                     {"report", ordered_json::parse(flutekit::verdict_json(verdict))},
                     {"alternating_sums", sigma_table},
                     {"horocyclic_log_partial_sums", horo_table}};
    if (!horo_note.empty()) doc["horocyclic_note"] = horo_note;
    write_output(opt.out_path, doc.dump(2) + "\n");
  } else {
    std::string out = config_text("analyze", opt) + flutekit::verdict_text(verdict);
    if (!sigma_text.empty()) out += "alternating sums:\n" + sigma_text;
    if (!horo_text.empty()) out += "horocyclic path:\n" + horo_text;
    if (!horo_note.empty()) out += "horocyclic path: unavailable (" + horo_note + ")\n";
    write_output(opt.out_path, out);
  }
  return 0;
}

int run_develop(const CommonOptions& opt, std::uint64_t steps, const std::string& svg_path) {
  FluteDescriptor flute = require_flute(load_surface(opt), "develop");
  flutekit::ShearSequence shears = flutekit::shear_sequence(flute);
  flutekit::DevelopOptions dev;
  dev.max_steps = steps;
  flutekit::GeodesicChain chain = flutekit::develop_chain(shears, dev);

  if (!svg_path.empty()) {
    flutekit::RenderOptions render;
    write_output(svg_path, flutekit::render_disk(chain, render));
  }
  std::ostringstream summary;
  summary << config_text("develop", opt) << "geodesics: " << chain.geodesics.size()
          << "\nmax roundtrip error: " << chain.max_roundtrip_error.str(6)
          << "\nfinal gap: " << chain.gaps.back().str(12) << "\n";
  if (!opt.out_path.empty()) {
    write_output(opt.out_path, flutekit::gap_trace_tsv(chain));
    std::cout << summary.str() << "gap trace written to " << opt.out_path << "\n";
  } else {
    std::cout << summary.str();
    std::cout << flutekit::gap_trace_tsv(chain);
  }
  return 0;
}

int run_synthesize(const CommonOptions& opt, const std::string& mode) {
  FluteDescriptor flute = require_flute(load_surface(opt), "synthesize");
  if (flute.twists.empty()) {
    throw flutekit::InputError("synthesize needs a half-twist pattern (--pattern)");
  }
  flutekit::SynthesisResult result = (mode == "raise")
                                         ? flutekit::raise_lengths(flute.lengths, flute.twists)
                                         : flutekit::lower_lengths(flute.lengths, flute.twists);
  FluteDescriptor adjusted = flute;
  adjusted.lengths = result.lengths;
  adjusted.generator.reset();
  flutekit::Verdict verification = flutekit::classify_flute(adjusted, opt.policy);

  if (opt.format == "structured") {
    ordered_json lengths = ordered_json::array();
    if (result.lengths.size() <= 10000) {
      for (const auto& l : result.lengths) lengths.push_back(l.str());
    }
    ordered_json doc{{"config", config_json("synthesize", opt)},
                     {"mode", mode},
                     {"plan", ordered_json::parse(flutekit::synthesis_plan_json(result.plan))},
                     {"lengths", lengths},
                     {"verification",
                      ordered_json::parse(flutekit::verdict_json(verification))}};
    write_output(opt.out_path, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << config_text("synthesize", opt) << flutekit::synthesis_plan_text(result.plan)
        << "verification: " << flutekit::verdict_text(verification);
    write_output(opt.out_path, out.str());
  }
  return 0;
}

int run_endtree(const CommonOptions& opt) {
  if (opt.input_path.empty()) throw flutekit::InputError("endtree needs --input");
  flutekit::ParsedSurface surface = flutekit::parse_surface(read_file(opt.input_path));
  flutekit::EndTree tree;
  if (auto* t = std::get_if<flutekit::EndTree>(&surface)) {
    tree = std::move(*t);
  } else if (auto* b = std::get_if<flutekit::BasicEndDescriptor>(&surface)) {
    tree.root.surface = std::move(*b);
  } else {
    tree.root.surface = std::move(std::get<FluteDescriptor>(surface));
  }
  flutekit::EndReport report = flutekit::classify_surface(tree, opt.policy);
  if (opt.format == "structured") {
    ordered_json doc{{"config", config_json("endtree", opt)},
                     {"report", ordered_json::parse(flutekit::end_report_json(report))}};
    write_output(opt.out_path, doc.dump(2) + "\n");
  } else {
    write_output(opt.out_path, config_text("endtree", opt) + flutekit::end_report_text(report));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"type problem toolkit for infinite symmetric surfaces"};
  app.require_subcommand(1);

  CommonOptions a_opt, d_opt, s_opt, e_opt;
  std::uint64_t dev_steps = 0;
  std::string svg_path;
  std::string synth_mode = "raise";

  CLI::App* analyze = app.add_subcommand("analyze", "classify a flute or basic-end surface");
  add_common(analyze, a_opt, true);

  CLI::App* develop = app.add_subcommand("develop", "develop the nested geodesic chain");
  add_common(develop, d_opt, true);
  develop->add_option("--steps", dev_steps, "development steps (default: whole shear sequence)");
  develop->add_option("--svg-out", svg_path, "write a disk-model drawing here");

  CLI::App* synthesize =
      app.add_subcommand("synthesize", "adjust lengths so the half-twist certificate applies");
  add_common(synthesize, s_opt, true);
  synthesize->add_option("--mode", synth_mode, "raise | lower")
      ->check(CLI::IsMember({"raise", "lower"}))
      ->default_val("raise");

  CLI::App* endtree = app.add_subcommand("endtree", "classify a tree of end surfaces");
  add_common(endtree, e_opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) {
      flutekit::set_working_precision(a_opt.precision_bits);
      return run_analyze(a_opt);
    }
    if (develop->parsed()) {
      flutekit::set_working_precision(d_opt.precision_bits);
      return run_develop(d_opt, dev_steps, svg_path);
    }
    if (synthesize->parsed()) {
      flutekit::set_working_precision(s_opt.precision_bits);
      return run_synthesize(s_opt, synth_mode);
    }
    if (endtree->parsed()) {
      flutekit::set_working_precision(e_opt.precision_bits);
      return run_endtree(e_opt);
    }
  } catch (const flutekit::PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const flutekit::RefusalError& e) {
    std::cerr << "hypothesis refused: " << e.what() << "\n";
    return 4;
  } catch (const flutekit::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const flutekit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
