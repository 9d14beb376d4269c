// Acceptance suite: one line per criterion, nonzero exit when any fails.
//
// Criterion 7b is known-red: a zero-twist 3 log n chain converges at roughly
// n^(-2/3), so its gap still drifts by tens of percent between steps 200 and
// 2000; the 1% stabilization bound is unreachable at those indices.  The
// check is implemented exactly as stated and reports the measured drift.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "flutekit/criteria.hpp"
#include "flutekit/develop.hpp"
#include "flutekit/end_tree.hpp"
#include "flutekit/errors.hpp"
#include "flutekit/synthesis.hpp"
#include "support/oracles.hpp"

using namespace flutekit;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& details) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              details.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

FluteDescriptor gen_flute(const std::string& expr, std::uint64_t n, TwistPattern twists) {
  FluteDescriptor d;
  d.generator = LengthGenerator::parse(expr);
  d.truncation = n;
  d.lengths = expand_lengths(*d.generator, n);
  d.twists = std::move(twists);
  return d;
}

// 1. exp(shear) = sinh^2(rho/2) over 1000 random disjoint quadruples,
//    relative error < 1e-30 at 128-bit, in under 5 s.
void criterion_1() {
  PrecisionScope guard(128);
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240101);
  Real tol(1e-30);
  Real worst(0.0);
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    auto q = oracles::random_quadruple(rng);
    Real s = shear_of_edge(BoundaryPoint(q[0]), BoundaryPoint(q[1]), BoundaryPoint(q[2]),
                           BoundaryPoint(q[3]));
    Real rho = disjoint_geodesic_distance(Geodesic{BoundaryPoint(q[1]), BoundaryPoint(q[2])},
                                          Geodesic{BoundaryPoint(q[0]), BoundaryPoint(q[3])});
    Real sh = sinh(ldexp2(rho, -1));
    Real rel = abs(exp(s) - sh * sh) / (sh * sh);
    worst = max(worst, rel);
    ok = ok && rel < tol;
  }
  double dt = seconds_since(start);
  ok = ok && dt < 5.0;
  report(1, "shear-distance identity", ok,
         "1000 quadruples at 128-bit, worst relative error " + worst.str(4) + ", " +
             std::to_string(dt) + " s");
}

// 2. |asinh(1/sinh x) - log coth(x/2)| < 2 ulp on a 10^4-point log grid.
void criterion_2() {
  Real lo(1e-4), hi(50.0);
  const int points = 10000;
  Real ratio = exp(log(hi / lo) / Real(static_cast<long>(points - 1)));
  Real x = lo;
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    Real lhs = oracles::asinh_recip_sinh(x);
    Real rhs = log_coth(ldexp2(x, -1));
    worst = std::max(worst, ulp_distance(lhs, rhs, working_precision()));
    x = x * ratio;
  }
  report(2, "Lambert/log-coth identity", worst < 2.0,
         "10^4 grid points on [1e-4, 50], worst distance " + std::to_string(worst) + " ulp");
}

// 3. Proof inequalities: coth(x/2) > 2/x on (0, 50]; tanh(x/2) > x/5 on
//    (0, 4.92]; 1/cosh(x/2) > 1/(1+x) on (0, 4.93]; telescoping bound on
//    100 generated flutes with l_1 >= 0.001.  Zero violations.
void criterion_3() {
  int violations = 0;
  {
    Real lo(1e-6), hi(50.0);
    const int points = 10000;
    Real ratio = exp(log(hi / lo) / Real(static_cast<long>(points - 1)));
    Real x = lo;
    for (int i = 0; i < points; ++i) {
      if (!(coth(ldexp2(x, -1)) > Real(2.0) / x)) ++violations;
      x = x * ratio;
    }
  }
  for (int i = 1; i <= 2000; ++i) {
    Real x0 = Real(4.92) * Real(static_cast<long>(i)) / Real(2000L);
    if (!(tanh(ldexp2(x0, -1)) > x0 / Real(5.0))) ++violations;
    Real x1 = Real(4.93) * Real(static_cast<long>(i)) / Real(2000L);
    if (!(Real(1.0) + x1 > cosh(ldexp2(x1, -1)))) ++violations;
  }
  std::mt19937_64 rng(333);
  for (int flute = 0; flute < 100; ++flute) {
    std::vector<Real> lengths;
    lengths.push_back(Real(0.001) + oracles::uniform_real(rng, 0.0, 3.0));
    for (int i = 1; i < 50; ++i) {
      lengths.push_back(lengths.back() + oracles::uniform_real(rng, 0.0, 0.7));
    }
    std::vector<std::uint64_t> halves;
    for (std::uint64_t n = 1; n <= lengths.size(); ++n) {
      if (rng() % 2 == 0) halves.push_back(n);
    }
    FluteDescriptor d;
    d.truncation = lengths.size();
    d.lengths = lengths;
    d.twists = TwistPattern::from_indices(halves, !halves.empty());
    ShearSequence s = shear_sequence(d);
    for (std::uint64_t n = 2; n + 1 <= d.truncation; ++n) {
      Real lhs = exp(s.at(2 * n) + s.at(2 * n - 1));
      Real rhs = (s.etas.at(n) / s.etas.at(n - 1)) * exp(s.offsets[n - 1]);
      if (!(lhs > rhs)) ++violations;
    }
  }
  report(3, "proof inequality suite", violations == 0,
         std::to_string(violations) + " violations across grids and 100 generated flutes");
}

// 4. Zero-twist dichotomy at N = 10^4: p in {1, 2} parabolic, p in
//    {2.5, 3} not parabolic, under 10 s per case.
void criterion_4() {
  bool ok = true;
  std::string detail;
  struct Case {
    const char* gen;
    VerdictKind expect;
  };
  for (const Case& c : {Case{"plog:1", VerdictKind::Parabolic},
                        Case{"plog:2", VerdictKind::Parabolic},
                        Case{"plog:2.5", VerdictKind::NotParabolic},
                        Case{"plog:3", VerdictKind::NotParabolic}}) {
    auto start = std::chrono::steady_clock::now();
    Verdict v = classify_flute(gen_flute(c.gen, 10000, TwistPattern::none()));
    double dt = seconds_since(start);
    bool case_ok = v.kind == c.expect && dt < 10.0;
    ok = ok && case_ok;
    detail += std::string(c.gen) + "->" + verdict_name(v.kind) + " (" +
              std::to_string(dt).substr(0, 5) + "s) ";
  }
  report(4, "zero-twist p log n dichotomy", ok, detail);
}

// 5. Synthesis certificate on 100 random nondecreasing bases, including
//    e^n up to N = 10^3: sigma_{2k} = 0 exactly and a Parabolic verdict.
void criterion_5() {
  std::mt19937_64 rng(777);
  bool ok = true;
  int exact_zero_checks = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Real> base;
    std::uint64_t n;
    if (trial == 0) {
      n = 1000;  // a_k = e^k
      Real e1 = exp(Real(1.0));
      Real v(1.0);
      for (std::uint64_t k = 0; k < n; ++k) {
        v = v * e1;
        base.push_back(v);
      }
    } else {
      n = 64 + rng() % 400;
      Real v = oracles::uniform_real(rng, 0.1, 2.0);
      for (std::uint64_t k = 0; k < n; ++k) {
        v = v + oracles::uniform_real(rng, 0.0, 3.0);
        base.push_back(v);
      }
    }
    std::vector<std::uint64_t> idx;
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (rng() % 3 != 2) idx.push_back(m);
    }
    if (idx.size() < 8) idx = {1, 2, 3, 4, 5, 6, 7, 8};
    if (idx.size() % 2 == 1) idx.pop_back();
    TwistPattern pattern = TwistPattern::from_indices(idx, true);

    SynthesisResult r = raise_lengths(base, pattern);
    AlternatingSums sums = alternating_sums(r.lengths, pattern);
    for (std::size_t k = 2; k <= sums.sigma.size(); k += 2) {
      ok = ok && sums.sigma[k - 1].is_zero();
      ++exact_zero_checks;
    }
    FluteDescriptor d;
    d.truncation = n;
    d.lengths = r.lengths;
    d.twists = pattern;
    ok = ok && classify_flute(d).kind == VerdictKind::Parabolic;
  }
  report(5, "synthesis certificate (sigma_2k = 0 exactly)", ok,
         "100 bases incl. e^n to N=1000; " + std::to_string(exact_zero_checks) +
             " exact-zero checks and Parabolic verdicts");
}

// 6 and the develop half of 9.  10^4-step chain from a paired-length flute
// at 128-bit: per-step round-trip < 1e-30, nestedness and gap monotonicity
// never violated, and the run stays under 30 s.
void criterion_6_and_9_develop(double& develop_seconds) {
  PrecisionScope guard(128);
  auto start = std::chrono::steady_clock::now();
  FluteDescriptor d = gen_flute("pairs-of:plog:1", 5001, TwistPattern::every(5001));
  ShearSequence s = shear_sequence(d);
  bool ok = true;
  std::string detail;
  try {
    GeodesicChain chain = develop_chain(s);  // 10000 steps from 10001 shears
    develop_seconds = seconds_since(start);
    bool monotone = true;
    for (std::size_t i = 1; i < chain.gaps.size(); ++i) {
      monotone = monotone && chain.gaps[i] <= chain.gaps[i - 1];
    }
    ok = chain.roundtrip_errors.size() == 10000 &&
         chain.max_roundtrip_error < Real(1e-30) && monotone;
    detail = "10^4 steps at 128-bit, max roundtrip " + chain.max_roundtrip_error.str(4) +
             ", monotone=" + (monotone ? "yes" : "no") + ", " +
             std::to_string(develop_seconds).substr(0, 5) + " s";
  } catch (const Error& e) {
    develop_seconds = seconds_since(start);
    ok = false;
    detail = std::string("develop_chain failed: ") + e.what();
  }
  report(6, "development round-trip", ok, detail);
}

// 7. Criterion/geometry co-occurrence.  7a: the paired family's gap halves
// (and keeps falling) between steps 200 and 2000.  7b as stated: the
// zero-twist 3 log n family's gap stabilizes within 1% over the same window
// at a positive value — measured drift is ~72%, so this stays red.
void criterion_7() {
  FluteDescriptor paired = gen_flute("pairs-of:plog:1", 1001, TwistPattern::every(1001));
  GeodesicChain pc = develop_chain(shear_sequence(paired));
  bool a_ok = pc.gaps[1999] < ldexp2(pc.gaps[199], -1);
  bool decreasing = true;
  for (std::size_t i = 200; i < 2000; ++i) decreasing = decreasing && pc.gaps[i] <= pc.gaps[i - 1];
  a_ok = a_ok && decreasing && pc.gaps[1999] < pc.gaps[199];

  FluteDescriptor zt = gen_flute("plog:3", 1001, TwistPattern::none());
  GeodesicChain zc = develop_chain(shear_sequence(zt));
  Real drift = abs(zc.gaps[199] - zc.gaps[1999]) / zc.gaps[1999];
  bool positive = zc.gaps[1999] > Real(1e-12);
  bool b_ok = positive && drift < Real(0.01);

  report(7, "criterion/geometry co-occurrence", a_ok && b_ok,
         "paired: gap_2000/gap_200 = " + (pc.gaps[1999] / pc.gaps[199]).str(3) +
             " (monotone); zero-twist 3log n: gap_2000 = " + zc.gaps[1999].str(4) +
             " > 0 but drift 200->2000 = " + drift.str(3) +
             " vs required <= 0.01 (the chain converges ~n^(-2/3); 1% is unreachable here)");
}

// 8. End-tree aggregation and order independence.
void criterion_8() {
  auto make_leaf = [](const char* gen, std::uint64_t attach) {
    EndTreeNode n;
    n.surface = FluteDescriptor{};
    auto& f = std::get<FluteDescriptor>(n.surface);
    f.generator = LengthGenerator::parse(gen);
    f.truncation = 1500;
    f.lengths = expand_lengths(*f.generator, 1500);
    f.twists = TwistPattern::none();
    n.attach_at = attach;
    return n;
  };
  EndTree tree;
  BasicEndDescriptor root;
  root.flute = gen_flute("pairs-of:plog:2", 1500, TwistPattern::every(1500));
  root.beta_lengths.assign(1499, Real(1.0));
  root.beta_bound = Real(2.0);
  tree.root.surface = root;
  tree.root.children = {make_leaf("plog:2", 1), make_leaf("plog:1.5", 2)};

  bool ok = classify_surface(tree).aggregate == VerdictKind::Parabolic;

  tree.root.children[0] = make_leaf("plog:3", 1);  // NotParabolic leaf flips the conjunction
  ok = ok && classify_surface(tree).aggregate == VerdictKind::NotParabolic;

  std::mt19937_64 rng(99);
  tree.root.children.push_back(make_leaf("plog:2", 3));
  VerdictKind reference = classify_surface(tree).aggregate;
  for (int i = 0; i < 10; ++i) {
    std::shuffle(tree.root.children.begin(), tree.root.children.end(), rng);
    ok = ok && classify_surface(tree).aggregate == reference;
  }
  report(8, "end-tree aggregation", ok,
         "conjunction, NotParabolic flip, 10 shuffled traversal orders");
}

// 9. Performance: shear_sequence + classify_flute at N = 10^5, 256-bit,
//    under 10 s; develop at 10^4 steps under 30 s (timed in criterion 6).
void criterion_9(double develop_seconds) {
  auto start = std::chrono::steady_clock::now();
  FluteDescriptor d = gen_flute("pairs-of:plog:2", 100000, TwistPattern::every(100000));
  ShearSequence s = shear_sequence(d);
  Verdict v = classify_flute(d);
  double dt = seconds_since(start);
  bool ok = dt < 10.0 && develop_seconds < 30.0 && s.size() == 199999 &&
            v.kind == VerdictKind::Parabolic;
  report(9, "performance envelope", ok,
         "shear+classify N=10^5 at 256-bit: " + std::to_string(dt).substr(0, 5) +
             " s (< 10 s); develop 10^4 steps: " + std::to_string(develop_seconds).substr(0, 5) +
             " s (< 30 s)");
}

}  // namespace

int main() {
  std::printf("flutekit acceptance suite (working precision %ld bits)\n",
              static_cast<long>(working_precision()));
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  double develop_seconds = 0.0;
  criterion_6_and_9_develop(develop_seconds);
  criterion_7();
  criterion_8();
  criterion_9(develop_seconds);
  std::printf("%d of 9 criteria failed\n", g_failures);
  return g_failures;
}
