// Acceptance suite: one PASS/FAIL line per criterion, exit 0 only if all pass.
// Exit 3 when the oracle comparison (criterion 9) finds a disagreement.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "driver.hpp"
#include "fpure/fpure.hpp"
#include "fpure/oracle/brute_lattice.hpp"
#include "fpure/oracle/crosscheck.hpp"
#include "../support/random_ast.hpp"

using namespace fpure;

namespace {

// Pinned tolerances.
constexpr double fpure_seconds_per_prime = 5.0;   // criterion 1
constexpr std::size_t radical_probes_per_ideal = 100;  // criterion 8
constexpr std::size_t oracle_instances_per_op = 200;   // criterion 9
constexpr std::size_t root_law_instances = 100;        // criterion 10
constexpr std::size_t random_asts = 500;               // criterion 12
constexpr unsigned splitting_e_bound = 4;              // criterion 6
// Everything else is exact: booleans, ideal equality, rational equality.

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

Ideal ideal(const RingPtr& R, const std::string& text) { return lang::parse_ideal(R, text); }
Polynomial poly(const RingPtr& R, const std::string& text) { return lang::parse_polynomial(R, text); }

RingPresentation cubic(std::uint64_t p) {
  RingPtr S = make_ring(p, {"a", "b", "c"});
  return RingPresentation(S, ideal(S, "a^3 + a*b*c - b^2"));
}

RingPresentation node() {
  RingPtr S = make_ring(2, {"x", "y"});
  return RingPresentation(S, ideal(S, "x*y"));
}

struct SuiteLattice {
  std::string name;
  FrobeniusContext ctx;
  CompatibleLattice lattice;
};

std::vector<SuiteLattice> suite_lattices() {
  std::vector<SuiteLattice> out;
  {
    FrobeniusContext ctx(node());
    const RingPtr& S = ctx.ring();
    auto L = enumerate_lattice(ctx, {ideal(S, "x"), ideal(S, "y")}, {});
    out.push_back({"node", ctx, L});
  }
  for (std::uint64_t p : {2, 3}) {
    FrobeniusContext ctx(cubic(p));
    const RingPtr& S = ctx.ring();
    LatticeOptions opts;
    opts.e_max = 2;
    auto L = enumerate_lattice(ctx, {ideal(S, "a, b"), ideal(S, "a, b, c")}, opts);
    out.push_back({"cubic p=" + std::to_string(p), ctx, L});
  }
  {
    FrobeniusContext ctx{RingPresentation(make_ring(2, {"x", "y"}))};
    out.push_back({"regular", ctx, enumerate_lattice(ctx, {}, {})});
  }
  return out;
}

Outcome c1_cubic_fpurity() {
  Outcome o;
  std::ostringstream d;
  for (std::uint64_t p : {2, 3, 5}) {
    auto t0 = std::chrono::steady_clock::now();
    FrobeniusContext ctx(cubic(p));
    auto r = is_f_pure(ctx, ctx.presentation().irrelevant_ideal());
    auto sharp = is_sharply_f_pure_pair(ctx, ctx.presentation().irrelevant_ideal(), 2);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.f_pure || !sharp.split) o.fail("not F-pure at p=" + std::to_string(p));
    if (s >= fpure_seconds_per_prime) o.fail("p=" + std::to_string(p) + " took " + std::to_string(s) + " s");
    d << "p=" << p << " witness " << (r.witness ? r.witness->to_string() : "-") << " (" << s << " s) ";
  }
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome c2_cubic_centers() {
  Outcome o;
  for (std::uint64_t p : {2, 3}) {
    FrobeniusContext ctx(cubic(p));
    const RingPtr& S = ctx.ring();
    for (const char* J : {"a, b", "a, b, c"}) {
      auto v = is_uniformly_compatible(ctx, ideal(S, J), 2);
      if (!v.compatible() || v.checked_e != std::vector<unsigned>{1, 2})
        o.fail("(" + std::string(J) + ") not compatible at p=" + std::to_string(p));
    }
    Polynomial f = poly(S, "a^3 + a*b*c - b^2");
    for (unsigned e : {1u, 2u}) {
      std::uint64_t q = prime_power(p, e);
      Ideal mq = bracket_power(ideal(S, "a, b, c"), e);
      for (const char* g : {"a", "b", "c"})
        if (!mq.contains(poly(S, g) * f.pow(q - 1)))
          o.fail(std::string(g) + "*f^(q-1) outside m^[q] at p=" + std::to_string(p) + " e=" + std::to_string(e));
    }
  }
  if (o.pass) o.detail = "(a,b), (a,b,c) compatible for e=1,2 at p=2,3; 12 literal memberships hold";
  return o;
}

Outcome c3_node_lattice() {
  Outcome o;
  FrobeniusContext ctx(node());
  const RingPtr& S = ctx.ring();
  auto L = enumerate_lattice(ctx, {ideal(S, "x"), ideal(S, "y")}, {});
  auto B = oracle::brute_lattice(ctx, 2, {poly(S, "x"), poly(S, "y"), poly(S, "x + y"), poly(S, "x*y")}, 3);
  std::vector<Ideal> expected;
  for (const char* J : {"x*y", "x", "y", "x, y", "1"}) expected.push_back(ideal(S, J));
  if (L.elements.size() != 5) o.fail("engine found " + std::to_string(L.elements.size()) + " elements");
  if (B.compatible.size() != 5) o.fail("oracle found " + std::to_string(B.compatible.size()) + " elements");
  for (const Ideal& J : expected) {
    if (!L.contains(J)) o.fail("engine misses " + J.to_string());
    bool in_b = false;
    for (const Ideal& K : B.compatible) in_b = in_b || K == J;
    if (!in_b) o.fail("oracle misses " + J.to_string());
  }
  if (o.pass) o.detail = "5 elements, equal to brute force over " + std::to_string(B.candidates) + " candidates";
  return o;
}

Outcome c4_closure(const std::vector<SuiteLattice>& suite) {
  Outcome o;
  std::size_t pairs = 0;
  for (const auto& s : suite) {
    const auto& L = s.lattice;
    if (!L.complete) o.fail(s.name + " lattice incomplete");
    for (const auto& a : L.elements)
      for (const auto& b : L.elements) {
        ++pairs;
        if (!L.contains(ideal_sum(a.ideal, b.ideal))) o.fail(s.name + ": sum " + a.key + " + " + b.key);
        if (!L.contains(ideal_intersect(a.ideal, b.ideal))) o.fail(s.name + ": meet " + a.key + " ∩ " + b.key);
      }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " ordered pairs over " + std::to_string(suite.size()) + " lattices, 0 violations";
  return o;
}

Outcome c5_test_ideal_minimality(const std::vector<SuiteLattice>& suite) {
  Outcome o;
  std::size_t checked = 0, hulls = 0;
  {
    FrobeniusContext ctx(node());
    auto t = test_ideal(ctx, poly(ctx.ring(), "x + y"), 3);
    for (const auto& el : suite[0].lattice.elements)
      if (el.ideal.contains(t.test_element)) {
        ++checked;
        if (!el.ideal.contains(t.ideal)) o.fail("node: " + el.key + " does not contain the test ideal");
      }
  }
  {
    FrobeniusContext ctx(cubic(2));
    auto t = test_ideal(ctx, 2);
    for (const auto& el : suite[1].lattice.elements)
      if (el.ideal.contains(t.test_element)) {
        ++checked;
        if (!el.ideal.contains(t.ideal)) o.fail("cubic: " + el.key + " does not contain the test ideal");
      }
  }
  for (const auto& s : suite)
    for (const auto& el : s.lattice.elements) {
      ++hulls;
      auto h = compatible_hull(s.ctx, el.ideal, s.lattice.e_max);
      if (!(compatible_hull(s.ctx, h.ideal, s.lattice.e_max).ideal == h.ideal)) o.fail(s.name + ": hull not idempotent on " + el.key);
    }
  if (o.pass) o.detail = std::to_string(checked) + " containments, " + std::to_string(hulls) + " idempotent hulls";
  return o;
}

Outcome c6_splitting_primes() {
  Outcome o;
  {
    FrobeniusContext ctx(node());
    const RingPtr& S = ctx.ring();
    auto r = splitting_prime(ctx, ideal(S, "x, y"), splitting_e_bound);
    if (!(r.prime == ideal(S, "x, y"))) o.fail("node: got " + r.prime.to_string());
    if (!r.trace.stabilized || r.trace.stabilized_at + 1 > splitting_e_bound) o.fail("node: not stable by e=4");
  }
  {
    FrobeniusContext ctx(cubic(2));
    const RingPtr& S = ctx.ring();
    auto r = splitting_prime(ctx, ideal(S, "a, b, c"), 3);
    if (!(r.prime == ideal(S, "a, b, c"))) o.fail("cubic: got " + r.prime.to_string());
  }
  if (o.pass) o.detail = "node (x,y), cubic (a,b,c)";
  return o;
}

Outcome c7_subadjunction(const std::vector<SuiteLattice>& suite) {
  Outcome o;
  std::size_t n = 0;
  for (const auto& s : suite) {
    auto r = check_subadjunction(s.ctx, s.lattice);
    n += r.entries.size();
    if (r.violations) o.fail(s.name + ": " + std::to_string(r.violations) + " violations");
  }
  if (n == 0) o.fail("no maximal prime elements were checked");
  if (o.pass) o.detail = std::to_string(n) + " maximal primes, all quotients have unit test ideal";
  return o;
}

Outcome c8_radical_probes(const std::vector<SuiteLattice>& suite) {
  Outcome o;
  std::size_t ideals = 0, probes = 0, vacuous = 0;
  for (const auto& s : suite)
    for (const auto& el : s.lattice.elements) {
      if (el.ideal.is_zero()) {  // g^2 = 0 forces g = 0
        ++vacuous;
        continue;
      }
      auto r = radical_probe(el.ideal, radical_probes_per_ideal);
      ++ideals;
      probes += r.probes;
      if (!r.passed) o.fail(s.name + ": " + el.key + " fails at " + r.counterexample->to_string());
      if (r.probes < radical_probes_per_ideal)
        o.fail(s.name + ": only " + std::to_string(r.probes) + " probes for " + el.key);
    }
  if (o.pass)
    o.detail = std::to_string(ideals) + " ideals, " + std::to_string(probes) + " probes, " + std::to_string(vacuous) +
               " zero ideal(s) vacuous";
  return o;
}

Outcome c9_oracle_equivalence(bool& disagreement) {
  Outcome o;
  std::size_t n = 0;
  auto checks = oracle::monomial_crosschecks(oracle_instances_per_op);
  checks.push_back(oracle::exhaustive_crosscheck(oracle_instances_per_op));
  for (const auto& c : checks) {
    n += c.instances;
    if (!c.ok()) {
      disagreement = true;
      o.fail(c.name + ": " + c.disagreements.front());
    }
    if (c.instances < oracle_instances_per_op) o.fail(c.name + ": only " + std::to_string(c.instances) + " instances");
  }
  if (o.pass) o.detail = std::to_string(n) + " instances across " + std::to_string(checks.size()) + " checks, 0 disagreements";
  return o;
}

Outcome c10_root_laws() {
  Outcome o;
  auto c = oracle::frobenius_root_laws(root_law_instances);
  if (!c.ok()) o.fail(c.disagreements.front());
  if (c.instances < root_law_instances) o.fail("only " + std::to_string(c.instances) + " instances");
  if (o.pass) o.detail = std::to_string(c.instances) + " ideals, 0 violations";
  return o;
}

Outcome c11_nu_fpt() {
  Outcome o;
  std::size_t n = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    RingPtr S = make_ring(p, {"x"});
    Polynomial x = poly(S, "x");
    for (unsigned e = 1; e <= 4; ++e) {
      ++n;
      auto r = nu_invariant(x, ideal(S, "x"), e);
      if (r.value != prime_power(p, e) - 1) o.fail("nu_" + std::to_string(e) + "(x) at p=" + std::to_string(p));
    }
    const unsigned e_max = 3;
    auto b = fpt_bounds(Ideal(S, {x}), ideal(S, "x"), e_max);
    Rational lower = Rational(1) - Rational(BigInt(1), BigInt(prime_power(p, e_max)));
    if (b.lower != lower || b.upper != Rational(1)) o.fail("fpt bounds of x at p=" + std::to_string(p));
  }
  struct Case {
    std::uint64_t p;
    const char* f;
  };
  for (const Case& c : {Case{2, "x^2 + y^3"}, Case{3, "x*y"}, Case{2, "x^2"}, Case{3, "x^2 + y^2"},
                        Case{5, "x^2*y"}, Case{2, "x^3 + x*y + y^2"}}) {
    RingPtr S = make_ring(c.p, {"x", "y"});
    Polynomial f = poly(S, c.f);
    for (unsigned e = 1; e <= 3; ++e) {
      ++n;
      std::uint64_t want = oracle::exhaustive_nu(f, oracle::MonomialIdeal(2, {{1, 0}, {0, 1}}), e);
      if (nu_invariant(f, ideal(S, "x, y"), e).value != want)
        o.fail(std::string(c.f) + " p=" + std::to_string(c.p) + " e=" + std::to_string(e));
    }
  }
  if (o.pass) o.detail = std::to_string(n) + " nu values exact, fpt(x) bounds exact for p=2,3,5";
  return o;
}

Outcome c12_determinism_and_parsing() {
  Outcome o;
  const std::string dir = FPURE_PROBLEMS_DIR;
  std::vector<std::vector<std::string>> runs;
  for (const char* f : {"node.fpure", "cubic.fpure", "cubic_p3.fpure", "regular.fpure", "cusp.fpure",
                        "three_points.fpure", "monomial_nu.fpure"})
    runs.push_back({"run", dir + "/" + f, "--json"});
  runs.push_back({"lattice", dir + "/cubic.fpure", "--seeds", "(a,b),(a,b,c)", "--json"});
  for (const auto& args : runs) {
    std::ostringstream a, b, err;
    int ca = cli::run(args, a, err), cb = cli::run(args, b, err);
    if (ca != cb) o.fail("exit codes differ for " + args[1]);
    auto ja = cli::without_timing(nlohmann::json::parse(a.str()));
    auto jb = cli::without_timing(nlohmann::json::parse(b.str()));
    if (ja.dump() != jb.dump()) o.fail("JSON differs for " + args[1]);
  }
  std::mt19937_64 rng(12);
  for (std::size_t i = 0; i < random_asts; ++i) {
    auto file = testing::random_problem_file(rng);
    std::string text = lang::print(file);
    try {
      if (!(lang::parse(text) == file)) o.fail("round trip changed:\n" + text);
    } catch (const std::exception& e) {
      o.fail(std::string("reparse failed: ") + e.what() + "\n" + text);
    }
  }
  if (o.pass)
    o.detail = std::to_string(runs.size()) + " commands byte-identical, " + std::to_string(random_asts) + " ASTs round-trip";
  return o;
}

}  // namespace

int main() {
  bool disagreement = false;
  int failures = 0;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << n << "] " << name << ": " << o.detail << std::endl;
  };

  std::vector<SuiteLattice> suite;
  try {
    suite = suite_lattices();
  } catch (const std::exception& e) {
    std::cerr << "could not build the suite lattices: " << e.what() << "\n";
    return 1;
  }

  report(1, "cubic F-purity", c1_cubic_fpurity);
  report(2, "cubic centers", c2_cubic_centers);
  report(3, "node lattice completeness", c3_node_lattice);
  report(4, "closure laws", [&] { return c4_closure(suite); });
  report(5, "test ideal minimality", [&] { return c5_test_ideal_minimality(suite); });
  report(6, "splitting primes", c6_splitting_primes);
  report(7, "subadjunction", [&] { return c7_subadjunction(suite); });
  report(8, "radicality probes", [&] { return c8_radical_probes(suite); });
  report(9, "oracle equivalence", [&] { return c9_oracle_equivalence(disagreement); });
  report(10, "Frobenius root laws", c10_root_laws);
  report(11, "nu and fpt", c11_nu_fpt);
  report(12, "determinism and parsing", c12_determinism_and_parsing);

  std::cout << (12 - failures) << "/12 criteria passed" << std::endl;
  if (disagreement) return 3;
  return failures ? 1 : 0;
}
