#include "driver.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fpure/fpure.hpp"
#include "fpure/oracle/brute_lattice.hpp"
#include "fpure/oracle/crosscheck.hpp"

namespace fpure::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string file;
  unsigned emax = 3;
  std::size_t budget = 256;
  std::size_t max_steps = 10000;
  bool json_out = false;
  std::string order, at, ring, pair;
  // per command
  std::string ideal, seeds, test_element, f;
  unsigned e = 1;
  unsigned window = 2;
  bool checks = true;
};

// Reports ---------------------------------------------------------------------

json poly_json(const Polynomial& f) { return f.to_string(); }

json ideal_json(const Ideal& J) {
  json out = json::array();
  for (const std::string& g : J.generator_strings()) out.push_back(g);
  return out;
}

json trace_json(const FixedPointTrace& t) {
  json iterates = json::array();
  for (const Ideal& J : t.iterates) iterates.push_back(ideal_json(J.canonical()));
  return {{"direction", t.direction == TraceDirection::ascending ? "ascending" : "descending"},
          {"iterates", iterates},
          {"stabilized", t.stabilized},
          {"stabilized_at", t.stabilized_at},
          {"operator", t.operator_description}};
}

std::string up_to(unsigned e) { return "up_to_E(" + std::to_string(e) + ")"; }

// Problem loading -------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(InputError::Kind::semantic, 0, 0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

std::string strip_parens(std::string s) {
  s = trim(std::move(s));
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0 && i + 1 != s.size()) return s;  // "(a)+(b)" style
    }
    return trim(s.substr(1, s.size() - 2));
  }
  return s;
}

/// Splits on commas that are not inside parentheses.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

struct Session {
  lang::ProblemFile file;
  std::string ring_name;
  RingPresentation R;
  PairSpec pair;
  std::string pair_name;
  Ideal m;
  std::optional<RingPtr> remap;  // set when --order changed the ring

  Ideal to_ring(const Ideal& J) const {
    if (!remap) {
      require_same_ring(R.ring, J.ring());
      return J;
    }
    std::vector<Polynomial> gens;
    for (const Polynomial& g : J.generators()) gens.push_back(g.map_to(R.ring));
    return Ideal(R.ring, std::move(gens));
  }

  Ideal ideal(const std::string& text) const {
    std::string t = trim(text);
    if (file.find<lang::IdealDecl>(t)) return to_ring(file.ideal(t));
    return lang::parse_ideal(R.ring, strip_parens(t));
  }

  Polynomial polynomial(const std::string& text) const {
    std::string t = trim(text);
    if (file.find<lang::IdealDecl>(t)) {
      Ideal J = to_ring(file.ideal(t));
      if (J.generators().size() != 1) throw UsageError(t + " is not principal");
      return J.generators().front();
    }
    return lang::parse_polynomial(R.ring, t);
  }

  FrobeniusContext context() const { return FrobeniusContext(R, pair); }
};

Session load_session(const Options& o) {
  lang::ProblemFile file = lang::parse(read_file(o.file));
  std::optional<RingPresentation> R;
  std::string ring_name;
  if (!o.ring.empty()) {
    if (file.find<lang::QuotientDecl>(o.ring)) R = file.quotient(o.ring);
    else if (file.find<lang::RingDecl>(o.ring)) R = RingPresentation(file.ring(o.ring));
    else throw UsageError("no ring or quotient named " + o.ring);
    ring_name = o.ring;
  } else {
    for (const lang::Statement& s : file.statements) {
      if (auto q = std::get_if<lang::QuotientDecl>(&s)) {
        R = file.quotient(q->name);
        ring_name = q->name;
      }
    }
    if (!R) {
      for (const lang::Statement& s : file.statements)
        if (auto r = std::get_if<lang::RingDecl>(&s)) {
          R = RingPresentation(r->ring);
          ring_name = r->name;
        }
    }
    if (!R) throw UsageError("the problem file declares no ring");
  }
  Session s{std::move(file), ring_name, *R, {}, "", Ideal::zero(R->ring), std::nullopt};
  if (!o.order.empty()) {
    OrderKind kind;
    if (!parse_order_kind(o.order, kind)) throw UsageError("unknown monomial order " + o.order);
    RingPtr reordered = with_order(s.R.ring, kind);
    std::vector<Polynomial> gens;
    for (const Polynomial& g : s.R.defining_ideal.generators()) gens.push_back(g.map_to(reordered));
    s.remap = reordered;
    s.R = RingPresentation(reordered, Ideal(reordered, std::move(gens)));
  }
  if (!o.pair.empty()) {
    PairSpec raw = s.file.pair(o.pair);
    std::vector<PairSpec::Factor> fs;
    for (const auto& f : raw.factors) fs.push_back({s.to_ring(f.base), f.exponent});
    s.pair = PairSpec(std::move(fs));
    s.pair_name = o.pair;
  }
  s.m = o.at.empty() ? s.R.irrelevant_ideal() : s.ideal(o.at);
  return s;
}

json base_report(const std::string& name, const Options& o, const Session& s) {
  json args = json::object();
  if (!o.ideal.empty()) args["ideal"] = o.ideal;
  if (!o.seeds.empty()) args["seeds"] = o.seeds;
  if (!o.test_element.empty()) args["test_element"] = o.test_element;
  if (!o.f.empty()) args["f"] = o.f;
  if (name == "nu") args["e"] = o.e;
  if (name == "splitting-prime") args["window"] = o.window;
  json vars = json::array();
  for (std::size_t i = 0; i < s.R.ring->nvars(); ++i) vars.push_back(s.R.ring->variable(i));
  return {{"schema_version", schema_version},
          {"command", {{"name", name}, {"file", o.file}, {"args", args}}},
          {"config",
           {{"emax", o.emax},
            {"budget", {{"max_elements", o.budget}, {"max_steps", o.max_steps}}},
            {"order", std::string(to_string(s.R.ring->order().kind))},
            {"characteristic", s.R.characteristic()},
            {"ring", s.ring_name},
            {"variables", vars},
            {"defining_ideal", ideal_json(s.R.defining_ideal)},
            {"pair", s.pair.to_string()},
            {"at", ideal_json(s.m.canonical())}}},
          {"witnesses", json::array()},
          {"traces", json::array()},
          {"notes", json::array()}};
}

// Commands ----------------------------------------------------------------------

struct Outcome {
  json report;
  int code = exit_ok;
};

Outcome cmd_check_fpure(const Options& o) {
  Session s = load_session(o);
  json r = base_report("check-fpure", o, s);
  FrobeniusContext ctx = s.context();
  if (!s.pair.is_trivial()) {
    SharpPurityResult v = is_sharply_f_pure_pair(ctx, s.m, o.emax);
    r["verdict"] = {{"sharply_f_pure", v.split}, {"checked_up_to", v.checked_up_to}};
    if (v.split) {
      r["verdict"]["split_at_e"] = v.e;
      r["verdict"]["also_splits_at"] = "every multiple of " + std::to_string(v.e);
      r["witnesses"].push_back({{"element", poly_json(*v.witness_element)},
                                {"normal_form", poly_json(*v.witness)},
                                {"outside", ideal_json(bracket_power(s.m, v.e))}});
      r["certification"] = "certified";
    } else {
      r["notes"].push_back("no splitting for e <= " + std::to_string(o.emax) + "; this does not prove the pair is not sharply F-pure");
      r["certification"] = up_to(o.emax);
    }
    return {r};
  }
  FPurityResult v = is_f_pure(ctx, s.m);
  r["verdict"] = {{"f_pure", v.f_pure}, {"fedder_ideal", ideal_json(ctx.fedder(1).fedder_ideal)}};
  if (v.f_pure)
    r["witnesses"].push_back({{"element", poly_json(*v.witness_element)},
                              {"normal_form", poly_json(*v.witness)},
                              {"outside", ideal_json(bracket_power(s.m, 1))}});
  if (!s.R.asserted_reduced) r["notes"].push_back("verdict is conditional on R being reduced");
  r["certification"] = "certified";  // e = 1 decides F-purity
  return {r};
}

json verdict_witness(const CompatibilityVerdict& v, const Ideal& J) {
  return {{"element", poly_json(*v.witness)},
          {"normal_form", poly_json(*v.witness_normal_form)},
          {"e", v.failed_e},
          {"outside_colon_of", ideal_json(J)}};
}

std::string certification_of(const CompatibilityVerdict& v, unsigned emax) {
  return v.kind == CompatibilityKind::compatible_up_to_E ? up_to(emax) : "certified";
}

Outcome cmd_compatible(const Options& o) {
  Session s = load_session(o);
  json r = base_report("compatible", o, s);
  Ideal J = s.ideal(o.ideal);
  CompatibilityVerdict v = is_uniformly_compatible(s.context(), J, o.emax);
  r["verdict"] = {{"compatible", v.compatible()},
                  {"kind", to_string(v.kind)},
                  {"ideal", ideal_json(v.subject)},
                  {"checked_e", v.checked_e}};
  if (!v.compatible()) {
    r["verdict"]["failed_e"] = v.failed_e;
    r["witnesses"].push_back(verdict_witness(v, v.subject));
  }
  if (v.certificate_generator) r["verdict"]["certificate_generator"] = poly_json(*v.certificate_generator);
  if (!v.certificate_note.empty()) r["notes"].push_back(v.certificate_note);
  r["certification"] = certification_of(v, o.emax);
  return {r};
}

Outcome cmd_test_ideal(const Options& o) {
  Session s = load_session(o);
  json r = base_report("test-ideal", o, s);
  FrobeniusContext ctx = s.context();
  TestIdealResult t = o.test_element.empty() ? test_ideal(ctx, o.emax)
                                             : test_ideal(ctx, s.polynomial(o.test_element), o.emax);
  r["verdict"] = {{"test_ideal", ideal_json(t.ideal)},
                  {"test_element", poly_json(t.test_element)},
                  {"seed", poly_json(t.seed)},
                  {"seed_power", t.seed_power},
                  {"strongly_f_regular", t.ideal.is_unit()}};
  r["traces"].push_back(trace_json(t.trace));
  if (o.test_element.empty())
    r["notes"].push_back("test element taken from the Jacobian; membership in R° is the user's responsibility unless I is prime");
  for (const std::string& n : t.notes) r["notes"].push_back(n);
  r["certification"] = t.certified ? "certified" : up_to(o.emax);
  return {r};
}

Outcome cmd_splitting_prime(const Options& o) {
  Session s = load_session(o);
  json r = base_report("splitting-prime", o, s);
  SplittingPrimeResult P = splitting_prime(s.context(), s.m, o.emax, o.window);
  r["verdict"] = {{"splitting_prime", ideal_json(P.prime)},
                  {"prime", to_string(primality(P.prime))},
                  {"verified_compatible", P.verified_compatible},
                  {"verified_no_splitting", P.verified_no_splitting},
                  {"kind", to_string(P.certification)}};
  r["traces"].push_back(trace_json(P.trace));
  for (const std::string& n : P.notes) r["notes"].push_back(n);
  switch (P.certification) {
    case Certification::certified: r["certification"] = "certified"; break;
    case Certification::degenerate: r["certification"] = up_to(o.emax); break;
    default: r["certification"] = "heuristic"; break;
  }
  if (!P.verified_compatible) return {r, exit_invariant};
  return {r};
}

Outcome cmd_lattice(const Options& o) {
  Session s = load_session(o);
  json r = base_report("lattice", o, s);
  FrobeniusContext ctx = s.context();
  std::vector<Ideal> seeds;
  for (const std::string& t : split_top_level(o.seeds)) seeds.push_back(s.ideal(t));

  LatticeOptions lo;
  lo.e_max = o.emax;
  lo.budget = {o.budget, o.max_steps};
  const bool split = is_sharply_f_pure_pair(ctx, s.m, o.emax).split;
  if (split) {
    SplittingPrimeResult P = splitting_prime(ctx, s.m, o.emax);
    lo.splitting_prime = P.prime;
    r["verdict"]["splitting_prime"] = ideal_json(P.prime);
  }
  if (o.checks) {
    try {
      lo.test_ideal = test_ideal(ctx, o.emax).ideal;
      r["verdict"]["test_ideal"] = ideal_json(*lo.test_ideal);
    } catch (const DomainError& e) {
      r["notes"].push_back(std::string("test ideal not annotated: ") + e.what());
    }
  }
  CompatibleLattice L = enumerate_lattice(ctx, seeds, lo);

  json elements = json::array();
  bool all_certified = true;
  for (const LatticeElement& el : L.elements) {
    elements.push_back({{"generators", ideal_json(el.ideal)},
                        {"prime", to_string(el.prime)},
                        {"radical_probe", {{"passed", el.radical_probe_passed}, {"probes", el.radical_probes}}},
                        {"is_test_ideal", el.is_test_ideal},
                        {"is_splitting_prime", el.is_splitting_prime},
                        {"compatibility", to_string(el.verdict->kind)}});
    if (el.verdict->kind != CompatibilityKind::certified_all_e) all_certified = false;
  }
  json hasse = json::array();
  for (auto [a, b] : L.hasse) hasse.push_back({a, b});
  json rejected = json::array();
  for (const RejectedSeed& rs : L.rejected_seeds) {
    rejected.push_back({{"seed", ideal_json(rs.seed.canonical())}, {"failed_e", rs.verdict.failed_e}});
    r["witnesses"].push_back(verdict_witness(rs.verdict, rs.verdict.subject));
  }
  std::size_t closure_violations = 0;
  for (std::size_t i = 0; i < L.elements.size(); ++i)
    for (std::size_t j = i + 1; j < L.elements.size(); ++j) {
      if (!L.contains(ideal_sum(L.elements[i].ideal, L.elements[j].ideal))) ++closure_violations;
      if (!L.contains(ideal_intersect(L.elements[i].ideal, L.elements[j].ideal))) ++closure_violations;
    }
  r["verdict"]["elements"] = elements;
  r["verdict"]["size"] = L.elements.size();
  r["verdict"]["hasse"] = hasse;
  r["verdict"]["complete"] = L.complete;
  r["verdict"]["rejected_seeds"] = rejected;
  r["verdict"]["closure_violations"] = closure_violations;
  int code = L.complete ? exit_ok : exit_resource;
  if (o.checks) {
    UnionCheckReport u = check_union_theorem(ctx, L, s.m);
    r["verdict"]["union_check"] = {{"pairs", u.entries.size()}, {"violations", u.violations}, {"skipped", u.skipped}};
    if (u.skipped) r["notes"].push_back(u.note);
    SubadjunctionReport sa = check_subadjunction(ctx, L);
    json entries = json::array();
    for (const auto& e : sa.entries)
      entries.push_back({{"element", e.element},
                         {"test_element", poly_json(e.test_element)},
                         {"test_ideal", ideal_json(e.test_ideal)}});
    r["verdict"]["subadjunction"] = {{"entries", entries}, {"violations", sa.violations}};
    if (u.violations || sa.violations) code = exit_invariant;
  }
  if (closure_violations) code = exit_invariant;
  if (!L.complete) r["notes"].push_back("budget exhausted: the lattice is incomplete");
  r["certification"] = !L.complete ? "heuristic" : all_certified ? "certified" : up_to(o.emax);
  return {r, code};
}

Outcome cmd_nu(const Options& o) {
  Session s = load_session(o);
  json r = base_report("nu", o, s);
  Polynomial f = s.polynomial(o.f);
  NuResult nu = nu_invariant(f, s.m, o.e);
  r["verdict"] = {{"f", poly_json(f)}, {"e", o.e}};
  if (nu.infinite()) r["verdict"]["nu"] = "infinite";
  else r["verdict"]["nu"] = *nu.value;
  r["certification"] = "certified";
  return {r};
}

Outcome cmd_fpt(const Options& o) {
  Session s = load_session(o);
  json r = base_report("fpt", o, s);
  Polynomial f = s.polynomial(o.f);
  FptBounds b = fpt_bounds(Ideal(f.ring(), {f}), s.m, o.emax);
  json seq = json::array();
  for (const Rational& x : b.sequence) seq.push_back(rational_string(x));
  r["verdict"] = {{"f", poly_json(f)},
                  {"lower", rational_string(b.lower)},
                  {"upper", rational_string(b.upper)},
                  {"nus", b.nus},
                  {"sequence", seq}};
  r["certification"] = "certified";
  return {r};
}

Outcome cmd_selftest(const Options& o) {
  json r = {{"schema_version", schema_version},
            {"command", {{"name", "selftest"}, {"file", ""}, {"args", json::object()}}},
            {"config", {{"emax", o.emax}}},
            {"witnesses", json::array()},
            {"traces", json::array()},
            {"notes", json::array()}};
  std::vector<oracle::CrossCheck> checks = oracle::monomial_crosschecks();
  checks.push_back(oracle::exhaustive_crosscheck());
  checks.push_back(oracle::frobenius_root_laws());

  oracle::CrossCheck nu_check{"nu"};
  for (std::uint32_t p : {2u, 3u, 5u}) {
    RingPtr S = make_ring(p, {"x", "y"});
    oracle::MonomialIdeal m(2, {{1, 0}, {0, 1}});
    for (const char* text : {"x", "x*y", "x^2", "x^2+y^3", "x^3+y^2", "x*y+x^2"})
      for (unsigned e = 1; e <= 2; ++e) {
        Polynomial f = lang::parse_polynomial(S, text);
        ++nu_check.instances;
        std::uint64_t engine = *nu_invariant(f, m.to_ideal(S), e).value;
        std::uint64_t brute = oracle::exhaustive_nu(f, m, e);
        if (engine != brute)
          nu_check.disagreements.push_back("p=" + std::to_string(p) + " f=" + text + " e=" + std::to_string(e) +
                                           ": engine " + std::to_string(engine) + " oracle " + std::to_string(brute));
      }
  }
  checks.push_back(nu_check);

  oracle::CrossCheck lattice_check{"node_lattice"};
  {
    RingPtr S = make_ring(2, {"x", "y"});
    FrobeniusContext ctx(RingPresentation(S, lang::parse_ideal(S, "x*y")));
    auto brute = oracle::brute_lattice(ctx, 2, lang::parse_polynomials(S, "x, y, x+y, x*y"), o.emax);
    LatticeOptions lo;
    lo.e_max = o.emax;
    auto L = enumerate_lattice(ctx, {lang::parse_ideal(S, "x"), lang::parse_ideal(S, "y")}, lo);
    lattice_check.instances = brute.compatible.size();
    for (const Ideal& J : brute.compatible)
      if (!L.contains(J)) lattice_check.disagreements.push_back("brute force found " + J.to_string() + ", engine did not");
    if (L.elements.size() != brute.compatible.size())
      lattice_check.disagreements.push_back("engine lattice has " + std::to_string(L.elements.size()) +
                                            " elements, brute force " + std::to_string(brute.compatible.size()));
  }
  checks.push_back(lattice_check);

  json list = json::array();
  bool ok = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"instances", c.instances},
                    {"skipped", c.skipped},
                    {"disagreements", c.disagreements}});
    ok = ok && c.ok();
  }
  r["verdict"] = {{"passed", ok}, {"checks", list}};
  r["certification"] = "certified";
  return {r, ok ? exit_ok : exit_invariant};
}

using Handler = Outcome (*)(const Options&);

Handler handler_for(const std::string& name) {
  if (name == "check-fpure") return cmd_check_fpure;
  if (name == "compatible") return cmd_compatible;
  if (name == "test-ideal") return cmd_test_ideal;
  if (name == "splitting-prime") return cmd_splitting_prime;
  if (name == "lattice") return cmd_lattice;
  if (name == "nu") return cmd_nu;
  if (name == "fpt") return cmd_fpt;
  if (name == "selftest") return cmd_selftest;
  throw UsageError("unknown command " + name);
}

/// Translates a command statement from a problem file into options for the
/// matching subcommand. Positional names are sorted by what they declare.
std::pair<std::string, Options> from_statement(const lang::ProblemFile& file, const lang::Command& c, Options o) {
  std::string name = c.name;
  std::replace(name.begin(), name.end(), '_', '-');
  if (name == "check-sharp-fpure") name = "check-fpure";
  std::vector<std::string> ideals;
  for (const std::string& arg : c.positional()) {
    if (file.find<lang::QuotientDecl>(arg) || file.find<lang::RingDecl>(arg)) o.ring = arg;
    else if (file.find<lang::PairDecl>(arg)) o.pair = arg;
    else ideals.push_back(arg);
  }
  for (const lang::CommandArg& a : c.args) {
    if (a.key.empty()) continue;
    if (a.key == "emax") o.emax = static_cast<unsigned>(std::stoul(a.value));
    else if (a.key == "e") o.e = static_cast<unsigned>(std::stoul(a.value));
    else if (a.key == "window") o.window = static_cast<unsigned>(std::stoul(a.value));
    else if (a.key == "budget") o.budget = std::stoul(a.value);
    else if (a.key == "at") o.at = a.value;
    else if (a.key == "f") o.f = a.value;
    else if (a.key == "ideal") o.ideal = a.value;
    else if (a.key == "pair") o.pair = a.value;
    else if (a.key == "c" || a.key == "test_element") o.test_element = a.value;
    else throw InputError(InputError::Kind::semantic, c.line, 0, "unknown option " + a.key + " for " + c.name);
  }
  auto take_single = [&](std::string& slot, const char* what) {
    if (ideals.empty()) return;
    if (ideals.size() > 1 || !slot.empty())
      throw InputError(InputError::Kind::semantic, c.line, 0, c.name + " takes one " + what);
    slot = ideals.front();
  };
  if (name == "compatible") take_single(o.ideal, "ideal");
  else if (name == "test-ideal") take_single(o.test_element, "test element");
  else if (name == "nu" || name == "fpt") take_single(o.f, "polynomial");
  else if (name == "lattice") {
    for (const std::string& i : ideals) o.seeds += (o.seeds.empty() ? "" : ",") + i;
  } else if (!ideals.empty()) {
    throw InputError(InputError::Kind::semantic, c.line, 0, c.name + " does not take an ideal");
  }
  if (name == "compatible" && o.ideal.empty())
    throw InputError(InputError::Kind::semantic, c.line, 0, "compatible needs an ideal");
  if ((name == "nu" || name == "fpt") && o.f.empty())
    throw InputError(InputError::Kind::semantic, c.line, 0, c.name + " needs f");
  return {name, o};
}

Outcome cmd_run(const Options& o) {
  lang::ProblemFile file = lang::parse(read_file(o.file));
  json reports = json::array();
  int code = exit_ok;
  for (const lang::Command* c : file.commands()) {
    auto [name, opts] = from_statement(file, *c, o);
    Outcome sub = handler_for(name)(opts);
    sub.report["line"] = c->line;
    reports.push_back(std::move(sub.report));
    code = std::max(code, sub.code);
  }
  json r = {{"schema_version", schema_version},
            {"command", {{"name", "run"}, {"file", o.file}, {"args", json::object()}}},
            {"reports", reports}};
  return {r, code};
}

// Text rendering -------------------------------------------------------------------

bool all_strings(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_string(); });
}

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (all_strings(j)) {
    if (j.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].get<std::string>();
    return out + ")";
  }
  return j.dump();
}

void render_value(std::ostream& out, const std::string& key, const json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    out << pad << key << ":\n";
    for (auto it = j.begin(); it != j.end(); ++it) render_value(out, it.key(), it.value(), indent + 2);
  } else if (j.is_array() && !all_strings(j) && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    out << pad << key << ":\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_object()) {
        out << pad << "  [" << i << "]\n";
        for (auto it = j[i].begin(); it != j[i].end(); ++it) render_value(out, it.key(), it.value(), indent + 4);
      } else {
        out << pad << "  " << scalar_text(j[i]) << "\n";
      }
    }
  } else if (j.is_array() && j.empty() && key != "generators" && key.find("ideal") == std::string::npos &&
             key != "splitting_prime" && key != "outside") {
    out << pad << key << ": none\n";
  } else {
    out << pad << key << ": " << scalar_text(j) << "\n";
  }
}

void render_text(std::ostream& out, const json& r) {
  if (r.contains("reports")) {
    for (const json& sub : r["reports"]) {
      out << "# line " << sub.value("line", 0) << "\n";
      render_text(out, sub);
    }
    return;
  }
  out << r["command"]["name"].get<std::string>();
  if (!r["command"]["file"].get<std::string>().empty()) out << " " << r["command"]["file"].get<std::string>();
  out << "\n";
  if (r.contains("verdict")) render_value(out, "verdict", r["verdict"], 0);
  if (r.contains("certification")) out << "certification: " << r["certification"].get<std::string>() << "\n";
  if (r.contains("witnesses") && !r["witnesses"].empty()) render_value(out, "witnesses", r["witnesses"], 0);
  if (r.contains("traces"))
    for (const json& t : r["traces"]) {
      out << "trace (" << t["direction"].get<std::string>() << "): " << t["operator"].get<std::string>() << "\n";
      for (std::size_t i = 0; i < t["iterates"].size(); ++i) out << "  " << i << ": " << scalar_text(t["iterates"][i]) << "\n";
    }
  if (r.contains("notes"))
    for (const json& n : r["notes"]) out << "note: " << n.get<std::string>() << "\n";
}

}  // namespace

json without_timing(json report) {
  if (report.is_object()) {
    report.erase("timing");
    for (auto& [k, v] : report.items()) v = without_timing(v);
  } else if (report.is_array()) {
    for (auto& v : report) v = without_timing(v);
  }
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"fpure: F-purity, compatible ideals and test ideals over F_p", "fpure"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--emax", o.emax, "largest Frobenius exponent checked")->check(CLI::Range(1u, 16u));
  app.add_option("--budget", o.budget, "lattice element budget")->check(CLI::PositiveNumber);
  app.add_option("--max-steps", o.max_steps, "lattice closure step budget")->check(CLI::PositiveNumber);
  app.add_flag("--json", o.json_out, "print a JSON report");
  app.add_option("--order", o.order, "monomial order override (lex, grlex, grevlex)");
  app.add_option("--at", o.at, "maximal ideal, as a name or generator list (default: all variables)");
  app.add_option("--ring", o.ring, "quotient or ring to use (default: last quotient in the file)");
  app.add_option("--pair", o.pair, "graded system declared in the file");

  auto with_file = [&](CLI::App* sub) { sub->add_option("FILE", o.file, "problem file")->required(); };
  CLI::App* check = app.add_subcommand("check-fpure", "Fedder test at the maximal ideal (sharp F-purity with --pair)");
  with_file(check);
  CLI::App* compat = app.add_subcommand("compatible", "test uniform compatibility of an ideal");
  with_file(compat);
  compat->add_option("--ideal", o.ideal, "ideal name or generator list")->required();
  CLI::App* tau = app.add_subcommand("test-ideal", "smallest compatible ideal meeting R°");
  with_file(tau);
  tau->add_option("--test-element", o.test_element, "element of R° (default: from the Jacobian)");
  CLI::App* sp = app.add_subcommand("splitting-prime", "largest compatible ideal inside m");
  with_file(sp);
  sp->add_option("--window", o.window, "stability window")->check(CLI::PositiveNumber);
  CLI::App* lat = app.add_subcommand("lattice", "enumerate compatible ideals");
  with_file(lat);
  lat->add_option("--seeds", o.seeds, "comma-separated names or parenthesized generator lists");
  bool no_checks = false;
  lat->add_flag("--no-checks", no_checks, "skip the union and subadjunction checks");
  CLI::App* nu = app.add_subcommand("nu", "nu invariant of f at m");
  with_file(nu);
  nu->add_option("--f", o.f, "polynomial or principal ideal name")->required();
  nu->add_option("--e", o.e, "Frobenius exponent")->check(CLI::Range(1u, 16u));
  CLI::App* fpt = app.add_subcommand("fpt", "F-pure threshold bounds of f at m");
  with_file(fpt);
  fpt->add_option("--f", o.f, "polynomial or principal ideal name")->required();
  app.add_subcommand("selftest", "cross-check the engine against the brute-force oracles");
  CLI::App* runall = app.add_subcommand("run", "execute the commands in a problem file");
  with_file(runall);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }
  o.checks = !no_checks;
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    auto start = std::chrono::steady_clock::now();
    Outcome result = name == "run" ? cmd_run(o) : handler_for(name)(o);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.report["timing"] = {{"seconds", seconds}};
    if (o.json_out) out << result.report.dump(2) << "\n";
    else render_text(out, result.report);
    if (result.code == exit_invariant) err << "error: internal invariant violated; see report\n";
    return result.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return exit_resource;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return exit_invariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_invariant;
  }
}

}  // namespace fpure::cli
