#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fpure/criteria.hpp"

namespace fpure {

enum class TraceDirection { ascending, descending };

struct FixedPointTrace {
  std::vector<Ideal> iterates;
  TraceDirection direction = TraceDirection::ascending;
  std::size_t stabilized_at = 0;  // index of the first iterate equal to its successor
  bool stabilized = false;
  std::string operator_description;
};

struct HullResult {
  Ideal ideal;
  FixedPointTrace trace;
};

inline std::size_t max_fixed_point_iterations() { return 256; }

/// Ascending iteration J_0 = I + seed,
///   J_{n+1} = J_n + sum_{e=1..e_max} root_e(a_{p^e-1} (I^[p^e] : I) J_n).
/// The limit is the smallest ideal containing I + seed that the operators
/// map into itself, i.e. the smallest ideal compatible up to e_max.
inline HullResult compatible_hull(const FrobeniusContext& ctx, const Ideal& seed, unsigned e_max) {
  require_same_ring(ctx.ring(), seed.ring());
  if (e_max < 1) throw UsageError("e_max must be at least 1");
  HullResult out;
  out.trace.direction = TraceDirection::ascending;
  out.trace.operator_description =
      "J -> J + sum_{e=1.." + std::to_string(e_max) + "} root_e(a_{p^e-1} (I^[p^e]:I) J)";
  Ideal J = ideal_sum(ctx.defining_ideal(), seed);
  out.trace.iterates.push_back(J);
  for (std::size_t iter = 0; iter < max_fixed_point_iterations(); ++iter) {
    if (J.is_unit()) {
      out.trace.stabilized = true;
      out.trace.stabilized_at = out.trace.iterates.size() - 1;
      out.ideal = J;
      return out;
    }
    std::vector<Polynomial> gens = J.gb().elements();
    for (unsigned e = 1; e <= e_max; ++e) {
      for (const Polynomial& x : ctx.twisted_fedder_generators(e))
        for (const Polynomial& j : J.gb().elements()) {
          auto parts = frobenius_components(x * j, e);
          gens.insert(gens.end(), parts.begin(), parts.end());
        }
    }
    Ideal next = Ideal(ctx.ring(), std::move(gens)).canonical();
    if (next == J) {
      out.trace.stabilized = true;
      out.trace.stabilized_at = out.trace.iterates.size() - 1;
      out.ideal = J;
      return out;
    }
    J = next;
    out.trace.iterates.push_back(J);
  }
  throw ResourceError("compatible hull did not stabilize within the iteration limit");
}

// Jacobian machinery ---------------------------------------------------------

inline Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
  const PrimeField& F = f.ring()->field();
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    if (t.monomial[var] == 0) continue;
    Residue c = F.mul(t.coeff, F.make(t.monomial[var]));
    if (c.value == 0) continue;
    Monomial m = t.monomial;
    m[var] -= 1;
    out.push_back(Term{std::move(m), c});
  }
  return Polynomial(f.ring(), std::move(out));
}

// Laplace expansion along the first row.
inline Polynomial determinant(const std::vector<std::vector<Polynomial>>& M, const RingPtr& ring) {
  const std::size_t n = M.size();
  if (n == 0) return Polynomial::one(ring);
  if (n == 1) return M[0][0];
  Polynomial det = Polynomial::zero(ring);
  for (std::size_t c = 0; c < n; ++c) {
    if (M[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(M[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = M[0][c] * determinant(minor, ring);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Nonzero k x k minors of the Jacobian of `gens`.
inline std::vector<Polynomial> jacobian_minors(const std::vector<Polynomial>& gens, const RingPtr& ring, std::size_t k) {
  std::vector<Polynomial> out;
  const std::size_t n = ring->nvars();
  std::vector<std::vector<Polynomial>> jac;
  for (const Polynomial& g : gens) {
    std::vector<Polynomial> row;
    for (std::size_t v = 0; v < n; ++v) row.push_back(partial_derivative(g, v));
    jac.push_back(std::move(row));
  }
  if (k == 0) return {Polynomial::one(ring)};
  for_each_subset(gens.size(), k, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(n, k, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Polynomial>> M;
      for (std::size_t r : rows) {
        std::vector<Polynomial> row;
        for (std::size_t c : cols) row.push_back(jac[r][c]);
        M.push_back(std::move(row));
      }
      Polynomial d = determinant(M, ring);
      if (!d.is_zero()) out.push_back(std::move(d));
    });
  });
  return out;
}

/// Minimal primes of a monomial ideal, each given by the variable indices
/// generating it (minimal vertex covers of the support hypergraph).
inline std::vector<std::vector<std::size_t>> monomial_minimal_primes(const Ideal& J) {
  if (!J.is_monomial()) throw UsageError("monomial_minimal_primes needs a monomial ideal");
  const std::size_t n = J.ring()->nvars();
  if (n > 20) throw ResourceError("too many variables for minimal-prime enumeration");
  std::vector<std::uint32_t> supports;
  for (const Polynomial& g : J.gb().elements()) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (g.leading_monomial()[i] > 0) s |= (1u << i);
    supports.push_back(s);
  }
  std::vector<std::uint32_t> covers;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool covers_all = std::all_of(supports.begin(), supports.end(), [&](std::uint32_t s) { return (s & mask) != 0; });
    if (!covers_all) continue;
    bool minimal = std::none_of(covers.begin(), covers.end(), [&](std::uint32_t c) { return (c & mask) == c; });
    if (minimal) covers.push_back(mask);
  }
  // Increasing mask order visits subsets before supersets only by popcount
  // within chains, so prune non-minimal covers afterwards.
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t c : covers) {
    bool minimal = std::none_of(covers.begin(), covers.end(), [&](std::uint32_t d) { return d != c && (d & c) == d; });
    if (!minimal) continue;
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < n; ++i)
      if (c & (1u << i)) vars.push_back(i);
    out.push_back(std::move(vars));
  }
  return out;
}

/// f avoids every minimal prime of I, when that is decidable here (I zero or
/// monomial); otherwise only f ∉ sqrt(I) is checked.
inline bool avoids_minimal_primes(const Polynomial& f, const Ideal& I) {
  if (radical_member(f, I)) return false;
  if (I.is_zero() || !I.is_monomial()) return true;
  for (const auto& prime : monomial_minimal_primes(I)) {
    bool has_free_term = std::any_of(f.terms().begin(), f.terms().end(), [&](const Term& t) {
      return std::all_of(prime.begin(), prime.end(), [&](std::size_t v) { return t.monomial[v] == 0; });
    });
    if (!has_free_term) return false;
  }
  return true;
}

/// Candidate test elements from the Jacobian of I: for the largest minor
/// size with a usable minor, the sum of the minors first, then each minor.
inline std::vector<Polynomial> jacobian_test_elements(const RingPresentation& R) {
  const auto& gens = R.defining_ideal.gb().elements();
  const std::size_t top = std::min(gens.size(), R.ring->nvars());
  for (std::size_t k = top + 1; k-- > 0;) {
    auto minors = jacobian_minors(gens, R.ring, k);
    if (minors.empty()) continue;
    std::vector<Polynomial> candidates;
    Polynomial total = Polynomial::zero(R.ring);
    for (const Polynomial& m : minors) total += m;
    if (!total.is_zero()) candidates.push_back(total);
    candidates.insert(candidates.end(), minors.begin(), minors.end());
    std::vector<Polynomial> usable;
    for (const Polynomial& c : candidates)
      if (avoids_minimal_primes(c, R.defining_ideal)) usable.push_back(c);
    if (!usable.empty()) return usable;
  }
  return {};
}

// Test ideals ---------------------------------------------------------------

struct TestIdealResult {
  Ideal ideal;
  Polynomial test_element;
  Polynomial seed;        // element whose hull is the answer
  unsigned seed_power = 1;
  FixedPointTrace trace;  // trace of the final hull
  bool certified = false;
  std::vector<std::string> notes;
};

/// The smallest ideal compatible up to e_max that contains a suitable power
/// of the test element (multiplied by an element of each base ideal of the
/// graded system so that the system becomes trivial after inverting it).
/// Powers are doubled until the hull stops shrinking.
inline TestIdealResult test_ideal(const FrobeniusContext& ctx, const Polynomial& c, unsigned e_max) {
  require_same_ring(ctx.ring(), c.ring());
  const Ideal& I = ctx.defining_ideal();
  if (c.is_zero() || radical_member(c, I)) throw DomainError("test element " + c.to_string() + " is not in R°");
  TestIdealResult out{Ideal::zero(ctx.ring()), c, c, 1, {}, false, {}};
  Polynomial s = c;
  for (const PairSpec::Factor& f : ctx.pair().factors) {
    if (f.exponent == 0 || f.base.is_unit()) continue;
    bool found = false;
    for (const Polynomial& g : f.base.gb().elements()) {
      if (!radical_member(s * g, I)) {
        s = s * g;
        found = true;
        break;
      }
    }
    if (!found) throw DomainError("every generator of " + f.base.to_string() + " lies in sqrt(I)");
  }
  if (!I.is_zero() && !I.is_monomial())
    out.notes.push_back("membership of the test element in R° was checked only against sqrt(I)");
  HullResult hull = compatible_hull(ctx, Ideal(ctx.ring(), {s}), e_max);
  Polynomial seed = s;
  unsigned power = 1;
  const unsigned max_doublings = 6;
  bool stable = false;
  for (unsigned k = 0; k < max_doublings; ++k) {
    Polynomial next_seed = seed * seed;
    HullResult next = compatible_hull(ctx, Ideal(ctx.ring(), {next_seed}), e_max);
    if (next.ideal == hull.ideal) {
      stable = true;
      break;
    }
    hull = std::move(next);
    seed = std::move(next_seed);
    power *= 2;
  }
  if (!stable) out.notes.push_back("hull of seed powers still shrinking after " + std::to_string(max_doublings) + " doublings");
  out.ideal = hull.ideal;
  out.trace = std::move(hull.trace);
  out.seed = seed;
  out.seed_power = power;
  out.certified = stable && ctx.certifiable(e_max);
  return out;
}

inline TestIdealResult test_ideal(const FrobeniusContext& ctx, unsigned e_max) {
  auto candidates = jacobian_test_elements(ctx.presentation());
  if (candidates.empty()) throw DomainError("no usable Jacobian test element; supply one explicitly");
  return test_ideal(ctx, candidates.front(), e_max);
}

// Splitting prime -------------------------------------------------------------

enum class Certification { certified, heuristic_stable, lower_bound, degenerate };

inline std::string to_string(Certification c) {
  switch (c) {
    case Certification::certified: return "certified";
    case Certification::heuristic_stable: return "heuristic-stable";
    case Certification::lower_bound: return "lower-bound";
    case Certification::degenerate: return "degenerate";
  }
  return "";
}

struct SplittingPrimeResult {
  Ideal prime;
  FixedPointTrace trace;  // Q_E = P_1 ∩ ... ∩ P_E
  Certification certification = Certification::heuristic_stable;
  bool verified_compatible = false;
  bool verified_no_splitting = false;
  std::vector<std::string> notes;
};

/// P_e = (m^[p^e] : a_{p^e-1} (I^[p^e] : I)), the elements that do not split
/// at exponent e.
inline Ideal non_splitting_ideal(const FrobeniusContext& ctx, const Ideal& m, unsigned e) {
  Ideal mq = bracket_power(m, e);
  Ideal twisted = Ideal(ctx.ring(), ctx.twisted_fedder_generators(e));
  if (twisted.is_zero()) return Ideal::unit(ctx.ring());
  return ideal_colon(mq, twisted);
}

/// Largest center at m, from the descending intersections of P_e. When the
/// chain has not stabilized after e_max steps, falls back to the sum of the
/// hulls of generators of Q_E that stay inside m (a lower bound).
inline SplittingPrimeResult splitting_prime(const FrobeniusContext& ctx, const Ideal& m, unsigned e_max,
                                            unsigned stability_window = 2) {
  detail::require_point_on_scheme(ctx, m);
  if (e_max < 1) throw UsageError("e_max must be at least 1");
  SplittingPrimeResult out;
  out.trace.direction = TraceDirection::descending;
  out.trace.operator_description = "Q_E = Q_{E-1} ∩ (m^[p^E] : a_{p^E-1} (I^[p^E]:I))";

  if (!is_sharply_f_pure_pair(ctx, m, e_max).split) {
    out.prime = m.canonical();
    out.certification = Certification::degenerate;
    out.notes.push_back("no splitting found for e <= " + std::to_string(e_max) +
                        "; the largest center is the maximal ideal itself");
    return out;
  }

  Ideal Q = non_splitting_ideal(ctx, m, 1);
  out.trace.iterates.push_back(Q);
  unsigned unchanged = 0;
  for (unsigned e = 2; e <= e_max && unchanged < stability_window; ++e) {
    Ideal next = ideal_intersect(Q, non_splitting_ideal(ctx, m, e));
    if (next == Q) {
      if (unchanged == 0) out.trace.stabilized_at = out.trace.iterates.size() - 1;
      ++unchanged;
    } else {
      unchanged = 0;
    }
    Q = next;
    out.trace.iterates.push_back(Q);
  }
  out.trace.stabilized = unchanged >= stability_window;

  Ideal candidate = Q;
  if (out.trace.stabilized) {
    CompatibilityVerdict v = is_uniformly_compatible(ctx, ideal_sum(candidate, ctx.defining_ideal()), e_max);
    if (!v.compatible()) {
      out.notes.push_back("stable chain value is not compatible; using the lower bound");
      out.trace.stabilized = false;
    }
  }
  if (out.trace.stabilized) {
    out.prime = ideal_sum(candidate, ctx.defining_ideal());
    out.certification = ctx.certifiable(e_max) ? Certification::certified : Certification::heuristic_stable;
  } else {
    std::vector<Ideal> parts{ctx.defining_ideal()};
    for (const Polynomial& g : Q.gb().elements()) {
      HullResult h = compatible_hull(ctx, Ideal(ctx.ring(), {g}), e_max);
      if (m.contains(h.ideal)) parts.push_back(h.ideal);
    }
    out.prime = ideal_sum(ctx.ring(), parts);
    out.certification = Certification::lower_bound;
    out.notes.push_back("descending chain not stable for e <= " + std::to_string(e_max) +
                        "; reporting the compatible hulls of its generators that stay inside m");
  }
  out.verified_compatible = is_uniformly_compatible(ctx, out.prime, e_max).compatible();
  out.verified_no_splitting = Q.contains(out.prime);
  return out;
}

// Primality and radical probes -------------------------------------------------

enum class Primality { prime, not_prime, unknown };

inline std::string to_string(Primality p) {
  switch (p) {
    case Primality::prime: return "prime";
    case Primality::not_prime: return "not_prime";
    case Primality::unknown: return "unknown";
  }
  return "";
}

namespace detail {

/// Searches for a factor of positive degree <= deg(f)/2 by enumerating monic
/// candidates whose leading monomial divides LM(f). Returns nullopt when the
/// search space exceeds `budget`.
inline std::optional<bool> has_proper_factor(const Polynomial& f, std::uint64_t budget = 200000) {
  const RingPtr& ring = f.ring();
  const MonomialOrder& ord = ring->order();
  const std::size_t n = ring->nvars();
  const std::uint64_t half = f.degree() / 2;
  const std::uint64_t p = ring->characteristic();
  std::vector<Exponent> caps(n, 0);
  for (const Term& t : f.terms())
    for (std::size_t i = 0; i < n; ++i) caps[i] = std::max(caps[i], t.monomial[i]);
  // All monomials bounded by caps with degree <= half.
  std::vector<Monomial> monos;
  Monomial cur(n);
  std::function<void(std::size_t, std::uint64_t)> gen = [&](std::size_t i, std::uint64_t deg) {
    if (i == n) {
      monos.push_back(cur);
      return;
    }
    for (Exponent e = 0; e <= caps[i] && deg + e <= half; ++e) {
      cur[i] = e;
      gen(i + 1, deg + e);
    }
    cur[i] = 0;
  };
  gen(0, 0);
  std::sort(monos.begin(), monos.end(), [&](const Monomial& a, const Monomial& b) { return ord.less(a, b); });
  std::uint64_t spent = 0;
  for (std::size_t li = 0; li < monos.size(); ++li) {
    const Monomial& lead = monos[li];
    if (lead.is_one() || !lead.divides(f.leading_monomial())) continue;
    std::size_t tails = li;  // monomials smaller than lead
    double space = 1;
    for (std::size_t k = 0; k < tails; ++k) {
      space *= static_cast<double>(p);
      if (space > static_cast<double>(budget)) return std::nullopt;
    }
    spent += static_cast<std::uint64_t>(space);
    if (spent > budget) return std::nullopt;
    std::vector<std::uint32_t> digits(tails, 0);
    for (;;) {
      std::vector<Term> terms{Term{lead, ring->field().one()}};
      for (std::size_t k = 0; k < tails; ++k)
        if (digits[k]) terms.push_back(Term{monos[k], Residue{digits[k]}});
      Polynomial g(ring, std::move(terms));
      if (reduce(f, {g}).is_zero()) return true;
      std::size_t k = 0;
      while (k < tails && ++digits[k] == p) digits[k++] = 0;
      if (k == tails) break;
    }
  }
  return false;
}

}  // namespace detail

/// Decides primality for the zero ideal, monomial ideals, ideals generated by
/// linear forms and principal ideals of degree <= 4; otherwise unknown.
inline Primality primality(const Ideal& J) {
  if (J.is_zero()) return Primality::prime;
  if (J.is_unit()) return Primality::not_prime;
  const auto& gens = J.gb().elements();
  bool linear = std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.degree() == 1; });
  if (linear) return Primality::prime;
  if (J.is_monomial()) return Primality::not_prime;  // some generator has degree >= 2
  if (gens.size() == 1 && gens.front().degree() <= 4) {
    auto factor = detail::has_proper_factor(gens.front());
    if (!factor) return Primality::unknown;
    return *factor ? Primality::not_prime : Primality::prime;
  }
  return Primality::unknown;
}

struct RadicalProbeResult {
  bool passed = true;
  std::size_t probes = 0;  // polynomials g with g^2 ∈ J that were tested
  std::optional<Polynomial> counterexample;
};

/// Samples polynomials g with g^2 ∈ J and checks g ∈ J. Candidates are the
/// square-free parts of basis terms, low-degree monomials and random
/// combinations of these with elements of J. Deterministic for a given seed.
inline RadicalProbeResult radical_probe(const Ideal& J, std::size_t wanted = 100, std::uint64_t seed = 0x5eed) {
  RadicalProbeResult out;
  const RingPtr& ring = J.ring();
  const std::size_t n = ring->nvars();
  const PrimeField& F = ring->field();
  std::mt19937_64 rng(seed);
  std::vector<Polynomial> atoms;
  for (const Polynomial& g : J.gb().elements())
    for (const Term& t : g.terms()) {
      Monomial sq(n);
      for (std::size_t i = 0; i < n; ++i) sq[i] = t.monomial[i] ? 1 : 0;
      atoms.push_back(Polynomial::monomial(ring, sq, F.one()));
    }
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(Polynomial::variable(ring, i));
  atoms.push_back(Polynomial::one(ring));
  auto random_coeff = [&] { return F.make(static_cast<std::int64_t>(rng() % F.characteristic())); };
  auto random_atom_combo = [&] {
    Polynomial g = Polynomial::zero(ring);
    std::size_t k = 1 + rng() % 2;
    for (std::size_t i = 0; i < k; ++i) g += atoms[rng() % atoms.size()].scaled(random_coeff());
    return g;
  };
  auto random_member = [&] {
    Polynomial g = Polynomial::zero(ring);
    for (const Polynomial& b : J.gb().elements()) g += b * random_atom_combo();
    return g;
  };
  const std::size_t max_attempts = 40 * wanted;
  for (std::size_t attempt = 0; attempt < max_attempts && out.probes < wanted; ++attempt) {
    Polynomial g;
    switch (attempt % 3) {
      case 0: g = random_atom_combo(); break;
      case 1: g = random_member(); break;
      default: g = random_atom_combo() + random_member(); break;
    }
    if (g.is_zero()) continue;
    if (!J.contains(g * g)) continue;
    ++out.probes;
    if (!J.contains(g)) {
      out.passed = false;
      out.counterexample = g;
      return out;
    }
  }
  return out;
}

// Lattice enumeration --------------------------------------------------------------

struct LatticeBudget {
  std::size_t max_elements = 256;
  std::size_t max_steps = 10000;
};

struct LatticeElement {
  Ideal ideal;
  std::string key;  // canonical generator string
  Primality prime = Primality::unknown;
  bool radical_probe_passed = false;
  std::size_t radical_probes = 0;
  bool is_test_ideal = false;
  bool is_splitting_prime = false;
  std::optional<CompatibilityVerdict> verdict;
};

struct RejectedSeed {
  Ideal seed;
  CompatibilityVerdict verdict;
};

struct CompatibleLattice {
  std::vector<LatticeElement> elements;  // sorted by key
  std::vector<std::pair<std::size_t, std::size_t>> hasse;  // (smaller, larger)
  std::vector<RejectedSeed> rejected_seeds;
  bool complete = true;
  std::size_t steps = 0;
  unsigned e_max = 0;

  std::optional<std::size_t> index_of(const Ideal& J) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i].ideal == J) return i;
    return std::nullopt;
  }
  bool contains(const Ideal& J) const { return index_of(J).has_value(); }
};

struct LatticeOptions {
  unsigned e_max = 3;
  LatticeBudget budget;
  std::optional<Ideal> splitting_prime;  // added as a generator when given
  std::optional<Ideal> test_ideal;       // annotated when given
  std::size_t radical_probes = 100;
};

/// Closes {I, (1), hulls of compatible seeds, splitting prime} under sums,
/// intersections and hulls of sums. Every element is re-verified compatible
/// up to e_max at the end.
inline CompatibleLattice enumerate_lattice(const FrobeniusContext& ctx, const std::vector<Ideal>& seeds,
                                           const LatticeOptions& opts) {
  CompatibleLattice L;
  L.e_max = opts.e_max;
  const RingPtr& ring = ctx.ring();
  std::map<std::string, Ideal> found;
  auto add = [&](const Ideal& J) {
    Ideal c = J.canonical();
    std::string key = c.to_string();
    if (found.count(key)) return false;
    if (found.size() >= opts.budget.max_elements) {
      L.complete = false;
      return false;
    }
    found.emplace(std::move(key), std::move(c));
    return true;
  };
  add(ctx.defining_ideal());
  add(Ideal::unit(ring));
  for (const Ideal& s : seeds) {
    CompatibilityVerdict v = is_uniformly_compatible(ctx, ideal_sum(s, ctx.defining_ideal()), opts.e_max);
    if (!v.compatible()) {
      L.rejected_seeds.push_back({s, v});
      continue;
    }
    add(compatible_hull(ctx, s, opts.e_max).ideal);
  }
  if (opts.splitting_prime) add(*opts.splitting_prime);

  // Worklist closure over unordered pairs, in canonical-key order.
  std::set<std::pair<std::string, std::string>> done;
  bool changed = true;
  while (changed && L.complete) {
    changed = false;
    std::vector<std::pair<std::string, Ideal>> snapshot(found.begin(), found.end());
    for (std::size_t i = 0; i < snapshot.size() && L.complete; ++i) {
      for (std::size_t j = i + 1; j < snapshot.size() && L.complete; ++j) {
        auto key = std::pair(snapshot[i].first, snapshot[j].first);
        if (done.count(key)) continue;
        done.insert(key);
        if (++L.steps > opts.budget.max_steps) {
          L.complete = false;
          break;
        }
        const Ideal& A = snapshot[i].second;
        const Ideal& B = snapshot[j].second;
        Ideal sum = ideal_sum(A, B);
        changed |= add(sum);
        changed |= add(ideal_intersect(A, B));
        changed |= add(compatible_hull(ctx, sum, opts.e_max).ideal);
      }
    }
  }

  for (auto& [key, J] : found) {
    LatticeElement el;
    el.ideal = J;
    el.key = key;
    el.verdict = is_uniformly_compatible(ctx, J, opts.e_max);
    if (!el.verdict->compatible())
      throw InvariantViolation("lattice element " + key + " is not compatible at e = " +
                               std::to_string(el.verdict->failed_e));
    el.prime = primality(J);
    RadicalProbeResult probe = radical_probe(J, opts.radical_probes);
    el.radical_probe_passed = probe.passed;
    el.radical_probes = probe.probes;
    if (opts.test_ideal) el.is_test_ideal = J == *opts.test_ideal;
    if (opts.splitting_prime) el.is_splitting_prime = J == *opts.splitting_prime;
    L.elements.push_back(std::move(el));
  }

  const std::size_t N = L.elements.size();
  std::vector<std::vector<bool>> below(N, std::vector<bool>(N, false));  // below[i][j]: elements i ⊊ j
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j && L.elements[j].ideal.contains(L.elements[i].ideal)) below[i][j] = true;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (!below[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < N && covered; ++k)
        if (below[i][k] && below[k][j]) covered = false;
      if (covered) L.hasse.emplace_back(i, j);
    }
  return L;
}

// Property checks on a finished lattice ----------------------------------------------

struct UnionCheckEntry {
  std::size_t first = 0, second = 0;
  bool f_pure = false;
  bool sum_in_lattice = false;
  std::string note;
};

struct UnionCheckReport {
  std::vector<UnionCheckEntry> entries;
  std::size_t violations = 0;
  bool skipped = false;
  std::string note;
};

/// For prime elements P, Q inside m: S/(P ∩ Q) is F-pure at m and P + Q is in
/// the lattice.
inline UnionCheckReport check_union_theorem(const FrobeniusContext& ctx, const CompatibleLattice& L, const Ideal& m) {
  UnionCheckReport out;
  if (!is_sharply_f_pure_pair(ctx, m, std::max(1u, L.e_max)).split) {
    out.skipped = true;
    out.note = "base is not (sharply) F-pure at m up to e_max; the theorem does not apply";
    return out;
  }
  for (std::size_t i = 0; i < L.elements.size(); ++i) {
    if (L.elements[i].prime != Primality::prime || !m.contains(L.elements[i].ideal)) continue;
    for (std::size_t j = i; j < L.elements.size(); ++j) {
      if (L.elements[j].prime != Primality::prime || !m.contains(L.elements[j].ideal)) continue;
      UnionCheckEntry entry;
      entry.first = i;
      entry.second = j;
      Ideal meet = ideal_intersect(L.elements[i].ideal, L.elements[j].ideal);
      entry.f_pure = is_f_pure(RingPresentation(ctx.ring(), meet), m).f_pure;
      entry.sum_in_lattice = L.contains(ideal_sum(L.elements[i].ideal, L.elements[j].ideal));
      if (!entry.f_pure || !entry.sum_in_lattice) ++out.violations;
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

struct SubadjunctionEntry {
  std::size_t element;
  Polynomial test_element;
  Ideal test_ideal;
  bool strongly_f_regular = false;
};

struct SubadjunctionReport {
  std::vector<SubadjunctionEntry> entries;
  std::size_t violations = 0;
};

namespace detail {

// Height of a prime whose height is evident from its basis: linear or
// monomial primes (number of generators), principal primes (1), zero (0).
inline std::optional<std::size_t> evident_height(const Ideal& P) {
  const auto& gens = P.gb().elements();
  if (gens.empty()) return 0;
  bool linear = std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.degree() == 1; });
  if (linear) return gens.size();
  if (gens.size() == 1) return 1;
  return std::nullopt;
}

}  // namespace detail

/// For each maximal proper prime element P: the test ideal of S/P (trivial
/// graded system) is the unit ideal.
inline SubadjunctionReport check_subadjunction(const FrobeniusContext& ctx, const CompatibleLattice& L) {
  SubadjunctionReport out;
  const RingPtr& ring = ctx.ring();
  for (std::size_t i = 0; i < L.elements.size(); ++i) {
    const LatticeElement& el = L.elements[i];
    if (el.prime != Primality::prime || el.ideal.is_unit()) continue;
    bool maximal = true;
    for (std::size_t j = 0; j < L.elements.size() && maximal; ++j) {
      const Ideal& other = L.elements[j].ideal;
      if (j == i || other.is_unit()) continue;
      if (other.contains(el.ideal) && !(other == el.ideal)) maximal = false;
    }
    if (!maximal) continue;
    RingPresentation quotient(ring, el.ideal);
    FrobeniusContext qctx(quotient);
    Polynomial c = Polynomial::one(ring);
    auto h = detail::evident_height(el.ideal);
    bool regular = false;
    if (h) {
      std::vector<Polynomial> gens = el.ideal.gb().elements();
      auto minors = jacobian_minors(gens, ring, *h);
      gens.insert(gens.end(), minors.begin(), minors.end());
      regular = Ideal(ring, gens).is_unit();
    }
    if (!regular) {
      auto candidates = jacobian_test_elements(quotient);
      if (candidates.empty()) throw DomainError("no test element for " + el.ideal.to_string());
      c = candidates.front();
    }
    TestIdealResult tau = test_ideal(qctx, c, std::max(1u, L.e_max));
    SubadjunctionEntry entry{i, c, tau.ideal, tau.ideal.is_unit()};
    if (!entry.strongly_f_regular) ++out.violations;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace fpure
