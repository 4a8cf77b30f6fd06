#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fpure/criteria.hpp"
#include "fpure/oracle/exhaustive.hpp"
#include "fpure/oracle/monomial_ideal.hpp"

// Randomized engine-versus-oracle comparisons. Each check returns a report
// rather than asserting so the same code backs the tests, the acceptance
// binary and `fpure selftest`.

namespace fpure::oracle {

struct CrossCheck {
  explicit CrossCheck(std::string n = {}) : name(std::move(n)) {}
  std::string name;
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::vector<std::string> disagreements;
  bool ok() const { return disagreements.empty(); }
};

inline std::string exps_string(const Exps& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + std::to_string(e[i]);
  return out + ")";
}

inline RingPtr random_small_ring(std::mt19937_64& rng, const std::vector<std::uint32_t>& primes, std::size_t max_vars) {
  static const char* names[] = {"x", "y", "z"};
  std::uint32_t p = primes[rng() % primes.size()];
  std::size_t n = 1 + rng() % max_vars;
  return make_ring(p, std::vector<std::string>(names, names + n));
}

inline MonomialIdeal random_monomial_ideal(std::mt19937_64& rng, std::size_t n, std::uint32_t max_exp,
                                           std::size_t max_gens = 3) {
  std::vector<Exps> gens;
  std::size_t k = 1 + rng() % max_gens;
  for (std::size_t i = 0; i < k; ++i) {
    Exps e(n);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng() % (max_exp + 1));
    gens.push_back(std::move(e));
  }
  return MonomialIdeal(n, std::move(gens));
}

inline Polynomial random_polynomial(std::mt19937_64& rng, const RingPtr& ring, std::uint32_t max_deg,
                                    std::size_t max_terms) {
  const auto monos = monomials_up_to(ring->nvars(), max_deg);
  std::vector<Term> terms;
  std::size_t k = 1 + rng() % max_terms;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t c = static_cast<std::uint32_t>(1 + rng() % (ring->characteristic() - 1));
    terms.push_back(Term{monos[rng() % monos.size()], Residue{c}});
  }
  return Polynomial(ring, std::move(terms));
}

/// Ideal calculus on random monomial ideals against the combinatorial oracle.
/// One report per operation.
inline std::vector<CrossCheck> monomial_crosschecks(std::size_t per_op = 200, std::uint64_t seed = 20240611) {
  std::mt19937_64 rng(seed);
  const std::vector<std::uint32_t> primes{2, 3, 5};
  std::vector<CrossCheck> out;
  auto run = [&](const std::string& name,
                 const std::function<std::optional<std::string>(const RingPtr&, const MonomialIdeal&, const MonomialIdeal&)>&
                     body) {
    CrossCheck c{name};
    for (std::size_t i = 0; i < per_op; ++i) {
      RingPtr ring = random_small_ring(rng, primes, 3);
      MonomialIdeal a = random_monomial_ideal(rng, ring->nvars(), 6);
      MonomialIdeal b = random_monomial_ideal(rng, ring->nvars(), 6);
      ++c.instances;
      if (auto bad = body(ring, a, b))
        c.disagreements.push_back("p=" + std::to_string(ring->characteristic()) + " A=" + a.to_string() +
                                  " B=" + b.to_string() + ": " + *bad);
    }
    out.push_back(std::move(c));
  };
  auto compare = [](const Ideal& engine, const MonomialIdeal& oracle, const RingPtr& ring) -> std::optional<std::string> {
    Ideal expected = oracle.to_ideal(ring);
    if (engine == expected) return std::nullopt;
    return "engine " + engine.to_string() + " vs oracle " + expected.to_string();
  };
  run("sum", [&](const RingPtr& R, const MonomialIdeal& a, const MonomialIdeal& b) {
    return compare(ideal_sum(a.to_ideal(R), b.to_ideal(R)), sum(a, b), R);
  });
  run("intersect", [&](const RingPtr& R, const MonomialIdeal& a, const MonomialIdeal& b) {
    return compare(ideal_intersect(a.to_ideal(R), b.to_ideal(R)), intersect(a, b), R);
  });
  run("colon", [&](const RingPtr& R, const MonomialIdeal& a, const MonomialIdeal& b) {
    return compare(ideal_colon(a.to_ideal(R), b.to_ideal(R)), colon(a, b), R);
  });
  run("bracket", [&](const RingPtr& R, const MonomialIdeal& a, const MonomialIdeal&) {
    unsigned e = R->characteristic() == 5 ? 1 : 1 + static_cast<unsigned>(a.generators().size() % 2);
    return compare(bracket_power(a.to_ideal(R), e), a.bracket(prime_power(R->characteristic(), e)), R);
  });
  run("root", [&](const RingPtr& R, const MonomialIdeal& a, const MonomialIdeal& b) {
    unsigned e = 1 + static_cast<unsigned>(b.generators().size() % 2);
    return compare(frobenius_root(a.to_ideal(R), e), a.root(prime_power(R->characteristic(), e)), R);
  });
  run("membership", [&](const RingPtr& R, const MonomialIdeal& a, const MonomialIdeal&) -> std::optional<std::string> {
    Exps m(R->nvars());
    for (auto& x : m) x = static_cast<std::uint32_t>(rng() % 9);
    Monomial mono(R->nvars());
    for (std::size_t i = 0; i < m.size(); ++i) mono[i] = m[i];
    bool engine = a.to_ideal(R).contains(Polynomial::monomial(R, mono, R->field().one()));
    if (engine == a.contains(m)) return std::nullopt;
    return "membership of " + exps_string(m) + ": engine " + std::to_string(engine);
  });
  return out;
}

/// ideal_member against the exhaustive scanner on random instances with
/// p in {2,3}, <= 2 variables. Generators are reduced grevlex bases and the
/// bound is deg f, so both sides decide the same question exactly.
inline CrossCheck exhaustive_crosscheck(std::size_t wanted = 200, std::uint64_t seed = 77,
                                        std::uint64_t state_cap = 1ull << 18) {
  std::mt19937_64 rng(seed);
  CrossCheck c{"exhaustive_member"};
  static const char* names[] = {"x", "y"};
  std::size_t attempts = 0;
  while (c.instances < wanted && attempts < 50 * wanted) {
    ++attempts;
    std::uint32_t p = rng() % 2 ? 2 : 3;
    std::size_t n = 1 + rng() % 2;
    RingPtr R = make_ring(p, std::vector<std::string>(names, names + n));
    std::vector<Polynomial> seeds;
    std::size_t k = 1 + rng() % 2;
    for (std::size_t i = 0; i < k; ++i) seeds.push_back(random_polynomial(rng, R, 2, 3));
    Ideal J(R, seeds);
    if (J.is_zero()) continue;
    const auto& gens = J.gb().elements();
    Polynomial f = random_polynomial(rng, R, 3, 3);
    if (rng() % 2) {  // bias towards members
      f = Polynomial::zero(R);
      for (const Polynomial& g : gens) f += g * random_polynomial(rng, R, 1, 2);
      if (f.is_zero() || f.degree() > 4) continue;
    }
    std::uint32_t bound = static_cast<std::uint32_t>(std::max<std::uint64_t>(f.is_zero() ? 0 : f.degree(), 1));
    if (bound > 4 || !exhaustive_feasible(f, gens, bound)) {
      ++c.skipped;
      continue;
    }
    if (exhaustive_state_count(p, n, gens.size(), bound) > state_cap) {
      ++c.skipped;
      continue;
    }
    ++c.instances;
    bool engine = J.contains(f);
    bool oracle = exhaustive_member(f, gens, bound);
    if (engine != oracle)
      c.disagreements.push_back("p=" + std::to_string(p) + " f=" + f.to_string() + " J=" + J.to_string() +
                                ": engine " + std::to_string(engine) + " oracle " + std::to_string(oracle));
  }
  return c;
}

/// root_e(J^[q]) = J and J ⊆ (root_e J)^[q] on random ideals, half monomial
/// and half dense low-degree.
inline CrossCheck frobenius_root_laws(std::size_t count = 100, std::uint64_t seed = 4242) {
  std::mt19937_64 rng(seed);
  CrossCheck c{"frobenius_root_laws"};
  const std::vector<std::uint32_t> primes{2, 3, 5};
  for (std::size_t i = 0; i < count; ++i) {
    RingPtr R = random_small_ring(rng, primes, 3);
    Ideal J = i % 2 == 0 ? random_monomial_ideal(rng, R->nvars(), 4).to_ideal(R) : [&] {
      std::vector<Polynomial> gens;
      std::size_t k = 1 + rng() % 2;
      for (std::size_t j = 0; j < k; ++j) gens.push_back(random_polynomial(rng, R, 2, 3));
      return Ideal(R, gens);
    }();
    unsigned e = R->characteristic() == 5 ? 1 : 1 + static_cast<unsigned>(rng() % 2);
    ++c.instances;
    Ideal back = frobenius_root(bracket_power(J, e), e);
    if (!(back == J))
      c.disagreements.push_back("root(bracket(" + J.to_string() + ")) = " + back.to_string());
    Ideal up = bracket_power(frobenius_root(J, e), e);
    if (!up.contains(J)) c.disagreements.push_back("bracket(root(" + J.to_string() + ")) misses J");
  }
  return c;
}

/// nu by linear scan: expands f^r with plain multiplication and tests each
/// term against the monomial bracket power of the variable ideal m.
inline std::uint64_t exhaustive_nu(const Polynomial& f, const MonomialIdeal& m, unsigned e) {
  const std::uint64_t q = prime_power(f.ring()->characteristic(), e);
  MonomialIdeal mq = m.bracket(q);
  auto escapes = [&](const Polynomial& g) {
    for (const Term& t : g.terms()) {
      const auto& ex = t.monomial.exponents();
      if (!mq.contains(Exps(ex.begin(), ex.end()))) return true;
    }
    return false;
  };
  Polynomial power = Polynomial::one(f.ring());
  std::uint64_t r = 0;
  while (true) {
    Polynomial next = power * f;
    if (!escapes(next)) return r;
    power = std::move(next);
    ++r;
    if (r > 100000) throw ResourceError("exhaustive_nu: no termination");
  }
}

}  // namespace fpure::oracle
