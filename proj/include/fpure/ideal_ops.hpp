#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpure/errors.hpp"
#include "fpure/ideal.hpp"

namespace fpure {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// ceil(t * i) for a nonnegative rational t, exactly.
inline std::uint64_t ceil_times(const Rational& t, std::uint64_t i) {
  if (t < 0) throw DomainError("negative exponent in graded system");
  BigInt num = boost::multiprecision::numerator(t) * i;
  BigInt den = boost::multiprecision::denominator(t);
  BigInt q = (num + den - 1) / den;
  if (q > BigInt(std::numeric_limits<std::uint32_t>::max())) throw ResourceError("ceiling exponent too large");
  return static_cast<std::uint64_t>(q);
}

inline std::string rational_string(const Rational& t) {
  if (boost::multiprecision::denominator(t) == 1) return boost::multiprecision::numerator(t).str();
  return boost::multiprecision::numerator(t).str() + "/" + boost::multiprecision::denominator(t).str();
}

inline Ideal ideal_sum(const Ideal& J, const Ideal& K) {
  require_same_ring(J.ring(), K.ring());
  std::vector<Polynomial> gens = J.generators();
  gens.insert(gens.end(), K.generators().begin(), K.generators().end());
  return Ideal(J.ring(), std::move(gens)).canonical();
}

inline Ideal ideal_sum(const RingPtr& ring, const std::vector<Ideal>& ideals) {
  std::vector<Polynomial> gens;
  for (const Ideal& J : ideals) {
    require_same_ring(ring, J.ring());
    gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  }
  return Ideal(ring, std::move(gens)).canonical();
}

inline Ideal ideal_product(const Ideal& J, const Ideal& K) {
  require_same_ring(J.ring(), K.ring());
  std::vector<Polynomial> gens;
  for (const Polynomial& a : J.gb().elements())
    for (const Polynomial& b : K.gb().elements()) gens.push_back(a * b);
  return Ideal(J.ring(), std::move(gens)).canonical();
}

inline Ideal ideal_power(const Ideal& J, std::uint64_t n) {
  Ideal result = Ideal::unit(J.ring());
  Ideal base = J.canonical();
  while (n) {
    if (n & 1) result = ideal_product(result, base);
    n >>= 1;
    if (n) base = ideal_product(base, base);
  }
  return result;
}

/// J^ceil(t*i); the zeroth power is the unit ideal.
inline Ideal ceil_power(const Ideal& J, const Rational& t, std::uint64_t i) {
  return ideal_power(J, ceil_times(t, i));
}

/// Quotient q with h = q * g; throws if g does not divide h.
inline Polynomial exact_divide(Polynomial h, const Polynomial& g) {
  require_same_ring(h.ring(), g.ring());
  if (g.is_zero()) throw DomainError("division by zero polynomial");
  const PrimeField& F = g.ring()->field();
  std::vector<Term> quotient;
  while (!h.is_zero()) {
    if (!g.leading_monomial().divides(h.leading_monomial()))
      throw InvariantViolation("exact_divide: " + g.to_string() + " does not divide");
    Term t{h.leading_monomial() / g.leading_monomial(), F.div(h.leading_coeff(), g.leading_coeff())};
    h -= g.times_term(t.monomial, t.coeff);
    quotient.push_back(std::move(t));
  }
  return Polynomial(g.ring(), std::move(quotient));
}

/// J ∩ K by eliminating t from t*J + (1 - t)*K.
inline Ideal ideal_intersect(const Ideal& J, const Ideal& K) {
  require_same_ring(J.ring(), K.ring());
  const RingPtr& S = J.ring();
  if (J.is_zero() || K.is_zero()) return Ideal::zero(S);
  if (J.is_unit()) return K.canonical();
  if (K.is_unit()) return J.canonical();
  RingPtr T = elimination_extension(S, 1);
  Polynomial t = Polynomial::variable(T, 0);
  Polynomial one_minus_t = Polynomial::one(T) - t;
  std::vector<Polynomial> gens;
  for (const Polynomial& g : J.gb().elements()) gens.push_back(t * g.map_to(T));
  for (const Polynomial& g : K.gb().elements()) gens.push_back(one_minus_t * g.map_to(T));
  GroebnerBasis G = buchberger(T, gens);
  std::vector<Polynomial> kept;
  for (const Polynomial& g : G.elements())
    if (g.leading_monomial()[0] == 0) kept.push_back(g.map_to(S));
  return Ideal(S, std::move(kept)).canonical();
}

/// (J : g) for a single nonzero polynomial g.
inline Ideal ideal_colon(const Ideal& J, const Polynomial& g) {
  require_same_ring(J.ring(), g.ring());
  if (g.is_zero()) throw DomainError("colon by the zero ideal");
  const RingPtr& S = J.ring();
  if (g.is_constant()) return J.canonical();
  if (J.contains(g)) return Ideal::unit(S);
  Ideal meet = ideal_intersect(J, Ideal(S, {g}));
  std::vector<Polynomial> gens;
  for (const Polynomial& h : meet.gb().elements()) gens.push_back(exact_divide(h, g));
  return Ideal(S, std::move(gens)).canonical();
}

/// (J : K) as the intersection of (J : g) over generators g of K.
inline Ideal ideal_colon(const Ideal& J, const Ideal& K) {
  require_same_ring(J.ring(), K.ring());
  if (K.is_zero()) throw DomainError("colon by the zero ideal");
  Ideal result = Ideal::unit(J.ring());
  for (const Polynomial& g : K.gb().elements()) {
    result = ideal_intersect(result, ideal_colon(J, g));
  }
  return result;
}

/// J^[p^e], generated by the p^e-th powers of the reduced basis. Those
/// powers are themselves a reduced basis because Frobenius is flat over S.
inline Ideal bracket_power(const Ideal& J, unsigned e) {
  std::vector<Polynomial> gens;
  for (const Polynomial& g : J.gb().elements()) gens.push_back(g.frobenius_power(e));
  return Ideal::from_basis(GroebnerBasis(J.ring(), std::move(gens)));
}

/// Ideal generated by the p^e-th powers of the given generators (no basis
/// shortcut).
inline Ideal bracket_power_of_generators(const Ideal& J, unsigned e) {
  std::vector<Polynomial> gens;
  for (const Polynomial& g : J.generators()) gens.push_back(g.frobenius_power(e));
  return Ideal(J.ring(), std::move(gens));
}

/// The p^e-adic components of f: f = sum over mu of (g_mu)^(p^e) * x^mu with
/// every exponent of mu below p^e.
inline std::vector<Polynomial> frobenius_components(const Polynomial& f, unsigned e) {
  const RingPtr& S = f.ring();
  const std::uint64_t q = Polynomial::frobenius_modulus(S->characteristic(), e);
  std::map<std::vector<Exponent>, std::vector<Term>> buckets;
  for (const Term& t : f.terms()) {
    std::vector<Exponent> mu(t.monomial.size());
    Monomial quotient(t.monomial.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      mu[i] = static_cast<Exponent>(t.monomial[i] % q);
      quotient[i] = static_cast<Exponent>(t.monomial[i] / q);
    }
    // c^(p^e) = c in F_p, so coefficients pass through unchanged.
    buckets[mu].push_back(Term{std::move(quotient), t.coeff});
  }
  std::vector<Polynomial> out;
  for (auto& [mu, terms] : buckets) out.push_back(Polynomial(S, std::move(terms)));
  return out;
}

/// The smallest ideal K with J ⊆ K^[p^e].
inline Ideal frobenius_root(const Ideal& J, unsigned e) {
  std::vector<Polynomial> gens;
  for (const Polynomial& f : J.generators()) {
    auto parts = frobenius_components(f, e);
    gens.insert(gens.end(), parts.begin(), parts.end());
  }
  return Ideal(J.ring(), std::move(gens)).canonical();
}

/// f ∈ sqrt(J), decided by 1 ∈ J + (1 - t f) in S[t].
inline bool radical_member(const Polynomial& f, const Ideal& J) {
  require_same_ring(f.ring(), J.ring());
  if (J.contains(f)) return true;
  if (J.is_zero()) return f.is_zero();
  RingPtr T = elimination_extension(J.ring(), 1);
  std::vector<Polynomial> gens;
  for (const Polynomial& g : J.gb().elements()) gens.push_back(g.map_to(T));
  gens.push_back(Polynomial::one(T) - Polynomial::variable(T, 0) * f.map_to(T));
  return buchberger(T, gens).is_unit_ideal();
}

/// Graded system a_i = prod_j b_j^ceil(t_j * i).
struct PairSpec {
  struct Factor {
    Ideal base;
    Rational exponent;
  };
  std::vector<Factor> factors;

  PairSpec() = default;
  explicit PairSpec(std::vector<Factor> fs) : factors(std::move(fs)) {
    for (const Factor& f : factors) {
      if (f.base.is_zero()) throw DomainError("graded system base ideal must be nonzero");
      if (f.exponent < 0) throw DomainError("graded system exponent must be nonnegative");
    }
  }

  bool is_trivial() const {
    for (const Factor& f : factors)
      if (f.exponent != 0 && !f.base.is_unit()) return false;
    return true;
  }

  std::string to_string() const {
    if (factors.empty()) return "trivial";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += " * ";
      out += factors[i].base.to_string() + "^" + rational_string(factors[i].exponent);
    }
    return out;
  }
};

inline Ideal pair_eval(const RingPtr& ring, const PairSpec& pair, std::uint64_t i) {
  Ideal result = Ideal::unit(ring);
  for (const PairSpec::Factor& f : pair.factors) {
    require_same_ring(ring, f.base.ring());
    result = ideal_product(result, ceil_power(f.base, f.exponent, i));
  }
  return result;
}

}  // namespace fpure
