#pragma once

#include <map>
#include <string>
#include <vector>

#include "fpure/criteria.hpp"
#include "fpure/oracle/monomial_ideal.hpp"

namespace fpure::oracle {

struct BruteLattice {
  std::vector<Ideal> compatible;  // sorted by canonical string
  std::size_t candidates = 0;     // distinct ideals examined
};

/// Every antichain of exponent vectors in the box [0, max_exponent]^n.
inline std::vector<std::vector<Exps>> box_antichains(std::size_t n, std::uint32_t max_exponent) {
  std::vector<Exps> points;
  Exps cur(n, 0);
  auto rec = [&](auto& self, std::size_t i) -> void {
    if (i == n) {
      points.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= max_exponent; ++e) {
      cur[i] = e;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::vector<std::vector<Exps>> out;
  std::vector<Exps> chosen;
  auto pick = [&](auto& self, std::size_t i) -> void {
    if (i == points.size()) {
      out.push_back(chosen);
      return;
    }
    self(self, i + 1);
    const Exps& p = points[i];
    bool comparable = false;
    for (const Exps& c : chosen)
      if (exps_divides(c, p) || exps_divides(p, c)) comparable = true;
    if (!comparable) {
      chosen.push_back(p);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  pick(pick, 0);
  return out;
}

/// All monomial ideals with generator exponents <= max_exponent joined with I,
/// plus I joined with each subset of `pool`, filtered by the compatibility
/// test up to e_max.
inline BruteLattice brute_lattice(const FrobeniusContext& ctx, std::uint32_t max_exponent,
                                  const std::vector<Polynomial>& pool, unsigned e_max) {
  const RingPtr& ring = ctx.ring();
  if (ring->characteristic() != 2 || ring->nvars() > 3 || max_exponent > 2 || pool.size() > 10)
    throw ResourceError("brute_lattice: needs p = 2, <= 3 variables, max_exponent <= 2, pool <= 10");
  for (const Polynomial& g : ctx.defining_ideal().gb().elements())
    if (g.terms().size() > 2) throw UsageError("brute_lattice: defining ideal must be monomial or binomial");

  std::map<std::string, Ideal> candidates;
  auto consider = [&](const Ideal& J) {
    Ideal c = ideal_sum(ctx.defining_ideal(), J);
    candidates.try_emplace(c.to_string(), c);
  };
  for (const auto& gens : box_antichains(ring->nvars(), max_exponent))
    consider(MonomialIdeal(ring->nvars(), gens).to_ideal(ring));
  for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (1u << i)) gens.push_back(pool[i]);
    consider(Ideal(ring, std::move(gens)));
  }

  BruteLattice out;
  out.candidates = candidates.size();
  for (auto& [key, J] : candidates)
    if (is_uniformly_compatible(ctx, J, e_max).compatible()) out.compatible.push_back(J);
  return out;
}

}  // namespace fpure::oracle
