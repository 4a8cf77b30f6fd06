#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fpure/ideal.hpp"

namespace fpure::oracle {

inline constexpr std::uint64_t exhaustive_state_limit = 1ull << 22;

/// Monomials of total degree <= d in n variables, in a fixed order.
inline std::vector<Monomial> monomials_up_to(std::size_t n, std::uint32_t d) {
  std::vector<Monomial> out;
  Monomial cur(n);
  auto rec = [&](auto& self, std::size_t i, std::uint32_t left) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(rec, 0, d);
  return out;
}

/// Number of multiplier coefficient vectors the scan would visit, or 0 when
/// it exceeds the state limit.
inline std::uint64_t exhaustive_state_count(std::uint32_t p, std::size_t nvars, std::size_t ngens, std::uint32_t bound) {
  const std::size_t slots = monomials_up_to(nvars, bound).size() * ngens;
  std::uint64_t states = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    states *= p;
    if (states > exhaustive_state_limit) return 0;
  }
  return states;
}

inline bool exhaustive_feasible(const Polynomial& f, const std::vector<Polynomial>& gens, std::uint32_t bound) {
  const RingPtr& ring = f.ring();
  return ring->characteristic() <= 3 && ring->nvars() <= 2 && bound <= 4 &&
         exhaustive_state_count(ring->characteristic(), ring->nvars(), gens.size(), bound) != 0;
}

/// Decides f = sum_i g_i * gens_i with every multiplier g_i of degree <= bound
/// by scanning all coefficient choices. Refuses (UsageError / ResourceError)
/// outside p in {2,3}, <= 2 variables, bound <= 4, or when the scan is too big.
inline bool exhaustive_member(const Polynomial& f, const std::vector<Polynomial>& gens, std::uint32_t bound) {
  const RingPtr& ring = f.ring();
  const std::uint32_t p = ring->characteristic();
  if (p > 3 || ring->nvars() > 2 || bound > 4)
    throw UsageError("exhaustive_member: outside the domain p<=3, <=2 variables, bound<=4");
  for (const Polynomial& g : gens) require_same_ring(ring, g.ring());
  if (f.is_zero()) return true;
  if (gens.empty()) return false;
  if (exhaustive_state_count(p, ring->nvars(), gens.size(), bound) == 0)
    throw ResourceError("exhaustive_member: search space too large");

  // Dense coordinates over every monomial that can occur.
  std::map<std::vector<Exponent>, std::size_t> index;
  auto slot = [&](const Monomial& m) {
    auto it = index.try_emplace(m.exponents(), index.size()).first;
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::uint32_t>> f_sparse;
  for (const Term& t : f.terms()) f_sparse.push_back({slot(t.monomial), t.coeff.value});

  const auto multipliers = monomials_up_to(ring->nvars(), bound);
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> columns;  // mult * gen
  for (const Polynomial& g : gens)
    for (const Monomial& m : multipliers) {
      std::vector<std::pair<std::size_t, std::uint32_t>> col;
      for (const Term& t : g.terms()) col.push_back({slot(t.monomial * m), t.coeff.value});
      columns.push_back(std::move(col));
    }

  std::vector<std::uint32_t> target(index.size(), 0), acc(index.size(), 0);
  for (auto [i, c] : f_sparse) target[i] = c;
  std::vector<std::uint32_t> digits(columns.size(), 0);
  for (;;) {
    if (acc == target) return true;
    // Odometer step: incrementing a digit adds its column once; a digit
    // rolling over from p-1 to 0 also adds it once since p*col = 0.
    std::size_t k = 0;
    for (; k < digits.size(); ++k) {
      for (auto [i, c] : columns[k]) acc[i] = (acc[i] + c) % p;
      if (++digits[k] < p) break;
      digits[k] = 0;
    }
    if (k == digits.size()) return false;
  }
}

}  // namespace fpure::oracle
