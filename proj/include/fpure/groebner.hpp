#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fpure/errors.hpp"
#include "fpure/polynomial.hpp"

namespace fpure {

struct GBLimits {
  std::uint64_t max_degree = 512;
  std::size_t max_basis = 10000;
};

namespace detail {
inline GBLimits& current_limits() {
  thread_local GBLimits limits;
  return limits;
}
}  // namespace detail

inline const GBLimits& gb_limits() { return detail::current_limits(); }

/// Overrides the Gröbner limits for the current thread until destroyed.
class ScopedGBLimits {
 public:
  explicit ScopedGBLimits(GBLimits limits) : saved_(detail::current_limits()) {
    detail::current_limits() = limits;
  }
  ~ScopedGBLimits() { detail::current_limits() = saved_; }
  ScopedGBLimits(const ScopedGBLimits&) = delete;
  ScopedGBLimits& operator=(const ScopedGBLimits&) = delete;

 private:
  GBLimits saved_;
};

/// Remainder of f under multivariate division by `divisors` (full
/// reduction: no term of the result is divisible by a divisor's leading
/// monomial).
inline Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  const RingPtr& ring = f.ring();
  const PrimeField& F = ring->field();
  Polynomial work = f;
  std::vector<Term> remainder;
  while (!work.is_zero()) {
    const Term lead = work.leading_term();
    const Polynomial* hit = nullptr;
    for (const Polynomial& g : divisors) {
      if (g.leading_monomial().divides(lead.monomial)) {
        hit = &g;
        break;
      }
    }
    if (hit) {
      Residue c = F.div(lead.coeff, hit->leading_coeff());
      work -= hit->times_term(lead.monomial / hit->leading_monomial(), c);
    } else {
      remainder.push_back(lead);
      work -= Polynomial::monomial(ring, lead.monomial, lead.coeff);
    }
  }
  return Polynomial(ring, std::move(remainder));
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const PrimeField& F = f.ring()->field();
  Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  Polynomial a = f.times_term(l / f.leading_monomial(), F.inv(f.leading_coeff()));
  Polynomial b = g.times_term(l / g.leading_monomial(), F.inv(g.leading_coeff()));
  return a - b;
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by increasing
/// leading monomial. Unique for a given ideal and order, so bases compare
/// equal exactly when the ideals do.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> reduced)
      : ring_(std::move(ring)), basis_(std::move(reduced)) {}

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& elements() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }
  bool is_zero_ideal() const noexcept { return basis_.empty(); }
  bool is_unit_ideal() const noexcept { return basis_.size() == 1 && basis_[0].is_constant(); }

  Polynomial normal_form(const Polynomial& f) const {
    require_same_ring(ring_, f.ring());
    return reduce(f, basis_);
  }

  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return same_ring(a.ring_, b.ring_) && a.basis_ == b.basis_;
  }

 private:
  RingPtr ring_;
  std::vector<Polynomial> basis_;
};

namespace detail {

struct CriticalPair {
  std::size_t i, j;
  Monomial lcm;
  std::uint64_t sugar;
};

inline void check_degree(std::uint64_t d, const GBLimits& limits) {
  if (d > limits.max_degree)
    throw ResourceError("Groebner basis computation exceeded max degree " + std::to_string(limits.max_degree) +
                        " (reached " + std::to_string(d) + ")");
}

// Minimalize, inter-reduce, normalize, sort.
inline std::vector<Polynomial> reduce_basis(std::vector<Polynomial> g, const MonomialOrder& ord) {
  std::sort(g.begin(), g.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.less(a.leading_monomial(), b.leading_monomial());
  });
  std::vector<Polynomial> minimal;
  for (Polynomial& f : g) {
    bool redundant = false;
    for (const Polynomial& h : minimal)
      if (h.leading_monomial().divides(f.leading_monomial())) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(std::move(f));
  }
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    // The leading term is not divisible by any other leading monomial, so
    // only the tail changes.
    out.push_back(reduce(minimal[i], others).monic());
  }
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.less(a.leading_monomial(), b.leading_monomial());
  });
  return out;
}

}  // namespace detail

/// Buchberger's algorithm with the sugar selection strategy and both
/// Buchberger criteria. Deterministic: the output depends only on the ideal.
inline GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& generators) {
  const GBLimits limits = gb_limits();
  const MonomialOrder& ord = ring->order();
  std::vector<Polynomial> basis;
  std::vector<std::uint64_t> sugar;
  std::vector<detail::CriticalPair> pending;
  std::set<std::pair<std::size_t, std::size_t>> open;

  auto add_element = [&](Polynomial f, std::uint64_t s) {
    f = f.monic();
    if (basis.size() >= limits.max_basis)
      throw ResourceError("Groebner basis exceeded max size " + std::to_string(limits.max_basis));
    std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      Monomial l = lcm(basis[i].leading_monomial(), f.leading_monomial());
      std::uint64_t si = sugar[i] + (l.degree() - basis[i].leading_monomial().degree());
      std::uint64_t sk = s + (l.degree() - f.leading_monomial().degree());
      pending.push_back({i, k, std::move(l), std::max(si, sk)});
      open.insert({i, k});
    }
    basis.push_back(std::move(f));
    sugar.push_back(s);
  };

  // Inputs in a fixed order so that ties in the pair queue do not depend on
  // how the caller listed the generators.
  std::vector<Polynomial> inputs;
  for (const Polynomial& g : generators) {
    require_same_ring(ring, g.ring());
    if (g.is_zero()) continue;
    detail::check_degree(g.degree(), limits);
    if (g.is_constant()) return GroebnerBasis(ring, {Polynomial::one(ring)});
    inputs.push_back(g.monic());
  }
  std::sort(inputs.begin(), inputs.end(), [&](const Polynomial& a, const Polynomial& b) {
    int c = ord.compare(a.leading_monomial(), b.leading_monomial());
    if (c != 0) return c < 0;
    return a.to_string() < b.to_string();
  });
  for (Polynomial& g : inputs) {
    Polynomial r = reduce(g, basis);
    if (r.is_zero()) continue;
    if (r.is_constant()) return GroebnerBasis(ring, {Polynomial::one(ring)});
    add_element(std::move(r), g.degree());
  }

  auto pair_less = [&](const detail::CriticalPair& a, const detail::CriticalPair& b) {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = ord.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    c = ord.compare(basis[a.i].leading_monomial(), basis[b.i].leading_monomial());
    if (c != 0) return c < 0;
    c = ord.compare(basis[a.j].leading_monomial(), basis[b.j].leading_monomial());
    if (c != 0) return c < 0;
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  };

  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), pair_less);
    detail::CriticalPair cp = std::move(*best);
    *best = std::move(pending.back());
    pending.pop_back();
    open.erase({cp.i, cp.j});

    const Monomial& li = basis[cp.i].leading_monomial();
    const Monomial& lj = basis[cp.j].leading_monomial();
    if (coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == cp.i || k == cp.j) continue;
      if (!basis[k].leading_monomial().divides(cp.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return a < b ? std::pair(a, b) : std::pair(b, a); };
      if (!open.count(key(cp.i, k)) && !open.count(key(cp.j, k))) chain = true;
    }
    if (chain) continue;

    detail::check_degree(cp.lcm.degree(), limits);
    Polynomial h = reduce(s_polynomial(basis[cp.i], basis[cp.j]), basis);
    if (h.is_zero()) continue;
    if (h.is_constant()) return GroebnerBasis(ring, {Polynomial::one(ring)});
    detail::check_degree(h.degree(), limits);
    add_element(std::move(h), cp.sugar);
  }
  return GroebnerBasis(ring, detail::reduce_basis(std::move(basis), ord));
}

/// True when every S-polynomial of `basis` reduces to zero against it.
inline bool satisfies_buchberger_criterion(const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

}  // namespace fpure
