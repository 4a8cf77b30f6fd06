#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fpure/ideal.hpp"

// Combinatorial monomial ideals. Deliberately independent of the Groebner
// machinery: everything here is exponent-vector arithmetic.

namespace fpure::oracle {

using Exps = std::vector<std::uint32_t>;

inline bool exps_divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

class MonomialIdeal {
 public:
  explicit MonomialIdeal(std::size_t nvars, std::vector<Exps> gens = {}) : n_(nvars) {
    for (auto& g : gens) {
      if (g.size() != n_) throw UsageError("exponent vector has wrong length");
      insert(std::move(g));
    }
  }

  static MonomialIdeal from_ideal(const Ideal& J) {
    MonomialIdeal out(J.ring()->nvars());
    for (const Polynomial& g : J.generators()) {
      if (!g.is_monomial()) throw UsageError("not a monomial ideal: " + J.to_string());
      const Monomial& m = g.leading_monomial();
      out.insert(Exps(m.exponents().begin(), m.exponents().end()));
    }
    return out;
  }

  Ideal to_ideal(const RingPtr& ring) const {
    if (ring->nvars() != n_) throw UsageError("ring has wrong number of variables");
    std::vector<Polynomial> gens;
    for (const Exps& g : gens_) {
      Monomial m(n_);
      for (std::size_t i = 0; i < n_; ++i) m[i] = g[i];
      gens.push_back(Polynomial::monomial(ring, m, ring->field().one()));
    }
    return Ideal(ring, std::move(gens));
  }

  std::size_t nvars() const { return n_; }
  const std::vector<Exps>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  bool contains(const Exps& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Exps& g) { return exps_divides(g, m); });
  }
  bool contains(const MonomialIdeal& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Exps& g) { return contains(g); });
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) { return a.gens_ == b.gens_; }

  friend MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b) {
    MonomialIdeal out = a;
    for (const Exps& g : b.gens_) out.insert(g);
    return out;
  }

  friend MonomialIdeal intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
    MonomialIdeal out(a.n_);
    for (const Exps& g : a.gens_)
      for (const Exps& h : b.gens_) {
        Exps l(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) l[i] = std::max(g[i], h[i]);
        out.insert(std::move(l));
      }
    return out;
  }

  /// (a : x^m) by truncated subtraction.
  friend MonomialIdeal colon(const MonomialIdeal& a, const Exps& m) {
    MonomialIdeal out(a.n_);
    for (const Exps& g : a.gens_) {
      Exps d(a.n_);
      for (std::size_t i = 0; i < a.n_; ++i) d[i] = g[i] > m[i] ? g[i] - m[i] : 0;
      out.insert(std::move(d));
    }
    return out;
  }

  friend MonomialIdeal colon(const MonomialIdeal& a, const MonomialIdeal& b) {
    if (b.is_zero()) throw DomainError("colon by the zero ideal");
    MonomialIdeal out(a.n_, {Exps(a.n_, 0)});
    for (const Exps& m : b.gens_) out = intersect(out, colon(a, m));
    return out;
  }

  MonomialIdeal bracket(std::uint64_t q) const {
    MonomialIdeal out(n_);
    for (const Exps& g : gens_) {
      Exps s(n_);
      for (std::size_t i = 0; i < n_; ++i) s[i] = static_cast<std::uint32_t>(g[i] * q);
      out.insert(std::move(s));
    }
    return out;
  }

  MonomialIdeal root(std::uint64_t q) const {
    MonomialIdeal out(n_);
    for (const Exps& g : gens_) {
      Exps s(n_);
      for (std::size_t i = 0; i < n_; ++i) s[i] = static_cast<std::uint32_t>(g[i] / q);
      out.insert(std::move(s));
    }
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      if (k) out += ", ";
      out += "(";
      for (std::size_t i = 0; i < n_; ++i) out += (i ? "," : "") + std::to_string(gens_[k][i]);
      out += ")";
    }
    return out + "}";
  }

 private:
  void insert(Exps g) {
    if (contains(g)) return;
    gens_.erase(std::remove_if(gens_.begin(), gens_.end(), [&](const Exps& h) { return exps_divides(g, h); }),
                gens_.end());
    gens_.insert(std::lower_bound(gens_.begin(), gens_.end(), g), std::move(g));
  }

  std::size_t n_;
  std::vector<Exps> gens_;  // minimal, sorted
};

}  // namespace fpure::oracle
