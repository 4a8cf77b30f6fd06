#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "fpure/groebner.hpp"
#include "fpure/polynomial.hpp"

namespace fpure {

/// Finitely generated ideal of the ambient polynomial ring. Equality is
/// mathematical (compares reduced Gröbner bases). The basis is computed on
/// first use and shared between copies.
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(RingPtr ring) : ring_(std::move(ring)) {}
  Ideal(RingPtr ring, std::vector<Polynomial> generators)
      : ring_(std::move(ring)) {
    for (Polynomial& g : generators) {
      require_same_ring(ring_, g.ring());
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  static Ideal zero(const RingPtr& ring) { return Ideal(ring); }
  static Ideal unit(const RingPtr& ring) { return Ideal(ring, {Polynomial::one(ring)}); }
  static Ideal from_basis(const GroebnerBasis& gb) {
    Ideal J(gb.ring(), gb.elements());
    std::call_once(J.cache_->once, [&] { J.cache_->gb = gb; });
    return J;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }

  const GroebnerBasis& gb() const {
    std::call_once(cache_->once, [this] { cache_->gb = buchberger(ring_, gens_); });
    return cache_->gb;
  }

  /// Same ideal, generated by its reduced basis.
  Ideal canonical() const { return from_basis(gb()); }

  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_unit() const { return gb().is_unit_ideal(); }

  bool contains(const Polynomial& f) const { return gb().contains(f); }
  bool contains(const Ideal& other) const {
    require_same_ring(ring_, other.ring_);
    for (const Polynomial& g : other.gens_)
      if (!contains(g)) return false;
    return true;
  }

  Polynomial normal_form(const Polynomial& f) const { return gb().normal_form(f); }

  bool is_monomial() const {
    for (const Polynomial& g : gb().elements())
      if (!g.is_monomial()) return false;
    return true;
  }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    require_same_ring(a.ring_, b.ring_);
    return a.gb() == b.gb();
  }

  /// Canonical display: reduced basis sorted by leading term.
  std::string to_string() const {
    const auto& elems = gb().elements();
    if (elems.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (i) out += ", ";
      out += elems[i].to_string();
    }
    return out + ")";
  }

  std::vector<std::string> generator_strings() const {
    std::vector<std::string> out;
    for (const Polynomial& g : gb().elements()) out.push_back(g.to_string());
    return out;
  }

 private:
  struct Cache {
    std::once_flag once;
    GroebnerBasis gb;
  };

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// R = S/I together with the caller's reducedness assertion, which is
/// recorded but not checked.
struct RingPresentation {
  RingPtr ring;
  Ideal defining_ideal;
  bool asserted_reduced = true;

  explicit RingPresentation(RingPtr s) : ring(s), defining_ideal(Ideal::zero(s)) {}
  RingPresentation(RingPtr s, Ideal I, bool reduced = true)
      : ring(std::move(s)), defining_ideal(std::move(I)), asserted_reduced(reduced) {
    require_same_ring(ring, defining_ideal.ring());
    defining_ideal = defining_ideal.canonical();
  }

  std::uint32_t characteristic() const { return ring->characteristic(); }

  /// The irrelevant ideal generated by all variables.
  Ideal irrelevant_ideal() const {
    std::vector<Polynomial> vars;
    for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(Polynomial::variable(ring, i));
    return Ideal(ring, std::move(vars));
  }
};

}  // namespace fpure
