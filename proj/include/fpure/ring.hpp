#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "fpure/errors.hpp"
#include "fpure/field.hpp"
#include "fpure/monomial.hpp"

namespace fpure {

/// The ambient polynomial ring F_p[x_1, ..., x_n] with a fixed monomial
/// order. Immutable; shared by every polynomial living in it.
class PolyRing {
 public:
  PolyRing(std::uint64_t p, std::vector<std::string> variables, MonomialOrder order = {})
      : field_(p), vars_(std::move(variables)), order_(order) {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j]) throw UsageError("duplicate variable " + vars_[i]);
  }

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t characteristic() const noexcept { return field_.characteristic(); }
  std::size_t nvars() const noexcept { return vars_.size(); }
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  const std::string& variable(std::size_t i) const { return vars_.at(i); }
  const MonomialOrder& order() const noexcept { return order_; }

  std::ptrdiff_t index_of(const std::string& name) const noexcept {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.field_ == b.field_ && a.vars_ == b.vars_ && a.order_ == b.order_;
  }

 private:
  PrimeField field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::uint64_t p, std::vector<std::string> variables,
                         OrderKind kind = OrderKind::grevlex) {
  return std::make_shared<const PolyRing>(p, std::move(variables), MonomialOrder{kind, 0});
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw UsageError("operands belong to different rings");
}

/// S[t_1..t_k] with the new variables placed first under an elimination
/// order for them. Names are chosen to avoid collisions.
inline RingPtr elimination_extension(const RingPtr& base, std::size_t extra) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < extra; ++i) {
    std::string candidate = "_t" + std::to_string(i);
    while (base->index_of(candidate) >= 0) candidate += "_";
    names.push_back(candidate);
  }
  names.insert(names.end(), base->variables().begin(), base->variables().end());
  MonomialOrder order{base->order().kind, extra};
  return std::make_shared<const PolyRing>(base->characteristic(), std::move(names), order);
}

/// Same variables, different order kind.
inline RingPtr with_order(const RingPtr& base, OrderKind kind) {
  return std::make_shared<const PolyRing>(base->characteristic(), base->variables(),
                                          MonomialOrder{kind, 0});
}

}  // namespace fpure
