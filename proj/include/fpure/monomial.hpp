#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "fpure/errors.hpp"

namespace fpure {

using Exponent = std::uint32_t;

/// Exponent vector of a monomial; its length is the ring's variable count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const noexcept { return exps_[i]; }
  Exponent& operator[](std::size_t i) noexcept { return exps_[i]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }

  std::uint64_t degree() const noexcept {
    std::uint64_t d = 0;
    for (Exponent e : exps_) d += e;
    return d;
  }

  bool is_one() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
  }

  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

inline Exponent checked_exponent(std::uint64_t e) {
  if (e > std::numeric_limits<Exponent>::max()) throw ResourceError("exponent overflow");
  return static_cast<Exponent>(e);
}

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_exponent(std::uint64_t{a[i]} + b[i]);
  return r;
}

// Exact quotient a / b; caller guarantees b | a.
inline Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

inline Monomial scale_exponents(const Monomial& m, std::uint64_t factor) {
  Monomial r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = checked_exponent(std::uint64_t{m[i]} * factor);
  return r;
}

enum class OrderKind { lex, grlex, grevlex };

inline std::string_view to_string(OrderKind k) {
  switch (k) {
    case OrderKind::lex: return "lex";
    case OrderKind::grlex: return "grlex";
    case OrderKind::grevlex: return "grevlex";
  }
  return "grevlex";
}

inline bool parse_order_kind(std::string_view s, OrderKind& out) {
  if (s == "lex") out = OrderKind::lex;
  else if (s == "grlex") out = OrderKind::grlex;
  else if (s == "grevlex") out = OrderKind::grevlex;
  else return false;
  return true;
}

/// Total monomial order. Variable priority follows declaration order. A
/// nonzero `elimination_block` makes the first that many variables a block
/// compared (by degree, then grevlex) before the remaining variables, which
/// yields an elimination order for that block.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::size_t elimination_block = 0;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

  // <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    std::size_t n = a.size();
    std::size_t k = std::min(elimination_block, n);
    if (k > 0) {
      int c = compare_range(OrderKind::grevlex, a, b, 0, k);
      if (c != 0) return c;
    }
    return compare_range(kind, a, b, k, n);
  }

  bool less(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) < 0; }

 private:
  static int compare_range(OrderKind kind, const Monomial& a, const Monomial& b, std::size_t lo,
                           std::size_t hi) noexcept {
    if (kind != OrderKind::lex) {
      std::uint64_t da = 0, db = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da < db ? -1 : 1;
    }
    if (kind == OrderKind::grevlex) {
      for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      }
      return 0;
    }
    for (std::size_t i = lo; i < hi; ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }
};

}  // namespace fpure
