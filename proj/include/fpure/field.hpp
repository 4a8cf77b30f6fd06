#pragma once

#include <cstdint>
#include <string>

#include "fpure/errors.hpp"

namespace fpure {

/// Deterministic primality test for 32-bit inputs (Miller-Rabin with the
/// bases 2, 7 and 61, which is exact below 4759123141).
inline bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % small == 0) return n == small;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) { return (a * b) % n; };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= n;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 7u, 61u}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Element of F_p stored as its least nonnegative residue. The modulus lives
/// in the owning PrimeField.
struct Residue {
  std::uint32_t value = 0;

  friend bool operator==(Residue, Residue) = default;
  friend auto operator<=>(Residue, Residue) = default;
};

/// The prime field F_p for a machine-word prime p < 2^32.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p >= (std::uint64_t{1} << 32) || !is_prime_u32(p))
      throw DomainError(std::to_string(p) + " is not prime");
  }

  std::uint32_t characteristic() const noexcept { return p_; }

  Residue make(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Residue{static_cast<std::uint32_t>(r)};
  }

  Residue zero() const noexcept { return {0}; }
  Residue one() const noexcept { return {1 % p_}; }

  Residue add(Residue a, Residue b) const noexcept {
    std::uint64_t s = std::uint64_t{a.value} + b.value;
    if (s >= p_) s -= p_;
    return Residue{static_cast<std::uint32_t>(s)};
  }

  Residue sub(Residue a, Residue b) const noexcept {
    return a.value >= b.value ? Residue{a.value - b.value}
                              : Residue{static_cast<std::uint32_t>(std::uint64_t{a.value} + p_ - b.value)};
  }

  Residue neg(Residue a) const noexcept { return a.value == 0 ? a : Residue{p_ - a.value}; }

  Residue mul(Residue a, Residue b) const noexcept {
    return Residue{static_cast<std::uint32_t>((std::uint64_t{a.value} * b.value) % p_)};
  }

  Residue pow(Residue a, std::uint64_t e) const noexcept {
    Residue r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Extended Euclid.
  Residue inv(Residue a) const {
    if (a.value == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a.value;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return make(t);
  }

  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace fpure
