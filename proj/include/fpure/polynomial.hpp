#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fpure/errors.hpp"
#include "fpure/ring.hpp"

namespace fpure {

struct Term {
  Monomial monomial;
  Residue coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial in canonical form: nonzero coefficients, terms strictly
/// decreasing in the ring's monomial order (leading term first).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  // Terms in any order, possibly repeated or zero; normalized on entry.
  Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    normalize();
  }

  static Polynomial constant(const RingPtr& ring, std::int64_t c) {
    return Polynomial(ring, {Term{Monomial(ring->nvars()), ring->field().make(c)}});
  }
  static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }
  static Polynomial one(const RingPtr& ring) { return constant(ring, 1); }
  static Polynomial variable(const RingPtr& ring, std::size_t i) {
    Monomial m(ring->nvars());
    m[i] = 1;
    return Polynomial(ring, {Term{m, ring->field().one()}});
  }
  static Polynomial monomial(const RingPtr& ring, Monomial m, Residue c) {
    return Polynomial(ring, {Term{std::move(m), c}});
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
  }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().monomial; }
  Residue leading_coeff() const { return terms_.front().coeff; }

  std::uint64_t degree() const noexcept {
    std::uint64_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }

  bool is_homogeneous() const noexcept {
    for (const Term& t : terms_)
      if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
    return true;
  }

  bool is_monomial() const noexcept { return terms_.size() == 1; }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(ring_->field().inv(leading_coeff()));
  }

  Polynomial scaled(Residue c) const {
    const PrimeField& F = ring_->field();
    if (c.value == 0) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back(Term{t.monomial, F.mul(t.coeff, c)});
    return r;
  }

  // c * m * this
  Polynomial times_term(const Monomial& m, Residue c) const {
    const PrimeField& F = ring_->field();
    Polynomial r(ring_);
    if (c.value == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back(Term{t.monomial * m, F.mul(t.coeff, c)});
    return r;
  }

  Polynomial operator-() const { return scaled(ring_->field().neg(ring_->field().one())); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.ring_, b.ring_);
    const PrimeField& F = a.ring_->field();
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const Term& s : a.terms_)
      for (const Term& t : b.terms_) out.push_back(Term{s.monomial * t.monomial, F.mul(s.coeff, t.coeff)});
    return Polynomial(a.ring_, std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

  /// Exact power by square-and-multiply.
  Polynomial pow(std::uint64_t n) const {
    Polynomial result = one(ring_);
    Polynomial base = *this;
    while (n) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return result;
  }

  /// f^(p^e) via the semilinear shortcut: coefficients are fixed by
  /// Frobenius on F_p, exponents are multiplied by p^e.
  Polynomial frobenius_power(unsigned e) const {
    if (e == 0) throw UsageError("frobenius_power needs e >= 1");
    std::uint64_t q = frobenius_modulus(ring_->characteristic(), e);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back(Term{scale_exponents(t.monomial, q), t.coeff});
    // Scaling exponents preserves the order, so out is already canonical.
    Polynomial r(ring_);
    r.terms_ = std::move(out);
    return r;
  }

  /// p^e, or a resource error if it does not fit the exponent type.
  static std::uint64_t frobenius_modulus(std::uint64_t p, unsigned e) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
      if (q > std::numeric_limits<Exponent>::max() / p) throw ResourceError("p^e overflows exponent arithmetic");
      q *= p;
    }
    return q;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : terms_) {
      if (!first) out += " + ";
      first = false;
      bool unit_monomial = t.monomial.is_one();
      if (t.coeff.value != 1 || unit_monomial) {
        out += std::to_string(t.coeff.value);
        if (!unit_monomial) out += "*";
      }
      out += monomial_string(t.monomial);
    }
    return out;
  }

  std::string monomial_string(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += ring_->variable(i);
      if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
  }

  /// Re-express in `target`, whose variable list must contain this ring's
  /// variables by name. Variables absent from `target` must not occur.
  Polynomial map_to(const RingPtr& target) const {
    std::vector<std::ptrdiff_t> where(ring_->nvars());
    for (std::size_t i = 0; i < ring_->nvars(); ++i) where[i] = target->index_of(ring_->variable(i));
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
      Monomial m(target->nvars());
      for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        if (t.monomial[i] == 0) continue;
        if (where[i] < 0) throw UsageError("variable " + ring_->variable(i) + " missing in target ring");
        m[static_cast<std::size_t>(where[i])] = t.monomial[i];
      }
      out.push_back(Term{std::move(m), target->field().make(t.coeff.value)});
    }
    return Polynomial(target, std::move(out));
  }

 private:
  void normalize() {
    const MonomialOrder& ord = ring_->order();
    const PrimeField& F = ring_->field();
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.monomial, b.monomial) > 0; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (Term& t : terms_) {
      if (!merged.empty() && merged.back().monomial == t.monomial) {
        merged.back().coeff = F.add(merged.back().coeff, t.coeff);
      } else {
        if (!merged.empty() && merged.back().coeff.value == 0) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && merged.back().coeff.value == 0) merged.pop_back();
    terms_ = std::move(merged);
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    require_same_ring(a.ring_, b.ring_);
    const MonomialOrder& ord = a.ring_->order();
    const PrimeField& F = a.ring_->field();
    Polynomial r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c;
      if (i == a.size()) c = -1;
      else if (j == b.size()) c = 1;
      else c = ord.compare(a.terms_[i].monomial, b.terms_[j].monomial);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff = F.neg(t.coeff);
        r.terms_.push_back(std::move(t));
      } else {
        Residue s = subtract ? F.sub(a.terms_[i].coeff, b.terms_[j].coeff)
                             : F.add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (s.value != 0) r.terms_.push_back(Term{a.terms_[i].monomial, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

}  // namespace fpure
