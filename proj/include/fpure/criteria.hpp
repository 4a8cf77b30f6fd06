#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpure/ideal_ops.hpp"

namespace fpure {

/// (I^[p^e] : I) together with a generator u (when one exists) such that the
/// colon is contained in (u) + I^[p^e].
struct FedderDatum {
  unsigned e = 1;
  Ideal fedder_ideal;
  Ideal bracket;  // I^[p^e]
  std::optional<Polynomial> principal_witness;
};

inline std::uint64_t prime_power(std::uint64_t p, unsigned e) { return Polynomial::frobenius_modulus(p, e); }

/// Ring presentation plus graded system, with memoized Fedder ideals and
/// pair evaluations. The caches are filled on demand; lookups are guarded so
/// a context may be shared across threads.
class FrobeniusContext {
 public:
  explicit FrobeniusContext(RingPresentation R, PairSpec pair = {})
      : R_(std::move(R)), pair_(std::move(pair)), cache_(std::make_shared<Cache>()) {
    for (const auto& f : pair_.factors) require_same_ring(R_.ring, f.base.ring());
  }

  const RingPresentation& presentation() const noexcept { return R_; }
  const RingPtr& ring() const noexcept { return R_.ring; }
  const Ideal& defining_ideal() const noexcept { return R_.defining_ideal; }
  const PairSpec& pair() const noexcept { return pair_; }
  std::uint32_t p() const { return R_.characteristic(); }
  std::uint64_t q(unsigned e) const { return prime_power(p(), e); }

  /// Same ring, trivial graded system.
  FrobeniusContext without_pair() const {
    FrobeniusContext c(R_);
    c.cache_->fedder = cache_->fedder;
    return c;
  }

  const FedderDatum& fedder(unsigned e) const {
    if (e == 0) throw UsageError("Fedder ideal needs e >= 1");
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->fedder.find(e); it != cache_->fedder.end()) return *it->second;
    }
    auto datum = std::make_shared<FedderDatum>(compute_fedder(e));
    std::lock_guard lock(cache_->mutex);
    return *cache_->fedder.emplace(e, datum).first->second;
  }

  /// a_{p^e - 1}
  const Ideal& pair_ideal(unsigned e) const {
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->pair_ideals.find(e); it != cache_->pair_ideals.end()) return *it->second;
    }
    auto J = std::make_shared<Ideal>(pair_eval(ring(), pair_, q(e) - 1));
    std::lock_guard lock(cache_->mutex);
    return *cache_->pair_ideals.emplace(e, J).first->second;
  }

  /// Generators of a_{p^e-1} * (I^[p^e] : I), as products of generators.
  std::vector<Polynomial> twisted_fedder_generators(unsigned e) const {
    std::vector<Polynomial> out;
    const Ideal& a = pair_ideal(e);
    const Ideal& F = fedder(e).fedder_ideal;
    for (const Polynomial& x : a.gb().elements())
      for (const Polynomial& s : F.gb().elements()) out.push_back(x * s);
    return out;
  }

  /// The generator u when the Fedder ideals follow the principal pattern
  /// (I^[p^e] : I) = (u^(1+p+...+p^(e-1))) + I^[p^e] for e = 1..e_max.
  /// Under that pattern and a trivial graded system, compatibility at e = 1
  /// propagates to every e.
  std::optional<Polynomial> principal_pattern(unsigned e_max) const {
    const FedderDatum& first = fedder(1);
    if (!first.principal_witness) return std::nullopt;
    const Polynomial& u = *first.principal_witness;
    for (unsigned e = 1; e <= e_max; ++e) {
      const FedderDatum& d = fedder(e);
      std::uint64_t exponent = (q(e) - 1) / (p() - 1);
      Ideal expected = ideal_sum(Ideal(ring(), {u.pow(exponent)}), d.bracket);
      if (!(expected == d.fedder_ideal)) return std::nullopt;
    }
    return u;
  }

  bool certifiable(unsigned e_max) const { return pair_.is_trivial() && principal_pattern(e_max).has_value(); }

 private:
  FedderDatum compute_fedder(unsigned e) const {
    FedderDatum d;
    d.e = e;
    const Ideal& I = R_.defining_ideal;
    d.bracket = bracket_power(I, e);
    if (I.is_zero()) {
      d.fedder_ideal = Ideal::unit(ring());
      d.principal_witness = Polynomial::one(ring());
      return d;
    }
    const auto& gens = I.gb().elements();
    if (gens.size() == 1) {
      // S is a domain, so (f^q : f) = (f^(q-1)).
      Polynomial u = gens.front().pow(q(e) - 1);
      d.fedder_ideal = Ideal(ring(), {u}).canonical();
      d.principal_witness = d.fedder_ideal.gb().elements().front();
      return d;
    }
    d.fedder_ideal = ideal_colon(d.bracket, I);
    for (const Polynomial& u : d.fedder_ideal.gb().elements()) {
      Ideal candidate = ideal_sum(Ideal(ring(), {u}), d.bracket);
      if (candidate.contains(d.fedder_ideal)) {
        d.principal_witness = u;
        break;
      }
    }
    return d;
  }

  struct Cache {
    std::mutex mutex;
    std::map<unsigned, std::shared_ptr<const FedderDatum>> fedder;
    std::map<unsigned, std::shared_ptr<const Ideal>> pair_ideals;
  };

  RingPresentation R_;
  PairSpec pair_;
  std::shared_ptr<Cache> cache_;
};

inline FedderDatum fedder_ideal(const RingPresentation& R, unsigned e) { return FrobeniusContext(R).fedder(e); }

namespace detail {

inline void require_point_on_scheme(const FrobeniusContext& ctx, const Ideal& m) {
  require_same_ring(ctx.ring(), m.ring());
  if (m.is_unit()) throw DomainError("the point ideal must be proper");
  if (!m.contains(ctx.defining_ideal())) throw DomainError("point not on the scheme: I is not contained in " + m.to_string());
}

}  // namespace detail

struct FPurityResult {
  bool f_pure = false;
  std::optional<Polynomial> witness;          // normal form mod m^[p]
  std::optional<Polynomial> witness_element;  // the Fedder-ideal generator it came from
};

/// Fedder's criterion at e = 1: R is F-pure at m iff (I^[p] : I) ⊄ m^[p].
inline FPurityResult is_f_pure(const FrobeniusContext& ctx, const Ideal& m) {
  detail::require_point_on_scheme(ctx, m);
  Ideal mp = bracket_power(m, 1);
  for (const Polynomial& s : ctx.fedder(1).fedder_ideal.gb().elements()) {
    Polynomial nf = mp.normal_form(s);
    if (!nf.is_zero()) return {true, nf, s};
  }
  return {false, std::nullopt, std::nullopt};
}

inline FPurityResult is_f_pure(const RingPresentation& R, const Ideal& m) { return is_f_pure(FrobeniusContext(R), m); }
inline FPurityResult is_f_pure(const RingPresentation& R) { return is_f_pure(R, R.irrelevant_ideal()); }

struct SharpPurityResult {
  bool split = false;
  unsigned e = 0;             // first splitting exponent
  unsigned checked_up_to = 0;
  std::optional<Polynomial> witness;          // normal form mod m^[p^e]
  std::optional<Polynomial> witness_element;  // d * s with d in a_{p^e-1}, s in the Fedder ideal
};

/// Splitting at exponent e: a_{p^e-1} (I^[p^e] : I) ⊄ m^[p^e].
inline std::optional<std::pair<Polynomial, Polynomial>> splitting_witness(const FrobeniusContext& ctx, const Ideal& m,
                                                                         unsigned e) {
  Ideal mq = bracket_power(m, e);
  for (const Polynomial& x : ctx.twisted_fedder_generators(e)) {
    Polynomial nf = mq.normal_form(x);
    if (!nf.is_zero()) return std::pair(nf, x);
  }
  return std::nullopt;
}

/// Scans e = 1..e_max for a splitting. A negative answer only means no
/// splitting was found up to e_max. A split at e also splits at every
/// multiple of e.
inline SharpPurityResult is_sharply_f_pure_pair(const FrobeniusContext& ctx, const Ideal& m, unsigned e_max) {
  if (e_max < 1) throw UsageError("e_max must be at least 1");
  detail::require_point_on_scheme(ctx, m);
  SharpPurityResult r;
  for (unsigned e = 1; e <= e_max; ++e) {
    r.checked_up_to = e;
    if (auto w = splitting_witness(ctx, m, e)) {
      r.split = true;
      r.e = e;
      r.witness = w->first;
      r.witness_element = w->second;
      return r;
    }
  }
  return r;
}

enum class CompatibilityKind { compatible_up_to_E, incompatible_at_e, certified_all_e };

inline std::string to_string(CompatibilityKind k) {
  switch (k) {
    case CompatibilityKind::compatible_up_to_E: return "compatible_up_to_E";
    case CompatibilityKind::incompatible_at_e: return "incompatible_at_e";
    case CompatibilityKind::certified_all_e: return "certified_all_e";
  }
  return "";
}

struct CompatibilityVerdict {
  Ideal subject;
  std::vector<unsigned> checked_e;
  CompatibilityKind kind = CompatibilityKind::compatible_up_to_E;
  unsigned failed_e = 0;
  std::optional<Polynomial> witness;          // element of a_{p^e-1} (I^[p^e]:I) outside (J^[p^e] : J)
  std::optional<Polynomial> witness_normal_form;  // its normal form mod J^[p^e]
  std::optional<Polynomial> certificate_generator;  // u of the principal pattern
  std::string certificate_note;

  bool compatible() const { return kind != CompatibilityKind::incompatible_at_e; }
};

/// Tests a_{p^e-1} (I^[p^e] : I) ⊆ (J^[p^e] : J) for e = 1..e_max, in the
/// equivalent form a_{p^e-1} (I^[p^e] : I) J ⊆ J^[p^e].
inline CompatibilityVerdict is_uniformly_compatible(const FrobeniusContext& ctx, const Ideal& J, unsigned e_max) {
  require_same_ring(ctx.ring(), J.ring());
  if (e_max < 1) throw UsageError("e_max must be at least 1");
  if (!J.contains(ctx.defining_ideal())) throw DomainError("the ideal does not contain the defining ideal");
  CompatibilityVerdict v;
  v.subject = J.canonical();
  if (J.is_unit()) {
    for (unsigned e = 1; e <= e_max; ++e) v.checked_e.push_back(e);
    v.kind = CompatibilityKind::certified_all_e;
    v.certificate_note = "unit ideal";
    return v;
  }
  for (unsigned e = 1; e <= e_max; ++e) {
    v.checked_e.push_back(e);
    Ideal Jq = bracket_power(J, e);
    for (const Polynomial& x : ctx.twisted_fedder_generators(e)) {
      for (const Polynomial& j : v.subject.gb().elements()) {
        if (!Jq.contains(x * j)) {
          v.kind = CompatibilityKind::incompatible_at_e;
          v.failed_e = e;
          v.witness = x;
          v.witness_normal_form = Jq.normal_form(x);
          return v;
        }
      }
    }
  }
  if (ctx.pair().is_trivial()) {
    if (auto u = ctx.principal_pattern(e_max)) {
      v.kind = CompatibilityKind::certified_all_e;
      v.certificate_generator = *u;
      v.certificate_note = "Fedder ideals are (u^(1+p+...+p^(e-1))) + I^[p^e] for e <= " + std::to_string(e_max) +
                           "; e = 1 compatibility composes to every e";
    }
  }
  return v;
}

// nu invariants ------------------------------------------------------------

namespace detail {

// Variables generating m, when m is generated by a set of variables.
inline std::optional<std::vector<std::size_t>> variable_support(const Ideal& m) {
  std::vector<std::size_t> vars;
  for (const Polynomial& g : m.gb().elements()) {
    if (!g.is_monomial() || g.degree() != 1) return std::nullopt;
    const Monomial& mono = g.leading_monomial();
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (mono[i] == 1) vars.push_back(i);
  }
  return vars;
}

/// Arithmetic in S / m^[q]: truncation when m is generated by variables,
/// normal forms otherwise.
class BracketQuotient {
 public:
  BracketQuotient(const Ideal& m, unsigned e) : vars_(variable_support(m)), q_(prime_power(m.ring()->characteristic(), e)) {
    if (!vars_) mq_ = bracket_power(m, e);
  }

  Polynomial reduce(const Polynomial& f) const {
    if (!vars_) return mq_->normal_form(f);
    std::vector<Term> kept;
    for (const Term& t : f.terms()) {
      bool inside = false;
      for (std::size_t i : *vars_)
        if (t.monomial[i] >= q_) inside = true;
      if (!inside) kept.push_back(t);
    }
    return Polynomial(f.ring(), std::move(kept));
  }

  Polynomial multiply(const Polynomial& a, const Polynomial& b) const {
    if (!vars_) return reduce(a * b);
    // Skip products that land in m^[q] before forming them.
    const PrimeField& F = a.ring()->field();
    std::vector<Term> out;
    for (const Term& s : a.terms())
      for (const Term& t : b.terms()) {
        bool inside = false;
        for (std::size_t i : *vars_)
          if (std::uint64_t{s.monomial[i]} + t.monomial[i] >= q_) inside = true;
        if (!inside) out.push_back(Term{s.monomial * t.monomial, F.mul(s.coeff, t.coeff)});
      }
    return Polynomial(a.ring(), std::move(out));
  }

  Polynomial power(const Polynomial& f, std::uint64_t r) const {
    Polynomial result = reduce(Polynomial::one(f.ring()));
    Polynomial base = reduce(f);
    while (r) {
      if (r & 1) result = multiply(result, base);
      r >>= 1;
      if (r) base = multiply(base, base);
    }
    return result;
  }

  bool fast_path() const { return vars_.has_value(); }
  const std::optional<Ideal>& bracket() const { return mq_; }

 private:
  std::optional<std::vector<std::size_t>> vars_;
  std::uint64_t q_;
  std::optional<Ideal> mq_;
};

}  // namespace detail

struct NuResult {
  std::optional<std::uint64_t> value;  // empty: infinite (b is not inside sqrt(m))
  bool infinite() const { return !value.has_value(); }
};

/// b^r ⊄ m^[p^e] for the given r.
inline bool power_escapes_bracket(const Ideal& b, const Ideal& m, unsigned e, std::uint64_t r) {
  detail::BracketQuotient quotient(m, e);
  if (b.gb().size() == 1) return !quotient.power(b.gb().elements().front(), r).is_zero();
  Ideal mq = bracket_power(m, e);
  return !mq.contains(ideal_power(b, r));
}

/// nu = max { r >= 0 : b^r ⊄ m^[p^e] }, by binary search (the condition is
/// downward closed in r).
inline NuResult nu_invariant(const Ideal& b, const Ideal& m, unsigned e) {
  require_same_ring(b.ring(), m.ring());
  if (e < 1) throw UsageError("nu needs e >= 1");
  if (m.is_unit()) throw DomainError("nu needs a proper ideal m");
  if (b.is_zero()) return NuResult{0};  // 0^0 = (1) escapes, 0^r does not
  for (const Polynomial& g : b.gb().elements())
    if (!radical_member(g, m)) return NuResult{};
  // Smallest k with b^k ⊆ m, then b^(k * (n(q-1)+1)) ⊆ m^[q] by pigeonhole.
  std::uint64_t k = 1;
  while (!m.contains(ideal_power(b, k))) ++k;
  const std::uint64_t q = prime_power(m.ring()->characteristic(), e);
  const std::uint64_t n = m.gb().size();
  std::uint64_t hi = k * (n * (q - 1) + 1);  // b^hi ⊆ m^[q]
  std::uint64_t lo = 0;                      // b^lo ⊄ m^[q]
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (power_escapes_bracket(b, m, e, mid)) lo = mid;
    else hi = mid;
  }
  return NuResult{lo};
}

inline NuResult nu_invariant(const Polynomial& f, const Ideal& m, unsigned e) {
  return nu_invariant(Ideal(f.ring(), {f}), m, e);
}

struct FptBounds {
  Rational lower;
  Rational upper;
  std::vector<std::uint64_t> nus;
  std::vector<Rational> sequence;  // nu_e / p^e
};

/// Bounds nu_E / p^E <= fpt <= (nu_E + 1) / p^E together with the sequence.
inline FptBounds fpt_bounds(const Ideal& b, const Ideal& m, unsigned e_max) {
  if (e_max < 1) throw UsageError("e_max must be at least 1");
  FptBounds out;
  const std::uint64_t p = m.ring()->characteristic();
  for (unsigned e = 1; e <= e_max; ++e) {
    NuResult nu = nu_invariant(b, m, e);
    if (nu.infinite()) throw DomainError("nu is infinite: the ideal is not contained in the radical of m");
    out.nus.push_back(*nu.value);
    out.sequence.push_back(Rational(BigInt(*nu.value), BigInt(prime_power(p, e))));
  }
  BigInt q(prime_power(p, e_max));
  out.lower = Rational(BigInt(out.nus.back()), q);
  out.upper = Rational(BigInt(out.nus.back() + 1), q);
  return out;
}

}  // namespace fpure
