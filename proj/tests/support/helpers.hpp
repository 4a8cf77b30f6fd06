#pragma once

#include <string>

#include "fpure/fpure.hpp"

namespace fpure::testing {

inline Ideal ideal(const RingPtr& ring, const std::string& text) { return lang::parse_ideal(ring, text); }
inline Polynomial poly(const RingPtr& ring, const std::string& text) { return lang::parse_polynomial(ring, text); }

inline RingPtr ring2(std::uint64_t p) { return make_ring(p, {"x", "y"}); }
inline RingPtr ring_abc(std::uint64_t p) { return make_ring(p, {"a", "b", "c"}); }

inline RingPresentation node() {
  RingPtr S = ring2(2);
  return RingPresentation(S, ideal(S, "x*y"));
}

inline RingPresentation cubic(std::uint64_t p) {
  RingPtr S = ring_abc(p);
  return RingPresentation(S, ideal(S, "a^3 + a*b*c - b^2"));
}

inline RingPresentation regular(std::uint64_t p = 2) { return RingPresentation(ring2(p)); }

}  // namespace fpure::testing
