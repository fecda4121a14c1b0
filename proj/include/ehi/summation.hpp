#pragma once

#include <span>

#include "ehi/types.hpp"

namespace ehi {

// Fixed-shape pairwise (cascade) summation.  The reduction tree depends only
// on the length of the input, so results are bit-identical regardless of how
// the values were produced.
inline cplx pairwise_sum(std::span<const cplx> xs) {
  if (xs.size() <= 8) {
    cplx s{0.0, 0.0};
    for (const cplx& x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace ehi
