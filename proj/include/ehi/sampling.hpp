#pragma once

#include <vector>

#include "ehi/identities.hpp"
#include "ehi/types.hpp"

namespace ehi::sampling {

// Nome pair with moduli log-uniform in [lo, hi].  `real` restricts to the
// positive real axis (required by the additive-variable kernel identity).
NomePair random_nomes(Rng& rng, double lo = 0.08, double hi = 0.2,
                      bool real = false);

// Balanced parameter lists.  Moduli are jittered around the geometric mean
// imposed by the balancing constraint, capped at `cap`; the last parameter is
// solved from the constraint, so the product is exact to rounding.
std::vector<cplx> beta_params(Rng& rng, const NomePair& nomes,
                              double cap = 0.85);       // 6, prod = pq
std::vector<cplx> v_params(Rng& rng, const NomePair& nomes,
                           double cap = 0.8);           // 8, prod = (pq)^2

// Eight parameters for the difference-equation check: additionally
// |t1|, |t2| < |q| with margin so the shifted sets stay admissible.
std::vector<cplx> difference_equation_params(Rng& rng, const NomePair& nomes);
// Nomes suitable for the above (|q| well above the |t1|, |t2| band).
NomePair difference_equation_nomes(Rng& rng);

struct SelbergParams {
  cplx t;
  std::vector<cplx> tm;  // six single-variable parameters
};
SelbergParams selberg_params(Rng& rng, const NomePair& nomes, int n);

identities::StrFunctionalParams str_functional_params(Rng& rng,
                                                      const NomePair& nomes);

}  // namespace ehi::sampling
