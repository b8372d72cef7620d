#pragma once

#include "lamnorm/oracle.hpp"
#include "lamnorm/syntax.hpp"

namespace lamnorm {

enum class CpsVariant { ByName, ByValue };

// Plotkin-style call-by-name CPS transform:
//   C[x]     = x
//   C[\x.M]  = \k. k (\x. C[M])
//   C[M N]   = \k. C[M] (\m. m C[N] k)
// Continuation variables are fresh `_k<n>` / `_m<n>` names that never collide
// with the free variables of the input.
TermPtr cps_cbn(const TermPtr& t);

// Plotkin-style call-by-value CPS transform:
//   C[x]     = \k. k x
//   C[\x.M]  = \k. k (\x. C[M])
//   C[M N]   = \k. C[M] (\m. C[N] (\n. m n k))
TermPtr cps_cbv(const TermPtr& t);

// Observation harness: apply the CPS image to the identity continuation and
// normalize with the oracle.
NormOutcome observe_cps(const TermPtr& t, CpsVariant v, std::size_t fuel);

} // namespace lamnorm
