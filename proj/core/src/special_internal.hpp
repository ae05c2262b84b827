#pragma once

namespace bellmax::detail {

/// omega_q in extended precision for callers that form y in extended
/// precision too. No argument checks: q > 1, y is clamped to [0, 1].
long double omega_q_ext(long double q, long double y);

}  // namespace bellmax::detail
