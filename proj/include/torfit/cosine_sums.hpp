#pragma once

namespace torfit {

// C_s(x) = sum_{l>=1} cos(2 pi l x) / l^s for even s >= 2, x in [0,1].
//
// s = 2, 4, 6 use the classical closed forms (polynomials in x); larger even
// s is summed directly, where the series converges fast enough that the
// truncation error is below 1e-15.
double cosine_power_sum(int s, double x);

}  // namespace torfit
