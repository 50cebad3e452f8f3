#pragma once

#include <functional>

namespace curs::detail {

// Mode of a concave function on (0, infinity), found by a geometric bracket
// scan followed by golden-section refinement to an absolute tolerance of
// 1e-11 * max(1, mode). Throws NotIntegrable when the function is still
// nondecreasing past r = 1e6.
double locate_mode(const std::function<double(double)>& ell);

// Smallest r > mode with ell(r) <= peak - drop, found by doubling then
// bisection. Assumes ell decreases beyond the mode.
double find_drop_right(const std::function<double(double)>& ell, double mode, double peak, double drop);

}  // namespace curs::detail
