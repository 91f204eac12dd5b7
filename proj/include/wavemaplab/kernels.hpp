#pragma once

#include <cmath>

// Scalar kernels with removable singularities at 0, evaluated by short Taylor
// series for small arguments so no catastrophic cancellation occurs. The
// series are truncated below machine epsilon at the switch point |x| = 0.1.

namespace wml {

// sin(x)/x
template <typename S>
S sinc(S x) {
    using std::sin;
    if (x > S(0.1) || x < S(-0.1)) return sin(x) / x;
    const S u = x * x;
    return S(1) + u * (S(-1) / S(6) + u * (S(1) / S(120) + u * (S(-1) / S(5040) +
           u * (S(1) / S(362880) + u * (S(-1) / S(39916800) + u * (S(1) / S(6227020800LL)))))));
}

// (sin(x) - x)/x^3
template <typename S>
S sin_minus_id_over_cube(S x) {
    using std::sin;
    if (x > S(0.1) || x < S(-0.1)) return (sin(x) - x) / (x * x * x);
    const S u = x * x;
    return S(-1) / S(6) + u * (S(1) / S(120) + u * (S(-1) / S(5040) + u * (S(1) / S(362880) +
           u * (S(-1) / S(39916800) + u * (S(1) / S(6227020800LL) +
           u * (S(-1) / S(1307674368000LL)))))));
}

// (cos(x) - 1)/x^2, written as -sinc(x/2)^2/2 so it is exact for all x.
template <typename S>
S cos_minus_one_over_square(S x) {
    const S h = sinc(x / S(2));
    return -h * h / S(2);
}

// arctan(x)/x
template <typename S>
S arctan_over_id(S x) {
    using std::atan;
    if (x > S(0.1) || x < S(-0.1)) return atan(x) / x;
    const S u = x * x;
    return S(1) + u * (S(-1) / S(3) + u * (S(1) / S(5) + u * (S(-1) / S(7) +
           u * (S(1) / S(9) + u * (S(-1) / S(11) + u * (S(1) / S(13)))))));
}

}  // namespace wml
