#pragma once

#include <cmath>
#include <utility>

namespace benford {

struct Minimum {
    double x;
    double value;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than tol.
template <class Fn>
Minimum golden_section_minimize(Fn&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

} // namespace benford
