#include "folijet/core.hpp"

#include <algorithm>
#include <cmath>

namespace folijet {

bool close(Complex a, Complex b, const ToleranceConfig& tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol.abs + tol.rel * scale;
}

bool negligible(Complex a, double scale, const ToleranceConfig& tol) {
    return std::abs(a) <= tol.abs + tol.rel * scale;
}

Complex checked(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InputError(std::string("non-finite ") + what);
    return z;
}

}  // namespace folijet
