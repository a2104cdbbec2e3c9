#include "ollg/grid.hpp"

#include <cmath>
#include <string>

namespace ollg {

double GridSpec::wavenumber(int m) const {
    return 2.0 * M_PI / length * signed_mode(m);
}

double GridSpec::wavenumber_deriv(int m) const {
    if (m == n_side / 2) return 0.0;
    return wavenumber(m);
}

double GridSpec::k_max() const {
    const double k_axis = 2.0 * M_PI / length * (n_side / 2);
    return std::sqrt(2.0) * k_axis;
}

GridSpec GridSpec::make(int n_side, double length) {
    if (n_side < 8 || n_side % 2 != 0)
        throw std::invalid_argument("GridSpec: n_side must be even and >= 8, got " +
                                    std::to_string(n_side));
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("GridSpec: length must be positive and finite");
    return GridSpec{n_side, length};
}

} // namespace ollg
