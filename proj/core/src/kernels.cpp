#include "potspec/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "potspec/error.hpp"

namespace potspec::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(int dim) {
    if (dim != 2 && dim != 3) {
        std::ostringstream msg;
        msg << "kernels are implemented for dimension 2 and 3, got " << dim;
        throw DimensionMismatch(msg.str());
    }
}

}  // namespace

double value(int dim, double r) {
    require_dim(dim);
    if (r == 0.0) throw SingularityError("kernel evaluated at r = 0; use self_cell_integral");
    if (!(r > 0.0)) throw ContractError("kernel distance must be positive");
    if (dim == 2) return -std::log(r) / (2.0 * kPi);
    return 1.0 / (4.0 * kPi * r);
}

double self_cell_integral(int dim, double cell_measure) {
    require_dim(dim);
    if (!(cell_measure > 0.0)) throw ContractError("cell measure must be positive");
    if (dim == 2) {
        const double rho = std::sqrt(cell_measure / kPi);
        return rho * rho * (0.25 - 0.5 * std::log(rho));
    }
    const double rho = std::cbrt(3.0 * cell_measure / (4.0 * kPi));
    return 0.5 * rho * rho;
}

}  // namespace potspec::kernels
