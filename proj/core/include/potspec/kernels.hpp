#pragma once

namespace potspec::kernels {

/// Fundamental solution of -Laplace: (1/2pi) ln(1/r) for dim 2,
/// 1/(4 pi r) for dim 3. Throws SingularityError at r = 0.
double value(int dim, double r);

/// Integral of the kernel over the disc (dim 2) or ball (dim 3) of the given
/// measure centered at the singularity:
///   dim 2, rho = sqrt(measure/pi):        rho^2/2 ln(1/rho) + rho^2/4
///   dim 3, rho = (3 measure/(4 pi))^(1/3): rho^2/2
/// Used for the diagonal of the discretized operator.
double self_cell_integral(int dim, double cell_measure);

}  // namespace potspec::kernels
