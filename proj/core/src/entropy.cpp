// entropy.cpp — Laplacian-entropy from the spectrum and from the heat generator

#include "qtf/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace qtf {

double entropy(const DensityMatrix& rho)
{
    const double n = static_cast<double>(rho.dim());
    const double root_sum = rho.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    const double h = 2.0 * root_sum * root_sum - 2.0 * n;
    // Rounding can push the extremes a few ulps outside [2 - 2n, 0].
    return std::clamp(h, 2.0 - 2.0 * n, 0.0);
}

double entropy_via_generator(const DensityMatrix& rho)
{
    if (rho.dim() < 2) return 0.0;
    const CMatrix root = rho.sqrt();
    const DbcGenerator heat = DbcGenerator::heat(rho.dim());
    return (root * heat.apply_dual(root)).trace().real();
}

} // namespace qtf
