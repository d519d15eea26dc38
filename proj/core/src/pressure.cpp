// pressure.cpp — Pressure functional, the kappa equation, equilibrium densities
// and the transfer operator

#include "qtf/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qtf/errors.hpp"

namespace qtf {

namespace {

void require_hermitian(const CMatrix& a, const char* what)
{
    require_square(a, what);
    require_finite(a, what);
    const double deviation = hermiticity_deviation(a);
    if (deviation > tol::kStructure) {
        std::ostringstream os;
        os << what << " has relative Hermiticity deviation " << deviation;
        throw Error(ErrorKind::kNotHermitian, os.str());
    }
}

} // namespace

double pressure_functional(const CMatrix& a, const DensityMatrix& rho)
{
    require_hermitian(a, "Hamiltonian");
    require_same_dim(a, rho.matrix(), "Hamiltonian and density sizes differ");
    return entropy(rho) + (a * rho.matrix()).trace().real();
}

double solve_kappa(std::span<const double> diag_a)
{
    if (diag_a.empty()) throw Error(ErrorKind::kDimensionMismatch, "kappa needs at least one a_i");
    for (double a : diag_a) {
        if (!std::isfinite(a)) throw Error(ErrorKind::kParse, "a_i must be finite");
    }
    const double top = *std::max_element(diag_a.begin(), diag_a.end());
    const double n = static_cast<double>(diag_a.size());

    // Work with x = kappa - max a_i so that gaps d_i = max a_i - a_i >= 0 are exact.
    std::vector<double> gaps;
    gaps.reserve(diag_a.size());
    double scale = 1.0;
    for (double a : diag_a) {
        gaps.push_back(top - a);
        scale = std::max(scale, std::abs(a));
    }
    auto f = [&gaps](double x) {
        double s = 0.0;
        for (double d : gaps) s += 1.0 / (x + d);
        return s - 0.5;
    };
    auto df = [&gaps](double x) {
        double s = 0.0;
        for (double d : gaps) s -= 1.0 / ((x + d) * (x + d));
        return s;
    };

    // f decreases from +inf at x = 0 to f(2n) <= n / 2n - 1/2 = 0.
    double lo = 1e-9 * scale;
    double hi = 2.0 * n;
    if (f(hi) == 0.0) return top + hi;
    while (hi - lo > 1e-13 * std::max(1.0, std::abs(top + hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 2; ++k) {
        const double step = f(x) / df(x);
        const double next = x - step;
        if (next > 0.0 && std::isfinite(next)) x = next;
    }
    return top + x;
}

double solve_kappa(const RVector& diag_a)
{
    return solve_kappa(std::span<const double>(diag_a.data(), static_cast<std::size_t>(diag_a.size())));
}

CMatrix transfer_apply(const CMatrix& a, const CMatrix& xi)
{
    require_square(a, "Hamiltonian");
    require_same_dim(a, xi, "transfer operator argument has the wrong size");
    const Eigen::Index n = a.rows();
    return 2.0 * xi.trace() * CMatrix::Identity(n, n) + 0.5 * (a * xi + xi * a);
}

EquilibriumResult equilibrium(const CMatrix& a)
{
    require_hermitian(a, "Hamiltonian");
    const CMatrix herm = 0.5 * (a + a.adjoint());
    const Eigen::Index n = herm.rows();
    const SpectralDecomposition spec = herm_eig(herm);
    const RVector& levels = spec.eigenvalues;
    const double kappa = solve_kappa(levels);

    RVector inv_gap(n);
    for (Eigen::Index i = 0; i < n; ++i) inv_gap(i) = 1.0 / (kappa - levels(i));
    const double c = 1.0 / inv_gap.norm();
    const RVector diag_xi = c * inv_gap;
    const RVector diag_rho = diag_xi.cwiseProduct(diag_xi);

    const CMatrix& v = spec.eigenvectors;
    const CMatrix xi = v * diag_xi.cast<Complex>().asDiagonal() * v.adjoint();
    const CMatrix rho_matrix = v * diag_rho.cast<Complex>().asDiagonal() * v.adjoint();

    EquilibriumResult r{
        .hamiltonian = herm,
        .hamiltonian_eigenvalues = levels,
        .unitary = v.adjoint(),
        .kappa = kappa,
        .c = c,
        .diagonal_xi = diag_xi,
        .diagonal_density = diag_rho,
        .xi = xi,
        .rho = DensityMatrix(rho_matrix),
    };
    const double dim = static_cast<double>(n);
    r.pressure = kappa - 2.0 * dim;
    r.pressure_variational = pressure_functional(herm, r.rho);

    const CMatrix rotated = r.unitary * herm * r.unitary.adjoint();
    const CMatrix xi_diag = diag_xi.cast<Complex>().asDiagonal();
    r.lagrange_residual = (2.0 * kappa * xi_diag - 4.0 * xi_diag.trace() * CMatrix::Identity(n, n) -
                           rotated * xi_diag - xi_diag * rotated)
                              .norm();
    r.eigen_residual = (transfer_apply(herm, xi) - kappa * xi).norm();
    r.trace_identity_residual =
        std::abs((herm * xi).trace() - (kappa - 2.0 * dim) * xi.trace());

    const double discrepancy = std::abs(r.pressure - r.pressure_variational);
    if (discrepancy > 1e-8 * std::max(1.0, std::abs(kappa))) {
        std::ostringstream os;
        os.precision(17);
        os << "pressure kappa - 2n = " << r.pressure << " but h(rho) + tr(A rho) = "
           << r.pressure_variational;
        throw Error(ErrorKind::kVerification, os.str());
    }
    return r;
}

DbcGenerator equilibrium_generator(const CMatrix& a)
{
    return DbcGenerator::from_sigma(equilibrium(a).rho);
}

} // namespace qtf
