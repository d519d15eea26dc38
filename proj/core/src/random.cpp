// random.cpp — Random matrix ensembles

#include "qtf/random.hpp"

#include <cmath>

#include "qtf/errors.hpp"

namespace qtf::rnd {

CMatrix ginibre(Eigen::Index n, Engine& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

CMatrix hermitian(Eigen::Index n, Engine& rng)
{
    const CMatrix g = ginibre(n, rng);
    return 0.5 * (g + g.adjoint());
}

CMatrix unitary(Eigen::Index n, Engine& rng)
{
    const CMatrix g = ginibre(n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

DensityMatrix density(Eigen::Index n, Engine& rng)
{
    const CMatrix g = ginibre(n, rng);
    CMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix faithful_density(Eigen::Index n, Engine& rng, double floor)
{
    if (floor < 0.0 || floor * static_cast<double>(n) >= 1.0) {
        throw Error(ErrorKind::kInvalidDensity, "eigenvalue floor must lie in [0, 1/n)");
    }
    const DensityMatrix base = density(n, rng);
    const double mix = static_cast<double>(n) * floor;
    return DensityMatrix((1.0 - mix) * base.matrix() + floor * CMatrix::Identity(n, n));
}

RVector probability_vector(Eigen::Index n, Engine& rng)
{
    std::exponential_distribution<double> expo(1.0);
    RVector p(n);
    for (Eigen::Index k = 0; k < n; ++k) p(k) = expo(rng);
    return p / p.sum();
}

CMatrix positive_definite(Eigen::Index n, Engine& rng, double max_log_norm)
{
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const SpectralDecomposition spec = herm_eig(hermitian(n, rng));
    const double spectral_norm = spec.eigenvalues.cwiseAbs().maxCoeff();
    const double scale = spectral_norm > 0.0 ? max_log_norm * (1.0 - uniform(rng)) / spectral_norm : 0.0;
    return spec.apply([scale](double x) { return std::exp(scale * x); });
}

} // namespace qtf::rnd
