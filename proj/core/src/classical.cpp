// classical.cpp — Q-matrix reduction and Chapman-Kolmogorov evolution

#include "qtf/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qtf/errors.hpp"

namespace qtf {

void require_probability(const RVector& p)
{
    if (p.size() == 0 || !p.allFinite()) {
        throw Error(ErrorKind::kInvalidProbability, "probability vector is empty or not finite");
    }
    if (p.minCoeff() < -1e-12) {
        std::ostringstream os;
        os << "probability vector has negative entry " << p.minCoeff();
        throw Error(ErrorKind::kInvalidProbability, os.str());
    }
    if (std::abs(p.sum() - 1.0) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "probability vector sums to " << p.sum();
        throw Error(ErrorKind::kInvalidProbability, os.str());
    }
}

ClassicalChain reduce(const DbcGenerator& g)
{
    const Eigen::Index n = g.dim();
    const RMatrix& rates = g.rates(); // rates(i, j) = e^{-w_ij/2}
    ClassicalChain chain;
    chain.q.resize(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {
        const double outflow = rates.col(l).sum();
        for (Eigen::Index k = 0; k < n; ++k) {
            chain.q(l, k) = 2.0 * rates(k, l) - (l == k ? 2.0 * outflow : 0.0);
        }
    }
    chain.invariant = (-g.lambdas().array()).exp().matrix();
    return chain;
}

ChainDiagnostics diagnose(const ClassicalChain& chain)
{
    const Eigen::Index n = chain.dim();
    ChainDiagnostics d;
    d.max_row_sum = chain.q.rowwise().sum().cwiseAbs().maxCoeff();
    d.stationarity = (chain.invariant.transpose() * chain.q).cwiseAbs().maxCoeff();
    d.min_off_diagonal = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            if (i == k) continue;
            d.min_off_diagonal = std::min(d.min_off_diagonal, chain.q(i, k));
            d.detailed_balance =
                std::max(d.detailed_balance,
                         std::abs(chain.invariant(i) * chain.q(i, k) - chain.invariant(k) * chain.q(k, i)));
        }
    }
    return d;
}

RVector evolve_classical(const ClassicalChain& chain, double t, const RVector& p0)
{
    if (!(t >= 0.0)) {
        std::ostringstream os;
        os << "evolution time " << t << " is negative";
        throw Error(ErrorKind::kNegativeTime, os.str());
    }
    if (p0.size() != chain.dim()) {
        throw Error(ErrorKind::kDimensionMismatch, "initial vector and chain sizes differ");
    }
    require_probability(p0);
    if (t == 0.0) return p0;
    const RMatrix propagator = expm(RMatrix(t * chain.q.transpose()));
    return propagator * p0;
}

DensityMatrix embed_diagonal(const DbcGenerator& g, const RVector& p)
{
    if (p.size() != g.dim()) {
        throw Error(ErrorKind::kDimensionMismatch, "probability vector and generator sizes differ");
    }
    require_probability(p);
    return DensityMatrix::from_spectrum(p.cwiseMax(0.0), g.etas());
}

RVector project_diagonal(const DbcGenerator& g, const CMatrix& rho)
{
    require_same_dim(rho, g.sigma().matrix(), "density and generator sizes differ");
    const CMatrix frame = g.etas().adjoint() * rho * g.etas();
    return frame.diagonal().real();
}

} // namespace qtf
