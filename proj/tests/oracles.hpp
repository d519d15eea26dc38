// oracles.hpp — Independent reference computations for tests
//
// Nothing here calls into the code paths it is used to check: generators are
// expanded literally from their commutator form, eigenvalues come from Eigen's
// own solver, exponentials from Taylor series or spectral sums.

#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "qtf/matrix_core.hpp"

namespace qtf::oracle {

inline CMatrix outer(const CVector& a, const CVector& b) { return a * b.adjoint(); }

/// sum_{i,j} e^{-w_ij/2} ( V^* [A, V] + [V^*, A] V ),  V = |eta_i><eta_j|.
inline CMatrix literal_generator(const CMatrix& etas, const RMatrix& weights, const CMatrix& a)
{
    const Eigen::Index n = etas.cols();
    CMatrix out = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const CMatrix v = outer(etas.col(i), etas.col(j));
            const CMatrix vh = v.adjoint();
            out += std::exp(-weights(i, j) / 2.0) * (vh * (a * v - v * a) + (vh * a - a * vh) * v);
        }
    }
    return out;
}

/// sum_{i,j} e^{-w_ij/2} ( [V rho, V^*] + [V, rho V^*] ).
inline CMatrix literal_generator_dual(const CMatrix& etas, const RMatrix& weights, const CMatrix& rho)
{
    const Eigen::Index n = etas.cols();
    CMatrix out = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const CMatrix v = outer(etas.col(i), etas.col(j));
            const CMatrix vh = v.adjoint();
            const CMatrix vr = v * rho;
            const CMatrix rvh = rho * vh;
            out += std::exp(-weights(i, j) / 2.0) * ((vr * vh - vh * vr) + (v * rvh - rvh * v));
        }
    }
    return out;
}

inline RMatrix weights_from_lambdas(const RVector& lambdas)
{
    const Eigen::Index n = lambdas.size();
    RMatrix w(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) w(i, j) = lambdas(i) - lambdas(j);
    }
    return w;
}

/// 2 tr(A) I - 2n A.
inline CMatrix heat_closed_form(const CMatrix& a)
{
    const auto n = static_cast<double>(a.rows());
    return 2.0 * a.trace() * CMatrix::Identity(a.rows(), a.cols()) - 2.0 * n * a;
}

/// Solution of dA/dt = 2 tr(A) I - 2n A.
inline CMatrix heat_evolution_closed_form(const CMatrix& a, double t)
{
    const auto n = static_cast<double>(a.rows());
    const double decay = std::exp(-2.0 * n * t);
    return decay * a + (1.0 - decay) * (a.trace() / n) * CMatrix::Identity(a.rows(), a.cols());
}

inline RVector eigenvalues(const CMatrix& h)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    return solver.eigenvalues();
}

inline CMatrix spectral_exp(const CMatrix& h)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    const CMatrix& v = solver.eigenvectors();
    return v * solver.eigenvalues().array().exp().matrix().cast<Complex>().asDiagonal() * v.adjoint();
}

/// Taylor series with scaling and squaring; slow but independent of Pade.
inline CMatrix taylor_exp(const CMatrix& m)
{
    const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    while (std::ldexp(norm, -squarings) > 0.25) ++squarings;
    const CMatrix a = m / std::ldexp(1.0, squarings);
    CMatrix term = CMatrix::Identity(m.rows(), m.cols());
    CMatrix sum = term;
    for (int k = 1; k < 40; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

/// 2 (sum sqrt p)^2 - 2n.
inline double entropy_from_probabilities(const std::vector<double>& p)
{
    double s = 0.0;
    for (double x : p) s += std::sqrt(x);
    return 2.0 * s * s - 2.0 * static_cast<double>(p.size());
}

/// Root of sum 1/(k - a_i) = 1/2 above max a_i by long-double bisection.
inline double kappa_bisection(const std::vector<double>& a)
{
    long double top = a[0];
    for (double x : a) top = std::max<long double>(top, x);
    long double lo = top + 1e-12L;
    long double hi = top + 4.0L * static_cast<long double>(a.size()) + 1.0L;
    for (int it = 0; it < 400; ++it) {
        const long double mid = (lo + hi) / 2.0L;
        long double f = -0.5L;
        for (double x : a) f += 1.0L / (mid - x);
        (f > 0 ? lo : hi) = mid;
    }
    return static_cast<double>((lo + hi) / 2.0L);
}

} // namespace qtf::oracle
