// lindblad.cpp — Detailed-balance generators in the sigma eigenframe
//
// In the frame of sigma's eigenvectors (X~ = E^H X E) the generator is
//
//   L(X~)_jj = 2 sum_i c_ij (X~_ii - X~_jj)        (diagonal block)
//   L(X~)_pq = -(C_p + C_q) X~_pq                   (p != q)
//
// with c_ij = e^{-w_ij/2} and C_j = sum_i c_ij. The dual swaps c_ij -> c_ji on
// the diagonal block. Both follow from expanding the commutators with
// V_ij = |eta_i><eta_j|.

#include "qtf/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "qtf/errors.hpp"
#include "qtf/random.hpp"

namespace qtf {

CMatrix Superoperator::apply(const CMatrix& x) const
{
    if (x.rows() != n || x.cols() != n) {
        throw Error(ErrorKind::kDimensionMismatch, "superoperator applied to a matrix of the wrong size");
    }
    return devectorize(mat * vectorize(x));
}

namespace {

bool has_repeated(const RVector& sorted_values)
{
    const double gap_tol = 1e-10 * std::max(1.0, sorted_values.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 1; k < sorted_values.size(); ++k) {
        if (std::abs(sorted_values(k) - sorted_values(k - 1)) <= gap_tol) return true;
    }
    return false;
}

Eigen::Index dominant_component(const CVector& v)
{
    const double peak = v.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) >= peak - 1e-9) return k;
    }
    return 0;
}

} // namespace

DbcGenerator::DbcGenerator(DensityMatrix sigma, RVector lambdas, CMatrix etas, bool degenerate)
    : sigma_(std::move(sigma)),
      lambdas_(std::move(lambdas)),
      etas_(std::move(etas)),
      degenerate_(degenerate)
{
    const Eigen::Index n = lambdas_.size();
    rates_.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            rates_(i, j) = std::exp(-(lambdas_(i) - lambdas_(j)) / 2.0);
        }
    }
    column_rate_sums_ = rates_.colwise().sum().transpose();
}

DbcGenerator DbcGenerator::heat(Eigen::Index n)
{
    if (n < 2) throw Error(ErrorKind::kDimensionMismatch, "heat generator needs n >= 2");
    RVector lambdas = RVector::Constant(n, std::log(static_cast<double>(n)));
    return DbcGenerator(DensityMatrix::maximally_mixed(n), std::move(lambdas), CMatrix::Identity(n, n),
                        true);
}

DbcGenerator DbcGenerator::from_sigma(const DensityMatrix& sigma)
{
    if (!sigma.is_faithful()) {
        std::ostringstream os;
        os << "sigma has eigenvalue " << sigma.min_eigenvalue() << " <= " << tol::kFaithful;
        throw Error(ErrorKind::kNotFaithful, os.str());
    }
    const SpectralDecomposition& spec = sigma.spectrum();
    const Eigen::Index n = spec.dim();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::vector<Eigen::Index> anchor(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        anchor[static_cast<std::size_t>(k)] = dominant_component(spec.eigenvectors.col(k));
    }
    // Eigenvalues already ascend, so a stable sort on the anchor keeps that
    // order among ties.
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return anchor[static_cast<std::size_t>(x)] < anchor[static_cast<std::size_t>(y)];
    });

    RVector lambdas(n);
    CMatrix etas(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        lambdas(k) = -std::log(spec.eigenvalues(src));
        etas.col(k) = spec.eigenvectors.col(src);
    }
    return DbcGenerator(sigma, std::move(lambdas), std::move(etas), spec.degenerate);
}

DbcGenerator DbcGenerator::from_spectral(const RVector& lambdas, const CMatrix& etas)
{
    const Eigen::Index n = lambdas.size();
    if (n == 0 || etas.rows() != n || etas.cols() != n) {
        throw Error(ErrorKind::kDimensionMismatch, "lambdas and etas sizes differ");
    }
    if (!lambdas.allFinite() || !etas.allFinite()) {
        throw Error(ErrorKind::kParse, "generator data contains NaN or Inf");
    }
    const double orth = (etas.adjoint() * etas - CMatrix::Identity(n, n)).norm();
    if (orth > tol::kStructure) {
        std::ostringstream os;
        os << "etas are not orthonormal (deviation " << orth << ")";
        throw Error(ErrorKind::kInvalidDensity, os.str());
    }
    const RVector weights = (-lambdas.array()).exp().matrix();
    if (std::abs(weights.sum() - 1.0) > tol::kTrace) {
        std::ostringstream os;
        os.precision(17);
        os << "sum_j exp(-lambda_j) = " << weights.sum() << ", expected 1";
        throw Error(ErrorKind::kInvalidDensity, os.str());
    }
    if (weights.minCoeff() <= tol::kFaithful) {
        throw Error(ErrorKind::kNotFaithful, "exp(-lambda_j) must exceed 1e-12");
    }
    DensityMatrix sigma = DensityMatrix::from_spectrum(weights, etas);
    RVector sorted = lambdas;
    std::sort(sorted.begin(), sorted.end());
    return DbcGenerator(std::move(sigma), lambdas, etas, has_repeated(sorted));
}

RMatrix DbcGenerator::weights() const
{
    const Eigen::Index n = dim();
    RMatrix w(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) w(i, j) = lambdas_(i) - lambdas_(j);
    }
    return w;
}

CMatrix DbcGenerator::jump(Eigen::Index i, Eigen::Index j) const
{
    return etas_.col(i) * etas_.col(j).adjoint();
}

CMatrix DbcGenerator::to_eigenframe(const CMatrix& a) const
{
    return etas_.adjoint() * a * etas_;
}

CMatrix DbcGenerator::from_eigenframe(const CMatrix& a) const
{
    return etas_ * a * etas_.adjoint();
}

CMatrix DbcGenerator::apply(const CMatrix& a) const
{
    require_same_dim(a, sigma_.matrix(), "generator applied to a matrix of the wrong size");
    const Eigen::Index n = dim();
    const CMatrix x = to_eigenframe(a);
    CMatrix out(n, n);
    for (Eigen::Index q = 0; q < n; ++q) {
        for (Eigen::Index p = 0; p < n; ++p) {
            out(p, q) = -(column_rate_sums_(p) + column_rate_sums_(q)) * x(p, q);
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex gain = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) gain += rates_(i, j) * x(i, i);
        out(j, j) += 2.0 * gain;
    }
    return from_eigenframe(out);
}

CMatrix DbcGenerator::apply_dual(const CMatrix& rho) const
{
    require_same_dim(rho, sigma_.matrix(), "dual generator applied to a matrix of the wrong size");
    const Eigen::Index n = dim();
    const CMatrix x = to_eigenframe(rho);
    CMatrix out(n, n);
    for (Eigen::Index q = 0; q < n; ++q) {
        for (Eigen::Index p = 0; p < n; ++p) {
            out(p, q) = -(column_rate_sums_(p) + column_rate_sums_(q)) * x(p, q);
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex gain = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) gain += rates_(i, j) * x(j, j);
        out(i, i) += 2.0 * gain;
    }
    return from_eigenframe(out);
}

CMatrix DbcGenerator::apply(const CMatrix& x, Picture picture) const
{
    return picture == Picture::kHeisenberg ? apply(x) : apply_dual(x);
}

CMatrix DbcGenerator::modular_delta(const CMatrix& a) const
{
    require_same_dim(a, sigma_.matrix(), "modular operator applied to a matrix of the wrong size");
    CMatrix x = to_eigenframe(a);
    for (Eigen::Index q = 0; q < x.cols(); ++q) {
        for (Eigen::Index p = 0; p < x.rows(); ++p) x(p, q) *= std::exp(lambdas_(q) - lambdas_(p));
    }
    return from_eigenframe(x);
}

CMatrix DbcGenerator::modular_delta_inverse(const CMatrix& a) const
{
    require_same_dim(a, sigma_.matrix(), "modular operator applied to a matrix of the wrong size");
    CMatrix x = to_eigenframe(a);
    for (Eigen::Index q = 0; q < x.cols(); ++q) {
        for (Eigen::Index p = 0; p < x.rows(); ++p) x(p, q) *= std::exp(lambdas_(p) - lambdas_(q));
    }
    return from_eigenframe(x);
}

CMatrix DbcGenerator::modular_automorphism(double t, const CMatrix& a) const
{
    require_same_dim(a, sigma_.matrix(), "modular automorphism applied to a matrix of the wrong size");
    CMatrix x = to_eigenframe(a);
    for (Eigen::Index q = 0; q < x.cols(); ++q) {
        for (Eigen::Index p = 0; p < x.rows(); ++p) {
            x(p, q) *= std::polar(1.0, t * (lambdas_(p) - lambdas_(q)));
        }
    }
    return from_eigenframe(x);
}

Superoperator DbcGenerator::to_superoperator(Picture picture) const
{
    const Eigen::Index n = dim();
    Superoperator s{n, CMatrix(n * n, n * n)};
    CMatrix unit = CMatrix::Zero(n, n);
    for (Eigen::Index q = 0; q < n; ++q) {
        for (Eigen::Index p = 0; p < n; ++p) {
            unit(p, q) = 1.0;
            s.mat.col(p + q * n) = vectorize(apply(unit, picture));
            unit(p, q) = 0.0;
        }
    }
    return s;
}

CMatrix DbcGenerator::evolve(double t, const CMatrix& x, Picture picture) const
{
    if (!(t >= 0.0)) {
        std::ostringstream os;
        os << "evolution time " << t << " is negative";
        throw Error(ErrorKind::kNegativeTime, os.str());
    }
    require_same_dim(x, sigma_.matrix(), "evolved matrix has the wrong size");
    if (t == 0.0) return x;
    const Superoperator s = to_superoperator(picture);
    const CMatrix propagator = expm(CMatrix(t * s.mat));
    return devectorize(propagator * vectorize(x));
}

DensityMatrix DbcGenerator::evolve(double t, const DensityMatrix& rho) const
{
    return DensityMatrix(evolve(t, rho.matrix(), Picture::kSchrodinger));
}

// ---------------------------------------------------------------------------
// Detailed-balance diagnostics

DbcReport check_dbc(const DensityMatrix& sigma, const LinearMap& map, int samples, std::uint64_t seed,
                    double tolerance)
{
    const Eigen::Index n = sigma.dim();
    const CMatrix& s = sigma.matrix();
    const CMatrix s_inv = sigma.spectrum().apply([](double x) { return 1.0 / x; });
    auto inner = [&s](const CMatrix& a, const CMatrix& b) { return (s * a.adjoint() * b).trace(); };

    DbcReport report;
    report.samples = samples;
    report.tolerance = tolerance;

    rnd::Engine rng = rnd::make_engine(seed);
    for (int k = 0; k < samples; ++k) {
        const CMatrix a = rnd::hermitian(n, rng);
        const CMatrix b = rnd::hermitian(n, rng);
        const double sym = std::abs(inner(map(a), b) - inner(a, map(b)));
        report.symmetry_deviation = std::max(report.symmetry_deviation, sym);

        const CMatrix g = rnd::ginibre(n, rng);
        const CMatrix lhs = map(s * g * s_inv);
        const CMatrix rhs = s * map(g) * s_inv;
        report.modular_commutation_deviation =
            std::max(report.modular_commutation_deviation, (lhs - rhs).norm());
    }

    CMatrix dual_sigma(n, n);
    CMatrix unit = CMatrix::Zero(n, n);
    for (Eigen::Index q = 0; q < n; ++q) {
        for (Eigen::Index p = 0; p < n; ++p) {
            unit(p, q) = 1.0;
            dual_sigma(p, q) = (map(unit).adjoint() * s).trace();
            unit(p, q) = 0.0;
        }
    }
    report.stationarity_deviation = dual_sigma.norm();
    report.unit_deviation = map(CMatrix::Identity(n, n)).norm();

    report.passed = report.symmetry_deviation < tolerance &&
                    report.modular_commutation_deviation < tolerance &&
                    report.stationarity_deviation < tolerance && report.unit_deviation < tolerance;
    return report;
}

DbcReport check_dbc(const DbcGenerator& g, int samples, std::uint64_t seed, double tolerance)
{
    return check_dbc(
        g.sigma(), [&g](const CMatrix& x) { return g.apply(x); }, samples, seed, tolerance);
}

} // namespace qtf
