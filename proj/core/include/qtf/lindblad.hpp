// lindblad.hpp — Detailed-balance Lindblad generators and their semigroups
//
// For a faithful density sigma with eigenpairs sigma eta_j = e^{-lambda_j} eta_j
// the generator acts on observables as
//
//   L(A) = sum_{i,j} e^{-w_ij/2} ( V_ij^* [A, V_ij] + [V_ij^*, A] V_ij ),
//   V_ij = |eta_i><eta_j|,  w_ij = lambda_i - lambda_j,
//
// and its dual (with respect to tr(A^* B)) acts on densities as
//
//   L^dag(rho) = sum_{i,j} e^{-w_ij/2} ( [V_ij rho, V_ij^*] + [V_ij, rho V_ij^*] ).
//
// The generator is stored spectrally; dense superoperators are built on demand.

#pragma once

#include <cstdint>
#include <functional>

#include "qtf/density.hpp"
#include "qtf/matrix_core.hpp"

namespace qtf {

enum class Picture {
    kHeisenberg,  // e^{tL} acting on observables
    kSchrodinger, // e^{tL^dag} acting on densities
};

/// n^2 x n^2 matrix of a linear map on n x n matrices, in the column-stacking
/// convention of vectorize().
struct Superoperator {
    Eigen::Index n = 0;
    CMatrix mat;

    CMatrix apply(const CMatrix& x) const;
};

class DbcGenerator {
public:
    /// Heat-semigroup generator L0: sigma = I/n, every w_ij = 0, V_ij the
    /// matrix units. Acts as A -> 2 tr(A) I - 2n A.
    static DbcGenerator heat(Eigen::Index n);

    /// Generator satisfying the sigma-detailed balance condition. Throws
    /// NotFaithful when an eigenvalue of sigma is <= tol::kFaithful.
    ///
    /// The eigenbasis is ordered to align with the standard basis: eigenpairs
    /// are sorted by the index of their largest-magnitude component, ties
    /// broken by ascending sigma-eigenvalue. A diagonal sigma therefore keeps
    /// its own ordering, eta_j = e_j.
    static DbcGenerator from_sigma(const DensityMatrix& sigma);

    /// Rebuild from stored spectral data (lambda_j, eta_j). Throws
    /// InvalidDensity when sum_j e^{-lambda_j} != 1 or the etas are not
    /// orthonormal.
    static DbcGenerator from_spectral(const RVector& lambdas, const CMatrix& etas);

    Eigen::Index dim() const { return lambdas_.size(); }
    const DensityMatrix& sigma() const { return sigma_; }
    /// lambda_j = -log(eigenvalue_j of sigma).
    const RVector& lambdas() const { return lambdas_; }
    /// Columns are the eigenvectors eta_j.
    const CMatrix& etas() const { return etas_; }
    /// w_ij = lambda_i - lambda_j.
    RMatrix weights() const;
    /// e^{-w_ij/2}.
    const RMatrix& rates() const { return rates_; }
    /// True when sigma has a repeated eigenvalue.
    bool degenerate() const { return degenerate_; }

    /// V_ij = |eta_i><eta_j|.
    CMatrix jump(Eigen::Index i, Eigen::Index j) const;

    CMatrix apply(const CMatrix& a) const;
    CMatrix apply_dual(const CMatrix& rho) const;
    CMatrix apply(const CMatrix& x, Picture picture) const;

    /// sigma a sigma^{-1}.
    CMatrix modular_delta(const CMatrix& a) const;
    /// sigma^{-1} a sigma.
    CMatrix modular_delta_inverse(const CMatrix& a) const;
    /// e^{ith} a e^{-ith} with h = -log sigma.
    CMatrix modular_automorphism(double t, const CMatrix& a) const;

    Superoperator to_superoperator(Picture picture = Picture::kHeisenberg) const;

    /// devectorize(expm(t S) vectorize(x)). Throws NegativeTime.
    CMatrix evolve(double t, const CMatrix& x, Picture picture = Picture::kHeisenberg) const;
    /// Schrodinger evolution of a density; the result is re-validated as a
    /// density, so trace or positivity loss throws.
    DensityMatrix evolve(double t, const DensityMatrix& rho) const;

private:
    DbcGenerator(DensityMatrix sigma, RVector lambdas, CMatrix etas, bool degenerate);

    CMatrix to_eigenframe(const CMatrix& a) const;
    CMatrix from_eigenframe(const CMatrix& a) const;

    DensityMatrix sigma_;
    RVector lambdas_;
    CMatrix etas_;
    RMatrix rates_;
    RVector column_rate_sums_; // sum_i e^{-w_ij/2}
    bool degenerate_ = false;
};

/// Linear map on n x n matrices, used by the detailed-balance checker so it
/// can also examine maps that were not built by DbcGenerator.
using LinearMap = std::function<CMatrix(const CMatrix&)>;

struct DbcReport {
    int samples = 0;
    /// max |<L(A),B>_sigma - <A,L(B)>_sigma| over random Hermitian pairs,
    /// <A,B>_sigma = tr(sigma A^H B).
    double symmetry_deviation = 0.0;
    /// max ||(L o Delta - Delta o L)(A)||_F over random complex A.
    double modular_commutation_deviation = 0.0;
    /// ||L^dag(sigma)||_F for the map's GNS dual.
    double stationarity_deviation = 0.0;
    /// ||L(I)||_F.
    double unit_deviation = 0.0;
    double tolerance = 1e-9;
    bool passed = false;
};

/// Empirical detailed-balance diagnostics for `map` against `sigma`.
DbcReport check_dbc(const DensityMatrix& sigma, const LinearMap& map, int samples,
                    std::uint64_t seed = 0, double tolerance = 1e-9);
DbcReport check_dbc(const DbcGenerator& g, int samples, std::uint64_t seed = 0,
                    double tolerance = 1e-9);

} // namespace qtf
