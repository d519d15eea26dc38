// density.hpp — Validated density matrices with cached spectral data

#pragma once

#include "qtf/matrix_core.hpp"

namespace qtf {

/// Hermitian, positive semidefinite, unit-trace matrix. Validation happens
/// on construction; eigenvalues within tol::kClamp below zero are clamped.
class DensityMatrix {
public:
    /// Throws NotHermitian, InvalidDensity (trace), NotPSD.
    explicit DensityMatrix(const CMatrix& m);

    /// The maximally mixed state I/n.
    static DensityMatrix maximally_mixed(Eigen::Index n);
    /// Sum_k p_k |b_k><b_k| for orthonormal columns b_k.
    static DensityMatrix from_spectrum(const RVector& probabilities, const CMatrix& basis);

    Eigen::Index dim() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }
    const SpectralDecomposition& spectrum() const { return spectrum_; }
    const RVector& eigenvalues() const { return spectrum_.eigenvalues; }

    bool is_faithful(double threshold = tol::kFaithful) const;
    double min_eigenvalue() const { return spectrum_.eigenvalues(0); }

    /// rho^{1/2} from the cached spectrum.
    CMatrix sqrt() const;

private:
    CMatrix matrix_;
    SpectralDecomposition spectrum_;
};

} // namespace qtf
