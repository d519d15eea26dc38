// matrix_core.hpp — Dense complex linear algebra used throughout qtf
//
// Matrices are Eigen dynamic complex matrices. Vectorization is column
// stacking: vec(X)[i + j*n] = X(i, j), so vec(A X B) = (B^T kron A) vec(X).

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qtf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

namespace tol {
// Relative Frobenius tolerance for Hermiticity / PSD structure checks.
inline constexpr double kStructure = 1e-10;
// Absolute tolerance on trace normalization of densities.
inline constexpr double kTrace = 1e-12;
// Eigenvalues of a density in [-kClamp, 0) are clamped to zero.
inline constexpr double kClamp = 1e-12;
// Smallest eigenvalue of a faithful density.
inline constexpr double kFaithful = 1e-12;
} // namespace tol

struct JacobiOptions {
    double sweep_threshold = 1e-14; // off-diagonal norm relative to ||m||_F
    int max_sweeps = 100;
};

/// Eigenpairs of a Hermitian matrix. Eigenvalues ascend; eigenvectors are the
/// columns of `eigenvectors` and are orthonormal. Columns sharing an
/// eigenvalue are canonicalized: first non-negligible component real
/// positive, then ordered by descending lexicographic comparison.
struct SpectralDecomposition {
    RVector eigenvalues;
    CMatrix eigenvectors;
    bool degenerate = false;
    int sweeps = 0;

    Eigen::Index dim() const { return eigenvalues.size(); }

    /// Sum_j f(lambda_j) |v_j><v_j|.
    CMatrix apply(const std::function<double(double)>& f) const;
    CMatrix reconstruct() const;
};

/// ||m - m^H||_F / ||m||_F (zero for the zero matrix).
double hermiticity_deviation(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tolerance = tol::kStructure);

/// Cyclic complex Jacobi. Throws NotHermitian (with the deviation) when the
/// input is not Hermitian within `tol::kStructure`, NotConverged after
/// `max_sweeps`.
SpectralDecomposition herm_eig(const CMatrix& m, const JacobiOptions& options = {});

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-10 * scale, 0) are treated as zero; anything more negative throws NotPSD.
CMatrix sqrt_psd(const CMatrix& m);

/// Scaling and squaring with a degree-13 Pade approximant.
CMatrix expm(const CMatrix& m);
RMatrix expm(const RMatrix& m);

CVector vectorize(const CMatrix& m);
CMatrix devectorize(const CVector& v);

CMatrix identity(Eigen::Index n);
Complex trace(const CMatrix& m);
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Frobenius norm of a - b divided by max(1, ||b||_F).
double relative_difference(const CMatrix& a, const CMatrix& b);

void require_square(const CMatrix& m, const char* what);
void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what);
void require_finite(const CMatrix& m, const char* what);

} // namespace qtf
