// density.cpp — DensityMatrix validation

#include "qtf/density.hpp"

#include <cmath>
#include <sstream>

#include "qtf/errors.hpp"

namespace qtf {

DensityMatrix::DensityMatrix(const CMatrix& m)
{
    require_square(m, "density");
    require_finite(m, "density");
    const double deviation = hermiticity_deviation(m);
    if (deviation > tol::kStructure) {
        std::ostringstream os;
        os << "density has relative Hermiticity deviation " << deviation;
        throw Error(ErrorKind::kNotHermitian, os.str());
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol::kTrace) {
        std::ostringstream os;
        os.precision(17);
        os << "density trace is " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag())
           << "i, expected 1";
        throw Error(ErrorKind::kInvalidDensity, os.str());
    }
    matrix_ = 0.5 * (m + m.adjoint());
    spectrum_ = herm_eig(matrix_);
    for (Eigen::Index k = 0; k < spectrum_.eigenvalues.size(); ++k) {
        double& lambda = spectrum_.eigenvalues(k);
        if (lambda < -tol::kClamp) {
            std::ostringstream os;
            os << "density has eigenvalue " << lambda << " < -" << tol::kClamp;
            throw Error(ErrorKind::kNotPsd, os.str());
        }
        if (lambda < 0.0) lambda = 0.0;
    }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index n)
{
    return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::from_spectrum(const RVector& probabilities, const CMatrix& basis)
{
    if (basis.rows() != basis.cols() || basis.cols() != probabilities.size()) {
        throw Error(ErrorKind::kDimensionMismatch, "basis and probability vector sizes differ");
    }
    return DensityMatrix(basis * probabilities.cast<Complex>().asDiagonal() * basis.adjoint());
}

bool DensityMatrix::is_faithful(double threshold) const
{
    return min_eigenvalue() > threshold;
}

CMatrix DensityMatrix::sqrt() const
{
    return spectrum_.apply([](double x) { return std::sqrt(x); });
}

} // namespace qtf
