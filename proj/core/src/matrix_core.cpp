// matrix_core.cpp — Hermitian Jacobi eigensolver, PSD square root, Pade matrix exponential

#include "qtf/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "qtf/errors.hpp"

namespace qtf {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kNotPsd: return "NotPSD";
    case ErrorKind::kNotFaithful: return "NotFaithful";
    case ErrorKind::kNotPositive: return "NotPositive";
    case ErrorKind::kInvalidDensity: return "InvalidDensity";
    case ErrorKind::kInvalidProbability: return "InvalidProbability";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNegativeTime: return "NegativeTime";
    case ErrorKind::kNotConverged: return "NotConverged";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kVerification: return "VerificationFailure";
    }
    return "Unknown";
}

void require_square(const CMatrix& m, const char* what)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << " must be a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::kDimensionMismatch, os.str());
    }
}

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << what << ": " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
        throw Error(ErrorKind::kDimensionMismatch, os.str());
    }
}

void require_finite(const CMatrix& m, const char* what)
{
    if (!m.allFinite()) {
        throw Error(ErrorKind::kParse, std::string(what) + " contains NaN or Inf");
    }
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

Complex trace(const CMatrix& m) { return m.trace(); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double relative_difference(const CMatrix& a, const CMatrix& b)
{
    return (a - b).norm() / std::max(1.0, b.norm());
}

double hermiticity_deviation(const CMatrix& m)
{
    const double scale = m.norm();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).norm() / scale;
}

bool is_hermitian(const CMatrix& m, double tolerance)
{
    return m.rows() == m.cols() && hermiticity_deviation(m) <= tolerance;
}

// ---------------------------------------------------------------------------
// Jacobi

namespace {

double off_diagonal_norm(const CMatrix& a)
{
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

// Annihilate a(p,q) with the unitary G = D R, D = diag(1, e^{-i phi}) on (p,q)
// making the pivot real, R the classical real Jacobi rotation.
void rotate(CMatrix& a, CMatrix& v, Eigen::Index p, Eigen::Index q)
{
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex phase_conj = std::conj(apq) / mag;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex gpp = c;
    const Complex gpq = s;
    const Complex gqp = -s * phase_conj;
    const Complex gqq = c * phase_conj;

    // a <- a G
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
    }
    // a <- G^H a
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (Eigen::Index k = 0; k < v.rows(); ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * gpp + vkq * gqp;
        v(k, q) = vkp * gpq + vkq * gqq;
    }
}

constexpr double kCanonicalTol = 1e-10;

void fix_phase(CMatrix& v, Eigen::Index col)
{
    for (Eigen::Index k = 0; k < v.rows(); ++k) {
        const double mag = std::abs(v(k, col));
        if (mag > kCanonicalTol) {
            v.col(col) *= std::conj(v(k, col)) / mag;
            v(k, col) = mag;
            return;
        }
    }
}

// Descending lexicographic order on (re, im) of each component.
bool lex_greater(const CVector& x, const CVector& y)
{
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double dr = x(k).real() - y(k).real();
        if (std::abs(dr) > kCanonicalTol) return dr > 0.0;
        const double di = x(k).imag() - y(k).imag();
        if (std::abs(di) > kCanonicalTol) return di > 0.0;
    }
    return false;
}

} // namespace

SpectralDecomposition herm_eig(const CMatrix& m, const JacobiOptions& options)
{
    require_square(m, "herm_eig input");
    require_finite(m, "herm_eig input");
    const double deviation = hermiticity_deviation(m);
    if (deviation > tol::kStructure) {
        std::ostringstream os;
        os << "relative Hermiticity deviation " << deviation << " exceeds " << tol::kStructure;
        throw Error(ErrorKind::kNotHermitian, os.str());
    }

    const Eigen::Index n = m.rows();
    CMatrix a = 0.5 * (m + m.adjoint());
    CMatrix v = CMatrix::Identity(n, n);
    const double scale = a.norm();
    const double target = options.sweep_threshold * scale;

    int sweeps = 0;
    while (scale > 0.0 && off_diagonal_norm(a) > target) {
        if (sweeps >= options.max_sweeps) {
            std::ostringstream os;
            os << "Jacobi did not converge in " << options.max_sweeps << " sweeps (off-diagonal "
               << off_diagonal_norm(a) << ")";
            throw Error(ErrorKind::kNotConverged, os.str());
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
        ++sweeps;
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    RVector raw = a.diagonal().real();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return raw(x) < raw(y); });

    SpectralDecomposition out;
    out.sweeps = sweeps;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = raw(order[static_cast<std::size_t>(k)]);
        out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
        fix_phase(out.eigenvectors, k);
    }

    const double gap_tol = 1e-10 * std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && out.eigenvalues(stop) - out.eigenvalues(stop - 1) <= gap_tol) ++stop;
        if (stop - start > 1) {
            out.degenerate = true;
            std::vector<CVector> cols;
            for (Eigen::Index k = start; k < stop; ++k) cols.emplace_back(out.eigenvectors.col(k));
            std::stable_sort(cols.begin(), cols.end(), lex_greater);
            for (Eigen::Index k = start; k < stop; ++k) {
                out.eigenvectors.col(k) = cols[static_cast<std::size_t>(k - start)];
            }
        }
        start = stop;
    }
    return out;
}

CMatrix SpectralDecomposition::apply(const std::function<double(double)>& f) const
{
    RVector mapped(eigenvalues.size());
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) mapped(k) = f(eigenvalues(k));
    return eigenvectors * mapped.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

CMatrix SpectralDecomposition::reconstruct() const
{
    return apply([](double x) { return x; });
}

CMatrix sqrt_psd(const CMatrix& m)
{
    const SpectralDecomposition spec = herm_eig(m);
    const double floor = -tol::kStructure * std::max(1.0, spec.eigenvalues.cwiseAbs().maxCoeff());
    if (spec.eigenvalues(0) < floor) {
        std::ostringstream os;
        os << "smallest eigenvalue " << spec.eigenvalues(0) << " is below " << floor;
        throw Error(ErrorKind::kNotPsd, os.str());
    }
    return spec.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

// ---------------------------------------------------------------------------
// Matrix exponential

namespace {

template <typename Matrix>
Matrix pade13_expm(const Matrix& m)
{
    using Scalar = typename Matrix::Scalar;
    static constexpr double kTheta13 = 5.371920351148152;
    static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                   1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                   670442572800.0,      33522128640.0,       1323241920.0,
                                   40840800.0,          960960.0,            16380.0,
                                   182.0,               1.0};

    const Eigen::Index n = m.rows();
    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    }
    const Matrix a = m / static_cast<Scalar>(std::ldexp(1.0, squarings));
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;

    const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                           b[3] * a2 + b[1] * id;
    const Matrix u = a * u_inner;
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                     b[2] * a2 + b[0] * id;

    Matrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) r = r * r;
    return r;
}

} // namespace

CMatrix expm(const CMatrix& m)
{
    require_square(m, "expm input");
    require_finite(m, "expm input");
    return pade13_expm(m);
}

RMatrix expm(const RMatrix& m)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::kDimensionMismatch, "expm input must be a non-empty square matrix");
    }
    if (!m.allFinite()) throw Error(ErrorKind::kParse, "expm input contains NaN or Inf");
    return pade13_expm(m);
}

// ---------------------------------------------------------------------------
// Vectorization

CVector vectorize(const CMatrix& m)
{
    return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix devectorize(const CVector& v)
{
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (n * n != v.size() || n == 0) {
        std::ostringstream os;
        os << "vector of length " << v.size() << " is not the vectorization of a square matrix";
        throw Error(ErrorKind::kDimensionMismatch, os.str());
    }
    return Eigen::Map<const CMatrix>(v.data(), n, n);
}

} // namespace qtf
