// rate.cpp — Rate functional tr(rho W^{-1} L0(W)) and its infimum over W > 0

#include "qtf/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qtf/errors.hpp"
#include "qtf/random.hpp"

namespace qtf {

double rate_functional(const DensityMatrix& rho, const CMatrix& witness)
{
    require_same_dim(witness, rho.matrix(), "witness and density sizes differ");
    require_finite(witness, "witness");
    const double deviation = hermiticity_deviation(witness);
    if (deviation > tol::kStructure) {
        std::ostringstream os;
        os << "witness has relative Hermiticity deviation " << deviation;
        throw Error(ErrorKind::kNotHermitian, os.str());
    }
    const SpectralDecomposition spec = herm_eig(witness);
    if (spec.eigenvalues(0) <= 1e-12) {
        std::ostringstream os;
        os << "witness has eigenvalue " << spec.eigenvalues(0) << " <= 1e-12";
        throw Error(ErrorKind::kNotPositive, os.str());
    }
    const Eigen::Index n = rho.dim();
    const double dim = static_cast<double>(n);

    const CMatrix inverse = spec.apply([](double x) { return 1.0 / x; });
    const double closed = 2.0 * (rho.matrix() * inverse).trace().real() * witness.trace().real() - 2.0 * dim;

    double literal = 0.0;
    if (n >= 2) {
        const CMatrix heat_w = DbcGenerator::heat(n).apply(witness);
        literal = (rho.matrix() * witness.partialPivLu().solve(heat_w)).trace().real();
    }
    if (std::abs(closed - literal) > 1e-9 * std::max(1.0, std::abs(closed))) {
        std::ostringstream os;
        os.precision(17);
        os << "closed form " << closed << " disagrees with tr(rho W^-1 L0(W)) = " << literal;
        throw Error(ErrorKind::kVerification, os.str());
    }
    return closed;
}

double trace_pairing_gap(const CMatrix& b, const CMatrix& u)
{
    require_square(b, "B");
    require_same_dim(b, u, "B and U sizes differ");
    const double tr_bu = (b * u).trace().real();
    const double tr_ubinv = (u * b.inverse()).trace().real();
    const double tr_u = u.trace().real();
    return tr_bu * tr_ubinv - tr_u * tr_u;
}

RateReport verify_rate_infimum(const DensityMatrix& rho, int samples, std::uint64_t seed, double tolerance)
{
    if (!rho.is_faithful()) {
        std::ostringstream os;
        os << "density has eigenvalue " << rho.min_eigenvalue() << " <= " << tol::kFaithful;
        throw Error(ErrorKind::kNotFaithful, os.str());
    }
    const double h = entropy(rho);
    const CMatrix analytic = rho.sqrt();

    RateReport report{.rho = rho,
                      .entropy = h,
                      .infimum_estimate = rate_functional(rho, analytic),
                      .witness = analytic,
                      .min_sampled_value = std::numeric_limits<double>::infinity(),
                      .samples = samples,
                      .violations = 0,
                      .tolerance = tolerance,
                      .passed = false};

    rnd::Engine rng = rnd::make_engine(seed);
    for (int k = 0; k < samples; ++k) {
        const CMatrix w = rnd::positive_definite(rho.dim(), rng, 2.0);
        const double value = rate_functional(rho, w);
        if (value < h - tolerance) ++report.violations;
        report.min_sampled_value = std::min(report.min_sampled_value, value);
        if (value < report.infimum_estimate) {
            report.infimum_estimate = value;
            report.witness = w;
        }
    }
    report.passed = report.violations == 0 && std::abs(report.infimum_estimate - h) <= tolerance;
    return report;
}

} // namespace qtf
