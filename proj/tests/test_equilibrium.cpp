#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "oracles.hpp"
#include "qtf/equilibrium.hpp"
#include "qtf/errors.hpp"
#include "qtf/random.hpp"

using namespace qtf;

namespace {

CMatrix diag(std::initializer_list<double> values)
{
    RVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (double x : values) v(k++) = x;
    return v.cast<Complex>().asDiagonal();
}

CMatrix example_hamiltonian()
{
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(2, 2) = 2.0;
    return a;
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected qtf::Error");
    return ErrorKind::kParse;
}

// 40-digit reference values for a = (-1, 1, 2), computed offline with mpmath.
constexpr double kKappa = 6.901799616122767589724;
constexpr double kDensity[3] = {0.18548719655210593, 0.33250412841139337, 0.48200867503650070};
constexpr double kRhoDiag = 0.25899566248174965;
constexpr double kRhoOff = 0.07350846592964372;
constexpr double kEntropy = -0.20923466580952124;
constexpr double kPressure = 0.90179961612276759;

} // namespace

TEST_CASE("entropy: examples and range")
{
    for (Eigen::Index n = 2; n <= 8; ++n) {
        CHECK(std::abs(entropy(DensityMatrix::maximally_mixed(n))) < 1e-12);
        CMatrix pure = CMatrix::Zero(n, n);
        pure(n - 1, n - 1) = 1.0;
        CHECK(std::abs(entropy(DensityMatrix(pure)) - (2.0 - 2.0 * static_cast<double>(n))) < 1e-12);
    }
    const double ref = oracle::entropy_from_probabilities({0.5, 1.0 / 3.0, 1.0 / 6.0});
    CHECK(ref == doctest::Approx(-0.26948).epsilon(1e-4));
    const DensityMatrix rho(diag({0.5, 1.0 / 3.0, 1.0 / 6.0}));
    CHECK(std::abs(entropy(rho) - (-0.26949725818323304)) < 1e-14);
    CHECK(std::abs(entropy_via_generator(rho) - entropy(rho)) < 1e-12);
    CHECK(std::abs(entropy_via_generator(DensityMatrix(diag({1.0, 0.0}))) + 2.0) < 1e-12);

    rnd::Engine rng = rnd::make_engine(20);
    for (Eigen::Index n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            const DensityMatrix r = rnd::density(n, rng);
            const double h = entropy(r);
            CHECK(h <= 0.0);
            CHECK(h >= 2.0 - 2.0 * static_cast<double>(n));
            CHECK(std::abs(h - entropy_via_generator(r)) < 1e-9);
            const CMatrix u = rnd::unitary(n, rng);
            CHECK(std::abs(entropy(DensityMatrix(u * r.matrix() * u.adjoint())) - h) < 1e-10);
        }
    }
}

TEST_CASE("entropy vanishes only at the uniform spectrum")
{
    RVector p(3);
    p << 1.0 / 3.0 + 1e-4, 1.0 / 3.0, 1.0 / 3.0 - 1e-4;
    CHECK(entropy(DensityMatrix(p.cast<Complex>().asDiagonal())) < -1e-10);
}

TEST_CASE("pressure functional")
{
    CHECK(std::abs(pressure_functional(CMatrix::Zero(3, 3), DensityMatrix::maximally_mixed(3))) < 1e-15);
    rnd::Engine rng = rnd::make_engine(21);
    const DensityMatrix rho = rnd::density(4, rng);
    CHECK(std::abs(pressure_functional(2.5 * CMatrix::Identity(4, 4), rho) - (2.5 + entropy(rho))) < 1e-12);
    const EquilibriumResult r = equilibrium(example_hamiltonian());
    CHECK(std::abs(pressure_functional(example_hamiltonian(), r.rho) - kPressure) < 1e-12);

    CMatrix nonherm = CMatrix::Zero(3, 3);
    nonherm(0, 1) = 1.0;
    CHECK(kind_of([&] { pressure_functional(nonherm, r.rho); }) == ErrorKind::kNotHermitian);
    CHECK(kind_of([&] { pressure_functional(CMatrix::Zero(2, 2), r.rho); }) == ErrorKind::kDimensionMismatch);
}

TEST_CASE("solve_kappa")
{
    for (int n = 1; n <= 6; ++n) {
        const std::vector<double> flat(static_cast<std::size_t>(n), 1.5);
        CHECK(std::abs(solve_kappa(flat) - (1.5 + 2.0 * n)) < 1e-12);
    }
    CHECK(std::abs(solve_kappa(std::vector<double>{0.0, 0.0}) - 4.0) < 1e-13);
    const std::vector<double> ex{-1.0, 1.0, 2.0};
    CHECK(std::abs(solve_kappa(ex) - kKappa) < 1e-13);
    CHECK(std::abs(solve_kappa(ex) - 6.902) < 5e-4);

    std::mt19937_64 rng(22);
    std::normal_distribution<double> gauss(0.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> a(static_cast<std::size_t>(2 + rep % 6));
        for (double& x : a) x = gauss(rng);
        const double k = solve_kappa(a);
        double residual = -0.5;
        double top = a[0];
        for (double x : a) {
            residual += 1.0 / (k - x);
            top = std::max(top, x);
        }
        CHECK(k > top);
        CHECK(k <= top + 2.0 * static_cast<double>(a.size()));
        CHECK(std::abs(residual) < 1e-12);
        CHECK(std::abs(k - oracle::kappa_bisection(a)) < 1e-11 * std::max(1.0, std::abs(k)));
    }

    // clustered near-degenerate entries and large offsets
    CHECK(std::abs(solve_kappa(std::vector<double>{1e6, 1e6 + 1e-9, 1e6 - 1e-9}) - (1e6 + 6.0)) < 1e-6);
}

TEST_CASE("equilibrium: worked example")
{
    const EquilibriumResult r = equilibrium(example_hamiltonian());
    CHECK(std::abs(r.kappa - kKappa) < 1e-12);
    CHECK(std::abs(r.kappa - 6.902) < 5e-4);
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(r.diagonal_density(k) - kDensity[k]) < 1e-12);
    }
    CHECK(std::abs(r.diagonal_density(0) - 0.186) < 1e-3);
    CHECK(std::abs(r.diagonal_density(1) - 0.332) < 1e-3);
    CHECK(std::abs(r.diagonal_density(2) - 0.482) < 1e-3);

    const CMatrix& rho = r.rho.matrix();
    CHECK(std::abs(rho(0, 0) - kRhoDiag) < 1e-12);
    CHECK(std::abs(rho(1, 1) - kRhoDiag) < 1e-12);
    CHECK(std::abs(rho(0, 1) - kRhoOff) < 1e-12);
    CHECK(std::abs(rho(1, 0) - kRhoOff) < 1e-12);
    CHECK(std::abs(rho(2, 2) - kDensity[2]) < 1e-12);
    CHECK(std::abs(rho(0, 2)) < 1e-14);
    CHECK(std::abs(rho(1, 2)) < 1e-14);

    CHECK(std::abs(entropy(r.rho) - kEntropy) < 1e-12);
    CHECK(std::abs(r.pressure - kPressure) < 1e-12);
    CHECK(std::abs(r.pressure - 0.902) < 2e-3);
    CHECK(std::abs(r.pressure - (r.kappa - 6.0)) < 1e-15);
    CHECK(std::abs(r.pressure_variational - r.pressure) < 1e-9);
    CHECK(std::abs((r.xi * r.xi).trace() - 1.0) < 1e-12);
    CHECK((r.xi * r.xi - rho).norm() < 1e-12);

    // U A U^* = diag(a)
    const CMatrix rotated = r.unitary * example_hamiltonian() * r.unitary.adjoint();
    CHECK((rotated - r.hamiltonian_eigenvalues.cast<Complex>().asDiagonal().toDenseMatrix()).norm() < 1e-12);
    // closed-form proportionality to 1/(kappa - a)^2
    for (int k = 0; k < 3; ++k) {
        const double w = r.c / (r.kappa - r.hamiltonian_eigenvalues(k));
        CHECK(std::abs(r.diagonal_xi(k) - w) < 1e-15);
    }
}

TEST_CASE("equilibrium: scalar Hamiltonians give the uniform density")
{
    for (Eigen::Index n = 2; n <= 5; ++n) {
        const EquilibriumResult zero = equilibrium(CMatrix::Zero(n, n));
        CHECK(std::abs(zero.kappa - 2.0 * static_cast<double>(n)) < 1e-12);
        CHECK(std::abs(zero.pressure) < 1e-12);
        CHECK((zero.rho.matrix() - CMatrix::Identity(n, n) / static_cast<double>(n)).norm() < 1e-12);

        const double c = -1.75;
        const EquilibriumResult flat = equilibrium(c * CMatrix::Identity(n, n));
        CHECK(std::abs(flat.pressure - c) < 1e-12);
        CHECK((flat.rho.matrix() - CMatrix::Identity(n, n) / static_cast<double>(n)).norm() < 1e-12);
    }
}

TEST_CASE("equilibrium: degenerate Hamiltonian eigenvalues")
{
    // a = (1, 1, 3) in a rotated frame; rho_A is independent of the choice of
    // basis inside the degenerate block.
    rnd::Engine rng = rnd::make_engine(23);
    const CMatrix u = rnd::unitary(3, rng);
    const CMatrix d = diag({1.0, 1.0, 3.0});
    const CMatrix a = u * d * u.adjoint();
    const EquilibriumResult r = equilibrium(0.5 * (a + a.adjoint()));
    const double kappa = oracle::kappa_bisection({1.0, 1.0, 3.0});
    CHECK(std::abs(r.kappa - kappa) < 1e-12);

    RVector xi(3);
    for (int k = 0; k < 3; ++k) xi(k) = 1.0 / (kappa - d(k, k).real());
    xi /= xi.norm();
    const CMatrix expected = u * xi.array().square().matrix().cast<Complex>().asDiagonal() * u.adjoint();
    CHECK((r.rho.matrix() - expected).norm() < 1e-10);

    // kappa^2 - 10 kappa + 17 = 0
    CHECK(std::abs(r.pressure - (kappa - 6.0)) < 1e-12);
    CHECK(std::abs(kappa - (5.0 + 2.0 * std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("transfer operator")
{
    const EquilibriumResult r = equilibrium(example_hamiltonian());
    CHECK((transfer_apply(example_hamiltonian(), r.xi) - r.kappa * r.xi).norm() < 1e-9);
    CHECK(r.eigen_residual < 1e-9);

    for (Eigen::Index n = 2; n <= 5; ++n) {
        const CMatrix xi = CMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
        const CMatrix out = transfer_apply(CMatrix::Zero(n, n), xi);
        CHECK((out - 2.0 * static_cast<double>(n) * xi).norm() < 1e-12);
    }

    rnd::Engine rng = rnd::make_engine(24);
    const CMatrix a = rnd::hermitian(4, rng);
    const CMatrix x1 = rnd::ginibre(4, rng);
    const CMatrix x2 = rnd::ginibre(4, rng);
    const Complex alpha(0.3, -1.2);
    const Complex beta(2.0, 0.5);
    const CMatrix lhs = transfer_apply(a, alpha * x1 + beta * x2);
    const CMatrix rhs = alpha * transfer_apply(a, x1) + beta * transfer_apply(a, x2);
    CHECK((lhs - rhs).norm() < 1e-12 * std::max(1.0, rhs.norm()));
    const CMatrix h = rnd::hermitian(4, rng);
    CHECK(hermiticity_deviation(transfer_apply(a, h)) < 1e-15);
    CHECK(kind_of([&] { transfer_apply(a, CMatrix::Zero(3, 3)); }) == ErrorKind::kDimensionMismatch);
}

TEST_CASE("equilibrium maximizes the pressure functional")
{
    rnd::Engine rng = rnd::make_engine(25);
    std::vector<CMatrix> hamiltonians{example_hamiltonian()};
    for (int rep = 0; rep < 20; ++rep) hamiltonians.push_back(rnd::hermitian(2 + rep % 4, rng));
    for (const CMatrix& a : hamiltonians) {
        const EquilibriumResult r = equilibrium(a);
        const double best = pressure_functional(a, r.rho);
        CHECK(std::abs(best - r.pressure) < 1e-9);
        double worst_gap = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double other = pressure_functional(a, rnd::density(a.rows(), rng));
            worst_gap = std::max(worst_gap, other - best);
        }
        CHECK(worst_gap <= 1e-9);
        CHECK(r.lagrange_residual < 1e-9);
        CHECK(r.eigen_residual < 1e-9);
        CHECK(r.trace_identity_residual < 1e-9);
        CHECK(r.kappa > r.hamiltonian_eigenvalues.maxCoeff());
        // local perturbations of rho_A do not increase the pressure either
        for (int k = 0; k < 20; ++k) {
            const CMatrix mixed = 0.99 * r.rho.matrix() + 0.01 * rnd::density(a.rows(), rng).matrix();
            CHECK(pressure_functional(a, DensityMatrix(mixed)) <= best + 1e-9);
        }
    }
}

TEST_CASE("equilibrium is covariant under scalar shifts")
{
    rnd::Engine rng = rnd::make_engine(26);
    for (Eigen::Index n = 2; n <= 5; ++n) {
        const CMatrix a = rnd::hermitian(n, rng);
        const double c = 3.25;
        const EquilibriumResult r0 = equilibrium(a);
        const EquilibriumResult r1 = equilibrium(a + c * CMatrix::Identity(n, n));
        CHECK(std::abs(r1.kappa - (r0.kappa + c)) < 1e-10);
        CHECK(std::abs(r1.pressure - (r0.pressure + c)) < 1e-10);
        CHECK((r1.rho.matrix() - r0.rho.matrix()).norm() < 1e-10);
    }
}

TEST_CASE("equilibrium generator")
{
    const DbcGenerator g0 = equilibrium_generator(CMatrix::Zero(3, 3));
    rnd::Engine rng = rnd::make_engine(27);
    const CMatrix x = rnd::ginibre(3, rng);
    CHECK((g0.apply(x) - oracle::heat_closed_form(x)).norm() < 1e-10);

    const DbcGenerator g = equilibrium_generator(example_hamiltonian());
    const EquilibriumResult r = equilibrium(example_hamiltonian());
    CHECK(g.apply_dual(r.rho.matrix()).norm() < 1e-9);
    const DbcReport report = check_dbc(g, 10, 0);
    CHECK(report.passed);
    CHECK(report.symmetry_deviation < 1e-9);
    CHECK(report.modular_commutation_deviation < 1e-9);

    const DbcGenerator gd = equilibrium_generator(diag({-1.0, 1.0, 2.0}));
    const RVector sigma_eigs = (-gd.lambdas().array()).exp();
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(sigma_eigs(k) - kDensity[k]) < 1e-12);
        CHECK(std::abs(sigma_eigs(k) * std::pow(kKappa - (k == 0 ? -1.0 : k == 1 ? 1.0 : 2.0), 2) -
                       sigma_eigs(0) * std::pow(kKappa + 1.0, 2)) < 1e-10);
    }
}

TEST_CASE("rate functional")
{
    CHECK(std::abs(rate_functional(DensityMatrix::maximally_mixed(3), CMatrix::Identity(3, 3))) < 1e-14);
    const DensityMatrix rho(diag({0.5, 1.0 / 3.0, 1.0 / 6.0}));
    CHECK(std::abs(rate_functional(rho, rho.sqrt()) - entropy(rho)) < 1e-12);

    rnd::Engine rng = rnd::make_engine(28);
    for (Eigen::Index n = 2; n <= 5; ++n) {
        const DensityMatrix r = rnd::faithful_density(n, rng);
        const double h = entropy(r);
        CHECK(std::abs(rate_functional(r, r.sqrt()) - h) < 1e-9);
        // rho^{1/2} is the minimizer up to positive scale
        CHECK(std::abs(rate_functional(r, 4.2 * r.sqrt()) - h) < 1e-9);
        for (int k = 0; k < 50; ++k) {
            const CMatrix w = rnd::positive_definite(n, rng);
            // literal evaluation, independent of the closed form
            const CMatrix literal_l0 = oracle::heat_closed_form(w);
            const double literal = (r.matrix() * w.inverse() * literal_l0).trace().real();
            CHECK(std::abs(rate_functional(r, w) - literal) < 1e-9 * std::max(1.0, std::abs(literal)));
            CHECK(rate_functional(r, w) >= h - 1e-9);
        }
    }

    CHECK(kind_of([&] { rate_functional(rho, diag({1.0, 0.0, 1.0})); }) == ErrorKind::kNotPositive);
    CHECK(kind_of([&] { rate_functional(rho, diag({1.0, -1.0, 1.0})); }) == ErrorKind::kNotPositive);
    CMatrix nonherm = CMatrix::Identity(3, 3);
    nonherm(0, 1) = 0.5;
    CHECK(kind_of([&] { rate_functional(rho, nonherm); }) == ErrorKind::kNotHermitian);
}

TEST_CASE("verify_rate_infimum")
{
    const RateReport flat = verify_rate_infimum(DensityMatrix::maximally_mixed(3), 50);
    CHECK(flat.passed);
    CHECK(std::abs(flat.infimum_estimate) < 1e-12);
    const CMatrix w = flat.witness / flat.witness.trace();
    CHECK((w - CMatrix::Identity(3, 3) / 3.0).norm() < 1e-12);

    const RateReport ex = verify_rate_infimum(DensityMatrix(diag({0.5, 1.0 / 3.0, 1.0 / 6.0})), 50);
    CHECK(ex.passed);
    CHECK(ex.infimum_estimate == doctest::Approx(-0.26948).epsilon(1e-4));
    CHECK(std::abs(ex.infimum_estimate - ex.entropy) < 1e-9);
    CHECK(ex.violations == 0);

    rnd::Engine rng = rnd::make_engine(29);
    for (int rep = 0; rep < 20; ++rep) {
        const RateReport r = verify_rate_infimum(rnd::faithful_density(2 + rep % 4, rng), 100,
                                                 static_cast<std::uint64_t>(rep));
        CHECK(r.passed);
        CHECK(r.samples == 100);
        CHECK(r.min_sampled_value >= r.entropy - 1e-9);
    }

    // deterministic given the seed
    const DensityMatrix rho = rnd::faithful_density(3, rng);
    CHECK(verify_rate_infimum(rho, 30, 7).min_sampled_value == verify_rate_infimum(rho, 30, 7).min_sampled_value);
    CHECK(kind_of([] { verify_rate_infimum(DensityMatrix(diag({1.0, 0.0})), 10); }) == ErrorKind::kNotFaithful);
}

TEST_CASE("trace pairing inequality")
{
    rnd::Engine rng = rnd::make_engine(30);
    for (int rep = 0; rep < 500; ++rep) {
        const Eigen::Index n = 2 + rep % 5;
        const CMatrix b = rnd::positive_definite(n, rng);
        const CMatrix g = rnd::ginibre(n, rng);
        const CMatrix u = rep % 7 == 0 ? CMatrix(g.col(0) * g.col(0).adjoint()) : CMatrix(g * g.adjoint());
        const double gap = trace_pairing_gap(b, u);
        CHECK(gap >= -1e-9 * std::max(1.0, std::pow(u.trace().real(), 2)));
    }
    // equality at B = I
    const CMatrix u = rnd::density(4, rng).matrix();
    CHECK(std::abs(trace_pairing_gap(CMatrix::Identity(4, 4), u)) < 1e-14);
}
