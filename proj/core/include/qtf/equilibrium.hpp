// equilibrium.hpp — Laplacian-entropy, pressure, equilibrium densities and
// the entropy-as-infimum characterization

#pragma once

#include <cstdint>
#include <span>

#include "qtf/density.hpp"
#include "qtf/lindblad.hpp"
#include "qtf/matrix_core.hpp"

namespace qtf {

// ---------------------------------------------------------------------------
// Entropy

/// h(rho) = 2 (sum_j sqrt(p_j))^2 - 2n from the spectrum of rho.
/// Lies in [2 - 2n, 0]; zero exactly at I/n.
double entropy(const DensityMatrix& rho);

/// h(rho) = tr(rho^{1/2} L0^dag(rho^{1/2})) evaluated with the heat generator.
double entropy_via_generator(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Pressure

/// P_A(rho) = h(rho) + Re tr(A rho). Throws NotHermitian, DimensionMismatch.
double pressure_functional(const CMatrix& a, const DensityMatrix& rho);

/// Unique kappa > max a_i with sum_i 1/(kappa - a_i) = 1/2.
double solve_kappa(std::span<const double> diag_a);
double solve_kappa(const RVector& diag_a);

struct EquilibriumResult {
    CMatrix hamiltonian;         // A
    RVector hamiltonian_eigenvalues; // a_i, ascending
    CMatrix unitary;             // U with U A U^* = diag(a_i)
    double kappa = 0.0;
    double c = 0.0;              // xi'_ii = c / (kappa - a_i)
    RVector diagonal_xi;         // xi'_ii in A's eigenframe
    RVector diagonal_density;    // (xi'_ii)^2
    CMatrix xi;                  // rho_A^{1/2} in the original frame
    DensityMatrix rho;           // rho_A
    double pressure = 0.0;       // kappa - 2n
    double pressure_variational = 0.0; // h(rho_A) + tr(A rho_A)
    double lagrange_residual = 0.0;    // ||2 kappa xi' - 4 tr(xi') I - A' xi' - xi' A'||_F
    double eigen_residual = 0.0;       // ||transfer(A, xi) - kappa xi||_F
    double trace_identity_residual = 0.0; // |tr(A xi) - (kappa - 2n) tr(xi)|
};

/// Maximizer of P_A over densities. Throws NotHermitian; throws Verification
/// when kappa - 2n and h(rho_A) + tr(A rho_A) disagree by more than
/// 1e-8 * max(1, |kappa|).
EquilibriumResult equilibrium(const CMatrix& a);

/// xi -> 2 tr(xi) I + (A xi + xi A) / 2.
CMatrix transfer_apply(const CMatrix& a, const CMatrix& xi);

/// The detailed-balance generator with sigma = rho_A.
DbcGenerator equilibrium_generator(const CMatrix& a);

// ---------------------------------------------------------------------------
// Rate functional

/// tr(rho W^{-1} L0(W)) = 2 Re tr(rho W^{-1}) tr(W) - 2n for W > 0. Throws
/// NotPositive when the smallest eigenvalue of W is <= 1e-12, Verification
/// when the closed form and the literal trace disagree beyond 1e-9 (relative).
double rate_functional(const DensityMatrix& rho, const CMatrix& witness);

/// tr(B U) tr(U B^{-1}) - tr(U)^2, nonnegative for B > 0, U >= 0.
double trace_pairing_gap(const CMatrix& b, const CMatrix& u);

struct RateReport {
    DensityMatrix rho;
    double entropy = 0.0;
    double infimum_estimate = 0.0;
    CMatrix witness;             // argmin among the evaluated witnesses
    double min_sampled_value = 0.0; // over the random witnesses only
    int samples = 0;
    int violations = 0;          // sampled values below entropy - tolerance
    double tolerance = 1e-9;
    bool passed = false;
};

/// Evaluates the rate functional on `samples` witnesses exp(H), ||H||_2 <= 2,
/// plus the analytic witness rho^{1/2}. Throws NotFaithful.
RateReport verify_rate_infimum(const DensityMatrix& rho, int samples, std::uint64_t seed = 0,
                               double tolerance = 1e-9);

} // namespace qtf
