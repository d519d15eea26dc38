// classical.hpp — Classical continuous-time Markov chain of a detailed-balance generator

#pragma once

#include "qtf/density.hpp"
#include "qtf/lindblad.hpp"

namespace qtf {

/// Rate matrix Q_lk = tr(F_ll L(F_kk)), F_kk = |eta_k><eta_k|, and its
/// invariant probability vector sigma_j = e^{-lambda_j}.
struct ClassicalChain {
    RMatrix q;
    RVector invariant;

    Eigen::Index dim() const { return q.rows(); }
};

struct ChainDiagnostics {
    double max_row_sum = 0.0;            // max_l |sum_k Q_lk|
    double stationarity = 0.0;           // max_k |(sigma Q)_k|
    double detailed_balance = 0.0;       // max |sigma_i Q_ik - sigma_k Q_ki|
    double min_off_diagonal = 0.0;
};

/// Q_lk = 2 e^{-w_kl/2} - 2 delta_lk sum_i e^{-w_il/2}. Depends only on the
/// spectrum of sigma (and on the order of its eigenbasis).
ClassicalChain reduce(const DbcGenerator& g);

ChainDiagnostics diagnose(const ClassicalChain& chain);

/// e^{t Q^T} p0. Throws InvalidProbability, NegativeTime.
RVector evolve_classical(const ClassicalChain& chain, double t, const RVector& p0);

/// sum_k p_k |eta_k><eta_k|. Throws InvalidProbability.
DensityMatrix embed_diagonal(const DbcGenerator& g, const RVector& p);

/// p_k = tr(F_kk rho). Inverse of embed_diagonal on densities commuting with sigma.
RVector project_diagonal(const DbcGenerator& g, const CMatrix& rho);

/// Throws InvalidProbability unless p >= 0 entrywise and sums to one within 1e-12.
void require_probability(const RVector& p);

} // namespace qtf
