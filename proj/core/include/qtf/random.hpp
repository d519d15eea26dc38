// random.hpp — Deterministic random matrix ensembles for sweeps and diagnostics

#pragma once

#include <cstdint>
#include <random>

#include "qtf/density.hpp"

namespace qtf::rnd {

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

/// i.i.d. complex Gaussian entries (unit variance per real component).
CMatrix ginibre(Eigen::Index n, Engine& rng);
/// (G + G^H) / 2 for a Ginibre G.
CMatrix hermitian(Eigen::Index n, Engine& rng);
/// Haar-distributed unitary from a phase-corrected QR of a Ginibre matrix.
CMatrix unitary(Eigen::Index n, Engine& rng);
/// G G^H / tr for a Ginibre G; full rank with probability one.
DensityMatrix density(Eigen::Index n, Engine& rng);
/// Random density whose smallest eigenvalue is at least `floor`.
DensityMatrix faithful_density(Eigen::Index n, Engine& rng, double floor = 1e-3);
/// Uniform point of the probability simplex.
RVector probability_vector(Eigen::Index n, Engine& rng);
/// exp(H) with H Hermitian, spectral norm at most `max_log_norm`.
CMatrix positive_definite(Eigen::Index n, Engine& rng, double max_log_norm = 2.0);

} // namespace qtf::rnd
