#pragma once

#include <array>
#include <utility>
#include <vector>

#include "nhep/cxla.hpp"
#include "nhep/model.hpp"

// Entanglement measures: Wootters concurrence for mixed states, the
// pure-state shortcut 2|ad - bc|, eigenstate concurrence across drive
// sweeps, and the drive-free closed forms.

namespace nhep::entangle {

// Wootters concurrence of a 4x4 density matrix via the eigenvalues of
// rho * rho_tilde, rho_tilde = (sy x sy) rho* (sy x sy). Input must be
// Hermitian with unit trace.
double concurrence_mixed(const CMatrix& rho);

// Same quantity through the Hermitian R = sqrt(sqrt(rho) rho~ sqrt(rho))
// route; kept as an independent path for cross-checking.
double concurrence_mixed_rmatrix(const CMatrix& rho);

// 2|ad - bc| / <psi|psi> in the {aa, ab, ba, bb} ordering.
double concurrence_pure(std::span<const cplx> psi);

struct ConcurrenceSeries {
    std::vector<double> grid;   // control parameter (drive amplitude)
    std::vector<double> values; // NaN marks skipped (defective) points
};

// Per-branch eigenstate concurrence over a drive sweep. Branches are indexed
// by the canonical eigenvalue sort at the first grid point and followed by
// nearest-assignment continuity; defective points get NaN gap markers.
std::vector<ConcurrenceSeries> eigenstate_concurrence_sweep(const model::ModelSpec& base,
                                                            double omega_lo, double omega_hi, int steps);

// Closed-form eigenstate concurrences eps_+- of the drive-free model,
// eps = 2 J |Gamma| / (J^2 + |Gamma|^2) with Gamma+- = i gamma/2 +- E_g/2.
std::pair<double, double> nodrive_eigen_concurrence(double xi, double gamma);

// E_g = principal sqrt(4 J^2 - gamma^2), J = -2 xi.
cplx energy_gap(double xi, double gamma);

} // namespace nhep::entangle
