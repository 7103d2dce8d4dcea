#pragma once

#include <array>
#include <string>
#include <vector>

#include "nhep/cxla.hpp"
#include "nhep/model.hpp"

// Drive sweeps of the PT spectrum, spectral-phase classification and
// exceptional-point location/ordering.

namespace nhep::spectrum {

enum class PhaseLabel { PI, Mixed, PTS };

std::string to_string(PhaseLabel p);

struct EPRecord {
    double omega_star = 0.0;
    int order = 0;
    double gap_at_star = 0.0; // eigenvalue spread of the coalescing cluster
    PhaseLabel phase_below = PhaseLabel::PI;
    PhaseLabel phase_above = PhaseLabel::PI;
};

struct SpectrumSweep {
    std::vector<double> omegas;
    std::array<std::vector<cplx>, 4> branches; // continuity-matched
    std::vector<PhaseLabel> phases;
};

inline constexpr double kPhaseTol = 1e-7;         // relative, PTS (imaginary-part) test
inline constexpr double kPhaseReTol = 0.08;       // units of gamma, PI test on broken pairs
inline constexpr double kPhaseRealAxisTol = 0.25; // units of gamma, PI test on real-axis branches
inline constexpr double kClusterRadius = 1e-3;    // relative, ep_order cluster
inline constexpr double kRefineWidth = 1e-8;      // ternary search stop width

// Pointwise spectral phase of H_PT eigenvalues given in units of gamma.
// PTS: every |Im| <= tol*scale (exact when PT is unbroken). PI: every
// conjugate-pair eigenvalue stays within re_tol of the imaginary axis and
// every real-axis eigenvalue within kPhaseRealAxisTol of zero. Mixed
// otherwise. The PI thresholds are coarse on purpose: the interaction
// itself shifts the spectrum along the real axis by O(coupling), which the
// phase diagram treats as zero.
PhaseLabel classify_phase(std::span<const cplx> pt_eigenvalues, double tol = kPhaseTol,
                          double re_tol = kPhaseReTol);

// Eigenvalues of H_PT over an inclusive drive grid, branch-matched by
// nearest-assignment continuity, with a phase label per point. jobs > 1
// evaluates grid points on a worker pool (output order is grid order).
SpectrumSweep sweep_spectrum(const model::ModelSpec& base, double omega_lo, double omega_hi,
                             int steps, int jobs = 1);

// Algebraic coalescence order at a refined candidate: the eigenvalue
// cluster size within kClusterRadius of the cluster mean, confirmed by
// geometric deficiency through rank_at; 1 means no EP.
int ep_order(const model::ModelSpec& spec, double omega_star);

// Locate EPs in [omega_lo, omega_hi]: local minima of the smallest (and,
// when a persistent degeneracy pins that one to zero, the second smallest)
// pairwise eigen-gap, refined by ternary search to kRefineWidth and kept
// only when geometrically deficient.
std::vector<EPRecord> find_eps(const model::ModelSpec& base, double omega_lo, double omega_hi,
                               int coarse_steps, int jobs = 1);

} // namespace nhep::spectrum
