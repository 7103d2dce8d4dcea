#pragma once

#include <array>
#include <span>

#include "nhep/cxla.hpp"
#include "nhep/dynamics.hpp"

// First-order biorthogonal perturbation theory of the weakly coupled qubit
// pair: unperturbed product eigensystem, the degenerate block, perturbed
// eigenvalues/eigenstates and the closed-form evolution. Everything in this
// namespace treats the double-flip coupling J sx1 sx2 (J = -2 xi, with the
// identity share of the interaction folded into the unperturbed energies)
// as the perturbation.

namespace nhep::perturb {

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PtBranch { PTS, PTB };

// eta = sqrt(16 Omega^2 - gamma^2), principal branch (PTB: i|eta|).
cplx eta_of(double omega, double gamma);
PtBranch branch_of(double omega, double gamma);

struct SingleQubitEigen {
    cplx lambda_minus, lambda_plus;          // 1/4 (-i gamma - 4 xi -+ eta)
    std::array<cplx, 2> v_minus, v_plus;     // right eigenvectors
    std::array<cplx, 2> vbar_minus, vbar_plus; // dual-space eigenvectors
    bool coalesced = false;
};

SingleQubitEigen single_qubit_eigensystem(double omega, double gamma, double xi);

struct BiorthoBasis {
    // order: {--, ++, 1, 2}; 1 is the singlet (0,-1,1,0)/sqrt(2), 2 its
    // symmetric partner
    std::array<std::array<cplx, 4>, 4> rights;
    std::array<std::array<cplx, 4>, 4> lefts; // row vectors, <l|v> = sum l_k v_k
    cplx eta;
    PtBranch branch = PtBranch::PTS;
};

// Unperturbed biorthonormal basis of the uncoupled pair; undefined at the
// coalescence 4 Omega = gamma.
BiorthoBasis build_bibasis(double omega, double gamma);

// 2x2 perturbation block in the degenerate subspace: every entry equals
// -J gamma^2 / eta^2.
std::array<std::array<cplx, 2>, 2> degenerate_block(double omega, double gamma, double xi);

struct PerturbedEigenvalues {
    cplx lambda_1;  // singlet: exactly -i gamma / 2
    cplx lambda_2;  // -i gamma/2 - 2 J gamma^2 / eta^2
    cplx lambda_mm; // (-i gamma - 4 xi - eta)/2 + 16 J Omega^2 / eta^2
    cplx lambda_pp; // (-i gamma - 4 xi + eta)/2 + 16 J Omega^2 / eta^2
};

PerturbedEigenvalues perturbed_eigenvalues(double omega, double gamma, double xi);

struct PerturbedSystem {
    PerturbedEigenvalues values;
    std::array<cplx, 4> psi_mm, psi_pp, psi_1, psi_2; // first-order states
    std::array<cplx, 4> bar_mm, bar_pp, bar_1, bar_2; // adjoints (conjugates in PTS)
    double j = 0.0;                                   // -2 xi
};

// First-order eigenstates (PTS branch only).
PerturbedSystem perturbed_system(double omega, double gamma, double xi);

// Closed-form evolution sum_i A_i exp(-i t Lambda_i) |Psi_i>, with
// A_i = <bar Psi_i | psi0>. PTS branch only.
dynamics::Trajectory analytic_evolution(double omega, double gamma, double xi,
                                        const dynamics::PureState& psi0, std::span<const double> times);

// Components in the maximally entangled (magic) basis; the sum of squared
// components reproduces the unnormalized pure concurrence.
std::array<cplx, 4> bell_projection(const dynamics::PureState& psi);

} // namespace nhep::perturb
