#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nhep/cxla.hpp"

// Hamiltonians and collapse operators of the two driven dissipative qubits.
// Basis ordering is fixed project-wide: {|aa>, |ab>, |ba>, |bb>} for the
// qubit pair (|a> stable, |b> decaying at rate gamma), and qubit1 x qubit2 x
// Fock for the spin-mechanical model. All rates are in units of gamma, time
// in 1/gamma.

namespace nhep::model {

struct QubitDriveParams {
    double gamma = 1.0; // common decay rate, > 0
    double omega = 0.0; // drive amplitude, >= 0
};

enum class InteractionKind { ising, dipolar };
enum class DipolarVariant { physical, as_printed };

struct ModelSpec {
    QubitDriveParams params;
    InteractionKind kind = InteractionKind::ising;
    double xi = 0.0; // Ising strength
    double g = 0.0;  // dipolar strength
    DipolarVariant variant = DipolarVariant::physical;

    static ModelSpec ising(double gamma, double omega, double xi);
    static ModelSpec dipolar(double gamma, double omega, double g,
                             DipolarVariant variant = DipolarVariant::physical);
    ModelSpec with_omega(double omega) const;
    void validate() const;

    std::string to_json() const;
    static ModelSpec from_json(const std::string& text);
};

// H = H_PT - (i gamma/2) I. The Ising variant carries the -2 xi identity
// shift and the double-flip coupling; the dipolar "physical" variant has g
// only on the single-excitation block, "as_printed" reproduces the printed
// matrix including the g on the (4,4) diagonal.
CMatrix build_passive_h(const ModelSpec& spec);

CMatrix shift_to_pt(const CMatrix& h_passive, double gamma);

// Drive-free dynamics in the {|aa>, |bb>} subspace: [[0, J], [J, -i gamma]]
// with J = -2 xi (global -2 xi shift dropped).
CMatrix build_nodrive_h2(double xi, double gamma);

// Hermitian effective Hamiltonian -xi (sx1+sx2)^2 + Omega (sx1+sx2) used by
// the reduced master equation.
CMatrix build_effective_h(double xi, double omega);

struct SpinMechParams {
    double delta_m = 0.0;  // oscillator detuning
    double g_eff = 0.0;    // qubit-oscillator coupling
    double delta_dg = 0.0; // dressed-state splitting
    double kappa = 1.0;    // oscillator decay
    double gamma_nv = 1.0; // qubit decay
    int n_trunc = 2;       // Fock cutoff, >= 2
    void validate() const;
};

// Quantum Rabi model with two qubits: delta_m a^dag a
// + sum_i [g_eff (a + a^dag) sx_i + (delta_dg/2) sz_i] + Omega (sx1 + sx2),
// dimension 4 * n_trunc.
CMatrix build_rabi_h(const SpinMechParams& p, double omega);

enum class CollapseSet { full, effective };

// full: {(kappa, a), (gamma_nv, s1-), (gamma_nv, s2-)} on the 4*n_trunc
// space; effective: the two qubit lowering operators on the 4-dim space.
std::vector<std::pair<double, CMatrix>> build_collapse_ops(const SpinMechParams& p, CollapseSet which);

} // namespace nhep::model
