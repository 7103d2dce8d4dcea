#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nhep/cxla.hpp"

// Time evolution engines: the non-unitary density-matrix equation
// d rho/dt = -i (H rho - rho H^dag), pure-state propagation in the
// eigenbasis, and Lindblad master equations for the spin-mechanical model.

namespace nhep::dynamics {

struct PureState {
    std::array<cplx, 4> amp{}; // {aa, ab, ba, bb}
    static PureState basis(int index);
    static PureState bell_phi_plus(); // (|aa> + |bb>)/sqrt(2)
    double norm() const;
};

struct TrajectorySample {
    double t = 0.0;
    std::array<double, 4> populations{}; // normalized, {aa, ab, ba, bb}
    double trace = 0.0;                  // unnormalized trace / squared norm
    double concurrence = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<CMatrix> raw_states; // normalized states, kept on request

    std::vector<double> times() const;
    std::vector<double> concurrence_series() const;
    std::vector<double> population_series(int index) const;
};

struct IntegratorConfig {
    enum class Method { rk4_fixed, rk45_adaptive };
    Method method = Method::rk4_fixed;
    double dt = 1e-3;   // rk4_fixed step (units 1/gamma)
    double tol = 1e-8;  // rk45_adaptive error tolerance
    double t_max = 40.0;
    int sample_every = 10; // rk4_fixed: record every N-th step
    bool keep_raw = false;
};

struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& msg, double when)
        : std::runtime_error(msg + " at t = " + std::to_string(when)), t(when) {}
    double t;
};

struct EpDegenerateError : std::runtime_error {
    EpDegenerateError() : std::runtime_error("EP-degenerate: use ODE path") {}
};

// Evolves the unnormalized rho under -i(H rho - rho H^dag); observables are
// taken on rho/tr(rho), and rho is rescaled (scale folded into the reported
// trace) whenever tr drops below 1e-6.
Trajectory evolve_density(const CMatrix& h_passive, const CMatrix& rho0, const IntegratorConfig& cfg);

// Expands psi0 in the right eigenbasis (coefficients through the inverse of
// the eigenvector matrix), applies exp(-i lambda t) and renormalizes per
// sample. Defective spectra cannot be expanded: EpDegenerateError.
Trajectory evolve_pure_eigen(const CMatrix& h_passive, const PureState& psi0, std::span<const double> times);

// Lindblad master equation with collapse operators (rate, op). fock_dim > 1
// marks a qubit1 x qubit2 x Fock space; observables then come from the
// partial trace over the Fock factor.
Trajectory evolve_lindblad(const CMatrix& h, const std::vector<std::pair<double, CMatrix>>& collapses,
                           const CMatrix& rho0, const IntegratorConfig& cfg, int fock_dim = 1);

// Reduced qubit-pair state: trace over the trailing Fock factor.
CMatrix partial_trace_fock(const CMatrix& rho, int fock_dim);

} // namespace nhep::dynamics
