#include "nhep/perturb.hpp"

#include <cmath>

#include "nhep/entangle.hpp"

namespace nhep::perturb {

namespace {

const cplx kI(0.0, 1.0);

void check_params(double omega, double gamma) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ArgumentError("omega must be positive");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ArgumentError("gamma must be non-negative");
}

} // namespace

cplx eta_of(double omega, double gamma) {
    return std::sqrt(cplx(16.0 * omega * omega - gamma * gamma, 0.0));
}

PtBranch branch_of(double omega, double gamma) {
    return 16.0 * omega * omega > gamma * gamma ? PtBranch::PTS : PtBranch::PTB;
}

SingleQubitEigen single_qubit_eigensystem(double omega, double gamma, double xi) {
    check_params(omega, gamma);
    const cplx eta = eta_of(omega, gamma);
    const cplx base = cplx(-4.0 * xi, -gamma);
    SingleQubitEigen sq;
    sq.lambda_minus = 0.25 * (base - eta);
    sq.lambda_plus = 0.25 * (base + eta);
    const double pref = 1.0 / (4.0 * std::sqrt(2.0) * omega);
    sq.v_minus = {pref * (kI * gamma - eta), pref * 4.0 * omega};
    sq.v_plus = {pref * (kI * gamma + eta), pref * 4.0 * omega};
    sq.vbar_minus = {pref * (-kI * gamma - eta), pref * 4.0 * omega};
    sq.vbar_plus = {pref * (-kI * gamma + eta), pref * 4.0 * omega};
    sq.coalesced = std::abs(eta) <= 1e-9 * std::max(1.0, gamma);
    return sq;
}

BiorthoBasis build_bibasis(double omega, double gamma) {
    check_params(omega, gamma);
    const cplx eta = eta_of(omega, gamma);
    if (std::abs(eta) <= 1e-9 * std::max(1.0, gamma))
        throw ConstructionError("biorthogonal basis undefined at the coalescence 4 Omega = gamma");
    BiorthoBasis basis;
    basis.eta = eta;
    basis.branch = branch_of(omega, gamma);
    const cplx ig = kI * gamma;
    const double s2 = std::sqrt(2.0);
    basis.rights[0] = {(-ig + eta) / (2.0 * eta), -4.0 * omega / (2.0 * eta), -4.0 * omega / (2.0 * eta),
                       (ig + eta) / (2.0 * eta)};
    basis.rights[1] = {(ig + eta) / (2.0 * eta), 4.0 * omega / (2.0 * eta), 4.0 * omega / (2.0 * eta),
                       (-ig + eta) / (2.0 * eta)};
    basis.rights[2] = {0.0, -1.0 / s2, 1.0 / s2, 0.0};
    basis.rights[3] = {-4.0 * omega / (s2 * eta), ig / (s2 * eta), ig / (s2 * eta), 4.0 * omega / (s2 * eta)};
    // the pair Hamiltonians are complex symmetric, so the biorthogonal left
    // vectors are plain transposes of the rights
    basis.lefts = basis.rights;
    return basis;
}

std::array<std::array<cplx, 2>, 2> degenerate_block(double omega, double gamma, double xi) {
    check_params(omega, gamma);
    if (branch_of(omega, gamma) != PtBranch::PTS)
        throw BranchError("degenerate block derived in the PTS branch only");
    const cplx eta2 = cplx(16.0 * omega * omega - gamma * gamma, 0.0);
    const double j = -2.0 * xi;
    const cplx entry = -j * gamma * gamma / eta2;
    return {{{entry, entry}, {entry, entry}}};
}

PerturbedEigenvalues perturbed_eigenvalues(double omega, double gamma, double xi) {
    check_params(omega, gamma);
    if (branch_of(omega, gamma) != PtBranch::PTS)
        throw BranchError("perturbed eigenvalues derived in the PTS branch only");
    const double eta2 = 16.0 * omega * omega - gamma * gamma;
    const cplx eta = eta_of(omega, gamma);
    const double j = -2.0 * xi;
    PerturbedEigenvalues pe;
    pe.lambda_1 = -0.5 * kI * gamma; // the singlet never couples: exact
    pe.lambda_2 = -0.5 * kI * gamma - 2.0 * j * gamma * gamma / eta2;
    const cplx base = 0.5 * cplx(-4.0 * xi, -gamma);
    const double shift = 16.0 * j * omega * omega / eta2;
    pe.lambda_mm = base - 0.5 * eta + shift;
    pe.lambda_pp = base + 0.5 * eta + shift;
    return pe;
}

PerturbedSystem perturbed_system(double omega, double gamma, double xi) {
    check_params(omega, gamma);
    if (branch_of(omega, gamma) != PtBranch::PTS)
        throw BranchError("perturbed eigenstates derived in the PTS branch only");
    const BiorthoBasis b = build_bibasis(omega, gamma);
    const double j = -2.0 * xi;
    const cplx eta = b.eta;

    PerturbedSystem ps;
    ps.values = perturbed_eigenvalues(omega, gamma, xi);
    ps.j = j;
    ps.psi_1 = b.rights[2]; // exact at first order

    // mixing weights from <bar_k| J sx1 sx2 |psi_n> / (lambda_n - lambda_k):
    // the +-/-+ pair couples through -J gamma^2/eta^2 and to the symmetric
    // degenerate state through -+ 4 sqrt2 i gamma J Omega / eta^2
    const cplx eta3 = eta * eta * eta;
    const cplx w_pair = j * gamma * gamma / eta3;            // |Psi_++> gains -w_pair |psi_-->
    const cplx w_sym = 8.0 * std::sqrt(2.0) * kI * gamma * j * omega / eta3;
    for (int i = 0; i < 4; ++i) {
        ps.psi_pp[i] = b.rights[1][i] - w_pair * b.rights[0][i] + w_sym * b.rights[3][i];
        ps.psi_mm[i] = b.rights[0][i] + w_pair * b.rights[1][i] + w_sym * b.rights[3][i];
        ps.psi_2[i] = b.rights[3][i] - w_sym * (b.rights[0][i] + b.rights[1][i]);
    }
    for (int i = 0; i < 4; ++i) {
        ps.bar_mm[i] = std::conj(ps.psi_mm[i]);
        ps.bar_pp[i] = std::conj(ps.psi_pp[i]);
        ps.bar_1[i] = std::conj(ps.psi_1[i]);
        ps.bar_2[i] = std::conj(ps.psi_2[i]);
    }
    return ps;
}

dynamics::Trajectory analytic_evolution(double omega, double gamma, double xi,
                                        const dynamics::PureState& psi0, std::span<const double> times) {
    if (branch_of(omega, gamma) != PtBranch::PTS)
        throw BranchError("analytic path defined in PTS only");
    if (!(psi0.norm() > 0.0)) throw ArgumentError("initial state must be nonzero");
    const PerturbedSystem ps = perturbed_system(omega, gamma, xi);

    // <bar Psi_i|psi0> reduces to the bilinear pairing with the states
    auto coeff = [&psi0](const std::array<cplx, 4>& bar) {
        cplx a = 0.0;
        for (int i = 0; i < 4; ++i) a += std::conj(bar[i]) * psi0.amp[i];
        return a;
    };
    const cplx a_pp = coeff(ps.bar_pp);
    const cplx a_mm = coeff(ps.bar_mm);
    const cplx a_1 = coeff(ps.bar_1);
    const cplx a_2 = coeff(ps.bar_2);

    dynamics::Trajectory traj;
    traj.samples.reserve(times.size());
    for (const double t : times) {
        const cplx e_pp = a_pp * std::exp(-kI * ps.values.lambda_pp * t);
        const cplx e_mm = a_mm * std::exp(-kI * ps.values.lambda_mm * t);
        const cplx e_1 = a_1 * std::exp(-kI * ps.values.lambda_1 * t);
        const cplx e_2 = a_2 * std::exp(-kI * ps.values.lambda_2 * t);
        std::array<cplx, 4> amp{};
        for (int i = 0; i < 4; ++i)
            amp[i] = e_pp * ps.psi_pp[i] + e_mm * ps.psi_mm[i] + e_1 * ps.psi_1[i] + e_2 * ps.psi_2[i];
        const double nrm = norm2(std::span<const cplx>(amp));
        dynamics::TrajectorySample s;
        s.t = t;
        s.trace = nrm * nrm;
        for (int i = 0; i < 4; ++i) s.populations[i] = std::norm(amp[i]) / (nrm * nrm);
        s.concurrence = entangle::concurrence_pure(amp);
        traj.samples.push_back(s);
    }
    return traj;
}

std::array<cplx, 4> bell_projection(const dynamics::PureState& psi) {
    if (!(psi.norm() > 0.0)) throw ArgumentError("state must be nonzero");
    const double s2 = 1.0 / std::sqrt(2.0);
    const cplx a = psi.amp[0], b = psi.amp[1], z = psi.amp[2], d = psi.amp[3];
    // magic basis: e1 = (aa+bb)/s2, e2 = i(aa-bb)/s2, e3 = i(ab+ba)/s2,
    // e4 = (ab-ba)/s2; components are <e_j|psi>
    return {
        s2 * (a + d),
        -kI * s2 * (a - d),
        -kI * s2 * (b + z),
        s2 * (b - z),
    };
}

} // namespace nhep::perturb
