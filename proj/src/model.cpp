#include "nhep/model.hpp"

#include <cmath>

#include "json.hpp"

namespace nhep::model {

namespace {

// single-flip (drive) positions in the {aa, ab, ba, bb} basis
constexpr int kFlipPairs[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};

void add_drive(CMatrix& h, double omega) {
    for (const auto& p : kFlipPairs) {
        h(p[0], p[1]) += omega;
        h(p[1], p[0]) += omega;
    }
}

} // namespace

ModelSpec ModelSpec::ising(double gamma, double omega, double xi) {
    ModelSpec s;
    s.params = {gamma, omega};
    s.kind = InteractionKind::ising;
    s.xi = xi;
    s.validate();
    return s;
}

ModelSpec ModelSpec::dipolar(double gamma, double omega, double g, DipolarVariant variant) {
    ModelSpec s;
    s.params = {gamma, omega};
    s.kind = InteractionKind::dipolar;
    s.g = g;
    s.variant = variant;
    s.validate();
    return s;
}

ModelSpec ModelSpec::with_omega(double omega) const {
    ModelSpec s = *this;
    s.params.omega = omega;
    return s;
}

void ModelSpec::validate() const {
    if (params.gamma < 0.0 || !std::isfinite(params.gamma))
        throw ArgumentError("gamma must be non-negative and finite");
    if (params.omega < 0.0 || !std::isfinite(params.omega))
        throw ArgumentError("omega must be non-negative and finite");
    if (!std::isfinite(xi) || !std::isfinite(g)) throw ArgumentError("coupling must be finite");
}

std::string ModelSpec::to_json() const {
    nlohmann::json j;
    j["gamma"] = params.gamma;
    j["omega"] = params.omega;
    j["interaction"] = kind == InteractionKind::ising ? "ising" : "dipolar";
    j["xi"] = xi;
    j["g"] = g;
    j["dipolar_variant"] = variant == DipolarVariant::physical ? "physical" : "as-printed";
    return j.dump();
}

ModelSpec ModelSpec::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ModelSpec s;
    s.params.gamma = j.value("gamma", 1.0);
    s.params.omega = j.value("omega", 0.0);
    const std::string kind = j.value("interaction", "ising");
    if (kind == "ising")
        s.kind = InteractionKind::ising;
    else if (kind == "dipolar")
        s.kind = InteractionKind::dipolar;
    else
        throw ArgumentError("unknown interaction: " + kind);
    s.xi = j.value("xi", 0.0);
    s.g = j.value("g", 0.0);
    const std::string var = j.value("dipolar_variant", "physical");
    if (var == "physical")
        s.variant = DipolarVariant::physical;
    else if (var == "as-printed")
        s.variant = DipolarVariant::as_printed;
    else
        throw ArgumentError("unknown dipolar_variant: " + var);
    s.validate();
    return s;
}

CMatrix build_passive_h(const ModelSpec& spec) {
    spec.validate();
    const double gamma = spec.params.gamma;
    const cplx ig2(0.0, gamma / 2.0);
    CMatrix h(4);
    h(1, 1) -= ig2;
    h(2, 2) -= ig2;
    h(3, 3) -= 2.0 * ig2;
    add_drive(h, spec.params.omega);
    if (spec.kind == InteractionKind::ising) {
        const double xi = spec.xi;
        for (int i = 0; i < 4; ++i) h(i, i) -= 2.0 * xi; // identity part of -xi (sx1+sx2)^2
        h(0, 3) -= 2.0 * xi;
        h(3, 0) -= 2.0 * xi;
        h(1, 2) -= 2.0 * xi;
        h(2, 1) -= 2.0 * xi;
    } else {
        h(1, 2) += spec.g;
        h(2, 1) += spec.g;
        if (spec.variant == DipolarVariant::as_printed) h(3, 3) += spec.g;
    }
    return h;
}

CMatrix shift_to_pt(const CMatrix& h_passive, double gamma) {
    CMatrix h = h_passive;
    const cplx ig2(0.0, gamma / 2.0);
    for (int i = 0; i < h.dim(); ++i) h(i, i) += ig2;
    return h;
}

CMatrix build_nodrive_h2(double xi, double gamma) {
    if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
    const double j = -2.0 * xi;
    CMatrix h(2);
    h(0, 1) = j;
    h(1, 0) = j;
    h(1, 1) = cplx(0.0, -gamma);
    return h;
}

CMatrix build_effective_h(double xi, double omega) {
    CMatrix h(4);
    for (int i = 0; i < 4; ++i) h(i, i) = -2.0 * xi;
    h(0, 3) = h(3, 0) = h(1, 2) = h(2, 1) = -2.0 * xi;
    add_drive(h, omega);
    return h;
}

void SpinMechParams::validate() const {
    if (n_trunc < 2) throw ArgumentError("n_trunc must be at least 2");
    for (double v : {delta_m, g_eff, delta_dg, kappa, gamma_nv})
        if (!std::isfinite(v)) throw ArgumentError("spin-mechanical rates must be finite");
}

namespace {

// index in qubit1 x qubit2 x Fock ordering; q = 0 is |a>, q = 1 is |b>
inline int rabi_index(int q1, int q2, int n, int ntr) { return (q1 * 2 + q2) * ntr + n; }

} // namespace

CMatrix build_rabi_h(const SpinMechParams& p, double omega) {
    p.validate();
    const int ntr = p.n_trunc;
    const int dim = 4 * ntr;
    CMatrix h(dim);
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int n = 0; n < ntr; ++n) {
                const int row = rabi_index(q1, q2, n, ntr);
                const double sz = (q1 == 0 ? 1.0 : -1.0) + (q2 == 0 ? 1.0 : -1.0);
                h(row, row) += p.delta_m * n + 0.5 * p.delta_dg * sz;
                // sigma_1^x and sigma_2^x, bare drive
                const int f1 = rabi_index(1 - q1, q2, n, ntr);
                const int f2 = rabi_index(q1, 1 - q2, n, ntr);
                h(row, f1) += omega;
                h(row, f2) += omega;
                // g (a + a^dag) sigma_i^x
                if (n + 1 < ntr) {
                    const double lad = p.g_eff * std::sqrt(n + 1.0);
                    h(row, rabi_index(1 - q1, q2, n + 1, ntr)) += lad;
                    h(row, rabi_index(q1, 1 - q2, n + 1, ntr)) += lad;
                    h(rabi_index(1 - q1, q2, n + 1, ntr), row) += lad;
                    h(rabi_index(q1, 1 - q2, n + 1, ntr), row) += lad;
                }
            }
    return h;
}

std::vector<std::pair<double, CMatrix>> build_collapse_ops(const SpinMechParams& p, CollapseSet which) {
    p.validate();
    std::vector<std::pair<double, CMatrix>> ops;
    if (which == CollapseSet::effective) {
        CMatrix s1(4), s2(4);
        // sigma^- = |b><a| per qubit in the {aa, ab, ba, bb} basis
        s1(2, 0) = 1.0; // aa -> ba
        s1(3, 1) = 1.0; // ab -> bb
        s2(1, 0) = 1.0; // aa -> ab
        s2(3, 2) = 1.0; // ba -> bb
        ops.emplace_back(p.gamma_nv, std::move(s1));
        ops.emplace_back(p.gamma_nv, std::move(s2));
        return ops;
    }
    const int ntr = p.n_trunc;
    const int dim = 4 * ntr;
    CMatrix a(dim), s1(dim), s2(dim);
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int n = 0; n < ntr; ++n) {
                const int col = rabi_index(q1, q2, n, ntr);
                if (n > 0) a(rabi_index(q1, q2, n - 1, ntr), col) = std::sqrt(static_cast<double>(n));
                if (q1 == 0) s1(rabi_index(1, q2, n, ntr), col) = 1.0;
                if (q2 == 0) s2(rabi_index(q1, 1, n, ntr), col) = 1.0;
            }
    ops.emplace_back(p.kappa, std::move(a));
    ops.emplace_back(p.gamma_nv, std::move(s1));
    ops.emplace_back(p.gamma_nv, std::move(s2));
    return ops;
}

} // namespace nhep::model
