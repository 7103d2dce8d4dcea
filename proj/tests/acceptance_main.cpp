// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is fixed here, in code; informational measurements are
// printed indented under the owning criterion.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "nhep/analysis.hpp"
#include "nhep/dynamics.hpp"
#include "nhep/entangle.hpp"
#include "nhep/model.hpp"
#include "nhep/perturb.hpp"
#include "nhep/spectrum.hpp"

using namespace nhep;
using model::ModelSpec;

namespace {

int g_failures = 0;

void report(const char* name, bool pass) {
    std::printf("[%s] %s\n", pass ? "PASS" : "FAIL", name);
    if (!pass) ++g_failures;
}

void note(const char* fmt, ...) {
    std::printf("       ");
    va_list args;
    va_start(args, fmt);
    std::vprintf(fmt, args);
    va_end(args);
    std::printf("\n");
}

CMatrix projector_aa() {
    CMatrix rho(4);
    rho(0, 0) = 1.0;
    return rho;
}

dynamics::Trajectory ising_run(double omega, double xi, double t_max, double dt = 1e-3, int sample = 10) {
    dynamics::IntegratorConfig cfg;
    cfg.t_max = t_max;
    cfg.dt = dt;
    cfg.sample_every = sample;
    return dynamics::evolve_density(build_passive_h(ModelSpec::ising(1.0, omega, xi)), projector_aa(), cfg);
}

// --- criterion 1 -----------------------------------------------------------

bool single_ep(const std::vector<spectrum::EPRecord>& eps, double omega, double tol, int order) {
    return eps.size() == 1 && std::abs(eps[0].omega_star - omega) <= tol && eps[0].order == order;
}

bool criterion_ep_landmarks() {
    bool ok = true;

    const auto e0 = spectrum::find_eps(ModelSpec::ising(1.0, 0.0, 0.0), 0.01, 0.6, 250);
    const bool ok0 = single_ep(e0, 0.25, 1e-6, 4);
    if (!e0.empty()) note("ising xi=0:      omega* = %.7f (order %d)", e0[0].omega_star, e0[0].order);
    ok &= ok0;

    const auto e1 = spectrum::find_eps(ModelSpec::ising(1.0, 0.0, 0.006), 0.01, 0.6, 250);
    const bool ok1 = single_ep(e1, 0.283, 0.005, 2);
    if (!e1.empty()) note("ising xi=0.006:  omega* = %.7f (order %d)", e1[0].omega_star, e1[0].order);
    ok &= ok1;

    const auto e2 = spectrum::find_eps(ModelSpec::ising(1.0, 0.0, 0.5), 0.01, 2.0, 400);
    const bool ok2 = e2.size() == 2 && std::abs(e2[0].omega_star - 0.626) <= 0.01 &&
                     std::abs(e2[1].omega_star - 1.34) <= 0.02 && e2[0].order == 2 && e2[1].order == 2;
    if (e2.size() == 2)
        note("ising xi=0.5:    omega* = %.7f, %.7f", e2[0].omega_star, e2[1].omega_star);
    ok &= ok2;

    const auto e3 = spectrum::find_eps(ModelSpec::dipolar(1.0, 0.0, 0.5), 0.01, 1.0, 300);
    const bool ok3 = single_ep(e3, 0.47, 0.01, 2);
    if (!e3.empty()) note("dipolar g=0.5:   omega* = %.7f (order %d)", e3[0].omega_star, e3[0].order);
    ok &= ok3;

    const auto e4 = spectrum::find_eps(ModelSpec::dipolar(1.0, 0.0, 0.006), 0.01, 0.6, 300);
    const bool ok4 = single_ep(e4, 0.283, 0.005, 2);
    if (!e4.empty())
        note("dipolar g=0.006: omega* = %.7f (order %d) -- expected 0.283 +- 0.005, but the", e4[0].omega_star,
             e4[0].order);
    note("                 physical exchange matrix coalesces at 0.2623 (0.283 matches the");
    note("                 Ising model instead)");
    const auto e5 = spectrum::find_eps(ModelSpec::dipolar(1.0, 0.0, 0.006, model::DipolarVariant::as_printed),
                                       0.01, 0.6, 300);
    if (e5.empty())
        note("                 as-printed variant: no true coalescence on the real drive axis");
    else
        note("                 as-printed variant: omega* = %.7f", e5[0].omega_star);
    ok &= ok4;
    return ok;
}

// --- criterion 2 -----------------------------------------------------------

bool criterion_phase_boundaries() {
    const auto sw = spectrum::sweep_spectrum(ModelSpec::ising(1.0, 0.0, 0.006), 0.01, 0.6, 600);
    std::vector<spectrum::PhaseLabel> seg;
    double first_boundary = -1.0;
    for (size_t i = 0; i < sw.phases.size(); ++i) {
        if (seg.empty() || seg.back() != sw.phases[i]) {
            if (!seg.empty() && first_boundary < 0.0) first_boundary = sw.omegas[i];
            seg.push_back(sw.phases[i]);
        }
    }
    const bool shape = seg.size() == 3 && seg[0] == spectrum::PhaseLabel::PI &&
                       seg[1] == spectrum::PhaseLabel::Mixed && seg[2] == spectrum::PhaseLabel::PTS;
    note("sequence PI -> Mixed -> PTS: %s, PI/Mixed boundary at %.4f", shape ? "yes" : "no", first_boundary);
    return shape && std::abs(first_boundary - 0.25) <= 0.01;
}

// --- criterion 3 -----------------------------------------------------------

bool criterion_dynamics_types() {
    struct Point {
        double omega, xi;
        analysis::DynamicsType want;
    };
    const Point points[] = {
        {0.20, 0.006, analysis::DynamicsType::I},   {0.26, 0.006, analysis::DynamicsType::III},
        {0.40, 0.006, analysis::DynamicsType::II},  {0.30, 0.5, analysis::DynamicsType::II},
        {1.00, 0.5, analysis::DynamicsType::III},   {1.50, 0.5, analysis::DynamicsType::II},
    };
    bool ok = true;
    for (const auto& p : points) {
        const auto traj = ising_run(p.omega, p.xi, 40.0);
        const auto got = analysis::classify_dynamics(traj.times(), traj.concurrence_series());
        if (got != p.want) {
            note("(omega=%.2f, xi=%.3f): got %s, want %s", p.omega, p.xi, analysis::to_string(got).c_str(),
                 analysis::to_string(p.want).c_str());
            ok = false;
        }
    }
    return ok;
}

// --- criterion 4 -----------------------------------------------------------

bool criterion_perturbation() {
    const auto numeric = ising_run(0.3, 0.0006, 40.0);
    const auto times = numeric.times();
    const auto analytic = perturb::analytic_evolution(0.3, 1.0, 0.0006, dynamics::PureState::basis(0), times);
    double sup = 0.0;
    for (size_t i = 0; i < times.size(); ++i)
        sup = std::max(sup, std::abs(numeric.samples[i].concurrence - analytic.samples[i].concurrence));
    auto peak = [](const dynamics::Trajectory& t) {
        double bc = 0.0, bt = 0.0;
        for (const auto& s : t.samples)
            if (s.concurrence > bc) {
                bc = s.concurrence;
                bt = s.t;
            }
        return std::pair{bt, bc};
    };
    const auto [tn, cn] = peak(numeric);
    const auto [ta, ca] = peak(analytic);
    note("sup|C_num - C_ana| = %.4f; peaks: numeric C=%.4f at t=%.2f, analytic C=%.4f at t=%.2f", sup, cn, tn,
         ca, ta);
    return sup <= 0.02 && cn >= 0.99 && ca >= 0.99 && std::abs(tn - 17.17) <= 0.5 && std::abs(ta - 17.17) <= 0.5;
}

// --- criterion 5 -----------------------------------------------------------

bool criterion_lindblad() {
    const double xi = 0.0006, delta_m = 40.0, omega = 0.3;
    model::SpinMechParams p;
    p.n_trunc = 10;
    p.delta_m = delta_m;
    p.g_eff = std::sqrt(xi * delta_m);
    p.kappa = 1.0;
    p.gamma_nv = 1.0;
    p.delta_dg = 0.0;
    dynamics::IntegratorConfig full_cfg;
    full_cfg.t_max = 40.0;
    full_cfg.dt = 2e-3;
    full_cfg.sample_every = 50;
    CMatrix rho0(4 * p.n_trunc);
    rho0(0, 0) = 1.0;
    const auto full = dynamics::evolve_lindblad(build_rabi_h(p, omega),
                                                build_collapse_ops(p, model::CollapseSet::full), rho0, full_cfg,
                                                p.n_trunc);
    dynamics::IntegratorConfig eff_cfg;
    eff_cfg.t_max = 40.0;
    eff_cfg.dt = 1e-3;
    eff_cfg.sample_every = 100;
    const auto eff = dynamics::evolve_lindblad(model::build_effective_h(xi, omega),
                                               build_collapse_ops(p, model::CollapseSet::effective),
                                               projector_aa(), eff_cfg);
    const size_t n = std::min(full.samples.size(), eff.samples.size());
    double sup = 0.0, sup_pop = 0.0, cmax = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sup = std::max(sup, std::abs(full.samples[i].concurrence - eff.samples[i].concurrence));
        cmax = std::max({cmax, full.samples[i].concurrence, eff.samples[i].concurrence});
        for (int q = 0; q < 4; ++q)
            sup_pop = std::max(sup_pop, std::abs(full.samples[i].populations[q] - eff.samples[i].populations[q]));
    }
    note("sup|C_full - C_eff| = %.2e (max C on either side: %.2e)", sup, cmax);
    note("population sup difference: %.2e (substantive agreement; the jump terms keep", sup_pop);
    note("these states separable, so the concurrence criterion is met at zero)");
    return sup <= 0.05;
}

// --- criterion 6 -----------------------------------------------------------

bool criterion_drive_free() {
    bool ok = true;
    for (double xi = -0.6; xi <= -0.25 + 1e-12; xi += 1e-3) {
        const auto [ep, em] = entangle::nodrive_eigen_concurrence(xi, 1.0);
        if (std::abs(ep - 1.0) > 1e-12 || std::abs(em - 1.0) > 1e-12) {
            ok = false;
            note("eps saturation violated at xi=%.4f", xi);
            break;
        }
    }
    const auto [eh, el] = entangle::nodrive_eigen_concurrence(-0.125, 1.0);
    if (std::abs(eh - 0.5) > 1e-6 || std::abs(el - 0.5) > 1e-6) ok = false;
    note("eps(-gamma/8) = (%.8f, %.8f)", eh, el);
    const cplx gap = entangle::energy_gap(-0.5, 1.0);
    if (std::abs(gap - cplx(std::sqrt(3.0))) > 1e-12) ok = false;
    note("E_g(-gamma/2) = %.12f", gap.real());

    const double h = 1e-3;
    std::vector<double> xs, eps_series;
    for (double xi = -0.5; xi <= -0.01 + 1e-12; xi += h) {
        xs.push_back(xi);
        eps_series.push_back(entangle::nodrive_eigen_concurrence(xi, 1.0).first);
    }
    const auto scan = analysis::derivative_scan(xs, eps_series);
    int flags = 0;
    double where = 0.0;
    for (size_t i = 0; i < scan.discontinuity.size(); ++i)
        if (scan.discontinuity[i]) {
            ++flags;
            where = xs[i];
        }
    note("derivative scan: %d discontinuity at xi=%.4f", flags, where);
    return ok && flags == 1 && std::abs(where - (-0.25)) <= h + 1e-12;
}

// --- criterion 7 -----------------------------------------------------------

bool criterion_steady_state_timing() {
    auto settle = [](double omega) {
        const auto traj = ising_run(omega, 0.006, 40.0);
        return analysis::steady_state_time(traj.times(), traj.concurrence_series(), 0.02).t;
    };
    const double t10 = settle(0.10), t17 = settle(0.17), t24 = settle(0.24);
    const double t26 = settle(0.26), t28 = settle(0.28);
    note("PI: T(0.10)=%.2f < T(0.17)=%.2f < T(0.24)=%.2f; mixed: T(0.26)=%.2f < T(0.28)=%.2f", t10, t17, t24,
         t26, t28);
    return t10 < t17 && t17 < t24 && t26 < t28;
}

// --- criterion 8 -----------------------------------------------------------

bool criterion_envelopes() {
    // t_max = 100 so both envelopes collect enough extrema (40/gamma leaves
    // the weak case with a single trough)
    const auto weak = ising_run(0.26, 0.006, 100.0);
    const auto fw = analysis::fit_envelope(weak.times(), weak.concurrence_series());
    const auto strong = ising_run(1.0, 0.5, 100.0);
    const auto fs = analysis::fit_envelope(strong.times(), strong.concurrence_series());
    if (!fw.gamma_up || !fw.gamma_low || !fs.gamma_up || !fs.gamma_low) {
        note("envelope fit undefined");
        return false;
    }
    note("weak (0.26, 0.006):  gamma_up=%.4f gamma_low=%.4f", *fw.gamma_up, *fw.gamma_low);
    note("strong (1.0, 0.5):   gamma_up=%.4f gamma_low=%.4f", *fs.gamma_up, *fs.gamma_low);
    return *fw.gamma_up > *fw.gamma_low && *fs.gamma_up < *fs.gamma_low;
}

// --- criterion 9 -----------------------------------------------------------

bool criterion_property_suites() {
    bool ok = true;
    std::mt19937_64 gen(20240817ull);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);

    // pure/mixed concurrence equality
    double worst_c = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        CVec psi(4);
        for (auto& z : psi) z = cplx(nd(gen), nd(gen));
        normalize(psi);
        CMatrix rho(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
        worst_c = std::max(worst_c, std::abs(entangle::concurrence_mixed(rho) - entangle::concurrence_pure(psi)));
    }
    note("pure/mixed concurrence worst deviation: %.2e (<= 1e-9)", worst_c);
    ok &= worst_c <= 1e-9;

    // eigensolver residuals
    double worst_r = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        CMatrix m(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = cplx(ud(gen), ud(gen));
        const auto es = eigensystem(m);
        for (int i = 0; i < 4; ++i)
            if (!es.defective[i]) worst_r = std::max(worst_r, es.residuals[i] / m.fro_norm());
    }
    note("eigenpair residual worst: %.2e (<= 1e-10 relative)", worst_r);
    ok &= worst_r <= 1e-10;

    // biorthogonality defect halving
    std::array<double, 3> defect{};
    const std::array<double, 3> xis = {1e-3, 5e-4, 2.5e-4};
    for (int k = 0; k < 3; ++k) {
        const auto ps = perturb::perturbed_system(0.3, 1.0, xis[k]);
        const std::array<const std::array<cplx, 4>*, 4> st = {&ps.psi_mm, &ps.psi_pp, &ps.psi_1, &ps.psi_2};
        const std::array<const std::array<cplx, 4>*, 4> br = {&ps.bar_mm, &ps.bar_pp, &ps.bar_1, &ps.bar_2};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                cplx ov = 0.0;
                for (int n = 0; n < 4; ++n) ov += std::conj((*br[i])[n]) * (*st[j])[n];
                defect[k] = std::max(defect[k], std::abs(ov - (i == j ? 1.0 : 0.0)));
            }
    }
    const double r1 = defect[0] / defect[1], r2 = defect[1] / defect[2];
    note("biorthogonality defect halving ratios: %.2f, %.2f (4 +- 0.5)", r1, r2);
    ok &= r1 > 3.5 && r1 < 4.5 && r2 > 3.5 && r2 < 4.5;

    // trace monotonicity of the no-jump equation
    bool monotone = true;
    for (double omega : {0.1, 0.26, 0.4}) {
        const auto traj = ising_run(omega, 0.006, 40.0);
        for (size_t i = 1; i < traj.samples.size(); ++i)
            if (traj.samples[i].trace > traj.samples[i - 1].trace * (1.0 + 1e-9)) monotone = false;
    }
    note("trace monotonicity: %s", monotone ? "holds at every sample" : "violated");
    ok &= monotone;

    // step-halving convergence
    const auto coarse = ising_run(0.3, 0.006, 10.0, 1e-3, 100);
    const auto fine = ising_run(0.3, 0.006, 10.0, 5e-4, 200);
    double worst_h = 0.0;
    for (size_t i = 0; i < coarse.samples.size(); ++i) {
        worst_h = std::max(worst_h, std::abs(coarse.samples[i].concurrence - fine.samples[i].concurrence));
        for (int p = 0; p < 4; ++p)
            worst_h = std::max(worst_h,
                               std::abs(coarse.samples[i].populations[p] - fine.samples[i].populations[p]));
    }
    note("step-halving observable change: %.2e (<= 1e-6)", worst_h);
    ok &= worst_h <= 1e-6;
    return ok;
}

} // namespace

int main() {
    std::printf("acceptance suite: two coupled dissipative qubits\n");
    report("1. exceptional-point landmarks", criterion_ep_landmarks());
    report("2. weak-coupling phase boundaries", criterion_phase_boundaries());
    report("3. dynamics-type matrix", criterion_dynamics_types());
    report("4. first-order theory vs numerics", criterion_perturbation());
    report("5. full vs reduced master equation", criterion_lindblad());
    report("6. drive-free closed forms", criterion_drive_free());
    report("7. steady-state timing order", criterion_steady_state_timing());
    report("8. envelope-rate asymmetry", criterion_envelopes());
    report("9. property suites", criterion_property_suites());
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
