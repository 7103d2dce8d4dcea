// nhep: spectra, exceptional points and entanglement dynamics of two coupled
// dissipative qubits. All physical flags are in units of gamma (drive and
// couplings as Omega/gamma, xi/gamma, ...; times as gamma*t); --gamma only
// rescales the printed columns to absolute units.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "nhep/analysis.hpp"
#include "nhep/dynamics.hpp"
#include "nhep/entangle.hpp"
#include "nhep/io.hpp"
#include "nhep/model.hpp"
#include "nhep/perturb.hpp"
#include "nhep/spectrum.hpp"

namespace {

using namespace nhep;

constexpr int kExitOk = 0;
constexpr int kExitComputational = 1;
constexpr int kExitUsage = 2;

struct GlobalOpts {
    int precision = 9;
    int jobs = 1;
    long seed = 0; // accepted for reproducibility contracts; no command draws randomness
    double gamma = 1.0;
    bool verbose = false;
};

struct ModelOpts {
    std::string interaction = "ising";
    double xi = 0.0;
    double g = 0.0;
    std::string variant = "physical";
    // reduced units: the model is built with gamma = 1, except for the
    // Hermitian limit --gamma 0 where the decay is switched off entirely
    double model_gamma = 1.0;
};

model::ModelSpec make_spec(const ModelOpts& m, double omega) {
    if (m.interaction == "ising") return model::ModelSpec::ising(m.model_gamma, omega, m.xi);
    const auto var = m.variant == "as-printed" ? model::DipolarVariant::as_printed : model::DipolarVariant::physical;
    return model::ModelSpec::dipolar(m.model_gamma, omega, m.g, var);
}

void add_model_flags(CLI::App* cmd, ModelOpts& m) {
    cmd->add_option("--interaction", m.interaction, "Coupling type")
        ->check(CLI::IsMember({"ising", "dipolar"}))
        ->capture_default_str();
    cmd->add_option("--xi", m.xi, "Ising coupling strength (units of gamma)");
    cmd->add_option("--g", m.g, "Dipolar coupling strength (units of gamma)");
    cmd->add_option("--dipolar-variant", m.variant, "Dipolar diagonal convention")
        ->check(CLI::IsMember({"physical", "as-printed"}))
        ->capture_default_str();
}

// writes to the file when given, else to stdout
int emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open output file " << out_path << "\n";
        return kExitComputational;
    }
    os << text;
    return kExitOk;
}

dynamics::PureState initial_state(const std::string& name) {
    if (name == "aa") return dynamics::PureState::basis(0);
    if (name == "ab") return dynamics::PureState::basis(1);
    if (name == "ba") return dynamics::PureState::basis(2);
    if (name == "bb") return dynamics::PureState::basis(3);
    if (name == "bell1") return dynamics::PureState::bell_phi_plus();
    throw ArgumentError("unknown initial state: " + name);
}

CMatrix projector(const dynamics::PureState& psi) {
    CMatrix rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho(i, j) = psi.amp[i] * std::conj(psi.amp[j]);
    return rho;
}

int resolve_jobs(const GlobalOpts& g) {
    if (const char* env = std::getenv("NHEP_JOBS")) {
        const int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return std::max(1, g.jobs);
}

dynamics::Trajectory run_evolution(const GlobalOpts& gopts, const ModelOpts& mopts, const std::string& engine,
                                   const std::string& init, double omega, double tmax, double dt,
                                   int sample_every, int n_trunc, double delta_m,
                                   std::optional<double> g_eff, double kappa, double gamma_nv,
                                   double delta_dg) {
    if (gopts.verbose)
        std::cerr << "integrating " << engine << " trajectory to t = " << tmax << " (dt = " << dt << ")\n";
    dynamics::IntegratorConfig cfg;
    cfg.t_max = tmax;
    cfg.dt = dt;
    cfg.sample_every = sample_every;
    const dynamics::PureState psi0 = initial_state(init);

    if (engine == "ode") {
        return dynamics::evolve_density(build_passive_h(make_spec(mopts, omega)), projector(psi0), cfg);
    }
    if (engine == "eigen") {
        std::vector<double> times;
        const long n_steps = std::max<long>(1, std::lround(tmax / dt));
        for (long k = 0; k <= n_steps; k += sample_every) times.push_back(tmax * k / n_steps);
        if ((n_steps % sample_every) != 0) times.push_back(tmax);
        if (times.front() == 0.0) times.erase(times.begin());
        auto traj = dynamics::evolve_pure_eigen(build_passive_h(make_spec(mopts, omega)), psi0,
                                                std::vector<double>(times));
        // prepend the t = 0 sample for a grid matching the ODE engines
        dynamics::TrajectorySample first;
        first.t = 0.0;
        first.trace = 1.0;
        for (int i = 0; i < 4; ++i) first.populations[i] = std::norm(psi0.amp[i]) / (psi0.norm() * psi0.norm());
        first.concurrence = entangle::concurrence_pure(psi0.amp);
        traj.samples.insert(traj.samples.begin(), first);
        return traj;
    }
    if (engine == "lindblad-eff") {
        if (mopts.interaction != "ising") throw ArgumentError("lindblad engines model the Ising realization");
        model::SpinMechParams p;
        p.gamma_nv = gamma_nv;
        return dynamics::evolve_lindblad(model::build_effective_h(mopts.xi, omega),
                                         build_collapse_ops(p, model::CollapseSet::effective), projector(psi0),
                                         cfg);
    }
    if (engine == "lindblad-full") {
        if (mopts.interaction != "ising") throw ArgumentError("lindblad engines model the Ising realization");
        model::SpinMechParams p;
        p.n_trunc = n_trunc;
        p.delta_m = delta_m;
        p.g_eff = g_eff.value_or(std::sqrt(std::abs(mopts.xi) * delta_m));
        p.kappa = kappa;
        p.gamma_nv = gamma_nv;
        p.delta_dg = delta_dg;
        const int dim = 4 * n_trunc;
        CMatrix rho0(dim);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rho0(i * n_trunc, j * n_trunc) = psi0.amp[i] * std::conj(psi0.amp[j]);
        return dynamics::evolve_lindblad(build_rabi_h(p, omega), build_collapse_ops(p, model::CollapseSet::full),
                                         rho0, cfg, n_trunc);
    }
    throw ArgumentError("unknown engine: " + engine);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra, exceptional points and entanglement dynamics of two coupled dissipative qubits"};
    app.require_subcommand(1);

    GlobalOpts gopts;
    app.add_option("--precision", gopts.precision, "Significant digits in numeric output")
        ->check(CLI::Range(6, 17))
        ->capture_default_str();
    app.add_option("--jobs", gopts.jobs, "Worker threads for sweeps (env NHEP_JOBS overrides)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", gopts.seed, "Seed recorded for reproducibility")->capture_default_str();
    app.add_option("--gamma", gopts.gamma, "Decay rate used to rescale printed units")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_flag("--verbose", gopts.verbose, "Chatty progress on stderr");

    // spectrum
    auto* c_spectrum = app.add_subcommand("spectrum", "Sweep the PT spectrum over the drive amplitude");
    ModelOpts m_spectrum;
    double sp_lo = 0.01, sp_hi = 0.6;
    int sp_steps = 600;
    std::string sp_out;
    add_model_flags(c_spectrum, m_spectrum);
    c_spectrum->add_option("--omega-min", sp_lo)->capture_default_str();
    c_spectrum->add_option("--omega-max", sp_hi)->capture_default_str();
    c_spectrum->add_option("--steps", sp_steps)->capture_default_str();
    c_spectrum->add_option("--out", sp_out, "Output CSV (stdout when empty)");

    // find-ep
    auto* c_findep = app.add_subcommand("find-ep", "Locate exceptional points in a drive window");
    ModelOpts m_findep;
    double fe_lo = 0.01, fe_hi = 0.6;
    int fe_steps = 400;
    std::string fe_out;
    add_model_flags(c_findep, m_findep);
    c_findep->add_option("--omega-min", fe_lo)->capture_default_str();
    c_findep->add_option("--omega-max", fe_hi)->capture_default_str();
    c_findep->add_option("--coarse-steps", fe_steps)->capture_default_str();
    c_findep->add_option("--out", fe_out, "Output JSON (stdout when empty)");

    // evolve / classify share flags
    ModelOpts m_evolve, m_classify;
    struct EvolveOpts {
        double omega = 0.3, tmax = 40.0, dt = 1e-3;
        int sample_every = 10;
        std::string init = "aa";
        std::string engine = "ode";
        int n_trunc = 10;
        double delta_m = 40.0, kappa = 1.0, gamma_nv = 1.0, delta_dg = 0.0;
        std::optional<double> g_eff;
        std::string out;
    } ev, cl;
    auto add_evolve_flags = [](CLI::App* cmd, ModelOpts& m, EvolveOpts& e) {
        add_model_flags(cmd, m);
        cmd->add_option("--omega", e.omega, "Drive amplitude (units of gamma)")->capture_default_str();
        cmd->add_option("--tmax", e.tmax)->capture_default_str();
        cmd->add_option("--dt", e.dt)->capture_default_str();
        cmd->add_option("--sample-every", e.sample_every)->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--init", e.init)->check(CLI::IsMember({"aa", "ab", "ba", "bb", "bell1"}))
            ->capture_default_str();
        cmd->add_option("--engine", e.engine)
            ->check(CLI::IsMember({"ode", "eigen", "lindblad-full", "lindblad-eff"}))
            ->capture_default_str();
        cmd->add_option("--n-trunc", e.n_trunc, "Fock cutoff (lindblad-full)")->check(CLI::Range(2, 64));
        cmd->add_option("--delta-m", e.delta_m, "Oscillator detuning (lindblad-full)");
        cmd->add_option("--g-eff", e.g_eff, "Qubit-oscillator coupling (lindblad-full)");
        cmd->add_option("--kappa", e.kappa, "Oscillator decay (lindblad-full)");
        cmd->add_option("--gamma-nv", e.gamma_nv, "Qubit decay in the Lindblad engines");
        cmd->add_option("--delta-dg", e.delta_dg, "Dressed splitting (lindblad-full)");
        cmd->add_option("--out", e.out, "Output (stdout when empty)");
    };
    auto* c_evolve = app.add_subcommand("evolve", "Integrate one trajectory and emit it as CSV");
    add_evolve_flags(c_evolve, m_evolve, ev);
    auto* c_classify = app.add_subcommand("classify", "Classify the entanglement dynamics type");
    add_evolve_flags(c_classify, m_classify, cl);

    // perturb-compare
    auto* c_perturb = app.add_subcommand("perturb-compare", "First-order closed form vs numeric evolution");
    double pc_omega = 0.3, pc_xi = 0.0006, pc_tmax = 40.0, pc_dt = 1e-3;
    int pc_sample = 10;
    std::string pc_out;
    c_perturb->add_option("--omega", pc_omega)->capture_default_str();
    c_perturb->add_option("--xi", pc_xi)->capture_default_str();
    c_perturb->add_option("--tmax", pc_tmax)->capture_default_str();
    c_perturb->add_option("--dt", pc_dt)->capture_default_str();
    c_perturb->add_option("--sample-every", pc_sample)->check(CLI::PositiveNumber)->capture_default_str();
    c_perturb->add_option("--out", pc_out);

    // lindblad-compare
    auto* c_lind = app.add_subcommand("lindblad-compare", "Full spin-mechanical vs reduced master equation");
    double lc_omega = 0.3, lc_xi = 0.0006, lc_delta_m = 40.0, lc_tmax = 40.0, lc_dt = 2e-3;
    double lc_kappa = 1.0, lc_gamma_nv = 1.0, lc_delta_dg = 0.0;
    std::optional<double> lc_g_eff;
    int lc_ntrunc = 10, lc_sample = 50;
    std::string lc_out;
    c_lind->add_option("--omega", lc_omega)->capture_default_str();
    c_lind->add_option("--xi", lc_xi)->capture_default_str();
    c_lind->add_option("--delta-m", lc_delta_m)->capture_default_str();
    c_lind->add_option("--g-eff", lc_g_eff, "Defaults to sqrt(xi delta_m)");
    c_lind->add_option("--n-trunc", lc_ntrunc)->check(CLI::Range(2, 64))->capture_default_str();
    c_lind->add_option("--kappa", lc_kappa)->capture_default_str();
    c_lind->add_option("--gamma-nv", lc_gamma_nv)->capture_default_str();
    c_lind->add_option("--delta-dg", lc_delta_dg)->capture_default_str();
    c_lind->add_option("--tmax", lc_tmax)->capture_default_str();
    c_lind->add_option("--dt", lc_dt)->capture_default_str();
    c_lind->add_option("--sample-every", lc_sample)->check(CLI::PositiveNumber)->capture_default_str();
    c_lind->add_option("--out", lc_out);

    // nodrive
    auto* c_nodrive = app.add_subcommand("nodrive", "Drive-free dynamics and eigenstate entanglement");
    double nd_xi = -0.5, nd_tmax = 10.0, nd_dt = 1e-3;
    int nd_sample = 10, nd_steps = 200;
    bool nd_scan = false;
    double nd_lo = -0.5, nd_hi = -0.01;
    std::string nd_out;
    c_nodrive->add_option("--xi", nd_xi)->capture_default_str();
    c_nodrive->add_option("--tmax", nd_tmax)->capture_default_str();
    c_nodrive->add_option("--dt", nd_dt)->capture_default_str();
    c_nodrive->add_option("--sample-every", nd_sample)->check(CLI::PositiveNumber)->capture_default_str();
    c_nodrive->add_flag("--scan", nd_scan, "Sweep xi and emit the closed forms");
    c_nodrive->add_option("--xi-min", nd_lo)->capture_default_str();
    c_nodrive->add_option("--xi-max", nd_hi)->capture_default_str();
    c_nodrive->add_option("--steps", nd_steps)->capture_default_str();
    c_nodrive->add_option("--out", nd_out);

    // eigenstate-concurrence
    auto* c_eigc = app.add_subcommand("eigenstate-concurrence", "Branch-resolved eigenstate concurrence sweep");
    ModelOpts m_eigc;
    double ec_lo = 0.01, ec_hi = 0.6;
    int ec_steps = 300;
    std::string ec_out;
    add_model_flags(c_eigc, m_eigc);
    c_eigc->add_option("--omega-min", ec_lo)->capture_default_str();
    c_eigc->add_option("--omega-max", ec_hi)->capture_default_str();
    c_eigc->add_option("--steps", ec_steps)->capture_default_str();
    c_eigc->add_option("--out", ec_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    const double gscale = gopts.gamma > 0.0 ? gopts.gamma : 1.0;
    const int jobs = resolve_jobs(gopts);
    const double model_gamma = gopts.gamma == 0.0 ? 0.0 : 1.0;
    for (ModelOpts* m : {&m_spectrum, &m_findep, &m_evolve, &m_classify, &m_eigc}) m->model_gamma = model_gamma;

    // oscillator flags only make sense for the full spin-mechanical engine
    for (auto [cmd, opts] : {std::pair{c_evolve, &ev}, {c_classify, &cl}}) {
        if (cmd->parsed() && opts->engine != "lindblad-full") {
            for (const char* flag : {"--n-trunc", "--delta-m", "--g-eff", "--kappa", "--delta-dg"}) {
                if (cmd->count(flag) > 0) {
                    std::cerr << "error: " << flag << " requires --engine lindblad-full\n";
                    return kExitUsage;
                }
            }
        }
    }

    try {
        if (c_spectrum->parsed()) {
            if (sp_steps < 2 || !(sp_lo < sp_hi)) {
                std::cerr << "error: need omega-min < omega-max and at least 2 steps\n";
                return kExitUsage;
            }
            const auto sweep = spectrum::sweep_spectrum(make_spec(m_spectrum, 0.0), sp_lo, sp_hi, sp_steps, jobs);
            std::ostringstream os;
            io::write_sweep_csv(os, sweep, gopts.precision, gscale);
            return emit(sp_out, os.str());
        }
        if (c_findep->parsed()) {
            if (fe_steps < 8 || !(fe_lo < fe_hi)) {
                std::cerr << "error: need omega-min < omega-max and at least 8 coarse steps\n";
                return kExitUsage;
            }
            const auto spec = make_spec(m_findep, 0.0);
            if (gopts.verbose)
                std::cerr << "scanning " << fe_steps << " grid points on [" << fe_lo << ", " << fe_hi << "]\n";
            const auto eps = spectrum::find_eps(spec, fe_lo, fe_hi, fe_steps, jobs);
            if (gopts.verbose) std::cerr << "found " << eps.size() << " candidate coalescence(s)\n";
            return emit(fe_out, io::ep_report_json(spec, eps) + "\n");
        }
        if (c_evolve->parsed()) {
            const auto traj = run_evolution(gopts, m_evolve, ev.engine, ev.init, ev.omega, ev.tmax, ev.dt,
                                            ev.sample_every, ev.n_trunc, ev.delta_m, ev.g_eff, ev.kappa,
                                            ev.gamma_nv, ev.delta_dg);
            std::ostringstream os;
            io::write_trajectory_csv(os, traj, gopts.precision, gscale);
            return emit(ev.out, os.str());
        }
        if (c_classify->parsed()) {
            const auto traj = run_evolution(gopts, m_classify, cl.engine, cl.init, cl.omega, cl.tmax, cl.dt,
                                            cl.sample_every, cl.n_trunc, cl.delta_m, cl.g_eff, cl.kappa,
                                            cl.gamma_nv, cl.delta_dg);
            const auto t = traj.times();
            const auto c = traj.concurrence_series();
            const auto type = analysis::classify_dynamics(t, c);
            const auto fit = analysis::fit_envelope(t, c);
            return emit(cl.out, io::classify_json(type, fit) + "\n");
        }
        if (c_perturb->parsed()) {
            if (perturb::branch_of(pc_omega, 1.0) != perturb::PtBranch::PTS) {
                std::cerr << "error: analytic path defined in PTS only\n";
                return kExitUsage;
            }
            dynamics::IntegratorConfig cfg;
            cfg.t_max = pc_tmax;
            cfg.dt = pc_dt;
            cfg.sample_every = pc_sample;
            const auto numeric = dynamics::evolve_density(
                build_passive_h(model::ModelSpec::ising(1.0, pc_omega, pc_xi)),
                projector(dynamics::PureState::basis(0)), cfg);
            const auto times = numeric.times();
            const auto analytic =
                perturb::analytic_evolution(pc_omega, 1.0, pc_xi, dynamics::PureState::basis(0), times);
            std::vector<double> cn = numeric.concurrence_series();
            std::vector<double> ca = analytic.concurrence_series();
            double sup = 0.0;
            for (size_t i = 0; i < cn.size(); ++i) sup = std::max(sup, std::abs(cn[i] - ca[i]));
            std::ostringstream os;
            io::write_compare_csv(os, times, cn, ca, "c_numeric", "c_analytic", gopts.precision, gscale);
            const int rc = emit(pc_out, os.str());
            std::cout << "sup_error=" << io::format_number(sup, gopts.precision) << "\n";
            return rc;
        }
        if (c_lind->parsed()) {
            model::SpinMechParams p;
            p.n_trunc = lc_ntrunc;
            p.delta_m = lc_delta_m;
            p.g_eff = lc_g_eff.value_or(std::sqrt(std::abs(lc_xi) * lc_delta_m));
            p.kappa = lc_kappa;
            p.gamma_nv = lc_gamma_nv;
            p.delta_dg = lc_delta_dg;
            dynamics::IntegratorConfig full_cfg;
            full_cfg.t_max = lc_tmax;
            full_cfg.dt = lc_dt;
            full_cfg.sample_every = lc_sample;
            CMatrix rho0(4 * lc_ntrunc);
            rho0(0, 0) = 1.0; // |aa> x |0>
            const auto full = dynamics::evolve_lindblad(
                build_rabi_h(p, lc_omega), build_collapse_ops(p, model::CollapseSet::full), rho0, full_cfg,
                lc_ntrunc);
            const auto times = full.times();
            // align the reduced-model sampling with the full run
            dynamics::IntegratorConfig eff_cfg = full_cfg;
            eff_cfg.dt = std::min(1e-3, lc_dt);
            const long n_eff = std::max<long>(1, std::lround(lc_tmax / eff_cfg.dt));
            eff_cfg.sample_every =
                std::max<int>(1, static_cast<int>(std::lround((times[1] - times[0]) / (lc_tmax / n_eff))));
            CMatrix rq(4);
            rq(0, 0) = 1.0;
            const auto eff = dynamics::evolve_lindblad(model::build_effective_h(lc_xi, lc_omega),
                                                       build_collapse_ops(p, model::CollapseSet::effective),
                                                       rq, eff_cfg);
            std::vector<double> cf = full.concurrence_series();
            std::vector<double> ce = eff.concurrence_series();
            const size_t n = std::min(cf.size(), ce.size());
            cf.resize(n);
            ce.resize(n);
            std::vector<double> ts(times.begin(), times.begin() + n);
            double sup = 0.0;
            for (size_t i = 0; i < n; ++i) sup = std::max(sup, std::abs(cf[i] - ce[i]));
            std::ostringstream os;
            io::write_compare_csv(os, ts, cf, ce, "c_full", "c_eff", gopts.precision, gscale);
            const int rc = emit(lc_out, os.str());
            std::cout << "sup_error=" << io::format_number(sup, gopts.precision) << "\n";
            return rc;
        }
        if (c_nodrive->parsed()) {
            std::ostringstream os;
            if (nd_scan) {
                if (nd_steps < 2 || !(nd_lo < nd_hi)) {
                    std::cerr << "error: need xi-min < xi-max and at least 2 steps\n";
                    return kExitUsage;
                }
                std::vector<double> xis;
                for (int k = 0; k < nd_steps; ++k)
                    xis.push_back(nd_lo + (nd_hi - nd_lo) * k / (nd_steps - 1));
                io::write_nodrive_scan_csv(os, xis, 1.0, gopts.precision);
            } else {
                dynamics::IntegratorConfig cfg;
                cfg.t_max = nd_tmax;
                cfg.dt = nd_dt;
                cfg.sample_every = nd_sample;
                const auto traj = dynamics::evolve_density(
                    build_passive_h(model::ModelSpec::ising(1.0, 0.0, nd_xi)),
                    projector(dynamics::PureState::basis(3)), cfg);
                io::write_nodrive_csv(os, traj, gopts.precision, gscale);
            }
            return emit(nd_out, os.str());
        }
        if (c_eigc->parsed()) {
            if (ec_steps < 2 || !(ec_lo < ec_hi)) {
                std::cerr << "error: need omega-min < omega-max and at least 2 steps\n";
                return kExitUsage;
            }
            const auto series = entangle::eigenstate_concurrence_sweep(make_spec(m_eigc, 0.0), ec_lo, ec_hi, ec_steps);
            std::ostringstream os;
            io::write_eigenstate_csv(os, series, gopts.precision);
            return emit(ec_out, os.str());
        }
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const perturb::BranchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dynamics::EpDegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputational;
    } catch (const perturb::ConstructionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputational;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputational;
    } catch (const dynamics::IntegrationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputational;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputational;
    }
    return kExitOk;
}
