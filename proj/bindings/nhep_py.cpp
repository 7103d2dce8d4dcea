#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nhep/analysis.hpp"
#include "nhep/dynamics.hpp"
#include "nhep/entangle.hpp"
#include "nhep/model.hpp"
#include "nhep/perturb.hpp"
#include "nhep/spectrum.hpp"

namespace py = pybind11;
using namespace nhep;

namespace {

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CMatrix to_matrix(const carray& a) {
    const auto buf = a.request();
    if (buf.ndim != 2 || buf.shape[0] != buf.shape[1]) throw ArgumentError("expected a square matrix");
    const int n = static_cast<int>(buf.shape[0]);
    CMatrix m(n);
    const cplx* p = static_cast<const cplx*>(buf.ptr);
    std::copy(p, p + static_cast<size_t>(n) * n, m.data().begin());
    return m;
}

py::array from_matrix(const CMatrix& m) {
    const int n = m.dim();
    py::array_t<cplx> a({n, n});
    std::copy(m.data().begin(), m.data().end(), static_cast<cplx*>(a.request().ptr));
    return a;
}

dynamics::PureState to_state(const std::vector<cplx>& amp) {
    if (amp.size() != 4) throw ArgumentError("expected a 4-component state");
    dynamics::PureState s;
    std::copy(amp.begin(), amp.end(), s.amp.begin());
    return s;
}

py::dict trajectory_dict(const dynamics::Trajectory& traj) {
    const size_t n = traj.samples.size();
    py::array_t<double> t(n), c(n), trace(n);
    py::array_t<double> pops({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(4)});
    auto* tp = static_cast<double*>(t.request().ptr);
    auto* cp = static_cast<double*>(c.request().ptr);
    auto* rp = static_cast<double*>(trace.request().ptr);
    auto* pp = static_cast<double*>(pops.request().ptr);
    for (size_t i = 0; i < n; ++i) {
        tp[i] = traj.samples[i].t;
        cp[i] = traj.samples[i].concurrence;
        rp[i] = traj.samples[i].trace;
        for (int q = 0; q < 4; ++q) pp[i * 4 + q] = traj.samples[i].populations[q];
    }
    py::dict d;
    d["t"] = t;
    d["concurrence"] = c;
    d["trace"] = trace;
    d["populations"] = pops;
    return d;
}

dynamics::IntegratorConfig make_config(double t_max, double dt, int sample_every) {
    dynamics::IntegratorConfig cfg;
    cfg.t_max = t_max;
    cfg.dt = dt;
    cfg.sample_every = sample_every;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectra, exceptional points and entanglement dynamics of two coupled dissipative qubits";

    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<dynamics::EpDegenerateError>(m, "EpDegenerateError", PyExc_RuntimeError);
    py::register_exception<perturb::BranchError>(m, "BranchError", PyExc_ValueError);

    py::class_<model::ModelSpec>(m, "ModelSpec")
        .def_static("ising", &model::ModelSpec::ising, py::arg("gamma"), py::arg("omega"), py::arg("xi"))
        .def_static(
            "dipolar",
            [](double gamma, double omega, double g, const std::string& variant) {
                return model::ModelSpec::dipolar(gamma, omega, g,
                                                 variant == "as-printed" ? model::DipolarVariant::as_printed
                                                                         : model::DipolarVariant::physical);
            },
            py::arg("gamma"), py::arg("omega"), py::arg("g"), py::arg("variant") = "physical")
        .def("with_omega", &model::ModelSpec::with_omega)
        .def("to_json", &model::ModelSpec::to_json)
        .def_static("from_json", &model::ModelSpec::from_json);

    m.def("build_passive_h", [](const model::ModelSpec& s) { return from_matrix(build_passive_h(s)); });
    m.def("shift_to_pt",
          [](const carray& h, double gamma) { return from_matrix(model::shift_to_pt(to_matrix(h), gamma)); });
    m.def("build_nodrive_h2",
          [](double xi, double gamma) { return from_matrix(model::build_nodrive_h2(xi, gamma)); });
    m.def("build_effective_h",
          [](double xi, double omega) { return from_matrix(model::build_effective_h(xi, omega)); });

    m.def("eigensystem", [](const carray& a) {
        const auto es = eigensystem(to_matrix(a));
        py::dict d;
        d["values"] = es.values;
        py::list vecs;
        for (const auto& v : es.right_vectors) vecs.append(v);
        d["right_vectors"] = vecs;
        d["residuals"] = es.residuals;
        d["defective"] = es.defective;
        return d;
    });

    m.def("classify_phase", [](const std::vector<cplx>& vals) {
        return spectrum::to_string(spectrum::classify_phase(vals));
    });

    m.def(
        "sweep_spectrum",
        [](const model::ModelSpec& s, double lo, double hi, int steps, int jobs) {
            const auto sw = spectrum::sweep_spectrum(s, lo, hi, steps, jobs);
            py::dict d;
            d["omega"] = sw.omegas;
            py::list branches;
            for (const auto& b : sw.branches) branches.append(b);
            d["branches"] = branches;
            py::list phases;
            for (const auto p : sw.phases) phases.append(spectrum::to_string(p));
            d["phases"] = phases;
            return d;
        },
        py::arg("spec"), py::arg("omega_min"), py::arg("omega_max"), py::arg("steps"), py::arg("jobs") = 1);

    m.def(
        "find_eps",
        [](const model::ModelSpec& s, double lo, double hi, int coarse_steps) {
            py::list out;
            for (const auto& r : spectrum::find_eps(s, lo, hi, coarse_steps)) {
                py::dict d;
                d["omega"] = r.omega_star;
                d["order"] = r.order;
                d["gap"] = r.gap_at_star;
                d["phase_below"] = spectrum::to_string(r.phase_below);
                d["phase_above"] = spectrum::to_string(r.phase_above);
                out.append(d);
            }
            return out;
        },
        py::arg("spec"), py::arg("omega_min"), py::arg("omega_max"), py::arg("coarse_steps") = 400);

    m.def("ep_order", &spectrum::ep_order);

    m.def(
        "evolve_density",
        [](const carray& h, const carray& rho0, double t_max, double dt, int sample_every) {
            return trajectory_dict(
                dynamics::evolve_density(to_matrix(h), to_matrix(rho0), make_config(t_max, dt, sample_every)));
        },
        py::arg("h_passive"), py::arg("rho0"), py::arg("t_max") = 40.0, py::arg("dt") = 1e-3,
        py::arg("sample_every") = 10);

    m.def(
        "evolve_pure_eigen",
        [](const carray& h, const std::vector<cplx>& psi0, const std::vector<double>& times) {
            return trajectory_dict(dynamics::evolve_pure_eigen(to_matrix(h), to_state(psi0), times));
        },
        py::arg("h_passive"), py::arg("psi0"), py::arg("times"));

    m.def(
        "evolve_lindblad",
        [](const carray& h, const std::vector<std::pair<double, carray>>& collapses, const carray& rho0,
           double t_max, double dt, int sample_every, int fock_dim) {
            std::vector<std::pair<double, CMatrix>> ops;
            ops.reserve(collapses.size());
            for (const auto& [rate, op] : collapses) ops.emplace_back(rate, to_matrix(op));
            return trajectory_dict(dynamics::evolve_lindblad(to_matrix(h), ops, to_matrix(rho0),
                                                             make_config(t_max, dt, sample_every), fock_dim));
        },
        py::arg("h"), py::arg("collapses"), py::arg("rho0"), py::arg("t_max") = 40.0, py::arg("dt") = 1e-3,
        py::arg("sample_every") = 10, py::arg("fock_dim") = 1);

    m.def("build_rabi_h", [](double delta_m, double g_eff, double delta_dg, int n_trunc, double omega) {
        model::SpinMechParams p;
        p.delta_m = delta_m;
        p.g_eff = g_eff;
        p.delta_dg = delta_dg;
        p.n_trunc = n_trunc;
        return from_matrix(build_rabi_h(p, omega));
    });
    m.def("build_collapse_ops",
          [](double kappa, double gamma_nv, int n_trunc, const std::string& which) {
              model::SpinMechParams p;
              p.kappa = kappa;
              p.gamma_nv = gamma_nv;
              p.n_trunc = n_trunc;
              const auto ops = build_collapse_ops(
                  p, which == "full" ? model::CollapseSet::full : model::CollapseSet::effective);
              py::list out;
              for (const auto& [rate, op] : ops) out.append(py::make_tuple(rate, from_matrix(op)));
              return out;
          });

    m.def("concurrence_mixed", [](const carray& rho) { return entangle::concurrence_mixed(to_matrix(rho)); });
    m.def("concurrence_pure",
          [](const std::vector<cplx>& psi) { return entangle::concurrence_pure(psi); });
    m.def("nodrive_eigen_concurrence", &entangle::nodrive_eigen_concurrence);
    m.def("energy_gap", &entangle::energy_gap);
    m.def(
        "eigenstate_concurrence_sweep",
        [](const model::ModelSpec& s, double lo, double hi, int steps) {
            py::list out;
            for (const auto& series : entangle::eigenstate_concurrence_sweep(s, lo, hi, steps)) {
                py::dict d;
                d["omega"] = series.grid;
                d["concurrence"] = series.values;
                out.append(d);
            }
            return out;
        },
        py::arg("spec"), py::arg("omega_min"), py::arg("omega_max"), py::arg("steps"));

    m.def("perturbed_eigenvalues", [](double omega, double gamma, double xi) {
        const auto pe = perturb::perturbed_eigenvalues(omega, gamma, xi);
        py::dict d;
        d["lambda_1"] = pe.lambda_1;
        d["lambda_2"] = pe.lambda_2;
        d["lambda_mm"] = pe.lambda_mm;
        d["lambda_pp"] = pe.lambda_pp;
        return d;
    });
    m.def(
        "analytic_evolution",
        [](double omega, double gamma, double xi, const std::vector<cplx>& psi0,
           const std::vector<double>& times) {
            return trajectory_dict(perturb::analytic_evolution(omega, gamma, xi, to_state(psi0), times));
        },
        py::arg("omega"), py::arg("gamma"), py::arg("xi"), py::arg("psi0"), py::arg("times"));
    m.def("bell_projection",
          [](const std::vector<cplx>& psi) { return perturb::bell_projection(to_state(psi)); });

    m.def("classify_dynamics", [](const std::vector<double>& t, const std::vector<double>& c) {
        return analysis::to_string(analysis::classify_dynamics(t, c));
    });
    m.def("fit_envelope", [](const std::vector<double>& t, const std::vector<double>& c) {
        const auto fit = analysis::fit_envelope(t, c);
        py::dict d;
        d["c_inf"] = fit.c_inf;
        d["gamma_up"] = fit.gamma_up ? py::cast(*fit.gamma_up) : py::none();
        d["gamma_low"] = fit.gamma_low ? py::cast(*fit.gamma_low) : py::none();
        d["fit_residual"] = fit.fit_residual;
        return d;
    });
    m.def(
        "steady_state_time",
        [](const std::vector<double>& t, const std::vector<double>& c, double eps) {
            const auto r = analysis::steady_state_time(t, c, eps);
            return py::make_tuple(r.t, r.settled);
        },
        py::arg("t"), py::arg("c"), py::arg("eps") = 0.02);
}
