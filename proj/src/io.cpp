#include "nhep/io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace nhep::io {

std::string format_number(double v, int precision) {
    if (std::isnan(v)) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const spectrum::SpectrumSweep& sweep, int precision,
                     double gamma_scale) {
    os << "omega,re_l1,re_l2,re_l3,re_l4,im_l1,im_l2,im_l3,im_l4,phase\n";
    for (size_t k = 0; k < sweep.omegas.size(); ++k) {
        os << format_number(sweep.omegas[k] * gamma_scale, precision);
        for (int b = 0; b < 4; ++b)
            os << ',' << format_number(sweep.branches[b][k].real() * gamma_scale, precision);
        for (int b = 0; b < 4; ++b)
            os << ',' << format_number(sweep.branches[b][k].imag() * gamma_scale, precision);
        os << ',' << spectrum::to_string(sweep.phases[k]) << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const dynamics::Trajectory& traj, int precision,
                          double gamma_scale) {
    os << "t,c,p_aa,p_ab,p_ba,p_bb,trace\n";
    for (const auto& s : traj.samples) {
        os << format_number(s.t / gamma_scale, precision) << ',' << format_number(s.concurrence, precision);
        for (int i = 0; i < 4; ++i) os << ',' << format_number(s.populations[i], precision);
        os << ',' << format_number(s.trace, precision) << '\n';
    }
}

void write_nodrive_csv(std::ostream& os, const dynamics::Trajectory& traj, int precision,
                       double gamma_scale) {
    os << "t,p_bb,c\n";
    for (const auto& s : traj.samples)
        os << format_number(s.t / gamma_scale, precision) << ',' << format_number(s.populations[3], precision)
           << ',' << format_number(s.concurrence, precision) << '\n';
}

void write_nodrive_scan_csv(std::ostream& os, const std::vector<double>& xis, double gamma, int precision) {
    os << "xi,eps_plus,eps_minus,re_gap,im_gap\n";
    for (const double xi : xis) {
        const auto [ep, em] = entangle::nodrive_eigen_concurrence(xi, gamma);
        const cplx gap = entangle::energy_gap(xi, gamma);
        os << format_number(xi, precision) << ',' << format_number(ep, precision) << ','
           << format_number(em, precision) << ',' << format_number(gap.real(), precision) << ','
           << format_number(gap.imag(), precision) << '\n';
    }
}

void write_eigenstate_csv(std::ostream& os, const std::vector<entangle::ConcurrenceSeries>& series,
                          int precision) {
    os << "omega,c_1,c_2,c_3,c_4\n";
    if (series.empty()) return;
    for (size_t k = 0; k < series[0].grid.size(); ++k) {
        os << format_number(series[0].grid[k], precision);
        for (const auto& s : series) os << ',' << format_number(s.values[k], precision);
        os << '\n';
    }
}

void write_compare_csv(std::ostream& os, const std::vector<double>& t, const std::vector<double>& a,
                       const std::vector<double>& b, const std::string& label_a, const std::string& label_b,
                       int precision, double gamma_scale) {
    os << "t," << label_a << ',' << label_b << ",abs_err\n";
    for (size_t i = 0; i < t.size(); ++i)
        os << format_number(t[i] / gamma_scale, precision) << ',' << format_number(a[i], precision) << ','
           << format_number(b[i], precision) << ',' << format_number(std::abs(a[i] - b[i]), precision)
           << '\n';
}

std::string ep_report_json(const model::ModelSpec& spec, const std::vector<spectrum::EPRecord>& eps) {
    nlohmann::json j;
    j["model"] = nlohmann::json::parse(spec.to_json());
    j["eps"] = nlohmann::json::array();
    for (const auto& r : eps) {
        nlohmann::json e;
        e["omega"] = r.omega_star;
        e["order"] = r.order;
        e["phase_below"] = spectrum::to_string(r.phase_below);
        e["phase_above"] = spectrum::to_string(r.phase_above);
        j["eps"].push_back(e);
    }
    return j.dump(2);
}

std::string classify_json(analysis::DynamicsType type, const analysis::EnvelopeFit& fit) {
    nlohmann::json j;
    j["type"] = analysis::to_string(type);
    if (fit.gamma_up.has_value())
        j["gamma_up"] = *fit.gamma_up;
    else
        j["gamma_up"] = nullptr;
    if (fit.gamma_low.has_value())
        j["gamma_low"] = *fit.gamma_low;
    else
        j["gamma_low"] = nullptr;
    j["c_inf"] = fit.c_inf;
    return j.dump(2);
}

} // namespace nhep::io
