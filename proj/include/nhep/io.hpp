#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nhep/analysis.hpp"
#include "nhep/dynamics.hpp"
#include "nhep/entangle.hpp"
#include "nhep/model.hpp"
#include "nhep/spectrum.hpp"

// Deterministic emission of the file formats the front end speaks: CSV with
// a fixed significant-digit count and '.' decimal separator, plus the JSON
// report shapes.

namespace nhep::io {

// %.{precision}g, locale independent
std::string format_number(double v, int precision);

// columns: omega, re_l1..re_l4, im_l1..im_l4, phase
void write_sweep_csv(std::ostream& os, const spectrum::SpectrumSweep& sweep, int precision,
                     double gamma_scale = 1.0);

// columns: t, c, p_aa, p_ab, p_ba, p_bb, trace
void write_trajectory_csv(std::ostream& os, const dynamics::Trajectory& traj, int precision,
                          double gamma_scale = 1.0);

// columns: t, p_bb, c
void write_nodrive_csv(std::ostream& os, const dynamics::Trajectory& traj, int precision,
                       double gamma_scale = 1.0);

// columns: xi, eps_plus, eps_minus, re_gap, im_gap
void write_nodrive_scan_csv(std::ostream& os, const std::vector<double>& xis, double gamma, int precision);

// columns: omega, c_1..c_4 (nan marks skipped points)
void write_eigenstate_csv(std::ostream& os, const std::vector<entangle::ConcurrenceSeries>& series,
                          int precision);

// columns: t, <label_a>, <label_b>, abs_err
void write_compare_csv(std::ostream& os, const std::vector<double>& t, const std::vector<double>& a,
                       const std::vector<double>& b, const std::string& label_a, const std::string& label_b,
                       int precision, double gamma_scale = 1.0);

std::string ep_report_json(const model::ModelSpec& spec, const std::vector<spectrum::EPRecord>& eps);

std::string classify_json(analysis::DynamicsType type, const analysis::EnvelopeFit& fit);

} // namespace nhep::io
