#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

// Post-processing of sampled series: extremum detection, exponential
// envelope fits, dynamics-type classification, steady-state timing and
// derivative scans.

namespace nhep::analysis {

struct Extremum {
    double t = 0.0;
    double value = 0.0;
};

struct Extrema {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;
};

// Strict three-point local extrema after merging plateaus of consecutive
// equal samples; endpoints excluded. Needs at least 5 samples.
Extrema detect_extrema(std::span<const double> t, std::span<const double> y);

inline constexpr double kOscTol = 0.08;     // II/III split on gamma_up (units gamma)
inline constexpr double kNoiseFloor = 1e-4; // peaks this close to the asymptote are not fit
inline constexpr double kTailFraction = 0.1;

struct EnvelopeFit {
    double c_inf = 0.0;
    std::optional<double> gamma_up;  // decay rate of the upper peak envelope
    std::optional<double> gamma_low; // decay rate of the lower (trough) envelope
    std::vector<Extremum> peaks;     // maxima then minima, in time order per kind
    double fit_residual = 0.0;       // RMS of the log-linear regressions
};

// c_inf = tail mean; gamma_up from a least-squares line through
// ln(peak - c_inf) vs peak time (maxima above the noise floor), gamma_low
// analogously on (c_inf - trough).
EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> y);

enum class DynamicsType { I, II, III };

std::string to_string(DynamicsType d);

// I: at most one maximum (monotone rise to a plateau); II: oscillation with
// an undamped upper envelope (gamma_up <= kOscTol); III: damped oscillation.
DynamicsType classify_dynamics(std::span<const double> t, std::span<const double> y);

struct SteadyStateTime {
    double t = 0.0;
    bool settled = false;
};

// Smallest sampled t with |y(t') - y_final| <= eps for all t' >= t, y_final
// being the tail mean; settled=false (t = t_max) when the band is never
// reached.
SteadyStateTime steady_state_time(std::span<const double> t, std::span<const double> y, double eps = 0.02);

struct DerivativeScan {
    std::vector<double> slopes;     // forward differences, size n-1
    std::vector<bool> discontinuity; // per interior grid point (size n, ends false)
};

// Forward differences on a uniform grid; a discontinuity is flagged where
// the slope jump exceeds 10x the median absolute neighboring jump.
DerivativeScan derivative_scan(std::span<const double> x, std::span<const double> f);

struct EqualPopulationTime {
    double t = 0.0;
    double spread = 0.0;
};

// Earliest time minimizing max_i p_i - min_i p_i; nullopt when the spread
// never drops below 0.05.
std::optional<EqualPopulationTime> equal_population_time(std::span<const double> t,
                                                         const std::vector<std::vector<double>>& populations);

} // namespace nhep::analysis
