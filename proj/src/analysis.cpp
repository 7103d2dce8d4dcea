#include "nhep/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "nhep/cxla.hpp" // ArgumentError

namespace nhep::analysis {

Extrema detect_extrema(std::span<const double> t, std::span<const double> y) {
    if (y.size() != t.size()) throw ArgumentError("detect_extrema: size mismatch");
    if (y.size() < 5) throw ArgumentError("detect_extrema needs at least 5 samples");

    // merge plateaus of exactly equal consecutive samples
    std::vector<double> tm, ym;
    tm.reserve(t.size());
    ym.reserve(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        if (!ym.empty() && y[i] == ym.back()) continue;
        tm.push_back(t[i]);
        ym.push_back(y[i]);
    }
    Extrema ex;
    for (size_t i = 1; i + 1 < ym.size(); ++i) {
        if (ym[i] > ym[i - 1] && ym[i] > ym[i + 1]) ex.maxima.push_back({tm[i], ym[i]});
        if (ym[i] < ym[i - 1] && ym[i] < ym[i + 1]) ex.minima.push_back({tm[i], ym[i]});
    }
    return ex;
}

namespace {

// least squares y = a + b x; returns (b, rms residual)
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double b = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    const double a = (sy - b * sx) / n;
    double rss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (a + b * x[i]);
        rss += r * r;
    }
    return {b, std::sqrt(rss / n)};
}

double tail_mean(std::span<const double> y) {
    const size_t start = y.size() - std::max<size_t>(1, static_cast<size_t>(y.size() * kTailFraction));
    double s = 0.0;
    for (size_t i = start; i < y.size(); ++i) s += y[i];
    return s / static_cast<double>(y.size() - start);
}

} // namespace

EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> y) {
    const Extrema ex = detect_extrema(t, y);
    EnvelopeFit fit;
    fit.c_inf = tail_mean(y);
    fit.peaks = ex.maxima;
    fit.peaks.insert(fit.peaks.end(), ex.minima.begin(), ex.minima.end());

    double rss = 0.0;
    size_t nres = 0;
    {
        std::vector<double> xs, ys;
        for (const auto& p : ex.maxima)
            if (p.value > fit.c_inf + kNoiseFloor) {
                xs.push_back(p.t);
                ys.push_back(std::log(p.value - fit.c_inf));
            }
        if (xs.size() >= 2) {
            const auto [slope, res] = linear_fit(xs, ys);
            fit.gamma_up = -slope;
            rss += res * res * xs.size();
            nres += xs.size();
        }
    }
    {
        std::vector<double> xs, ys;
        for (const auto& p : ex.minima)
            if (p.value < fit.c_inf - kNoiseFloor) {
                xs.push_back(p.t);
                ys.push_back(std::log(fit.c_inf - p.value));
            }
        if (xs.size() >= 2) {
            const auto [slope, res] = linear_fit(xs, ys);
            fit.gamma_low = -slope;
            rss += res * res * xs.size();
            nres += xs.size();
        }
    }
    fit.fit_residual = nres > 0 ? std::sqrt(rss / static_cast<double>(nres)) : 0.0;
    return fit;
}

std::string to_string(DynamicsType d) {
    switch (d) {
        case DynamicsType::I: return "I";
        case DynamicsType::II: return "II";
        case DynamicsType::III: return "III";
    }
    return "?";
}

DynamicsType classify_dynamics(std::span<const double> t, std::span<const double> y) {
    const Extrema ex = detect_extrema(t, y);
    // only maxima that rise above the plateau by more than the noise floor
    // count as oscillation; a settled series ripples at roundoff level
    const double plateau = tail_mean(y);
    size_t significant = 0;
    for (const auto& m : ex.maxima)
        if (m.value > plateau + kNoiseFloor) ++significant;
    if (significant <= 1) return DynamicsType::I;
    const EnvelopeFit fit = fit_envelope(t, y);
    if (!fit.gamma_up.has_value() || *fit.gamma_up <= kOscTol) return DynamicsType::II;
    return DynamicsType::III;
}

SteadyStateTime steady_state_time(std::span<const double> t, std::span<const double> y, double eps) {
    if (!(eps > 0.0)) throw ArgumentError("steady_state_time requires eps > 0");
    if (t.size() != y.size() || t.empty()) throw ArgumentError("steady_state_time: bad series");
    const double target = tail_mean(y);
    size_t last_bad = t.size(); // index of the last sample outside the band
    for (size_t i = t.size(); i-- > 0;) {
        if (std::abs(y[i] - target) > eps) {
            last_bad = i;
            break;
        }
    }
    if (last_bad == t.size()) return {t.front(), true};
    if (last_bad + 1 >= t.size()) return {t.back(), false};
    return {t[last_bad + 1], true};
}

DerivativeScan derivative_scan(std::span<const double> x, std::span<const double> f) {
    if (x.size() != f.size() || x.size() < 3) throw ArgumentError("derivative_scan: bad series");
    const double h = x[1] - x[0];
    if (!(h > 0.0)) throw ArgumentError("derivative_scan requires an increasing uniform grid");
    DerivativeScan scan;
    const size_t n = x.size();
    scan.slopes.resize(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) scan.slopes[i] = (f[i + 1] - f[i]) / h;
    scan.discontinuity.assign(n, false);

    std::vector<double> jumps(n - 2);
    double max_slope = 0.0;
    for (size_t i = 0; i + 2 < n; ++i) {
        jumps[i] = std::abs(scan.slopes[i + 1] - scan.slopes[i]);
        max_slope = std::max(max_slope, std::abs(scan.slopes[i]));
    }
    std::vector<double> sorted = jumps;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double floor = 1e-12 * std::max(max_slope, 1e-290);
    for (size_t i = 0; i + 2 < n; ++i)
        if (jumps[i] > std::max(10.0 * median, floor)) scan.discontinuity[i + 1] = true;
    return scan;
}

std::optional<EqualPopulationTime> equal_population_time(std::span<const double> t,
                                                         const std::vector<std::vector<double>>& populations) {
    if (populations.empty()) throw ArgumentError("equal_population_time: no populations");
    for (const auto& p : populations)
        if (p.size() != t.size()) throw ArgumentError("equal_population_time: size mismatch");
    double best = std::numeric_limits<double>::infinity();
    size_t best_i = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        double lo = populations[0][i], hi = populations[0][i];
        for (const auto& p : populations) {
            lo = std::min(lo, p[i]);
            hi = std::max(hi, p[i]);
        }
        if (hi - lo < best) {
            best = hi - lo;
            best_i = i;
        }
    }
    if (best >= 0.05) return std::nullopt;
    return EqualPopulationTime{t[best_i], best};
}

} // namespace nhep::analysis
