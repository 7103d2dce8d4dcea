#include "nhep/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace nhep::spectrum {

namespace {

constexpr double kCandidateTol = 0.1;  // relative gap depth that opens a candidate
constexpr double kFlatFloor = 1e-10;   // median gap below this marks a persistent degeneracy

std::vector<cplx> pt_eigenvalues(const model::ModelSpec& spec, double omega) {
    const auto h = model::shift_to_pt(model::build_passive_h(spec.with_omega(omega)), spec.params.gamma);
    return eigenvalues_only(h);
}

// classify in units of gamma, which is what the thresholds assume
PhaseLabel classify_scaled(std::vector<cplx> vals, double gamma) {
    if (gamma > 0.0)
        for (cplx& v : vals) v /= gamma;
    return classify_phase(vals);
}

// all pairwise gaps, ascending
std::array<double, 6> sorted_gaps(const std::vector<cplx>& vals) {
    std::array<double, 6> g{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g[k++] = std::abs(vals[i] - vals[j]);
    std::sort(g.begin(), g.end());
    return g;
}

struct ClusterInfo {
    int order = 1;       // algebraic size if deficient, else 1
    int size = 1;        // raw cluster size
    double diameter = 0.0;
    cplx mean = 0.0;
};

ClusterInfo analyze_cluster(const model::ModelSpec& spec, double omega_star) {
    const auto h = model::shift_to_pt(build_passive_h(spec.with_omega(omega_star)), spec.params.gamma);
    const auto vals = eigenvalues_only(h);
    double scale = 1.0;
    for (const cplx& v : vals) scale = std::max(scale, std::abs(v));
    const double radius = kClusterRadius * scale;

    int bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(vals[i] - vals[j]) < best) {
                best = std::abs(vals[i] - vals[j]);
                bi = i;
                bj = j;
            }

    ClusterInfo info;
    cplx mean = 0.5 * (vals[bi] + vals[bj]);
    std::vector<int> members;
    for (int pass = 0; pass < 4; ++pass) {
        members.clear();
        for (int i = 0; i < 4; ++i)
            if (std::abs(vals[i] - mean) <= radius) members.push_back(i);
        if (members.empty()) break;
        cplx m2 = 0.0;
        for (int i : members) m2 += vals[i];
        m2 /= static_cast<double>(members.size());
        if (std::abs(m2 - mean) < 1e-15) { mean = m2; break; }
        mean = m2;
    }
    if (members.size() < 2) return info;

    info.size = static_cast<int>(members.size());
    info.mean = mean;
    for (int a : members)
        for (int b : members) info.diameter = std::max(info.diameter, std::abs(vals[a] - vals[b]));

    CMatrix shifted = h;
    for (int i = 0; i < 4; ++i) shifted(i, i) -= mean;
    const auto sig = singular_values(shifted);
    const double smax = sig[0];
    // a diagonalizable cluster has one near-null direction per member at the
    // scale of its own diameter, so the deficiency threshold must sit above it
    const double thresh = std::max(kRankTol * smax, 2.0 * info.diameter);
    int nullity = 0;
    for (double s : sig)
        if (smax <= 0.0 || s <= thresh) ++nullity;
    info.order = nullity < info.size ? info.size : 1;
    return info;
}

struct GridEval {
    std::vector<double> omegas;
    std::vector<std::vector<cplx>> vals;
    double scale = 1.0;
};

GridEval evaluate_grid(const model::ModelSpec& base, double lo, double hi, int steps, int jobs) {
    GridEval g;
    g.omegas.resize(steps);
    g.vals.resize(steps);
    for (int k = 0; k < steps; ++k) g.omegas[k] = lo + (hi - lo) * k / (steps - 1);

    auto work = [&](int begin, int end) {
        for (int k = begin; k < end; ++k) g.vals[k] = pt_eigenvalues(base, g.omegas[k]);
    };
    if (jobs <= 1) {
        work(0, steps);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (steps + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            const int begin = t * chunk;
            const int end = std::min(steps, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    double m = 1.0;
    for (const auto& vs : g.vals)
        for (const cplx& v : vs) m = std::max(m, std::abs(v));
    g.scale = m;
    return g;
}

std::array<int, 4> match_branches(const std::vector<cplx>& prev, const std::vector<cplx>& next) {
    std::array<int, 4> best = {0, 1, 2, 3};
    std::array<int, 4> trial = best;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (int b = 0; b < 4; ++b) cost += std::abs(next[trial[b]] - prev[b]);
        if (cost < best_cost) {
            best_cost = cost;
            best = trial;
        }
    } while (std::next_permutation(trial.begin(), trial.end()));
    return best;
}

} // namespace

std::string to_string(PhaseLabel p) {
    switch (p) {
        case PhaseLabel::PI: return "PI";
        case PhaseLabel::Mixed: return "Mixed";
        case PhaseLabel::PTS: return "PTS";
    }
    return "?";
}

PhaseLabel classify_phase(std::span<const cplx> vals, double tol, double re_tol) {
    if (vals.empty()) throw ArgumentError("classify_phase requires at least one eigenvalue");
    if (!(tol > 0.0) || !(re_tol > 0.0)) throw ArgumentError("classify_phase requires tol > 0");
    double scale = 1.0;
    for (const cplx& v : vals) scale = std::max(scale, std::abs(v));
    bool all_real = true, imag_like = true;
    for (const cplx& v : vals) {
        const bool on_real_axis = std::abs(v.imag()) <= tol * scale;
        if (!on_real_axis) all_real = false;
        // PI tolerates the O(coupling) real offsets the interaction puts on
        // the spectrum: broken pairs must sit near the imaginary axis, and
        // any real-axis (unbroken) eigenvalue must stay a small shift, not a
        // split branch
        if (on_real_axis) {
            if (std::abs(v.real()) > kPhaseRealAxisTol) imag_like = false;
        } else {
            if (std::abs(v.real()) > re_tol) imag_like = false;
        }
    }
    if (all_real) return PhaseLabel::PTS;
    if (imag_like) return PhaseLabel::PI;
    return PhaseLabel::Mixed;
}

SpectrumSweep sweep_spectrum(const model::ModelSpec& base, double omega_lo, double omega_hi,
                             int steps, int jobs) {
    if (!(omega_lo < omega_hi)) throw ArgumentError("sweep requires omega_lo < omega_hi");
    if (steps < 2) throw ArgumentError("sweep requires at least 2 steps");
    const GridEval grid = evaluate_grid(base, omega_lo, omega_hi, steps, jobs);

    SpectrumSweep sw;
    sw.omegas = grid.omegas;
    sw.phases.resize(steps);
    for (auto& b : sw.branches) b.resize(steps);

    std::vector<cplx> prev;
    for (int k = 0; k < steps; ++k) {
        const auto& vals = grid.vals[k];
        sw.phases[k] = classify_scaled(vals, base.params.gamma);
        if (k == 0) {
            for (int b = 0; b < 4; ++b) sw.branches[b][0] = vals[b];
            prev = vals;
        } else {
            const auto perm = match_branches(prev, vals);
            for (int b = 0; b < 4; ++b) {
                sw.branches[b][k] = vals[perm[b]];
                prev[b] = vals[perm[b]];
            }
        }
    }
    return sw;
}

int ep_order(const model::ModelSpec& spec, double omega_star) {
    return analyze_cluster(spec, omega_star).order;
}

std::vector<EPRecord> find_eps(const model::ModelSpec& base, double omega_lo, double omega_hi,
                               int coarse_steps, int jobs) {
    if (!(omega_lo < omega_hi)) throw ArgumentError("find_eps requires omega_lo < omega_hi");
    if (coarse_steps < 8) throw ArgumentError("find_eps requires at least 8 coarse steps");
    const GridEval grid = evaluate_grid(base, omega_lo, omega_hi, coarse_steps, jobs);
    const int n = coarse_steps;

    std::array<std::vector<double>, 2> metric;
    for (int k = 0; k < 2; ++k) metric[k].resize(n);
    for (int i = 0; i < n; ++i) {
        const auto g = sorted_gaps(grid.vals[i]);
        metric[0][i] = g[0];
        metric[1][i] = g[1];
    }

    std::vector<std::pair<int, int>> candidates; // (metric index, grid index)
    for (int k = 0; k < 2; ++k) {
        std::vector<double> sorted = metric[k];
        std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
        const double median = sorted[n / 2];
        if (median < kFlatFloor * grid.scale) continue; // persistent exact degeneracy
        for (int i = 1; i + 1 < n; ++i) {
            if (metric[k][i] < metric[k][i - 1] && metric[k][i] <= metric[k][i + 1] &&
                metric[k][i] < kCandidateTol * grid.scale)
                candidates.emplace_back(k, i);
        }
    }

    auto gap_at = [&](double omega, int k) {
        return sorted_gaps(pt_eigenvalues(base, omega))[k];
    };

    std::vector<EPRecord> records;
    const double phase_delta = std::max(1e-6, 5e-4 * (omega_hi - omega_lo));
    for (const auto& [k, i] : candidates) {
        double lo = grid.omegas[i - 1];
        double hi = grid.omegas[i + 1];
        while (hi - lo > kRefineWidth) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (gap_at(m1, k) < gap_at(m2, k))
                hi = m2;
            else
                lo = m1;
        }
        const double omega_star = 0.5 * (lo + hi);
        const ClusterInfo info = analyze_cluster(base, omega_star);
        if (info.order < 2) continue;
        EPRecord rec;
        rec.omega_star = omega_star;
        rec.order = info.order;
        rec.gap_at_star = info.diameter;
        rec.phase_below = classify_scaled(pt_eigenvalues(base, std::max(omega_lo, omega_star - phase_delta)), base.params.gamma);
        rec.phase_above = classify_scaled(pt_eigenvalues(base, std::min(omega_hi, omega_star + phase_delta)), base.params.gamma);
        records.push_back(rec);
    }

    std::sort(records.begin(), records.end(),
              [](const EPRecord& a, const EPRecord& b) { return a.omega_star < b.omega_star; });
    std::vector<EPRecord> unique;
    for (const auto& r : records) {
        if (!unique.empty() && std::abs(unique.back().omega_star - r.omega_star) < 1e-6) {
            if (r.order > unique.back().order) unique.back() = r;
            continue;
        }
        unique.push_back(r);
    }
    return unique;
}

} // namespace nhep::spectrum
