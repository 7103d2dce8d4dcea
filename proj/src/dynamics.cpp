#include "nhep/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

#include "nhep/entangle.hpp"

namespace nhep::dynamics {

namespace {

constexpr double kRenormFloor = 1e-6;

void mul_into(const CMatrix& a, const CMatrix& b, CMatrix& out) {
    const int n = a.dim();
    std::fill(out.data().begin(), out.data().end(), cplx(0.0));
    for (int i = 0; i < n; ++i) {
        const cplx* arow = &a.data()[static_cast<size_t>(i) * n];
        cplx* orow = &out.data()[static_cast<size_t>(i) * n];
        for (int k = 0; k < n; ++k) {
            const cplx aik = arow[k];
            if (aik == cplx(0.0)) continue;
            const cplx* brow = &b.data()[static_cast<size_t>(k) * n];
            for (int j = 0; j < n; ++j) orow[j] += aik * brow[j];
        }
    }
}

void symmetrize(CMatrix& rho) {
    const int n = rho.dim();
    for (int i = 0; i < n; ++i) {
        rho(i, i) = cplx(rho(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = avg;
            rho(j, i) = std::conj(avg);
        }
    }
}

using Rhs = std::function<void(const CMatrix&, CMatrix&)>;

struct Rk4Work {
    CMatrix k1, k2, k3, k4, tmp;
    explicit Rk4Work(int n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
};

void rk4_step(const Rhs& rhs, CMatrix& y, double dt, Rk4Work& w) {
    const size_t m = y.data().size();
    rhs(y, w.k1);
    for (size_t i = 0; i < m; ++i) w.tmp.data()[i] = y.data()[i] + 0.5 * dt * w.k1.data()[i];
    rhs(w.tmp, w.k2);
    for (size_t i = 0; i < m; ++i) w.tmp.data()[i] = y.data()[i] + 0.5 * dt * w.k2.data()[i];
    rhs(w.tmp, w.k3);
    for (size_t i = 0; i < m; ++i) w.tmp.data()[i] = y.data()[i] + dt * w.k3.data()[i];
    rhs(w.tmp, w.k4);
    for (size_t i = 0; i < m; ++i)
        y.data()[i] += dt / 6.0 * (w.k1.data()[i] + 2.0 * w.k2.data()[i] + 2.0 * w.k3.data()[i] + w.k4.data()[i]);
}

// Cash-Karp embedded pair
struct Rk45Work {
    std::array<CMatrix, 6> k;
    CMatrix tmp, y4;
    explicit Rk45Work(int n) : k{CMatrix(n), CMatrix(n), CMatrix(n), CMatrix(n), CMatrix(n), CMatrix(n)}, tmp(n), y4(n) {}
};

// one attempted step; returns the scaled error estimate, y5 written into y on
// acceptance by the caller
double rk45_attempt(const Rhs& rhs, const CMatrix& y, double dt, Rk45Work& w, CMatrix& y5) {
    static const double a[6][5] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {3.0 / 10, -9.0 / 10, 6.0 / 5},
        {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27},
        {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
    static const double b5[6] = {37.0 / 378, 0.0, 250.0 / 621, 125.0 / 594, 0.0, 512.0 / 1771};
    static const double b4[6] = {2825.0 / 27648, 0.0, 18575.0 / 48384, 13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

    const size_t m = y.data().size();
    rhs(y, w.k[0]);
    for (int s = 1; s < 6; ++s) {
        for (size_t i = 0; i < m; ++i) {
            cplx acc = y.data()[i];
            for (int j = 0; j < s; ++j) acc += dt * a[s][j] * w.k[j].data()[i];
            w.tmp.data()[i] = acc;
        }
        rhs(w.tmp, w.k[s]);
    }
    double err = 0.0;
    for (size_t i = 0; i < m; ++i) {
        cplx acc5 = y.data()[i], acc4 = y.data()[i];
        for (int s = 0; s < 6; ++s) {
            acc5 += dt * b5[s] * w.k[s].data()[i];
            acc4 += dt * b4[s] * w.k[s].data()[i];
        }
        y5.data()[i] = acc5;
        err = std::max(err, std::abs(acc5 - acc4));
    }
    return err;
}

struct SampleContext {
    int fock_dim = 1;
    bool keep_raw = false;
};

TrajectorySample make_sample(double t, const CMatrix& rho, double true_trace, const SampleContext& ctx,
                             Trajectory& out) {
    CMatrix q = ctx.fock_dim > 1 ? partial_trace_fock(rho, ctx.fock_dim) : rho;
    const double qtr = q.trace().real();
    if (qtr > 0.0) q *= cplx(1.0 / qtr);
    symmetrize(q);
    TrajectorySample s;
    s.t = t;
    s.trace = true_trace;
    const int npop = std::min(4, q.dim());
    for (int i = 0; i < npop; ++i) s.populations[i] = q(i, i).real();
    s.concurrence = q.dim() == 4 ? entangle::concurrence_mixed(q) : 0.0;
    if (ctx.keep_raw) out.raw_states.push_back(q);
    return s;
}

void check_density_input(const CMatrix& rho0) {
    if (!rho0.is_finite()) throw ArgumentError("initial state has non-finite entries");
    const double scale = std::max(1.0, rho0.max_abs());
    if (!rho0.is_hermitian(1e-8 * scale)) throw ArgumentError("initial state must be Hermitian");
    if (std::abs(rho0.trace() - cplx(1.0)) > 1e-6) throw ArgumentError("initial state must have unit trace");
}

void validate_config(const IntegratorConfig& cfg) {
    if (!(cfg.t_max > 0.0)) throw ArgumentError("t_max must be positive");
    if (cfg.method == IntegratorConfig::Method::rk4_fixed && !(cfg.dt > 0.0))
        throw ArgumentError("dt must be positive");
    if (cfg.method == IntegratorConfig::Method::rk45_adaptive && !(cfg.tol > 0.0))
        throw ArgumentError("tol must be positive");
    if (cfg.sample_every < 1) throw ArgumentError("sample_every must be at least 1");
}

// shared driver: fixed-step or adaptive loop with renormalization policy
Trajectory run_integration(const Rhs& rhs, CMatrix rho, const IntegratorConfig& cfg, const SampleContext& ctx,
                           bool renormalize, bool resymmetrize) {
    Trajectory traj;
    double log_scale = 0.0;
    auto true_trace = [&]() {
        const double tr = rho.trace().real();
        return tr > 0.0 ? std::exp(log_scale + std::log(tr)) : 0.0;
    };
    auto maybe_rescale = [&]() {
        const double tr = rho.trace().real();
        if (renormalize && tr > 0.0 && tr < kRenormFloor) {
            log_scale += std::log(tr);
            rho *= cplx(1.0 / tr);
        }
    };

    traj.samples.push_back(make_sample(0.0, rho, true_trace(), ctx, traj));

    if (cfg.method == IntegratorConfig::Method::rk4_fixed) {
        const long n_steps = std::max<long>(1, std::lround(cfg.t_max / cfg.dt));
        const double dt = cfg.t_max / static_cast<double>(n_steps);
        Rk4Work work(rho.dim());
        for (long k = 1; k <= n_steps; ++k) {
            rk4_step(rhs, rho, dt, work);
            if (resymmetrize) symmetrize(rho);
            maybe_rescale();
            if (k % cfg.sample_every == 0 || k == n_steps)
                traj.samples.push_back(make_sample(k * dt, rho, true_trace(), ctx, traj));
        }
    } else {
        Rk45Work work(rho.dim());
        CMatrix y5(rho.dim());
        double t = 0.0;
        double dt = cfg.dt > 0.0 ? cfg.dt : 1e-3;
        const double dt_min = 1e-14 * cfg.t_max;
        long accepted = 0;
        while (t < cfg.t_max) {
            dt = std::min(dt, cfg.t_max - t);
            if (dt < dt_min) throw IntegrationError("adaptive step size underflow", t);
            double scale = std::max(1.0, rho.max_abs());
            const double err = rk45_attempt(rhs, rho, dt, work, y5) / (cfg.tol * scale);
            if (err <= 1.0) {
                t += dt;
                rho = y5;
                if (resymmetrize) symmetrize(rho);
                maybe_rescale();
                ++accepted;
                if (accepted % cfg.sample_every == 0 || t >= cfg.t_max)
                    traj.samples.push_back(make_sample(t, rho, true_trace(), ctx, traj));
                dt *= std::clamp(err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0, 1.0, 5.0);
            } else {
                dt *= std::clamp(0.9 * std::pow(err, -0.25), 0.2, 0.9);
            }
        }
    }
    return traj;
}

} // namespace

PureState PureState::basis(int index) {
    PureState s;
    s.amp[index] = 1.0;
    return s;
}

PureState PureState::bell_phi_plus() {
    PureState s;
    s.amp[0] = s.amp[3] = 1.0 / std::sqrt(2.0);
    return s;
}

double PureState::norm() const { return norm2(std::span<const cplx>(amp)); }

std::vector<double> Trajectory::times() const {
    std::vector<double> t;
    t.reserve(samples.size());
    for (const auto& s : samples) t.push_back(s.t);
    return t;
}

std::vector<double> Trajectory::concurrence_series() const {
    std::vector<double> c;
    c.reserve(samples.size());
    for (const auto& s : samples) c.push_back(s.concurrence);
    return c;
}

std::vector<double> Trajectory::population_series(int index) const {
    std::vector<double> p;
    p.reserve(samples.size());
    for (const auto& s : samples) p.push_back(s.populations[index]);
    return p;
}

CMatrix partial_trace_fock(const CMatrix& rho, int fock_dim) {
    if (fock_dim < 1 || rho.dim() != 4 * fock_dim)
        throw DimensionError("partial_trace_fock dimension mismatch");
    CMatrix q(4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            cplx s = 0.0;
            for (int n = 0; n < fock_dim; ++n) s += rho(a * fock_dim + n, b * fock_dim + n);
            q(a, b) = s;
        }
    return q;
}

Trajectory evolve_density(const CMatrix& h_passive, const CMatrix& rho0, const IntegratorConfig& cfg) {
    if (h_passive.dim() != 4 || rho0.dim() != 4) throw DimensionError("evolve_density expects 4x4 inputs");
    check_density_input(rho0);
    validate_config(cfg);
    const CMatrix hd = h_passive.adjoint();
    CMatrix hr(4), rh(4);
    Rhs rhs = [&, h_passive, hd](const CMatrix& rho, CMatrix& out) mutable {
        mul_into(h_passive, rho, hr);
        mul_into(rho, hd, rh);
        for (size_t i = 0; i < out.data().size(); ++i)
            out.data()[i] = cplx(0.0, -1.0) * (hr.data()[i] - rh.data()[i]);
    };
    SampleContext ctx;
    ctx.keep_raw = cfg.keep_raw;
    return run_integration(rhs, rho0, cfg, ctx, /*renormalize=*/true, /*resymmetrize=*/true);
}

Trajectory evolve_pure_eigen(const CMatrix& h_passive, const PureState& psi0, std::span<const double> times) {
    if (h_passive.dim() != 4) throw DimensionError("evolve_pure_eigen expects a 4x4 Hamiltonian");
    if (!(psi0.norm() > 0.0)) throw ArgumentError("initial state must be nonzero");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw ArgumentError("times must be strictly increasing");

    const EigenSystem es = eigensystem(h_passive);
    for (bool d : es.defective)
        if (d) throw EpDegenerateError();

    CMatrix v(4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) v(i, j) = es.right_vectors[j][i];
    CVec coeff = lu_solve(v, CVec(psi0.amp.begin(), psi0.amp.end()));

    Trajectory traj;
    traj.samples.reserve(times.size());
    for (const double t : times) {
        std::array<cplx, 4> amp{};
        for (int n = 0; n < 4; ++n) {
            const cplx w = coeff[n] * std::exp(cplx(0.0, -1.0) * es.values[n] * t);
            for (int i = 0; i < 4; ++i) amp[i] += w * es.right_vectors[n][i];
        }
        const double nrm2 = norm2(std::span<const cplx>(amp));
        TrajectorySample s;
        s.t = t;
        s.trace = nrm2 * nrm2;
        for (int i = 0; i < 4; ++i) s.populations[i] = std::norm(amp[i]) / (nrm2 * nrm2);
        s.concurrence = entangle::concurrence_pure(amp);
        traj.samples.push_back(s);
    }
    return traj;
}

Trajectory evolve_lindblad(const CMatrix& h, const std::vector<std::pair<double, CMatrix>>& collapses,
                           const CMatrix& rho0, const IntegratorConfig& cfg, int fock_dim) {
    const int n = h.dim();
    if (rho0.dim() != n) throw ArgumentError("evolve_lindblad dimension mismatch");
    for (const auto& [rate, op] : collapses) {
        if (op.dim() != n) throw ArgumentError("evolve_lindblad collapse dimension mismatch");
        if (rate < 0.0) throw ArgumentError("collapse rates must be non-negative");
    }
    if (fock_dim > 1 && n != 4 * fock_dim) throw ArgumentError("evolve_lindblad Fock dimension mismatch");
    check_density_input(rho0);
    validate_config(cfg);

    // drift G = H - (i/2) sum gamma O^dag O; jumps kept sparse
    CMatrix g = h;
    using Triplet = std::tuple<int, int, cplx>;
    std::vector<std::vector<Triplet>> sparse;
    std::vector<double> rates;
    for (const auto& [rate, op] : collapses) {
        const CMatrix gain = op.adjoint() * op;
        g -= cplx(0.0, 0.5 * rate) * gain;
        std::vector<Triplet> trip;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (op(i, j) != cplx(0.0)) trip.emplace_back(i, j, op(i, j));
        sparse.push_back(std::move(trip));
        rates.push_back(rate);
    }
    const CMatrix gd = g.adjoint();

    CMatrix gr(n), rg(n), jump(n);
    Rhs rhs = [&, g, gd](const CMatrix& rho, CMatrix& out) mutable {
        mul_into(g, rho, gr);
        mul_into(rho, gd, rg);
        for (size_t i = 0; i < out.data().size(); ++i)
            out.data()[i] = cplx(0.0, -1.0) * (gr.data()[i] - rg.data()[i]);
        for (size_t kop = 0; kop < sparse.size(); ++kop) {
            // T = O rho, then out += rate * T O^dag, both through the triplets
            std::fill(jump.data().begin(), jump.data().end(), cplx(0.0));
            for (const auto& [i, k, val] : sparse[kop])
                for (int j = 0; j < n; ++j) jump(i, j) += val * rho(k, j);
            for (const auto& [j, l, val] : sparse[kop]) {
                const cplx w = rates[kop] * std::conj(val);
                for (int i = 0; i < n; ++i) out(i, j) += jump(i, l) * w;
            }
        }
    };
    SampleContext ctx;
    ctx.fock_dim = fock_dim;
    ctx.keep_raw = cfg.keep_raw;
    return run_integration(rhs, rho0, cfg, ctx, /*renormalize=*/false, /*resymmetrize=*/true);
}

} // namespace nhep::dynamics
