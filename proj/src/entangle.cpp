#include "nhep/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nhep::entangle {

namespace {

CMatrix spin_flip() {
    CMatrix s(4);
    s(0, 3) = -1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 0) = -1.0;
    return s;
}

CMatrix rho_tilde(const CMatrix& rho) {
    static const CMatrix s = spin_flip();
    return s * rho.conjugate() * s;
}

void check_density(const CMatrix& rho) {
    if (rho.dim() != 4) throw DimensionError("concurrence_mixed requires a 4x4 density matrix");
    const double scale = std::max(1.0, rho.max_abs());
    if (!rho.is_hermitian(1e-8 * scale)) throw ArgumentError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > 1e-6) throw ArgumentError("density matrix trace must be 1");
}

double wootters_from_taus(std::array<double, 4> tau) {
    std::sort(tau.begin(), tau.end(), std::greater<double>());
    const double c = tau[0] - tau[1] - tau[2] - tau[3];
    return std::clamp(c, 0.0, 1.0);
}

} // namespace

double concurrence_mixed(const CMatrix& rho) {
    check_density(rho);
    const CMatrix m = rho * rho_tilde(rho);
    const auto vals = eigenvalues_only(m);
    // eigenvalues of rho*rho~ are real non-negative up to solver noise of
    // order eps*||m|| (the matrix norm, not the largest eigenvalue: the
    // product is non-normal); noise must be flattened to zero before the
    // square root blows it up to sqrt(eps)
    const double floor = 256.0 * std::numeric_limits<double>::epsilon() * m.fro_norm();
    std::array<double, 4> tau{};
    for (int i = 0; i < 4; ++i) tau[i] = vals[i].real() > floor ? std::sqrt(vals[i].real()) : 0.0;
    return wootters_from_taus(tau);
}

double concurrence_mixed_rmatrix(const CMatrix& rho) {
    check_density(rho);
    const CMatrix root = hermitian_sqrt(rho);
    const CMatrix m = root * rho_tilde(rho) * root;
    std::vector<double> vals;
    CMatrix vecs;
    hermitian_eigen(m, vals, vecs);
    const double floor = 256.0 * std::numeric_limits<double>::epsilon() * m.fro_norm();
    std::array<double, 4> tau{};
    for (int i = 0; i < 4; ++i) tau[i] = vals[i] > floor ? std::sqrt(vals[i]) : 0.0;
    return wootters_from_taus(tau);
}

double concurrence_pure(std::span<const cplx> psi) {
    if (psi.size() != 4) throw DimensionError("concurrence_pure requires a 4-component state");
    const double n2 = norm2(psi);
    if (!(n2 > 0.0)) throw ArgumentError("concurrence_pure requires a nonzero state");
    const double c = 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]) / (n2 * n2);
    return std::clamp(c, 0.0, 1.0);
}

namespace {

// Any two-dimensional eigenspace contains (generically two) states with
// vanishing spin-flip form. Degenerate but diagonalizable clusters are
// re-expressed in those canonical representatives so the reported branch
// concurrence does not depend on the arbitrary basis the solver picked.
void canonicalize_pair(CVec& v1, CVec& v2) {
    static const CMatrix s = spin_flip();
    const CVec s1 = matvec(s, v1), s2 = matvec(s, v2);
    const cplx g11 = bilinear(v1, s1);
    const cplx g12 = bilinear(v1, s2);
    const cplx g22 = bilinear(v2, s2);
    const double mag = std::abs(g11) + std::abs(g12) + std::abs(g22);
    if (mag < 1e-14) return; // already a zero-form plane
    auto combine = [&](cplx c) {
        CVec v(v1.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = v1[i] + c * v2[i];
        normalize(v);
        return v;
    };
    CVec a, b;
    if (std::abs(g22) > 1e-12 * mag) {
        const cplx disc = std::sqrt(g12 * g12 - g11 * g22);
        const cplx c1 = (-g12 + disc) / g22;
        const cplx c2 = (-g12 - disc) / g22;
        if (std::abs(c1 - c2) < 1e-10) return; // parabolic: keep solver basis
        a = combine(c1);
        b = combine(c2);
    } else if (std::abs(g12) > 1e-12 * mag) {
        a = combine(-g11 / (2.0 * g12));
        b = v2; // root at infinity
    } else {
        return;
    }
    v1 = std::move(a);
    v2 = std::move(b);
}

} // namespace

std::vector<ConcurrenceSeries> eigenstate_concurrence_sweep(const model::ModelSpec& base,
                                                            double omega_lo, double omega_hi, int steps) {
    if (!(omega_lo < omega_hi) || steps < 2) throw ArgumentError("invalid sweep range");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<ConcurrenceSeries> series(4);
    for (auto& s : series) {
        s.grid.reserve(steps);
        s.values.reserve(steps);
    }
    std::vector<cplx> prev_vals;
    std::vector<CVec> prev_vecs;
    for (int k = 0; k < steps; ++k) {
        const double omega = omega_lo + (omega_hi - omega_lo) * k / (steps - 1);
        const auto h = model::shift_to_pt(build_passive_h(base.with_omega(omega)), base.params.gamma);
        auto es = eigensystem(h);

        // canonical representatives inside exactly degenerate planes
        for (int c = 0; c < 4; ++c) {
            for (int d = c + 1; d < 4; ++d) {
                if (es.cluster[c] == es.cluster[d] && !es.defective[c] &&
                    std::abs(es.values[c] - es.values[d]) < 1e-12 * std::max(1.0, h.fro_norm())) {
                    canonicalize_pair(es.right_vectors[c], es.right_vectors[d]);
                }
            }
        }

        std::array<int, 4> assign = {0, 1, 2, 3};
        if (!prev_vals.empty()) {
            std::array<int, 4> perm = {0, 1, 2, 3};
            double best = std::numeric_limits<double>::infinity();
            std::array<int, 4> trial = perm;
            std::sort(trial.begin(), trial.end());
            do {
                double cost = 0.0;
                for (int b = 0; b < 4; ++b) cost += std::abs(es.values[trial[b]] - prev_vals[b]);
                if (cost < best - 1e-15) {
                    best = cost;
                    perm = trial;
                } else if (std::abs(cost - best) <= 1e-15) {
                    // eigenvalue tie: prefer the assignment with larger vector overlap
                    double ov_new = 0.0, ov_old = 0.0;
                    for (int b = 0; b < 4; ++b) {
                        ov_new += std::abs(dot(prev_vecs[b], es.right_vectors[trial[b]]));
                        ov_old += std::abs(dot(prev_vecs[b], es.right_vectors[perm[b]]));
                    }
                    if (ov_new > ov_old) perm = trial;
                }
            } while (std::next_permutation(trial.begin(), trial.end()));
            assign = perm;
        }

        prev_vals.resize(4);
        prev_vecs.resize(4);
        for (int b = 0; b < 4; ++b) {
            const int i = assign[b];
            prev_vals[b] = es.values[i];
            prev_vecs[b] = es.right_vectors[i];
            series[b].grid.push_back(omega);
            series[b].values.push_back(es.defective[i] ? nan : concurrence_pure(es.right_vectors[i]));
        }
    }
    return series;
}

std::pair<double, double> nodrive_eigen_concurrence(double xi, double gamma) {
    if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
    const double j = -2.0 * xi;
    const cplx eg = energy_gap(xi, gamma);
    const cplx gp = cplx(0.0, gamma / 2.0) + 0.5 * eg;
    const cplx gm = cplx(0.0, gamma / 2.0) - 0.5 * eg;
    auto eps = [&](const cplx& gpm) {
        const double a = std::abs(gpm);
        return 2.0 * std::abs(j) * a / (j * j + a * a);
    };
    return {eps(gp), eps(gm)};
}

cplx energy_gap(double xi, double gamma) {
    if (!(gamma > 0.0)) throw ArgumentError("gamma must be positive");
    const double j = -2.0 * xi;
    return std::sqrt(cplx(4.0 * j * j - gamma * gamma, 0.0));
}

} // namespace nhep::entangle
