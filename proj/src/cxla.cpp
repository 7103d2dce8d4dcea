#include "nhep/cxla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nhep {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

} // namespace

CMatrix::CMatrix(int dim, std::vector<cplx> entries) : n_(dim), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(dim) * dim)
        throw DimensionError("entry count does not match dim*dim");
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
    return r;
}

CMatrix CMatrix::conjugate() const {
    CMatrix r(n_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
    return r;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::fro_norm() const {
    double s = 0.0;
    for (const cplx& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double s = 0.0;
    for (const cplx& z : a_) s = std::max(s, std::abs(z));
    return s;
}

bool CMatrix::is_finite() const {
    for (const cplx& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool CMatrix::is_hermitian(double tol) const {
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (cplx& z : a_) z *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    const int n = a.dim();
    if (n != b.dim()) throw DimensionError("matmul dimension mismatch");
    CMatrix r(n);
    for (int i = 0; i < n; ++i) {
        const cplx* arow = &a.data()[static_cast<size_t>(i) * n];
        cplx* rrow = &r.data()[static_cast<size_t>(i) * n];
        for (int k = 0; k < n; ++k) {
            const cplx aik = arow[k];
            if (aik == cplx(0.0)) continue;
            const cplx* brow = &b.data()[static_cast<size_t>(k) * n];
            for (int j = 0; j < n; ++j) rrow[j] += aik * brow[j];
        }
    }
    return r;
}

CVec matvec(const CMatrix& m, std::span<const cplx> v) {
    const int n = m.dim();
    CVec r(n, 0.0);
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

cplx dot(std::span<const cplx> bra, std::span<const cplx> ket) {
    cplx s = 0.0;
    for (size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
    return s;
}

cplx bilinear(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

void normalize(CVec& v) {
    const double n = norm2(v);
    if (n > 0.0)
        for (cplx& z : v) z /= n;
}

CVec lu_solve(CMatrix a, CVec b) {
    const int n = a.dim();
    if (static_cast<int>(b.size()) != n) throw DimensionError("lu_solve dimension mismatch");
    const double floor = kEps * std::max(a.max_abs(), 1e-290) * n;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double m = std::abs(a(i, k));
            if (m > best) { best = m; piv = i; }
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        if (std::abs(a(k, k)) < floor) a(k, k) = floor; // keep inverse iteration alive
        const cplx inv = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) * inv;
            if (f == cplx(0.0)) continue;
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
        b[i] = s / a(i, i);
    }
    return b;
}

// ---------------------------------------------------------------------------
// Hessenberg + shifted QR (eigenvalues only)
// ---------------------------------------------------------------------------

namespace {

void to_hessenberg(CMatrix& h) {
    const int n = h.dim();
    for (int k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm <= 0.0) continue;
        const cplx alpha = h(k + 1, k);
        const double aabs = std::abs(alpha);
        const cplx phase = aabs > 0.0 ? alpha / aabs : cplx(1.0);
        const cplx beta = -phase * xnorm;
        CVec v(n, 0.0);
        for (int i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] -= beta;
        double vn2 = 0.0;
        for (int i = k + 1; i < n; ++i) vn2 += std::norm(v[i]);
        if (vn2 <= 0.0) continue;
        const double tau = 2.0 / vn2;
        // left: h -= tau v (v^dag h)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
            s *= tau;
            for (int i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
        }
        // right: h -= tau (h v) v^dag
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= tau;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
        h(k + 1, k) = beta;
    }
}

// Eigenvalue of the trailing 2x2 of the window closest to the corner entry.
cplx wilkinson_shift(const CMatrix& h, int hi) {
    const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    const cplx c = h(hi, hi - 1), d = h(hi, hi);
    const cplx tr = a + d;
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

// One explicit shifted QR sweep on the window [lo, hi] of a Hessenberg matrix.
void qr_sweep(CMatrix& h, int lo, int hi, cplx mu) {
    const int m = hi - lo + 1;
    CMatrix b(m);
    for (int i = 0; i < m; ++i)
        for (int j = std::max(0, i - 1); j < m; ++j) b(i, j) = h(lo + i, lo + j);
    for (int i = 0; i < m; ++i) b(i, i) -= mu;

    std::vector<double> cs(m - 1);
    CVec sn(m - 1);
    for (int k = 0; k + 1 < m; ++k) {
        const cplx x = b(k, k), y = b(k + 1, k);
        const double r = hypot2(std::abs(x), std::abs(y));
        double c;
        cplx s;
        if (r <= 0.0) {
            c = 1.0;
            s = 0.0;
        } else if (std::abs(x) <= 0.0) {
            c = 0.0;
            s = std::conj(y) / std::abs(y);
        } else {
            c = std::abs(x) / r;
            s = (x / std::abs(x)) * std::conj(y) / r;
        }
        cs[k] = c;
        sn[k] = s;
        for (int j = k; j < m; ++j) {
            const cplx t1 = b(k, j), t2 = b(k + 1, j);
            b(k, j) = c * t1 + s * t2;
            b(k + 1, j) = -std::conj(s) * t1 + c * t2;
        }
    }
    for (int k = 0; k + 1 < m; ++k) {
        const double c = cs[k];
        const cplx s = sn[k];
        const int imax = std::min(k + 2, m);
        for (int i = 0; i < imax; ++i) {
            const cplx t1 = b(i, k), t2 = b(i, k + 1);
            b(i, k) = c * t1 + std::conj(s) * t2;
            b(i, k + 1) = -s * t1 + c * t2;
        }
    }
    for (int i = 0; i < m; ++i) b(i, i) += mu;
    for (int i = 0; i < m; ++i)
        for (int j = std::max(0, i - 1); j < m; ++j) h(lo + i, lo + j) = b(i, j);
}

std::vector<cplx> hessenberg_qr_values(CMatrix h, const CMatrix& original) {
    const int n = h.dim();
    const double scale = std::max(h.fro_norm(), 1e-290);
    int hi = n - 1;
    int iter = 0;
    const int budget = 100 * std::max(n, 4);
    int since_deflation = 0;
    while (hi > 0) {
        // deflate negligible subdiagonals
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double ref = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (sub <= kEps * (ref > 0.0 ? ref : scale)) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            since_deflation = 0;
            continue;
        }
        if (++iter > budget) {
            std::vector<cplx> partial(n);
            for (int i = 0; i < n; ++i) partial[i] = h(i, i);
            throw SolverError("QR iteration did not converge within budget", original, partial);
        }
        cplx mu;
        if (++since_deflation % 12 == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1)); // exceptional shift
        } else {
            mu = wilkinson_shift(h, hi);
        }
        qr_sweep(h, lo, hi, mu);
    }
    std::vector<cplx> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = h(i, i);
    return vals;
}

bool canonical_less(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

std::vector<cplx> eigenvalues_only(const CMatrix& m) {
    if (!m.is_finite()) throw ArgumentError("matrix has non-finite entries");
    CMatrix h = m;
    to_hessenberg(h);
    auto vals = hessenberg_qr_values(std::move(h), m);
    std::sort(vals.begin(), vals.end(), canonical_less);
    return vals;
}

// ---------------------------------------------------------------------------
// SVD (one-sided Jacobi) and Hermitian Jacobi
// ---------------------------------------------------------------------------

std::vector<double> singular_values(const CMatrix& m, CMatrix* v) {
    const int n = m.dim();
    CMatrix a = m;
    CMatrix vv = CMatrix::identity(n);
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool converged = true;
        for (int p = 0; p + 1 < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq = 0.0;
                for (int i = 0; i < n; ++i) {
                    app += std::norm(a(i, p));
                    aqq += std::norm(a(i, q));
                    apq += std::conj(a(i, p)) * a(i, q);
                }
                const double mag = std::abs(apq);
                if (mag <= 1e-30 || mag <= 1e-16 * std::sqrt(app * aqq)) continue;
                converged = false;
                const cplx u = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const cplx ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * std::conj(u) * aq;
                    a(i, q) = s * u * ap + c * aq;
                    const cplx vp = vv(i, p), vq = vv(i, q);
                    vv(i, p) = c * vp - s * std::conj(u) * vq;
                    vv(i, q) = s * u * vp + c * vq;
                }
            }
        }
        if (converged) break;
    }
    std::vector<double> sig(n);
    std::vector<int> order(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::norm(a(i, j));
        sig[j] = std::sqrt(s);
        order[j] = j;
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) { return sig[x] > sig[y]; });
    std::vector<double> out(n);
    CMatrix vout(n);
    for (int j = 0; j < n; ++j) {
        out[j] = sig[order[j]];
        for (int i = 0; i < n; ++i) vout(i, j) = vv(i, order[j]);
    }
    if (v) *v = std::move(vout);
    return out;
}

void hermitian_eigen(const CMatrix& m, std::vector<double>& vals, CMatrix& vecs) {
    const int n = m.dim();
    CMatrix a = m;
    vecs = CMatrix::identity(n);
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p + 1 < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-15 * std::max(a.fro_norm(), 1e-290)) break;
        for (int p = 0; p + 1 < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-18 * (std::abs(a(p, p)) + std::abs(a(q, q)) + 1e-290)) continue;
                const cplx u = apq / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // rows
                for (int j = 0; j < n; ++j) {
                    const cplx ap = a(p, j), aq = a(q, j);
                    a(p, j) = c * ap - s * u * aq;
                    a(q, j) = s * std::conj(u) * ap + c * aq;
                }
                // columns
                for (int i = 0; i < n; ++i) {
                    const cplx ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * std::conj(u) * aq;
                    a(i, q) = s * u * ap + c * aq;
                    const cplx vp = vecs(i, p), vq = vecs(i, q);
                    vecs(i, p) = c * vp - s * std::conj(u) * vq;
                    vecs(i, q) = s * u * vp + c * vq;
                }
            }
        }
    }
    vals.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        vals[i] = a(i, i).real();
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) { return vals[x] < vals[y]; });
    std::vector<double> vs(n);
    CMatrix vv(n);
    for (int j = 0; j < n; ++j) {
        vs[j] = vals[order[j]];
        for (int i = 0; i < n; ++i) vv(i, j) = vecs(i, order[j]);
    }
    vals = std::move(vs);
    vecs = std::move(vv);
}

CMatrix hermitian_sqrt(const CMatrix& m) {
    std::vector<double> vals;
    CMatrix vecs;
    hermitian_eigen(m, vals, vecs);
    const int n = m.dim();
    CMatrix r(n);
    for (int k = 0; k < n; ++k) {
        const double s = vals[k] > 0.0 ? std::sqrt(vals[k]) : 0.0;
        if (s == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) += s * vecs(i, k) * std::conj(vecs(j, k));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Full eigensystem
// ---------------------------------------------------------------------------

namespace {

CVec deterministic_start(int n, int salt) {
    CVec v(n);
    uint64_t state = 0x9e3779b97f4a7c15ull + 0x1000193u * static_cast<uint64_t>(salt);
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
    };
    for (int i = 0; i < n; ++i) v[i] = cplx(next(), next());
    normalize(v);
    return v;
}

double residual_of(const CMatrix& m, const CVec& v, cplx lambda) {
    CVec w = matvec(m, v);
    for (size_t i = 0; i < w.size(); ++i) w[i] -= lambda * v[i];
    return norm2(w);
}

void fix_phase(CVec& v) {
    int imax = 0;
    double best = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best) { best = a; imax = static_cast<int>(i); }
    }
    if (best > 0.0) {
        const cplx ph = std::conj(v[imax]) / best;
        for (cplx& z : v) z *= ph;
    }
}

CVec inverse_iteration(const CMatrix& m, cplx lambda, int salt) {
    const int n = m.dim();
    CMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
    CVec v = deterministic_start(n, salt);
    CVec best = v;
    double best_res = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 3; ++pass) {
        v = lu_solve(shifted, std::move(v));
        normalize(v);
        const double res = residual_of(m, v, lambda);
        if (res < best_res) {
            best_res = res;
            best = v;
        }
        if (res <= 1e-14 * std::max(m.fro_norm(), 1e-290)) break;
    }
    return best;
}

} // namespace

EigenSystem eigensystem(const CMatrix& m) {
    if (!m.is_finite()) throw ArgumentError("matrix has non-finite entries");
    const int n = m.dim();
    const double scale = std::max(m.fro_norm(), 1e-290);

    EigenSystem es;
    es.values = eigenvalues_only(m);
    es.right_vectors.assign(n, CVec(n, 0.0));
    es.residuals.assign(n, 0.0);
    es.defective.assign(n, false);
    es.cluster.assign(n, -1);

    // union-find clustering on pairwise gaps. A Jordan block of order k
    // scatters its computed eigenvalue by ~eps^(1/k), so the radius cannot
    // be tighter than ~eps^(1/4) if coalescences up to order 4 are to land
    // in one cluster.
    const double radius = std::max(kClusterTol, 64.0 * std::cbrt(kEps)) * scale;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(es.values[i] - es.values[j]) < radius) parent[find(i)] = find(j);

    std::vector<std::vector<int>> groups;
    {
        std::vector<int> gid(n, -1);
        for (int i = 0; i < n; ++i) {
            const int r = find(i);
            if (gid[r] < 0) {
                gid[r] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            es.cluster[i] = gid[r];
            groups[gid[r]].push_back(i);
        }
    }

    for (const auto& g : groups) {
        const int k = static_cast<int>(g.size());
        if (k == 1) {
            const int idx = g[0];
            CVec v = inverse_iteration(m, es.values[idx], idx);
            fix_phase(v);
            es.residuals[idx] = residual_of(m, v, es.values[idx]);
            es.right_vectors[idx] = std::move(v);
            continue;
        }
        cplx mean = 0.0;
        double diam = 0.0;
        for (int i : g) mean += es.values[i];
        mean /= static_cast<double>(k);
        for (int a : g)
            for (int b : g) diam = std::max(diam, std::abs(es.values[a] - es.values[b]));

        CMatrix shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) -= mean;
        CMatrix v;
        const auto sig = singular_values(shifted, &v);
        const double smax = sig[0];
        int nullity = 0;
        for (double s : sig)
            if (smax <= 0.0 || s <= kRankTol * smax) ++nullity;

        const bool deficient = nullity < k;
        const bool tight = diam <= 1e-9 * scale;
        for (int j = 0; j < k; ++j) {
            const int idx = g[j];
            es.defective[idx] = deficient;
            CVec vec(n);
            if (deficient || tight) {
                // smallest singular vectors: null space first, then best-available
                const int col = n - 1 - std::min(j, n - 1);
                for (int i = 0; i < n; ++i) vec[i] = v(i, col);
            } else {
                vec = inverse_iteration(m, es.values[idx], idx);
            }
            normalize(vec);
            fix_phase(vec);
            es.residuals[idx] = residual_of(m, vec, es.values[idx]);
            es.right_vectors[idx] = std::move(vec);
        }
    }
    return es;
}

int rank_at(const CMatrix& m, cplx lambda, double tol) {
    if (tol <= 0.0) throw ArgumentError("rank_at requires tol > 0");
    const int n = m.dim();
    CMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
    const auto sig = singular_values(shifted);
    const double smax = sig.empty() ? 0.0 : sig[0];
    int rank = 0;
    for (double s : sig)
        if (s > tol * smax) ++rank;
    return rank;
}

// ---------------------------------------------------------------------------
// Quartic machinery
// ---------------------------------------------------------------------------

QuarticCoeffs char_poly(const CMatrix& m) {
    if (m.dim() != 4) throw DimensionError("char_poly requires a 4x4 matrix");
    if (!m.is_finite()) throw ArgumentError("matrix has non-finite entries");
    QuarticCoeffs p;
    CMatrix mk = m;
    p.c3 = -mk.trace();
    mk = m * (mk + CMatrix::identity(4) * p.c3);
    p.c2 = -mk.trace() / 2.0;
    mk = m * (mk + CMatrix::identity(4) * p.c2);
    p.c1 = -mk.trace() / 3.0;
    mk = m * (mk + CMatrix::identity(4) * p.c1);
    p.c0 = -mk.trace() / 4.0;
    p.c4 = 1.0;
    return p;
}

cplx quartic_discriminant(const QuarticCoeffs& q) {
    const cplx a = q.c4, b = q.c3, c = q.c2, d = q.c1, e = q.c0;
    const cplx a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d, e2 = e * e;
    return 256.0 * a2 * a * e2 * e - 192.0 * a2 * b * d * e2 - 128.0 * a2 * c2 * e2 +
           144.0 * a2 * c * d2 * e - 27.0 * a2 * d2 * d2 + 144.0 * a * b2 * c * e2 -
           6.0 * a * b2 * d2 * e - 80.0 * a * b * c2 * d * e + 18.0 * a * b * c * d2 * d +
           16.0 * a * c2 * c2 * e - 4.0 * a * c2 * c * d2 - 27.0 * b2 * b2 * e2 +
           18.0 * b2 * b * c * d * e - 4.0 * b2 * b * d2 * d - 4.0 * b2 * c2 * c * e + b2 * c2 * d2;
}

namespace {

std::array<cplx, 3> cubic_roots(cplx a, cplx b, cplx c) {
    // w^3 + a w^2 + b w + c
    const cplx shift = a / 3.0;
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx u3 = -q / 2.0 + disc;
    if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
    cplx u = std::pow(u3, 1.0 / 3.0);
    std::array<cplx, 3> roots;
    if (std::abs(u) <= 1e-300) {
        const cplx r = std::pow(-q, 1.0 / 3.0);
        roots = {r, r, r};
    } else {
        const cplx w1(-0.5, std::sqrt(3.0) / 2.0);
        const cplx w2 = std::conj(w1);
        const cplx v = -p / (3.0 * u);
        roots = {u + v, u * w1 + v * w2, u * w2 + v * w1};
    }
    for (auto& r : roots) r -= shift;
    return roots;
}

std::array<cplx, 2> quadratic_roots(cplx b, cplx c) {
    // y^2 + b y + c
    const cplx disc = std::sqrt(b * b - 4.0 * c);
    const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    if (std::abs(q) <= 1e-300) return {cplx(0.0), -b};
    return {q, c / q};
}

} // namespace

std::array<cplx, 4> quartic_roots(const QuarticCoeffs& p) {
    if (std::abs(p.c4) <= 0.0) throw ArgumentError("quartic_roots requires a monic quartic");
    const cplx a = p.c3 / p.c4, b = p.c2 / p.c4, c = p.c1 / p.c4, d = p.c0 / p.c4;
    // depress: x = y - a/4
    const cplx a2 = a * a;
    const cplx pd = b - 3.0 * a2 / 8.0;
    const cplx qd = c - a * b / 2.0 + a2 * a / 8.0;
    const cplx rd = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    const double mag = std::abs(pd) + std::abs(qd) + std::abs(rd) + 1.0;

    std::array<cplx, 4> y;
    if (std::abs(qd) <= 1e-14 * mag) {
        const auto z = quadratic_roots(pd, rd);
        const cplx s0 = std::sqrt(z[0]), s1 = std::sqrt(z[1]);
        y = {s0, -s0, s1, -s1};
    } else {
        // resolvent: m^3 + pd m^2 + (pd^2/4 - rd) m - qd^2/8 = 0
        const auto ms = cubic_roots(pd, pd * pd / 4.0 - rd, -qd * qd / 8.0);
        cplx mroot = ms[0];
        for (const cplx& mr : ms)
            if (std::abs(mr) > std::abs(mroot)) mroot = mr;
        const cplx s = std::sqrt(2.0 * mroot);
        const cplx t = qd / (2.0 * s);
        // (y^2 - s y + (p/2 + m + t)) (y^2 + s y + (p/2 + m - t))
        const auto y01 = quadratic_roots(-s, pd / 2.0 + mroot + t);
        const auto y23 = quadratic_roots(s, pd / 2.0 + mroot - t);
        y = {y01[0], y01[1], y23[0], y23[1]};
    }
    std::array<cplx, 4> roots;
    for (int i = 0; i < 4; ++i) {
        cplx x = y[i] - a / 4.0;
        for (int pass = 0; pass < 2; ++pass) { // Newton polish
            const cplx f = p.eval(x);
            const cplx df = p.deriv(x);
            if (std::abs(df) > 1e-300) x -= f / df;
        }
        roots[i] = x;
    }
    std::sort(roots.begin(), roots.end(), canonical_less);
    return roots;
}

} // namespace nhep
