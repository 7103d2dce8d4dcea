#pragma once

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Dense complex linear algebra for small matrices (dim <~ 64): characteristic
// polynomials, non-Hermitian eigendecomposition, singular values and rank
// estimation. Self-contained on purpose; everything downstream (spectra, EP
// search, time evolution) sits on top of this kernel.

namespace nhep {

using cplx = std::complex<double>;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(int dim) : n_(dim), a_(static_cast<size_t>(dim) * dim) {}
    CMatrix(int dim, std::vector<cplx> entries);

    static CMatrix identity(int dim);

    int dim() const { return n_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    std::vector<cplx>& data() { return a_; }
    const std::vector<cplx>& data() const { return a_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;
    cplx trace() const;
    double fro_norm() const;
    double max_abs() const;
    bool is_finite() const;
    bool is_hermitian(double tol) const;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  private:
    int n_ = 0;
    std::vector<cplx> a_;
};

using CVec = std::vector<cplx>;

CVec matvec(const CMatrix& m, std::span<const cplx> v);
cplx dot(std::span<const cplx> bra, std::span<const cplx> ket); // conjugates bra
cplx bilinear(std::span<const cplx> a, std::span<const cplx> b); // no conjugation
double norm2(std::span<const cplx> v);
void normalize(CVec& v);

// In-place LU solve with partial pivoting; tiny pivots are bumped to keep
// inverse iteration usable on (nearly) singular shifts.
CVec lu_solve(CMatrix a, CVec b);

struct EigenSystem {
    std::vector<cplx> values;               // sorted by (Re, Im) ascending
    std::vector<CVec> right_vectors;        // unit Euclidean norm
    std::vector<double> residuals;          // ||H v - lambda v||
    std::vector<bool> defective;            // per value, set for its whole cluster
    std::vector<int> cluster;               // cluster id per value
};

struct SolverError : std::runtime_error {
    SolverError(std::string msg, CMatrix m, std::vector<cplx> partial)
        : std::runtime_error(std::move(msg)), matrix(std::move(m)), partial_values(std::move(partial)) {}
    CMatrix matrix;
    std::vector<cplx> partial_values;
};

// Default tolerances, all relative to the Frobenius norm of the input.
inline constexpr double kClusterTol = 1e-6;
inline constexpr double kResidualTol = 1e-10;
inline constexpr double kRankTol = 1e-8;

struct QuarticCoeffs {
    cplx c0{}, c1{}, c2{}, c3{}, c4{1.0}; // p(x) = c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0
    cplx eval(cplx x) const { return (((c4 * x + c3) * x + c2) * x + c1) * x + c0; }
    cplx deriv(cplx x) const { return ((4.0 * c4 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1; }
};

// Faddeev-LeVerrier trace recursion; requires dim == 4.
QuarticCoeffs char_poly(const CMatrix& m);

// Zero iff the quartic has a repeated root.
cplx quartic_discriminant(const QuarticCoeffs& p);

// Ferrari's method with two Newton polishing passes per root.
std::array<cplx, 4> quartic_roots(const QuarticCoeffs& p);

// Hessenberg reduction + shifted QR for the values, inverse iteration /
// null-space extraction for the vectors. Near-coalescent clusters are
// detected and flagged defective when geometrically deficient.
EigenSystem eigensystem(const CMatrix& m);
std::vector<cplx> eigenvalues_only(const CMatrix& m);

// Numerical rank of (m - lambda I); singular values below tol * sigma_max
// count as zero.
int rank_at(const CMatrix& m, cplx lambda, double tol = kRankTol);

// One-sided Jacobi. Returns singular values in descending order; if v is
// given it receives the matching right singular vectors as columns.
std::vector<double> singular_values(const CMatrix& m, CMatrix* v = nullptr);

// Cyclic Jacobi for Hermitian matrices: ascending eigenvalues, eigenvectors
// as columns of vecs.
void hermitian_eigen(const CMatrix& m, std::vector<double>& vals, CMatrix& vecs);

// Hermitian PSD square root; small negative eigenvalues are clamped to zero.
CMatrix hermitian_sqrt(const CMatrix& m);

} // namespace nhep
