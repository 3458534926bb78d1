#include "ncwit/core.hpp"

#include <cmath>
#include <numeric>

namespace ncwit {

namespace {

int product(const std::vector<int>& dims) {
    int p = 1;
    for (int d : dims) {
        if (d <= 0) throw ValidationError("subsystem dimensions must be positive");
        p *= d;
    }
    return p;
}

double hermiticity_defect(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace

TruncationConfig::TruncationConfig(int n_max_, double tail_tol_)
    : n_max(n_max_), tail_tol(tail_tol_) {
    if (n_max < 1) throw ValidationError("n_max must be >= 1");
    if (!(tail_tol > 0.0 && tail_tol < 1.0))
        throw ValidationError("tail_tol must lie in (0, 1)");
}

Operator::Operator(Mat entries, bool hermitian)
    : mat_(std::move(entries)), hermitian_(hermitian) {
    if (mat_.rows() != mat_.cols() || mat_.rows() == 0)
        throw ValidationError("operator must be a nonempty square matrix");
    if (hermitian_ && hermiticity_defect(mat_) > kHermTol)
        throw ValidationError("operator marked hermitian violates the 1e-12 tolerance");
}

Operator Operator::hermitian(Mat entries) { return Operator(std::move(entries), true); }

Operator Operator::identity(int dim) {
    return Operator(Mat::Identity(dim, dim), true);
}

PureState::PureState(std::vector<int> dims, Vec amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    if (product(dims_) != amps_.size())
        throw ValidationError("amplitude length does not match the dimension signature");
    if (std::abs(amps_.norm() - 1.0) > kNormTol)
        throw ValidationError("pure state is not normalized to 1e-12");
}

DensityMatrix::DensityMatrix(std::vector<int> dims, Mat entries)
    : dims_(std::move(dims)), mat_(std::move(entries)) {
    if (product(dims_) != mat_.rows() || mat_.rows() != mat_.cols())
        throw ValidationError("density matrix shape does not match the dimension signature");
    if (hermiticity_defect(mat_) > kHermTol)
        throw ValidationError("density matrix is not Hermitian to 1e-12");
    if (std::abs(mat_.trace().real() - 1.0) > kTraceTol || std::abs(mat_.trace().imag()) > kTraceTol)
        throw ValidationError("density matrix trace differs from 1 beyond 1e-10");
    Eigen::SelfAdjointEigenSolver<Mat> solver(mat_, Eigen::EigenvaluesOnly);
    eigs_ = solver.eigenvalues();
    if (eigs_.minCoeff() < kEigTol)
        throw ValidationError("density matrix has an eigenvalue below -1e-10");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    Mat rho = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityMatrix(psi.dims(), std::move(rho));
}

Operator tensor_product(const Operator& a, const Operator& b) {
    const Mat& A = a.entries();
    const Mat& B = b.entries();
    Mat out(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return Operator(std::move(out), a.is_hermitian() && b.is_hermitian());
}

PureState tensor_product(const PureState& a, const PureState& b) {
    Vec out(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        out.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return PureState(std::move(dims), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const auto& dims = rho.dims();
    const int n = static_cast<int>(dims.size());
    if (keep.empty()) throw ValidationError("keep set must be nonempty");
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) throw ValidationError("partial_trace: subsystem index out of range");
        kept[k] = true;
    }

    std::vector<int> keep_dims, trace_dims;
    for (int i = 0; i < n; ++i) (kept[i] ? keep_dims : trace_dims).push_back(dims[i]);
    const int dk = std::accumulate(keep_dims.begin(), keep_dims.end(), 1, std::multiplies<>());
    const int dt = std::accumulate(trace_dims.begin(), trace_dims.end(), 1, std::multiplies<>());

    // Full index -> (kept part, traced part), both in the original subsystem order.
    const int dim = rho.dim();
    std::vector<int> kpart(dim), tpart(dim);
    for (int idx = 0; idx < dim; ++idx) {
        int rest = idx, kp = 0, tp = 0;
        for (int i = 0; i < n; ++i) {
            int stride = 1;
            for (int j = i + 1; j < n; ++j) stride *= dims[j];
            int digit = (rest / stride) % dims[i];
            rest %= stride;
            if (kept[i]) kp = kp * dims[i] + digit;
            else tp = tp * dims[i] + digit;
        }
        kpart[idx] = kp;
        tpart[idx] = tp;
    }

    Mat out = Mat::Zero(dk, dk);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            if (tpart[r] == tpart[c]) out(kpart[r], kpart[c]) += rho.entries()(r, c);
    (void)dt;
    return DensityMatrix(keep_dims, std::move(out));
}

EigResult hermitian_eig(const Operator& m) {
    if (!m.is_hermitian()) throw ValidationError("hermitian_eig requires a Hermitian operator");
    Eigen::SelfAdjointEigenSolver<Mat> solver(m.entries());
    EigResult res;
    res.eigenvalues = solver.eigenvalues().reverse();
    res.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return res;
}

PureState fock_state(int n, const TruncationConfig& trunc) {
    if (n < 0 || n > trunc.n_max)
        throw ValidationError("Fock index outside the truncated space");
    Vec amps = Vec::Zero(trunc.dim());
    amps(n) = 1.0;
    return PureState({trunc.dim()}, std::move(amps));
}

Vec coherent_amplitudes_unchecked(cplx alpha, int n_max, double* tail_mass) {
    Vec amps(n_max + 1);
    cplx c = std::exp(-0.5 * std::norm(alpha));
    double mass = 0.0;
    for (int k = 0; k <= n_max; ++k) {
        amps(k) = c;
        mass += std::norm(c);
        c *= alpha / std::sqrt(static_cast<double>(k + 1));
    }
    if (tail_mass) *tail_mass = std::max(0.0, 1.0 - mass);
    if (mass <= 0.0) throw NumericGuardError("coherent amplitude mass underflowed");
    amps /= std::sqrt(mass);
    return amps;
}

TruncatedState coherent_state(cplx alpha, const TruncationConfig& trunc) {
    double tail = 0.0;
    Vec amps = coherent_amplitudes_unchecked(alpha, trunc.n_max, &tail);
    if (tail > trunc.tail_tol)
        throw NumericGuardError("coherent state tail mass " + std::to_string(tail) +
                                " exceeds tail_tol; increase n_max");
    return {PureState({trunc.dim()}, std::move(amps)), tail};
}

PureState su2_coherent_state(cplx z, double j) {
    double twoj = 2.0 * j;
    if (j < 0 || std::abs(twoj - std::round(twoj)) > 1e-12)
        throw ValidationError("j must be a nonnegative half-integer");
    const int n = static_cast<int>(std::round(twoj));
    Vec amps(n + 1);
    // amps(k) = (1+|z|^2)^{-j} z^k sqrt(C(2j, k)), k = j + m
    cplx zk = 1.0;
    for (int k = 0; k <= n; ++k) {
        double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        amps(k) = zk * std::exp(0.5 * logc);
        zk *= z;
    }
    amps *= std::pow(1.0 + std::norm(z), -j);
    amps /= amps.norm(); // guard rounding for large |z|
    return PureState({n + 1}, std::move(amps));
}

TruncatedState squeezed_vacuum(double q, const TruncationConfig& trunc) {
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("squeezing parameter q must lie in (0,1)");
    const int kmax = trunc.n_max / 2;
    const double tail = std::pow(q, 2 * (kmax + 1));
    if (tail > trunc.tail_tol)
        throw NumericGuardError("squeezed vacuum tail mass " + std::to_string(tail) +
                                " exceeds tail_tol; increase n_max");
    Vec amps = Vec::Zero(trunc.dim());
    double c = std::sqrt(1.0 - q * q);
    for (int k = 0; k <= kmax; ++k) {
        amps(2 * k) = c;
        c *= q;
    }
    amps /= amps.norm();
    return {PureState({trunc.dim()}, std::move(amps)), tail};
}

TruncatedState cat_state(cplx alpha, const TruncationConfig& trunc) {
    if (std::abs(alpha) == 0.0)
        throw ValidationError("cat state is degenerate at alpha = 0");
    // Even-photon branch of |alpha> + |-alpha>; odd amplitudes vanish exactly.
    Vec amps(trunc.dim());
    cplx c = std::exp(-0.5 * std::norm(alpha));
    double mass = 0.0;
    for (int k = 0; k <= trunc.n_max; ++k) {
        amps(k) = (k % 2 == 0) ? c : cplx(0.0);
        mass += std::norm(amps(k));
        c *= alpha / std::sqrt(static_cast<double>(k + 1));
    }
    const double even_mass_exact = 0.5 * (1.0 + std::exp(-2.0 * std::norm(alpha)));
    const double tail = std::max(0.0, 1.0 - mass / even_mass_exact);
    if (tail > trunc.tail_tol)
        throw NumericGuardError("cat state tail mass exceeds tail_tol; increase n_max");
    amps /= std::sqrt(mass);
    return {PureState({trunc.dim()}, std::move(amps)), tail};
}

double spats_photocount(double nbar, int n) {
    if (!(nbar > 0.0)) throw ValidationError("mean photon number must be positive");
    if (n < 0) throw ValidationError("photon number must be nonnegative");
    return n * std::pow(nbar / (nbar + 1.0), n) / (nbar * (nbar + 1.0));
}

Mat annihilation_matrix(int n_max) {
    Mat a = Mat::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

namespace {

// J+ in the |j,-j>..|j,j> basis.
Mat spin_raising(double j) {
    const int d = static_cast<int>(std::round(2 * j)) + 1;
    Mat jp = Mat::Zero(d, d);
    for (int k = 0; k + 1 < d; ++k) {
        double m = -j + k;
        jp(k + 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    return jp;
}

} // namespace

Mat spin_jx(double j) {
    Mat jp = spin_raising(j);
    return 0.5 * (jp + jp.adjoint());
}

Mat spin_jy(double j) {
    Mat jp = spin_raising(j);
    return cplx(0, -0.5) * (jp - jp.adjoint());
}

Mat spin_jz(double j) {
    const int d = static_cast<int>(std::round(2 * j)) + 1;
    Mat jz = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) jz(k, k) = -j + k;
    return jz;
}

} // namespace ncwit
