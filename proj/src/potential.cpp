#include "ncwit/potential.hpp"

#include <cmath>
#include <numbers>

namespace ncwit {

namespace {

// Permutation of global indices induced by the controlled shift.
std::vector<int> shift_permutation(const std::vector<int>& dims, int control, int target) {
    const int n = static_cast<int>(dims.size());
    if (control == target) throw ValidationError("control and target must differ");
    if (control < 0 || control >= n || target < 0 || target >= n)
        throw ValidationError("subsystem index out of range");

    std::vector<int> strides(n, 1);
    for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * dims[i + 1];
    const int dim = strides[0] * dims[0];

    std::vector<int> perm(dim);
    for (int idx = 0; idx < dim; ++idx) {
        int ctrl = (idx / strides[control]) % dims[control];
        int tgt = (idx / strides[target]) % dims[target];
        int new_tgt = (tgt + ctrl) % dims[target];
        perm[idx] = idx + (new_tgt - tgt) * strides[target];
    }
    return perm;
}

} // namespace

CDGate::CDGate(int d_) : d(d_), unitary(Operator::identity(1)) {
    if (d < 2) throw ValidationError("CD gate needs d >= 2");
    Mat u = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) u(i * d + (j + i) % d, i * d + j) = 1.0;
    unitary = Operator(std::move(u), false);
}

PureState apply_controlled_shift(const PureState& psi, int control, int target) {
    auto perm = shift_permutation(psi.dims(), control, target);
    Vec out(psi.dim());
    for (int idx = 0; idx < psi.dim(); ++idx) out(perm[idx]) = psi.amplitudes()(idx);
    return PureState(psi.dims(), std::move(out));
}

DensityMatrix apply_controlled_shift(const DensityMatrix& rho, int control, int target) {
    auto perm = shift_permutation(rho.dims(), control, target);
    Mat out(rho.dim(), rho.dim());
    for (int r = 0; r < rho.dim(); ++r)
        for (int c = 0; c < rho.dim(); ++c) out(perm[r], perm[c]) = rho.entries()(r, c);
    return DensityMatrix(rho.dims(), std::move(out));
}

namespace {

void check_equal_dims(const std::vector<int>& dims, int control, int target) {
    if (control < 0 || control >= static_cast<int>(dims.size()) || target < 0 ||
        target >= static_cast<int>(dims.size()))
        throw ValidationError("subsystem index out of range");
    if (dims[control] != dims[target])
        throw ValidationError("CD gate requires equal control and target dimensions");
}

} // namespace

PureState apply_cd(const PureState& psi, int control, int target) {
    check_equal_dims(psi.dims(), control, target);
    return apply_controlled_shift(psi, control, target);
}

DensityMatrix apply_cd(const DensityMatrix& rho, int control, int target) {
    check_equal_dims(rho.dims(), control, target);
    return apply_controlled_shift(rho, control, target);
}

BeamSplitter::BeamSplitter(TruncationConfig trunc) : trunc_(trunc) {
    const int n_max = trunc_.n_max;
    const double theta = -std::numbers::pi / 4.0;
    blocks_.reserve(2 * n_max + 1);
    for (int total = 0; total <= 2 * n_max; ++total) {
        const int lo = std::max(0, total - n_max);
        const int hi = std::min(total, n_max);
        const int L = hi - lo + 1;
        // H = i (a1^dag a2 - a1 a2^dag) restricted to n1 + n2 = total;
        // the block unitary is exp(-i theta H).
        Mat h = Mat::Zero(L, L);
        for (int r = 0; r + 1 < L; ++r) {
            int n1 = lo + r; // coupling |n1, total-n1> <-> |n1+1, total-n1-1>
            double g = std::sqrt(static_cast<double>((n1 + 1) * (total - n1)));
            h(r + 1, r) = cplx(0, 1) * g;
            h(r, r + 1) = cplx(0, -1) * g;
        }
        Eigen::SelfAdjointEigenSolver<Mat> solver(h);
        Vec phases(L);
        for (int k = 0; k < L; ++k)
            phases(k) = std::exp(cplx(0, -theta * solver.eigenvalues()(k)));
        blocks_.push_back(solver.eigenvectors() * phases.asDiagonal() *
                          solver.eigenvectors().adjoint());
    }
}

int BeamSplitter::photon_support(const PureState& psi) {
    double tail = 0.0;
    for (int n = psi.dim() - 1; n >= 0; --n) {
        tail += std::norm(psi.amplitudes()(n));
        if (tail > 1e-10) return n;
    }
    return 0;
}

PureState BeamSplitter::apply(const PureState& psi1, const PureState& psi2) const {
    const int d = trunc_.dim();
    if (psi1.dim() != d || psi2.dim() != d)
        throw ValidationError("beam-splitter ports must match the truncation dimension");
    if (photon_support(psi1) + photon_support(psi2) > trunc_.n_max)
        throw NumericGuardError("combined photon support exceeds n_max; output would leak");

    PureState joint = tensor_product(psi1, psi2);
    Vec out = Vec::Zero(d * d);
    for (int total = 0; total < static_cast<int>(blocks_.size()); ++total) {
        const int lo = std::max(0, total - trunc_.n_max);
        const int hi = std::min(total, trunc_.n_max);
        const int L = hi - lo + 1;
        Vec seg(L);
        for (int r = 0; r < L; ++r) seg(r) = joint.amplitudes()((lo + r) * d + (total - lo - r));
        seg = blocks_[total] * seg;
        for (int r = 0; r < L; ++r) out((lo + r) * d + (total - lo - r)) = seg(r);
    }
    out /= out.norm();
    return PureState({d, d}, std::move(out));
}

Mat BeamSplitter::full_unitary() const {
    const int d = trunc_.dim();
    Mat u = Mat::Zero(d * d, d * d);
    for (int total = 0; total < static_cast<int>(blocks_.size()); ++total) {
        const int lo = std::max(0, total - trunc_.n_max);
        const int hi = std::min(total, trunc_.n_max);
        const int L = hi - lo + 1;
        for (int r = 0; r < L; ++r)
            for (int c = 0; c < L; ++c)
                u((lo + r) * d + (total - lo - r), (lo + c) * d + (total - lo - c)) =
                    blocks_[total](r, c);
    }
    return u;
}

int superposition_number(const PureState& psi, double tol) {
    int count = 0;
    for (int i = 0; i < psi.dim(); ++i)
        if (std::abs(psi.amplitudes()(i)) > tol) ++count;
    return count;
}

SchmidtDecomposition schmidt_decomposition(const PureState& psi, const std::vector<int>& dims) {
    if (dims.size() != 2 || dims[0] * dims[1] != psi.dim())
        throw ValidationError("dims do not match the amplitude length");
    Mat a(dims[0], dims[1]);
    for (int i = 0; i < dims[0]; ++i)
        for (int j = 0; j < dims[1]; ++j) a(i, j) = psi.amplitudes()(i * dims[1] + j);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

int schmidt_number(const PureState& psi, const std::vector<int>& dims, double tol) {
    auto sd = schmidt_decomposition(psi, dims);
    int count = 0;
    for (int i = 0; i < sd.coefficients.size(); ++i)
        if (sd.coefficients(i) > tol) ++count;
    return count;
}

ConversionReport cd_conversion_check(const PureState& psi, int d) {
    if (psi.dims().size() != 1 || psi.dim() != d)
        throw ValidationError("conversion check takes a single qudit of dimension d");
    Vec zero = Vec::Zero(d);
    zero(0) = 1.0;
    PureState joint = tensor_product(psi, PureState({d}, std::move(zero)));
    PureState out = apply_cd(joint, 0, 1);
    int sup = superposition_number(psi);
    int sch = schmidt_number(out, {d, d});
    return {sup, sch, sup == sch, 0.0};
}

ConversionReport cd_conversion_check(const DensityMatrix& rho, int d) {
    if (rho.dims().size() != 1 || rho.dim() != d)
        throw ValidationError("conversion check takes a single qudit of dimension d");
    Mat anc = Mat::Zero(d, d);
    anc(0, 0) = 1.0;
    DensityMatrix joint(std::vector<int>{d, d},
                        [&] {
                            Mat out(d * d, d * d);
                            for (int i = 0; i < d; ++i)
                                for (int j = 0; j < d; ++j)
                                    out.block(i * d, j * d, d, d) = rho.entries()(i, j) * anc;
                            return out;
                        }());
    DensityMatrix out = apply_cd(joint, 0, 1);

    // Weight of the output outside span{|kk>}.
    double residual = 0.0;
    int support = 0;
    for (int r = 0; r < d * d; ++r) {
        bool r_diag = (r / d) == (r % d);
        if (r_diag && out.entries()(r, r).real() > 1e-9) ++support;
        for (int c = 0; c < d * d; ++c) {
            bool c_diag = (c / d) == (c % d);
            if (!r_diag || !c_diag) residual = std::max(residual, std::abs(out.entries()(r, c)));
        }
    }
    return {support, support, residual < 1e-10, residual};
}

PureState momentum_state(int d, int j) {
    if (d < 2 || j < 0 || j >= d) throw ValidationError("momentum state needs 0 <= j < d");
    Vec v(d);
    for (int k = 0; k < d; ++k) {
        double phase = 2.0 * std::numbers::pi * j * k / d;
        v(k) = cplx(std::cos(phase), std::sin(phase)) / std::sqrt(static_cast<double>(d));
    }
    return PureState({d}, std::move(v));
}

MomentumPortReport momentum_port_check(const PureState& first_port, int d, int j) {
    if (first_port.dim() != d)
        throw ValidationError("first port must be a single qudit of dimension d");
    PureState joint = tensor_product(first_port, momentum_state(d, j));
    PureState out = apply_cd(joint, 0, 1);
    int sch = schmidt_number(out, {d, d});
    return {sch, sch == 1};
}

} // namespace ncwit
