#include "ncwit/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncwit {

Mat jordan_block_operator(const std::vector<std::pair<int, cplx>>& blocks) {
    int d = 0;
    for (const auto& [size, eig] : blocks) {
        if (size < 1) throw ValidationError("Jordan block size must be positive");
        if (std::abs(eig) <= 1e-12)
            throw ValidationError("zero Jordan eigenvalue makes the operation non-invertible");
        d += size;
    }
    Mat j = Mat::Zero(d, d);
    int off = 0;
    for (const auto& [size, eig] : blocks) {
        for (int k = 0; k < size; ++k) {
            j(off + k, off + k) = eig;
            if (k + 1 < size) j(off + k + 1, off + k) = 1.0;
        }
        off += size;
    }
    return j;
}

namespace {

PureState apply_local(const PureState& psi, int target, const Mat& op) {
    const auto& dims = psi.dims();
    const int n = static_cast<int>(dims.size());
    if (target < 0 || target >= n) throw ValidationError("local-operation target out of range");
    if (op.rows() != dims[target] || op.cols() != dims[target])
        throw ValidationError("local-operation matrix does not match the target dimension");
    if (std::abs(op.determinant()) <= 1e-12)
        throw ValidationError("local operation must be invertible");

    int right = 1;
    for (int i = target + 1; i < n; ++i) right *= dims[i];
    int left = psi.dim() / (right * dims[target]);

    Vec out = Vec::Zero(psi.dim());
    for (int l = 0; l < left; ++l)
        for (int r = 0; r < right; ++r)
            for (int row = 0; row < dims[target]; ++row) {
                cplx acc = 0.0;
                for (int col = 0; col < dims[target]; ++col)
                    acc += op(row, col) *
                           psi.amplitudes()((l * dims[target] + col) * right + r);
                out((l * dims[target] + row) * right + r) = acc;
            }
    double nrm = out.norm();
    if (nrm <= 1e-12) throw ValidationError("local operation annihilated the state");
    return PureState(dims, out / nrm);
}

} // namespace

PureState run_recipe(const Recipe& r, std::vector<PureState>* trace) {
    if (r.dims.empty()) throw ValidationError("recipe needs at least one subsystem");
    if (r.initial.size() != r.dims[0])
        throw ValidationError("initial state does not match the first subsystem dimension");

    Vec init = r.initial / r.initial.norm();
    PureState state({r.dims[0]}, std::move(init));
    for (size_t i = 1; i < r.dims.size(); ++i) {
        Vec zero = Vec::Zero(r.dims[i]);
        zero(0) = 1.0;
        state = tensor_product(state, PureState({r.dims[i]}, std::move(zero)));
    }
    if (trace) trace->push_back(state);

    for (const auto& step : r.steps) {
        if (step.kind == RecipeStep::Kind::ControlledShift)
            state = apply_controlled_shift(state, step.control, step.target);
        else
            state = apply_local(state, step.target, step.matrix);
        if (trace) trace->push_back(state);
    }
    return state;
}

Recipe ghz_recipe(cplx a, cplx b) {
    if (std::abs(a) < 1e-15 || std::abs(b) < 1e-15)
        throw ValidationError("GHZ recipe needs a nonclassical (two-term) input");
    Recipe r;
    r.dims = {2, 2, 2};
    r.initial = (Vec(2) << a, b).finished();
    r.steps = {{RecipeStep::Kind::ControlledShift, 0, 1, {}},
               {RecipeStep::Kind::ControlledShift, 1, 2, {}}};
    return r;
}

Recipe w_recipe(cplx a, cplx b) {
    if (std::abs(a) < 1e-15 || std::abs(b) < 1e-15)
        throw ValidationError("W recipe needs a nonclassical (two-term) input");
    Recipe r;
    r.dims = {2, 2, 2};
    r.initial = (Vec(2) << a, b).finished();
    Mat t = jordan_block_operator({{2, 1.0}});
    r.steps = {{RecipeStep::Kind::ControlledShift, 0, 1, {}},
               {RecipeStep::Kind::Local, -1, 1, t},
               {RecipeStep::Kind::ControlledShift, 1, 2, {}},
               {RecipeStep::Kind::ControlledShift, 0, 2, {}}};
    return r;
}

QutritCase parse_qutrit_case(const std::string& name) {
    if (name == "332-T1") return QutritCase::Case332T1;
    if (name == "332-T2") return QutritCase::Case332T2;
    if (name == "233-T1") return QutritCase::Case233T1;
    if (name == "233-T2") return QutritCase::Case233T2;
    throw ValidationError("unknown qutrit case: " + name);
}

std::string qutrit_case_name(QutritCase c) {
    switch (c) {
        case QutritCase::Case332T1: return "332-T1";
        case QutritCase::Case332T2: return "332-T2";
        case QutritCase::Case233T1: return "233-T1";
        case QutritCase::Case233T2: return "233-T2";
    }
    return "?";
}

PureState generate_qutrit_classes(QutritCase c, cplx a, cplx b, cplx cc) {
    if (std::abs(a) < 1e-15 || std::abs(b) < 1e-15)
        throw ValidationError("qutrit classes need nonzero a and b");
    auto make = [](std::vector<int> dims, std::vector<std::pair<int, cplx>> terms) {
        int dim = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
        Vec v = Vec::Zero(dim);
        for (auto& [idx, amp] : terms) v(idx) += amp;
        return PureState(std::move(dims), v / v.norm());
    };
    // index helpers for dims {3,3,2} and {2,3,3}
    auto i332 = [](int p, int q, int r) { return (p * 3 + q) * 2 + r; };
    auto i233 = [](int p, int q, int r) { return (p * 3 + q) * 3 + r; };
    switch (c) {
        case QutritCase::Case332T1:
            return make({3, 3, 2}, {{i332(0, 0, 0), a},
                                    {i332(1, 1, 0), b},
                                    {i332(2, 2, 0), cc},
                                    {i332(0, 1, 1), a},
                                    {i332(1, 2, 1), b}});
        case QutritCase::Case332T2:
            return make({3, 3, 2}, {{i332(0, 0, 0), a},
                                    {i332(1, 1, 0), b},
                                    {i332(2, 2, 0), cc},
                                    {i332(1, 2, 1), b}});
        case QutritCase::Case233T1:
            return make({2, 3, 3},
                        {{i233(0, 0, 0), a}, {i233(1, 1, 2), b}, {i233(1, 2, 0), b}});
        case QutritCase::Case233T2:
            return make({2, 3, 3},
                        {{i233(0, 0, 0), a}, {i233(1, 1, 1), b}, {i233(1, 2, 2), b}});
    }
    throw ValidationError("unknown qutrit case");
}

Recipe qutrit_recipe(QutritCase c, cplx a, cplx b, cplx cc) {
    Recipe r;
    bool is332 = (c == QutritCase::Case332T1 || c == QutritCase::Case332T2);
    bool isT1 = (c == QutritCase::Case332T1 || c == QutritCase::Case233T1);
    if (is332) {
        r.dims = {3, 3, 2};
        r.initial = (Vec(3) << a, b, cc).finished();
    } else {
        r.dims = {2, 3, 3};
        r.initial = (Vec(2) << a, b).finished();
    }
    Mat t = isT1 ? jordan_block_operator({{3, 1.0}})
                 : jordan_block_operator({{1, 1.0}, {2, 1.0}});
    r.steps = {{RecipeStep::Kind::ControlledShift, 0, 1, {}},
               {RecipeStep::Kind::Local, -1, 1, t},
               {RecipeStep::Kind::ControlledShift, 1, 2, {}},
               {RecipeStep::Kind::ControlledShift, 0, 2, {}}};
    return r;
}

double three_tangle(const PureState& psi) {
    if (psi.dims() != std::vector<int>{2, 2, 2})
        throw ValidationError("three-tangle is defined for three qubits");
    auto a = [&](int i, int j, int k) { return psi.amplitudes()((i * 2 + j) * 2 + k); };
    cplx a000 = a(0, 0, 0), a001 = a(0, 0, 1), a010 = a(0, 1, 0), a011 = a(0, 1, 1);
    cplx a100 = a(1, 0, 0), a101 = a(1, 0, 1), a110 = a(1, 1, 0), a111 = a(1, 1, 1);
    // Cayley hyperdeterminant of the 2x2x2 amplitude tensor
    cplx d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
              a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
    cplx d2 = a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 +
              a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010 +
              a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001;
    cplx d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

namespace {

int matrix_rank(const Mat& m, double tol = 1e-9) {
    Eigen::JacobiSVD<Mat> svd(m);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++rank;
    return rank;
}

} // namespace

std::vector<int> local_ranks(const PureState& psi, double tol) {
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    std::vector<int> ranks;
    for (int p = 0; p < static_cast<int>(psi.dims().size()); ++p) {
        DensityMatrix red = partial_trace(rho, {p});
        int rank = 0;
        for (int i = 0; i < red.eigenvalues().size(); ++i)
            if (red.eigenvalues()(i) > tol) ++rank;
        ranks.push_back(rank);
    }
    return ranks;
}

std::string to_string(ClassLabel label) {
    switch (label) {
        case ClassLabel::Product: return "product";
        case ClassLabel::BisepA: return "bisep-A|BC";
        case ClassLabel::BisepB: return "bisep-B|AC";
        case ClassLabel::BisepC: return "bisep-C|AB";
        case ClassLabel::W: return "W";
        case ClassLabel::GHZ: return "GHZ";
    }
    return "?";
}

ClassReport classify_three_qubit(const PureState& psi) {
    if (psi.dims() != std::vector<int>{2, 2, 2})
        throw ValidationError("classification is defined for three qubits");
    auto ranks = local_ranks(psi);
    double tau = three_tangle(psi);
    int ones = static_cast<int>(std::count(ranks.begin(), ranks.end(), 1));
    ClassLabel label;
    if (ones == 3) label = ClassLabel::Product;
    else if (ranks[0] == 1) label = ClassLabel::BisepA;
    else if (ranks[1] == 1) label = ClassLabel::BisepB;
    else if (ranks[2] == 1) label = ClassLabel::BisepC;
    else label = tau > 1e-8 ? ClassLabel::GHZ : ClassLabel::W;
    return {label, tau, ranks};
}

namespace {

// Qubit-slice pencil ranks: min/max of rank(A0 + t A1) over t in C u {inf}.
// Rank drops only on an algebraic set, so a few generic samples fix the max;
// the min is searched at t = 0, infinity, and the roots of det(A0 + t A1).
std::pair<int, int> pencil_ranks(const Mat& a0, const Mat& a1) {
    int pmax = 0, pmin = 1 << 20;
    auto consider = [&](const Mat& m) {
        int r = matrix_rank(m);
        pmax = std::max(pmax, r);
        pmin = std::min(pmin, r);
    };
    consider(a0);
    consider(a1);
    const cplx samples[] = {{0.7, 0.31}, {-1.3, 0.57}, {2.1, -0.83}, {0.13, -1.7}};
    for (cplx t : samples) consider(a0 + t * a1);

    // det(A0 + t A1) is a polynomial of degree <= n; fit by sampling.
    const int n = static_cast<int>(a0.rows());
    Eigen::MatrixXcd vand(n + 1, n + 1);
    Vec rhs(n + 1);
    for (int s = 0; s <= n; ++s) {
        cplx t(0.37 + 0.61 * s, 0.29 - 0.41 * s);
        cplx tp = 1.0;
        for (int k = 0; k <= n; ++k) {
            vand(s, k) = tp;
            tp *= t;
        }
        rhs(s) = (a0 + t * a1).determinant();
    }
    Vec coeff = vand.fullPivLu().solve(rhs);
    int deg = n;
    while (deg > 0 && std::abs(coeff(deg)) < 1e-12) --deg;
    if (deg >= 1) {
        Mat companion = Mat::Zero(deg, deg);
        for (int k = 0; k < deg; ++k) companion(k, deg - 1) = -coeff(k) / coeff(deg);
        for (int k = 1; k < deg; ++k) companion(k, k - 1) = 1.0;
        Eigen::ComplexEigenSolver<Mat> roots(companion);
        for (int k = 0; k < deg; ++k) consider(a0 + roots.eigenvalues()(k) * a1);
    }
    return {pmax, pmin};
}

} // namespace

RankSignature rank_signature(const PureState& psi) {
    RankSignature sig;
    sig.local_ranks = local_ranks(psi);
    const auto& dims = psi.dims();
    const int n = static_cast<int>(dims.size());

    // For a pure state the cut rank equals the complementary local rank;
    // recorded separately for auditability.
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    for (int p = 0; p < n; ++p) {
        std::vector<int> keep;
        for (int q = 0; q < n; ++q)
            if (q != p) keep.push_back(q);
        DensityMatrix red = partial_trace(rho, keep);
        int rank = 0;
        for (int i = 0; i < red.eigenvalues().size(); ++i)
            if (red.eigenvalues()(i) > 1e-9) ++rank;
        sig.cut_ranks.push_back(rank);
    }

    auto qubit = std::find(dims.begin(), dims.end(), 2);
    if (n == 3 && qubit != dims.end()) {
        int p = static_cast<int>(qubit - dims.begin());
        int right = 1;
        for (int i = p + 1; i < n; ++i) right *= dims[i];
        int rest = psi.dim() / 2;
        Mat a0(1, rest), a1(1, rest); // slices flattened over the other parties
        int col = 0;
        for (int idx = 0; idx < psi.dim(); ++idx) {
            int digit = (idx / right) % 2;
            if (digit == 0) a0(0, col) = psi.amplitudes()(idx);
            // matching index with the qubit digit flipped to 1
            if (digit == 0) {
                a1(0, col) = psi.amplitudes()(idx + right);
                ++col;
            }
        }
        // reshape the two slices as d_a x d_b matrices over the other parties
        std::vector<int> other;
        for (int q = 0; q < n; ++q)
            if (q != p) other.push_back(dims[q]);
        Mat m0(other[0], other[1]), m1(other[0], other[1]);
        for (int i = 0; i < other[0]; ++i)
            for (int j = 0; j < other[1]; ++j) {
                m0(i, j) = a0(0, i * other[1] + j);
                m1(i, j) = a1(0, i * other[1] + j);
            }
        auto [pmax, pmin] = pencil_ranks(m0, m1);
        sig.pencil_max = pmax;
        sig.pencil_min = pmin;
    }
    return sig;
}

} // namespace ncwit
