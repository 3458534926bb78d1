#include "ncwit/classical.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace ncwit {

namespace {

constexpr double kGridStep = 0.05;    // complex-plane grid for coherent search
constexpr double kSphereStep = 0.03;  // angular grid for the SU(2) sphere
constexpr double kRefineTol = 1e-10;  // golden-section parameter resolution

double operator_norm(const Operator& m) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(m.entries(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double quadratic_form(const Operator& m, const Vec& v) {
    return (v.adjoint() * m.entries() * v)(0, 0).real();
}

// Golden-section maximization on [lo, hi].
template <typename F>
double golden_max(F f, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Coordinate-wise golden-section refinement of a smooth 2-parameter objective.
template <typename F>
std::pair<double, std::array<double, 2>> refine_2d(F f, std::array<double, 2> x, double h) {
    double best = f(x[0], x[1]);
    for (int cycle = 0; cycle < 80; ++cycle) {
        double prev = best;
        x[0] = golden_max([&](double u) { return f(u, x[1]); }, x[0] - h, x[0] + h, kRefineTol);
        x[1] = golden_max([&](double u) { return f(x[0], u); }, x[1] - h, x[1] + h, kRefineTol);
        best = f(x[0], x[1]);
        h = std::max(h * 0.5, 1e-6);
        if (best - prev < 1e-14 && cycle > 3) break;
    }
    return {best, x};
}

Vec random_unit_vector(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    return v / v.norm();
}

// Is m the projector |n><n| in the Fock basis?
int fock_projector_index(const Mat& m) {
    int hit = -1;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            cplx v = m(i, j);
            if (i == j && std::abs(v - 1.0) < 1e-14) {
                if (hit >= 0) return -1;
                hit = i;
            } else if (std::abs(v) > 1e-14) {
                return -1;
            }
        }
    return hit;
}

} // namespace

ClassicalFamily ClassicalFamily::orthonormal(int d) {
    if (d < 1) throw ValidationError("orthonormal family needs d >= 1");
    ClassicalFamily f{Kind::OrthonormalDiscrete};
    f.d = d;
    return f;
}

ClassicalFamily ClassicalFamily::coherent(TruncationConfig trunc, double radius) {
    if (!(radius > 0)) throw ValidationError("coherent search radius must be positive");
    ClassicalFamily f{Kind::CanonicalCoherent};
    f.trunc = trunc;
    f.radius = radius;
    return f;
}

ClassicalFamily ClassicalFamily::su2(double j) {
    if (j < 0.5) throw ValidationError("SU(2) family needs j >= 1/2");
    ClassicalFamily f{Kind::SU2Coherent};
    f.j = j;
    return f;
}

ClassicalFamily ClassicalFamily::product(std::vector<int> dims) {
    if (dims.size() != 2) throw ValidationError("product-state family is bipartite here");
    ClassicalFamily f{Kind::ProductStates};
    f.dims = std::move(dims);
    return f;
}

int ClassicalFamily::state_dim() const {
    switch (kind) {
        case Kind::OrthonormalDiscrete: return d;
        case Kind::CanonicalCoherent: return trunc.dim();
        case Kind::SU2Coherent: return static_cast<int>(std::round(2 * j)) + 1;
        case Kind::ProductStates:
            return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
    }
    throw ValidationError("unknown family kind");
}

PureState classical_state(const ClassicalFamily& family, const ClassicalParams& params) {
    switch (family.kind) {
        case ClassicalFamily::Kind::OrthonormalDiscrete: {
            int i = std::get<int>(params);
            if (i < 0 || i >= family.d) throw ValidationError("basis index out of range");
            Vec v = Vec::Zero(family.d);
            v(i) = 1.0;
            return PureState({family.d}, std::move(v));
        }
        case ClassicalFamily::Kind::CanonicalCoherent: {
            Vec v = coherent_amplitudes_unchecked(std::get<cplx>(params), family.trunc.n_max);
            return PureState({family.trunc.dim()}, std::move(v));
        }
        case ClassicalFamily::Kind::SU2Coherent:
            return su2_coherent_state(std::get<cplx>(params), family.j);
        case ClassicalFamily::Kind::ProductStates: {
            const auto& factors = std::get<std::vector<Vec>>(params);
            if (factors.size() != family.dims.size())
                throw ValidationError("product params do not match the dimension list");
            PureState out({family.dims[0]}, factors[0] / factors[0].norm());
            for (size_t k = 1; k < factors.size(); ++k)
                out = tensor_product(out, PureState({family.dims[k]}, factors[k] / factors[k].norm()));
            return out;
        }
    }
    throw ValidationError("unknown family kind");
}

PureState random_classical_state(const ClassicalFamily& family, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    switch (family.kind) {
        case ClassicalFamily::Kind::OrthonormalDiscrete: {
            int i = static_cast<int>(unif(rng) * family.d) % family.d;
            return classical_state(family, i);
        }
        case ClassicalFamily::Kind::CanonicalCoherent: {
            // uniform over the search disk
            double r = family.radius * std::sqrt(unif(rng));
            double phi = 2.0 * std::numbers::pi * unif(rng);
            return classical_state(family, cplx(r * std::cos(phi), r * std::sin(phi)));
        }
        case ClassicalFamily::Kind::SU2Coherent: {
            double theta = std::acos(1.0 - 2.0 * unif(rng));
            double phi = 2.0 * std::numbers::pi * unif(rng);
            cplx z = std::tan(0.5 * theta) * cplx(std::cos(phi), std::sin(phi));
            return classical_state(family, z);
        }
        case ClassicalFamily::Kind::ProductStates: {
            std::vector<Vec> factors;
            for (int d : family.dims) factors.push_back(random_unit_vector(d, rng));
            return classical_state(family, factors);
        }
    }
    throw ValidationError("unknown family kind");
}

double classical_expectation(const ClassicalFamily& family, const Operator& m,
                             const ClassicalParams& params) {
    if (!m.is_hermitian()) throw ValidationError("observable must be Hermitian");
    PureState c = classical_state(family, params);
    if (c.dim() != m.dim()) throw ValidationError("observable does not match the family dimension");
    return quadratic_form(m, c.amplitudes());
}

namespace {

LambdaResult lambda_orthonormal(const ClassicalFamily& family, const Operator& m) {
    int best = 0;
    double value = m.entries()(0, 0).real();
    for (int i = 1; i < family.d; ++i) {
        double v = m.entries()(i, i).real();
        if (v > value) {
            value = v;
            best = i;
        }
    }
    return {value, best, "analytic", 0.0};
}

LambdaResult lambda_coherent_numeric(const ClassicalFamily& family, const Operator& m) {
    const int n_max = family.trunc.n_max;
    auto f = [&](double re, double im) {
        Vec v = coherent_amplitudes_unchecked(cplx(re, im), n_max);
        return quadratic_form(m, v);
    };
    double best = -1e300;
    std::array<double, 2> arg{0.0, 0.0};
    const double R = family.radius;
    const int steps = static_cast<int>(std::ceil(2 * R / kGridStep));
    for (int i = 0; i <= steps; ++i) {
        double re = -R + i * kGridStep;
        for (int k = 0; k <= steps; ++k) {
            double im = -R + k * kGridStep;
            if (re * re + im * im > R * R) continue;
            double v = f(re, im);
            if (v > best) {
                best = v;
                arg = {re, im};
            }
        }
    }
    auto [value, x] = refine_2d(f, arg, kGridStep);
    double nm = operator_norm(m);
    return {value, cplx(x[0], x[1]), "grid+refine",
            2.0 * nm * kGridStep + nm * family.trunc.tail_tol};
}

LambdaResult lambda_su2_numeric(const ClassicalFamily& family, const Operator& m) {
    auto z_of = [](double theta, double phi) {
        return std::tan(0.5 * std::clamp(theta, 0.0, std::numbers::pi - 1e-12)) *
               cplx(std::cos(phi), std::sin(phi));
    };
    auto f = [&](double theta, double phi) {
        Vec v = su2_coherent_state(z_of(theta, phi), family.j).amplitudes();
        return quadratic_form(m, v);
    };
    double best = -1e300;
    std::array<double, 2> arg{0.0, 0.0};
    for (double theta = 0.0; theta <= std::numbers::pi; theta += kSphereStep)
        for (double phi = 0.0; phi < 2.0 * std::numbers::pi; phi += kSphereStep) {
            double v = f(theta, phi);
            if (v > best) {
                best = v;
                arg = {theta, phi};
            }
        }
    auto [value, x] = refine_2d(f, arg, kSphereStep);
    double nm = operator_norm(m);
    // Lipschitz bound with the sphere step playing the role of the grid step.
    return {value, z_of(x[0], x[1]), "grid+refine", 2.0 * nm * kSphereStep};
}

void check_coherent_support(const ClassicalFamily& family, const Operator& m) {
    // The observable must live well inside the truncated Fock space; an
    // operator with weight near n_max would see truncation artifacts.
    const int dim = m.dim();
    const int guard = std::max(1, dim / 10);
    double tail = m.entries().bottomRows(guard).squaredNorm() +
                  m.entries().rightCols(guard).squaredNorm();
    double total = m.entries().squaredNorm();
    if (total > 0 && tail / total > 1e-3)
        throw NumericGuardError("observable has significant support near the Fock cutoff");
    (void)family;
}

} // namespace

LambdaResult lambda_max(const ClassicalFamily& family, const Operator& m, LambdaMethod method) {
    if (!m.is_hermitian()) throw ValidationError("lambda_max requires a Hermitian observable");
    if (m.dim() != family.state_dim())
        throw ValidationError("observable dimension does not match the family");

    switch (family.kind) {
        case ClassicalFamily::Kind::OrthonormalDiscrete:
            return lambda_orthonormal(family, m);
        case ClassicalFamily::Kind::CanonicalCoherent: {
            if (method != LambdaMethod::Numeric) {
                int n = fock_projector_index(m.entries());
                if (n >= 0) {
                    double value = n == 0 ? 1.0
                                          : std::exp(n * std::log(static_cast<double>(n)) - n -
                                                     std::lgamma(n + 1.0));
                    return {value, cplx(std::sqrt(static_cast<double>(n)), 0.0), "analytic", 0.0};
                }
                if (method == LambdaMethod::Analytic)
                    throw ValidationError("no analytic fast path for this observable");
            }
            check_coherent_support(family, m);
            return lambda_coherent_numeric(family, m);
        }
        case ClassicalFamily::Kind::SU2Coherent:
            if (method == LambdaMethod::Analytic)
                throw ValidationError("no analytic fast path for the SU(2) family");
            return lambda_su2_numeric(family, m);
        case ClassicalFamily::Kind::ProductStates:
            return seesaw_product_max(m, family.dims);
    }
    throw ValidationError("unknown family kind");
}

LambdaResult seesaw_product_max(const Operator& m, const std::vector<int>& dims,
                                int restarts, std::uint64_t seed) {
    if (!m.is_hermitian()) throw ValidationError("see-saw requires a Hermitian observable");
    if (dims.size() != 2 || dims[0] * dims[1] != m.dim())
        throw ValidationError("dims do not factor the operator dimension");
    const int d1 = dims[0], d2 = dims[1];
    const Mat& M = m.entries();

    // <b|M|b> as a d1 x d1 operator, and the mirrored contraction.
    auto contract_b = [&](const Vec& b) {
        Mat out = Mat::Zero(d1, d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j)
                for (int k = 0; k < d2; ++k)
                    for (int l = 0; l < d2; ++l)
                        out(i, j) += std::conj(b(k)) * M(i * d2 + k, j * d2 + l) * b(l);
        return out;
    };
    auto contract_a = [&](const Vec& a) {
        Mat out = Mat::Zero(d2, d2);
        for (int k = 0; k < d2; ++k)
            for (int l = 0; l < d2; ++l)
                for (int i = 0; i < d1; ++i)
                    for (int j = 0; j < d1; ++j)
                        out(k, l) += std::conj(a(i)) * M(i * d2 + k, j * d2 + l) * a(j);
        return out;
    };
    auto top_eigvec = [](const Mat& h) {
        Eigen::SelfAdjointEigenSolver<Mat> solver(h);
        return std::pair<double, Vec>{solver.eigenvalues()(h.rows() - 1),
                                      solver.eigenvectors().col(h.rows() - 1)};
    };

    std::mt19937_64 rng(seed);
    double best = -1e300;
    Vec best_a, best_b;
    for (int r = 0; r < restarts; ++r) {
        Vec a = random_unit_vector(d1, rng);
        Vec b = random_unit_vector(d2, rng);
        double value = -1e300;
        for (int it = 0; it < 500; ++it) {
            auto [va, na] = top_eigvec(contract_b(b));
            a = na;
            auto [vb, nb] = top_eigvec(contract_a(a));
            b = nb;
            if (vb - value < 1e-12) {
                value = vb;
                break;
            }
            value = vb;
        }
        if (value > best) {
            best = value;
            best_a = a;
            best_b = b;
        }
    }
    return {best, std::vector<Vec>{best_a, best_b}, "see-saw", 1e-9};
}

} // namespace ncwit
