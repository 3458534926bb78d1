#include "ncwit/witness.hpp"

namespace ncwit {

Operator Witness::matrix() const {
    return Operator::hermitian(lambda * Mat::Identity(m.dim(), m.dim()) - m.entries());
}

Witness build_witness(const Operator& m, const ClassicalFamily& family,
                      LambdaMethod method, std::uint64_t seed) {
    LambdaResult lr = lambda_max(family, m, method);
    Witness w{m, lr.value, family, lr.method};

    // Observation-1 check, sampled: no classical state of the family may
    // produce a negative mean value.
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 200; ++i) {
        PureState c = random_classical_state(family, rng);
        double expect = w.lambda -
                        (c.amplitudes().adjoint() * m.entries() * c.amplitudes())(0, 0).real();
        if (expect < -1e-8)
            throw NumericGuardError(
                "witness failed the sampled classicality check; lambda is an underestimate");
    }
    return w;
}

namespace {

DetectionReport make_report(const Witness& w, double trace_m_rho) {
    double expectation = w.lambda - trace_m_rho;
    bool detected = expectation < -kDetectionTol;
    return {expectation, detected, std::abs(expectation), w.lambda, w.lambda_method};
}

} // namespace

DetectionReport witness_expectation(const Witness& w, const DensityMatrix& rho) {
    if (rho.dim() != w.m.dim()) throw ValidationError("state does not match the witness dimension");
    return make_report(w, (w.m.entries() * rho.entries()).trace().real());
}

DetectionReport witness_expectation(const Witness& w, const PureState& psi) {
    if (psi.dim() != w.m.dim()) throw ValidationError("state does not match the witness dimension");
    const Vec& v = psi.amplitudes();
    return make_report(w, (v.adjoint() * w.m.entries() * v)(0, 0).real());
}

double white_noise_threshold(double lambda, int d) {
    if (d < 2) throw ValidationError("white-noise threshold needs d >= 2");
    if (lambda < 0.0 || lambda > 1.0)
        throw ValidationError("lambda of a rank-one observable lies in [0,1]");
    return (1.0 - lambda) / (1.0 - 1.0 / d);
}

double orthogonal_mix_threshold(double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw ValidationError("lambda of a rank-one observable lies in [0,1]");
    return 1.0 - lambda;
}

BlochReport qubit_bloch_classicality(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw ValidationError("Bloch criterion applies to qubits only");
    const Mat& r = rho.entries();
    double rx = 2.0 * r(0, 1).real();
    double ry = -2.0 * r(0, 1).imag();
    double rz = (r(0, 0) - r(1, 1)).real();
    bool nonclassical = std::max(std::abs(rx), std::abs(ry)) > kDetectionTol;
    return {rx, ry, rz, nonclassical};
}

} // namespace ncwit
