#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncwit/witness.hpp"

#include <cmath>
#include <random>

using namespace ncwit;

TEST_CASE("single-photon witness detects the Fock state") {
    TruncationConfig trunc(40, 1e-10);
    auto fam = ClassicalFamily::coherent(trunc, 4.0);
    Mat proj = Mat::Zero(41, 41);
    proj(1, 1) = 1.0;
    Witness w = build_witness(Operator::hermitian(proj), fam);
    CHECK(w.lambda == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    DetectionReport rep = witness_expectation(w, fock_state(1, trunc));
    CHECK(rep.nonclassical);
    CHECK(rep.expectation == doctest::Approx(std::exp(-1.0) - 1.0).epsilon(1e-12));
    CHECK(rep.margin == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

    // a coherent state itself is never detected
    DetectionReport coh = witness_expectation(w, coherent_state(cplx(1.0, 0.5), trunc).state);
    CHECK(!coh.nonclassical);
    CHECK(coh.expectation >= -1e-9);
}

TEST_CASE("witness matrix is lambda I - M") {
    auto fam = ClassicalFamily::orthonormal(3);
    Mat m = Mat::Zero(3, 3);
    m.diagonal() << 0.2, 0.6, 0.1;
    Witness w = build_witness(Operator::hermitian(m), fam);
    Mat expect = 0.6 * Mat::Identity(3, 3) - m;
    CHECK((w.matrix().entries() - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("superposition of two basis states: thresholds in d = 3") {
    // |psi> = (|0> + |1>)/sqrt2, M = |psi><psi| over the orthonormal family
    Vec psi(3);
    psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
    auto fam = ClassicalFamily::orthonormal(3);
    Witness w = build_witness(Operator::hermitian(psi * psi.adjoint()), fam);
    CHECK(w.lambda == doctest::Approx(0.5).epsilon(1e-14));

    double p_star = white_noise_threshold(w.lambda, 3);
    CHECK(p_star == doctest::Approx(0.75).epsilon(1e-14));

    auto mixed = [&](double p) {
        Mat rho = p / 3.0 * Mat::Identity(3, 3) + (1.0 - p) * psi * psi.adjoint();
        return DensityMatrix({3}, rho);
    };
    // exactly at the threshold the witness mean vanishes
    CHECK(std::abs(witness_expectation(w, mixed(p_star)).expectation) < 1e-12);
    CHECK(witness_expectation(w, mixed(p_star - 0.01)).nonclassical);
    CHECK(!witness_expectation(w, mixed(p_star + 0.01)).nonclassical);

    CHECK(orthogonal_mix_threshold(w.lambda) == doctest::Approx(0.5).epsilon(1e-14));
    Vec perp(3);
    perp << 0.0, 0.0, 1.0;
    auto ortho = [&](double p) {
        Mat rho = p * perp * perp.adjoint() + (1.0 - p) * psi * psi.adjoint();
        return DensityMatrix({3}, rho);
    };
    CHECK(std::abs(witness_expectation(w, ortho(0.5)).expectation) < 1e-12);
    CHECK(witness_expectation(w, ortho(0.49)).nonclassical);
    CHECK(!witness_expectation(w, ortho(0.51)).nonclassical);
}

TEST_CASE("classical mixtures stay undetected") {
    std::mt19937_64 rng(17);
    TruncationConfig trunc(40, 1e-10);
    auto fam = ClassicalFamily::coherent(trunc, 3.0);
    Mat proj = Mat::Zero(41, 41);
    proj(2, 2) = 1.0;
    Witness w = build_witness(Operator::hermitian(proj), fam);

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        // convex mixture of three coherent states
        Mat rho = Mat::Zero(41, 41);
        double total = 0.0;
        std::vector<double> weights;
        for (int k = 0; k < 3; ++k) {
            weights.push_back(unif(rng));
            total += weights.back();
        }
        for (int k = 0; k < 3; ++k) {
            PureState c = random_classical_state(fam, rng);
            rho += weights[k] / total * c.amplitudes() * c.amplitudes().adjoint();
        }
        DetectionReport rep = witness_expectation(w, DensityMatrix({41}, rho));
        CHECK(rep.expectation >= -1e-8);
        CHECK(!rep.nonclassical);
    }
}

TEST_CASE("threshold validation") {
    CHECK_THROWS_AS(white_noise_threshold(0.5, 1), ValidationError);
    CHECK_THROWS_AS(white_noise_threshold(1.5, 2), ValidationError);
    CHECK_THROWS_AS(orthogonal_mix_threshold(-0.1), ValidationError);
}

TEST_CASE("qubit Bloch criterion") {
    Mat diag = Mat::Zero(2, 2);
    diag.diagonal() << 0.3, 0.7;
    BlochReport classical = qubit_bloch_classicality(DensityMatrix({2}, diag));
    CHECK(!classical.nonclassical);
    CHECK(classical.r_z == doctest::Approx(-0.4));

    Vec plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    BlochReport coherent =
        qubit_bloch_classicality(DensityMatrix::from_pure(PureState({2}, plus)));
    CHECK(coherent.nonclassical);
    CHECK(coherent.r_x == doctest::Approx(1.0));
    CHECK(coherent.r_y == doctest::Approx(0.0));

    Mat big = Mat::Identity(3, 3) / 3.0;
    CHECK_THROWS_AS(qubit_bloch_classicality(DensityMatrix({3}, big)), ValidationError);
}

TEST_CASE("dimension mismatch is rejected") {
    auto fam = ClassicalFamily::orthonormal(3);
    Mat m = Mat::Identity(3, 3);
    Witness w = build_witness(Operator::hermitian(m), fam);
    Vec v(2);
    v << 1.0, 0.0;
    CHECK_THROWS_AS(witness_expectation(w, PureState({2}, v)), ValidationError);
}
