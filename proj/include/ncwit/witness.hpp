#pragma once

#include "ncwit/classical.hpp"

namespace ncwit {

// W = lambda I - M for a classical family; lambda provenance is kept so a
// numeric underestimate stays traceable.
struct Witness {
    Operator m;
    double lambda;
    ClassicalFamily family;
    std::string lambda_method;

    Operator matrix() const;
};

struct DetectionReport {
    double expectation; // lambda - Tr(M rho)
    bool nonclassical;
    double margin; // |expectation| when detected, distance to the threshold otherwise
    double lambda;
    std::string lambda_method;
};

constexpr double kDetectionTol = 1e-9;

// Builds the witness and re-verifies positivity on 200 sampled classical
// states of the family.
Witness build_witness(const Operator& m, const ClassicalFamily& family,
                      LambdaMethod method = LambdaMethod::Auto, std::uint64_t seed = 0);

DetectionReport witness_expectation(const Witness& w, const DensityMatrix& rho);
DetectionReport witness_expectation(const Witness& w, const PureState& psi);

// p below this bound makes rho = p I/d + (1-p)|psi><psi| detectable.
double white_noise_threshold(double lambda, int d);

// p below this bound makes rho = p rho_perp + (1-p)|psi><psi| detectable.
double orthogonal_mix_threshold(double lambda);

struct BlochReport {
    double r_x, r_y, r_z;
    bool nonclassical; // off the z-axis of the Bloch ball
};

BlochReport qubit_bloch_classicality(const DensityMatrix& rho);

} // namespace ncwit
