#pragma once

#include "ncwit/core.hpp"

namespace ncwit {

// Qudit CNOT |i,j> -> |i, j + i mod d> as a permutation matrix on d^2.
struct CDGate {
    int d;
    Operator unitary;

    explicit CDGate(int d);
};

// Shifts the target digit by the control digit, mod the target dimension.
// Subsystem dimensions may differ; apply_cd below enforces the equal-d case.
PureState apply_controlled_shift(const PureState& psi, int control, int target);
DensityMatrix apply_controlled_shift(const DensityMatrix& rho, int control, int target);

PureState apply_cd(const PureState& psi, int control, int target);
DensityMatrix apply_cd(const DensityMatrix& rho, int control, int target);

// 50:50 beam splitter exp((pi/4)(a1 a2^dag - a1^dag a2)), block-diagonal in
// the total photon number. The sign sends a1^dag to (a1^dag + a2^dag)/sqrt2,
// matching D1(a/sqrt2) D2(a/sqrt2) on coherent inputs without extra phases.
class BeamSplitter {
  public:
    explicit BeamSplitter(TruncationConfig trunc = {});

    const TruncationConfig& trunc() const { return trunc_; }
    // Photon index above which the mode's tail mass drops below 1e-10.
    static int photon_support(const PureState& psi);
    PureState apply(const PureState& psi1, const PureState& psi2) const;
    Mat full_unitary() const;

  private:
    TruncationConfig trunc_;
    std::vector<Mat> blocks_; // one unitary per total photon number
};

int superposition_number(const PureState& psi, double tol = 1e-9);

struct SchmidtDecomposition {
    Eigen::VectorXd coefficients; // descending, sum of squares 1
    Mat left_basis;               // columns
    Mat right_basis;              // columns
};

SchmidtDecomposition schmidt_decomposition(const PureState& psi, const std::vector<int>& dims);
int schmidt_number(const PureState& psi, const std::vector<int>& dims, double tol = 1e-9);

struct ConversionReport {
    int superposition_number; // of the input
    int schmidt_number;       // of the CD output (support count for mixed input)
    bool consistent;
    double support_residual; // mixed input: weight outside span{|kk>}
};

ConversionReport cd_conversion_check(const PureState& psi, int d);
ConversionReport cd_conversion_check(const DensityMatrix& rho, int d);

// Discrete-phase-space momentum state (1/sqrt d) sum_k w^{jk} |k>.
PureState momentum_state(int d, int j);

struct MomentumPortReport {
    int schmidt_number;
    bool separable;
};

MomentumPortReport momentum_port_check(const PureState& first_port, int d, int j);

} // namespace ncwit
