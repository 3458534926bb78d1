#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncwit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Thrown for malformed inputs (bad norms, dimension mismatches, invalid
// parameters). Maps to CLI exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a numeric guard trips (truncation too small, overflow).
// Maps to CLI exit code 3.
struct NumericGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kHermTol = 1e-12;
constexpr double kNormTol = 1e-12;
constexpr double kEigTol = -1e-10;
constexpr double kTraceTol = 1e-10;

struct TruncationConfig {
    int n_max = 40;          // Fock dimension is n_max + 1
    double tail_tol = 1e-10; // max admissible truncated probability mass

    TruncationConfig() = default;
    TruncationConfig(int n_max_, double tail_tol_);
    int dim() const { return n_max + 1; }
};

// Dense complex square matrix; hermitian flag is validated on construction.
class Operator {
  public:
    Operator(Mat entries, bool hermitian);
    static Operator hermitian(Mat entries);
    static Operator identity(int dim);

    int dim() const { return static_cast<int>(mat_.rows()); }
    bool is_hermitian() const { return hermitian_; }
    const Mat& entries() const { return mat_; }

  private:
    Mat mat_;
    bool hermitian_;
};

// Normalized amplitude vector with a subsystem dimension signature.
class PureState {
  public:
    PureState(std::vector<int> dims, Vec amplitudes);

    const std::vector<int>& dims() const { return dims_; }
    const Vec& amplitudes() const { return amps_; }
    int dim() const { return static_cast<int>(amps_.size()); }

  private:
    std::vector<int> dims_;
    Vec amps_;
};

// Hermitian, PSD, unit-trace matrix with a dimension signature.
class DensityMatrix {
  public:
    DensityMatrix(std::vector<int> dims, Mat entries);
    static DensityMatrix from_pure(const PureState& psi);

    const std::vector<int>& dims() const { return dims_; }
    const Mat& entries() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::VectorXd& eigenvalues() const { return eigs_; }

  private:
    std::vector<int> dims_;
    Mat mat_;
    Eigen::VectorXd eigs_;
};

// --- linear algebra ---

Operator tensor_product(const Operator& a, const Operator& b);
PureState tensor_product(const PureState& a, const PureState& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

struct EigResult {
    Eigen::VectorXd eigenvalues; // descending
    Mat eigenvectors;            // columns match eigenvalues
};
EigResult hermitian_eig(const Operator& m);

// --- state constructors ---

PureState fock_state(int n, const TruncationConfig& trunc);

struct TruncatedState {
    PureState state;
    double tail_mass; // probability mass discarded by the truncation
};

TruncatedState coherent_state(cplx alpha, const TruncationConfig& trunc);
PureState su2_coherent_state(cplx z, double j);
TruncatedState squeezed_vacuum(double q, const TruncationConfig& trunc);
TruncatedState cat_state(cplx alpha, const TruncationConfig& trunc);

double spats_photocount(double nbar, int n);

// Truncated, renormalized coherent amplitudes without the tail-mass guard.
// Used by optimizers that sweep |alpha| past the guarded radius.
Vec coherent_amplitudes_unchecked(cplx alpha, int n_max, double* tail_mass = nullptr);

// Truncated annihilation operator on dim = n_max + 1.
Mat annihilation_matrix(int n_max);

// Spin-j angular momentum matrices in the |j,-j>..|j,j> basis.
Mat spin_jx(double j);
Mat spin_jy(double j);
Mat spin_jz(double j);

} // namespace ncwit
