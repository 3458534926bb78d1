#pragma once

#include "ncwit/core.hpp"

#include <random>
#include <variant>

namespace ncwit {

// A classical-basis family C over which witness offsets are maximized.
struct ClassicalFamily {
    enum class Kind { OrthonormalDiscrete, CanonicalCoherent, SU2Coherent, ProductStates };

    Kind kind;
    int d = 0;                        // OrthonormalDiscrete
    TruncationConfig trunc;           // CanonicalCoherent
    double radius = 6.0;              // CanonicalCoherent search radius for |alpha|
    double j = 0.0;                   // SU2Coherent
    std::vector<int> dims;            // ProductStates

    static ClassicalFamily orthonormal(int d);
    static ClassicalFamily coherent(TruncationConfig trunc = {}, double radius = 6.0);
    static ClassicalFamily su2(double j);
    static ClassicalFamily product(std::vector<int> dims);

    int state_dim() const;
};

// Parameter of one classical state: basis index, complex alpha/z, or
// normalized product factors.
using ClassicalParams = std::variant<int, cplx, std::vector<Vec>>;

PureState classical_state(const ClassicalFamily& family, const ClassicalParams& params);
PureState random_classical_state(const ClassicalFamily& family, std::mt19937_64& rng);

double classical_expectation(const ClassicalFamily& family, const Operator& m,
                             const ClassicalParams& params);

struct LambdaResult {
    double value = 0.0;
    ClassicalParams argmax;
    std::string method; // "analytic" | "grid+refine" | "see-saw"
    double certified_tolerance = 0.0;
};

enum class LambdaMethod { Auto, Analytic, Numeric };

LambdaResult lambda_max(const ClassicalFamily& family, const Operator& m,
                        LambdaMethod method = LambdaMethod::Auto);

// Alternating eigenvector maximization of <a,b|M|a,b> over product states.
LambdaResult seesaw_product_max(const Operator& m, const std::vector<int>& dims,
                                int restarts = 20, std::uint64_t seed = 0);

} // namespace ncwit
