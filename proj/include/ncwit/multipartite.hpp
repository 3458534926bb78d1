#pragma once

#include "ncwit/potential.hpp"

namespace ncwit {

// Invertible single-party map; Jordan-block structure selects the class a
// recipe lands in.
struct LocalOperation {
    int target;
    Mat matrix;
};

Mat jordan_block_operator(const std::vector<std::pair<int, cplx>>& blocks);

struct RecipeStep {
    enum class Kind { ControlledShift, Local } kind;
    int control = -1;
    int target = -1;
    Mat matrix; // Local only
};

struct Recipe {
    std::vector<int> dims;
    Vec initial; // state of subsystem 0; the rest start in |0>
    std::vector<RecipeStep> steps;
};

// Final state, renormalized after nonunitary steps. Intermediate states are
// collected when `trace` is given.
PureState run_recipe(const Recipe& r, std::vector<PureState>* trace = nullptr);

Recipe ghz_recipe(cplx a, cplx b);
Recipe w_recipe(cplx a, cplx b);

enum class QutritCase { Case332T1, Case332T2, Case233T1, Case233T2 };
QutritCase parse_qutrit_case(const std::string& name);
std::string qutrit_case_name(QutritCase c);

PureState generate_qutrit_classes(QutritCase c, cplx a, cplx b, cplx cc = 0.0);
Recipe qutrit_recipe(QutritCase c, cplx a, cplx b, cplx cc = 0.0);

double three_tangle(const PureState& psi);

std::vector<int> local_ranks(const PureState& psi, double tol = 1e-9);

enum class ClassLabel { Product, BisepA, BisepB, BisepC, W, GHZ };
std::string to_string(ClassLabel label);

struct ClassReport {
    ClassLabel label;
    double tangle;
    std::vector<int> ranks;
};

ClassReport classify_three_qubit(const PureState& psi);

// Local ranks, bipartite-cut ranks, and (when one party is a qubit) the
// max/min ranks of the qubit slice pencil.
struct RankSignature {
    std::vector<int> local_ranks;
    std::vector<int> cut_ranks;
    int pencil_max = 0;
    int pencil_min = 0;

    bool operator==(const RankSignature&) const = default;
};

RankSignature rank_signature(const PureState& psi);

} // namespace ncwit
