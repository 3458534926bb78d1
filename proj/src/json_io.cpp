#include "ncwit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ncwit::io {

namespace {

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const Vec& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(complex_pair(v(i)));
    return out;
}

json matrix_to_json(const Mat& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
        out.push_back(row);
    }
    return out;
}

Vec vector_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("pure-state data must be an array");
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = complex_from(j[i]);
    return v;
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix data must be a nonempty array");
    const size_t rows = j.size();
    Mat m(rows, rows);
    for (size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != rows)
            throw ValidationError("matrix data must be square");
        for (size_t c = 0; c < rows; ++c) m(r, c) = complex_from(j[r][c]);
    }
    return m;
}

std::vector<int> dims_from_json(const json& j) {
    if (!j.contains("dims") || !j["dims"].is_array())
        throw ValidationError("missing dims field");
    std::vector<int> dims;
    for (const auto& d : j["dims"]) dims.push_back(d.get<int>());
    return dims;
}

std::string kind_of(const json& j) {
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ValidationError("missing kind field");
    return j["kind"].get<std::string>();
}

} // namespace

json to_json(const PureState& psi) {
    return {{"dims", psi.dims()}, {"kind", "pure"}, {"data", vector_to_json(psi.amplitudes())}};
}

json to_json(const DensityMatrix& rho) {
    return {{"dims", rho.dims()}, {"kind", "mixed"}, {"data", matrix_to_json(rho.entries())}};
}

json to_json(const Operator& m) {
    return {{"dims", std::vector<int>{m.dim()}},
            {"kind", "operator"},
            {"data", matrix_to_json(m.entries())}};
}

PureState pure_state_from_json(const json& j) {
    if (kind_of(j) != "pure") throw ValidationError("expected a pure state file");
    return PureState(dims_from_json(j), vector_from_json(j["data"]));
}

DensityMatrix density_matrix_from_json(const json& j) {
    if (kind_of(j) != "mixed") throw ValidationError("expected a mixed state file");
    return DensityMatrix(dims_from_json(j), matrix_from_json(j["data"]));
}

Operator operator_from_json(const json& j) {
    if (kind_of(j) != "operator") throw ValidationError("expected an operator file");
    Mat m = matrix_from_json(j["data"]);
    bool herm = (m - m.adjoint()).cwiseAbs().maxCoeff() <= kHermTol;
    return Operator(std::move(m), herm);
}

json to_json(const ClassicalFamily& family) {
    switch (family.kind) {
        case ClassicalFamily::Kind::OrthonormalDiscrete:
            return {{"family", "orthonormal"}, {"d", family.d}};
        case ClassicalFamily::Kind::CanonicalCoherent:
            return {{"family", "coherent"},
                    {"n_max", family.trunc.n_max},
                    {"tail_tol", family.trunc.tail_tol},
                    {"radius", family.radius}};
        case ClassicalFamily::Kind::SU2Coherent:
            return {{"family", "su2"}, {"j", family.j}};
        case ClassicalFamily::Kind::ProductStates:
            return {{"family", "product"}, {"dims", family.dims}};
    }
    throw ValidationError("unknown family kind");
}

ClassicalFamily family_from_json(const json& j) {
    if (!j.contains("family")) throw ValidationError("missing family tag");
    std::string tag = j["family"].get<std::string>();
    if (tag == "orthonormal") return ClassicalFamily::orthonormal(j.at("d").get<int>());
    if (tag == "coherent") {
        TruncationConfig trunc(j.value("n_max", 40), j.value("tail_tol", 1e-10));
        return ClassicalFamily::coherent(trunc, j.value("radius", 6.0));
    }
    if (tag == "su2") return ClassicalFamily::su2(j.at("j").get<double>());
    if (tag == "product") {
        std::vector<int> dims;
        for (const auto& d : j.at("dims")) dims.push_back(d.get<int>());
        return ClassicalFamily::product(std::move(dims));
    }
    throw ValidationError("unknown family tag: " + tag);
}

json to_json(const Witness& w) {
    return {{"observable", to_json(w.m)},
            {"lambda", w.lambda},
            {"family", to_json(w.family)},
            {"method", w.lambda_method}};
}

Witness witness_from_json(const json& j) {
    return Witness{operator_from_json(j.at("observable")), j.at("lambda").get<double>(),
                   family_from_json(j.at("family")), j.at("method").get<std::string>()};
}

json to_json(const DetectionReport& r) {
    return {{"expectation", r.expectation},
            {"verdict", r.nonclassical ? "nonclassical" : "undetected"},
            {"margin", r.margin},
            {"lambda", r.lambda},
            {"method", r.lambda_method}};
}

json to_json(const Recipe& r) {
    json steps = json::array();
    for (const auto& s : r.steps) {
        if (s.kind == RecipeStep::Kind::ControlledShift)
            steps.push_back({{"cd", {s.control + 1, s.target + 1}}});
        else
            steps.push_back(
                {{"local", {{"target", s.target + 1}, {"matrix", matrix_to_json(s.matrix)}}}});
    }
    return {{"dims", r.dims}, {"initial", vector_to_json(r.initial)}, {"steps", steps}};
}

Recipe recipe_from_json(const json& j) {
    Recipe r;
    r.dims = dims_from_json(j);
    r.initial = vector_from_json(j.at("initial"));
    const int n = static_cast<int>(r.dims.size());
    auto check_index = [&](int one_based) {
        if (one_based < 1 || one_based > n)
            throw ValidationError("recipe subsystem index out of range (1-based)");
        return one_based - 1;
    };
    for (const auto& s : j.at("steps")) {
        if (s.contains("cd")) {
            const auto& cd = s["cd"];
            if (!cd.is_array() || cd.size() != 2)
                throw ValidationError("cd step needs [control, target]");
            r.steps.push_back({RecipeStep::Kind::ControlledShift, check_index(cd[0].get<int>()),
                               check_index(cd[1].get<int>()), {}});
        } else if (s.contains("local")) {
            const auto& loc = s["local"];
            r.steps.push_back({RecipeStep::Kind::Local, -1,
                               check_index(loc.at("target").get<int>()),
                               matrix_from_json(loc.at("matrix"))});
        } else {
            throw ValidationError("recipe step must be cd or local");
        }
    }
    return r;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ValidationError("empty complex literal");

    // split into real and imaginary terms at a +/- that is not an exponent sign
    size_t split = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    auto parse_term = [](std::string term) -> std::pair<double, bool> {
        bool imag = !term.empty() && (term.back() == 'i' || term.back() == 'I');
        if (imag) {
            term.pop_back();
            if (term.empty() || term == "+") term = "1";
            else if (term == "-") term = "-1";
        }
        size_t used = 0;
        double v = std::stod(term, &used);
        if (used != term.size()) throw ValidationError("bad complex literal");
        return {v, imag};
    };
    try {
        if (split == std::string::npos) {
            auto [v, imag] = parse_term(s);
            return imag ? cplx(0, v) : cplx(v, 0);
        }
        auto [v1, i1] = parse_term(s.substr(0, split));
        auto [v2, i2] = parse_term(s.substr(split));
        if (i1 == i2) throw ValidationError("bad complex literal");
        return i1 ? cplx(v2, v1) : cplx(v1, v2);
    } catch (const std::invalid_argument&) {
        throw ValidationError("bad complex literal: " + text);
    }
}

} // namespace ncwit::io
