#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncwit/json_io.hpp"

#include <cstdio>
#include <random>

using namespace ncwit;
using io::json;

TEST_CASE("pure state round trip") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Vec v(6);
    for (int i = 0; i < 6; ++i) v(i) = cplx(g(rng), g(rng));
    v.normalize();
    PureState psi({2, 3}, v);
    PureState back = io::pure_state_from_json(io::to_json(psi));
    CHECK(back.dims() == psi.dims());
    CHECK((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("density matrix and operator round trips") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    Mat a(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a(r, c) = cplx(g(rng), g(rng));
    Mat rho = a * a.adjoint();
    rho /= rho.trace().real();
    DensityMatrix dm({4}, rho);
    DensityMatrix back = io::density_matrix_from_json(io::to_json(dm));
    CHECK((back.entries() - dm.entries()).cwiseAbs().maxCoeff() < 1e-14);

    Operator herm = Operator::hermitian(0.5 * (a + a.adjoint()));
    Operator hback = io::operator_from_json(io::to_json(herm));
    CHECK(hback.is_hermitian());
    CHECK((hback.entries() - herm.entries()).cwiseAbs().maxCoeff() < 1e-14);

    // non-Hermitian operators keep their flag off
    Operator gen(a, false);
    CHECK(!io::operator_from_json(io::to_json(gen)).is_hermitian());
}

TEST_CASE("kind tags are enforced") {
    Vec v(2);
    v << 1.0, 0.0;
    json j = io::to_json(PureState({2}, v));
    CHECK_THROWS_AS(io::density_matrix_from_json(j), ValidationError);
    CHECK_THROWS_AS(io::operator_from_json(j), ValidationError);
    j.erase("kind");
    CHECK_THROWS_AS(io::pure_state_from_json(j), ValidationError);
}

TEST_CASE("classical family round trips") {
    for (const ClassicalFamily& fam :
         {ClassicalFamily::orthonormal(5),
          ClassicalFamily::coherent(TruncationConfig(30, 1e-8), 3.5),
          ClassicalFamily::su2(1.5), ClassicalFamily::product({2, 3})}) {
        ClassicalFamily back = io::family_from_json(io::to_json(fam));
        CHECK(back.kind == fam.kind);
        CHECK(back.state_dim() == fam.state_dim());
    }
    ClassicalFamily coh =
        io::family_from_json(io::to_json(ClassicalFamily::coherent(TruncationConfig(30, 1e-8), 3.5)));
    CHECK(coh.trunc.n_max == 30);
    CHECK(coh.radius == 3.5);
}

TEST_CASE("witness and report round trips") {
    auto fam = ClassicalFamily::orthonormal(3);
    Mat m = Mat::Zero(3, 3);
    m.diagonal() << 0.1, 0.4, 0.2;
    Witness w = build_witness(Operator::hermitian(m), fam);
    Witness back = io::witness_from_json(io::to_json(w));
    CHECK(back.lambda == w.lambda);
    CHECK(back.lambda_method == w.lambda_method);
    CHECK((back.m.entries() - w.m.entries()).cwiseAbs().maxCoeff() < 1e-14);

    Vec one = Vec::Zero(3);
    one(1) = 1.0;
    json rep = io::to_json(witness_expectation(back, PureState({3}, one)));
    CHECK(rep.at("expectation").get<double>() == doctest::Approx(0.0));
    CHECK(rep.at("verdict") == "undetected");
}

TEST_CASE("recipe round trip keeps steps and 1-based indices") {
    Recipe r = w_recipe(0.6, 0.8);
    json j = io::to_json(r);
    CHECK(j.at("steps")[0].at("cd")[0] == 1); // subsystem 1 controls subsystem 2
    CHECK(j.at("steps")[0].at("cd")[1] == 2);
    Recipe back = io::recipe_from_json(j);
    CHECK(back.dims == r.dims);
    CHECK(back.steps.size() == r.steps.size());
    CHECK(back.steps[1].kind == RecipeStep::Kind::Local);
    CHECK((back.steps[1].matrix - r.steps[1].matrix).cwiseAbs().maxCoeff() < 1e-14);
    PureState a = run_recipe(r), b = run_recipe(back);
    CHECK((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() < 1e-14);

    json badstep = j;
    badstep["steps"][0]["cd"] = {0, 2};
    CHECK_THROWS_AS(io::recipe_from_json(badstep), ValidationError);
}

TEST_CASE("file IO and hashing") {
    const char* path = "io_test_tmp.json";
    json j = {{"x", 1}, {"y", {1, 2, 3}}};
    io::save_json_file(path, j);
    CHECK(io::load_json_file(path) == j);
    std::string h1 = io::file_hash(path);
    CHECK(!h1.empty());
    CHECK(io::file_hash(path) == h1);
    std::remove(path);
    CHECK_THROWS_AS(io::load_json_file(path), ValidationError);
    CHECK_THROWS_AS(io::file_hash(path), ValidationError);
}

TEST_CASE("complex literal parsing") {
    CHECK(io::parse_complex("1") == cplx(1, 0));
    CHECK(io::parse_complex("-2.5") == cplx(-2.5, 0));
    CHECK(io::parse_complex("i") == cplx(0, 1));
    CHECK(io::parse_complex("-i") == cplx(0, -1));
    CHECK(io::parse_complex("3+4i") == cplx(3, 4));
    CHECK(io::parse_complex("3-4i") == cplx(3, -4));
    CHECK(io::parse_complex(" 0.5 + 0.25i ") == cplx(0.5, 0.25));
    CHECK(io::parse_complex("1e-3-2e2i") == cplx(1e-3, -2e2));
    CHECK(io::parse_complex("2i+1") == cplx(1, 2));
    CHECK_THROWS_AS(io::parse_complex(""), ValidationError);
    CHECK_THROWS_AS(io::parse_complex("abc"), ValidationError);
    CHECK_THROWS_AS(io::parse_complex("1+2"), ValidationError);
}
