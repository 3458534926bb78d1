#include "ncwit/json_io.hpp"
#include "ncwit/reproduce.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

namespace {

constexpr const char* kVersion = "0.1.0";

using ncwit::io::json;

json make_manifest(const std::string& command, const std::vector<std::string>& inputs,
                   std::uint64_t seed) {
    json files = json::object();
    for (const auto& path : inputs) files[path] = ncwit::io::file_hash(path);
    return {{"command", command}, {"inputs", files}, {"seed", seed}, {"version", kVersion}};
}

void emit(json report, json manifest, double wall_seconds) {
    report["manifest"] = std::move(manifest);
    report["wall_time_s"] = wall_seconds;
    std::cout << report.dump(2) << '\n';
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

int run(int argc, char** argv) {
    CLI::App app{"nonclassicality witnesses and entanglement-potential toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for every stochastic sweep");

    // state
    auto* state_cmd = app.add_subcommand("state", "construct a state and write it as JSON");
    std::string kind, out_path, alpha_str = "1", z_str = "0", amps_str;
    int fock_n = 0, n_max = 40;
    double tail_tol = 1e-10, q = 0.5, spin_j = 1.0;
    state_cmd->add_option("--kind", kind, "fock|coherent|su2|squeezed|cat|custom")->required();
    state_cmd->add_option("--n", fock_n, "Fock index");
    state_cmd->add_option("--nmax", n_max, "Fock truncation (dimension nmax+1)");
    state_cmd->add_option("--tail-tol", tail_tol, "max truncated probability mass");
    state_cmd->add_option("--alpha", alpha_str, "coherent/cat amplitude, a+bi literal");
    state_cmd->add_option("--q", q, "squeezed-vacuum parameter in (0,1)");
    state_cmd->add_option("--j", spin_j, "SU(2) spin");
    state_cmd->add_option("--z", z_str, "SU(2) stereographic coordinate, a+bi literal");
    state_cmd->add_option("--amps", amps_str, "custom amplitudes, comma-separated a+bi literals");
    state_cmd->add_option("--out", out_path, "output file")->required();

    // lambda
    auto* lambda_cmd = app.add_subcommand("lambda", "maximize <c|M|c> over a classical family");
    std::string obs_path, family_path;
    bool force_numeric = false;
    lambda_cmd->add_option("--observable", obs_path)->required();
    lambda_cmd->add_option("--family", family_path)->required();
    lambda_cmd->add_flag("--numeric", force_numeric, "skip analytic fast paths");

    // witness build/eval
    auto* witness_cmd = app.add_subcommand("witness", "build or evaluate witnesses");
    witness_cmd->require_subcommand(1);
    auto* wbuild = witness_cmd->add_subcommand("build");
    std::string wb_obs, wb_family, wb_out;
    wbuild->add_option("--observable", wb_obs)->required();
    wbuild->add_option("--family", wb_family)->required();
    wbuild->add_option("--out", wb_out)->required();
    auto* weval = witness_cmd->add_subcommand("eval");
    std::string we_witness, we_state;
    weval->add_option("--witness", we_witness)->required();
    weval->add_option("--state", we_state)->required();

    // potential cd/bs/schmidt
    auto* pot_cmd = app.add_subcommand("potential", "controlled displacements and Schmidt tools");
    pot_cmd->require_subcommand(1);
    auto* cd_cmd = pot_cmd->add_subcommand("cd", "CD-convert a qudit against a |0> ancilla");
    std::string cd_state;
    int cd_d = 2;
    std::string cd_out;
    cd_cmd->add_option("--state", cd_state)->required();
    cd_cmd->add_option("--d", cd_d)->required();
    cd_cmd->add_option("--out", cd_out, "write the converted two-qudit state");
    auto* bs_cmd = pot_cmd->add_subcommand("bs", "50:50 beam splitter on two single-mode states");
    std::string bs_state1, bs_state2, bs_out;
    bs_cmd->add_option("--state1", bs_state1)->required();
    bs_cmd->add_option("--state2", bs_state2)->required();
    bs_cmd->add_option("--out", bs_out, "write the two-mode output state");
    auto* schmidt_cmd = pot_cmd->add_subcommand("schmidt", "Schmidt decomposition of a pure state");
    std::string sc_state, sc_dims = "2,2";
    schmidt_cmd->add_option("--state", sc_state)->required();
    schmidt_cmd->add_option("--dims", sc_dims, "bipartition, e.g. 2,2");

    // multi recipe/classify/qutrit
    auto* multi_cmd = app.add_subcommand("multi", "multipartite recipes and classification");
    multi_cmd->require_subcommand(1);
    auto* recipe_cmd = multi_cmd->add_subcommand("recipe", "run a recipe file");
    std::string recipe_path, recipe_out;
    recipe_cmd->add_option("--file", recipe_path)->required();
    recipe_cmd->add_option("--out", recipe_out, "write the final state");
    auto* classify_cmd = multi_cmd->add_subcommand("classify", "SLOCC class of a three-qubit state");
    std::string cls_state;
    classify_cmd->add_option("--state", cls_state)->required();
    auto* qutrit_cmd = multi_cmd->add_subcommand("qutrit", "two-qutrit + qubit class states");
    std::string qt_case, qt_a = "0.707", qt_b = "0.707", qt_c = "0", qt_out;
    qutrit_cmd->add_option("--case", qt_case, "332-T1|332-T2|233-T1|233-T2")->required();
    qutrit_cmd->add_option("--a", qt_a);
    qutrit_cmd->add_option("--b", qt_b);
    qutrit_cmd->add_option("--c", qt_c);
    qutrit_cmd->add_option("--out", qt_out, "write the state");

    // reproduce
    auto* repro_cmd = app.add_subcommand("reproduce", "run the worked-example suite");
    std::string only;
    bool as_json = false;
    repro_cmd->add_option("--only", only, "restrict to one group, e.g. fock");
    repro_cmd->add_flag("--json", as_json, "machine-readable report");

    CLI11_PARSE(app, argc, argv);
    Timer timer;

    if (*state_cmd) {
        ncwit::TruncationConfig trunc(n_max, tail_tol);
        auto build = [&]() -> ncwit::PureState {
            if (kind == "fock") return ncwit::fock_state(fock_n, trunc);
            if (kind == "coherent")
                return ncwit::coherent_state(ncwit::io::parse_complex(alpha_str), trunc).state;
            if (kind == "su2")
                return ncwit::su2_coherent_state(ncwit::io::parse_complex(z_str), spin_j);
            if (kind == "squeezed") return ncwit::squeezed_vacuum(q, trunc).state;
            if (kind == "cat")
                return ncwit::cat_state(ncwit::io::parse_complex(alpha_str), trunc).state;
            if (kind == "custom") {
                std::vector<ncwit::cplx> amps;
                std::stringstream ss(amps_str);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    amps.push_back(ncwit::io::parse_complex(tok));
                ncwit::Vec v(amps.size());
                for (size_t i = 0; i < amps.size(); ++i) v(i) = amps[i];
                return ncwit::PureState({static_cast<int>(amps.size())}, v / v.norm());
            }
            throw ncwit::ValidationError("unknown state kind: " + kind);
        };
        ncwit::io::save_json_file(out_path, ncwit::io::to_json(build()));
        emit({{"written", out_path}}, make_manifest("state", {}, seed), timer.seconds());
        return 0;
    }

    if (*lambda_cmd) {
        ncwit::Operator m = ncwit::io::operator_from_json(ncwit::io::load_json_file(obs_path));
        ncwit::ClassicalFamily fam =
            ncwit::io::family_from_json(ncwit::io::load_json_file(family_path));
        ncwit::LambdaResult lr = ncwit::lambda_max(
            fam, m, force_numeric ? ncwit::LambdaMethod::Numeric : ncwit::LambdaMethod::Auto);
        emit({{"lambda", lr.value},
              {"method", lr.method},
              {"certified_tolerance", lr.certified_tolerance}},
             make_manifest("lambda", {obs_path, family_path}, seed), timer.seconds());
        return 0;
    }

    if (*wbuild) {
        ncwit::Operator m = ncwit::io::operator_from_json(ncwit::io::load_json_file(wb_obs));
        ncwit::ClassicalFamily fam =
            ncwit::io::family_from_json(ncwit::io::load_json_file(wb_family));
        ncwit::Witness w = ncwit::build_witness(m, fam, ncwit::LambdaMethod::Auto, seed);
        ncwit::io::save_json_file(wb_out, ncwit::io::to_json(w));
        emit({{"written", wb_out}, {"lambda", w.lambda}, {"method", w.lambda_method}},
             make_manifest("witness build", {wb_obs, wb_family}, seed), timer.seconds());
        return 0;
    }
    if (*weval) {
        ncwit::Witness w = ncwit::io::witness_from_json(ncwit::io::load_json_file(we_witness));
        json sj = ncwit::io::load_json_file(we_state);
        ncwit::DetectionReport rep =
            sj.at("kind") == "pure"
                ? ncwit::witness_expectation(w, ncwit::io::pure_state_from_json(sj))
                : ncwit::witness_expectation(w, ncwit::io::density_matrix_from_json(sj));
        emit(ncwit::io::to_json(rep), make_manifest("witness eval", {we_witness, we_state}, seed),
             timer.seconds());
        return 0;
    }

    if (*cd_cmd) {
        ncwit::PureState psi =
            ncwit::io::pure_state_from_json(ncwit::io::load_json_file(cd_state));
        ncwit::ConversionReport rep = ncwit::cd_conversion_check(psi, cd_d);
        if (!cd_out.empty()) {
            ncwit::Vec zero = ncwit::Vec::Zero(cd_d);
            zero(0) = 1.0;
            ncwit::PureState joint =
                ncwit::tensor_product(psi, ncwit::PureState({cd_d}, std::move(zero)));
            ncwit::io::save_json_file(cd_out, ncwit::io::to_json(ncwit::apply_cd(joint, 0, 1)));
        }
        emit({{"superposition_number", rep.superposition_number},
              {"schmidt_number", rep.schmidt_number},
              {"consistent", rep.consistent}},
             make_manifest("potential cd", {cd_state}, seed), timer.seconds());
        return 0;
    }
    if (*bs_cmd) {
        ncwit::PureState a = ncwit::io::pure_state_from_json(ncwit::io::load_json_file(bs_state1));
        ncwit::PureState b = ncwit::io::pure_state_from_json(ncwit::io::load_json_file(bs_state2));
        if (a.dims().size() != 1 || a.dims() != b.dims())
            throw ncwit::ValidationError("beam splitter takes two single-mode states of equal dimension");
        ncwit::BeamSplitter bs(ncwit::TruncationConfig(a.dim() - 1, 0.999999));
        ncwit::PureState out = bs.apply(a, b);
        if (!bs_out.empty()) ncwit::io::save_json_file(bs_out, ncwit::io::to_json(out));
        emit({{"schmidt_number", ncwit::schmidt_number(out, {a.dim(), a.dim()})}},
             make_manifest("potential bs", {bs_state1, bs_state2}, seed), timer.seconds());
        return 0;
    }
    if (*schmidt_cmd) {
        ncwit::PureState psi =
            ncwit::io::pure_state_from_json(ncwit::io::load_json_file(sc_state));
        std::vector<int> dims;
        std::stringstream ss(sc_dims);
        std::string tok;
        while (std::getline(ss, tok, ',')) dims.push_back(std::stoi(tok));
        auto sd = ncwit::schmidt_decomposition(psi, dims);
        json coeffs = json::array();
        for (int i = 0; i < sd.coefficients.size(); ++i) coeffs.push_back(sd.coefficients(i));
        emit({{"coefficients", coeffs},
              {"schmidt_number", ncwit::schmidt_number(psi, dims)}},
             make_manifest("potential schmidt", {sc_state}, seed), timer.seconds());
        return 0;
    }

    if (*recipe_cmd) {
        ncwit::Recipe r = ncwit::io::recipe_from_json(ncwit::io::load_json_file(recipe_path));
        ncwit::PureState out = ncwit::run_recipe(r);
        if (!recipe_out.empty()) ncwit::io::save_json_file(recipe_out, ncwit::io::to_json(out));
        json report = {{"dims", out.dims()}};
        if (out.dims() == std::vector<int>{2, 2, 2}) {
            auto cls = ncwit::classify_three_qubit(out);
            report["class"] = ncwit::to_string(cls.label);
            report["three_tangle"] = cls.tangle;
        }
        emit(std::move(report), make_manifest("multi recipe", {recipe_path}, seed),
             timer.seconds());
        return 0;
    }
    if (*classify_cmd) {
        ncwit::PureState psi =
            ncwit::io::pure_state_from_json(ncwit::io::load_json_file(cls_state));
        auto cls = ncwit::classify_three_qubit(psi);
        emit({{"class", ncwit::to_string(cls.label)},
              {"three_tangle", cls.tangle},
              {"local_ranks", cls.ranks}},
             make_manifest("multi classify", {cls_state}, seed), timer.seconds());
        return 0;
    }
    if (*qutrit_cmd) {
        ncwit::PureState out = ncwit::generate_qutrit_classes(
            ncwit::parse_qutrit_case(qt_case), ncwit::io::parse_complex(qt_a),
            ncwit::io::parse_complex(qt_b), ncwit::io::parse_complex(qt_c));
        if (!qt_out.empty()) ncwit::io::save_json_file(qt_out, ncwit::io::to_json(out));
        auto sig = ncwit::rank_signature(out);
        emit({{"dims", out.dims()},
              {"local_ranks", sig.local_ranks},
              {"pencil_ranks", {sig.pencil_max, sig.pencil_min}}},
             make_manifest("multi qutrit", {}, seed), timer.seconds());
        return 0;
    }

    if (*repro_cmd) {
        auto rows = ncwit::run_acceptance(only, seed);
        bool all_pass = true;
        if (as_json) {
            json out = json::array();
            for (const auto& r : rows) {
                out.push_back({{"group", r.group},
                               {"name", r.name},
                               {"computed", r.computed},
                               {"expected", r.expected},
                               {"tolerance", r.tolerance},
                               {"passed", r.passed},
                               {"note", r.note}});
                all_pass = all_pass && r.passed;
            }
            emit({{"checks", out}, {"all_passed", all_pass}},
                 make_manifest("reproduce", {}, seed), timer.seconds());
        } else {
            for (const auto& r : rows) {
                std::printf("[%s] %-22s %-55s computed=%.12g expected=%.12g tol=%.3g%s%s\n",
                            r.passed ? "PASS" : "FAIL", r.group.c_str(), r.name.c_str(),
                            r.computed, r.expected, r.tolerance, r.note.empty() ? "" : "  note: ",
                            r.note.c_str());
                all_pass = all_pass && r.passed;
            }
            std::printf("%s (%zu checks, %.1fs)\n", all_pass ? "ALL PASSED" : "FAILURES PRESENT",
                        rows.size(), timer.seconds());
        }
        return all_pass ? 0 : 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ncwit::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const ncwit::NumericGuardError& e) {
        std::cerr << "numeric guard: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
