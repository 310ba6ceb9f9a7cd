// loopcas: batch CLI over the exact superalgebra toolkit. Every command
// emits a deterministic JSON report; exit code 0 means every check passed,
// 1 means some residual or containment check failed, 2 means bad input.

#include "loopcas/expr.hpp"
#include "loopcas/invariants.hpp"
#include "loopcas/json_io.hpp"
#include "loopcas/representation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace loopcas;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(csv);
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<Rational> parse_points(const std::string& csv) {
    std::vector<Rational> out;
    for (const auto& item : split_csv(csv)) {
        auto r = Rational::parse(item);
        if (!r) throw CliError("bad point '" + item + "' in --points");
        out.push_back(*r);
    }
    if (out.empty()) throw CliError("--points must list at least one value");
    return out;
}

std::vector<int> parse_tuple(const std::string& csv) {
    std::vector<int> out;
    for (const auto& item : split_csv(csv)) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw CliError("bad index '" + item + "' in --tuple");
        }
    }
    return out;
}

Weight parse_weight(const std::string& csv, std::size_t cartan_dim) {
    Weight w;
    for (const auto& item : split_csv(csv)) {
        auto r = Rational::parse(item);
        if (!r) throw CliError("bad weight entry '" + item + "'");
        w.v.push_back(*r);
    }
    if (w.v.size() != cartan_dim)
        throw CliError("--weight needs " + std::to_string(cartan_dim) + " entries for this algebra");
    return w;
}

SuperAlgebra resolve_algebra(const std::string& builtin, const std::string& file) {
    if (!builtin.empty() && !file.empty()) throw CliError("use either --builtin or --algebra, not both");
    if (!builtin.empty()) {
        auto A = SuperAlgebra::builtin(builtin);
        if (!A) throw CliError("unknown builtin '" + builtin + "' (use sl2|gl11|osp12|gl:M,N)");
        return *A;
    }
    if (!file.empty()) return algebra_from_json(load_json_file(file));
    throw CliError("an algebra is required: --builtin or --algebra");
}

std::vector<Representation> resolve_factors(const SuperAlgebra& A, const std::string& csv) {
    if (csv.empty()) throw CliError("--factors is required for module commands");
    std::vector<Representation> out;
    for (const auto& item : split_csv(csv)) {
        if (item == "natural") {
            out.push_back(Representation::natural(A));
        } else if (item == "adjoint") {
            out.push_back(Representation::adjoint(A));
        } else {
            out.push_back(representation_from_json(A, load_json_file(item)));
        }
    }
    return out;
}

Json elem_to_json(const SuperAlgebra& A, const AlgElem& x) {
    Json out = Json::array();
    for (const auto& [i, c] : x.c) out.push_back(Json::array({A.label(i), c.to_string()}));
    return out;
}

struct Emitter {
    std::string json_path;

    int emit(Json report, const std::string& status) {
        report["status"] = status;
        std::string text = report.dump(2) + "\n";
        std::cout << text;
        if (!json_path.empty()) {
            std::ofstream f(json_path);
            if (!f) throw CliError("cannot write --json file: " + json_path);
            f << text;
        }
        return status == "pass" ? 0 : (status == "fail" ? 1 : 2);
    }
};

Json report_header(const std::string& command, const Json& args, const SuperAlgebra& A) {
    Json j;
    j["command"] = command;
    j["args"] = args;
    j["algebra"] = {{"name", A.name()}, {"dimension", A.dim()}, {"fingerprint", A.fingerprint()}};
    return j;
}

LaurentEnv lagrange_env(const std::vector<Rational>& points) {
    LaurentEnv env;
    auto basis = lagrange_basis(points);
    for (std::size_t i = 0; i < basis.size(); ++i) env["p" + std::to_string(i + 1)] = basis[i];
    return env;
}

std::vector<std::string> read_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open batch file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') blank = false;
        if (!blank) lines.push_back(line);
    }
    return lines;
}

// ------------------------------------------------------------- commands

struct AlgebraCmd {
    std::string action;
    std::string builtin, file, json_path;

    int run() {
        SuperAlgebra A = resolve_algebra(builtin, file);
        Json args{{"action", action}};
        if (!builtin.empty()) args["builtin"] = builtin;
        if (!file.empty()) args["algebra"] = file;
        Json report = report_header("algebra", args, A);
        Emitter emitter{json_path};

        if (action == "validate") {
            ValidationReport rep = validate_algebra(A);
            report["results"] = validation_report_to_json(rep);
            return emitter.emit(std::move(report), rep.ok() ? "pass" : "fail");
        }
        if (action != "info") throw CliError("algebra action must be info or validate");

        Json results;
        Json basis = Json::array();
        for (int i = 0; i < A.dim(); ++i)
            basis.push_back({{"label", A.label(i)}, {"parity", parity_name(A.parity(i))}});
        results["basis"] = std::move(basis);
        Json cartan = Json::array();
        for (int c : A.cartan()) cartan.push_back(A.label(c));
        results["cartan"] = std::move(cartan);
        RootDatum R = root_decomposition(A);
        Json pos = Json::array();
        for (const Weight& alpha : R.positive) {
            Json entry;
            entry["weight"] = weight_to_json(alpha);
            entry["parity"] = parity_name(R.root_parity.at(alpha));
            entry["multiplicity"] = R.multiplicity.at(alpha);
            Json vecs = Json::array();
            for (int b : R.root_space.at(alpha)) vecs.push_back(A.label(b));
            entry["vectors"] = std::move(vecs);
            pos.push_back(std::move(entry));
        }
        results["positive_roots"] = std::move(pos);
        Json simple = Json::array();
        for (const Weight& s : R.simple) simple.push_back(weight_to_json(s));
        results["simple_roots"] = std::move(simple);
        results["h_rho"] = elem_to_json(A, R.h_rho);
        report["results"] = std::move(results);
        return emitter.emit(std::move(report), "pass");
    }
};

struct VerifyCmd {
    std::string builtin, file, op, mode = "central", points_csv, batch, json_path;

    Json run_one(const SuperAlgebra& A, const RootDatum& R, const LaurentEnv& env, const std::string& text,
                 bool& pass) {
        UEAElement u = eval_expr(A, R, text, env);
        ResidualReport rep;
        if (mode == "central") {
            rep = verify_central(A, u);
        } else if (mode == "even-central") {
            rep = verify_even_central(A, u);
        } else if (mode == "anti") {
            rep = verify_anti_invariant(A, u);
        } else {
            throw CliError("--mode must be central, even-central or anti");
        }
        pass = rep.pass;
        Json one;
        one["op"] = text;
        one["mode"] = mode;
        one["report"] = residual_report_to_json(A, rep);
        return one;
    }

    int run() {
        SuperAlgebra A = resolve_algebra(builtin, file);
        RootDatum R = root_decomposition(A);
        LaurentEnv env;
        Json args;
        if (!builtin.empty()) args["builtin"] = builtin;
        if (!file.empty()) args["algebra"] = file;
        if (!op.empty()) args["op"] = op;
        args["mode"] = mode;
        if (!points_csv.empty()) {
            args["points"] = points_csv;
            env = lagrange_env(parse_points(points_csv));
        }
        if (!batch.empty()) args["batch"] = batch;
        Json report = report_header("verify", args, A);
        Emitter emitter{json_path};

        std::vector<std::string> expressions;
        if (!batch.empty()) {
            expressions = read_batch(batch);
            if (!op.empty()) expressions.insert(expressions.begin(), op);
            if (expressions.empty()) throw CliError("batch file has no expressions");
        } else {
            if (op.empty()) throw CliError("--op or --batch is required");
            expressions.push_back(op);
        }

        bool all_pass = true;
        Json results = Json::array();
        for (const auto& text : expressions) {
            bool pass = false;
            results.push_back(run_one(A, R, env, text, pass));
            all_pass = all_pass && pass;
        }
        report["results"] = std::move(results);
        return emitter.emit(std::move(report), all_pass ? "pass" : "fail");
    }
};

struct ModuleCmd {
    std::string action;
    std::string builtin, file, module_file, factors_csv, points_csv, op, weight_csv, tuple_csv, json_path;
    int k = 0;

    int run() {
        SuperAlgebra A = resolve_algebra(builtin, file);
        RootDatum R = root_decomposition(A);
        if (!module_file.empty()) {
            // module spec document: { "factors": ["natural", ...], "points": ["1", "2", ...] }
            if (!factors_csv.empty() || !points_csv.empty())
                throw CliError("use either --module or --factors/--points, not both");
            Json spec = load_json_file(module_file);
            if (!spec.is_object() || !spec.contains("factors") || !spec.contains("points"))
                throw SchemaError("module spec needs 'factors' and 'points'");
            for (const auto& f : spec.at("factors")) {
                if (!factors_csv.empty()) factors_csv += ",";
                factors_csv += f.get<std::string>();
            }
            for (const auto& p : spec.at("points")) {
                if (!points_csv.empty()) points_csv += ",";
                points_csv += p.get<std::string>();
            }
        }
        Json args{{"action", action}};
        if (!builtin.empty()) args["builtin"] = builtin;
        if (!file.empty()) args["algebra"] = file;
        if (!module_file.empty()) args["module"] = module_file;
        args["factors"] = factors_csv;
        args["points"] = points_csv;
        if (!op.empty()) args["op"] = op;
        if (!weight_csv.empty()) args["weight"] = weight_csv;
        if (k > 0) args["k"] = k;
        if (!tuple_csv.empty()) args["tuple"] = tuple_csv;
        Json report = report_header("module", args, A);
        Emitter emitter{json_path};

        if (points_csv.empty()) throw CliError("--points is required for module commands");
        std::vector<Rational> points = parse_points(points_csv);
        EvaluationModule mod(resolve_factors(A, factors_csv), points);
        LaurentEnv env = lagrange_env(points);
        Json results;

        if (action == "act") {
            if (op.empty()) throw CliError("module act needs --op");
            UEAElement u = eval_expr(A, R, op, env);
            results["matrix"] = matrix_to_json(act_uea(A, mod, u));
            report["results"] = std::move(results);
            return emitter.emit(std::move(report), "pass");
        }
        if (action == "weights") {
            Json spaces = Json::array();
            for (const auto& [mu, members] : weight_spaces(A, mod)) {
                Json entry;
                entry["weight"] = weight_to_json(mu);
                entry["dimension"] = members.size();
                entry["basis_indices"] = members;
                spaces.push_back(std::move(entry));
            }
            results["weight_spaces"] = std::move(spaces);
            report["results"] = std::move(results);
            return emitter.emit(std::move(report), "pass");
        }
        if (action == "hwv" || action == "even-hwv") {
            bool even = action == "even-hwv";
            Json spaces = Json::array();
            if (!weight_csv.empty()) {
                Weight mu = parse_weight(weight_csv, A.cartan().size());
                std::vector<std::vector<Rational>> basis;
                if (even) {
                    auto all = find_even_hwv(A, R, mod);
                    auto it = all.find(mu);
                    if (it != all.end()) basis = it->second;
                } else {
                    basis = find_hwv(A, R, mod, mu);
                }
                Json entry;
                entry["weight"] = weight_to_json(mu);
                entry["basis"] = basis_to_json(basis);
                spaces.push_back(std::move(entry));
            } else {
                auto all = even ? find_even_hwv(A, R, mod) : find_all_hwv(A, R, mod);
                for (const auto& [mu, basis] : all) {
                    Json entry;
                    entry["weight"] = weight_to_json(mu);
                    entry["basis"] = basis_to_json(basis);
                    if (even && k > 0) {
                        Matrix sk = act_uea(A, mod, build_even_gelfand(A, k));
                        entry["restricted"] = matrix_to_json(restrict_operator(sk, basis));
                    }
                    spaces.push_back(std::move(entry));
                }
            }
            results[even ? "even_hwv" : "hwv"] = std::move(spaces);
            report["results"] = std::move(results);
            return emitter.emit(std::move(report), "pass");
        }
        if (action == "stability") {
            if (k < 1) throw CliError("module stability needs --k >= 1");
            std::vector<std::vector<int>> tuples;
            if (!tuple_csv.empty()) {
                auto tuple = parse_tuple(tuple_csv);
                if (static_cast<int>(tuple.size()) != k) throw CliError("--tuple must list k indices");
                tuples.push_back(std::move(tuple));
            } else {
                const int n = static_cast<int>(points.size());
                std::vector<int> tuple(static_cast<std::size_t>(k), 1);
                for (;;) {
                    tuples.push_back(tuple);
                    int pos = k - 1;
                    while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == n) {
                        tuple[static_cast<std::size_t>(pos)] = 1;
                        --pos;
                    }
                    if (pos < 0) break;
                    ++tuple[static_cast<std::size_t>(pos)];
                }
            }
            bool all_pass = true;
            Json checks = Json::array();
            for (const auto& tuple : tuples) {
                StabilityReport rep = check_hwv_stability(A, R, mod, k, tuple);
                all_pass = all_pass && rep.pass;
                Json entry;
                entry["tuple"] = tuple;
                entry["pass"] = rep.pass;
                Json per_weight = Json::array();
                for (const auto& s : rep.entries) {
                    Json w;
                    w["weight"] = weight_to_json(s.mu);
                    w["stable"] = s.stable;
                    w["escaping"] = s.escaping;
                    per_weight.push_back(std::move(w));
                }
                entry["weights"] = std::move(per_weight);
                checks.push_back(std::move(entry));
            }
            results["k"] = k;
            results["checks"] = std::move(checks);
            report["results"] = std::move(results);
            return emitter.emit(std::move(report), all_pass ? "pass" : "fail");
        }
        if (action == "gelfand-sum") {
            if (k < 1) throw CliError("module gelfand-sum needs --k >= 1");
            GelfandSumCheck chk = check_gelfand_sum(A, mod, k);
            results["k"] = k;
            results["pass"] = chk.pass;
            results["total"] = matrix_to_json(chk.total);
            results["tuple_sum"] = matrix_to_json(chk.tuple_sum);
            report["results"] = std::move(results);
            return emitter.emit(std::move(report), chk.pass ? "pass" : "fail");
        }
        throw CliError("module action must be act, weights, hwv, even-hwv, stability or gelfand-sum");
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Casimir / Gelfand invariant toolkit for Lie superalgebras and their loop algebras"};
    app.require_subcommand(1);

    AlgebraCmd algebra_cmd;
    auto* algebra = app.add_subcommand("algebra", "inspect or validate an algebra table");
    algebra->add_option("action", algebra_cmd.action, "info | validate")->required();
    algebra->add_option("--builtin", algebra_cmd.builtin, "sl2 | gl11 | osp12 | gl:M,N");
    algebra->add_option("--algebra", algebra_cmd.file, "algebra JSON file");
    algebra->add_option("--json", algebra_cmd.json_path, "also write the report here");

    VerifyCmd verify_cmd;
    auto* verify = app.add_subcommand("verify", "evaluate an operator and verify a property");
    verify->add_option("--builtin", verify_cmd.builtin, "sl2 | gl11 | osp12 | gl:M,N");
    verify->add_option("--algebra", verify_cmd.file, "algebra JSON file");
    verify->add_option("--op", verify_cmd.op, "operator expression");
    verify->add_option("--mode", verify_cmd.mode, "central | even-central | anti");
    verify->add_option("--points", verify_cmd.points_csv, "evaluation points binding p1..pn");
    verify->add_option("--batch", verify_cmd.batch, "file with one expression per line, # comments");
    verify->add_option("--json", verify_cmd.json_path, "also write the report here");

    ModuleCmd module_cmd;
    auto* module = app.add_subcommand("module", "evaluation-module computations");
    module->add_option("action", module_cmd.action, "act | weights | hwv | even-hwv | stability | gelfand-sum")
        ->required();
    module->add_option("--builtin", module_cmd.builtin, "sl2 | gl11 | osp12 | gl:M,N");
    module->add_option("--algebra", module_cmd.file, "algebra JSON file");
    module->add_option("--module", module_cmd.module_file, "evaluation-module spec JSON (factors + points)");
    module->add_option("--factors", module_cmd.factors_csv, "natural | adjoint | <file.json>, comma separated");
    module->add_option("--points", module_cmd.points_csv, "nonzero distinct rational points, comma separated");
    module->add_option("--op", module_cmd.op, "operator expression (module act)");
    module->add_option("--weight", module_cmd.weight_csv, "weight as comma-separated rationals");
    module->add_option("--k", module_cmd.k, "order of the cyclic operator family");
    module->add_option("--tuple", module_cmd.tuple_csv, "1-based point indices, comma separated");
    module->add_option("--json", module_cmd.json_path, "also write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (algebra->parsed()) return algebra_cmd.run();
        if (verify->parsed()) return verify_cmd.run();
        if (module->parsed()) return module_cmd.run();
        return 2;
    } catch (const TableValidationError& e) {
        Json err;
        err["status"] = "error";
        err["error"] = "validation failed";
        err["violations"] = validation_report_to_json(e.report)["violations"];
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json err;
        err["status"] = "error";
        err["error"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
}
