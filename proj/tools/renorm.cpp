#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "renorm/birkhoff.hpp"
#include "renorm/character.hpp"
#include "renorm/matrix.hpp"
#include "renorm/verify.hpp"

using json = nlohmann::ordered_json;
using namespace renorm;

namespace {

json series_json(const Series& s) {
    json coeffs = json::object();
    for (const auto& [e, p] : s.coeffs()) {
        json monos = json::array();
        for (const auto& [m, c] : p.terms()) {
            monos.push_back(json{{"pi2", m.pi2},
                                 {"L", m.l},
                                 {"tau", m.tau},
                                 {"u", m.u},
                                 {"num", c.get_num().get_str()},
                                 {"den", c.get_den().get_str()}});
        }
        coeffs[std::to_string(e)] = monos;
    }
    return json{{"window", {s.lo(), s.hi()}}, {"coeffs", coeffs}};
}

json matrix_json(const TriMatrix& m, const CoidealBasis& basis) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(series_json(m.at(i, j)));
        rows.push_back(row);
    }
    json elems = json::array();
    for (int i = 0; i < basis.size(); ++i) elems.push_back(basis.element(i).to_string());
    return json{{"basis", elems}, {"entries", rows}};
}

json hopf_json(const HopfElement& x) {
    json terms = json::array();
    for (const auto& [f, c] : x.terms())
        terms.push_back(json{
            {"forest", f.to_string()}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    return terms;
}

struct Options {
    Config cfg;
    std::string format = "text";
    std::string seed = "[[][][]]";  // forest string; each tree seeds the closure
    bool structured() const { return format == "structured"; }
};

LinMap named_character(const std::string& name, const Config& cfg) {
    if (name == "toy") return toy_character(cfg);
    if (name == "e") return LinMap::counit_character();
    throw DomainError("unknown character '" + name + "' (available: toy, e)");
}

CoidealBasis basis_from_seeds(const Options& opt) {
    return CoidealBasis::closure(parse_forest(opt.seed).trees());
}

void apply_env_config(Options& opt) {
    const char* path = std::getenv("RENORM_CONFIG");
    if (!path) return;
    std::ifstream in(path);
    if (!in) throw Error(std::string("cannot open config file ") + path);
    json j = json::parse(in);
    if (j.contains("max_degree")) opt.cfg.max_degree = j["max_degree"].get<int>();
    if (j.contains("z_hi")) opt.cfg.z_hi = j["z_hi"].get<int>();
    if (j.contains("tau_cap")) opt.cfg.tau_cap = j["tau_cap"].get<int>();
    if (j.contains("format")) opt.format = j["format"].get<std::string>();
    if (j.contains("seed")) opt.seed = j["seed"].get<std::string>();
}

int print_report(const std::vector<CheckResult>& checks, const Options& opt) {
    bool ok = true;
    if (opt.structured()) {
        json arr = json::array();
        for (const CheckResult& c : checks) {
            arr.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            ok = ok && c.pass;
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const CheckResult& c : checks) {
            if (c.pass)
                std::cout << "PASS " << c.name << "\n";
            else
                std::cout << "FAIL " << c.name << ": " << c.detail << "\n";
            ok = ok && c.pass;
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    try {
        apply_env_config(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Exact Hopf-algebra renormalization calculus on rooted trees"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--max-degree", opt.cfg.max_degree, "largest forest degree exercised");
    app.add_option("--z-hi", opt.cfg.z_hi, "certified z order of final series");
    app.add_option("--tau-cap", opt.cfg.tau_cap, "flow polynomial truncation degree");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));

    std::string arg_tree, arg_char = "toy", arg_method = "conjugation";
    int arg_degree = 3;

    CLI::App* c_trees = app.add_subcommand("trees", "enumerate canonical trees of one degree");
    c_trees->add_option("--degree", arg_degree, "vertex count")->required();

    CLI::App* c_cop = app.add_subcommand("coproduct", "coproduct of a forest");
    c_cop->add_option("forest", arg_tree, "bracket string")->required();

    CLI::App* c_anti = app.add_subcommand("antipode", "antipode of a forest");
    c_anti->add_option("forest", arg_tree, "bracket string")->required();

    CLI::App* c_eval = app.add_subcommand("char-eval", "evaluate a character on a tree");
    c_eval->add_option("character", arg_char, "character name (toy, e)")->required();
    c_eval->add_option("tree", arg_tree, "bracket string")->required();

    CLI::App* c_birkhoff = app.add_subcommand("birkhoff", "Birkhoff decomposition at a tree");
    c_birkhoff->add_option("character", arg_char, "character name (toy, e)")->required();
    c_birkhoff->add_option("tree", arg_tree, "bracket string")->required();

    auto add_seed = [&opt](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed,
                        "seed tree(s), one forest string; the cograph closure forms the basis");
    };
    CLI::App* c_mat = app.add_subcommand("coproduct-matrix", "coproduct matrix of a coideal");
    add_seed(c_mat);
    CLI::App* c_mbirk = app.add_subcommand("matrix-birkhoff", "matrix factorization of the toy character");
    add_seed(c_mbirk);
    CLI::App* c_beta = app.add_subcommand("beta", "beta matrix of the toy character");
    add_seed(c_beta);
    c_beta->add_option("--method", arg_method, "computation route")
        ->check(CLI::IsMember({"conjugation", "commutator", "bch"}));
    CLI::App* c_flow = app.add_subcommand("flow-check", "verify the matrix flow identities");
    add_seed(c_flow);
    CLI::App* c_scatt = app.add_subcommand("scattering-check", "verify the scattering limit");
    add_seed(c_scatt);

    app.add_subcommand("verify", "run the full identity suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        opt.cfg.validate();
        SymPoly::set_tau_cap(opt.cfg.tau_cap);

        if (c_trees->parsed()) {
            const auto& trees = enumerate_trees(arg_degree);
            if (opt.structured()) {
                json arr = json::array();
                for (const Tree& t : trees) arr.push_back(t.to_string());
                std::cout << json{{"degree", arg_degree}, {"trees", arr}}.dump(2) << "\n";
            } else {
                for (const Tree& t : trees) std::cout << t.to_string() << "\n";
            }
            return 0;
        }

        if (c_cop->parsed()) {
            TensorElement d = coproduct(HopfElement::from(parse_forest(arg_tree)));
            if (opt.structured()) {
                json arr = json::array();
                for (const auto& [k, c] : d.terms())
                    arr.push_back(json{{"left", k.first.to_string()},
                                       {"right", k.second.to_string()},
                                       {"num", c.get_num().get_str()},
                                       {"den", c.get_den().get_str()}});
                std::cout << arr.dump(2) << "\n";
            } else {
                std::cout << d.to_string() << "\n";
            }
            return 0;
        }

        if (c_anti->parsed()) {
            HopfElement s = antipode(HopfElement::from(parse_forest(arg_tree)));
            if (opt.structured())
                std::cout << hopf_json(s).dump(2) << "\n";
            else
                std::cout << s.to_string() << "\n";
            return 0;
        }

        if (c_eval->parsed()) {
            LinMap f = named_character(arg_char, opt.cfg);
            Series v = f(parse_forest(arg_tree));
            if (opt.structured())
                std::cout << series_json(v).dump(2) << "\n";
            else
                std::cout << v.to_string() << "\n";
            return 0;
        }

        if (c_birkhoff->parsed()) {
            LinMap f = named_character(arg_char, opt.cfg);
            BirkhoffPair pair = birkhoff_decompose(f);
            Forest x = parse_forest(arg_tree);
            if (opt.structured()) {
                std::cout << json{{"phi", series_json(f(x))},
                                  {"phi_minus", series_json(pair.minus(x))},
                                  {"phi_plus", series_json(pair.plus(x))}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "phi       " << f(x).to_string() << "\n";
                std::cout << "phi_minus " << pair.minus(x).to_string() << "\n";
                std::cout << "phi_plus  " << pair.plus(x).to_string() << "\n";
            }
            return 0;
        }

        if (c_mat->parsed()) {
            CoidealBasis basis = basis_from_seeds(opt);
            HopfMatrix m = coproduct_matrix(basis);
            if (opt.structured()) {
                json rows = json::array();
                for (int i = 0; i < m.size(); ++i) {
                    json row = json::array();
                    for (int j = 0; j < m.size(); ++j) row.push_back(hopf_json(m.at(i, j)));
                    rows.push_back(row);
                }
                json elems = json::array();
                for (int i = 0; i < basis.size(); ++i)
                    elems.push_back(basis.element(i).to_string());
                std::cout << json{{"basis", elems}, {"entries", rows}}.dump(2) << "\n";
            } else {
                for (int i = 0; i < m.size(); ++i) {
                    std::cout << (i == 0 ? "[ " : "  ");
                    for (int j = 0; j < m.size(); ++j) {
                        if (j) std::cout << " | ";
                        std::cout << m.at(i, j).to_string();
                    }
                    std::cout << (i + 1 == m.size() ? " ]\n" : "\n");
                }
            }
            return 0;
        }

        if (c_mbirk->parsed()) {
            CoidealBasis basis = basis_from_seeds(opt);
            TriMatrix phihat = psi(toy_character(opt.cfg), coproduct_matrix(basis));
            AtkinsonFactors f = atkinson_factorize(phihat);
            if (opt.structured()) {
                std::cout << json{{"phi", matrix_json(phihat, basis)},
                                  {"phi_minus", matrix_json(f.minus, basis)},
                                  {"phi_plus", matrix_json(f.plus, basis)}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "phi:\n" << phihat.to_string();
                std::cout << "phi_minus:\n" << f.minus.to_string();
                std::cout << "phi_plus:\n" << f.plus.to_string();
            }
            return 0;
        }

        if (c_beta->parsed()) {
            CoidealBasis basis = basis_from_seeds(opt);
            TriMatrix minus =
                atkinson_factorize(psi(toy_character(opt.cfg), coproduct_matrix(basis))).minus;
            TriMatrix beta = arg_method == "commutator" ? beta_matrix_commutator(minus, basis)
                             : arg_method == "bch"      ? beta_matrix_bch(minus, basis)
                                                        : beta_matrix(minus, basis);
            if (opt.structured())
                std::cout << matrix_json(beta, basis).dump(2) << "\n";
            else
                std::cout << beta.to_string();
            return 0;
        }

        if (c_flow->parsed()) {
            CoidealBasis basis = basis_from_seeds(opt);
            return print_report(aplus_flow_check(toy_character(opt.cfg), basis, opt.cfg), opt);
        }

        if (c_scatt->parsed()) {
            CoidealBasis basis = basis_from_seeds(opt);
            TriMatrix minus =
                atkinson_factorize(psi(toy_character(opt.cfg), coproduct_matrix(basis))).minus;
            TriMatrix limit = scattering_limit(minus, basis);
            std::string detail;
            bool ok = equal_matrices(limit, minus, &detail);
            std::vector<CheckResult> checks = {
                CheckResult{"scattering: u -> 0 limit reproduces the counter-term matrix", ok,
                            detail}};
            return print_report(checks, opt);
        }

        // verify
        VerifyReport report = run_verify(opt.cfg);
        if (opt.structured())
            return print_report(report.checks, opt);
        std::cout << report.to_text();
        return report.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
