#include "polyid/certify.hpp"
#include "polyid/groebner.hpp"
#include "polyid/sysdsl.hpp"
#include "polyid/variety.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace polyid;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

std::optional<SystemFile> load_system(const std::string& path, int& rc) {
    auto text = read_file(path);
    if (!text) {
        rc = fail_usage("cannot read " + path);
        return std::nullopt;
    }
    auto parsed = parse_system(*text);
    if (std::holds_alternative<ParseError>(parsed)) {
        rc = fail_usage(path + ": " + std::get<ParseError>(parsed).str());
        return std::nullopt;
    }
    return std::get<SystemFile>(parsed);
}

double default_timeout() {
    if (const char* env = std::getenv("POLYID_TIMEOUT")) {
        try {
            double v = std::stod(env);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    return 600.0;
}

bool write_report(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) return false;
    out << text << "\n";
    return true;
}

MonomialOrder order_from_name(const std::string& s) {
    if (s == "lex") return MonomialOrder::lex();
    if (s == "grevlex") return MonomialOrder::grevlex();
    return MonomialOrder::block();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact certification of generic identifiability for parametric "
                 "polynomial systems"};
    app.require_subcommand(1);

    // ---- gen ----
    std::string gen_model;
    int gen_n = 0;
    std::string gen_known_p;
    std::string gen_params_file;
    auto* gen = app.add_subcommand("gen", "emit a ranking-model system as DSL");
    gen->add_option("--model", gen_model, "btl | mnl3 | mnl23 | pl")->required();
    gen->add_option("--n", gen_n, "number of items")->required();
    gen->add_option("--known-p", gen_known_p, "fixed mixing probability (rational)");
    gen->add_option("--params", gen_params_file,
                    "parameter file (a1..an, b1..bn, p1); emits the instantiated system");

    // ---- groebner ----
    std::string gb_file, gb_order = "auto";
    double gb_timeout = default_timeout();
    auto* gb = app.add_subcommand("groebner", "print the reduced basis of a system file");
    gb->add_option("file", gb_file, "system DSL file")->required();
    gb->add_option("--order", gb_order, "lex | grevlex | block (default: block)");
    gb->add_option("--timeout", gb_timeout, "seconds");

    // ---- badset ----
    std::string bad_file;
    double bad_timeout = default_timeout();
    auto* bad = app.add_subcommand("badset", "print the parameter bad set Bad(t)");
    bad->add_option("file", bad_file, "system DSL file")->required();
    bad->add_option("--timeout", bad_timeout, "seconds");

    // ---- certify ----
    std::string cert_file, cert_witness, cert_report;
    int cert_expected = -1;
    double cert_timeout = default_timeout();
    std::uint64_t cert_seed = 20260809;
    bool cert_no_parametric = false;
    auto* cert = app.add_subcommand("certify", "run the assumption checks and emit a verdict");
    cert->add_option("file", cert_file, "system DSL file")->required();
    cert->add_option("--witness", cert_witness, "witness assignment file")->required();
    cert->add_option("--expected", cert_expected, "expected solution count");
    cert->add_option("--timeout", cert_timeout, "seconds for the parametric stage");
    cert->add_option("--report", cert_report, "write the certificate JSON here");
    cert->add_option("--seed", cert_seed, "seed for the extra parameter draws");
    cert->add_flag("--no-parametric", cert_no_parametric,
                   "skip the parametric stage (witness-level certificate)");

    // ---- suite ----
    bool suite_paper = false;
    std::string suite_report;
    double suite_parametric_timeout = 0.0;
    auto* suite = app.add_subcommand("suite", "reproduce the published witness computations");
    suite->add_flag("--paper", suite_paper, "run the eight published witness systems");
    suite->add_option("--report", suite_report, "write the suite JSON here");
    suite->add_option("--parametric-timeout", suite_parametric_timeout,
                      "also attempt each parametric basis with this budget (seconds)");

    // ---- solve ----
    std::string solve_file;
    double solve_tol = 1e-9;
    auto* solve = app.add_subcommand("solve", "numeric solutions of an instantiated system");
    solve->add_option("file", solve_file, "system DSL file (no parameters)")->required();
    solve->add_option("--tol", solve_tol, "residual tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            auto model = model_from_name(gen_model);
            if (!model) return fail_usage("unknown model '" + gen_model + "'");
            ModelKind kind = ModelKind::unknown(*model);
            if (!gen_known_p.empty()) {
                auto p = Rat::parse(gen_known_p);
                if (!p) return fail_usage("--known-p expects a rational like 7/10");
                kind = ModelKind::known(*model, *p);
            }
            std::optional<MixtureParams> at;
            if (!gen_params_file.empty()) {
                auto text = read_file(gen_params_file);
                if (!text) return fail_usage("cannot read " + gen_params_file);
                auto parsed = parse_assignments(*text);
                if (std::holds_alternative<ParseError>(parsed))
                    return fail_usage(gen_params_file + ": " +
                                      std::get<ParseError>(parsed).str());
                auto& m = std::get<std::map<std::string, Rat>>(parsed);
                MixtureParams mp;
                for (int i = 1; i <= gen_n; ++i) {
                    auto a = m.find("a" + std::to_string(i));
                    auto b = m.find("b" + std::to_string(i));
                    if (a == m.end() || b == m.end())
                        return fail_usage("parameter file must assign a1..an and b1..bn");
                    mp.a.push_back(a->second);
                    mp.b.push_back(b->second);
                }
                if (kind.known_p) {
                    mp.p1 = kind.p1;
                } else {
                    auto p = m.find("p1");
                    if (p == m.end()) return fail_usage("parameter file must assign p1");
                    mp.p1 = p->second;
                }
                at = std::move(mp);
            }
            std::cout << emit_model_dsl(kind, gen_n, at);
            return kExitOk;
        }

        if (gb->parsed()) {
            int rc = kExitOk;
            auto f = load_system(gb_file, rc);
            if (!f) return rc;
            ParametricSystem sys = to_parametric_system(*f);
            MonomialOrder ord =
                gb_order == "auto" ? MonomialOrder::block() : order_from_name(gb_order);
            GroebnerLimits lim;
            lim.max_seconds = gb_timeout;
            GroebnerResult gr = buchberger(sys.generators, ord, lim);
            if (!gr.ok()) {
                std::cerr << "resource limit exceeded (" << gr.stats.pairs_processed
                          << " pairs); partial basis not printed\n";
                return kExitInconclusive;
            }
            for (const auto& g : reduce_basis(gr.basis).elements)
                std::cout << g.str() << "\n";
            return kExitOk;
        }

        if (bad->parsed()) {
            int rc = kExitOk;
            auto f = load_system(bad_file, rc);
            if (!f) return rc;
            ParametricSystem sys = to_parametric_system(*f);
            GroebnerLimits lim;
            lim.max_seconds = bad_timeout;
            GroebnerResult gr = buchberger(sys.generators, sys.order, lim);
            if (!gr.ok()) {
                std::cerr << "resource limit exceeded during the parametric basis\n";
                return kExitInconclusive;
            }
            BadSet bs = extract_bad_set(reduce_basis(gr.basis));
            for (const auto& h : bs.polys) std::cout << h.str() << "\n";
            return kExitOk;
        }

        if (cert->parsed()) {
            int rc = kExitOk;
            auto f = load_system(cert_file, rc);
            if (!f) return rc;
            auto wt = read_file(cert_witness);
            if (!wt) return fail_usage("cannot read " + cert_witness);
            auto parsed = parse_assignments(*wt);
            if (std::holds_alternative<ParseError>(parsed))
                return fail_usage(cert_witness + ": " + std::get<ParseError>(parsed).str());
            auto witness = std::get<std::map<std::string, Rat>>(parsed);

            ParametricSystem sys = to_parametric_system(*f);
            if (cert_expected >= 0)
                sys.expected_count = static_cast<unsigned>(cert_expected);
            if (sys.expected_count == 0)
                return fail_usage("expected solution count missing (use --expected)");
            // Restrict the witness map to the declared parameters.
            std::map<std::string, Rat> w;
            for (const auto& p : f->params) {
                auto it = witness.find(p);
                if (it == witness.end())
                    return fail_usage("witness does not assign parameter '" + p + "'");
                w[p] = it->second;
            }
            CertifyLimits limits;
            limits.parametric_gb_seconds = cert_timeout;
            limits.seed = cert_seed;
            limits.attempt_parametric = !cert_no_parametric;
            Certificate c = certify(sys, w, limits);
            if (!cert_report.empty() && !write_report(cert_report, c.to_json(true)))
                return fail_usage("cannot write " + cert_report);
            std::cout << c.verdict.kind_str();
            if (c.verdict.kind == Verdict::Kind::GenericallyIdentifiable)
                std::cout << "(" << c.verdict.count << ")";
            if (!c.verdict.reason.empty()) std::cout << ": " << c.verdict.reason;
            std::cout << "\n";
            if (c.assumption2.degree)
                std::cout << "degree at witness: " << *c.assumption2.degree << "\n";
            switch (c.verdict.kind) {
                case Verdict::Kind::GenericallyIdentifiable: return kExitOk;
                case Verdict::Kind::Refuted: return kExitRefuted;
                case Verdict::Kind::Inconclusive: return kExitInconclusive;
            }
        }

        if (suite->parsed()) {
            if (!suite_paper) return fail_usage("suite requires --paper");
            CertifyLimits limits;
            limits.attempt_parametric = suite_parametric_timeout > 0;
            if (limits.attempt_parametric)
                limits.parametric_gb_seconds = suite_parametric_timeout;
            SuiteReport rep = run_paper_suite(limits);
            std::cout << rep.to_table();
            if (!suite_report.empty() && !write_report(suite_report, rep.to_json(true)))
                return fail_usage("cannot write " + suite_report);
            return rep.all_match() ? kExitOk : kExitRefuted;
        }

        if (solve->parsed()) {
            int rc = kExitOk;
            auto f = load_system(solve_file, rc);
            if (!f) return rc;
            if (!f->params.empty())
                return fail_usage("solve expects an instantiated system (no parameters)");
            ParametricSystem sys = to_parametric_system(*f);
            SolveConfig cfg;
            cfg.tolerance = solve_tol;
            SolveOutcome out = solve_numeric(sys.generators, cfg);
            if (!out.ok) {
                std::cerr << "solve failed: " << out.message << "\n";
                return kExitInconclusive;
            }
            std::cout << out.solutions.size() << " solution(s)\n";
            for (const auto& s : out.solutions) {
                for (const auto& [name, val] : s.assignment)
                    std::cout << "  " << name << " = " << val.real()
                              << (val.imag() >= 0 ? "+" : "") << val.imag() << "i";
                std::cout << "   residual " << s.residual << "\n";
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
