#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyid/certify.hpp"
#include "polyid/sysdsl.hpp"

using namespace polyid;

namespace {

const char* kToySource =
    "system: toy\n"
    "params: t\n"
    "vars: x1 x2\n"
    "eq: x1*x2 - 2\n"
    "eq: t*x1*x2 + x1 - 1\n"
    "expect: 1\n"
    "solution:\n"
    "  x1 = 1 - 2*t\n"
    "  x2 = 2/(1 - 2*t)\n";

ParametricSystem toy_system() {
    auto parsed = parse_system(kToySource);
    REQUIRE(std::holds_alternative<SystemFile>(parsed));
    return to_parametric_system(std::get<SystemFile>(parsed));
}

}  // namespace

TEST_CASE("toy solution count oracle: brute force at several witnesses") {
    // Oracle for the expected count: numeric solving of the instantiated
    // system at a handful of parameter values, independent of certify.
    ParametricSystem sys = toy_system();
    for (long tv : {0L, 1L, 2L, -3L}) {
        auto inst = sys.instantiate({{"t", Rat(tv)}}, MonomialOrder::lex());
        SolveOutcome out = solve_numeric(inst);
        REQUIRE(out.ok);
        CHECK(out.solutions.size() == 1);
    }
}

TEST_CASE("certify the toy system at t = 0") {
    ParametricSystem sys = toy_system();
    Certificate cert = certify(sys, {{"t", Rat(0)}});
    CHECK(cert.verdict.kind == Verdict::Kind::GenericallyIdentifiable);
    CHECK(cert.verdict.count == 1);
    CHECK(cert.assumption1.ok);
    CHECK(cert.assumption1.all_distinct);
    CHECK(cert.assumption2.mode == "parametric");
    CHECK(cert.assumption2.bad_set_size == 1);
    CHECK(cert.assumption2.witness_avoids == true);
    CHECK(cert.assumption2.zero_dimensional == true);
    CHECK(cert.assumption2.degree == 1);
}

TEST_CASE("certify reports a bad-set hit as inconclusive") {
    ParametricSystem sys = toy_system();
    Certificate cert = certify(sys, {{"t", Rat(1, 2)}});
    CHECK(cert.verdict.kind == Verdict::Kind::Inconclusive);
    CHECK(cert.assumption2.witness_avoids == false);
    REQUIRE(cert.assumption2.vanishing);
    CHECK(*cert.assumption2.vanishing == "2*t - 1");
    // monotone staging: the instantiated stage never ran
    CHECK(!cert.assumption2.zero_dimensional.has_value());
    CHECK(!cert.assumption2.degree.has_value());
}

TEST_CASE("certify refutes a wrong expected count at an avoiding witness") {
    ParametricSystem sys = toy_system();
    sys.expected_count = 2;
    Certificate cert = certify(sys, {{"t", Rat(0)}});
    CHECK(cert.verdict.kind == Verdict::Kind::Refuted);
    CHECK(cert.assumption2.degree == 1);
}

TEST_CASE("certificates are deterministic modulo timing") {
    ParametricSystem sys = toy_system();
    CertifyLimits lim;
    lim.seed = 42;
    Certificate a = certify(sys, {{"t", Rat(0)}}, lim);
    Certificate b = certify(sys, {{"t", Rat(0)}}, lim);
    CHECK(a.to_json(false) == b.to_json(false));
}

TEST_CASE("witness-level fallback when the parametric stage is skipped") {
    ParametricSystem sys = toy_system();
    CertifyLimits lim;
    lim.attempt_parametric = false;
    Certificate cert = certify(sys, {{"t", Rat(0)}}, lim);
    CHECK(cert.verdict.kind == Verdict::Kind::Inconclusive);
    CHECK(cert.assumption2.mode == "witness_level");
    CHECK(cert.assumption2.degree == 1);  // instantiated checks still ran
    CHECK(cert.verdict.reason.find("witness-level") != std::string::npos);
}

TEST_CASE("parametric timeout degrades to a witness-level certificate") {
    ParametricSystem sys = toy_system();
    CertifyLimits lim;
    lim.parametric_gb_pairs = 0;  // force the resource limit
    Certificate cert = certify(sys, {{"t", Rat(0)}}, lim);
    CHECK(cert.verdict.kind == Verdict::Kind::Inconclusive);
    CHECK(cert.assumption2.mode == "witness_level");
    CHECK(cert.assumption2.degree == 1);
}

TEST_CASE("missing templates are reported, not invented") {
    auto parsed = parse_system(
        "system: bare\nparams: t\nvars: x\neq: x - t\nexpect: 1\n");
    REQUIRE(std::holds_alternative<SystemFile>(parsed));
    ParametricSystem sys = to_parametric_system(std::get<SystemFile>(parsed));
    Certificate cert = certify(sys, {{"t", Rat(3)}});
    CHECK(cert.verdict.kind == Verdict::Kind::Inconclusive);
    CHECK(!cert.assumption1.checked);
}

TEST_CASE("swap consistency: unknown-p witnesses certify with equal degree") {
    auto kind = ModelKind::unknown(Model::MNL23);
    ParametricSystem sys = build_parametric(kind, 4);
    MixtureParams mp = suite_witness(kind);
    MixtureParams sw = mp;
    std::swap(sw.a, sw.b);
    sw.a[0] = Rat(1);
    sw.b[0] = Rat(1);
    sw.p1 = Rat(1) - mp.p1;
    CertifyLimits lim;
    lim.attempt_parametric = false;  // degree comparison only
    lim.extra_draws = 3;
    Certificate c1 = certify(sys, parameter_assignment(kind, mp), lim);
    Certificate c2 = certify(sys, parameter_assignment(kind, sw), lim);
    REQUIRE(c1.assumption2.degree);
    REQUIRE(c2.assumption2.degree);
    CHECK(*c1.assumption2.degree == *c2.assumption2.degree);
}

TEST_CASE("induction audit: clean runs at random rationals") {
    auto kind = ModelKind::known(Model::BTL, Rat(7, 10));
    InductionAuditReport rep = induction_audit(kind, min_items(kind) + 1, 15, 777);
    CHECK(rep.total_trials == 15);
    CHECK(rep.failures == 0);
    CHECK(rep.degenerate_excluded == 0);

    auto pl = ModelKind::unknown(Model::PL);
    InductionAuditReport rp = induction_audit(pl, min_items(pl) + 1, 10, 778);
    CHECK(rp.total_trials == 20);  // both branches
    CHECK(rp.failures == 0);
}
