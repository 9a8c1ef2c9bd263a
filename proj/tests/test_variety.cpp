#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyid/variety.hpp"

using namespace polyid;

namespace {

Polynomial pv(const RingPtr& r, MonomialOrder o, const char* n) {
    return Polynomial::variable(r, o, n);
}
Polynomial pc(const RingPtr& r, MonomialOrder o, long v) {
    return Polynomial::constant(r, o, Rat(v));
}

GroebnerBasis basis_of(const std::vector<Polynomial>& gens, MonomialOrder ord) {
    GroebnerResult gr = buchberger(gens, ord);
    REQUIRE(gr.ok());
    return reduce_basis(gr.basis);
}

}  // namespace

TEST_CASE("zero-dimensionality: point ideal yes, union of lines no") {
    auto r = Ring::make({"x", "y"});
    auto o = MonomialOrder::grevlex();
    Polynomial x = pv(r, o, "x"), y = pv(r, o, "y");

    CHECK(is_zero_dimensional(basis_of({x - pc(r, o, 1), y - pc(r, o, 2)}, o)));
    CHECK(!is_zero_dimensional(basis_of({x * y}, o)));
}

TEST_CASE("zero-dimensionality rejects parametric rings") {
    auto r = Ring::make({"x", "t"}, 1);
    auto o = MonomialOrder::block();
    GroebnerBasis gb{r, o, {pv(r, o, "x")}, false};
    CHECK_THROWS(is_zero_dimensional(gb));
}

TEST_CASE("degree counts standard monomials with multiplicity") {
    auto r = Ring::make({"x"});
    auto o = MonomialOrder::lex();
    Polynomial x = pv(r, o, "x");
    for (int k = 1; k <= 5; ++k) {
        Polynomial xk = pc(r, o, 1);
        for (int i = 0; i < k; ++i) xk *= x;
        CHECK(degree(basis_of({xk}, o)) == static_cast<std::uint64_t>(k));
    }

    auto r2 = Ring::make({"x", "y"});
    Polynomial x2 = pv(r2, o, "x"), y2 = pv(r2, o, "y");
    GroebnerBasis gb = basis_of({x2 - pc(r2, o, 1), y2 - pc(r2, o, 2)}, o);
    VarietySummary s = analyze_variety(gb);
    CHECK(s.zero_dimensional);
    CHECK(*s.degree == 1);
    CHECK(s.standard_monomials->size() == 1);
    CHECK_THROWS(degree(basis_of({x2 * y2}, o)));
}

TEST_CASE("degree is order-invariant") {
    auto r = Ring::make({"x", "y"});
    Polynomial xl = pv(r, MonomialOrder::lex(), "x"), yl = pv(r, MonomialOrder::lex(), "y");
    std::vector<Polynomial> gens = {xl * xl + yl * yl - pc(r, MonomialOrder::lex(), 1),
                                    xl * yl - pc(r, MonomialOrder::lex(), 1)};
    auto dl = degree(basis_of(gens, MonomialOrder::lex()));
    auto dg = degree(basis_of(gens, MonomialOrder::grevlex()));
    CHECK(dl == dg);
    CHECK(dl == 4);
}

TEST_CASE("solve_numeric: hand-solvable triangular system") {
    auto r = Ring::make({"x", "y"});
    auto o = MonomialOrder::lex();
    Polynomial x = pv(r, o, "x"), y = pv(r, o, "y");
    std::vector<Polynomial> sys = {x * x - pc(r, o, 1), y - x};
    SolveOutcome out = solve_numeric(sys);
    REQUIRE(out.ok);
    REQUIRE(out.solutions.size() == 2);
    for (const auto& s : out.solutions) {
        CHECK(s.residual <= 1e-9);
        double xv = s.assignment.at("x").real();
        double yv = s.assignment.at("y").real();
        CHECK(std::abs(std::abs(xv) - 1.0) < 1e-9);
        CHECK(std::abs(xv - yv) < 1e-9);
    }
}

TEST_CASE("solve_numeric respects the degree bound and finds complex roots") {
    auto r = Ring::make({"x", "y"});
    auto o = MonomialOrder::lex();
    Polynomial x = pv(r, o, "x"), y = pv(r, o, "y");
    // x^2 + 1 = 0, y = x: two complex solutions
    std::vector<Polynomial> sys = {x * x + pc(r, o, 1), y - x};
    SolveOutcome out = solve_numeric(sys);
    REQUIRE(out.ok);
    CHECK(out.solutions.size() == 2);
    std::uint64_t deg = degree(basis_of(sys, MonomialOrder::grevlex()));
    CHECK(out.solutions.size() <= deg);
    for (const auto& s : out.solutions)
        CHECK(std::abs(std::abs(s.assignment.at("x").imag()) - 1.0) < 1e-9);
}

TEST_CASE("verify_exact_solution: exact acceptance and negative control") {
    auto r = Ring::make({"x", "y"});
    auto o = MonomialOrder::grevlex();
    Polynomial x = pv(r, o, "x"), y = pv(r, o, "y");
    std::vector<Polynomial> sys = {x * y - pc(r, o, 6), x + y - pc(r, o, 5)};
    CHECK(verify_exact_solution(sys, {{"x", Rat(2)}, {"y", Rat(3)}}));
    CHECK(verify_exact_solution(sys, {{"x", Rat(3)}, {"y", Rat(2)}}));
    CHECK(!verify_exact_solution(sys, {{"x", Rat(1)}, {"y", Rat(4)}}));
    CHECK_THROWS(verify_exact_solution(sys, {{"x", Rat(2)}}));
}

TEST_CASE("multiplicity: double root counted by degree, solved once") {
    auto r = Ring::make({"x", "y"});
    auto o = MonomialOrder::lex();
    Polynomial x = pv(r, o, "x"), y = pv(r, o, "y");
    std::vector<Polynomial> sys = {y * y, x - y};
    CHECK(degree(basis_of(sys, MonomialOrder::grevlex())) == 2);
    SolveOutcome out = solve_numeric(sys);
    REQUIRE(out.ok);
    CHECK(out.solutions.size() == 1);  // one distinct point
    CHECK(std::abs(out.solutions[0].assignment.at("x")) < 1e-9);
}
