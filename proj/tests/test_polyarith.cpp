#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyid/polynomial.hpp"

#include <random>

using namespace polyid;

namespace {

RingPtr ring_xy() { return Ring::make({"x", "y"}); }

Polynomial P(const RingPtr& r, MonomialOrder o, std::vector<Term> ts) {
    return Polynomial::from_terms(r, o, std::move(ts));
}

Monomial mono(std::vector<Monomial::Exp> e) { return Monomial(std::move(e)); }

Polynomial random_poly(const RingPtr& ring, std::mt19937_64& rng, int max_terms = 5,
                       int max_exp = 3, MonomialOrder ord = MonomialOrder::grevlex()) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expd(0, max_exp);
    std::uniform_int_distribution<long> coeff(-8, 8);
    std::vector<Term> ts;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        std::vector<Monomial::Exp> e(ring->arity());
        for (auto& x : e) x = static_cast<Monomial::Exp>(expd(rng));
        long c = coeff(rng);
        ts.push_back({Monomial(e), Rat(c)});
    }
    return Polynomial::from_terms(ring, ord, std::move(ts));
}

}  // namespace

TEST_CASE("rationals reduce to lowest terms with positive denominators") {
    Rat a(2, 4);
    CHECK(a.numerator() == 1);
    CHECK(a.denominator() == 2);
    Rat b(3, -6);
    CHECK(b.numerator() == -1);
    CHECK(b.denominator() == 2);
    CHECK((Rat(2, 3) + Rat(1, 6)) == Rat(5, 6));
    CHECK(Rat(0).str() == "0");
    CHECK(Rat(0).denominator() == 1);
    CHECK(Rat(7, 10).str_fraction() == "7/10");
    CHECK(Rat(2).str_fraction() == "2/1");
    CHECK(*Rat::parse("-14/21") == Rat(-2, 3));
    CHECK(!Rat::parse("1/0"));
    CHECK(!Rat::parse("x"));
    CHECK_THROWS(Rat(1, 0));
    CHECK_THROWS(Rat(1).operator/=(Rat(0)));
}

TEST_CASE("cmp_monomials: lex") {
    // x1^2 vs x1*x2 under lex on (x1, x2)
    CHECK(cmp_monomials(mono({2, 0}), mono({1, 1}), MonomialOrder::lex(), 2) ==
          Cmp::Greater);
}

TEST_CASE("cmp_monomials: block order dominates on the x part") {
    // ring (x1; t1): any x power beats any pure-t monomial
    CHECK(cmp_monomials(mono({0, 5}), mono({1, 0}), MonomialOrder::block(), 1) == Cmp::Less);
}

TEST_CASE("cmp_monomials: grevlex hand example") {
    // a*c vs b^2 on (a,b,c): equal degree, last difference at c, ac has more
    CHECK(cmp_monomials(mono({1, 0, 1}), mono({0, 2, 0}), MonomialOrder::grevlex(), 3) ==
          Cmp::Less);
}

TEST_CASE("cmp_monomials is a total multiplicative well-order") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> expd(0, 4);
    auto rand_mono = [&](std::size_t arity) {
        std::vector<Monomial::Exp> e(arity);
        for (auto& x : e) x = static_cast<Monomial::Exp>(expd(rng));
        return Monomial(e);
    };
    for (MonomialOrder ord :
         {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block()}) {
        const std::size_t arity = 4;
        const std::size_t split = ord.kind == OrderKind::Block ? 2 : arity;
        Monomial one(arity);
        for (int it = 0; it < 300; ++it) {
            Monomial m1 = rand_mono(arity), m2 = rand_mono(arity), m = rand_mono(arity);
            Cmp c12 = cmp_monomials(m1, m2, ord, split);
            Cmp c21 = cmp_monomials(m2, m1, ord, split);
            // exactly one of <, =, > holds
            if (c12 == Cmp::Equal) {
                CHECK(m1 == m2);
                CHECK(c21 == Cmp::Equal);
            } else {
                CHECK(c12 != c21);
            }
            // multiplicative
            if (c12 == Cmp::Greater)
                CHECK(cmp_monomials(m1 * m, m2 * m, ord, split) == Cmp::Greater);
            // 1 is minimal
            if (!m1.is_one()) CHECK(cmp_monomials(one, m1, ord, split) == Cmp::Less);
        }
    }
}

TEST_CASE("block order: t-part never influences distinct x-parts") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> expd(0, 4);
    const std::size_t split = 2, arity = 4;
    for (int it = 0; it < 300; ++it) {
        std::vector<Monomial::Exp> e1(arity), e2(arity);
        for (auto& x : e1) x = static_cast<Monomial::Exp>(expd(rng));
        for (auto& x : e2) x = static_cast<Monomial::Exp>(expd(rng));
        if (e1[0] == e2[0] && e1[1] == e2[1]) continue;
        Cmp with_t = cmp_monomials(Monomial(e1), Monomial(e2), MonomialOrder::block(), split);
        std::vector<Monomial::Exp> z1 = e1, z2 = e2;
        z1[2] = z1[3] = z2[2] = z2[3] = 0;
        Cmp without_t =
            cmp_monomials(Monomial(z1), Monomial(z2), MonomialOrder::block(), split);
        CHECK(with_t == without_t);
    }
}

TEST_CASE("add: cancellation, identity, rational coefficients") {
    auto r = ring_xy();
    auto o = MonomialOrder::grevlex();
    Polynomial x = Polynomial::variable(r, o, "x");
    Polynomial one = Polynomial::constant(r, o, Rat(1));
    CHECK((x + one) + (-x + one) == Polynomial::constant(r, o, Rat(2)));
    Polynomial p = P(r, o, {{mono({2, 1}), Rat(3)}, {mono({0, 0}), Rat(-1)}});
    CHECK(Polynomial::zero(r, o) + p == p);
    CHECK(x * Rat(2, 3) + x * Rat(1, 6) == x * Rat(5, 6));
}

TEST_CASE("mul: binomial, annihilator, distributive shape") {
    auto r = ring_xy();
    auto o = MonomialOrder::grevlex();
    Polynomial x = Polynomial::variable(r, o, "x");
    Polynomial y = Polynomial::variable(r, o, "y");
    Polynomial lhs = (x + y) * (x + y);
    Polynomial rhs = x * x + x * y * Rat(2) + y * y;
    CHECK(lhs == rhs);
    CHECK((x + y) * Polynomial::zero(r, o) == Polynomial::zero(r, o));

    auto r4 = Ring::make({"x1", "x2", "y1", "y2"});
    auto v = [&](const char* n) { return Polynomial::variable(r4, o, n); };
    Polynomial prod = (v("x1") + v("x2")) * (v("y1") + v("y2"));
    Polynomial expect = v("x1") * v("y1") + v("x1") * v("y2") + v("x2") * v("y1") +
                        v("x2") * v("y2");
    CHECK(prod == expect);
}

TEST_CASE("ring axioms on random polynomials") {
    auto r = Ring::make({"x", "y", "z"});
    std::mt19937_64 rng(23);
    for (int it = 0; it < 60; ++it) {
        Polynomial p = random_poly(r, rng), q = random_poly(r, rng), s = random_poly(r, rng);
        CHECK(p + q == q + p);
        CHECK((p + q) + s == p + (q + s));
        CHECK(p * q == q * p);
        CHECK((p * q) * s == p * (q * s));
        CHECK(p * (q + s) == p * q + p * s);
    }
}

TEST_CASE("evaluate: vanishing coefficient at t = 1/2") {
    auto r = Ring::make({"x2", "t"}, 1);
    auto o = MonomialOrder::block();
    // g = (2t - 1) x2 + 2
    Polynomial g = P(r, o, {{mono({1, 1}), Rat(2)}, {mono({1, 0}), Rat(-1)},
                            {mono({0, 0}), Rat(2)}});
    Polynomial at_half = g.evaluate({{"t", Rat(1, 2)}});
    CHECK(at_half.is_constant());
    CHECK(at_half.constant_value() == Rat(2));

    CHECK(g.evaluate({}) == g);

    auto rxy = Ring::make({"x1", "y1"});
    Polynomial f = Polynomial::variable(rxy, o, "x1") * Polynomial::variable(rxy, o, "y1") -
                   Polynomial::constant(rxy, o, Rat(1));
    Polynomial v = f.evaluate({{"x1", Rat(1)}, {"y1", Rat(1)}});
    CHECK(v.is_zero());
}

TEST_CASE("evaluate is a ring homomorphism") {
    auto r = Ring::make({"x", "y", "z"});
    std::mt19937_64 rng(31);
    std::map<std::string, Rat> asg{{"y", Rat(3, 2)}};
    for (int it = 0; it < 40; ++it) {
        Polynomial p = random_poly(r, rng), q = random_poly(r, rng);
        CHECK((p + q).evaluate(asg) == p.evaluate(asg) + q.evaluate(asg));
        CHECK((p * q).evaluate(asg) == p.evaluate(asg) * q.evaluate(asg));
    }
}

TEST_CASE("evaluate rejects unknown variables") {
    auto r = ring_xy();
    Polynomial x = Polynomial::variable(r, MonomialOrder::lex(), "x");
    CHECK_THROWS(x.evaluate({{"nope", Rat(1)}}));
}

TEST_CASE("normal_form: membership, textbook division, empty divisors") {
    auto r = ring_xy();
    auto lex = MonomialOrder::lex();
    auto v = [&](const char* n) { return Polynomial::variable(r, lex, n); };
    Polynomial x = v("x"), y = v("y");

    CHECK(normal_form(x * x, {x}, lex).is_zero());

    // x^2 y + x y^2 + y^2 mod {xy - 1, y^2 - 1} under lex x > y
    Polynomial f = x * x * y + x * y * y + y * y;
    Polynomial d1 = x * y - Polynomial::constant(r, lex, Rat(1));
    Polynomial d2 = y * y - Polynomial::constant(r, lex, Rat(1));
    Polynomial rem = normal_form(f, {d1, d2}, lex);
    CHECK(rem == x + y + Polynomial::constant(r, lex, Rat(1)));

    CHECK(normal_form(f, {}, lex) == f);
    CHECK_THROWS(normal_form(f, {Polynomial::zero(r, lex)}, lex));
}

TEST_CASE("division tracks quotients: p = sum q_i d_i + r") {
    auto r = Ring::make({"x", "y", "z"});
    std::mt19937_64 rng(41);
    auto lex = MonomialOrder::lex();
    for (int it = 0; it < 40; ++it) {
        Polynomial p = random_poly(r, rng, 6, 3, lex);
        Polynomial d1 = random_poly(r, rng, 3, 2, lex);
        Polynomial d2 = random_poly(r, rng, 3, 2, lex);
        std::vector<Polynomial> ds;
        if (!d1.is_zero()) ds.push_back(d1);
        if (!d2.is_zero()) ds.push_back(d2);
        if (ds.empty()) continue;
        DivisionResult res = divide(p, ds, lex);
        Polynomial rebuilt = res.remainder;
        for (std::size_t i = 0; i < ds.size(); ++i) rebuilt += res.quotients[i] * ds[i];
        CHECK(rebuilt == p.with_order(lex));
        // no remainder term divisible by a divisor leading monomial
        for (const auto& t : res.remainder.terms())
            for (const auto& d : ds) CHECK(!d.leading_monomial().divides(t.mono));
    }
}

TEST_CASE("s_polynomial: coprime single terms, hand example, cancellation") {
    auto r = ring_xy();
    auto lex = MonomialOrder::lex();
    auto v = [&](const char* n) { return Polynomial::variable(r, lex, n); };
    Polynomial x = v("x"), y = v("y");

    CHECK(s_polynomial(x, y, lex).is_zero());

    Polynomial one = Polynomial::constant(r, lex, Rat(1));
    Polynomial s = s_polynomial(x * x - one, x * y - one, lex);
    CHECK(s == x - y);

    std::mt19937_64 rng(53);
    int done = 0;
    while (done < 40) {
        Polynomial p = random_poly(r, rng, 5, 3, lex);
        Polynomial q = random_poly(r, rng, 5, 3, lex);
        if (p.is_zero() || q.is_zero()) continue;
        ++done;
        Monomial L = Monomial::lcm(p.leading_monomial(), q.leading_monomial());
        Polynomial sp = s_polynomial(p, q, lex);
        if (!sp.is_zero())
            CHECK(cmp_monomials(sp.leading_monomial(), L, lex, 2) == Cmp::Less);
    }
    CHECK_THROWS(s_polynomial(Polynomial::zero(r, lex), x, lex));
}

TEST_CASE("content normalization and canonical rendering") {
    auto r = Ring::make({"x2", "t"}, 1);
    auto o = MonomialOrder::block();
    Polynomial g = P(r, o, {{mono({1, 1}), Rat(-4, 3)}, {mono({1, 0}), Rat(2, 3)},
                            {mono({0, 0}), Rat(-2)}});
    Polynomial n = g.content_normalized();
    CHECK(n.str() == "2*x2*t - x2 + 3");
    CHECK(n.leading_coeff() == Rat(2));
    Polynomial m = g.monic();
    CHECK(m.leading_coeff() == Rat(1));

    auto rt = Ring::make({"t"});
    Polynomial bad = Polynomial::variable(rt, o, "t") * Rat(2) -
                     Polynomial::constant(rt, o, Rat(1));
    CHECK(bad.str() == "2*t - 1");
    CHECK(Polynomial::zero(rt, o).str() == "0");
}
