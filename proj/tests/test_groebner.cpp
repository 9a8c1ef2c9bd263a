#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyid/groebner.hpp"

#include <random>

using namespace polyid;

namespace {

Polynomial pvar(const RingPtr& r, MonomialOrder o, const char* n) {
    return Polynomial::variable(r, o, n);
}
Polynomial pc(const RingPtr& r, MonomialOrder o, long v) {
    return Polynomial::constant(r, o, Rat(v));
}

// The running parametric example: {x1 x2 - 2, t x1 x2 + x1 - 1} over
// [x1, x2 | t] with the block order.
struct ToySystem {
    RingPtr ring = Ring::make({"x1", "x2", "t"}, 2);
    MonomialOrder ord = MonomialOrder::block();
    std::vector<Polynomial> gens;
    ToySystem() {
        Polynomial x1 = pvar(ring, ord, "x1"), x2 = pvar(ring, ord, "x2"),
                   t = pvar(ring, ord, "t");
        gens = {x1 * x2 - pc(ring, ord, 2), t * x1 * x2 + x1 - pc(ring, ord, 1)};
    }
};

bool same_ideal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                MonomialOrder ord) {
    for (const auto& f : a)
        if (!normal_form(f, b, ord).is_zero()) return false;
    for (const auto& g : b)
        if (!normal_form(g, a, ord).is_zero()) return false;
    return true;
}

Polynomial random_poly(const RingPtr& ring, std::mt19937_64& rng, MonomialOrder ord,
                       int max_terms = 4, int max_exp = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> expd(0, max_exp);
    std::uniform_int_distribution<long> coeff(-5, 5);
    std::vector<Term> ts;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        std::vector<Monomial::Exp> e(ring->arity());
        for (auto& x : e) x = static_cast<Monomial::Exp>(expd(rng));
        ts.push_back({Monomial(e), Rat(coeff(rng))});
    }
    return Polynomial::from_terms(ring, ord, std::move(ts));
}

}  // namespace

TEST_CASE("toy parametric basis matches the expected reduced form") {
    ToySystem toy;
    GroebnerResult gr = buchberger(toy.gens, toy.ord);
    REQUIRE(gr.ok());
    GroebnerBasis red = reduce_basis(gr.basis);
    REQUIRE(red.elements.size() == 2);

    // Expected: {x1 + 2t - 1, (2t - 1) x2 + 2}, both primitive with positive
    // leading coefficients.
    Polynomial x1 = pvar(toy.ring, toy.ord, "x1"), x2 = pvar(toy.ring, toy.ord, "x2"),
               t = pvar(toy.ring, toy.ord, "t");
    Polynomial g1 = x1 + t * Rat(2) - pc(toy.ring, toy.ord, 1);
    Polynomial g2 = (t * Rat(2) - pc(toy.ring, toy.ord, 1)) * x2 + pc(toy.ring, toy.ord, 2);
    bool direct = (red.elements[0] == g1 && red.elements[1] == g2) ||
                  (red.elements[0] == g2 && red.elements[1] == g1);
    CHECK(direct);
    CHECK(is_groebner(red));
}

TEST_CASE("toy bad set is exactly {2t - 1}") {
    ToySystem toy;
    GroebnerBasis red = reduce_basis(buchberger(toy.gens, toy.ord).basis);
    BadSet bad = extract_bad_set(red);
    REQUIRE(bad.polys.size() == 1);
    CHECK(bad.polys[0].str() == "2*t - 1");

    auto hit = avoids_bad_set({{"t", Rat(1, 2)}}, bad);
    CHECK(!hit.avoids);
    REQUIRE(hit.vanishing);
    CHECK(hit.vanishing->str() == "2*t - 1");
    CHECK(avoids_bad_set({{"t", Rat(0)}}, bad).avoids);
    CHECK_THROWS(avoids_bad_set({}, bad));
}

TEST_CASE("single generator is its own basis") {
    auto r = Ring::make({"x"});
    auto o = MonomialOrder::lex();
    Polynomial g = pvar(r, o, "x") - pc(r, o, 1);
    GroebnerResult gr = buchberger({g}, o);
    REQUIRE(gr.ok());
    GroebnerBasis red = reduce_basis(gr.basis);
    REQUIRE(red.elements.size() == 1);
    CHECK(red.elements[0] == g);
}

TEST_CASE("circle and line eliminate to the expected lex ideal") {
    auto r = Ring::make({"x", "y"});
    auto lex = MonomialOrder::lex();
    Polynomial x = pvar(r, lex, "x"), y = pvar(r, lex, "y");
    std::vector<Polynomial> gens = {x * x + y * y - pc(r, lex, 1), x - y};
    GroebnerResult gr = buchberger(gens, lex);
    REQUIRE(gr.ok());
    std::vector<Polynomial> expect = {x - y, y * y * Rat(2) - pc(r, lex, 1)};
    CHECK(same_ideal(gr.basis.elements, expect, lex));
    CHECK(is_groebner(reduce_basis(gr.basis)));
}

TEST_CASE("generators always reduce to zero modulo the computed basis") {
    std::mt19937_64 rng(97);
    auto r = Ring::make({"x", "y", "z"});
    for (auto ord : {MonomialOrder::lex(), MonomialOrder::grevlex()}) {
        for (int it = 0; it < 15; ++it) {
            std::vector<Polynomial> gens;
            for (int k = 0; k < 3; ++k) {
                Polynomial p = random_poly(r, rng, ord);
                if (!p.is_zero()) gens.push_back(p);
            }
            if (gens.empty()) continue;
            GroebnerResult gr = buchberger(gens, ord);
            REQUIRE(gr.ok());
            for (const auto& g : gens)
                CHECK(normal_form(g, gr.basis.elements, ord).is_zero());
            CHECK(is_groebner(gr.basis));
        }
    }
}

TEST_CASE("ideal membership is order-invariant") {
    std::mt19937_64 rng(101);
    auto r = Ring::make({"x", "y", "z"});
    auto lex = MonomialOrder::lex();
    auto grl = MonomialOrder::grevlex();
    for (int it = 0; it < 10; ++it) {
        std::vector<Polynomial> gens;
        for (int k = 0; k < 2; ++k) {
            Polynomial p = random_poly(r, rng, lex);
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        GroebnerResult glex = buchberger(gens, lex);
        GroebnerResult ggrl = buchberger(gens, grl);
        REQUIRE(glex.ok());
        REQUIRE(ggrl.ok());
        // random ideal combinations reduce to zero under both bases
        for (int k = 0; k < 5; ++k) {
            Polynomial combo = Polynomial::zero(r, lex);
            for (const auto& g : gens) combo += random_poly(r, rng, lex, 3, 1) * g;
            CHECK(normal_form(combo, glex.basis.elements, lex).is_zero());
            CHECK(normal_form(combo, ggrl.basis.elements, grl).is_zero());
        }
    }
}

TEST_CASE("reduce_basis: interreduction, idempotence, permutation stability") {
    auto r = Ring::make({"x", "y"});
    auto lex = MonomialOrder::lex();
    Polynomial x = pvar(r, lex, "x"), y = pvar(r, lex, "y");

    GroebnerResult gr = buchberger({x, x + y}, lex);
    REQUIRE(gr.ok());
    GroebnerBasis red = reduce_basis(gr.basis);
    REQUIRE(red.elements.size() == 2);
    CHECK(((red.elements[0] == x && red.elements[1] == y) ||
           (red.elements[0] == y && red.elements[1] == x)));

    GroebnerBasis red2 = reduce_basis(red);
    CHECK(red2.elements.size() == red.elements.size());
    for (std::size_t i = 0; i < red.elements.size(); ++i)
        CHECK(red2.elements[i] == red.elements[i]);

    // permuted generators give the identical reduced basis, term for term
    std::mt19937_64 rng(113);
    for (int it = 0; it < 10; ++it) {
        std::vector<Polynomial> gens;
        for (int k = 0; k < 3; ++k) {
            Polynomial p = random_poly(r, rng, lex, 3, 2);
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.size() < 2) continue;
        auto permuted = gens;
        std::reverse(permuted.begin(), permuted.end());
        GroebnerBasis a = reduce_basis(buchberger(gens, lex).basis);
        GroebnerBasis b = reduce_basis(buchberger(permuted, lex).basis);
        REQUIRE(a.elements.size() == b.elements.size());
        for (std::size_t i = 0; i < a.elements.size(); ++i)
            CHECK(a.elements[i] == b.elements[i]);
    }
}

TEST_CASE("specialization at bad-set-avoiding points stays a basis") {
    // The property imported from the literature: for parameters avoiding the
    // bad set, substituting them into the parametric basis yields a basis of
    // the specialized ideal.
    ToySystem toy;
    GroebnerBasis red = reduce_basis(buchberger(toy.gens, toy.ord).basis);
    BadSet bad = extract_bad_set(red);
    std::mt19937_64 rng(127);
    std::uniform_int_distribution<long> num(-20, 20);
    int tested = 0;
    while (tested < 12) {
        Rat tv(num(rng), 7);
        if (!avoids_bad_set({{"t", tv}}, bad).avoids) continue;
        ++tested;
        std::map<std::string, Rat> sub{{"t", tv}};
        std::vector<Polynomial> specialized;
        for (const auto& g : red.elements) {
            Polynomial s = g.evaluate(sub);
            if (!s.is_zero()) specialized.push_back(s);
        }
        GroebnerBasis sb{specialized.front().ring(), MonomialOrder::block(), specialized,
                         false};
        CHECK(is_groebner(sb));
        // and it generates the specialized ideal: instantiated generators
        // reduce to zero against it, and its elements reduce to zero against
        // a basis recomputed from the instantiated generators.
        std::vector<Polynomial> inst;
        for (const auto& g : toy.gens) inst.push_back(g.evaluate(sub));
        for (const auto& f : inst)
            CHECK(normal_form(f, specialized, MonomialOrder::block()).is_zero());
        GroebnerResult direct = buchberger(inst, MonomialOrder::block());
        REQUIRE(direct.ok());
        for (const auto& g : specialized)
            CHECK(normal_form(g, direct.basis.elements, MonomialOrder::block()).is_zero());
    }
}

TEST_CASE("resource limits produce explicit timeout results") {
    // cyclic-5 under lex is far beyond a 2-pair budget
    auto r = Ring::make({"a", "b", "c", "d", "e"});
    auto lex = MonomialOrder::lex();
    auto v = [&](const char* n) { return pvar(r, lex, n); };
    Polynomial a = v("a"), b = v("b"), c = v("c"), d = v("d"), e = v("e");
    std::vector<Polynomial> gens = {
        a + b + c + d + e,
        a * b + b * c + c * d + d * e + e * a,
        a * b * c + b * c * d + c * d * e + d * e * a + e * a * b,
        a * b * c * d + b * c * d * e + c * d * e * a + d * e * a * b + e * a * b * c,
        a * b * c * d * e - pc(r, lex, 1)};
    GroebnerLimits lim;
    lim.max_pairs = 2;
    GroebnerResult gr = buchberger(gens, lex, lim);
    CHECK(!gr.ok());
    CHECK(gr.status == GBStatus::PairLimit);
    CHECK(!gr.basis.elements.empty());  // partial state is carried
}

TEST_CASE("extract_bad_set rejects non-block bases") {
    auto r = Ring::make({"x", "t"}, 1);
    Polynomial x = pvar(r, MonomialOrder::lex(), "x");
    GroebnerBasis gb{r, MonomialOrder::lex(), {x}, false};
    CHECK_THROWS(extract_bad_set(gb));
}

TEST_CASE("bad set of a single mixed generator") {
    auto r = Ring::make({"x1", "t1", "t2"}, 1);
    auto o = MonomialOrder::block();
    Polynomial g = pvar(r, o, "x1") - pvar(r, o, "t1") * pvar(r, o, "t2");
    GroebnerResult gr = buchberger({g}, o);
    REQUIRE(gr.ok());
    BadSet bad = extract_bad_set(reduce_basis(gr.basis));
    REQUIRE(bad.polys.size() == 1);
    CHECK(bad.polys[0].str() == "t1*t2");
}
