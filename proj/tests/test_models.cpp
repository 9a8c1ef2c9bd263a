#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polyid/models.hpp"
#include "polyid/sysdsl.hpp"
#include "polyid/variety.hpp"

#include <random>

using namespace polyid;

namespace {

MixtureParams mk(std::vector<long> a, std::vector<long> b, Rat p1) {
    MixtureParams mp;
    for (long v : a) mp.a.push_back(Rat(v));
    for (long v : b) mp.b.push_back(Rat(v));
    mp.p1 = std::move(p1);
    return mp;
}

const std::vector<ModelKind> kAllKinds = {
    ModelKind::known(Model::BTL, Rat(7, 10)),  ModelKind::unknown(Model::BTL),
    ModelKind::known(Model::MNL3, Rat(3, 10)), ModelKind::unknown(Model::MNL3),
    ModelKind::known(Model::MNL23, Rat(7, 10)), ModelKind::unknown(Model::MNL23),
    ModelKind::known(Model::PL, Rat(7, 10)),   ModelKind::unknown(Model::PL),
};

}  // namespace

TEST_CASE("eta: equal components collapse the mixture") {
    auto kind = ModelKind::unknown(Model::BTL);
    MixtureParams mp = mk({1, 2, 5}, {1, 2, 5}, Rat(1, 3));
    EtaVector ev = eta(mp, kind);
    CHECK(ev.pairwise.at({1, 2}) == Rat(1, 3));  // a1/(a1+a2) = 1/3
    CHECK(ev.pairwise.at({3, 1}) == Rat(5, 6));
}

TEST_CASE("eta: hand-computed BTL mixture value") {
    MixtureParams mp = mk({1, 2}, {1, 8}, Rat(1, 2));
    EtaVector ev = eta(mp, ModelKind::unknown(Model::BTL));
    CHECK(ev.pairwise.at({1, 2}) == Rat(2, 9));  // (1/2)(1/3) + (1/2)(1/9)
}

TEST_CASE("eta invariants hold at random draws for all kinds") {
    std::mt19937_64 rng(2026);
    for (const auto& kind : kAllKinds) {
        int n = min_items(kind);
        for (int draw = 0; draw < 25; ++draw) {
            MixtureParams mp = random_params(kind, n, rng);
            EtaVector ev = eta(mp, kind);
            for (const auto& [key, v] : ev.pairwise) {
                CHECK(Rat(0) < v);
                CHECK(v < Rat(1));
                CHECK(v + ev.pairwise.at({key.second, key.first}) == Rat(1));
            }
            for (const auto& [key, v] : ev.triplet) {
                auto [i, j, k] = key;
                CHECK(Rat(0) < v);
                CHECK(v < Rat(1));
                auto other = [&](int c, int u, int w) {
                    return ev.triplet.at({c, std::min(u, w), std::max(u, w)});
                };
                CHECK(v + other(j, i, k) + other(k, i, j) == Rat(1));
            }
            if (!ev.listwise.empty()) {
                Rat sum(0);
                for (const auto& [sigma, v] : ev.listwise) {
                    CHECK(Rat(0) < v);
                    sum += v;
                }
                CHECK(sum == Rat(1));
            }
        }
    }
}

TEST_CASE("eta: scaling invariance for BTL and MNL") {
    std::mt19937_64 rng(77);
    auto kind = ModelKind::unknown(Model::MNL23);
    for (int draw = 0; draw < 20; ++draw) {
        MixtureParams mp = random_params(kind, 4, rng);
        EtaVector base = eta(mp, kind);
        MixtureParams scaled = mp;
        Rat ca = random_positive_rational(rng), cb = random_positive_rational(rng);
        for (auto& v : scaled.a) v *= ca;
        for (auto& v : scaled.b) v *= cb;
        CHECK(eta(scaled, kind) == base);
    }
}

TEST_CASE("eta: swap symmetry for unknown-p kinds") {
    std::mt19937_64 rng(78);
    for (const auto& kind : kAllKinds) {
        if (kind.known_p) continue;
        MixtureParams mp = random_params(kind, min_items(kind), rng);
        MixtureParams swapped = mp;
        std::swap(swapped.a, swapped.b);
        swapped.p1 = Rat(1) - mp.p1;
        CHECK(eta(swapped, kind) == eta(mp, kind));
    }
}

TEST_CASE("PL top-two marginals agree with the listwise sums") {
    std::mt19937_64 rng(79);
    auto kind = ModelKind::unknown(Model::PL);
    const int n = 4;
    for (int draw = 0; draw < 10; ++draw) {
        MixtureParams mp = random_params(kind, n, rng);
        EtaVector ev = eta(mp, kind);
        for (int r = 1; r <= n; ++r) {
            for (int i = 1; i <= n; ++i) {
                if (i == r) continue;
                Rat marginal(0);
                for (const auto& [sigma, v] : ev.listwise)
                    if (sigma[0] == r && sigma[1] == i) marginal += v;
                Rat closed = mp.p1 * pl_top_two(mp.a, r, i) +
                             (Rat(1) - mp.p1) * pl_top_two(mp.b, r, i);
                CHECK(marginal == closed);
            }
        }
    }
}

TEST_CASE("non-identifiable family: identical probabilities, distinct parameters") {
    for (int n : {3, 5, 8}) {
        for (Rat t : {Rat(2), Rat(3), Rat(7, 2)}) {
            auto [p, q] = nonidentifiable_family(n, t);
            CHECK(p.a != q.a);
            auto kind = ModelKind::unknown(Model::BTL);
            CHECK(eta(p, kind) == eta(q, kind));
        }
    }
    CHECK_THROWS(nonidentifiable_family(3, Rat(1)));
    CHECK_THROWS(nonidentifiable_family(2, Rat(2)));
    CHECK_THROWS(nonidentifiable_family(3, Rat(-2)));
}

TEST_CASE("build_parametric: structure of the published subsets") {
    // BTL unknown-p n=5 keeps exactly three auxiliary equations
    ParametricSystem btl = build_parametric(ModelKind::unknown(Model::BTL), 5);
    CHECK(btl.expected_count == 2);
    CHECK(btl.ring->index_of("t23"));
    CHECK(btl.ring->index_of("h15"));
    CHECK(btl.ring->index_of("h23"));
    CHECK(!btl.ring->index_of("t12"));
    // generators: x1-1, y1-1, a1-1, b1-1, 10 pairs, 3 aux
    CHECK(btl.generators.size() == 4 + 10 + 3);

    ParametricSystem mnl3 = build_parametric(ModelKind::unknown(Model::MNL3), 4);
    CHECK(mnl3.generators.size() == 4 + 8 + 4);
    ParametricSystem pl = build_parametric(ModelKind::unknown(Model::PL), 4);
    CHECK(pl.generators.size() == 11 + 8);
    ParametricSystem plk = build_parametric(ModelKind::known(Model::PL, Rat(7, 10)), 4);
    CHECK(plk.generators.size() == 9 + 8);
    ParametricSystem m23 = build_parametric(ModelKind::known(Model::MNL23, Rat(7, 10)), 3);
    CHECK(m23.generators.size() == 4 + 3 + 2);

    CHECK_THROWS(build_parametric(ModelKind::known(Model::BTL, Rat(7, 10)), 4));
    CHECK_THROWS(build_parametric(ModelKind::unknown(Model::PL), 3));
    CHECK_THROWS(build_parametric(ModelKind::known(Model::BTL, Rat(1, 2)), 5));
}

TEST_CASE("template soundness: every template solves every generator exactly") {
    std::mt19937_64 rng(5150);
    for (const auto& kind : kAllKinds) {
        int n = min_items(kind);
        ParametricSystem sys = build_parametric(kind, n);
        int verified = 0;
        int guard = 0;
        while (verified < 12 && guard < 200) {
            ++guard;
            MixtureParams mp = random_params(kind, n, rng);
            KnownSolutions ks = known_solutions(kind, mp);
            if (ks.degeneracy) continue;
            CHECK(ks.solutions.size() == sys.expected_count);
            auto inst = sys.instantiate(parameter_assignment(kind, mp),
                                        MonomialOrder::grevlex());
            for (const auto& sol : ks.solutions)
                CHECK(verify_exact_solution(inst, sol));
            ++verified;
        }
        CHECK(verified == 12);
    }
}

TEST_CASE("known_solutions: counts, swap pair, degeneracy reports") {
    auto witness = suite_witness(ModelKind::unknown(Model::BTL));
    KnownSolutions ks = known_solutions(ModelKind::unknown(Model::BTL), witness);
    REQUIRE(!ks.degeneracy);
    CHECK(ks.solutions.size() == 2);
    CHECK(ks.solutions[0].at("x2") == Rat(2));
    CHECK(ks.solutions[1].at("x2") == Rat(8));  // component swap
    CHECK(ks.solutions[1].at("p") == Rat(7, 10));

    auto kb = ModelKind::known(Model::BTL, Rat(7, 10));
    KnownSolutions k3 = known_solutions(kb, suite_witness(kb));
    REQUIRE(!k3.degeneracy);
    CHECK(k3.solutions.size() == 3);

    MixtureParams half = witness;
    half.p1 = Rat(1, 2);
    KnownSolutions kd = known_solutions(ModelKind::unknown(Model::BTL), half);
    CHECK(kd.degeneracy);
}

TEST_CASE("instantiated BTL generators match the published instantiated listing") {
    // The published instantiated system (witness a=(1,2,3,4,5), b=(1,8,9,3,2))
    // writes each pair equation as
    //   (ai*bi + w2*aj*bi + w1*ai*bj)(xi+xj)(yi+yj)
    //     - (ai+aj)(bi+bj)(w2*(xi+xj)*yi + w1*xi*(yi+yj))
    // with (w1, w2) = (3/10, 7/10); that is the faithful clearing with the
    // component-1 weight w1 = 3/10.
    auto kind = ModelKind::known(Model::BTL, Rat(3, 10));
    MixtureParams mp = mk({1, 2, 3, 4, 5}, {1, 8, 9, 3, 2}, Rat(3, 10));
    auto inst = build_instantiated(kind, 5, mp, MonomialOrder::grevlex());
    REQUIRE(inst.size() == 12);

    const long a[6] = {0, 1, 2, 3, 4, 5};
    const long b[6] = {0, 1, 8, 9, 3, 2};
    auto listing_eq = [&](int i, int j) {
        std::ostringstream os;
        os << "system: row\nparams:\nvars: x1 x2 x3 x4 x5 y1 y2 y3 y4 y5\n";
        os << "eq: (" << a[i] << "*" << b[i] << " + 7/10*" << a[j] << "*" << b[i]
           << " + 3/10*" << a[i] << "*" << b[j] << ")*(x" << i << " + x" << j << ")*(y" << i
           << " + y" << j << ") + (" << a[i] << " + " << a[j] << ")*(" << b[i] << " + "
           << b[j] << ")*(-(7/10)*(x" << i << " + x" << j << ")*y" << i << " - (3/10)*x"
           << i << "*(y" << i << " + y" << j << "))\n";
        auto parsed = parse_system(os.str());
        REQUIRE(std::holds_alternative<SystemFile>(parsed));
        ParametricSystem ps = to_parametric_system(std::get<SystemFile>(parsed));
        return ps.generators[0];
    };
    // pair (i,j) generator sits after x1-1, y1-1 in row-major order
    auto pair_index = [&](int i, int j) {
        int idx = 2;
        for (int u = 1; u <= 5; ++u)
            for (int v = u + 1; v <= 5; ++v) {
                if (u == i && v == j) return idx;
                ++idx;
            }
        return -1;
    };
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {2, 5}, {4, 5}}) {
        Polynomial mine = inst[pair_index(i, j)];
        Polynomial listed = listing_eq(i, j);
        // same ring layout: compare via rendering in a common order
        CHECK(mine.with_order(MonomialOrder::grevlex()).str() ==
              listed.with_order(MonomialOrder::grevlex()).str());
    }
}

TEST_CASE("induction step: unique extension equals ground truth") {
    std::mt19937_64 rng(616);
    struct Case {
        ModelKind kind;
        bool swapped;
    };
    std::vector<Case> cases = {
        {ModelKind::known(Model::BTL, Rat(7, 10)), false},
        {ModelKind::known(Model::MNL3, Rat(3, 10)), false},
        {ModelKind::known(Model::MNL23, Rat(7, 10)), false},
        {ModelKind::known(Model::PL, Rat(7, 10)), false},
        {ModelKind::unknown(Model::PL), true},
    };
    for (const auto& c : cases) {
        int n = min_items(c.kind) + 1;
        for (int it = 0; it < 20; ++it) {
            MixtureParams mp = random_params(c.kind, n, rng);
            InductionStep st = induction_step_matrix(c.kind, mp, c.swapped);
            // consistency of the displayed system with the ground truth
            CHECK(st.A[0][0] * st.truth[0] + st.A[0][1] * st.truth[1] == st.rhs[0]);
            CHECK(st.A[1][0] * st.truth[0] + st.A[1][1] * st.truth[1] == st.rhs[1]);
            REQUIRE(!st.degenerate);
            Rat x = (st.rhs[0] * st.A[1][1] - st.rhs[1] * st.A[0][1]) / st.det;
            Rat y = (st.A[0][0] * st.rhs[1] - st.A[1][0] * st.rhs[0]) / st.det;
            CHECK(x == st.truth[0]);
            CHECK(y == st.truth[1]);
            if (c.swapped) {
                CHECK(x == mp.b[n - 1]);
                CHECK(y == mp.a[n - 1]);
            }
        }
    }
}

TEST_CASE("induction step: equal components degenerate the PL matrix") {
    auto kind = ModelKind::unknown(Model::PL);
    MixtureParams mp;
    mp.a = {Rat(1, 10), Rat(2, 10), Rat(3, 10), Rat(1, 10), Rat(3, 10)};
    mp.b = mp.a;
    mp.p1 = Rat(1, 2);
    InductionStep st = induction_step_matrix(kind, mp, false);
    CHECK(st.degenerate);  // c_k = d_k when a = b and p1 = 1/2
}

TEST_CASE("suite witnesses satisfy the domain constraints") {
    for (const auto& kind : kAllKinds) {
        MixtureParams mp = suite_witness(kind);
        CHECK_NOTHROW(validate_params(mp, kind));
    }
}
