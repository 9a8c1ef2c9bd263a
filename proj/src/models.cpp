#include "polyid/models.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polyid {

namespace {

std::string istr(int i) { return std::to_string(i); }
std::string vn(const char* base, int i) { return std::string(base) + istr(i); }

std::string aux2(const char* base, int i, int j) {
    if (i < 10 && j < 10) return std::string(base) + istr(i) + istr(j);
    return std::string(base) + istr(i) + "_" + istr(j);
}
std::string aux3(const char* base, int i, int j, int k) {
    if (i < 10 && j < 10 && k < 10)
        return std::string(base) + istr(i) + istr(j) + istr(k);
    return std::string(base) + istr(i) + "_" + istr(j) + "_" + istr(k);
}

struct Ctx {
    RingPtr ring;
    MonomialOrder ord;
    Polynomial v(const std::string& name) const {
        return Polynomial::variable(ring, ord, name);
    }
    Polynomial c(Rat r) const { return Polynomial::constant(ring, ord, std::move(r)); }
    Polynomial one() const { return c(Rat(1)); }
};

MixtureParams params_from_assignment(const ModelKind& kind, int n,
                                     const std::map<std::string, Rat>& t) {
    MixtureParams mp;
    for (int i = 1; i <= n; ++i) {
        mp.a.push_back(t.at(vn("a", i)));
        mp.b.push_back(t.at(vn("b", i)));
    }
    mp.p1 = kind.known_p ? kind.p1 : t.at("p1");
    return mp;
}

Rat eta_pair(const MixtureParams& mp, int i, int j) {
    const Rat& p1 = mp.p1;
    Rat p2 = Rat(1) - p1;
    const auto& a = mp.a;
    const auto& b = mp.b;
    return p1 * a[i - 1] / (a[i - 1] + a[j - 1]) + p2 * b[i - 1] / (b[i - 1] + b[j - 1]);
}

Rat eta_triplet(const MixtureParams& mp, int i, int j, int k) {
    const Rat& p1 = mp.p1;
    Rat p2 = Rat(1) - p1;
    const auto& a = mp.a;
    const auto& b = mp.b;
    return p1 * a[i - 1] / (a[i - 1] + a[j - 1] + a[k - 1]) +
           p2 * b[i - 1] / (b[i - 1] + b[j - 1] + b[k - 1]);
}

}  // namespace

std::string model_name(Model m) {
    switch (m) {
        case Model::BTL: return "btl";
        case Model::MNL3: return "mnl3";
        case Model::MNL23: return "mnl23";
        case Model::PL: return "pl";
    }
    return "?";
}

std::optional<Model> model_from_name(const std::string& s) {
    if (s == "btl") return Model::BTL;
    if (s == "mnl3") return Model::MNL3;
    if (s == "mnl23") return Model::MNL23;
    if (s == "pl") return Model::PL;
    return std::nullopt;
}

std::string ModelKind::str() const {
    if (known_p) return model_name(model) + "[p1=" + p1.str() + "]";
    return model_name(model) + "[p unknown]";
}

int min_items(const ModelKind& kind) {
    switch (kind.model) {
        case Model::BTL: return 5;
        case Model::MNL3: return 4;
        case Model::MNL23: return kind.known_p ? 3 : 4;
        case Model::PL: return kind.known_p ? 3 : 4;
    }
    return 0;
}

bool positive_scores(const MixtureParams& mp) {
    if (mp.a.size() != mp.b.size() || mp.a.empty()) return false;
    for (const auto& x : mp.a)
        if (x.sign() <= 0) return false;
    for (const auto& x : mp.b)
        if (x.sign() <= 0) return false;
    return true;
}

void validate_params(const MixtureParams& mp, const ModelKind& kind) {
    if (!positive_scores(mp)) throw std::invalid_argument("params: scores must be positive");
    if (!(Rat(0) < mp.p1 && mp.p1 < Rat(1)))
        throw std::invalid_argument("params: p1 must lie in (0,1)");
    if (kind.known_p && mp.p1 != kind.p1)
        throw std::invalid_argument("params: p1 differs from the model's fixed p1");
    if (kind.model == Model::PL) {
        Rat sa(0), sb(0);
        for (const auto& x : mp.a) sa += x;
        for (const auto& x : mp.b) sb += x;
        if (sa != Rat(1) || sb != Rat(1))
            throw std::invalid_argument("params: PL scores must sum to 1");
    } else {
        if (!mp.a[0].is_one() || !mp.b[0].is_one())
            throw std::invalid_argument("params: scores must be normalized with a1 = b1 = 1");
    }
}

Rat pl_ranking_probability(const std::vector<Rat>& theta, const std::vector<int>& sigma) {
    Rat prob(1);
    Rat tail(0);
    for (int id : sigma) tail += theta[id - 1];
    for (std::size_t i = 0; i + 1 < sigma.size(); ++i) {
        prob *= theta[sigma[i] - 1] / tail;
        tail -= theta[sigma[i] - 1];
    }
    return prob;
}

Rat pl_top_two(const std::vector<Rat>& theta, int r, int i) {
    return theta[r - 1] * theta[i - 1] / (Rat(1) - theta[r - 1]);
}

EtaVector eta(const MixtureParams& mp, const ModelKind& kind) {
    if (!positive_scores(mp)) throw std::invalid_argument("eta: scores must be positive");
    if (!(Rat(0) < mp.p1 && mp.p1 < Rat(1)))
        throw std::invalid_argument("eta: p1 must lie in (0,1)");
    const int n = mp.n();
    EtaVector ev;
    const bool pairs = kind.model == Model::BTL || kind.model == Model::MNL23;
    const bool trips = kind.model == Model::MNL3 || kind.model == Model::MNL23;
    if (pairs) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                if (i != j) ev.pairwise[{i, j}] = eta_pair(mp, i, j);
    }
    if (trips) {
        if (n < 3) throw std::invalid_argument("eta: triplet probabilities need n >= 3");
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k)
                    if (j != i && k != i)
                        ev.triplet[{i, j, k}] = eta_triplet(mp, i, j, k);
    }
    if (kind.model == Model::PL) {
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 1);
        Rat p2 = Rat(1) - mp.p1;
        do {
            ev.listwise[sigma] = mp.p1 * pl_ranking_probability(mp.a, sigma) +
                                 p2 * pl_ranking_probability(mp.b, sigma);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return ev;
}

std::map<std::string, Rat> parameter_assignment(const ModelKind& kind,
                                                const MixtureParams& mp) {
    std::map<std::string, Rat> t;
    for (int i = 1; i <= mp.n(); ++i) {
        t[vn("a", i)] = mp.a[i - 1];
        t[vn("b", i)] = mp.b[i - 1];
    }
    if (!kind.known_p) t["p1"] = mp.p1;
    return t;
}

std::vector<Polynomial> ParametricSystem::instantiate(
    const std::map<std::string, Rat>& witness, MonomialOrder inst_ord) const {
    std::vector<Polynomial> out;
    for (const auto& g : generators) {
        Polynomial inst = g.evaluate(witness);
        if (inst.is_zero()) continue;
        out.push_back(inst.order() == inst_ord ? inst : inst.with_order(inst_ord));
    }
    return out;
}

namespace {

// ---- ring layouts ---------------------------------------------------------

std::vector<std::string> x_block_names(const ModelKind& kind, int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(vn("x", i));
    for (int i = 1; i <= n; ++i) names.push_back(vn("y", i));
    if (!kind.known_p) names.push_back("p");
    switch (kind.model) {
        case Model::BTL:
            if (!kind.known_p) {
                if (n == 5) {
                    names.push_back("t23");
                    names.push_back("h15");
                    names.push_back("h23");
                } else {
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j) names.push_back(aux2("t", i, j));
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j) names.push_back(aux2("h", i, j));
                }
            }
            break;
        case Model::MNL3:
            if (!kind.known_p) {
                if (n == 4) {
                    names.push_back("t123");
                    names.push_back("t124");
                    names.push_back("h123");
                    names.push_back("h124");
                } else {
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j)
                            for (int k = j + 1; k <= n; ++k)
                                names.push_back(aux3("t", i, j, k));
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j)
                            for (int k = j + 1; k <= n; ++k)
                                names.push_back(aux3("h", i, j, k));
                }
            }
            break;
        case Model::MNL23:
            break;  // no auxiliaries
        case Model::PL:
            for (int i = 1; i <= n; ++i) names.push_back(vn("t", i));
            for (int i = 1; i <= n; ++i) names.push_back(vn("h", i));
            break;
    }
    return names;
}

std::vector<std::string> t_block_names(const ModelKind& kind, int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(vn("a", i));
    for (int i = 1; i <= n; ++i) names.push_back(vn("b", i));
    if (!kind.known_p) names.push_back("p1");
    return names;
}

// ---- generators -----------------------------------------------------------

void btl_generators(const ModelKind& kind, int n, const Ctx& c,
                    std::vector<Polynomial>& gens) {
    auto X = [&](int i) { return c.v(vn("x", i)); };
    auto Y = [&](int i) { return c.v(vn("y", i)); };
    auto A = [&](int i) { return c.v(vn("a", i)); };
    auto B = [&](int i) { return c.v(vn("b", i)); };

    gens.push_back(X(1) - c.one());
    gens.push_back(Y(1) - c.one());
    gens.push_back(A(1) - c.one());
    gens.push_back(B(1) - c.one());

    if (kind.known_p) {
        Polynomial w1 = c.c(kind.p1);
        Polynomial w2 = c.c(Rat(1) - kind.p1);
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                Polynomial N = w1 * A(i) * (B(i) + B(j)) + w2 * B(i) * (A(i) + A(j));
                Polynomial D = (A(i) + A(j)) * (B(i) + B(j));
                gens.push_back(N * (X(i) + X(j)) * (Y(i) + Y(j)) -
                               D * (w1 * X(i) * (Y(i) + Y(j)) + w2 * Y(i) * (X(i) + X(j))));
            }
        }
    } else {
        Polynomial P = c.v("p");
        Polynomial P1 = c.v("p1");
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                Polynomial C = P1 * A(i) * (B(i) + B(j)) +
                               (c.one() - P1) * B(i) * (A(i) + A(j));
                Polynomial D = (A(i) + A(j)) * (B(i) + B(j));
                gens.push_back((C - D) * X(i) * Y(i) + (C - P * D) * X(i) * Y(j) +
                               (C - (c.one() - P) * D) * X(j) * Y(i) + C * X(j) * Y(j));
            }
        }
        if (n == 5) {
            gens.push_back(c.v("t23") * (X(2) + X(3)) - c.one());
            gens.push_back(c.v("h15") * (Y(1) + Y(5)) - c.one());
            gens.push_back(c.v("h23") * (Y(2) + Y(3)) - c.one());
        } else {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    gens.push_back(c.v(aux2("t", i, j)) * (X(i) + X(j)) - c.one());
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    gens.push_back(c.v(aux2("h", i, j)) * (Y(i) + Y(j)) - c.one());
        }
    }
}

void mnl3_generators(const ModelKind& kind, int n, const Ctx& c,
                     std::vector<Polynomial>& gens) {
    auto X = [&](int i) { return c.v(vn("x", i)); };
    auto Y = [&](int i) { return c.v(vn("y", i)); };
    auto A = [&](int i) { return c.v(vn("a", i)); };
    auto B = [&](int i) { return c.v(vn("b", i)); };

    gens.push_back(X(1) - c.one());
    gens.push_back(Y(1) - c.one());
    gens.push_back(A(1) - c.one());
    gens.push_back(B(1) - c.one());

    Polynomial wx = kind.known_p ? c.c(kind.p1) : c.v("p");
    Polynomial wy = c.one() - wx;
    Polynomial wa = kind.known_p ? c.c(kind.p1) : c.v("p1");
    Polynomial wb = c.one() - wa;

    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                Polynomial SX = X(i) + X(j) + X(k);
                Polynomial SY = Y(i) + Y(j) + Y(k);
                Polynomial SA = A(i) + A(j) + A(k);
                Polynomial SB = B(i) + B(j) + B(k);
                for (int r : {i, j}) {
                    gens.push_back((wx * X(r) * SY + wy * Y(r) * SX) * SB * SA -
                                   (wa * A(r) * SB + wb * B(r) * SA) * SX * SY);
                }
            }
        }
    }
    if (!kind.known_p) {
        if (n == 4) {
            gens.push_back((X(1) + X(2) + X(3)) * c.v("t123") - c.one());
            gens.push_back((X(1) + X(2) + X(4)) * c.v("t124") - c.one());
            gens.push_back((Y(1) + Y(2) + Y(3)) * c.v("h123") - c.one());
            gens.push_back((Y(1) + Y(2) + Y(4)) * c.v("h124") - c.one());
        } else {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k)
                        gens.push_back((X(i) + X(j) + X(k)) * c.v(aux3("t", i, j, k)) -
                                       c.one());
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int k = j + 1; k <= n; ++k)
                        gens.push_back((Y(i) + Y(j) + Y(k)) * c.v(aux3("h", i, j, k)) -
                                       c.one());
        }
    }
}

void mnl23_generators(const ModelKind& kind, int n, const Ctx& c,
                      std::vector<Polynomial>& gens) {
    auto X = [&](int i) { return c.v(vn("x", i)); };
    auto Y = [&](int i) { return c.v(vn("y", i)); };
    auto A = [&](int i) { return c.v(vn("a", i)); };
    auto B = [&](int i) { return c.v(vn("b", i)); };

    gens.push_back(X(1) - c.one());
    gens.push_back(Y(1) - c.one());
    gens.push_back(A(1) - c.one());
    gens.push_back(B(1) - c.one());

    Polynomial wx = kind.known_p ? c.c(kind.p1) : c.v("p");
    Polynomial wy = c.one() - wx;
    Polynomial wa = kind.known_p ? c.c(kind.p1) : c.v("p1");
    Polynomial wb = c.one() - wa;

    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            Polynomial DX = X(i) + X(j);
            Polynomial DY = Y(i) + Y(j);
            Polynomial DA = A(i) + A(j);
            Polynomial DB = B(i) + B(j);
            gens.push_back(DA * DB * (wx * X(i) * DY + wy * Y(i) * DX) -
                           (wa * A(i) * DB + wb * B(i) * DA) * DX * DY);
        }
    }
    // Triplet rows: all slates with the two smallest slate members as
    // choosers in the known case; the (1,2,k) slates in the unknown case.
    auto triplet_row = [&](int i, int j, int k, int r) {
        Polynomial SX = X(i) + X(j) + X(k);
        Polynomial SY = Y(i) + Y(j) + Y(k);
        Polynomial SA = A(i) + A(j) + A(k);
        Polynomial SB = B(i) + B(j) + B(k);
        gens.push_back(SA * SB * (wx * X(r) * SY + wy * Y(r) * SX) -
                       (wa * A(r) * SB + wb * B(r) * SA) * SX * SY);
    };
    if (kind.known_p) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k)
                    for (int r : {i, j}) triplet_row(i, j, k, r);
    } else {
        for (int k = 3; k <= n; ++k)
            for (int r : {1, 2}) triplet_row(1, 2, k, r);
    }
}

void pl_generators(const ModelKind& kind, int n, const Ctx& c,
                   std::vector<Polynomial>& gens) {
    auto X = [&](int i) { return c.v(vn("x", i)); };
    auto Y = [&](int i) { return c.v(vn("y", i)); };
    auto A = [&](int i) { return c.v(vn("a", i)); };
    auto B = [&](int i) { return c.v(vn("b", i)); };

    Polynomial wx = kind.known_p ? c.c(kind.p1) : c.v("p");
    Polynomial wy = c.one() - wx;
    Polynomial wa = kind.known_p ? c.c(kind.p1) : c.v("p1");
    Polynomial wb = c.one() - wa;

    auto row = [&](int r, int i) {
        gens.push_back(
            (wa * A(r) * A(i) * (c.one() - B(r)) + wb * B(r) * B(i) * (c.one() - A(r))) *
                (c.one() - X(r)) * (c.one() - Y(r)) -
            (c.one() - A(r)) * (c.one() - B(r)) *
                (wx * X(r) * X(i) * (c.one() - Y(r)) +
                 wy * Y(r) * Y(i) * (c.one() - X(r))));
    };
    const int top = std::min(3, n);
    for (int r = 1; r <= top; ++r)
        for (int i = 1; i <= n; ++i)
            if (i != r) row(r, i);
    if (!kind.known_p) {
        for (int i : {1, 2}) row(4, i);
    }
    for (int i = 1; i <= n; ++i)
        gens.push_back(c.v(vn("t", i)) * (c.one() - X(i)) - c.one());
    for (int i = 1; i <= n; ++i)
        gens.push_back(c.v(vn("h", i)) * (c.one() - Y(i)) - c.one());
}

// ---- solution templates ----------------------------------------------------

using Assignment = std::map<std::string, Rat>;

std::optional<Rat> safe_div(const Rat& num, const Rat& den) {
    if (den.is_zero()) return std::nullopt;
    return num / den;
}

// Fills x_i, y_i from score vectors; returns false on nothing (never fails).
void put_scores(Assignment& out, const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[vn("x", int(i) + 1)] = xs[i];
    for (std::size_t i = 0; i < ys.size(); ++i) out[vn("y", int(i) + 1)] = ys[i];
}

std::vector<NamedTemplate> make_templates(const ModelKind& kind, int n) {
    std::vector<NamedTemplate> ts;
    auto from_assignment = [kind, n](const Assignment& t) {
        return params_from_assignment(kind, n, t);
    };

    auto aux_pair_sums = [n](Assignment& out, const ModelKind& kind2,
                             const std::vector<Rat>& xs,
                             const std::vector<Rat>& ys) -> bool {
        // BTL unknown-p auxiliaries.
        auto inv_sum = [](const std::vector<Rat>& v, int i, int j) -> std::optional<Rat> {
            return safe_div(Rat(1), v[i - 1] + v[j - 1]);
        };
        if (kind2.model != Model::BTL || kind2.known_p) return true;
        if (n == 5) {
            auto t23 = inv_sum(xs, 2, 3);
            auto h15 = inv_sum(ys, 1, 5);
            auto h23 = inv_sum(ys, 2, 3);
            if (!t23 || !h15 || !h23) return false;
            out["t23"] = *t23;
            out["h15"] = *h15;
            out["h23"] = *h23;
            return true;
        }
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                auto tij = inv_sum(xs, i, j);
                auto hij = inv_sum(ys, i, j);
                if (!tij || !hij) return false;
                out[aux2("t", i, j)] = *tij;
                out[aux2("h", i, j)] = *hij;
            }
        return true;
    };

    auto aux_triplet_sums = [n](Assignment& out, const ModelKind& kind2,
                                const std::vector<Rat>& xs,
                                const std::vector<Rat>& ys) -> bool {
        if (kind2.model != Model::MNL3 || kind2.known_p) return true;
        auto inv3 = [](const std::vector<Rat>& v, int i, int j, int k) {
            return safe_div(Rat(1), v[i - 1] + v[j - 1] + v[k - 1]);
        };
        auto put = [&](int i, int j, int k) -> bool {
            auto t = inv3(xs, i, j, k);
            auto h = inv3(ys, i, j, k);
            if (!t || !h) return false;
            out[aux3("t", i, j, k)] = *t;
            out[aux3("h", i, j, k)] = *h;
            return true;
        };
        if (n == 4) return put(1, 2, 3) && put(1, 2, 4);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k)
                    if (!put(i, j, k)) return false;
        return true;
    };

    auto aux_pl = [n](Assignment& out, const ModelKind& kind2, const std::vector<Rat>& xs,
                      const std::vector<Rat>& ys) -> bool {
        if (kind2.model != Model::PL) return true;
        for (int i = 1; i <= n; ++i) {
            auto t = safe_div(Rat(1), Rat(1) - xs[i - 1]);
            auto h = safe_div(Rat(1), Rat(1) - ys[i - 1]);
            if (!t || !h) return false;
            out[vn("t", i)] = *t;
            out[vn("h", i)] = *h;
        }
        return true;
    };

    auto full_assignment = [=](const ModelKind& kind2, const std::vector<Rat>& xs,
                               const std::vector<Rat>& ys,
                               std::optional<Rat> p) -> std::optional<Assignment> {
        Assignment out;
        put_scores(out, xs, ys);
        if (p) out["p"] = *p;
        if (!aux_pair_sums(out, kind2, xs, ys)) return std::nullopt;
        if (!aux_triplet_sums(out, kind2, xs, ys)) return std::nullopt;
        if (!aux_pl(out, kind2, xs, ys)) return std::nullopt;
        return out;
    };

    // Identity solution: always present.
    ts.push_back({"identity", [=](const Assignment& t) -> std::optional<Assignment> {
                      MixtureParams mp = from_assignment(t);
                      std::optional<Rat> p;
                      if (!kind.known_p) p = mp.p1;
                      return full_assignment(kind, mp.a, mp.b, p);
                  }});

    const bool swap_template =
        !kind.known_p || (kind.known_p && kind.p1 == Rat(1, 2) && kind.model != Model::BTL);
    if (swap_template) {
        ts.push_back({"component_swap",
                      [=](const Assignment& t) -> std::optional<Assignment> {
                          MixtureParams mp = from_assignment(t);
                          std::optional<Rat> p;
                          if (!kind.known_p) p = Rat(1) - mp.p1;
                          return full_assignment(kind, mp.b, mp.a, p);
                      }});
    }

    if (kind.model == Model::BTL && kind.known_p) {
        // Relaxation solutions: a zeroed component with the other component
        // carrying (1 - eta_1j) / (eta_1j - w).
        auto spurious = [=](bool zero_x) {
            return [=](const Assignment& t) -> std::optional<Assignment> {
                MixtureParams mp = from_assignment(t);
                Rat w = zero_x ? kind.p1 : Rat(1) - kind.p1;
                std::vector<Rat> zeroed(n, Rat(0));
                zeroed[0] = zero_x ? mp.a[0] : mp.b[0];
                std::vector<Rat> other(n, Rat(0));
                other[0] = zero_x ? mp.b[0] : mp.a[0];
                for (int j = 2; j <= n; ++j) {
                    Rat e = eta_pair(mp, 1, j);
                    auto val = safe_div(Rat(1) - e, e - w);
                    if (!val) return std::nullopt;
                    other[j - 1] = *val;
                }
                if (zero_x) return full_assignment(kind, zeroed, other, std::nullopt);
                return full_assignment(kind, other, zeroed, std::nullopt);
            };
        };
        ts.push_back({"relaxation_x_zero", spurious(true)});
        ts.push_back({"relaxation_y_zero", spurious(false)});
    }
    return ts;
}

unsigned expected_count_for(const ModelKind& kind) {
    if (!kind.known_p) return 2;
    if (kind.model == Model::BTL) return 3;  // denominator-cleared relaxation
    return kind.p1 == Rat(1, 2) ? 2u : 1u;
}

}  // namespace

Rat random_positive_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(1, 1000);
    return Rat(d(rng), d(rng));
}

Rat random_unit_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> den(2, 1000);
    long q = den(rng);
    std::uniform_int_distribution<long> num(1, q - 1);
    return Rat(num(rng), q);
}

MixtureParams random_params(const ModelKind& kind, int n, std::mt19937_64& rng) {
    MixtureParams mp;
    mp.a.resize(n);
    mp.b.resize(n);
    if (kind.model == Model::PL) {
        Rat sa(0), sb(0);
        for (int i = 0; i < n; ++i) {
            mp.a[i] = random_positive_rational(rng);
            mp.b[i] = random_positive_rational(rng);
            sa += mp.a[i];
            sb += mp.b[i];
        }
        for (int i = 0; i < n; ++i) {
            mp.a[i] /= sa;
            mp.b[i] /= sb;
        }
    } else {
        mp.a[0] = Rat(1);
        mp.b[0] = Rat(1);
        for (int i = 1; i < n; ++i) {
            mp.a[i] = random_positive_rational(rng);
            mp.b[i] = random_positive_rational(rng);
        }
    }
    mp.p1 = kind.known_p ? kind.p1 : random_unit_rational(rng);
    return mp;
}

ParametricSystem build_parametric(const ModelKind& kind, int n) {
    if (n < min_items(kind))
        throw std::invalid_argument(kind.str() + " requires at least " +
                                    std::to_string(min_items(kind)) +
                                    " items for the identifiability analysis");
    if (kind.known_p && !(Rat(0) < kind.p1 && kind.p1 < Rat(1)))
        throw std::invalid_argument("known-p model needs p1 in (0,1)");
    if (kind.model == Model::BTL && kind.known_p && kind.p1 == Rat(1, 2))
        throw std::invalid_argument(
            "BTL with known p1 = 1/2: the relaxation's solution count is not certified; "
            "use a non-uniform p1 or the unknown-p system");

    auto xn = x_block_names(kind, n);
    const std::size_t split = xn.size();
    auto tn = t_block_names(kind, n);
    xn.insert(xn.end(), tn.begin(), tn.end());
    RingPtr ring = Ring::make(std::move(xn), split);

    ParametricSystem sys;
    sys.id = model_name(kind.model) + (kind.known_p ? "_known_p" : "_unknown_p") + "_n" +
             std::to_string(n);
    sys.ring = ring;
    sys.order = MonomialOrder::block();
    Ctx c{ring, sys.order};
    switch (kind.model) {
        case Model::BTL: btl_generators(kind, n, c, sys.generators); break;
        case Model::MNL3: mnl3_generators(kind, n, c, sys.generators); break;
        case Model::MNL23: mnl23_generators(kind, n, c, sys.generators); break;
        case Model::PL: pl_generators(kind, n, c, sys.generators); break;
    }
    sys.expected_count = expected_count_for(kind);
    sys.templates = make_templates(kind, n);
    sys.draw_params = [kind, n](std::mt19937_64& rng) {
        return parameter_assignment(kind, random_params(kind, n, rng));
    };
    if (kind.known_p) {
        const Rat paper_p = kind.model == Model::MNL3 ? Rat(3, 10) : Rat(7, 10);
        if (kind.p1 != paper_p && kind.p1 != Rat(1, 2))
            sys.notes.push_back("procedure-replicated, not paper-verified (p1=" +
                                kind.p1.str() + ")");
    }
    return sys;
}

std::vector<Polynomial> build_instantiated(const ModelKind& kind, int n,
                                           const MixtureParams& mp, MonomialOrder ord) {
    validate_params(mp, kind);
    if (mp.n() != n) throw std::invalid_argument("build_instantiated: size mismatch");
    ParametricSystem sys = build_parametric(kind, n);
    return sys.instantiate(parameter_assignment(kind, mp), ord);
}

KnownSolutions known_solutions(const ModelKind& kind, const MixtureParams& mp) {
    validate_params(mp, kind);
    KnownSolutions ks;
    if (!kind.known_p && mp.p1 == Rat(1, 2)) {
        ks.degeneracy = "p1 = 1/2 lies in the degenerate parameter set";
        return ks;
    }
    ParametricSystem sys = build_parametric(kind, mp.n());
    auto t = parameter_assignment(kind, mp);
    for (const auto& tpl : sys.templates) {
        auto sol = tpl.eval(t);
        if (!sol) {
            ks.degeneracy = "template '" + tpl.id + "' undefined at these parameters";
            return ks;
        }
        ks.solutions.push_back(std::move(*sol));
    }
    for (std::size_t i = 0; i < ks.solutions.size(); ++i)
        for (std::size_t j = i + 1; j < ks.solutions.size(); ++j)
            if (ks.solutions[i] == ks.solutions[j]) {
                ks.degeneracy = "solution templates coincide at these parameters";
                return ks;
            }
    return ks;
}

InductionStep induction_step_matrix(const ModelKind& kind, const MixtureParams& mp,
                                    bool swapped) {
    const int n = mp.n();
    if (n < min_items(kind) + 1)
        throw std::invalid_argument("induction step needs n above the base case");
    validate_params(mp, kind);
    if (swapped && !(kind.model == Model::PL && !kind.known_p))
        throw std::invalid_argument("swapped branch applies to PL with unknown p only");

    const Rat p1 = mp.p1;
    const Rat p2 = Rat(1) - p1;
    const auto& a = mp.a;
    const auto& b = mp.b;
    InductionStep st;

    switch (kind.model) {
        case Model::BTL: {
            if (!kind.known_p)
                throw std::invalid_argument("BTL induction step is defined for known p");
            Rat e1 = eta_pair(mp, 1, n), e2 = eta_pair(mp, 2, n), e3 = eta_pair(mp, 3, n);
            st.A[0][0] = e1 * (e2 - p2) * b[1] - e2 * (e1 - p2);
            st.A[0][1] = e1 * (e2 - p1) * a[1] - e2 * (e1 - p1);
            st.A[1][0] = e1 * (e3 - p2) * b[2] - e3 * (e1 - p2);
            st.A[1][1] = e1 * (e3 - p1) * a[2] - e3 * (e1 - p1);
            st.rhs[0] = e2 * (e1 - Rat(1)) - e1 * (e2 - Rat(1)) * a[1] * b[1];
            st.rhs[1] = e3 * (e1 - Rat(1)) - e1 * (e3 - Rat(1)) * a[2] * b[2];
            st.truth = {a[n - 1], b[n - 1]};
            break;
        }
        case Model::MNL3: {
            if (!kind.known_p)
                throw std::invalid_argument("MNL3 induction step is defined for known p");
            auto cij = [&](int i, int j) {
                Rat e = eta_triplet(mp, i, j, n);
                return p1 * a[i - 1] * (b[i - 1] + b[j - 1]) +
                       p2 * b[i - 1] * (a[i - 1] + a[j - 1]) -
                       e * (a[i - 1] + a[j - 1]) * (b[i - 1] + b[j - 1]);
            };
            Rat e12 = eta_triplet(mp, 1, 2, n);
            Rat c12 = cij(1, 2);
            auto fill_row = [&](int row, int i, int j) {
                Rat e = eta_triplet(mp, i, j, n);
                st.A[row][0] = e12 * (p2 * b[i - 1] - e * (b[i - 1] + b[j - 1])) -
                               e * (p2 * b[0] - e12 * (b[0] + b[1]));
                st.A[row][1] = e12 * (p1 * a[i - 1] - e * (a[i - 1] + a[j - 1])) -
                               e * (p1 * a[0] - e12 * (a[0] + a[1]));
                st.rhs[row] = e * c12 - e12 * cij(i, j);
            };
            fill_row(0, 1, 3);
            fill_row(1, 2, 3);
            st.truth = {a[n - 1], b[n - 1]};
            break;
        }
        case Model::MNL23: {
            if (!kind.known_p)
                throw std::invalid_argument("MNL23 induction step is defined for known p");
            Rat e1 = eta_pair(mp, 1, n);
            auto fill_row = [&](int row, int k) {
                Rat ek = eta_pair(mp, k, n);
                st.A[row][0] = e1 * (p2 - ek) * b[k - 1] - ek * (p2 - e1) * b[0];
                st.A[row][1] = e1 * (p1 - ek) * a[k - 1] - ek * (p1 - e1) * a[0];
                st.rhs[row] = ek * (Rat(1) - e1) * a[0] * b[0] -
                              e1 * (Rat(1) - ek) * a[k - 1] * b[k - 1];
            };
            fill_row(0, 2);
            fill_row(1, 3);
            st.truth = {a[n - 1], b[n - 1]};
            break;
        }
        case Model::PL: {
            Rat c2 = p1 * a[1] * (Rat(1) - b[1]);
            Rat d2 = p2 * b[1] * (Rat(1) - a[1]);
            Rat c3 = p1 * a[2] * (Rat(1) - b[2]);
            Rat d3 = p2 * b[2] * (Rat(1) - a[2]);
            if (!swapped) {
                st.A = {{{c2, d2}, {c3, d3}}};
                st.truth = {a[n - 1], b[n - 1]};
            } else {
                st.A = {{{d2, c2}, {d3, c3}}};
                st.truth = {b[n - 1], a[n - 1]};
            }
            st.rhs[0] = c2 * a[n - 1] + d2 * b[n - 1];
            st.rhs[1] = c3 * a[n - 1] + d3 * b[n - 1];
            break;
        }
    }
    st.det = st.A[0][0] * st.A[1][1] - st.A[0][1] * st.A[1][0];
    st.degenerate = st.det.is_zero();
    return st;
}

std::pair<MixtureParams, MixtureParams> nonidentifiable_family(int n, const Rat& t) {
    if (n < 3) throw std::invalid_argument("nonidentifiable_family: n must be >= 3");
    if (t.sign() <= 0) throw std::invalid_argument("nonidentifiable_family: t must be > 0");
    if (t.is_one())
        throw std::invalid_argument("nonidentifiable_family: t = 1 collapses the pair");
    Rat tinv = t.inverse();
    MixtureParams p1, p2;
    p1.a.assign(n, Rat(1));
    p1.b.assign(n, Rat(1));
    p2.a.assign(n, Rat(1));
    p2.b.assign(n, Rat(1));
    p1.a[0] = p1.a[1] = t;
    p1.b[0] = p1.b[1] = tinv;
    p2.a[0] = t;
    p2.a[1] = tinv;
    p2.b[0] = tinv;
    p2.b[1] = t;
    p1.p1 = Rat(1, 2);
    p2.p1 = Rat(1, 2);
    return {p1, p2};
}

MixtureParams suite_witness(const ModelKind& kind) {
    MixtureParams mp;
    auto longs = [](std::initializer_list<long> xs) {
        std::vector<Rat> v;
        for (long x : xs) v.push_back(Rat(x));
        return v;
    };
    switch (kind.model) {
        case Model::BTL:
            mp.a = longs({1, 2, 3, 4, 5});
            mp.b = longs({1, 8, 9, 3, 2});
            mp.p1 = kind.known_p ? kind.p1 : Rat(3, 10);
            break;
        case Model::MNL3:
            mp.a = longs({1, 2, 3, 4});
            mp.b = longs({1, 5, 4, 2});
            mp.p1 = kind.known_p ? kind.p1 : Rat(7, 10);
            break;
        case Model::MNL23:
            if (kind.known_p) {
                mp.a = longs({1, 2, 3});
                mp.b = longs({1, 5, 4});
                mp.p1 = kind.p1;
            } else {
                mp.a = longs({1, 2, 3, 4});
                mp.b = longs({1, 5, 4, 2});
                mp.p1 = Rat(7, 10);
            }
            break;
        case Model::PL:
            mp.a = {Rat(1, 10), Rat(2, 10), Rat(3, 10), Rat(4, 10)};
            if (kind.known_p) {
                mp.b = {Rat(1, 20), Rat(7, 20), Rat(9, 20), Rat(3, 20)};
                mp.p1 = kind.p1;
            } else {
                mp.b = {Rat(1, 20), Rat(14, 20), Rat(2, 20), Rat(3, 20)};
                mp.p1 = Rat(7, 10);
            }
            break;
    }
    return mp;
}

}  // namespace polyid
