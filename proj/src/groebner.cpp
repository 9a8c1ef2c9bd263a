#include "polyid/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>

namespace polyid {

namespace {

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Mod-p arithmetic. Primes are 31-bit so products fit in 64 bits. The
// modular layer only steers the search: every returned basis is verified
// over Q, so no result depends on the primes.

constexpr std::uint64_t kPrimes[] = {
    2147483647ULL, 2147483629ULL, 2147483587ULL, 2147483579ULL, 2147483563ULL,
    2147483549ULL, 2147483543ULL, 2147483497ULL, 2147483489ULL, 2147483477ULL,
    2147483423ULL, 2147483399ULL, 2147483353ULL, 2147483323ULL, 2147483269ULL,
    2147483249ULL, 2147483237ULL, 2147483179ULL, 2147483171ULL, 2147483137ULL,
    2147483123ULL, 2147483077ULL, 2147483069ULL, 2147483059ULL};
constexpr int kPrimeCount = 24;

struct Fp {
    std::uint64_t p;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

struct PTerm {
    Monomial mono;
    std::uint64_t coeff;  // in [1, p)
};
using PPoly = std::vector<PTerm>;  // strictly descending under the active order

std::uint64_t mpz_mod_p(const mpz_class& z, const Fp& f) {
    mpz_class r = z % static_cast<unsigned long>(f.p);
    if (r < 0) r += static_cast<unsigned long>(f.p);
    return r.get_ui();
}

// nullopt when a denominator vanishes modulo p.
std::optional<PPoly> to_mod(const Polynomial& q, const Fp& f) {
    PPoly out;
    out.reserve(q.term_count());
    for (const auto& t : q.terms()) {
        std::uint64_t den = mpz_mod_p(t.coeff.denominator(), f);
        if (den == 0) return std::nullopt;
        std::uint64_t c = f.mul(mpz_mod_p(t.coeff.numerator(), f), f.inv(den));
        if (c != 0) out.push_back({t.mono, c});
    }
    return out;
}

PPoly pmonic(PPoly g, const Fp& f) {
    if (g.empty()) return g;
    std::uint64_t s = f.inv(g.front().coeff);
    for (auto& t : g) t.coeff = f.mul(t.coeff, s);
    return g;
}

// a - g * (c * m) mod p.
PPoly psub_mul(const PPoly& a, const PPoly& g, const Monomial& m, std::uint64_t c,
               const Fp& f, const MonomialOrder& ord, std::size_t split) {
    PPoly out;
    out.reserve(a.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < g.size()) {
        Monomial gm = g[j].mono * m;
        Cmp cm = cmp_monomials(a[i].mono, gm, ord, split);
        if (cm == Cmp::Greater) {
            out.push_back(a[i++]);
        } else if (cm == Cmp::Less) {
            out.push_back({std::move(gm), f.sub(0, f.mul(g[j].coeff, c))});
            ++j;
        } else {
            std::uint64_t s = f.sub(a[i].coeff, f.mul(g[j].coeff, c));
            if (s != 0) out.push_back({a[i].mono, s});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < g.size(); ++j) out.push_back({g[j].mono * m, f.sub(0, f.mul(g[j].coeff, c))});
    return out;
}

std::uint64_t support_mask(const Monomial& m) {
    std::uint64_t k = 0;
    const std::size_t n = m.arity() < 64 ? m.arity() : 64;
    for (std::size_t i = 0; i < n; ++i)
        if (m.exp(i)) k |= std::uint64_t{1} << i;
    return k;
}

// ---------------------------------------------------------------------------
// Pair bookkeeping shared by the exact and modular loops.

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint64_t sugar = 0;
};

// Gebauer-Moller update for the element appended at index t.
void gm_update(std::vector<Pair>& pairs, const std::vector<Monomial>& lms,
               const std::vector<std::uint64_t>* sugars, std::size_t t, GBStats& stats) {
    const Monomial& lt = lms[t];
    std::size_t before = pairs.size();
    std::erase_if(pairs, [&](const Pair& pr) {
        if (!lt.divides(pr.lcm)) return false;
        return Monomial::lcm(lms[pr.i], lt) != pr.lcm &&
               Monomial::lcm(lms[pr.j], lt) != pr.lcm;
    });
    stats.pairs_discarded += before - pairs.size();

    struct Cand {
        std::size_t i;
        Monomial lcm;
        bool coprime;
        bool keep = true;
    };
    std::vector<Cand> cands;
    cands.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
        cands.push_back({i, Monomial::lcm(lms[i], lt), lms[i].coprime_with(lt)});

    // M criterion: drop candidates whose lcm is properly divided by another's.
    for (auto& c : cands) {
        for (const auto& d : cands) {
            if (&c == &d || !d.keep) continue;
            if (d.lcm != c.lcm && d.lcm.divides(c.lcm)) {
                c.keep = false;
                break;
            }
        }
    }
    // F criterion + Buchberger's coprimality criterion per equal-lcm class.
    for (std::size_t a = 0; a < cands.size(); ++a) {
        if (!cands[a].keep) continue;
        bool coprime_in_class = cands[a].coprime;
        for (std::size_t b = a + 1; b < cands.size(); ++b) {
            if (!cands[b].keep || cands[b].lcm != cands[a].lcm) continue;
            cands[b].keep = false;
            coprime_in_class = coprime_in_class || cands[b].coprime;
        }
        if (coprime_in_class) cands[a].keep = false;
    }
    for (auto& c : cands) {
        if (!c.keep) {
            ++stats.pairs_discarded;
            continue;
        }
        Pair pr{c.i, t, c.lcm, 0};
        if (sugars) {
            std::uint64_t sa =
                (*sugars)[c.i] + (pr.lcm.total_degree() - lms[c.i].total_degree());
            std::uint64_t sb = (*sugars)[t] + (pr.lcm.total_degree() - lt.total_degree());
            pr.sugar = sa > sb ? sa : sb;
        }
        pairs.push_back(std::move(pr));
    }
}

std::size_t select_pair(const std::vector<Pair>& pairs, const MonomialOrder& ord,
                        std::size_t split, bool by_sugar) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
        const Pair& a = pairs[k];
        const Pair& b = pairs[best];
        if (by_sugar && a.sugar != b.sugar) {
            if (a.sugar < b.sugar) best = k;
            continue;
        }
        Cmp c = cmp_monomials(a.lcm, b.lcm, ord, split);
        if (c == Cmp::Less)
            best = k;
        else if (c == Cmp::Equal && (a.j < b.j || (a.j == b.j && a.i < b.i)))
            best = k;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Pure mod-p Buchberger with interreduction: the discovery engine.

struct PBasis {
    std::vector<PPoly> elems;  // monic
    std::vector<Monomial> lms;
    std::vector<std::uint64_t> masks;
};

// Fully reduces h in place; true when the remainder is zero.
bool preduce(PPoly& h, const PBasis& basis, const Fp& f, const MonomialOrder& ord,
             std::size_t split) {
    PPoly rem;
    while (!h.empty()) {
        const std::uint64_t mask = support_mask(h.front().mono);
        std::size_t best = basis.elems.size();
        std::size_t best_len = ~std::size_t{0};
        for (std::size_t k = 0; k < basis.elems.size(); ++k) {
            if ((basis.masks[k] & ~mask) != 0) continue;
            if (!basis.lms[k].divides(h.front().mono)) continue;
            if (basis.elems[k].size() < best_len) {
                best = k;
                best_len = basis.elems[k].size();
            }
        }
        if (best == basis.elems.size()) {
            rem.push_back(h.front());
            h.erase(h.begin());
            continue;
        }
        Monomial q = h.front().mono.divide_exact(basis.lms[best]);
        h = psub_mul(h, basis.elems[best], q, h.front().coeff, f, ord, split);
    }
    h = std::move(rem);
    return h.empty();
}

struct PRunResult {
    PBasis basis;
    bool complete = false;
    std::uint64_t pairs = 0;
};

PRunResult pbuchberger(const std::vector<PPoly>& gens, const Fp& f, const MonomialOrder& ord,
                       std::size_t split, double deadline_seconds, Clock::time_point t0,
                       std::uint64_t max_pairs) {
    PRunResult out;
    PBasis& basis = out.basis;
    std::vector<Pair> pairs;
    GBStats scratch;
    for (const auto& g : gens) {
        if (g.empty()) continue;
        basis.elems.push_back(g);
        basis.lms.push_back(g.front().mono);
        basis.masks.push_back(support_mask(g.front().mono));
        gm_update(pairs, basis.lms, nullptr, basis.lms.size() - 1, scratch);
    }
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
    while (!pairs.empty()) {
        if (out.pairs >= max_pairs || elapsed() > deadline_seconds) return out;
        std::size_t k = select_pair(pairs, ord, split, false);
        Pair pr = pairs[k];
        pairs.erase(pairs.begin() + k);
        ++out.pairs;
        PPoly s1;
        s1.reserve(basis.elems[pr.i].size());
        Monomial qa = pr.lcm.divide_exact(basis.lms[pr.i]);
        for (const auto& t : basis.elems[pr.i]) s1.push_back({t.mono * qa, t.coeff});
        PPoly s = psub_mul(s1, basis.elems[pr.j], pr.lcm.divide_exact(basis.lms[pr.j]), 1, f,
                           ord, split);
        preduce(s, basis, f, ord, split);
        if (s.empty()) continue;
        basis.elems.push_back(pmonic(std::move(s), f));
        basis.lms.push_back(basis.elems.back().front().mono);
        basis.masks.push_back(support_mask(basis.lms.back()));
        gm_update(pairs, basis.lms, nullptr, basis.lms.size() - 1, scratch);
    }
    out.complete = true;
    return out;
}

// Reduced mod-p basis: minimal leading monomials, tails fully reduced,
// elements sorted descending by leading monomial.
std::vector<PPoly> pinterreduce(const PBasis& basis, const Fp& f, const MonomialOrder& ord,
                                std::size_t split) {
    std::vector<std::size_t> idx(basis.elems.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return mono_less(basis.lms[a], basis.lms[b], ord, split);
    });
    PBasis minimal;
    for (std::size_t i : idx) {
        bool covered = false;
        for (const auto& lm : minimal.lms)
            if (lm.divides(basis.lms[i])) {
                covered = true;
                break;
            }
        if (covered) continue;
        minimal.elems.push_back(basis.elems[i]);
        minimal.lms.push_back(basis.lms[i]);
        minimal.masks.push_back(basis.masks[i]);
    }
    std::vector<PPoly> out(minimal.elems.size());
    for (std::size_t i = 0; i < minimal.elems.size(); ++i) {
        PBasis others;
        for (std::size_t j = 0; j < minimal.elems.size(); ++j) {
            if (j == i) continue;
            others.elems.push_back(minimal.elems[j]);
            others.lms.push_back(minimal.lms[j]);
            others.masks.push_back(minimal.masks[j]);
        }
        PPoly h = minimal.elems[i];
        preduce(h, others, f, ord, split);
        out[i] = pmonic(std::move(h), f);
    }
    std::sort(out.begin(), out.end(), [&](const PPoly& a, const PPoly& b) {
        return mono_greater(a.front().mono, b.front().mono, ord, split);
    });
    return out;
}

// ---------------------------------------------------------------------------
// CRT lifting and rational reconstruction.

std::optional<Rat> rational_reconstruct(const mpz_class& c, const mpz_class& M) {
    mpz_class bound;
    mpz_class half = M / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = M, s0 = 0, r1 = c % M, s1 = 1;
    if (r1 < 0) r1 += M;
    while (r1 > bound) {
        if (sgn(r1) == 0) return std::nullopt;
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (sgn(s1) == 0) return std::nullopt;
    mpz_class n = r1, d = s1;
    if (sgn(d) < 0) {
        d = -d;
        n = -n;
    }
    if (d > bound || sgn(d) == 0) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1) return std::nullopt;
    return Rat(mpq_class(n, d));
}

// CRT accumulator over one basis shape (monomial supports per element).
struct LiftState {
    bool initialized = false;
    std::vector<std::vector<Monomial>> shape;
    std::vector<std::vector<mpz_class>> residues;  // combined, mod `modulus`
    mpz_class modulus = 1;
    int primes_used = 0;

    static std::vector<std::vector<Monomial>> shape_of(const std::vector<PPoly>& red) {
        std::vector<std::vector<Monomial>> s;
        s.reserve(red.size());
        for (const auto& g : red) {
            std::vector<Monomial> ms;
            ms.reserve(g.size());
            for (const auto& t : g) ms.push_back(t.mono);
            s.push_back(std::move(ms));
        }
        return s;
    }

    bool absorb(const std::vector<PPoly>& red, std::uint64_t p) {
        auto s = shape_of(red);
        if (!initialized) {
            initialized = true;
            shape = std::move(s);
            residues.assign(shape.size(), {});
            for (std::size_t i = 0; i < shape.size(); ++i) {
                residues[i].reserve(red[i].size());
                for (const auto& t : red[i])
                    residues[i].push_back(mpz_class(static_cast<unsigned long>(t.coeff)));
            }
            modulus = static_cast<unsigned long>(p);
            primes_used = 1;
            return true;
        }
        if (s != shape) return false;
        mpz_class pz = static_cast<unsigned long>(p);
        mpz_class inv;
        {
            mpz_class mm = modulus % pz;
            if (mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), pz.get_mpz_t()) == 0)
                return false;
        }
        for (std::size_t i = 0; i < shape.size(); ++i) {
            for (std::size_t k = 0; k < shape[i].size(); ++k) {
                mpz_class a = residues[i][k];
                mpz_class b(static_cast<unsigned long>(red[i][k].coeff));
                mpz_class diff = (b - a) % pz;
                if (diff < 0) diff += pz;
                residues[i][k] = a + modulus * ((diff * inv) % pz);
            }
        }
        modulus *= pz;
        ++primes_used;
        return true;
    }

    std::optional<std::vector<Polynomial>> reconstruct(const RingPtr& ring,
                                                       const MonomialOrder& ord) const {
        std::vector<Polynomial> out;
        out.reserve(shape.size());
        for (std::size_t i = 0; i < shape.size(); ++i) {
            std::vector<Term> ts;
            ts.reserve(shape[i].size());
            for (std::size_t k = 0; k < shape[i].size(); ++k) {
                auto r = rational_reconstruct(residues[i][k], modulus);
                if (!r) return std::nullopt;
                ts.push_back({shape[i][k], std::move(*r)});
            }
            out.push_back(Polynomial::from_sorted(ring, ord, std::move(ts)));
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Exact (rational) machinery.

struct Entry {
    Polynomial poly;  // monic: rational arithmetic keeps coefficients reduced
    Monomial lm;
    std::uint64_t lm_mask = 0;
    std::uint64_t sugar = 0;
    bool redundant = false;
    bool dirty = false;  // tail reducible by a newer element
    PPoly mod;           // monic screening image
};

Polynomial reduce_full(Polynomial h, std::uint64_t& sugar, const std::vector<Entry>& basis,
                       const MonomialOrder& ord) {
    std::vector<Term> rem;
    while (!h.is_zero()) {
        const Term& lt = h.leading_term();
        const std::uint64_t mask = support_mask(lt.mono);
        const Entry* best = nullptr;
        for (const auto& e : basis) {
            if ((e.lm_mask & ~mask) != 0 || !e.lm.divides(lt.mono)) continue;
            if (!best || e.poly.term_count() < best->poly.term_count() ||
                (e.poly.term_count() == best->poly.term_count() &&
                 e.redundant < best->redundant))
                best = &e;
        }
        if (best) {
            Monomial q = lt.mono.divide_exact(best->lm);
            std::uint64_t s = best->sugar + q.total_degree();
            if (s > sugar) sugar = s;
            Rat c = lt.coeff;  // copy: sub_mul invalidates references into h
            h.sub_mul(best->poly, q, c);
        } else {
            rem.push_back(lt);
            h = Polynomial::from_sorted(
                h.ring(), ord, std::vector<Term>(h.terms().begin() + 1, h.terms().end()));
        }
    }
    return Polynomial::from_sorted(h.ring(), ord, std::move(rem));
}

Polynomial s_poly_monic(const Polynomial& a, const Polynomial& b, const Monomial& lcm) {
    Polynomial s1 = a.mul_term(lcm.divide_exact(a.leading_monomial()), Rat(1));
    Polynomial s2 = b.mul_term(lcm.divide_exact(b.leading_monomial()), Rat(1));
    return s1 - s2;
}

// Keeps stored elements tail-reduced so they stay short as reducers;
// leading terms are untouched, so pair bookkeeping is unaffected.
std::vector<std::size_t> tail_maintenance(std::vector<Entry>& basis,
                                          const MonomialOrder& ord) {
    std::vector<std::size_t> changed;
    for (std::size_t e = 0; e < basis.size(); ++e) {
        Entry& cur = basis[e];
        if (cur.redundant || !cur.dirty) continue;
        cur.dirty = false;
        const auto ts = cur.poly.terms();
        Polynomial tail = Polynomial::from_sorted(
            cur.poly.ring(), ord, std::vector<Term>(ts.begin() + 1, ts.end()));
        std::vector<Term> rem;
        while (!tail.is_zero()) {
            const Term& lt = tail.leading_term();
            const std::uint64_t mask = support_mask(lt.mono);
            const Entry* best = nullptr;
            for (std::size_t o = 0; o < basis.size(); ++o) {
                if (o == e || (basis[o].lm_mask & ~mask) != 0 ||
                    !basis[o].lm.divides(lt.mono))
                    continue;
                if (!best || basis[o].poly.term_count() < best->poly.term_count())
                    best = &basis[o];
            }
            if (best) {
                Monomial q = lt.mono.divide_exact(best->lm);
                Rat c = lt.coeff;
                tail.sub_mul(best->poly, q, c);
            } else {
                rem.push_back(lt);
                tail = Polynomial::from_sorted(
                    tail.ring(), ord,
                    std::vector<Term>(tail.terms().begin() + 1, tail.terms().end()));
            }
        }
        rem.insert(rem.begin(), ts[0]);
        cur.poly = Polynomial::from_sorted(cur.poly.ring(), ord, std::move(rem));
        changed.push_back(e);
    }
    return changed;
}

void gm_update_entries(std::vector<Pair>& pairs, std::vector<Entry>& basis, std::size_t t,
                       GBStats& stats) {
    std::vector<Monomial> lms;
    lms.reserve(basis.size());
    for (const auto& e : basis) lms.push_back(e.lm);
    std::vector<std::uint64_t> sugars;
    sugars.reserve(basis.size());
    for (const auto& e : basis) sugars.push_back(e.sugar);
    gm_update(pairs, lms, &sugars, t, stats);

    const Monomial& lt = basis[t].lm;
    for (std::size_t i = 0; i < t; ++i) {
        Entry& e = basis[i];
        if (!e.redundant && lt.divides(e.lm)) e.redundant = true;
        if (!e.dirty) {
            const auto& ts = e.poly.terms();
            for (std::size_t k = 1; k < ts.size(); ++k)
                if (lt.divides(ts[k].mono)) {
                    e.dirty = true;
                    break;
                }
        }
    }
}

// Normalizes the generator list: drops zeros, fixes the order, and
// inter-reduces until stable.
std::vector<Polynomial> normalize_inputs(const std::vector<Polynomial>& generators,
                                         const MonomialOrder& ord, std::size_t split) {
    std::vector<Polynomial> input;
    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        input.push_back(g.order() == ord ? g : g.with_order(ord));
    }
    bool changed = true;
    while (changed && !input.empty()) {
        changed = false;
        std::sort(input.begin(), input.end(), [&](const Polynomial& a, const Polynomial& b) {
            return mono_less(a.leading_monomial(), b.leading_monomial(), ord, split);
        });
        for (std::size_t i = 0; i < input.size(); ++i) {
            std::vector<Polynomial> others;
            others.reserve(input.size() - 1);
            for (std::size_t j = 0; j < input.size(); ++j)
                if (j != i) others.push_back(input[j]);
            if (others.empty()) break;
            Polynomial r = normal_form(input[i], others, ord);
            if (r != input[i]) {
                changed = true;
                if (r.is_zero()) {
                    input.erase(input.begin() + i);
                    --i;
                } else {
                    input[i] = r.content_normalized();
                }
            }
        }
    }
    for (auto& g : input) g = g.content_normalized();
    return input;
}

// The exact screened core loop. Elements are built by exact reductions, so
// every one provably lies in the input ideal. Returns nullopt on
// convergence or early stop, a status on resource exhaustion.
std::optional<GBStatus> core_loop(const std::vector<Polynomial>& input,
                                  const MonomialOrder& ord, std::size_t split,
                                  const GroebnerLimits& limits, double deadline,
                                  Clock::time_point t0, GBStats& stats, bool use_mirror,
                                  const std::function<bool(const std::vector<Entry>&)>*
                                      early_stop,
                                  std::vector<Entry>& basis) {
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
    std::vector<Pair> pairs;
    bool mirror = use_mirror;
    const Fp f{kPrimes[0]};
    auto refresh_mirror = [&](Entry& e) {
        if (!mirror) return;
        auto m = to_mod(e.poly, f);
        if (m && !m->empty()) {
            e.mod = std::move(*m);
        } else {
            mirror = false;
        }
    };
    for (const auto& g : input) {
        Entry e{g.monic(), g.leading_monomial(), support_mask(g.leading_monomial()),
                g.total_degree(), false, false, {}};
        refresh_mirror(e);
        basis.push_back(std::move(e));
        gm_update_entries(pairs, basis, basis.size() - 1, stats);
    }
    if (!mirror)
        for (auto& e : basis) e.mod.clear();
    if (early_stop && (*early_stop)(basis)) return std::nullopt;

    while (!pairs.empty()) {
        if (stats.pairs_processed >= limits.max_pairs) return GBStatus::PairLimit;
        if (elapsed() > deadline) return GBStatus::TimeLimit;
        std::size_t k =
            select_pair(pairs, ord, split, limits.selection == PairSelection::Sugar);
        Pair pr = pairs[k];
        pairs.erase(pairs.begin() + k);
        ++stats.pairs_processed;

        if (mirror) {
            const Entry& A = basis[pr.i];
            const Entry& B = basis[pr.j];
            PPoly s1;
            s1.reserve(A.mod.size());
            Monomial qa = pr.lcm.divide_exact(A.lm);
            for (const auto& t : A.mod) s1.push_back({t.mono * qa, t.coeff});
            PPoly smod = psub_mul(s1, B.mod, pr.lcm.divide_exact(B.lm), 1, f, ord, split);
            PBasis view;
            view.elems.reserve(basis.size());
            for (const auto& e : basis) {
                view.elems.push_back(e.mod);
                view.lms.push_back(e.lm);
                view.masks.push_back(e.lm_mask);
            }
            if (preduce(smod, view, f, ord, split)) {
                ++stats.reductions_to_zero;  // screened
                continue;
            }
        }
        Polynomial s = s_poly_monic(basis[pr.i].poly, basis[pr.j].poly, pr.lcm);
        std::uint64_t sugar = pr.sugar;
        Polynomial r = reduce_full(std::move(s), sugar, basis, ord);
        if (r.is_zero()) {
            ++stats.reductions_to_zero;
            continue;
        }
        Entry e{r.monic(), r.leading_monomial(), support_mask(r.leading_monomial()), sugar,
                false, false, {}};
        refresh_mirror(e);
        if (!mirror)
            for (auto& b : basis) b.mod.clear();
        basis.push_back(std::move(e));
        gm_update_entries(pairs, basis, basis.size() - 1, stats);
        if (basis.size() % 8 == 0) {
            auto touched = tail_maintenance(basis, ord);
            if (mirror)
                for (auto idx : touched) refresh_mirror(basis[idx]);
        }
        if (early_stop && (*early_stop)(basis)) return std::nullopt;
    }
    return std::nullopt;  // converged
}

// Minimal leading monomials of the entries (deduplicated).
std::vector<Monomial> minimal_lms(const std::vector<Entry>& basis) {
    std::vector<Monomial> out;
    for (const auto& e : basis) {
        if (std::find(out.begin(), out.end(), e.lm) != out.end()) continue;
        bool covered = false;
        for (const auto& o : basis)
            if (o.lm != e.lm && o.lm.divides(e.lm)) {
                covered = true;
                break;
            }
        if (!covered) out.push_back(e.lm);
    }
    return out;
}

std::vector<Monomial> minimal_lms_of(const GroebnerBasis& gb) {
    std::vector<Monomial> out;
    for (const auto& g : gb.elements) {
        if (g.is_zero()) continue;
        const Monomial& m = g.leading_monomial();
        if (std::find(out.begin(), out.end(), m) != out.end()) continue;
        bool covered = false;
        for (const auto& o : gb.elements)
            if (!o.is_zero() && o.leading_monomial() != m &&
                o.leading_monomial().divides(m)) {
                covered = true;
                break;
            }
        if (!covered) out.push_back(m);
    }
    return out;
}

// Standard-monomial count with an abort cap: returns cap + 1 when the
// staircase exceeds the cap (including the infinite case).
std::uint64_t staircase_count_capped(const std::vector<Monomial>& lms, std::size_t arity,
                                     std::uint64_t cap) {
    std::uint64_t count = 0;
    bool aborted = false;
    auto dfs = [&](auto&& self, const Monomial& m, std::size_t min_var) -> void {
        if (aborted) return;
        for (const auto& l : lms)
            if (l.divides(m)) return;
        if (++count > cap) {
            aborted = true;
            return;
        }
        for (std::size_t v = min_var; v < arity; ++v)
            self(self, m * Monomial::unit_variable(arity, v), v);
    };
    dfs(dfs, Monomial(arity), 0);
    return aborted ? cap + 1 : count;
}

}  // namespace

GroebnerResult buchberger(const std::vector<Polynomial>& generators, MonomialOrder ord,
                          const GroebnerLimits& limits) {
    if (generators.empty()) throw std::invalid_argument("buchberger: no generators");
    const RingPtr& ring = generators.front().ring();
    for (const auto& g : generators)
        if (!same_ring(g.ring(), ring))
            throw std::invalid_argument("buchberger: ring mismatch");
    const std::size_t split = ring->split_or_arity();

    auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
    const bool debug = std::getenv("POLYID_GB_DEBUG") != nullptr;

    GroebnerResult res;
    res.basis.ring = ring;
    res.basis.order = ord;
    GBStats& stats = res.stats;

    std::vector<Polynomial> input = normalize_inputs(generators, ord, split);
    if (input.empty()) return res;  // zero ideal

    auto run_core = [&](bool use_mirror, double deadline,
                        std::vector<Entry>& basis) -> std::optional<GBStatus> {
        return core_loop(input, ord, split, limits, deadline, t0, stats, use_mirror,
                         nullptr, basis);
    };

    auto interreduce_q = [&](const std::vector<Polynomial>& elems) {
        std::vector<Polynomial> sorted = elems;
        std::sort(sorted.begin(), sorted.end(),
                  [&](const Polynomial& a, const Polynomial& b) {
                      return mono_less(a.leading_monomial(), b.leading_monomial(), ord,
                                       split);
                  });
        std::vector<Polynomial> minimal;
        for (const auto& g : sorted) {
            bool covered = false;
            for (const auto& kept : minimal)
                if (kept.leading_monomial().divides(g.leading_monomial())) {
                    covered = true;
                    break;
                }
            if (!covered) minimal.push_back(g);
        }
        std::vector<Polynomial> out;
        out.reserve(minimal.size());
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Polynomial> others;
            others.reserve(minimal.size() - 1);
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Polynomial r =
                others.empty() ? minimal[i] : normal_form(minimal[i], others, ord);
            out.push_back(r.monic());
        }
        return out;
    };

    enum class VerifyOutcome { Pass, Fail, OutOfTime };
    // Buchberger criterion over Q with the pair criteria applied, plus
    // exact membership of every input in the candidate's ideal.
    auto verify_candidate = [&](const std::vector<Polynomial>& cand) -> VerifyOutcome {
        std::vector<Monomial> lms;
        std::vector<Pair> vpairs;
        GBStats scratch;
        for (const auto& g : cand) {
            if (g.is_zero()) return VerifyOutcome::Fail;
            lms.push_back(g.leading_monomial());
            gm_update(vpairs, lms, nullptr, lms.size() - 1, scratch);
        }
        for (const auto& pr : vpairs) {
            if (elapsed() > limits.max_seconds) return VerifyOutcome::OutOfTime;
            ++stats.pairs_processed;
            Polynomial s = s_poly_monic(cand[pr.i], cand[pr.j], pr.lcm);
            if (!normal_form(s, cand, ord).is_zero()) return VerifyOutcome::Fail;
            ++stats.reductions_to_zero;
        }
        for (const auto& g : input) {
            if (elapsed() > limits.max_seconds) return VerifyOutcome::OutOfTime;
            if (!normal_form(g, cand, ord).is_zero()) return VerifyOutcome::Fail;
        }
        return VerifyOutcome::Pass;
    };

    auto finish_with = [&](std::vector<Polynomial> cand, bool reduced) {
        res.stats.wall_seconds = elapsed();
        res.basis.elements.clear();
        res.basis.elements.reserve(cand.size());
        for (auto& g : cand) res.basis.elements.push_back(g.content_normalized());
        res.basis.reduced = reduced;
        return res;
    };
    auto finish_partial = [&](const std::vector<Entry>& basis, GBStatus st) {
        res.status = st;
        res.stats.wall_seconds = elapsed();
        res.basis.elements.clear();
        res.basis.elements.reserve(basis.size());
        for (const auto& e : basis)
            res.basis.elements.push_back(e.poly.content_normalized());
        return res;
    };

    // -----------------------------------------------------------------
    // Stage 1: modular discovery, CRT lift, exact verification. The lifted
    // candidate must (i) satisfy the Buchberger criterion over Q, (ii)
    // reduce every input to zero, and (iii) reduce to zero against exact
    // members of the ideal; together these prove it is a Groebner basis of
    // the input ideal, independent of the primes.
    if (limits.modular_prescreen) {
        LiftState lift;
        std::optional<std::vector<Polynomial>> candidate;
        const double modular_deadline = limits.max_seconds * 0.55;
        for (int pi = 0; pi < kPrimeCount && elapsed() < modular_deadline; ++pi) {
            Fp f{kPrimes[pi]};
            std::vector<PPoly> pgens;
            bool prime_ok = true;
            for (const auto& g : input) {
                auto m = to_mod(g, f);
                if (!m || m->empty()) {
                    prime_ok = false;
                    break;
                }
                pgens.push_back(pmonic(std::move(*m), f));
            }
            if (!prime_ok) continue;
            PRunResult pr =
                pbuchberger(pgens, f, ord, split, modular_deadline, t0, limits.max_pairs);
            if (!pr.complete) break;  // out of budget
            stats.pairs_processed += pr.pairs;
            std::vector<PPoly> red = pinterreduce(pr.basis, f, ord, split);
            if (!lift.absorb(red, f.p)) {
                lift = LiftState();  // shape conflict: restart from this prime
                lift.absorb(red, f.p);
            }
            auto rec = lift.reconstruct(ring, ord);
            if (rec && lift.primes_used >= 2) {
                candidate = std::move(rec);
                break;
            }
            if (rec && kPrimeCount == 1) candidate = std::move(rec);
        }
        if (candidate) {
            VerifyOutcome vo = verify_candidate(*candidate);
            if (vo == VerifyOutcome::OutOfTime) {
                std::vector<Entry> none;
                return finish_partial(none, GBStatus::TimeLimit);
            }
            if (vo == VerifyOutcome::Pass) {
                // (iii): membership of each candidate element, reduced
                // against an exact (possibly partial) basis of the ideal.
                std::vector<Entry> partial;
                double budget = std::min(elapsed() + std::max(4.0, limits.max_seconds * 0.3),
                                         limits.max_seconds);
                std::optional<GBStatus> core_st = run_core(true, budget, partial);
                std::vector<Polynomial> reducers;
                reducers.reserve(partial.size());
                for (const auto& e : partial) reducers.push_back(e.poly);
                bool member_ok = true;
                for (const auto& c : *candidate) {
                    if (elapsed() > limits.max_seconds) {
                        member_ok = false;
                        break;
                    }
                    if (!normal_form(c, reducers, ord).is_zero()) {
                        member_ok = false;
                        break;
                    }
                }
                if (member_ok) {
                    if (debug)
                        fprintf(stderr, "[gb] modular lift verified (%d primes, %.2fs)\n",
                                lift.primes_used, elapsed());
                    return finish_with(std::move(*candidate), true);
                }
                if (debug) fprintf(stderr, "[gb] modular membership check incomplete\n");
                if (!core_st) {
                    // The exact screened run converged anyway; verify it.
                    std::vector<Polynomial> cand2 = interreduce_q(reducers);
                    VerifyOutcome v2 = verify_candidate(cand2);
                    if (v2 == VerifyOutcome::Pass) return finish_with(std::move(cand2), true);
                    if (v2 == VerifyOutcome::OutOfTime)
                        return finish_partial(partial, GBStatus::TimeLimit);
                }
            } else if (debug) {
                fprintf(stderr, "[gb] modular candidate rejected by verification\n");
            }
        }
        if (debug && !candidate)
            fprintf(stderr, "[gb] modular stage produced no candidate (%.2fs)\n", elapsed());
    }

    // -----------------------------------------------------------------
    // Stage 2: exact screened run, interreduce, verify.
    std::vector<Entry> basis;
    std::optional<GBStatus> st = run_core(true, limits.max_seconds, basis);
    if (st) return finish_partial(basis, *st);
    {
        std::vector<Polynomial> elems;
        elems.reserve(basis.size());
        for (const auto& e : basis) elems.push_back(e.poly);
        std::vector<Polynomial> cand = interreduce_q(elems);
        VerifyOutcome vo = verify_candidate(cand);
        if (vo == VerifyOutcome::Pass) return finish_with(std::move(cand), true);
        if (vo == VerifyOutcome::OutOfTime) return finish_partial(basis, GBStatus::TimeLimit);
    }

    // Stage 3: fully exact run, no screening. Unconditionally correct.
    basis.clear();
    st = run_core(false, limits.max_seconds, basis);
    if (st) return finish_partial(basis, *st);
    std::vector<Polynomial> elems;
    elems.reserve(basis.size());
    for (const auto& e : basis) elems.push_back(e.poly);
    return finish_with(interreduce_q(elems), true);
}

DegreeCertificate certified_degree(
    const std::vector<Polynomial>& system,
    const std::vector<std::map<std::string, Rat>>& distinct_solutions,
    const GroebnerLimits& limits) {
    if (system.empty()) throw std::invalid_argument("certified_degree: empty system");
    const RingPtr& ring = system.front().ring();
    if (ring->has_parameters())
        throw std::invalid_argument("certified_degree: system has symbolic parameters");
    const MonomialOrder ord = system.front().order();
    const std::size_t split = ring->split_or_arity();
    auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    DegreeCertificate cert;
    cert.basis.ring = ring;
    cert.basis.order = ord;

    // The lower bound: exact, pairwise-distinct solutions of the system.
    std::vector<std::map<std::string, Rat>> sols;
    for (const auto& s : distinct_solutions) {
        bool satisfies = true;
        for (const auto& f : system) {
            Polynomial v = f.evaluate(s);
            if (!v.is_constant() || !v.constant_value().is_zero()) {
                satisfies = false;
                break;
            }
        }
        if (!satisfies) continue;
        if (std::find(sols.begin(), sols.end(), s) == sols.end()) sols.push_back(s);
    }
    const std::uint64_t lower = sols.size();

    std::vector<Polynomial> input = normalize_inputs(system, ord, split);
    if (input.empty()) {
        // zero ideal: positive-dimensional unless the ring is empty
        cert.ok = true;
        cert.zero_dimensional = ring->arity() == 0;
        cert.degree = cert.zero_dimensional ? 1 : 0;
        cert.method = "groebner";
        cert.basis.reduced = true;
        return cert;
    }

    if (lower > 0) {
        // Sandwich: stop as soon as the staircase of the exact family
        // matches the number of exhibited solutions.
        std::function<bool(const std::vector<Entry>&)> stop =
            [&](const std::vector<Entry>& basis) {
                auto lms = minimal_lms(basis);
                return staircase_count_capped(lms, ring->arity(), lower) == lower;
            };
        std::vector<Entry> basis;
        std::optional<GBStatus> st = core_loop(input, ord, split, limits,
                                               limits.max_seconds, t0, cert.stats,
                                               /*use_mirror=*/true, &stop, basis);
        if (!st) {
            auto lms = minimal_lms(basis);
            if (staircase_count_capped(lms, ring->arity(), lower) == lower) {
                // dim quotient <= staircase = lower <= dim quotient: equality.
                // The staircase monomials form a quotient basis, so the
                // family is a Groebner basis of the ideal.
                cert.ok = true;
                cert.zero_dimensional = true;
                cert.degree = lower;
                cert.method = "sandwich";
                cert.basis.elements.reserve(basis.size());
                for (const auto& e : basis)
                    cert.basis.elements.push_back(e.poly.content_normalized());
                cert.basis = reduce_basis(cert.basis);
                cert.stats.wall_seconds = elapsed();
                return cert;
            }
            // Converged with a different staircase: fall through to the
            // classical certificate on the converged family.
        }
    }

    // Classical route: fully verified basis.
    GroebnerLimits rest = limits;
    rest.max_seconds = std::max(1.0, limits.max_seconds - elapsed());
    GroebnerResult gr = buchberger(system, ord, rest);
    cert.stats.pairs_processed += gr.stats.pairs_processed;
    cert.stats.reductions_to_zero += gr.stats.reductions_to_zero;
    cert.stats.wall_seconds = elapsed();
    if (!gr.ok()) {
        cert.ok = false;
        return cert;
    }
    GroebnerBasis red = gr.basis.reduced ? gr.basis : reduce_basis(gr.basis);
    cert.ok = true;
    cert.basis = red;
    auto lms = minimal_lms_of(red);
    bool zd = true;
    for (std::size_t v = 0; v < ring->arity() && zd; ++v) {
        bool pure = false;
        for (const auto& l : lms) {
            if (l.exp(v) == 0) continue;
            bool only_v = true;
            for (std::size_t w = 0; w < ring->arity(); ++w)
                if (w != v && l.exp(w) != 0) {
                    only_v = false;
                    break;
                }
            if (only_v) {
                pure = true;
                break;
            }
        }
        if (!pure) zd = false;
    }
    for (const auto& l : lms)
        if (l.is_one()) zd = true;  // unit ideal: empty variety
    cert.zero_dimensional = zd;
    if (zd)
        cert.degree =
            staircase_count_capped(lms, ring->arity(), std::uint64_t(1) << 40);
    cert.method = "groebner";
    return cert;
}

GroebnerBasis reduce_basis(const GroebnerBasis& gb) {
    GroebnerBasis out;
    out.ring = gb.ring;
    out.order = gb.order;
    if (gb.elements.empty()) {
        out.reduced = true;
        return out;
    }
    const MonomialOrder& ord = gb.order;
    const std::size_t split = gb.ring->split_or_arity();

    std::vector<Polynomial> sorted = gb.elements;
    std::sort(sorted.begin(), sorted.end(), [&](const Polynomial& a, const Polynomial& b) {
        return mono_less(a.leading_monomial(), b.leading_monomial(), ord, split);
    });
    std::vector<Polynomial> minimal;
    for (const auto& g : sorted) {
        bool covered = false;
        for (const auto& kept : minimal) {
            if (kept.leading_monomial().divides(g.leading_monomial())) {
                covered = true;
                break;
            }
        }
        if (!covered) minimal.push_back(g);
    }

    std::vector<Polynomial> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = others.empty() ? minimal[i] : normal_form(minimal[i], others, ord);
        reduced.push_back(r.content_normalized());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return mono_greater(a.leading_monomial(), b.leading_monomial(), ord, split);
    });
    out.elements = std::move(reduced);
    out.reduced = true;
    return out;
}

bool is_groebner(const GroebnerBasis& gb) {
    const auto& G = gb.elements;
    for (std::size_t i = 0; i < G.size(); ++i) {
        for (std::size_t j = i + 1; j < G.size(); ++j) {
            Polynomial s = s_polynomial(G[i], G[j], gb.order);
            if (s.is_zero()) continue;
            if (!normal_form(s, G, gb.order).is_zero()) return false;
        }
    }
    return true;
}

BadSet extract_bad_set(const GroebnerBasis& gb) {
    if (gb.order.kind != OrderKind::Block)
        throw std::invalid_argument("extract_bad_set: basis order is not a block order");
    if (!gb.ring->block_split())
        throw std::invalid_argument("extract_bad_set: ring has no parameter block");
    const std::size_t split = *gb.ring->block_split();
    const std::size_t arity = gb.ring->arity();

    BadSet bad;
    bad.parameter_ring = gb.ring->parameter_ring();
    MonomialOrder tord{gb.order.inner_t, OrderKind::Lex, OrderKind::Lex};

    auto push_unique = [&](Polynomial h) {
        h = h.content_normalized();
        for (const auto& existing : bad.polys)
            if (existing == h) return;
        bad.polys.push_back(std::move(h));
    };

    for (const auto& g : gb.elements) {
        std::vector<std::pair<Monomial, std::vector<Term>>> groups;
        for (const auto& t : g.terms()) {
            Monomial xpart = t.mono.slice(0, split);
            Monomial tpart = t.mono.slice(split, arity);
            bool found = false;
            for (auto& [key, ts] : groups) {
                if (key == xpart) {
                    ts.push_back({tpart, t.coeff});
                    found = true;
                    break;
                }
            }
            if (!found) groups.push_back({xpart, {{tpart, t.coeff}}});
        }
        for (auto& [key, ts] : groups) {
            Polynomial coeff = Polynomial::from_terms(bad.parameter_ring, tord, ts);
            if (coeff.is_zero() || coeff.is_constant()) continue;
            push_unique(std::move(coeff));
        }
    }
    return bad;
}

BadSetCheck avoids_bad_set(const std::map<std::string, Rat>& point, const BadSet& bad) {
    for (const auto& name : bad.parameter_ring->names()) {
        if (!point.count(name))
            throw std::invalid_argument("avoids_bad_set: missing assignment for " + name);
    }
    for (const auto& h : bad.polys) {
        Polynomial v = h.evaluate(point);
        if (!v.is_constant())
            throw std::logic_error("avoids_bad_set: evaluation left free variables");
        if (v.constant_value().is_zero()) return {false, h};
    }
    return {true, std::nullopt};
}

}  // namespace polyid
