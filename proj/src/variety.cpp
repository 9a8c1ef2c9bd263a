#include "polyid/variety.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyid {

namespace {

std::vector<Monomial> minimal_leading_monomials(const GroebnerBasis& gb) {
    std::vector<Monomial> lms;
    for (const auto& g : gb.elements) {
        if (g.is_zero()) continue;
        lms.push_back(g.leading_monomial());
    }
    std::vector<Monomial> minimal;
    for (const auto& m : lms) {
        bool covered = false;
        for (const auto& k : lms)
            if (k != m && k.divides(m)) {
                covered = true;
                break;
            }
        if (!covered && std::find(minimal.begin(), minimal.end(), m) == minimal.end())
            minimal.push_back(m);
    }
    return minimal;
}

bool divisible_by_any(const Monomial& m, const std::vector<Monomial>& lms) {
    for (const auto& l : lms)
        if (l.divides(m)) return true;
    return false;
}

void standard_dfs(const Monomial& m, std::size_t min_var, const std::vector<Monomial>& lms,
                  std::vector<Monomial>& out, std::uint64_t cap) {
    if (divisible_by_any(m, lms)) return;
    if (out.size() >= cap)
        throw std::runtime_error("standard monomial enumeration exceeded safety cap");
    out.push_back(m);
    for (std::size_t v = min_var; v < m.arity(); ++v)
        standard_dfs(m * Monomial::unit_variable(m.arity(), v), v, lms, out, cap);
}

}  // namespace

bool is_zero_dimensional(const GroebnerBasis& gb) {
    if (gb.ring->has_parameters())
        throw std::invalid_argument("is_zero_dimensional: ring has parameters");
    // The trivial ideal <1> has an empty variety: zero-dimensional degree 0
    // staircase; handled by the pure-power rule below (1 divides everything).
    const std::size_t n = gb.ring->arity();
    auto lms = minimal_leading_monomials(gb);
    for (const auto& l : lms)
        if (l.is_one()) return true;
    for (std::size_t v = 0; v < n; ++v) {
        bool found = false;
        for (const auto& l : lms) {
            if (l.exp(v) == 0) continue;
            bool pure = true;
            for (std::size_t w = 0; w < n; ++w)
                if (w != v && l.exp(w) != 0) {
                    pure = false;
                    break;
                }
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

VarietySummary analyze_variety(const GroebnerBasis& gb) {
    VarietySummary s;
    s.zero_dimensional = is_zero_dimensional(gb);
    if (!s.zero_dimensional) return s;
    auto lms = minimal_leading_monomials(gb);
    std::vector<Monomial> standard;
    standard_dfs(Monomial(gb.ring->arity()), 0, lms, standard, 50'000'000);
    s.degree = standard.size();
    s.standard_monomials = std::move(standard);
    return s;
}

std::uint64_t degree(const GroebnerBasis& gb) {
    if (!is_zero_dimensional(gb))
        throw std::invalid_argument("degree: ideal is not zero-dimensional");
    return *analyze_variety(gb).degree;
}

bool verify_exact_solution(const std::vector<Polynomial>& system,
                           const std::map<std::string, Rat>& point) {
    for (const auto& f : system) {
        for (const auto& name : f.ring()->names())
            if (!point.count(name))
                throw std::invalid_argument("verify_exact_solution: missing assignment for " +
                                            name);
        Polynomial v = f.evaluate(point);
        if (!v.is_constant() || !v.constant_value().is_zero()) return false;
    }
    return true;
}

double residual_at(const Polynomial& p,
                   const std::map<std::string, std::complex<double>>& point) {
    std::vector<std::complex<double>> vals(p.ring()->arity());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        auto it = point.find(p.ring()->name(i));
        if (it == point.end())
            throw std::invalid_argument("residual_at: missing assignment");
        vals[i] = it->second;
    }
    double max_coeff = 0.0;
    std::complex<double> acc = 0.0;
    for (const auto& t : p.terms()) {
        double c = t.coeff.to_double();
        max_coeff = std::max(max_coeff, std::fabs(c));
        std::complex<double> term = c;
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (Monomial::Exp e = 0; e < t.mono.exp(i); ++e) term *= vals[i];
        acc += term;
    }
    if (max_coeff == 0.0) return 0.0;
    return std::abs(acc) / max_coeff;
}

// ---------------------------------------------------------------------------
// Univariate machinery (dense coefficient vectors over Q, index = power).

namespace {

using UPoly = std::vector<Rat>;  // trailing entry non-zero unless empty

UPoly trim(UPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly uderiv(const UPoly& p) {
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
    return trim(std::move(d));
}

UPoly umonic(UPoly p) {
    p = trim(std::move(p));
    if (p.empty()) return p;
    Rat inv = p.back().inverse();
    for (auto& c : p) c *= inv;
    return p;
}

UPoly urem(UPoly a, const UPoly& b) {
    a = trim(std::move(a));
    if (udeg(b) < 0) throw std::domain_error("urem: division by zero polynomial");
    while (udeg(a) >= udeg(b)) {
        Rat f = a.back() / b.back();
        int shift = udeg(a) - udeg(b);
        for (int i = 0; i <= udeg(b); ++i) a[i + shift] -= f * b[i];
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

UPoly uquot(UPoly a, const UPoly& b) {
    a = trim(std::move(a));
    if (udeg(b) < 0) throw std::domain_error("uquot: division by zero polynomial");
    UPoly q(std::max(0, udeg(a) - udeg(b) + 1), Rat(0));
    while (udeg(a) >= udeg(b)) {
        Rat f = a.back() / b.back();
        int shift = udeg(a) - udeg(b);
        q[shift] = f;
        for (int i = 0; i <= udeg(b); ++i) a[i + shift] -= f * b[i];
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return trim(std::move(q));
}

UPoly ugcd(UPoly a, UPoly b) {
    a = umonic(std::move(a));
    b = umonic(std::move(b));
    while (!b.empty()) {
        UPoly r = umonic(urem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Yun's algorithm: p = prod f_i^i with f_i squarefree pairwise coprime.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(UPoly p) {
    std::vector<std::pair<UPoly, int>> out;
    p = umonic(std::move(p));
    if (udeg(p) < 1) return out;
    UPoly dp = uderiv(p);
    UPoly g = ugcd(p, dp);
    if (udeg(g) == 0) {
        out.push_back({p, 1});
        return out;
    }
    UPoly w = uquot(p, g);
    UPoly y = uquot(dp, g);
    int mult = 1;
    while (udeg(w) > 0) {
        // z = y - w'
        UPoly wd = uderiv(w);
        UPoly z(std::max(y.size(), wd.size()), Rat(0));
        for (std::size_t i = 0; i < y.size(); ++i) z[i] += y[i];
        for (std::size_t i = 0; i < wd.size(); ++i) z[i] -= wd[i];
        z = trim(std::move(z));
        UPoly f = ugcd(w, z);
        if (udeg(f) > 0) out.push_back({f, mult});
        w = uquot(w, f);
        y = uquot(z, f);
        ++mult;
    }
    return out;
}

// Durand-Kerner simultaneous iteration on a monic complex polynomial.
std::vector<std::complex<double>> dk_roots(std::vector<std::complex<double>> coeffs,
                                           int max_iter) {
    // coeffs[i] is the coefficient of z^i; leading must be ~1 (monic).
    int n = static_cast<int>(coeffs.size()) - 1;
    if (n <= 0) return {};
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(coeffs[i]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> z(n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        acc *= seed;
        z[k] = acc * radius;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = coeffs[n];
        for (int i = n - 1; i >= 0; --i) v = v * x + coeffs[i];
        return v;
    };
    for (int iter = 0; iter < max_iter; ++iter) {
        double moved = 0.0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            std::complex<double> delta = eval(z[k]) / denom;
            z[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

std::vector<std::complex<double>> complex_roots(const std::vector<std::complex<double>>& cs,
                                                int max_iter) {
    // Trim negligible leading coefficients relative to the largest.
    double big = 0.0;
    for (const auto& c : cs) big = std::max(big, std::abs(c));
    if (big == 0.0) return {};
    std::vector<std::complex<double>> c = cs;
    while (c.size() > 1 && std::abs(c.back()) < 1e-12 * big) c.pop_back();
    int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    std::vector<std::complex<double>> monic(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) monic[i] = c[i] / c.back();
    return dk_roots(std::move(monic), max_iter);
}

}  // namespace

SolveOutcome solve_numeric(const std::vector<Polynomial>& system, const SolveConfig& cfg) {
    SolveOutcome out;
    if (system.empty()) {
        out.message = "empty system";
        return out;
    }
    const RingPtr& ring = system.front().ring();
    if (ring->has_parameters()) {
        out.message = "system has symbolic parameters";
        return out;
    }
    GroebnerLimits lim;
    lim.max_seconds = cfg.gb_seconds;
    GroebnerResult gr = buchberger(system, MonomialOrder::lex(), lim);
    if (!gr.ok()) {
        out.message = "lex basis computation hit resource limits";
        return out;
    }
    GroebnerBasis gb = reduce_basis(gr.basis);
    if (gb.elements.empty()) {
        out.message = "zero ideal: solution set is all of affine space";
        return out;
    }
    if (!gb.elements.empty() && gb.elements.front().is_constant()) {
        out.ok = true;  // inconsistent system, no solutions
        out.message = "no solutions (ideal contains a unit)";
        return out;
    }
    if (!is_zero_dimensional(gb)) {
        out.message = "ideal is not zero-dimensional";
        return out;
    }

    const std::size_t n = ring->arity();
    // Lex with x_0 > x_1 > ... : assign from the last (most eliminated)
    // variable upward.
    struct Partial {
        std::vector<std::complex<double>> values;  // by ring index; NaN = unset
    };
    std::vector<Partial> fronts;
    fronts.push_back({std::vector<std::complex<double>>(
        n, std::complex<double>(std::nan(""), 0.0))});
    auto assigned = [&](const Partial& p, std::size_t v) {
        return !std::isnan(p.values[v].real());
    };

    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t v = n - 1 - step;

        if (step == 0) {
            // Eliminant stage: exact squarefree decomposition of the
            // univariate element in the last variable, numeric roots of the
            // squarefree parts only.
            const Polynomial* eliminant = nullptr;
            for (const auto& g : gb.elements) {
                bool univ = true;
                for (const auto& t : g.terms())
                    for (std::size_t w = 0; w < n; ++w)
                        if (w != v && t.mono.exp(w) != 0) {
                            univ = false;
                            break;
                        }
                if (univ && g.total_degree() > 0) {
                    eliminant = &g;
                    break;
                }
            }
            if (eliminant) {
                UPoly up(eliminant->total_degree() + 1, Rat(0));
                for (const auto& t : eliminant->terms()) up[t.mono.exp(v)] = t.coeff;
                std::vector<Partial> next;
                for (const auto& [factor, mult] : squarefree_decomposition(up)) {
                    std::vector<std::complex<double>> cc(factor.size());
                    for (std::size_t i = 0; i < factor.size(); ++i)
                        cc[i] = factor[i].to_double();
                    for (const auto& r : complex_roots(cc, cfg.max_iterations)) {
                        Partial np = fronts.front();
                        np.values[v] = r;
                        next.push_back(std::move(np));
                    }
                    (void)mult;  // multiplicity acknowledged; distinct points kept
                }
                if (!next.empty()) {
                    fronts = std::move(next);
                    continue;
                }
            }
        }

        std::vector<Partial> next;
        for (const auto& part : fronts) {
            // Candidate basis elements: support within assigned vars + v.
            std::vector<std::vector<std::complex<double>>> candidates;
            for (const auto& g : gb.elements) {
                bool usable = true;
                Monomial::Exp vmax = 0;
                for (const auto& t : g.terms()) {
                    for (std::size_t w = 0; w < n; ++w) {
                        if (t.mono.exp(w) == 0) continue;
                        if (w == v) {
                            vmax = std::max(vmax, t.mono.exp(w));
                        } else if (!assigned(part, w)) {
                            usable = false;
                            break;
                        }
                    }
                    if (!usable) break;
                }
                if (!usable || vmax == 0) continue;
                // Collapse to a univariate complex polynomial in v.
                std::vector<std::complex<double>> uc(vmax + 1, 0.0);
                for (const auto& t : g.terms()) {
                    std::complex<double> c = t.coeff.to_double();
                    for (std::size_t w = 0; w < n; ++w) {
                        if (w == v || t.mono.exp(w) == 0) continue;
                        for (Monomial::Exp e = 0; e < t.mono.exp(w); ++e)
                            c *= part.values[w];
                    }
                    uc[t.mono.exp(v)] += c;
                }
                candidates.push_back(std::move(uc));
            }
            if (candidates.empty()) {
                out.message =
                    "lex basis is not triangular at variable " + ring->name(v) +
                    "; a random linear change of coordinates may be required";
                return out;
            }
            // Prefer the lowest-degree non-degenerate candidate.
            std::sort(candidates.begin(), candidates.end(),
                      [](const auto& a, const auto& b) { return a.size() < b.size(); });
            std::vector<std::complex<double>> roots;
            for (const auto& uc : candidates) {
                roots = complex_roots(uc, cfg.max_iterations);
                if (!roots.empty()) break;
            }
            if (roots.empty()) {
                out.message = "root extraction failed at variable " + ring->name(v);
                return out;
            }
            for (const auto& r : roots) {
                Partial np = part;
                np.values[v] = r;
                next.push_back(std::move(np));
            }
        }
        fronts = std::move(next);
        if (fronts.size() > 4096) {
            out.message = "solution branching exceeded safety cap";
            return out;
        }
    }

    // Residual filter and dedup.
    std::vector<NumericSolution> sols;
    for (const auto& part : fronts) {
        NumericSolution s;
        for (std::size_t i = 0; i < n; ++i) s.assignment[ring->name(i)] = part.values[i];
        double res = 0.0;
        for (const auto& f : system) res = std::max(res, residual_at(f, s.assignment));
        s.residual = res;
        if (res > cfg.tolerance) continue;
        bool dup = false;
        for (const auto& seen : sols) {
            double dist = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dist = std::max(dist, std::abs(seen.assignment.at(ring->name(i)) -
                                               part.values[i]));
            if (dist < 1e-7) {
                dup = true;
                break;
            }
        }
        if (!dup) sols.push_back(std::move(s));
    }
    out.solutions = std::move(sols);
    out.ok = true;
    return out;
}

}  // namespace polyid
