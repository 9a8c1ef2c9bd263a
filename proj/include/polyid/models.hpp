#ifndef POLYID_MODELS_HPP
#define POLYID_MODELS_HPP

#include "polyid/polynomial.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace polyid {

enum class Model { BTL, MNL3, MNL23, PL };

std::string model_name(Model m);
std::optional<Model> model_from_name(const std::string& s);

/// Model family plus mixing-probability regime. For known_p kinds `p1` is a
/// fixed constant baked into the system coefficients; unknown_p kinds have
/// p as a variable and p1 as a parameter.
struct ModelKind {
    Model model;
    bool known_p = false;
    Rat p1;  // meaningful iff known_p

    static ModelKind known(Model m, Rat p1v) { return {m, true, std::move(p1v)}; }
    static ModelKind unknown(Model m) { return {m, false, Rat(0)}; }

    std::string str() const;
};

/// Minimum item count for which the generic identifiability results hold.
int min_items(const ModelKind& kind);

/// Two-component mixture parameters. BTL/MNL kinds are normalized by
/// a1 = b1 = 1; PL by sum(a) = sum(b) = 1; all entries positive and
/// 0 < p1 < 1.
struct MixtureParams {
    std::vector<Rat> a, b;
    Rat p1;

    int n() const { return static_cast<int>(a.size()); }
};

/// Positivity check (all model kinds accept any positive scores for eta).
bool positive_scores(const MixtureParams& mp);
/// Full domain check for the given kind, including normalization.
void validate_params(const MixtureParams& mp, const ModelKind& kind);

/// Exact mixture probabilities. Populated per model: BTL -> pairwise,
/// MNL3 -> triplet, MNL23 -> pairwise + triplet, PL -> listwise.
struct EtaVector {
    std::map<std::pair<int, int>, Rat> pairwise;       // (chooser, other), 1-based
    std::map<std::array<int, 3>, Rat> triplet;         // (chooser, lo, hi)
    std::map<std::vector<int>, Rat> listwise;          // permutation of 1..n

    bool operator==(const EtaVector&) const = default;
};

EtaVector eta(const MixtureParams& mp, const ModelKind& kind);

/// Probability of the full ranking sigma (1-based item ids) under a single
/// component with scores theta.
Rat pl_ranking_probability(const std::vector<Rat>& theta, const std::vector<int>& sigma);

/// Probability that r is ranked first and i second under a single PL
/// component with scores summing to one: theta_r * theta_i / (1 - theta_r).
Rat pl_top_two(const std::vector<Rat>& theta, int r, int i);

/// A named closed-form solution of a parametric system, as a function of
/// the parameter assignment. Returns nullopt at degenerate parameters.
struct NamedTemplate {
    std::string id;
    std::function<std::optional<std::map<std::string, Rat>>(
        const std::map<std::string, Rat>&)>
        eval;
};

struct ParametricSystem {
    std::string id;
    RingPtr ring;  // [x-block | t-block]
    MonomialOrder order = MonomialOrder::block();
    std::vector<Polynomial> generators;
    unsigned expected_count = 0;  // the count ell certified by the framework
    std::vector<NamedTemplate> templates;
    std::function<std::map<std::string, Rat>(std::mt19937_64&)> draw_params;
    std::vector<std::string> notes;

    /// Exact substitution of the parameter block; zero generators dropped.
    std::vector<Polynomial> instantiate(const std::map<std::string, Rat>& witness,
                                        MonomialOrder inst_ord) const;
};

/// The parametric polynomial system for a model kind with n items,
/// including solution templates, the expected solution count, and a seeded
/// domain sampler.
ParametricSystem build_parametric(const ModelKind& kind, int n);

/// The instantiated system at concrete parameters (exact rationals).
std::vector<Polynomial> build_instantiated(const ModelKind& kind, int n,
                                           const MixtureParams& mp, MonomialOrder ord);

/// Parameter-block assignment (a_i, b_i, and p1 for unknown-p kinds).
std::map<std::string, Rat> parameter_assignment(const ModelKind& kind,
                                                const MixtureParams& mp);

struct KnownSolutions {
    std::vector<std::map<std::string, Rat>> solutions;
    std::optional<std::string> degeneracy;  // set when templates collide or blow up
};

/// The analytic solutions of the kind's system at the given parameters,
/// each exact; count equals expected_count when non-degenerate.
KnownSolutions known_solutions(const ModelKind& kind, const MixtureParams& mp);

/// The 2x2 linear step that extends an (n-1)-item solution by item n.
struct InductionStep {
    std::array<std::array<Rat, 2>, 2> A;
    std::array<Rat, 2> rhs;
    Rat det;
    std::array<Rat, 2> truth;  // the unique extension when det != 0
    bool degenerate = false;   // det == 0
};

/// `swapped` selects the component-swapped branch (PL unknown-p). Supported:
/// BTL/MNL3/MNL23 known-p, PL known-p and unknown-p.
InductionStep induction_step_matrix(const ModelKind& kind, const MixtureParams& mp,
                                    bool swapped = false);

/// The two distinct uniform-mixture parameterizations with identical
/// pairwise probabilities. Requires n >= 3, t > 0, t != 1.
std::pair<MixtureParams, MixtureParams> nonidentifiable_family(int n, const Rat& t);

/// Fixed witness parameters used by the reproduction suite.
MixtureParams suite_witness(const ModelKind& kind);

/// Seeded positive rational with numerator/denominator <= 1000.
Rat random_positive_rational(std::mt19937_64& rng);
/// Seeded rational strictly inside (0, 1).
Rat random_unit_rational(std::mt19937_64& rng);
/// Seeded parameter draw from the kind's domain (normalized).
MixtureParams random_params(const ModelKind& kind, int n, std::mt19937_64& rng);

}  // namespace polyid

#endif
