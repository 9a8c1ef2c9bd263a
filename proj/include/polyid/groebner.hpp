#ifndef POLYID_GROEBNER_HPP
#define POLYID_GROEBNER_HPP

#include "polyid/polynomial.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyid {

enum class PairSelection {
    Normal,  // minimal lcm under the active order
    Sugar,   // minimal sugar degree, ties by lcm
};

struct GroebnerLimits {
    std::uint64_t max_pairs = 2'000'000;  // S-pairs processed
    double max_seconds = 600.0;
    PairSelection selection = PairSelection::Normal;
    // Mod-p discovery with CRT lifting and exact verification over Q; the
    // primes only steer the search, never the result.
    bool modular_prescreen = true;
};

enum class GBStatus { Complete, PairLimit, TimeLimit };

struct GBStats {
    std::uint64_t pairs_processed = 0;
    std::uint64_t pairs_discarded = 0;   // by Gebauer-Moller criteria
    std::uint64_t reductions_to_zero = 0;
    double wall_seconds = 0.0;
};

struct GroebnerBasis {
    RingPtr ring;
    MonomialOrder order;
    std::vector<Polynomial> elements;
    bool reduced = false;
};

struct GroebnerResult {
    GroebnerBasis basis;   // partial state when status != Complete
    GBStatus status = GBStatus::Complete;
    GBStats stats;
    bool ok() const { return status == GBStatus::Complete; }
};

/// Buchberger's algorithm under `ord` with sugar pair selection and the
/// Gebauer-Moller criteria. Inputs are content-normalized and
/// inter-reduced first. On resource exhaustion returns the partial basis
/// with a non-Complete status.
GroebnerResult buchberger(const std::vector<Polynomial>& generators, MonomialOrder ord,
                          const GroebnerLimits& limits = {});

/// Unique reduced basis: minimal, tail-reduced, content-normalized
/// (primitive integer coefficients, positive leading coefficient),
/// elements sorted descending by leading monomial.
GroebnerBasis reduce_basis(const GroebnerBasis& gb);

/// Test helper and invariant check: every S-polynomial of basis pairs
/// reduces to zero modulo the basis.
bool is_groebner(const GroebnerBasis& gb);

/// The non-constant t-coefficient polynomials of a block-order basis:
/// terms of each element are grouped by x-monomial, and each group's
/// coefficient (a polynomial in the parameters) is collected, deduplicated
/// up to rational scalar.
struct BadSet {
    RingPtr parameter_ring;
    std::vector<Polynomial> polys;
};
BadSet extract_bad_set(const GroebnerBasis& gb);

struct BadSetCheck {
    bool avoids = false;
    std::optional<Polynomial> vanishing;  // a witness element when !avoids
};
/// Avoids iff every element of `bad` is non-zero at `point` (which must
/// assign all parameter variables).
BadSetCheck avoids_bad_set(const std::map<std::string, Rat>& point, const BadSet& bad);

/// Exact dimension/degree certificate for an instantiated system.
///
/// Every element the search constructs is an exact combination of the
/// inputs, so its leading term bounds the quotient dimension from above via
/// the staircase count; the provided pairwise-distinct exact solutions
/// bound it from below. When the bounds meet the search stops early: the
/// degree is certified and the family is proven to be a Groebner basis
/// (staircase monomials are a basis of the quotient). Without a meeting
/// point it falls back to a fully verified basis computation.
struct DegreeCertificate {
    bool ok = false;  // false on resource exhaustion
    bool zero_dimensional = false;
    std::uint64_t degree = 0;
    GroebnerBasis basis;  // proven Groebner basis of the input ideal
    GBStats stats;
    std::string method;  // "sandwich" | "groebner"
};

DegreeCertificate certified_degree(
    const std::vector<Polynomial>& system,
    const std::vector<std::map<std::string, Rat>>& distinct_solutions,
    const GroebnerLimits& limits = {});

}  // namespace polyid

#endif
