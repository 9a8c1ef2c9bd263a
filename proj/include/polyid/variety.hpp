#ifndef POLYID_VARIETY_HPP
#define POLYID_VARIETY_HPP

#include "polyid/groebner.hpp"
#include "polyid/polynomial.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyid {

/// Finiteness criterion: true iff every variable has a pure power among the
/// basis leading monomials. Requires a fully instantiated ring (no
/// parameter block).
bool is_zero_dimensional(const GroebnerBasis& gb);

struct VarietySummary {
    bool zero_dimensional = false;
    std::optional<std::uint64_t> degree;
    std::optional<std::vector<Monomial>> standard_monomials;
};

VarietySummary analyze_variety(const GroebnerBasis& gb);

/// Number of standard monomials = dim of the quotient algebra = number of
/// complex solutions counted with multiplicity. Pre: is_zero_dimensional.
std::uint64_t degree(const GroebnerBasis& gb);

struct NumericSolution {
    std::map<std::string, std::complex<double>> assignment;
    double residual = 0.0;
};

struct SolveConfig {
    double tolerance = 1e-9;
    int max_iterations = 400;
    double gb_seconds = 300.0;
};

struct SolveOutcome {
    std::vector<NumericSolution> solutions;
    bool ok = false;
    std::string message;  // failure detail (triangularization, timeouts, ...)
};

/// Numeric back-substitution through a lex basis of the system: roots of
/// the univariate eliminant (squarefree part, exact decomposition) extended
/// variable by variable. Diagnostic cross-check only; certificates rest on
/// exact degrees.
SolveOutcome solve_numeric(const std::vector<Polynomial>& system, const SolveConfig& cfg = {});

/// True iff every polynomial evaluates to exactly zero at the (complete)
/// rational point.
bool verify_exact_solution(const std::vector<Polynomial>& system,
                           const std::map<std::string, Rat>& point);

/// |f(point)| with coefficients normalized by the largest absolute
/// coefficient; used for numeric residuals.
double residual_at(const Polynomial& p,
                   const std::map<std::string, std::complex<double>>& point);

}  // namespace polyid

#endif
