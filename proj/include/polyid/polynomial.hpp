#ifndef POLYID_POLYNOMIAL_HPP
#define POLYID_POLYNOMIAL_HPP

#include "polyid/monomial.hpp"
#include "polyid/order.hpp"
#include "polyid/rational.hpp"
#include "polyid/ring.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyid {

struct Term {
    Monomial mono;
    Rat coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept strictly descending under the polynomial's monomial
/// order; no zero coefficients are stored.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(RingPtr ring, MonomialOrder ord);

    static Polynomial zero(RingPtr ring, MonomialOrder ord);
    static Polynomial constant(RingPtr ring, MonomialOrder ord, Rat c);
    static Polynomial variable(RingPtr ring, MonomialOrder ord, std::size_t index);
    static Polynomial variable(RingPtr ring, MonomialOrder ord, const std::string& name);
    /// Normalizes: merges duplicate monomials, drops zeros, sorts.
    static Polynomial from_terms(RingPtr ring, MonomialOrder ord, std::vector<Term> terms);
    /// Fast path: terms must already be strictly descending under ord with
    /// no zero coefficients.
    static Polynomial from_sorted(RingPtr ring, MonomialOrder ord, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const MonomialOrder& order() const { return ord_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || terms_[0].mono.is_one(); }

    const Term& leading_term() const;
    const Monomial& leading_monomial() const { return leading_term().mono; }
    const Rat& leading_coeff() const { return leading_term().coeff; }
    std::uint64_t total_degree() const;

    Rat coeff_of(const Monomial& m) const;
    Rat constant_value() const;  // pre: is_constant()

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rat& c) const;
    friend Polynomial operator*(const Rat& c, const Polynomial& p) { return p * c; }
    Polynomial operator+(const Rat& c) const;
    Polynomial operator-(const Rat& c) const;

    Polynomial& operator+=(const Polynomial& o) { *this = *this + o; return *this; }
    Polynomial& operator-=(const Polynomial& o) { *this = *this - o; return *this; }
    Polynomial& operator*=(const Polynomial& o) { *this = *this * o; return *this; }

    /// this * (c * m), a single-term product (no re-sorting needed).
    Polynomial mul_term(const Monomial& m, const Rat& c) const;

    /// Destructive fused update: *this -= g * (c * m). Untouched terms are
    /// moved, not copied; the workhorse of polynomial reduction.
    void sub_mul(const Polynomial& g, const Monomial& m, const Rat& c);

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Same terms re-sorted under a different order.
    Polynomial with_order(MonomialOrder ord) const;

    /// Exact partial substitution. Assigned variables are dropped from the
    /// ring; the result lives in the restricted ring (constant polynomial
    /// over the empty ring when everything is assigned).
    Polynomial evaluate(const std::map<std::string, Rat>& assignment) const;

    /// Divide by rational content and normalize the leading coefficient's
    /// sign: integer coefficients with gcd 1, positive leading coefficient.
    Polynomial content_normalized() const;
    /// Leading coefficient scaled to 1.
    Polynomial monic() const;

    /// Canonical text: terms in descending order, explicit '*', '^' powers.
    std::string str() const;

private:
    void assert_compatible(const Polynomial& o) const;

    RingPtr ring_;
    MonomialOrder ord_;
    std::vector<Term> terms_;
};

/// Remainder of multivariate division of p by the divisors: no term of the
/// result is divisible by any divisor's leading monomial, and p - result
/// lies in the ideal generated by the divisors.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& divisors,
                       const MonomialOrder& ord);

/// Division with quotient tracking: p = sum q_i * d_i + r.
struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};
DivisionResult divide(const Polynomial& p, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& ord);

/// S(p, q) = (L/LT(p)) p - (L/LT(q)) q with L = lcm of leading monomials.
Polynomial s_polynomial(const Polynomial& p, const Polynomial& q, const MonomialOrder& ord);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace polyid

#endif
