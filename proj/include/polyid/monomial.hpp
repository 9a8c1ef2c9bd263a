#ifndef POLYID_MONOMIAL_HPP
#define POLYID_MONOMIAL_HPP

#include <cstdint>
#include <vector>

namespace polyid {

/// Dense exponent vector of fixed arity. Exponents are bounded machine
/// integers; multiplication checks for overflow.
class Monomial {
public:
    using Exp = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t arity) : e_(arity, 0) {}
    explicit Monomial(std::vector<Exp> e);

    static Monomial unit_variable(std::size_t arity, std::size_t var, Exp power = 1);

    std::size_t arity() const { return e_.size(); }
    Exp exp(std::size_t i) const { return e_[i]; }
    const std::vector<Exp>& exponents() const { return e_; }
    std::uint64_t total_degree() const { return deg_; }

    /// Total degree over the index range [lo, hi).
    std::uint64_t degree_range(std::size_t lo, std::size_t hi) const;

    bool is_one() const { return deg_ == 0; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    /// this / o; requires o.divides-free use: every exponent of o <= this.
    Monomial divide_exact(const Monomial& o) const;

    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool coprime_with(const Monomial& o) const;

    /// The x-block part of the monomial (exponents below split, padded with
    /// zeros in the t-positions dropped): used to group coefficients.
    Monomial slice(std::size_t lo, std::size_t hi) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    struct Hash {
        std::size_t operator()(const Monomial& m) const;
    };

private:
    std::vector<Exp> e_;
    std::uint64_t deg_ = 0;
};

}  // namespace polyid

#endif
