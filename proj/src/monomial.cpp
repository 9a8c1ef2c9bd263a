#include "polyid/monomial.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace polyid {

Monomial::Monomial(std::vector<Exp> e) : e_(std::move(e)) {
    deg_ = std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
}

Monomial Monomial::unit_variable(std::size_t arity, std::size_t var, Exp power) {
    Monomial m(arity);
    m.e_[var] = power;
    m.deg_ = power;
    return m;
}

std::uint64_t Monomial::degree_range(std::size_t lo, std::size_t hi) const {
    std::uint64_t d = 0;
    for (std::size_t i = lo; i < hi; ++i) d += e_[i];
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    if (arity() != o.arity()) throw std::invalid_argument("Monomial: arity mismatch");
    Monomial r(arity());
    for (std::size_t i = 0; i < e_.size(); ++i) {
        Exp s = e_[i] + o.e_[i];
        if (s < e_[i]) throw std::overflow_error("Monomial: exponent overflow");
        r.e_[i] = s;
    }
    r.deg_ = deg_ + o.deg_;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (arity() != o.arity()) throw std::invalid_argument("Monomial: arity mismatch");
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::divide_exact(const Monomial& o) const {
    if (arity() != o.arity()) throw std::invalid_argument("Monomial: arity mismatch");
    Monomial r(arity());
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (o.e_[i] > e_[i]) throw std::domain_error("Monomial: inexact division");
        r.e_[i] = e_[i] - o.e_[i];
    }
    r.deg_ = deg_ - o.deg_;
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    if (a.arity() != b.arity()) throw std::invalid_argument("Monomial: arity mismatch");
    Monomial r(a.arity());
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < a.e_.size(); ++i) {
        r.e_[i] = a.e_[i] > b.e_[i] ? a.e_[i] : b.e_[i];
        d += r.e_[i];
    }
    r.deg_ = d;
    return r;
}

bool Monomial::coprime_with(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != 0 && o.e_[i] != 0) return false;
    return true;
}

Monomial Monomial::slice(std::size_t lo, std::size_t hi) const {
    Monomial r(hi - lo);
    std::uint64_t d = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        r.e_[i - lo] = e_[i];
        d += e_[i];
    }
    r.deg_ = d;
    return r;
}

std::size_t Monomial::Hash::operator()(const Monomial& m) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ m.arity();
    for (auto e : m.exponents()) {
        h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace polyid
