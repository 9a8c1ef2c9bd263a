#include "polyid/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace polyid {

Polynomial::Polynomial(RingPtr ring, MonomialOrder ord)
    : ring_(std::move(ring)), ord_(ord) {}

Polynomial Polynomial::zero(RingPtr ring, MonomialOrder ord) {
    return Polynomial(std::move(ring), ord);
}

Polynomial Polynomial::constant(RingPtr ring, MonomialOrder ord, Rat c) {
    Polynomial p(std::move(ring), ord);
    if (!c.is_zero()) p.terms_.push_back({Monomial(p.ring_->arity()), std::move(c)});
    return p;
}

Polynomial Polynomial::variable(RingPtr ring, MonomialOrder ord, std::size_t index) {
    if (index >= ring->arity()) throw std::invalid_argument("Polynomial: variable index");
    Polynomial p(std::move(ring), ord);
    p.terms_.push_back({Monomial::unit_variable(p.ring_->arity(), index), Rat(1)});
    return p;
}

Polynomial Polynomial::variable(RingPtr ring, MonomialOrder ord, const std::string& name) {
    auto idx = ring->index_of(name);
    if (!idx) throw std::invalid_argument("Polynomial: unknown variable " + name);
    return variable(std::move(ring), ord, *idx);
}

Polynomial Polynomial::from_terms(RingPtr ring, MonomialOrder ord, std::vector<Term> terms) {
    Polynomial p(std::move(ring), ord);
    const std::size_t split = p.ring_->split_or_arity();
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
        return mono_greater(a.mono, b.mono, ord, split);
    });
    for (auto& t : terms) {
        if (t.mono.arity() != p.ring_->arity())
            throw std::invalid_argument("Polynomial: monomial arity mismatch");
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        } else if (!t.coeff.is_zero()) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Polynomial Polynomial::from_sorted(RingPtr ring, MonomialOrder ord, std::vector<Term> terms) {
    Polynomial p(std::move(ring), ord);
    p.terms_ = std::move(terms);
    return p;
}

const Term& Polynomial::leading_term() const {
    if (terms_.empty()) throw std::domain_error("Polynomial: leading term of zero");
    return terms_[0];
}

std::uint64_t Polynomial::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

Rat Polynomial::coeff_of(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return Rat(0);
}

Rat Polynomial::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::domain_error("Polynomial: not a constant");
    return terms_[0].coeff;
}

void Polynomial::assert_compatible(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("Polynomial: ring mismatch");
    if (!(ord_ == o.ord_)) throw std::invalid_argument("Polynomial: order mismatch");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    assert_compatible(o);
    Polynomial r(ring_, ord_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    const std::size_t split = ring_->split_or_arity();
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        Cmp c = cmp_monomials(terms_[i].mono, o.terms_[j].mono, ord_, split);
        if (c == Cmp::Greater) {
            r.terms_.push_back(terms_[i++]);
        } else if (c == Cmp::Less) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Rat s = terms_[i].coeff + o.terms_[j].coeff;
            if (!s.is_zero()) r.terms_.push_back({terms_[i].mono, std::move(s)});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    assert_compatible(o);
    if (is_zero() || o.is_zero()) return zero(ring_, ord_);
    // Accumulate via hash map, then sort once.
    std::unordered_map<Monomial, Rat, Monomial::Hash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            Monomial m = a.mono * b.mono;
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), a.coeff * b.coeff);
            else
                it->second += a.coeff * b.coeff;
        }
    }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) ts.push_back({m, std::move(c)});
    return from_terms(ring_, ord_, std::move(ts));
}

Polynomial Polynomial::operator*(const Rat& c) const {
    if (c.is_zero()) return zero(ring_, ord_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Polynomial Polynomial::operator+(const Rat& c) const {
    return *this + constant(ring_, ord_, c);
}
Polynomial Polynomial::operator-(const Rat& c) const {
    return *this + constant(ring_, ord_, -c);
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rat& c) const {
    if (c.is_zero()) return zero(ring_, ord_);
    Polynomial r(ring_, ord_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;  // multiplying by a monomial preserves the ordering
}

void Polynomial::sub_mul(const Polynomial& g, const Monomial& m, const Rat& c) {
    if (g.is_zero() || c.is_zero()) return;
    const std::size_t split = ring_->split_or_arity();
    std::vector<Term> out;
    out.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    Monomial gm = g.terms_[0].mono * m;
    while (i < terms_.size() && j < g.terms_.size()) {
        Cmp cm = cmp_monomials(terms_[i].mono, gm, ord_, split);
        if (cm == Cmp::Greater) {
            out.push_back(std::move(terms_[i++]));
        } else if (cm == Cmp::Less) {
            out.push_back({std::move(gm), g.terms_[j].coeff * (-c)});
            if (++j < g.terms_.size()) gm = g.terms_[j].mono * m;
        } else {
            Rat s = std::move(terms_[i].coeff);
            s -= g.terms_[j].coeff * c;
            if (!s.is_zero()) out.push_back({std::move(terms_[i].mono), std::move(s)});
            ++i;
            if (++j < g.terms_.size()) gm = g.terms_[j].mono * m;
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
    for (; j < g.terms_.size(); ++j) {
        out.push_back({std::move(gm), g.terms_[j].coeff * (-c)});
        if (j + 1 < g.terms_.size()) gm = g.terms_[j + 1].mono * m;
    }
    terms_ = std::move(out);
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    if (ord_ == o.ord_) {
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
                return false;
        return true;
    }
    return with_order(ord_) == o.with_order(ord_);
}

Polynomial Polynomial::with_order(MonomialOrder ord) const {
    Polynomial r(ring_, ord);
    r.terms_ = terms_;
    const std::size_t split = ring_->split_or_arity();
    std::sort(r.terms_.begin(), r.terms_.end(), [&](const Term& a, const Term& b) {
        return mono_greater(a.mono, b.mono, ord, split);
    });
    return r;
}

Polynomial Polynomial::evaluate(const std::map<std::string, Rat>& assignment) const {
    std::vector<std::optional<Rat>> vals(ring_->arity());
    for (const auto& [name, value] : assignment) {
        auto idx = ring_->index_of(name);
        if (!idx) throw std::invalid_argument("evaluate: unknown variable " + name);
        vals[*idx] = value;
    }
    std::vector<bool> keep(ring_->arity());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = !vals[i].has_value();
    RingPtr sub = ring_->restrict(keep);

    std::vector<std::size_t> new_index(ring_->arity(), 0);
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < keep.size(); ++i)
            if (keep[i]) new_index[i] = k++;
    }

    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Rat c = t.coeff;
        std::vector<Monomial::Exp> e(sub->arity(), 0);
        for (std::size_t i = 0; i < ring_->arity(); ++i) {
            Monomial::Exp ex = t.mono.exp(i);
            if (ex == 0) continue;
            if (vals[i]) {
                Rat pw(1);
                Rat base = *vals[i];
                for (Monomial::Exp k = 0; k < ex; ++k) pw *= base;
                c *= pw;
            } else {
                e[new_index[i]] = ex;
            }
        }
        if (!c.is_zero()) out.push_back({Monomial(std::move(e)), std::move(c)});
    }
    return from_terms(sub, ord_, std::move(out));
}

Polynomial Polynomial::content_normalized() const {
    if (is_zero()) return *this;
    // lcm of denominators, then gcd of numerators.
    mpz_class den_lcm = 1;
    for (const auto& t : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                                         t.coeff.denominator().get_mpz_t());
    mpz_class num_gcd = 0;
    for (const auto& t : terms_) {
        mpz_class scaled = t.coeff.numerator() * (den_lcm / t.coeff.denominator());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rat scale{mpq_class(den_lcm, num_gcd)};
    if (leading_coeff().sign() < 0) scale = -scale;
    return *this * scale;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * leading_coeff().inverse();
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rat c = t.coeff;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        if (t.mono.is_one()) {
            os << c.str();
            continue;
        }
        bool printed = false;
        if (!c.is_one()) {
            os << c.str();
            printed = true;
        }
        for (std::size_t i = 0; i < t.mono.arity(); ++i) {
            auto e = t.mono.exp(i);
            if (e == 0) continue;
            if (printed) os << "*";
            os << ring_->name(i);
            if (e > 1) os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

DivisionResult divide(const Polynomial& p, const std::vector<Polynomial>& divisors,
                      const MonomialOrder& ord) {
    if (divisors.empty()) throw std::invalid_argument("divide: empty divisor list");
    for (const auto& d : divisors) {
        if (d.is_zero()) throw std::invalid_argument("divide: zero divisor");
        if (!same_ring(d.ring(), p.ring()))
            throw std::invalid_argument("divide: ring mismatch");
    }
    const std::size_t split = p.ring()->split_or_arity();
    Polynomial h = p.order() == ord ? p : p.with_order(ord);
    std::vector<Polynomial> work;
    work.reserve(divisors.size());
    for (const auto& d : divisors) work.push_back(d.order() == ord ? d : d.with_order(ord));

    DivisionResult res;
    res.quotients.assign(divisors.size(), Polynomial::zero(p.ring(), ord));
    std::vector<Term> rem;
    while (!h.is_zero()) {
        const Term& lt = h.leading_term();
        bool reduced = false;
        for (std::size_t k = 0; k < work.size(); ++k) {
            const Term& dt = work[k].leading_term();
            if (!dt.mono.divides(lt.mono)) continue;
            Monomial q = lt.mono.divide_exact(dt.mono);
            Rat c = lt.coeff / dt.coeff;
            res.quotients[k] += Polynomial::from_terms(p.ring(), ord, {{q, c}});
            h.sub_mul(work[k], q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.push_back(lt);
            h = Polynomial::from_sorted(
                p.ring(), ord,
                std::vector<Term>(h.terms().begin() + 1, h.terms().end()));
        }
    }
    res.remainder = Polynomial::from_sorted(p.ring(), ord, std::move(rem));
    return res;
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& divisors,
                       const MonomialOrder& ord) {
    if (divisors.empty()) return p.order() == ord ? p : p.with_order(ord);
    for (const auto& d : divisors) {
        if (d.is_zero()) throw std::invalid_argument("normal_form: zero divisor");
        if (!same_ring(d.ring(), p.ring()))
            throw std::invalid_argument("normal_form: ring mismatch");
    }
    Polynomial h = p.order() == ord ? p : p.with_order(ord);
    std::vector<Polynomial> reordered;
    reordered.reserve(divisors.size());
    std::vector<const Polynomial*> work;
    work.reserve(divisors.size());
    for (const auto& d : divisors) {
        if (d.order() == ord) {
            work.push_back(&d);
        } else {
            reordered.push_back(d.with_order(ord));
            work.push_back(&reordered.back());
        }
    }
    // Tail buffer: terms already known irreducible (descending prefix).
    std::vector<Term> rem;
    while (!h.is_zero()) {
        const Term& lt = h.leading_term();
        bool reduced = false;
        for (const Polynomial* d : work) {
            const Term& dt = d->leading_term();
            if (!dt.mono.divides(lt.mono)) continue;
            Monomial q = lt.mono.divide_exact(dt.mono);
            Rat c = lt.coeff / dt.coeff;
            h.sub_mul(*d, q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.push_back(lt);
            h = Polynomial::from_sorted(
                p.ring(), ord,
                std::vector<Term>(h.terms().begin() + 1, h.terms().end()));
        }
    }
    return Polynomial::from_sorted(p.ring(), ord, std::move(rem));
}

Polynomial s_polynomial(const Polynomial& p, const Polynomial& q, const MonomialOrder& ord) {
    if (p.is_zero() || q.is_zero())
        throw std::invalid_argument("s_polynomial: zero input");
    if (!same_ring(p.ring(), q.ring()))
        throw std::invalid_argument("s_polynomial: ring mismatch");
    Polynomial a = p.order() == ord ? p : p.with_order(ord);
    Polynomial b = q.order() == ord ? q : q.with_order(ord);
    Monomial L = Monomial::lcm(a.leading_monomial(), b.leading_monomial());
    Polynomial s1 = a.mul_term(L.divide_exact(a.leading_monomial()),
                               a.leading_coeff().inverse());
    Polynomial s2 = b.mul_term(L.divide_exact(b.leading_monomial()),
                               b.leading_coeff().inverse());
    return s1 - s2;
}

}  // namespace polyid
