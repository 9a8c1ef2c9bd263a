#include "polyid/order.hpp"

#include <stdexcept>

namespace polyid {

namespace {

// Lex over [lo, hi): earlier variable with higher exponent wins.
Cmp cmp_lex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? Cmp::Greater : Cmp::Less;
    }
    return Cmp::Equal;
}

// Graded reverse lex over [lo, hi): higher total degree wins; on ties the
// monomial with the smaller exponent at the last differing variable wins.
Cmp cmp_grevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint64_t da = a.degree_range(lo, hi);
    std::uint64_t db = b.degree_range(lo, hi);
    if (da != db) return da > db ? Cmp::Greater : Cmp::Less;
    for (std::size_t i = hi; i-- > lo;) {
        if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i) ? Cmp::Greater : Cmp::Less;
    }
    return Cmp::Equal;
}

Cmp cmp_inner(const Monomial& a, const Monomial& b, OrderKind k, std::size_t lo,
              std::size_t hi) {
    switch (k) {
        case OrderKind::Lex:
            return cmp_lex(a, b, lo, hi);
        case OrderKind::GrevLex:
            return cmp_grevlex(a, b, lo, hi);
        default:
            throw std::invalid_argument("nested block orders are not supported");
    }
}

}  // namespace

Cmp cmp_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& ord,
                  std::size_t split) {
    if (a.arity() != b.arity())
        throw std::invalid_argument("cmp_monomials: arity mismatch");
    switch (ord.kind) {
        case OrderKind::Lex:
            return cmp_lex(a, b, 0, a.arity());
        case OrderKind::GrevLex:
            return cmp_grevlex(a, b, 0, a.arity());
        case OrderKind::Block: {
            Cmp cx = cmp_inner(a, b, ord.inner_x, 0, split);
            if (cx != Cmp::Equal) return cx;
            return cmp_inner(a, b, ord.inner_t, split, a.arity());
        }
    }
    return Cmp::Equal;
}

std::string MonomialOrder::str() const {
    auto kname = [](OrderKind k) {
        return k == OrderKind::Lex ? "lex" : k == OrderKind::GrevLex ? "grevlex" : "block";
    };
    if (kind != OrderKind::Block) return kname(kind);
    return std::string("block(") + kname(inner_x) + "," + kname(inner_t) + ")";
}

}  // namespace polyid
