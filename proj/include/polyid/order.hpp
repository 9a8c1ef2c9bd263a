#ifndef POLYID_ORDER_HPP
#define POLYID_ORDER_HPP

#include "polyid/monomial.hpp"
#include "polyid/ring.hpp"

#include <string>

namespace polyid {

enum class Cmp { Less, Equal, Greater };

enum class OrderKind { Lex, GrevLex, Block };

/// A monomial order. Block orders compare the x-block first (inner_x) and
/// break ties on the t-block (inner_t); the block boundary comes from the
/// ring. Inner orders are restricted to lex/grevlex.
struct MonomialOrder {
    OrderKind kind = OrderKind::GrevLex;
    OrderKind inner_x = OrderKind::Lex;
    OrderKind inner_t = OrderKind::Lex;

    static MonomialOrder lex() { return {OrderKind::Lex, OrderKind::Lex, OrderKind::Lex}; }
    static MonomialOrder grevlex() {
        return {OrderKind::GrevLex, OrderKind::Lex, OrderKind::Lex};
    }
    static MonomialOrder block(OrderKind ix = OrderKind::Lex, OrderKind it = OrderKind::Lex) {
        return {OrderKind::Block, ix, it};
    }

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
        if (a.kind != b.kind) return false;
        if (a.kind != OrderKind::Block) return true;
        return a.inner_x == b.inner_x && a.inner_t == b.inner_t;
    }

    std::string str() const;
};

/// Total multiplicative well-order comparison. `split` is the x/t boundary
/// used by block orders (pass ring.split_or_arity()).
Cmp cmp_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& ord,
                  std::size_t split);

inline Cmp cmp_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& ord,
                         const Ring& ring) {
    return cmp_monomials(a, b, ord, ring.split_or_arity());
}

inline bool mono_less(const Monomial& a, const Monomial& b, const MonomialOrder& ord,
                      std::size_t split) {
    return cmp_monomials(a, b, ord, split) == Cmp::Less;
}
inline bool mono_greater(const Monomial& a, const Monomial& b, const MonomialOrder& ord,
                         std::size_t split) {
    return cmp_monomials(a, b, ord, split) == Cmp::Greater;
}

}  // namespace polyid

#endif
