#include "polyid/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace polyid {

Rat::Rat(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rat::Rat(mpq_class v) : v_(std::move(v)) {
    if (sgn(v_.get_den()) == 0) throw std::invalid_argument("Rat: zero denominator");
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::inverse() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1) / v_);
}

std::optional<Rat> Rat::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    auto is_int = [](std::string_view t) {
        if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    try {
        if (slash == std::string_view::npos) {
            if (!is_int(s)) return std::nullopt;
            return Rat(mpq_class(mpz_class(std::string(s))));
        }
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        mpz_class d{std::string(den)};
        if (sgn(d) == 0) return std::nullopt;
        mpz_class nn{std::string(num)};
        return Rat(mpq_class(nn, d));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::str_fraction() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace polyid
