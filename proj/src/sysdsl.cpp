#include "polyid/sysdsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace polyid {

// ---------------------------------------------------------------------------
// Expr

Expr Expr::number(Rat v) {
    Expr e;
    e.kind = Kind::Number;
    e.value = std::move(v);
    return e;
}
Expr Expr::var(std::string n) {
    Expr e;
    e.kind = Kind::Var;
    e.name = std::move(n);
    return e;
}
Expr Expr::binary(Kind k, Expr l, Expr r) {
    Expr e;
    e.kind = k;
    e.kids.push_back(std::move(l));
    e.kids.push_back(std::move(r));
    return e;
}
Expr Expr::neg(Expr c) {
    Expr e;
    e.kind = Kind::Neg;
    e.kids.push_back(std::move(c));
    return e;
}
Expr Expr::pow(Expr base, unsigned x) {
    Expr e;
    e.kind = Kind::Pow;
    e.kids.push_back(std::move(base));
    e.exponent = x;
    return e;
}

bool Expr::operator==(const Expr& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Number: return value == o.value;
        case Kind::Var: return name == o.name;
        case Kind::Pow: return exponent == o.exponent && kids == o.kids;
        default: return kids == o.kids;
    }
}

namespace {

// Precedence: Add/Sub 1, Mul/Div 2, Neg 3, Pow 4, atoms 5.
int prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void rend(const Expr& e, int min_prec, std::string& out) {
    bool parens = prec(e) < min_prec;
    if (parens) out += "(";
    switch (e.kind) {
        case Expr::Kind::Number:
            out += e.value.str();
            break;
        case Expr::Kind::Var:
            out += e.name;
            break;
        case Expr::Kind::Add:
            rend(e.kids[0], 1, out);
            out += " + ";
            rend(e.kids[1], 2, out);
            break;
        case Expr::Kind::Sub:
            rend(e.kids[0], 1, out);
            out += " - ";
            rend(e.kids[1], 2, out);
            break;
        case Expr::Kind::Mul:
            rend(e.kids[0], 2, out);
            out += "*";
            rend(e.kids[1], 3, out);
            break;
        case Expr::Kind::Div:
            rend(e.kids[0], 2, out);
            out += "/";
            rend(e.kids[1], 3, out);
            break;
        case Expr::Kind::Neg:
            out += "-";
            rend(e.kids[0], 4, out);
            break;
        case Expr::Kind::Pow:
            rend(e.kids[0], 5, out);
            out += "^" + std::to_string(e.exponent);
            break;
    }
    if (parens) out += ")";
}

}  // namespace

std::string render_expr(const Expr& e) {
    std::string s;
    rend(e, 0, s);
    return s;
}

std::optional<Rat> eval_expr(const Expr& e, const std::map<std::string, Rat>& env) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return e.value;
        case Expr::Kind::Var: {
            auto it = env.find(e.name);
            if (it == env.end()) return std::nullopt;
            return it->second;
        }
        case Expr::Kind::Add: {
            auto l = eval_expr(e.kids[0], env), r = eval_expr(e.kids[1], env);
            if (!l || !r) return std::nullopt;
            return *l + *r;
        }
        case Expr::Kind::Sub: {
            auto l = eval_expr(e.kids[0], env), r = eval_expr(e.kids[1], env);
            if (!l || !r) return std::nullopt;
            return *l - *r;
        }
        case Expr::Kind::Mul: {
            auto l = eval_expr(e.kids[0], env), r = eval_expr(e.kids[1], env);
            if (!l || !r) return std::nullopt;
            return *l * *r;
        }
        case Expr::Kind::Div: {
            auto l = eval_expr(e.kids[0], env), r = eval_expr(e.kids[1], env);
            if (!l || !r || r->is_zero()) return std::nullopt;
            return *l / *r;
        }
        case Expr::Kind::Neg: {
            auto c = eval_expr(e.kids[0], env);
            if (!c) return std::nullopt;
            return -*c;
        }
        case Expr::Kind::Pow: {
            auto c = eval_expr(e.kids[0], env);
            if (!c) return std::nullopt;
            Rat r(1);
            for (unsigned i = 0; i < e.exponent; ++i) r *= *c;
            return r;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

enum class Tok { Ident, Int, Sym, Newline, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;
    int line = 1, col = 1;
    std::vector<Token> tokens;

    void push(Tok k, std::string text, int l, int c) {
        tokens.push_back({k, std::move(text), l, c});
    }

    std::optional<ParseError> run() {
        bool line_has_tokens = false;
        while (pos < src.size()) {
            char ch = src[pos];
            if (ch == '#') {
                while (pos < src.size() && src[pos] != '\n') advance();
                continue;
            }
            if (ch == '\n') {
                if (line_has_tokens) push(Tok::Newline, "\n", line, col);
                line_has_tokens = false;
                advance();
                continue;
            }
            if (ch == ' ' || ch == '\t' || ch == '\r') {
                advance();
                continue;
            }
            int l = line, c = col;
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                std::string id;
                while (pos < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                        src[pos] == '_')) {
                    id += src[pos];
                    advance();
                }
                push(Tok::Ident, std::move(id), l, c);
                line_has_tokens = true;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::string num;
                while (pos < src.size() &&
                       std::isdigit(static_cast<unsigned char>(src[pos]))) {
                    num += src[pos];
                    advance();
                }
                push(Tok::Int, std::move(num), l, c);
                line_has_tokens = true;
                continue;
            }
            if (std::string("+-*/^()=:").find(ch) != std::string::npos) {
                push(Tok::Sym, std::string(1, ch), l, c);
                line_has_tokens = true;
                advance();
                continue;
            }
            return ParseError{l, c, "unexpected character", std::string(1, ch)};
        }
        if (line_has_tokens) push(Tok::Newline, "\n", line, col);
        push(Tok::End, "", line, col);
        return std::nullopt;
    }

    void advance() {
        if (src[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
};

struct Parser {
    const std::vector<Token>& ts;
    std::size_t at = 0;
    // When set, identifiers in expressions are validated against these.
    const std::map<std::string, int>* declared = nullptr;
    bool params_and_consts_only = false;
    const std::vector<std::string>* param_names = nullptr;
    const std::map<std::string, Rat>* const_names = nullptr;

    const Token& peek() const { return ts[at]; }
    const Token& get() { return ts[at++]; }
    bool is_sym(const char* s) const {
        return peek().kind == Tok::Sym && peek().text == s;
    }
    bool is_ident(const char* s) const {
        return peek().kind == Tok::Ident && peek().text == s;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError{t.line, t.col, msg,
                         t.kind == Tok::Newline ? "<newline>"
                         : t.kind == Tok::End   ? "<end>"
                                                : t.text};
    }

    void expect_sym(const char* s, const std::string& what) {
        if (!is_sym(s)) fail("expected '" + std::string(s) + "' " + what);
        get();
    }
    void expect_newline() {
        if (peek().kind == Tok::End) return;
        if (peek().kind != Tok::Newline) fail("expected end of line");
        get();
    }
    void skip_newlines() {
        while (peek().kind == Tok::Newline) get();
    }

    std::string expect_ident(const std::string& what) {
        if (peek().kind != Tok::Ident) fail("expected identifier (" + what + ")");
        return get().text;
    }

    // expr := term (("+"|"-") term)*
    Expr parse_expr() {
        Expr e = parse_term();
        while (is_sym("+") || is_sym("-")) {
            bool plus = peek().text == "+";
            get();
            Expr r = parse_term();
            e = Expr::binary(plus ? Expr::Kind::Add : Expr::Kind::Sub, std::move(e),
                             std::move(r));
        }
        return e;
    }

    // term := factor (("*"|"/") factor)*
    Expr parse_term() {
        Expr e = parse_factor();
        while (is_sym("*") || is_sym("/")) {
            bool mul = peek().text == "*";
            get();
            Expr r = parse_factor();
            e = Expr::binary(mul ? Expr::Kind::Mul : Expr::Kind::Div, std::move(e),
                             std::move(r));
        }
        return e;
    }

    // factor := ("-")? atom ("^" INT)?
    Expr parse_factor() {
        bool neg = false;
        if (is_sym("-")) {
            neg = true;
            get();
        }
        Expr a = parse_atom();
        if (is_sym("^")) {
            get();
            if (peek().kind != Tok::Int) fail("expected a non-negative integer exponent");
            unsigned long x = std::stoul(get().text);
            a = Expr::pow(std::move(a), static_cast<unsigned>(x));
        }
        return neg ? Expr::neg(std::move(a)) : std::move(a);
    }

    // atom := IDENT | INT | "(" expr ")"
    Expr parse_atom() {
        if (peek().kind == Tok::Ident) {
            const std::string& id = peek().text;
            if (declared && !declared->count(id)) fail("undeclared identifier '" + id + "'");
            if (params_and_consts_only) {
                bool ok = (param_names &&
                           std::find(param_names->begin(), param_names->end(), id) !=
                               param_names->end()) ||
                          (const_names && const_names->count(id));
                if (!ok)
                    fail("solution expressions may use parameters and constants only");
            }
            return Expr::var(get().text);
        }
        if (peek().kind == Tok::Int) {
            auto v = Rat::parse(get().text);
            if (!v) fail("integer literal out of range");
            return Expr::number(*v);
        }
        if (is_sym("(")) {
            get();
            Expr e = parse_expr();
            expect_sym(")", "to close the parenthesized expression");
            return e;
        }
        fail("expected an identifier, number, or '('");
    }
};

}  // namespace

std::string ParseError::str() const {
    std::ostringstream os;
    os << "parse error at " << line << ":" << col << ": " << message;
    if (!token.empty()) os << " (got '" << token << "')";
    return os.str();
}

ParseResult parse_system(std::string_view source) {
    Lexer lx{source};
    if (auto err = lx.run()) return *err;
    Parser p{lx.tokens};
    SystemFile f;
    try {
        p.skip_newlines();
        // header: system: NAME
        if (!p.is_ident("system")) p.fail("expected 'system:' header");
        p.get();
        p.expect_sym(":", "after 'system'");
        f.name = p.expect_ident("system name");
        p.expect_newline();
        p.skip_newlines();

        if (!p.is_ident("params")) p.fail("expected 'params:' block");
        p.get();
        p.expect_sym(":", "after 'params'");
        while (p.peek().kind == Tok::Ident) f.params.push_back(p.get().text);
        p.expect_newline();
        p.skip_newlines();

        if (!p.is_ident("vars")) p.fail("expected 'vars:' block");
        p.get();
        p.expect_sym(":", "after 'vars'");
        while (p.peek().kind == Tok::Ident) f.vars.push_back(p.get().text);
        if (f.vars.empty()) p.fail("at least one variable required");
        p.expect_newline();
        p.skip_newlines();

        // Declaration validity.
        std::map<std::string, int> declared;
        for (const auto& s : f.params)
            if (++declared[s] > 1) p.fail("duplicate declaration of '" + s + "'");
        for (const auto& s : f.vars)
            if (++declared[s] > 1) p.fail("duplicate declaration of '" + s + "'");

        while (p.is_ident("const")) {
            p.get();
            std::string cname = p.expect_ident("constant name");
            if (++declared[cname] > 1) p.fail("duplicate declaration of '" + cname + "'");
            p.expect_sym("=", "after the constant name");
            Expr e = p.parse_expr();
            auto v = eval_expr(e, {});
            if (!v) p.fail("constant '" + cname + "' is not a rational constant");
            f.constants[cname] = *v;
            p.expect_newline();
            p.skip_newlines();
        }

        p.declared = &declared;
        p.param_names = &f.params;
        p.const_names = &f.constants;

        while (p.is_ident("eq")) {
            p.get();
            p.expect_sym(":", "after 'eq'");
            Expr e = p.parse_expr();
            f.equations.push_back(std::move(e));
            p.expect_newline();
            p.skip_newlines();
        }
        if (f.equations.empty()) p.fail("at least one equation required");

        if (p.is_ident("expect")) {
            p.get();
            p.expect_sym(":", "after 'expect'");
            if (p.peek().kind != Tok::Int) p.fail("expected a solution count");
            f.expected = static_cast<unsigned>(std::stoul(p.get().text));
            p.expect_newline();
            p.skip_newlines();
        }

        while (p.is_ident("solution")) {
            p.get();
            p.expect_sym(":", "after 'solution'");
            p.expect_newline();
            p.skip_newlines();
            std::vector<std::pair<std::string, Expr>> block;
            while (p.peek().kind == Tok::Ident && !p.is_ident("solution")) {
                std::string var = p.expect_ident("variable name");
                if (std::find(f.vars.begin(), f.vars.end(), var) == f.vars.end())
                    p.fail("solution assigns undeclared variable '" + var + "'");
                for (const auto& [v, _] : block)
                    if (v == var) p.fail("solution assigns '" + var + "' twice");
                p.expect_sym("=", "after the variable name");
                p.params_and_consts_only = true;
                Expr e = p.parse_expr();
                p.params_and_consts_only = false;
                block.emplace_back(var, std::move(e));
                p.expect_newline();
                p.skip_newlines();
            }
            if (block.size() != f.vars.size())
                p.fail("solution block must assign every variable");
            f.solutions.push_back(std::move(block));
        }

        p.skip_newlines();
        if (p.peek().kind != Tok::End) p.fail("unexpected trailing content");
    } catch (const ParseError& e) {
        return e;
    }
    return f;
}

std::string render_system(const SystemFile& f) {
    std::ostringstream os;
    os << "system: " << f.name << "\n";
    os << "params:";
    for (const auto& s : f.params) os << " " << s;
    os << "\n";
    os << "vars:";
    for (const auto& s : f.vars) os << " " << s;
    os << "\n";
    for (const auto& [k, v] : f.constants) os << "const " << k << " = " << v.str() << "\n";
    for (const auto& e : f.equations) os << "eq: " << render_expr(e) << "\n";
    if (f.expected) os << "expect: " << *f.expected << "\n";
    for (const auto& block : f.solutions) {
        os << "solution:\n";
        for (const auto& [var, e] : block) os << "  " << var << " = " << render_expr(e) << "\n";
    }
    return os.str();
}

std::variant<std::map<std::string, Rat>, ParseError> parse_assignments(
    std::string_view source) {
    Lexer lx{source};
    if (auto err = lx.run()) return *err;
    Parser p{lx.tokens};
    std::map<std::string, Rat> out;
    try {
        p.skip_newlines();
        while (p.peek().kind == Tok::Ident) {
            std::string name = p.get().text;
            p.expect_sym("=", "after the name");
            Expr e = p.parse_expr();
            auto v = eval_expr(e, {});
            if (!v) p.fail("value of '" + name + "' is not a rational constant");
            if (out.count(name)) p.fail("duplicate assignment of '" + name + "'");
            out[name] = *v;
            p.expect_newline();
            p.skip_newlines();
        }
        if (p.peek().kind != Tok::End) p.fail("expected 'name = value' lines");
    } catch (const ParseError& e) {
        return e;
    }
    return out;
}

namespace {

Polynomial expr_to_polynomial(const Expr& e, const RingPtr& ring, const MonomialOrder& ord,
                              const std::map<std::string, Rat>& constants) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return Polynomial::constant(ring, ord, e.value);
        case Expr::Kind::Var: {
            auto c = constants.find(e.name);
            if (c != constants.end()) return Polynomial::constant(ring, ord, c->second);
            return Polynomial::variable(ring, ord, e.name);
        }
        case Expr::Kind::Add:
            return expr_to_polynomial(e.kids[0], ring, ord, constants) +
                   expr_to_polynomial(e.kids[1], ring, ord, constants);
        case Expr::Kind::Sub:
            return expr_to_polynomial(e.kids[0], ring, ord, constants) -
                   expr_to_polynomial(e.kids[1], ring, ord, constants);
        case Expr::Kind::Mul:
            return expr_to_polynomial(e.kids[0], ring, ord, constants) *
                   expr_to_polynomial(e.kids[1], ring, ord, constants);
        case Expr::Kind::Div: {
            Polynomial den = expr_to_polynomial(e.kids[1], ring, ord, constants);
            if (!den.is_constant() || den.is_zero())
                throw std::invalid_argument(
                    "division in equations requires a non-zero constant divisor");
            return expr_to_polynomial(e.kids[0], ring, ord, constants) *
                   den.constant_value().inverse();
        }
        case Expr::Kind::Neg:
            return -expr_to_polynomial(e.kids[0], ring, ord, constants);
        case Expr::Kind::Pow: {
            Polynomial base = expr_to_polynomial(e.kids[0], ring, ord, constants);
            Polynomial r = Polynomial::constant(ring, ord, Rat(1));
            for (unsigned i = 0; i < e.exponent; ++i) r *= base;
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

namespace {

std::string rat_atom(const Rat& r) {
    // Parenthesized when not a plain integer so it can sit inside products.
    if (r.is_integer() && r.sign() >= 0) return r.str();
    return "(" + r.str() + ")";
}

using Block = std::vector<std::pair<std::string, std::string>>;

// Symbolic solution templates (variable -> expression in the parameters),
// textual mirror of the closures in build_parametric.
std::vector<std::pair<std::string, Block>> symbolic_templates(const ModelKind& kind, int n) {
    auto num = [](int i) { return std::to_string(i); };
    auto inv_sum2 = [&](const char* s, int i, int j) {
        return "1/(" + std::string(s) + num(i) + " + " + s + num(j) + ")";
    };
    auto inv_sum3 = [&](const char* s, int i, int j, int k) {
        return "1/(" + std::string(s) + num(i) + " + " + s + num(j) + " + " + s + num(k) +
               ")";
    };
    auto inv_one_minus = [&](const char* s, int i) {
        return "1/(1 - " + std::string(s) + num(i) + ")";
    };

    auto scores = [&](Block& b, const char* xs, const char* ys) {
        for (int i = 1; i <= n; ++i) b.push_back({"x" + num(i), std::string(xs) + num(i)});
        for (int i = 1; i <= n; ++i) b.push_back({"y" + num(i), std::string(ys) + num(i)});
    };
    auto aux_for = [&](Block& b, const char* xs, const char* ys) {
        switch (kind.model) {
            case Model::BTL:
                if (kind.known_p) break;
                if (n == 5) {
                    b.push_back({"t23", inv_sum2(xs, 2, 3)});
                    b.push_back({"h15", inv_sum2(ys, 1, 5)});
                    b.push_back({"h23", inv_sum2(ys, 2, 3)});
                } else {
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j) {
                            std::string suffix = (i < 10 && j < 10)
                                                     ? num(i) + num(j)
                                                     : num(i) + "_" + num(j);
                            b.push_back({"t" + suffix, inv_sum2(xs, i, j)});
                        }
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j) {
                            std::string suffix = (i < 10 && j < 10)
                                                     ? num(i) + num(j)
                                                     : num(i) + "_" + num(j);
                            b.push_back({"h" + suffix, inv_sum2(ys, i, j)});
                        }
                }
                break;
            case Model::MNL3:
                if (kind.known_p) break;
                if (n == 4) {
                    b.push_back({"t123", inv_sum3(xs, 1, 2, 3)});
                    b.push_back({"t124", inv_sum3(xs, 1, 2, 4)});
                    b.push_back({"h123", inv_sum3(ys, 1, 2, 3)});
                    b.push_back({"h124", inv_sum3(ys, 1, 2, 4)});
                } else {
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j)
                            for (int k = j + 1; k <= n; ++k)
                                b.push_back(
                                    {"t" + num(i) + num(j) + num(k), inv_sum3(xs, i, j, k)});
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j)
                            for (int k = j + 1; k <= n; ++k)
                                b.push_back(
                                    {"h" + num(i) + num(j) + num(k), inv_sum3(ys, i, j, k)});
                }
                break;
            case Model::MNL23:
                break;
            case Model::PL:
                for (int i = 1; i <= n; ++i) b.push_back({"t" + num(i), inv_one_minus(xs, i)});
                for (int i = 1; i <= n; ++i) b.push_back({"h" + num(i), inv_one_minus(ys, i)});
                break;
        }
    };

    std::vector<std::pair<std::string, Block>> out;
    {
        Block b;
        scores(b, "a", "b");
        if (!kind.known_p) b.push_back({"p", "p1"});
        aux_for(b, "a", "b");
        out.push_back({"identity", std::move(b)});
    }
    const bool swap_template =
        !kind.known_p || (kind.p1 == Rat(1, 2) && kind.model != Model::BTL);
    if (swap_template) {
        Block b;
        scores(b, "b", "a");
        if (!kind.known_p) b.push_back({"p", "1 - p1"});
        aux_for(b, "b", "a");
        out.push_back({"component_swap", std::move(b)});
    }
    if (kind.model == Model::BTL && kind.known_p) {
        std::string w1 = rat_atom(kind.p1);
        std::string w2 = rat_atom(Rat(1) - kind.p1);
        auto eta1j = [&](int j) {
            return "(" + w1 + "*a1/(a1 + a" + num(j) + ") + " + w2 + "*b1/(b1 + b" + num(j) +
                   "))";
        };
        {
            Block b;
            b.push_back({"x1", "a1"});
            for (int j = 2; j <= n; ++j) b.push_back({"x" + num(j), "0"});
            b.push_back({"y1", "b1"});
            for (int j = 2; j <= n; ++j)
                b.push_back(
                    {"y" + num(j), "(1 - " + eta1j(j) + ")/(" + eta1j(j) + " - " + w1 + ")"});
            out.push_back({"relaxation_x_zero", std::move(b)});
        }
        {
            Block b;
            b.push_back({"x1", "a1"});
            for (int j = 2; j <= n; ++j)
                b.push_back(
                    {"x" + num(j), "(1 - " + eta1j(j) + ")/(" + eta1j(j) + " - " + w2 + ")"});
            b.push_back({"y1", "b1"});
            for (int j = 2; j <= n; ++j) b.push_back({"y" + num(j), "0"});
            out.push_back({"relaxation_y_zero", std::move(b)});
        }
    }
    return out;
}

}  // namespace

std::string emit_model_dsl(const ModelKind& kind, int n,
                           const std::optional<MixtureParams>& at) {
    ParametricSystem sys = build_parametric(kind, n);
    const std::size_t split = *sys.ring->block_split();
    std::ostringstream os;
    os << "# " << kind.str() << ", n = " << n << (at ? " (instantiated)" : "") << "\n";
    os << "system: " << sys.id << (at ? "_inst" : "") << "\n";
    os << "params:";
    if (!at)
        for (std::size_t i = split; i < sys.ring->arity(); ++i)
            os << " " << sys.ring->name(i);
    os << "\n";
    os << "vars:";
    for (std::size_t i = 0; i < split; ++i) os << " " << sys.ring->name(i);
    os << "\n";
    if (at) {
        validate_params(*at, kind);
        auto witness = parameter_assignment(kind, *at);
        for (const auto& g : sys.instantiate(witness, sys.order))
            os << "eq: " << g.str() << "\n";
        os << "expect: " << sys.expected_count << "\n";
        for (const auto& tpl : sys.templates) {
            auto sol = tpl.eval(witness);
            if (!sol) continue;  // degenerate at these parameters
            os << "solution:  # " << tpl.id << "\n";
            for (std::size_t i = 0; i < split; ++i) {
                const std::string& vn = sys.ring->name(i);
                os << "  " << vn << " = " << sol->at(vn).str() << "\n";
            }
        }
    } else {
        for (const auto& g : sys.generators) os << "eq: " << g.str() << "\n";
        os << "expect: " << sys.expected_count << "\n";
        for (const auto& [id, block] : symbolic_templates(kind, n)) {
            os << "solution:  # " << id << "\n";
            std::map<std::string, std::string> by_name(block.begin(), block.end());
            for (std::size_t i = 0; i < split; ++i) {
                const std::string& vn = sys.ring->name(i);
                os << "  " << vn << " = " << by_name.at(vn) << "\n";
            }
        }
    }
    return os.str();
}

ParametricSystem to_parametric_system(const SystemFile& f) {
    std::vector<std::string> names = f.vars;
    names.insert(names.end(), f.params.begin(), f.params.end());
    RingPtr ring = Ring::make(names, f.vars.size());

    ParametricSystem sys;
    sys.id = f.name;
    sys.ring = ring;
    sys.order = MonomialOrder::block();
    for (const auto& e : f.equations)
        sys.generators.push_back(expr_to_polynomial(e, ring, sys.order, f.constants));
    sys.expected_count = f.expected.value_or(0);

    for (std::size_t k = 0; k < f.solutions.size(); ++k) {
        const auto& block = f.solutions[k];
        std::map<std::string, Rat> consts = f.constants;
        sys.templates.push_back(
            {"solution_" + std::to_string(k + 1),
             [block, consts](const std::map<std::string, Rat>& params)
                 -> std::optional<std::map<std::string, Rat>> {
                 std::map<std::string, Rat> env = params;
                 for (const auto& [cn, cv] : consts) env.emplace(cn, cv);
                 std::map<std::string, Rat> out;
                 for (const auto& [var, e] : block) {
                     auto v = eval_expr(e, env);
                     if (!v) return std::nullopt;
                     out[var] = *v;
                 }
                 return out;
             }});
    }
    if (!f.params.empty()) {
        std::vector<std::string> pnames = f.params;
        sys.draw_params = [pnames](std::mt19937_64& rng) {
            std::map<std::string, Rat> t;
            for (const auto& p : pnames) t[p] = random_positive_rational(rng);
            return t;
        };
    }
    return sys;
}

}  // namespace polyid
