#ifndef POLYID_SYSDSL_HPP
#define POLYID_SYSDSL_HPP

#include "polyid/models.hpp"
#include "polyid/polynomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polyid {

/// Expression tree for DSL equations and solution templates.
struct Expr {
    enum class Kind { Number, Var, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind = Kind::Number;
    Rat value;               // Number
    std::string name;        // Var
    std::vector<Expr> kids;  // operands (2 for binary, 1 for Neg/Pow)
    unsigned exponent = 0;   // Pow

    static Expr number(Rat v);
    static Expr var(std::string n);
    static Expr binary(Kind k, Expr l, Expr r);
    static Expr neg(Expr e);
    static Expr pow(Expr base, unsigned e);

    bool operator==(const Expr& o) const;
};

/// Renders with minimal parentheses; parseable back to an identical tree.
std::string render_expr(const Expr& e);

/// Exact evaluation over Q. Returns nullopt on division by zero.
std::optional<Rat> eval_expr(const Expr& e, const std::map<std::string, Rat>& env);

struct SystemFile {
    std::string name;
    std::vector<std::string> params;  // t-variables (may be empty)
    std::vector<std::string> vars;    // x-variables
    std::map<std::string, Rat> constants;
    std::vector<Expr> equations;
    std::optional<unsigned> expected;
    // Each solution block assigns every variable an expression in the
    // parameters and constants.
    std::vector<std::vector<std::pair<std::string, Expr>>> solutions;

    bool operator==(const SystemFile& o) const = default;
};

struct ParseError {
    int line = 0;
    int col = 0;
    std::string message;
    std::string token;

    std::string str() const;
};

using ParseResult = std::variant<SystemFile, ParseError>;

ParseResult parse_system(std::string_view source);

/// Canonical rendering; parse(render(f)) == f.
std::string render_system(const SystemFile& f);

/// Witness/parameter file: `name = rational-expression` lines, `#` comments.
std::variant<std::map<std::string, Rat>, ParseError> parse_assignments(
    std::string_view source);

/// Ring [vars | params] with a block order, equations as polynomials,
/// solution blocks as templates, and a generic positive-rational sampler
/// for the parameters.
ParametricSystem to_parametric_system(const SystemFile& f);

/// DSL text for a model system: parametric (with symbolic solution
/// templates) or instantiated at concrete parameters (with evaluated
/// solutions). The output parses back via parse_system.
std::string emit_model_dsl(const ModelKind& kind, int n,
                           const std::optional<MixtureParams>& at = std::nullopt);

}  // namespace polyid

#endif
