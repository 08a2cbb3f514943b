#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "singmc/errors.hpp"
#include "singmc/estimate.hpp"
#include "singmc/parametric.hpp"

namespace singmc::expr {

/// Grammar (whitespace between tokens is ignored):
///
///   expr  := term (("+" | "-") term)*
///   term  := unary (("*" | "/") unary)*
///   unary := "-" unary | power
///   power := atom ("^" unary)?              right-associative
///   atom  := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
///
/// Variables are s1..s9 (point coordinates) and t1..t9 (parameters);
/// constants pi and e; functions sin cos exp log sqrt abs (one argument)
/// and pow min max (two). "-a^b" parses as -(a^b).

inline constexpr std::size_t kMaxSourceBytes = 64 * 1024;
/// Deeper nesting of parentheses, unary minus or exponents is rejected.
inline constexpr int kMaxNesting = 1000;
/// Longest root-to-leaf path accepted; bounds recursion in eval and printing.
inline constexpr int kMaxTreeHeight = 4000;

class ParseError : public UsageError {
public:
    ParseError(std::string message, std::size_t offset);
    /// Byte offset into the source where the error was detected.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

enum class Func { sin, cos, exp, log, sqrt, abs, pow, min, max };
enum class VarKind { point, param };
enum class NamedConstant { pi, e };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
    double value;
};
struct Variable {
    VarKind kind;
    unsigned index;  // 1-based
};
struct Constant {
    NamedConstant which;
};
struct Negate {
    NodePtr operand;
};
struct Binary {
    char op;  // one of + - * / ^
    NodePtr lhs, rhs;
};
struct Call {
    Func func;
    std::vector<NodePtr> args;
};

struct Node {
    std::variant<Number, Variable, Constant, Negate, Binary, Call> value;
};

/// Immutable parsed expression. Copies share the tree.
class ExprAst {
public:
    explicit ExprAst(NodePtr root);

    const Node& root() const noexcept { return *root_; }

    /// Highest s-index / t-index referenced (0 if none).
    unsigned max_point_index() const noexcept { return max_point_; }
    unsigned max_param_index() const noexcept { return max_param_; }

    /// Throws UsageError if the expression references s_k with k > arity or
    /// t_j with j > param_dim.
    void bind(std::size_t arity, std::size_t param_dim) const;

    /// Plain IEEE evaluation: domain errors yield NaN or infinities.
    double eval(std::span<const double> s, std::span<const double> theta = {}) const noexcept;

    /// Fully parenthesized text that parses back to a structurally
    /// identical tree.
    std::string to_string() const;

    friend bool operator==(const ExprAst& a, const ExprAst& b) noexcept;

private:
    NodePtr root_;
    unsigned max_point_ = 0;
    unsigned max_param_ = 0;
};

bool structurally_equal(const Node& a, const Node& b) noexcept;

ExprAst parse(std::string_view text);

std::string_view function_name(Func f) noexcept;
std::size_t function_arity(Func f) noexcept;

/// Adapters binding an expression as a simplex/ball integrand.
Integrand to_integrand(const ExprAst& ast, std::size_t arity);
ParamIntegrand to_param_integrand(const ExprAst& ast, std::size_t arity, std::size_t param_dim);

}  // namespace singmc::expr
