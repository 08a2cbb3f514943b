#include "singmc/expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace singmc::expr {

ParseError::ParseError(std::string message, std::size_t offset)
    : UsageError(message + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

struct FuncInfo {
    std::string_view name;
    Func func;
    std::size_t arity;
};

constexpr std::array<FuncInfo, 9> kFunctions{{
    {"sin", Func::sin, 1},
    {"cos", Func::cos, 1},
    {"exp", Func::exp, 1},
    {"log", Func::log, 1},
    {"sqrt", Func::sqrt, 1},
    {"abs", Func::abs, 1},
    {"pow", Func::pow, 2},
    {"min", Func::min, 2},
    {"max", Func::max, 2},
}};

const FuncInfo* find_function(std::string_view name) {
    for (const auto& f : kFunctions)
        if (f.name == name) return &f;
    return nullptr;
}

enum class Tok { number, ident, lparen, rparen, comma, plus, minus, star, slash, caret, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                      src_[pos_] == '\r'))
            ++pos_;
        const std::size_t start = pos_;
        if (pos_ == src_.size()) return {Tok::end, start, {}};
        const char c = src_[pos_];
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) return number(start);
        if (is_lower(c)) {
            while (pos_ < src_.size() && is_lower(src_[pos_])) ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            return {Tok::ident, start, src_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
            case '(': return {Tok::lparen, start, src_.substr(start, 1)};
            case ')': return {Tok::rparen, start, src_.substr(start, 1)};
            case ',': return {Tok::comma, start, src_.substr(start, 1)};
            case '+': return {Tok::plus, start, src_.substr(start, 1)};
            case '-': return {Tok::minus, start, src_.substr(start, 1)};
            case '*': return {Tok::star, start, src_.substr(start, 1)};
            case '/': return {Tok::slash, start, src_.substr(start, 1)};
            case '^': return {Tok::caret, start, src_.substr(start, 1)};
            default: break;
        }
        std::string shown = (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f)
                                ? std::string("'") + c + "'"
                                : "byte 0x" + [&] {
                                      std::ostringstream os;
                                      os << std::hex << static_cast<int>(static_cast<unsigned char>(c));
                                      return os.str();
                                  }();
        throw ParseError("unexpected character " + shown, start);
    }

private:
    Token number(std::size_t start) {
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && is_digit(src_[p])) {
                pos_ = p;
                while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            }
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size())
            throw ParseError("malformed number '" + std::string(text) + "'", start);
        return {Tok::number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};


class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src), src_size_(src.size()) { advance(); }

    NodePtr parse_all() {
        NodePtr e = expr();
        if (tok_.kind != Tok::end) fail("unexpected '" + std::string(tok_.text) + "'");
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& what) const {
        if (tok_.kind == Tok::end) throw ParseError(what + " (end of input)", src_size_);
        throw ParseError(what, tok_.offset);
    }

    void expect(Tok kind, const char* what) {
        if (tok_.kind != kind) fail(std::string("expected ") + what);
        advance();
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
            const char op = tok_.kind == Tok::plus ? '+' : '-';
            advance();
            lhs = make(Binary{op, lhs, term()});
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (tok_.kind == Tok::star || tok_.kind == Tok::slash) {
            const char op = tok_.kind == Tok::star ? '*' : '/';
            advance();
            lhs = make(Binary{op, lhs, unary()});
        }
        return lhs;
    }

    NodePtr unary() {
        if (++depth_ > kMaxNesting) fail("expression nested too deeply");
        struct Leave {
            int& d;
            ~Leave() { --d; }
        } leave{depth_};
        if (tok_.kind == Tok::minus) {
            advance();
            return make(Negate{unary()});
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (tok_.kind == Tok::caret) {
            advance();
            return make(Binary{'^', base, unary()});
        }
        return base;
    }

    NodePtr atom() {
        switch (tok_.kind) {
            case Tok::number: {
                const double v = tok_.number;
                advance();
                return make(Number{v});
            }
            case Tok::lparen: {
                advance();
                NodePtr inner = expr();
                expect(Tok::rparen, "')'");
                return inner;
            }
            case Tok::ident: return identifier();
            default: fail(tok_.kind == Tok::end ? "expected an operand" : "expected an operand, got '" +
                                                                            std::string(tok_.text) + "'");
        }
    }

    NodePtr identifier() {
        const Token id = tok_;
        advance();
        if (tok_.kind == Tok::lparen) {
            const FuncInfo* f = find_function(id.text);
            if (!f) throw ParseError("unknown function '" + std::string(id.text) + "'", id.offset);
            advance();
            std::vector<NodePtr> args{expr()};
            while (tok_.kind == Tok::comma) {
                advance();
                args.push_back(expr());
            }
            expect(Tok::rparen, "')'");
            if (args.size() != f->arity) {
                std::ostringstream os;
                os << "function '" << f->name << "' takes " << f->arity << " argument" << (f->arity == 1 ? "" : "s")
                   << ", got " << args.size();
                throw ParseError(os.str(), id.offset);
            }
            return make(Call{f->func, std::move(args)});
        }
        if (id.text == "pi") return make(Constant{NamedConstant::pi});
        if (id.text == "e") return make(Constant{NamedConstant::e});
        if (id.text.size() == 2 && (id.text[0] == 's' || id.text[0] == 't') && id.text[1] >= '1' &&
            id.text[1] <= '9')
            return make(Variable{id.text[0] == 's' ? VarKind::point : VarKind::param,
                                 static_cast<unsigned>(id.text[1] - '0')});
        if (find_function(id.text))
            throw ParseError("function '" + std::string(id.text) + "' must be called with arguments", id.offset);
        throw ParseError("unknown identifier '" + std::string(id.text) + "'", id.offset);
    }

    Lexer lexer_;
    std::size_t src_size_;
    int depth_ = 0;
    std::unordered_map<const Node*, int> height_;

    NodePtr make(auto&& v) {
        auto node = std::make_shared<const Node>(Node{std::forward<decltype(v)>(v)});
        int h = 0;
        auto child = [&](const NodePtr& c) { h = std::max(h, height_.at(c.get())); };
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Negate>) {
                    child(n.operand);
                } else if constexpr (std::is_same_v<T, Binary>) {
                    child(n.lhs);
                    child(n.rhs);
                } else if constexpr (std::is_same_v<T, Call>) {
                    for (const auto& a : n.args) child(a);
                }
            },
            node->value);
        if (h + 1 > kMaxTreeHeight) fail("expression tree deeper than " + std::to_string(kMaxTreeHeight));
        height_[node.get()] = h + 1;
        return node;
    }
    Token tok_{Tok::end, 0, {}};
};

void collect_indices(const Node& n, unsigned& max_point, unsigned& max_param) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Variable>) {
                auto& slot = v.kind == VarKind::point ? max_point : max_param;
                slot = std::max(slot, v.index);
            } else if constexpr (std::is_same_v<T, Negate>) {
                collect_indices(*v.operand, max_point, max_param);
            } else if constexpr (std::is_same_v<T, Binary>) {
                collect_indices(*v.lhs, max_point, max_param);
                collect_indices(*v.rhs, max_point, max_param);
            } else if constexpr (std::is_same_v<T, Call>) {
                for (const auto& a : v.args) collect_indices(*a, max_point, max_param);
            }
        },
        n.value);
}

double eval_node(const Node& n, std::span<const double> s, std::span<const double> theta) noexcept {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Number>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                const auto& src = v.kind == VarKind::point ? s : theta;
                return v.index <= src.size() ? src[v.index - 1] : std::numeric_limits<double>::quiet_NaN();
            } else if constexpr (std::is_same_v<T, Constant>) {
                return v.which == NamedConstant::pi ? std::numbers::pi : std::numbers::e;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return -eval_node(*v.operand, s, theta);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const double a = eval_node(*v.lhs, s, theta);
                const double b = eval_node(*v.rhs, s, theta);
                switch (v.op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    case '/': return a / b;
                    default: return std::pow(a, b);
                }
            } else {
                const double a = eval_node(*v.args[0], s, theta);
                switch (v.func) {
                    case Func::sin: return std::sin(a);
                    case Func::cos: return std::cos(a);
                    case Func::exp: return std::exp(a);
                    case Func::log: return std::log(a);
                    case Func::sqrt: return std::sqrt(a);
                    case Func::abs: return std::abs(a);
                    case Func::pow: return std::pow(a, eval_node(*v.args[1], s, theta));
                    case Func::min: return std::min(a, eval_node(*v.args[1], s, theta));
                    case Func::max: return std::max(a, eval_node(*v.args[1], s, theta));
                }
                return std::numeric_limits<double>::quiet_NaN();
            }
        },
        n.value);
}

void print_node(const Node& n, std::string& out) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Number>) {
                char buf[64];
                const auto res = std::to_chars(buf, buf + sizeof buf, v.value);
                out.append(buf, res.ptr);
            } else if constexpr (std::is_same_v<T, Variable>) {
                out += v.kind == VarKind::point ? 's' : 't';
                out += static_cast<char>('0' + v.index);
            } else if constexpr (std::is_same_v<T, Constant>) {
                out += v.which == NamedConstant::pi ? "pi" : "e";
            } else if constexpr (std::is_same_v<T, Negate>) {
                out += "(-(";
                print_node(*v.operand, out);
                out += "))";
            } else if constexpr (std::is_same_v<T, Binary>) {
                out += '(';
                print_node(*v.lhs, out);
                out += ' ';
                out += v.op;
                out += ' ';
                print_node(*v.rhs, out);
                out += ')';
            } else {
                out += function_name(v.func);
                out += '(';
                for (std::size_t i = 0; i < v.args.size(); ++i) {
                    if (i) out += ", ";
                    print_node(*v.args[i], out);
                }
                out += ')';
            }
        },
        n.value);
}

}  // namespace

std::string_view function_name(Func f) noexcept {
    for (const auto& info : kFunctions)
        if (info.func == f) return info.name;
    return "?";
}

std::size_t function_arity(Func f) noexcept {
    for (const auto& info : kFunctions)
        if (info.func == f) return info.arity;
    return 0;
}

bool structurally_equal(const Node& a, const Node& b) noexcept {
    if (a.value.index() != b.value.index()) return false;
    return std::visit(
        [&](const auto& va) -> bool {
            using T = std::decay_t<decltype(va)>;
            const auto& vb = std::get<T>(b.value);
            if constexpr (std::is_same_v<T, Number>) {
                return va.value == vb.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                return va.kind == vb.kind && va.index == vb.index;
            } else if constexpr (std::is_same_v<T, Constant>) {
                return va.which == vb.which;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return structurally_equal(*va.operand, *vb.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return va.op == vb.op && structurally_equal(*va.lhs, *vb.lhs) && structurally_equal(*va.rhs, *vb.rhs);
            } else {
                if (va.func != vb.func || va.args.size() != vb.args.size()) return false;
                for (std::size_t i = 0; i < va.args.size(); ++i)
                    if (!structurally_equal(*va.args[i], *vb.args[i])) return false;
                return true;
            }
        },
        a.value);
}

ExprAst::ExprAst(NodePtr root) : root_(std::move(root)) {
    collect_indices(*root_, max_point_, max_param_);
}

void ExprAst::bind(std::size_t arity, std::size_t param_dim) const {
    if (max_point_ > arity) {
        std::ostringstream os;
        os << "expression references s" << max_point_ << " but the domain has dimension " << arity;
        throw UsageError(os.str());
    }
    if (max_param_ > param_dim) {
        std::ostringstream os;
        os << "expression references t" << max_param_ << " but " << param_dim << " parameter"
           << (param_dim == 1 ? " is" : "s are") << " available";
        throw UsageError(os.str());
    }
}

double ExprAst::eval(std::span<const double> s, std::span<const double> theta) const noexcept {
    return eval_node(*root_, s, theta);
}

std::string ExprAst::to_string() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

bool operator==(const ExprAst& a, const ExprAst& b) noexcept { return structurally_equal(*a.root_, *b.root_); }

ExprAst parse(std::string_view text) {
    if (text.size() > kMaxSourceBytes)
        throw ParseError("expression exceeds " + std::to_string(kMaxSourceBytes) + " bytes", kMaxSourceBytes);
    return ExprAst(Parser(text).parse_all());
}

Integrand to_integrand(const ExprAst& ast, std::size_t arity) {
    ast.bind(arity, 0);
    return {arity, [ast](std::span<const double> s) { return ast.eval(s); }};
}

ParamIntegrand to_param_integrand(const ExprAst& ast, std::size_t arity, std::size_t param_dim) {
    ast.bind(arity, param_dim);
    return {arity, param_dim,
            [ast](std::span<const double> s, std::span<const double> theta) { return ast.eval(s, theta); }};
}

}  // namespace singmc::expr
