#pragma once

// Scalar expressions in x, y, z.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 'x' | 'y' | 'z' | 'pi' | 'e'
//            | func '(' expr ')' | '(' expr ')'
//   func    := sin cos tan exp log sqrt abs tanh cosh sinh
//
// so -x^2 is -(x^2) and 2^-1 is 0.5. Whitespace is ignored between tokens.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ftucker {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    /// Byte offset into the source text.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

enum class Func { sin, cos, tan, exp, log, sqrt, abs, tanh, cosh, sinh };

namespace detail {

struct FuncName {
    const char* name;
    Func func;
};

inline constexpr FuncName func_names[] = {
    {"sin", Func::sin},   {"cos", Func::cos},   {"tan", Func::tan},   {"exp", Func::exp},   {"log", Func::log},
    {"sqrt", Func::sqrt}, {"abs", Func::abs},   {"tanh", Func::tanh}, {"cosh", Func::cosh}, {"sinh", Func::sinh},
};

inline const char* func_name(Func f) {
    for (const auto& e : func_names)
        if (e.func == f)
            return e.name;
    return "?";
}

} // namespace detail

class FuncExpr {
public:
    enum class Kind { number, variable, constant, negate, binary, call };

    struct Node {
        Kind kind = Kind::number;
        double value = 0.0;  // number
        char symbol = 0;     // variable x/y/z, constant 'p' (pi) or 'e', binary operator
        Func func = Func::sin;
        std::shared_ptr<const Node> lhs, rhs;  // negate and call use lhs only
    };
    using NodePtr = std::shared_ptr<const Node>;

    FuncExpr() = default;
    explicit FuncExpr(NodePtr root) : root_(std::move(root)) {}

    const Node* root() const noexcept { return root_.get(); }
    bool empty() const noexcept { return !root_; }

    double operator()(double x, double y, double z) const {
        if (!root_)
            throw std::logic_error("FuncExpr: empty expression");
        return eval(*root_, x, y, z);
    }

    /// Fully parenthesized text with round-trippable literals.
    std::string to_string() const {
        std::string out;
        if (root_)
            print(*root_, out);
        return out;
    }

    friend bool operator==(const FuncExpr& a, const FuncExpr& b) {
        if (!a.root_ || !b.root_)
            return !a.root_ && !b.root_;
        return same(*a.root_, *b.root_);
    }

private:
    static double eval(const Node& n, double x, double y, double z) {
        switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::variable: return n.symbol == 'x' ? x : n.symbol == 'y' ? y : z;
        case Kind::constant: return n.symbol == 'p' ? std::numbers::pi : std::numbers::e;
        case Kind::negate: return -eval(*n.lhs, x, y, z);
        case Kind::binary: {
            const double a = eval(*n.lhs, x, y, z);
            const double b = eval(*n.rhs, x, y, z);
            switch (n.symbol) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/': return a / b;
            default: return std::pow(a, b);
            }
        }
        case Kind::call: {
            const double a = eval(*n.lhs, x, y, z);
            switch (n.func) {
            case Func::sin: return std::sin(a);
            case Func::cos: return std::cos(a);
            case Func::tan: return std::tan(a);
            case Func::exp: return std::exp(a);
            case Func::log: return std::log(a);  // NaN below zero
            case Func::sqrt: return std::sqrt(a);
            case Func::abs: return std::abs(a);
            case Func::tanh: return std::tanh(a);
            case Func::cosh: return std::cosh(a);
            case Func::sinh: return std::sinh(a);
            }
        }
        }
        return 0.0;
    }

    static void print(const Node& n, std::string& out) {
        switch (n.kind) {
        case Kind::number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case Kind::variable: out += n.symbol; return;
        case Kind::constant: out += n.symbol == 'p' ? "pi" : "e"; return;
        case Kind::negate:
            out += "(-";
            print(*n.lhs, out);
            out += ')';
            return;
        case Kind::binary:
            out += '(';
            print(*n.lhs, out);
            out += n.symbol;
            print(*n.rhs, out);
            out += ')';
            return;
        case Kind::call:
            out += detail::func_name(n.func);
            out += '(';
            print(*n.lhs, out);
            out += ')';
            return;
        }
    }

    static bool same(const Node& a, const Node& b) {
        if (a.kind != b.kind)
            return false;
        switch (a.kind) {
        case Kind::number: return a.value == b.value;
        case Kind::variable:
        case Kind::constant: return a.symbol == b.symbol;
        case Kind::negate: return same(*a.lhs, *b.lhs);
        case Kind::binary: return a.symbol == b.symbol && same(*a.lhs, *b.lhs) && same(*a.rhs, *b.rhs);
        case Kind::call: return a.func == b.func && same(*a.lhs, *b.lhs);
        }
        return false;
    }

    NodePtr root_;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    FuncExpr parse() {
        skip();
        if (pos_ == src_.size())
            throw ParseError("empty expression", pos_);
        auto root = expr();
        skip();
        if (pos_ != src_.size())
            throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return FuncExpr(std::move(root));
    }

private:
    using Node = FuncExpr::Node;
    using NodePtr = FuncExpr::NodePtr;
    using Kind = FuncExpr::Kind;

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ == src_.size())
                throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "' but found '" + src_[pos_] + "'", pos_);
        }
    }

    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

    static NodePtr binary(char op, NodePtr a, NodePtr b) {
        Node n;
        n.kind = Kind::binary;
        n.symbol = op;
        n.lhs = std::move(a);
        n.rhs = std::move(b);
        return make(std::move(n));
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            if (accept('+'))
                lhs = binary('+', lhs, term());
            else if (accept('-'))
                lhs = binary('-', lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (accept('*'))
                lhs = binary('*', lhs, unary());
            else if (accept('/'))
                lhs = binary('/', lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            Node n;
            n.kind = Kind::negate;
            n.lhs = unary();
            return make(std::move(n));
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^'))
            return binary('^', base, unary());
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ == src_.size())
            throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        if (accept('(')) {
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t count = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++count;
            }
            return count;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0)
            throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            // "2e" is rejected, implicit multiplication does not exist
            std::size_t save = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                ++pos_;
            if (digits() == 0)
                throw ParseError("malformed exponent", save);
        }
        const std::string text(src_.substr(start, pos_ - start));
        Node n;
        n.kind = Kind::number;
        n.value = std::strtod(text.c_str(), nullptr);
        return make(std::move(n));
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        Node n;
        if (name == "x" || name == "y" || name == "z") {
            n.kind = Kind::variable;
            n.symbol = name[0];
            return make(std::move(n));
        }
        if (name == "pi" || name == "e") {
            n.kind = Kind::constant;
            n.symbol = name == "pi" ? 'p' : 'e';
            return make(std::move(n));
        }
        for (const auto& f : func_names) {
            if (name != f.name)
                continue;
            skip();
            if (pos_ == src_.size() || src_[pos_] != '(')
                throw ParseError("function '" + std::string(name) + "' needs an argument list", pos_);
            ++pos_;
            skip();
            if (pos_ < src_.size() && src_[pos_] == ')')
                throw ParseError("function '" + std::string(name) + "' takes 1 argument, got 0", pos_);
            n.kind = Kind::call;
            n.func = f.func;
            n.lhs = expr();
            skip();
            if (pos_ < src_.size() && src_[pos_] == ',')
                throw ParseError("function '" + std::string(name) + "' takes 1 argument", pos_);
            expect(')');
            return make(std::move(n));
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline FuncExpr parse_expr(std::string_view src) { return detail::ExprParser(src).parse(); }

} // namespace ftucker
