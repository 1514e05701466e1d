#include "vwave/expression.hpp"

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "vwave/errors.hpp"

namespace vwave {

struct Expression::Node {
    enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Log, Sqrt };
    Kind kind;
    double value = 0.0;
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

NodePtr make(Kind k, std::vector<NodePtr> args = {}, double v = 0.0) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = v;
    n->args = std::move(args);
    return n;
}

class Parser {
public:
    Parser(std::string_view text, std::string_view var) : s_(text), var_(var) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::Usage, "expression '" + std::string(s_) + "': " + msg + " at position " +
                                          std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Kind::Add, {lhs, term()});
            else if (accept('-')) lhs = make(Kind::Sub, {lhs, term()});
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(Kind::Mul, {lhs, unary()});
            else if (accept('/')) lhs = make(Kind::Div, {lhs, unary()});
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Kind::Neg, {unary()});
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Kind::Pow, {base, unary()});
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = expr();
            if (!accept(')')) fail("missing ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::string tail(s_.substr(pos_));
            char* end = nullptr;
            double v = std::strtod(tail.c_str(), &end);
            if (end == tail.c_str()) fail("bad number");
            pos_ += static_cast<std::size_t>(end - tail.c_str());
            return make(Kind::Constant, {}, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            if (id == var_) return make(Kind::Variable);
            if (id == "pi") return make(Kind::Constant, {}, std::numbers::pi);
            Kind k;
            if (id == "sin") k = Kind::Sin;
            else if (id == "cos") k = Kind::Cos;
            else if (id == "exp") k = Kind::Exp;
            else if (id == "log") k = Kind::Log;
            else if (id == "sqrt") k = Kind::Sqrt;
            else fail("unknown identifier '" + std::string(id) + "'");
            if (!accept('(')) fail("expected '(' after function name");
            NodePtr arg = expr();
            if (!accept(')')) fail("missing ')'");
            return make(k, {arg});
        }
        fail("unexpected character");
    }

    std::string_view s_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

bool depends_on_variable(const Node& n) {
    if (n.kind == Kind::Variable) return true;
    for (const auto& a : n.args)
        if (depends_on_variable(*a)) return true;
    return false;
}

Jet eval(const Node& n, const Jet& x);

bool is_constant(const Node& n, double& v) {
    if (depends_on_variable(n)) return false;
    v = eval(n, Jet::constant(0.0)).value();
    return true;
}

Jet eval(const Node& n, const Jet& x) {
    switch (n.kind) {
        case Kind::Constant: return Jet::constant(n.value);
        case Kind::Variable: return x;
        case Kind::Add: return eval(*n.args[0], x) + eval(*n.args[1], x);
        case Kind::Sub: return eval(*n.args[0], x) - eval(*n.args[1], x);
        case Kind::Mul: return eval(*n.args[0], x) * eval(*n.args[1], x);
        case Kind::Div: return eval(*n.args[0], x) / eval(*n.args[1], x);
        case Kind::Neg: return -eval(*n.args[0], x);
        case Kind::Sin: return sin(eval(*n.args[0], x));
        case Kind::Cos: return cos(eval(*n.args[0], x));
        case Kind::Exp: return exp(eval(*n.args[0], x));
        case Kind::Log: return log(eval(*n.args[0], x));
        case Kind::Sqrt: return sqrt(eval(*n.args[0], x));
        case Kind::Pow: {
            double p;
            if (is_constant(*n.args[1], p)) return pow(eval(*n.args[0], x), p);
            return exp(eval(*n.args[1], x) * log(eval(*n.args[0], x)));
        }
    }
    return Jet();
}

}  // namespace

Expression Expression::parse(std::string_view text, std::string_view variable) {
    Parser p(text, variable);
    return Expression(std::string(text), p.parse());
}

Jet Expression::operator()(double x) const { return eval(*root_, Jet::variable(x)); }

JetFunction Expression::as_function() const {
    auto root = root_;
    return [root](double x) { return eval(*root, Jet::variable(x)); };
}

}  // namespace vwave
