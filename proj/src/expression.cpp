#include "curlwave/expression.hpp"

#include "curlwave/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace curlwave {

struct Expression::Node {
    enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call1, Call2 } op = Op::Const;
    double value = 0.0;
    Var var = Var::X1;
    double (*fn1)(double) = nullptr;
    double (*fn2)(double, double) = nullptr;
    std::shared_ptr<const Node> a, b;

    double eval(const Bindings& v) const {
        switch (op) {
            case Op::Const: return value;
            case Op::Var:
                switch (var) {
                    case Var::X1: return v.x1;
                    case Var::X2: return v.x2;
                    case Var::X3: return v.x3;
                    case Var::R: return v.r;
                    case Var::Zeta: return v.zeta;
                }
                return 0.0;
            case Op::Neg: return -a->eval(v);
            case Op::Add: return a->eval(v) + b->eval(v);
            case Op::Sub: return a->eval(v) - b->eval(v);
            case Op::Mul: return a->eval(v) * b->eval(v);
            case Op::Div: return a->eval(v) / b->eval(v);
            case Op::Pow: return std::pow(a->eval(v), b->eval(v));
            case Op::Call1: return fn1(a->eval(v));
            case Op::Call2: return fn2(a->eval(v), b->eval(v));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

double f_abs(double x) { return std::abs(x); }
double f_sqrt(double x) { return std::sqrt(x); }
double f_exp(double x) { return std::exp(x); }
double f_log(double x) { return std::log(x); }
double f_cos(double x) { return std::cos(x); }
double f_sin(double x) { return std::sin(x); }
double f_tan(double x) { return std::tan(x); }
double f_cosh(double x) { return std::cosh(x); }
double f_sinh(double x) { return std::sinh(x); }
double f_tanh(double x) { return std::tanh(x); }
double f_sech(double x) { return 1.0 / std::cosh(x); }
double f_min(double x, double y) { return std::fmin(x, y); }
double f_max(double x, double y) { return std::fmax(x, y); }
double f_pow(double x, double y) { return std::pow(x, y); }

struct Unary {
    const char* name;
    double (*fn)(double);
};
struct Binary {
    const char* name;
    double (*fn)(double, double);
};

constexpr Unary unary_table[] = {{"abs", f_abs},   {"sqrt", f_sqrt}, {"exp", f_exp},
                                 {"log", f_log},   {"cos", f_cos},   {"sin", f_sin},
                                 {"tan", f_tan},   {"cosh", f_cosh}, {"sinh", f_sinh},
                                 {"tanh", f_tanh}, {"sech", f_sech}};
constexpr Binary binary_table[] = {{"min", f_min}, {"max", f_max}, {"pow", f_pow}};

NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_const(double v) {
    auto n = std::make_shared<Node>();
    n->value = v;
    return n;
}

class Parser {
public:
    Parser(const std::string& src, const std::vector<Var>& allowed, std::array<bool, 5>& used)
        : s_(src), allowed_(allowed), used_(used) {}

    NodePtr run() {
        auto n = expr();
        skip();
        if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression \"" + s_ + "\": " + what, 1, i_ + 1);
    }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool accept(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        auto n = term();
        for (;;) {
            if (accept('+')) n = make(Node::Op::Add, n, term());
            else if (accept('-')) n = make(Node::Op::Sub, n, term());
            else return n;
        }
    }

    NodePtr term() {
        auto n = unary();
        for (;;) {
            if (accept('*')) n = make(Node::Op::Mul, n, unary());
            else if (accept('/')) n = make(Node::Op::Div, n, unary());
            else return n;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Op::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        auto base = atom();
        if (accept('^')) return make(Node::Op::Pow, base, unary());
        return base;
    }

    NodePtr atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            auto n = expr();
            expect(')');
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const char* begin = s_.c_str() + i_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        i_ += static_cast<std::size_t>(end - begin);
        return make_const(v);
    }

    NodePtr name() {
        const std::size_t start = i_;
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            ++i_;
        const std::string id = s_.substr(start, i_ - start);
        skip();
        if (i_ < s_.size() && s_[i_] == '(') {
            ++i_;
            for (const auto& u : unary_table) {
                if (id != u.name) continue;
                auto n = std::make_shared<Node>();
                n->op = Node::Op::Call1;
                n->fn1 = u.fn;
                n->a = expr();
                expect(')');
                return n;
            }
            for (const auto& bfn : binary_table) {
                if (id != bfn.name) continue;
                auto n = std::make_shared<Node>();
                n->op = Node::Op::Call2;
                n->fn2 = bfn.fn;
                n->a = expr();
                expect(',');
                n->b = expr();
                expect(')');
                return n;
            }
            i_ = start;
            fail("unknown function '" + id + "'");
        }
        if (id == "pi") return make_const(std::numbers::pi);
        if (id == "e") return make_const(std::numbers::e);
        static const std::pair<const char*, Var> vars[] = {
            {"x1", Var::X1}, {"x2", Var::X2}, {"x3", Var::X3}, {"r", Var::R}, {"zeta", Var::Zeta}};
        for (const auto& [vname, var] : vars) {
            if (id != vname) continue;
            bool ok = false;
            for (Var a : allowed_) ok = ok || a == var;
            if (!ok) {
                i_ = start;
                fail("variable '" + id + "' is not available here");
            }
            used_[static_cast<int>(var)] = true;
            auto n = std::make_shared<Node>();
            n->op = Node::Op::Var;
            n->var = var;
            return n;
        }
        i_ = start;
        fail("unknown name '" + id + "'");
    }

    const std::string& s_;
    const std::vector<Var>& allowed_;
    std::array<bool, 5>& used_;
    std::size_t i_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& source, const std::vector<Var>& allowed) {
    Expression e;
    e.source_ = source;
    e.root_ = Parser(source, allowed, e.used_).run();
    return e;
}

Expression Expression::constant(double value) {
    Expression e;
    e.root_ = make_const(value);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    e.source_ = buf;
    return e;
}

double Expression::operator()(const Bindings& b) const { return root_->eval(b); }

bool Expression::uses(Var v) const { return used_[static_cast<int>(v)]; }

}  // namespace curlwave
