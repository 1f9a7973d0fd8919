#include "dynwalk/dsl/ast.hpp"

#include <cmath>
#include <sstream>

namespace dynwalk::dsl {

namespace {

int precedence(BinOp op) {
    switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq: case BinOp::Ne: case BinOp::Lt:
    case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 3;
    case BinOp::Add: case BinOp::Sub: return 4;
    case BinOp::Mul: case BinOp::Div: return 5;
    case BinOp::Min: case BinOp::Max: return 7;
    }
    return 7;
}

const char* op_text(BinOp op) {
    switch (op) {
    case BinOp::Add: return " + ";
    case BinOp::Sub: return " - ";
    case BinOp::Mul: return " * ";
    case BinOp::Div: return " / ";
    case BinOp::Eq: return " == ";
    case BinOp::Ne: return " != ";
    case BinOp::Lt: return " < ";
    case BinOp::Le: return " <= ";
    case BinOp::Gt: return " > ";
    case BinOp::Ge: return " >= ";
    case BinOp::And: return " && ";
    case BinOp::Or: return " || ";
    default: return "?";
    }
}

std::string number_text(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::ostringstream ss;
        ss << v;
        const std::string s = ss.str();
        if (s.find('.') == std::string::npos && s.find('e') == std::string::npos)
            return s;
        return s;
    }
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

void print(const ExprPtr& e, int parent_prec, std::string& out) {
    struct V {
        int parent_prec;
        std::string& out;

        void operator()(const Expr::Number& n) const { out += number_text(n.value); }
        void operator()(const Expr::Param& p) const { out += p.name; }
        void operator()(const Expr::ParamIndex& p) const {
            out += p.name;
            out += '[';
            print(p.index, 0, out);
            out += ']';
        }
        void operator()(const Expr::State& s) const { out += state_ref_name(s.ref); }
        void operator()(const Expr::Var& v) const { out += v.name; }
        void operator()(const Expr::Unary& u) const {
            const bool parens = parent_prec > 6;
            if (parens) out += '(';
            out += (u.op == UnOp::Neg) ? '-' : '!';
            print(u.operand, 6, out);
            if (parens) out += ')';
        }
        void operator()(const Expr::Binary& b) const {
            if (b.op == BinOp::Min || b.op == BinOp::Max) {
                out += (b.op == BinOp::Min) ? "min(" : "max(";
                print(b.lhs, 0, out);
                out += ", ";
                print(b.rhs, 0, out);
                out += ')';
                return;
            }
            const int prec = precedence(b.op);
            const bool parens = prec < parent_prec;
            if (parens) out += '(';
            print(b.lhs, prec, out);
            out += op_text(b.op);
            print(b.rhs, prec + 1, out);
            if (parens) out += ')';
        }
    };
    std::visit(V{parent_prec, out}, e->node);
}

} // namespace

std::string to_string(const ExprPtr& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    struct V {
        const Expr& other;

        bool operator()(const Expr::Number& n) const {
            return std::get<Expr::Number>(other.node).value == n.value;
        }
        bool operator()(const Expr::Param& p) const {
            const auto& o = std::get<Expr::Param>(other.node);
            return o.name == p.name && o.value == p.value;
        }
        bool operator()(const Expr::ParamIndex& p) const {
            const auto& o = std::get<Expr::ParamIndex>(other.node);
            return o.name == p.name && expr_equal(o.index, p.index);
        }
        bool operator()(const Expr::State& s) const {
            return std::get<Expr::State>(other.node).ref == s.ref;
        }
        bool operator()(const Expr::Var& v) const {
            return std::get<Expr::Var>(other.node).slot == v.slot;
        }
        bool operator()(const Expr::Unary& u) const {
            const auto& o = std::get<Expr::Unary>(other.node);
            return o.op == u.op && expr_equal(o.operand, u.operand);
        }
        bool operator()(const Expr::Binary& b) const {
            const auto& o = std::get<Expr::Binary>(other.node);
            return o.op == b.op && expr_equal(o.lhs, b.lhs) && expr_equal(o.rhs, b.rhs);
        }
    };
    return std::visit(V{*b}, a->node);
}

} // namespace dynwalk::dsl
