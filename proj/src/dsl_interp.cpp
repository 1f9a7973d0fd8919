#include "dynwalk/dsl/interp.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace dynwalk::dsl {

namespace {

constexpr std::uint64_t kLoopBudget = 100000;

struct EvalCtx {
    const Graph& g;
    const WalkerState& st;
    EdgeIndex e;
    std::array<double, 64> slots{};
    std::uint64_t loop_budget = kLoopBudget;
};

double state_value(StateRef ref, const EvalCtx& ctx) {
    switch (ref) {
    case StateRef::Prop:
        return static_cast<double>(ctx.g.edge_prop(ctx.e));
    case StateRef::Lab:
        return static_cast<double>(ctx.g.edge_label(ctx.e));
    case StateRef::DegCur:
        return static_cast<double>(ctx.g.degree(ctx.st.cur));
    case StateRef::DegPrev:
        return static_cast<double>(ctx.st.has_prev() ? ctx.st.prev_degree
                                                     : ctx.g.degree(ctx.st.cur));
    case StateRef::Step:
        return static_cast<double>(ctx.st.step);
    case StateRef::Dist: {
        if (!ctx.st.has_prev()) return 1.0;
        const VertexId u = ctx.g.edge_target(ctx.e);
        if (u == ctx.st.prev) return 0.0;
        return ctx.g.has_edge(ctx.st.prev, u) ? 1.0 : 2.0;
    }
    }
    return 0.0;
}

double eval(const ExprPtr& e, EvalCtx& ctx);

double eval_binary(const Expr::Binary& b, EvalCtx& ctx) {
    // short-circuit logical operators
    if (b.op == BinOp::And) return (eval(b.lhs, ctx) != 0.0 && eval(b.rhs, ctx) != 0.0) ? 1.0 : 0.0;
    if (b.op == BinOp::Or) return (eval(b.lhs, ctx) != 0.0 || eval(b.rhs, ctx) != 0.0) ? 1.0 : 0.0;
    const double l = eval(b.lhs, ctx);
    const double r = eval(b.rhs, ctx);
    switch (b.op) {
    case BinOp::Add: return l + r;
    case BinOp::Sub: return l - r;
    case BinOp::Mul: return l * r;
    case BinOp::Div:
        if (r == 0.0) throw Error("weight function divided by zero");
        return l / r;
    case BinOp::Eq: return l == r ? 1.0 : 0.0;
    case BinOp::Ne: return l != r ? 1.0 : 0.0;
    case BinOp::Lt: return l < r ? 1.0 : 0.0;
    case BinOp::Le: return l <= r ? 1.0 : 0.0;
    case BinOp::Gt: return l > r ? 1.0 : 0.0;
    case BinOp::Ge: return l >= r ? 1.0 : 0.0;
    case BinOp::Min: return std::min(l, r);
    case BinOp::Max: return std::max(l, r);
    default: return 0.0;
    }
}

double eval(const ExprPtr& e, EvalCtx& ctx) {
    struct V {
        EvalCtx& ctx;

        double operator()(const Expr::Number& n) const { return n.value; }
        double operator()(const Expr::Param& p) const { return p.value; }
        double operator()(const Expr::ParamIndex& p) const {
            const double raw = eval(p.index, ctx);
            const double rounded = std::nearbyint(raw);
            if (std::abs(raw - rounded) > 1e-9 || rounded < 0.0 ||
                rounded >= static_cast<double>(p.values->size()))
                throw Error("index into '" + p.name + "' out of range: " + std::to_string(raw));
            return (*p.values)[static_cast<std::size_t>(rounded)];
        }
        double operator()(const Expr::State& s) const { return state_value(s.ref, ctx); }
        double operator()(const Expr::Var& v) const { return ctx.slots[static_cast<std::size_t>(v.slot)]; }
        double operator()(const Expr::Unary& u) const {
            const double x = eval(u.operand, ctx);
            return u.op == UnOp::Neg ? -x : (x == 0.0 ? 1.0 : 0.0);
        }
        double operator()(const Expr::Binary& b) const { return eval_binary(b, ctx); }
    };
    return std::visit(V{ctx}, e->node);
}

std::optional<double> exec(const std::vector<Stmt>& body, EvalCtx& ctx) {
    for (const Stmt& s : body) {
        if (const auto* ret = std::get_if<Stmt::Return>(&s.node)) {
            return eval(ret->value, ctx);
        } else if (const auto* let = std::get_if<Stmt::Let>(&s.node)) {
            ctx.slots[static_cast<std::size_t>(let->slot)] = eval(let->value, ctx);
        } else if (const auto* asg = std::get_if<Stmt::Assign>(&s.node)) {
            ctx.slots[static_cast<std::size_t>(asg->slot)] = eval(asg->value, ctx);
        } else if (const auto* iff = std::get_if<Stmt::If>(&s.node)) {
            const auto& branch = eval(iff->cond, ctx) != 0.0 ? iff->then_body : iff->else_body;
            if (auto r = exec(branch, ctx)) return r;
        } else if (const auto* wh = std::get_if<Stmt::While>(&s.node)) {
            while (eval(wh->cond, ctx) != 0.0) {
                if (ctx.loop_budget-- == 0)
                    throw Error("weight function exceeded the loop iteration budget");
                if (auto r = exec(wh->body, ctx)) return r;
            }
        }
    }
    return std::nullopt;
}

} // namespace

double eval_weight(const Program& prog, const Graph& g, const WalkerState& st, EdgeIndex e) {
    EvalCtx ctx{g, st, e};
    if (auto r = exec(prog.body, ctx)) return *r;
    throw Error("weight function fell off the end without returning");
}

} // namespace dynwalk::dsl
