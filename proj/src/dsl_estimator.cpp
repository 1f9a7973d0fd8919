#include "dynwalk/dsl/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace dynwalk::dsl {

namespace {

struct Interval {
    double lo, hi;

    static Interval point(double v) { return {v, v}; }
    bool is_point() const { return lo == hi; }
};

double safe_mul(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0; // runtime values are finite
    return a * b;
}

Interval imul(Interval a, Interval b) {
    const double c[4] = {safe_mul(a.lo, b.lo), safe_mul(a.lo, b.hi),
                         safe_mul(a.hi, b.lo), safe_mul(a.hi, b.hi)};
    return {std::min({c[0], c[1], c[2], c[3]}), std::max({c[0], c[1], c[2], c[3]})};
}

double safe_div(double a, double b) {
    if (a == 0.0) return 0.0;
    return a / b; // b never zero here; a/inf underflows to zero as intended
}

Interval idiv(Interval a, Interval b) {
    if (b.lo <= 0.0 && b.hi >= 0.0)
        throw Error("estimator division by an interval containing zero");
    // true divisions on the corners: the interpreter divides directly, and
    // multiplying by a rounded reciprocal could undershoot by an ulp
    const double c[4] = {safe_div(a.lo, b.lo), safe_div(a.lo, b.hi),
                         safe_div(a.hi, b.lo), safe_div(a.hi, b.hi)};
    return {std::min({c[0], c[1], c[2], c[3]}), std::max({c[0], c[1], c[2], c[3]})};
}

struct IntervalEnv {
    Interval prop, label, dist;
    double deg_cur, deg_prev, step;
};

Interval ieval(const ExprPtr& e, const IntervalEnv& env) {
    struct V {
        const IntervalEnv& env;

        Interval operator()(const Expr::Number& n) const { return Interval::point(n.value); }
        Interval operator()(const Expr::Param& p) const { return Interval::point(p.value); }
        Interval operator()(const Expr::ParamIndex& p) const {
            const Interval idx = ieval(p.index, env);
            if (idx.is_point()) {
                const double rounded = std::nearbyint(idx.lo);
                if (std::abs(idx.lo - rounded) <= 1e-9 && rounded >= 0.0 &&
                    rounded < static_cast<double>(p.values->size()))
                    return Interval::point((*p.values)[static_cast<std::size_t>(rounded)]);
            }
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const double v : *p.values) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            return {lo, hi};
        }
        Interval operator()(const Expr::State& s) const {
            switch (s.ref) {
            case StateRef::Prop: return env.prop;
            case StateRef::Lab: return env.label;
            case StateRef::DegCur: return Interval::point(env.deg_cur);
            case StateRef::DegPrev: return Interval::point(env.deg_prev);
            case StateRef::Step: return Interval::point(env.step);
            case StateRef::Dist: return env.dist;
            }
            return {0.0, 0.0};
        }
        Interval operator()(const Expr::Var& v) const {
            throw Error("internal: unsubstituted variable '" + v.name + "' in estimator");
        }
        Interval operator()(const Expr::Unary& u) const {
            const Interval x = ieval(u.operand, env);
            if (u.op == UnOp::Neg) return {-x.hi, -x.lo};
            if (x.is_point()) return Interval::point(x.lo == 0.0 ? 1.0 : 0.0);
            if (x.lo > 0.0 || x.hi < 0.0) return Interval::point(0.0); // never zero
            return {0.0, 1.0};
        }
        Interval operator()(const Expr::Binary& b) const {
            const Interval l = ieval(b.lhs, env);
            const Interval r = ieval(b.rhs, env);
            switch (b.op) {
            case BinOp::Add: return {l.lo + r.lo, l.hi + r.hi};
            case BinOp::Sub: return {l.lo - r.hi, l.hi - r.lo};
            case BinOp::Mul: return imul(l, r);
            case BinOp::Div: return idiv(l, r);
            case BinOp::Min: return {std::min(l.lo, r.lo), std::min(l.hi, r.hi)};
            case BinOp::Max: return {std::max(l.lo, r.lo), std::max(l.hi, r.hi)};
            case BinOp::Eq: {
                if (l.is_point() && r.is_point()) return Interval::point(l.lo == r.lo ? 1.0 : 0.0);
                const bool overlap = l.lo <= r.hi && r.lo <= l.hi;
                return overlap ? Interval{0.0, 1.0} : Interval::point(0.0);
            }
            case BinOp::Ne: {
                if (l.is_point() && r.is_point()) return Interval::point(l.lo != r.lo ? 1.0 : 0.0);
                const bool overlap = l.lo <= r.hi && r.lo <= l.hi;
                return overlap ? Interval{0.0, 1.0} : Interval::point(1.0);
            }
            case BinOp::Lt:
                if (l.hi < r.lo) return Interval::point(1.0);
                if (l.lo >= r.hi) return Interval::point(0.0);
                return {0.0, 1.0};
            case BinOp::Le:
                if (l.hi <= r.lo) return Interval::point(1.0);
                if (l.lo > r.hi) return Interval::point(0.0);
                return {0.0, 1.0};
            case BinOp::Gt:
                if (l.lo > r.hi) return Interval::point(1.0);
                if (l.hi <= r.lo) return Interval::point(0.0);
                return {0.0, 1.0};
            case BinOp::Ge:
                if (l.lo >= r.hi) return Interval::point(1.0);
                if (l.hi < r.lo) return Interval::point(0.0);
                return {0.0, 1.0};
            case BinOp::And: {
                const bool false_sure = (l.is_point() && l.lo == 0.0) ||
                                        (r.is_point() && r.lo == 0.0);
                if (false_sure) return Interval::point(0.0);
                const bool true_sure = !(l.lo <= 0.0 && l.hi >= 0.0) &&
                                       !(r.lo <= 0.0 && r.hi >= 0.0);
                return true_sure ? Interval::point(1.0) : Interval{0.0, 1.0};
            }
            case BinOp::Or: {
                const bool true_sure = (l.is_point() && l.lo != 0.0) ||
                                       (r.is_point() && r.lo != 0.0) ||
                                       !(l.lo <= 0.0 && l.hi >= 0.0) ||
                                       !(r.lo <= 0.0 && r.hi >= 0.0);
                const bool false_sure = l.is_point() && l.lo == 0.0 &&
                                        r.is_point() && r.lo == 0.0;
                if (false_sure) return Interval::point(0.0);
                return true_sure ? Interval::point(1.0) : Interval{0.0, 1.0};
            }
            }
            return {0.0, 0.0};
        }
    };
    return std::visit(V{env}, e->node);
}

void require_derivable(const AnalysisResult& res) {
    if (res.flag == EstimationFlag::None)
        throw Error("no estimator can be derived: " +
                    (res.diagnostic.empty() ? std::string("flag is NONE") : res.diagnostic));
}

ExprPtr rename_indexed(const ExprPtr& e, const char* prop_name, const char* label_name) {
    struct V {
        const ExprPtr& self;
        const char* prop_name;
        const char* label_name;

        ExprPtr operator()(const Expr::Number&) const { return self; }
        ExprPtr operator()(const Expr::Param&) const { return self; }
        ExprPtr operator()(const Expr::ParamIndex& p) const {
            auto n = std::make_shared<Expr>(*self);
            n->node = Expr::ParamIndex{p.name, p.values,
                                       rename_indexed(p.index, prop_name, label_name)};
            return n;
        }
        ExprPtr operator()(const Expr::State& s) const {
            if (s.ref == StateRef::Prop || s.ref == StateRef::Lab) {
                auto n = std::make_shared<Expr>(*self);
                n->node = Expr::Param{s.ref == StateRef::Prop ? prop_name : label_name, 0.0};
                return n;
            }
            return self;
        }
        ExprPtr operator()(const Expr::Var&) const { return self; }
        ExprPtr operator()(const Expr::Unary& u) const {
            auto n = std::make_shared<Expr>(*self);
            n->node = Expr::Unary{u.op, rename_indexed(u.operand, prop_name, label_name)};
            return n;
        }
        ExprPtr operator()(const Expr::Binary& b) const {
            auto n = std::make_shared<Expr>(*self);
            n->node = Expr::Binary{b.op, rename_indexed(b.lhs, prop_name, label_name),
                                   rename_indexed(b.rhs, prop_name, label_name)};
            return n;
        }
    };
    return std::visit(V{e, prop_name, label_name}, e->node);
}

} // namespace

double eval_max_estimate(const AnalysisResult& res, const EstimationInputs& in) {
    require_derivable(res);
    IntervalEnv env{/*prop=*/{0.0, in.prop_max},
                    /*label=*/{0.0, in.label_max},
                    /*dist=*/{0.0, 2.0},
                    in.deg_cur, in.deg_prev, in.step};
    double best = -std::numeric_limits<double>::infinity();
    for (const ExprPtr& leaf : res.unique_leaves)
        best = std::max(best, ieval(leaf, env).hi);
    return best;
}

double eval_sum_estimate(const AnalysisResult& res, const EstimationInputs& in) {
    require_derivable(res);
    // every indexed array collapses to its per-node SUM; the scalars are exact
    IntervalEnv env{/*prop=*/Interval::point(in.prop_sum),
                    /*label=*/Interval::point(in.label_sum),
                    /*dist=*/{0.0, 2.0},
                    in.deg_cur, in.deg_prev, in.step};
    double acc = 0.0;
    for (const ExprPtr& leaf : res.unique_leaves)
        acc += ieval(leaf, env).hi;
    const double avg = acc / static_cast<double>(res.unique_leaves.size());
    return res.flag == EstimationFlag::PerKernel ? avg * in.deg_cur : avg;
}

Estimator derive_max_estimator(const AnalysisResult& res) {
    require_derivable(res);
    return [res](const EstimationInputs& in) { return eval_max_estimate(res, in); };
}

Estimator derive_sum_estimator(const AnalysisResult& res) {
    require_derivable(res);
    return [res](const EstimationInputs& in) { return eval_sum_estimate(res, in); };
}

std::string render_max_estimator(const AnalysisResult& res) {
    if (res.flag == EstimationFlag::None) return "(none)";
    std::string out;
    if (res.unique_leaves.size() > 1) out += "max over branches of (";
    for (std::size_t i = 0; i < res.unique_leaves.size(); ++i) {
        if (i) out += ", ";
        out += to_string(rename_indexed(res.unique_leaves[i], "MAX(h)", "MAX(label)"));
    }
    if (res.unique_leaves.size() > 1) out += ")";
    return out;
}

std::string render_sum_estimator(const AnalysisResult& res) {
    if (res.flag == EstimationFlag::None) return "(none)";
    std::string out = "(";
    for (std::size_t i = 0; i < res.unique_leaves.size(); ++i) {
        if (i) out += " + ";
        out += to_string(rename_indexed(res.unique_leaves[i], "SUM(h)", "SUM(label)"));
    }
    out += ") / " + std::to_string(res.unique_leaves.size());
    if (res.flag == EstimationFlag::PerKernel) out += " * deg_cur";
    return out;
}

} // namespace dynwalk::dsl
