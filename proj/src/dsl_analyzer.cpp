#include "dynwalk/dsl/analyzer.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "dynwalk/dsl/estimator.hpp"

namespace dynwalk::dsl {

namespace {

// slot -> inlined definition along the current path
using Env = std::map<int, ExprPtr>;

ExprPtr substitute(const ExprPtr& e, const Env& env) {
    struct V {
        const ExprPtr& self;
        const Env& env;

        ExprPtr operator()(const Expr::Number&) const { return self; }
        ExprPtr operator()(const Expr::Param&) const { return self; }
        ExprPtr operator()(const Expr::State&) const { return self; }
        ExprPtr operator()(const Expr::ParamIndex& p) const {
            auto n = std::make_shared<Expr>(*self);
            n->node = Expr::ParamIndex{p.name, p.values, substitute(p.index, env)};
            return n;
        }
        ExprPtr operator()(const Expr::Var& v) const {
            const auto it = env.find(v.slot);
            if (it == env.end())
                throw Error("variable '" + v.name + "' used before definition");
            return it->second;
        }
        ExprPtr operator()(const Expr::Unary& u) const {
            auto n = std::make_shared<Expr>(*self);
            n->node = Expr::Unary{u.op, substitute(u.operand, env)};
            return n;
        }
        ExprPtr operator()(const Expr::Binary& b) const {
            auto n = std::make_shared<Expr>(*self);
            n->node = Expr::Binary{b.op, substitute(b.lhs, env), substitute(b.rhs, env)};
            return n;
        }
    };
    return std::visit(V{e, env}, e->node);
}

void collect_refs(const ExprPtr& e, std::set<StateRef>& state, std::set<std::string>& vars) {
    struct V {
        std::set<StateRef>& state;
        std::set<std::string>& vars;

        void operator()(const Expr::Number&) const {}
        void operator()(const Expr::Param&) const {} // hyperparameters are skipped
        void operator()(const Expr::ParamIndex& p) const { collect_refs(p.index, state, vars); }
        void operator()(const Expr::State& s) const { state.insert(s.ref); }
        void operator()(const Expr::Var& v) const { vars.insert(v.name); }
        void operator()(const Expr::Unary& u) const { collect_refs(u.operand, state, vars); }
        void operator()(const Expr::Binary& b) const {
            collect_refs(b.lhs, state, vars);
            collect_refs(b.rhs, state, vars);
        }
    };
    std::visit(V{state, vars}, e->node);
}

bool contains_ref(const ExprPtr& e, StateRef ref) {
    std::set<StateRef> state;
    std::set<std::string> vars;
    collect_refs(e, state, vars);
    return state.count(ref) > 0;
}

struct PathWalker {
    AnalysisResult& out;
    std::string& none_reason;

    void walk(const std::vector<Stmt>& body, std::size_t idx, Env env,
              std::vector<std::string> conds) {
        for (; idx < body.size(); ++idx) {
            const Stmt& s = body[idx];
            if (const auto* ret = std::get_if<Stmt::Return>(&s.node)) {
                Branch br;
                br.conditions = conds;
                // dependencies of the original expression: let-definitions it
                // pulls in plus the state values it reads
                std::set<StateRef> state;
                std::set<std::string> vars;
                collect_refs(ret->value, state, vars);
                br.value = substitute(ret->value, env);
                collect_refs(br.value, state, vars); // refs hidden behind lets
                for (const auto& v : vars) br.deps.push_back(v);
                for (const auto r : state) br.deps.push_back(state_ref_name(r));
                out.branches.push_back(std::move(br));
                return;
            }
            if (const auto* let = std::get_if<Stmt::Let>(&s.node)) {
                env[let->slot] = substitute(let->value, env);
                continue;
            }
            if (const auto* asg = std::get_if<Stmt::Assign>(&s.node)) {
                env[asg->slot] = substitute(asg->value, env);
                continue;
            }
            if (const auto* iff = std::get_if<Stmt::If>(&s.node)) {
                const std::string cond_text = to_string(substitute(iff->cond, env));
                // then-arm
                {
                    std::vector<Stmt> rest(iff->then_body);
                    rest.insert(rest.end(), body.begin() + static_cast<std::ptrdiff_t>(idx) + 1,
                                body.end());
                    auto c = conds;
                    c.push_back(cond_text);
                    walk(rest, 0, env, std::move(c));
                }
                // else-arm (possibly empty: fall through to the tail)
                {
                    std::vector<Stmt> rest(iff->else_body);
                    rest.insert(rest.end(), body.begin() + static_cast<std::ptrdiff_t>(idx) + 1,
                                body.end());
                    auto c = conds;
                    c.push_back("!(" + cond_text + ")");
                    walk(rest, 0, env, std::move(c));
                }
                return;
            }
            if (std::get_if<Stmt::While>(&s.node)) {
                none_reason = "loop construct at line " + std::to_string(s.line) +
                              " cannot be analyzed";
                return;
            }
        }
    }
};

// Conservative value range of an expression with nothing but the program's
// hyperparameters known; used to prove denominators cannot reach zero.
struct StaticRange {
    double lo, hi;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

double range_mul(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

StaticRange static_range(const ExprPtr& e);

StaticRange static_range_binary(const Expr::Binary& b) {
    const StaticRange l = static_range(b.lhs);
    const StaticRange r = static_range(b.rhs);
    switch (b.op) {
    case BinOp::Add: return {l.lo + r.lo, l.hi + r.hi};
    case BinOp::Sub: return {l.lo - r.hi, l.hi - r.lo};
    case BinOp::Mul: {
        const double c[4] = {range_mul(l.lo, r.lo), range_mul(l.lo, r.hi),
                             range_mul(l.hi, r.lo), range_mul(l.hi, r.hi)};
        return {std::min({c[0], c[1], c[2], c[3]}), std::max({c[0], c[1], c[2], c[3]})};
    }
    case BinOp::Div: {
        if (r.lo <= 0.0 && r.hi >= 0.0) return {-kInf, kInf}; // caller checks separately
        const StaticRange inv = r.lo > 0.0 ? StaticRange{r.hi == kInf ? 0.0 : 1.0 / r.hi, 1.0 / r.lo}
                                           : StaticRange{1.0 / r.hi, r.lo == -kInf ? 0.0 : 1.0 / r.lo};
        const double c[4] = {range_mul(l.lo, inv.lo), range_mul(l.lo, inv.hi),
                             range_mul(l.hi, inv.lo), range_mul(l.hi, inv.hi)};
        return {std::min({c[0], c[1], c[2], c[3]}), std::max({c[0], c[1], c[2], c[3]})};
    }
    case BinOp::Min: return {std::min(l.lo, r.lo), std::min(l.hi, r.hi)};
    case BinOp::Max: return {std::max(l.lo, r.lo), std::max(l.hi, r.hi)};
    default: return {0.0, 1.0}; // comparisons and logical operators
    }
}

StaticRange static_range(const ExprPtr& e) {
    struct V {
        StaticRange operator()(const Expr::Number& n) const { return {n.value, n.value}; }
        StaticRange operator()(const Expr::Param& p) const { return {p.value, p.value}; }
        StaticRange operator()(const Expr::ParamIndex& p) const {
            double lo = kInf, hi = -kInf;
            for (const double v : *p.values) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            return {lo, hi};
        }
        StaticRange operator()(const Expr::State& s) const {
            switch (s.ref) {
            case StateRef::Prop: return {0.0, kInf};
            case StateRef::Lab: return {0.0, 65535.0};
            case StateRef::DegCur: return {1.0, kInf};
            case StateRef::DegPrev: return {1.0, kInf};
            case StateRef::Step: return {0.0, kInf};
            case StateRef::Dist: return {0.0, 2.0};
            }
            return {-kInf, kInf};
        }
        StaticRange operator()(const Expr::Var&) const { return {-kInf, kInf}; }
        StaticRange operator()(const Expr::Unary& u) const {
            const StaticRange r = static_range(u.operand);
            if (u.op == UnOp::Neg) return {-r.hi, -r.lo};
            return {0.0, 1.0};
        }
        StaticRange operator()(const Expr::Binary& b) const { return static_range_binary(b); }
    };
    return std::visit(V{}, e->node);
}

// Finds a reason the bound derivation cannot handle this leaf, or empty.
std::string bound_blocker(const ExprPtr& e) {
    struct V {
        const ExprPtr& self;

        std::string operator()(const Expr::Number&) const { return {}; }
        std::string operator()(const Expr::Param&) const { return {}; }
        std::string operator()(const Expr::State&) const { return {}; }
        std::string operator()(const Expr::Var& v) const {
            return "internal: unsubstituted variable '" + v.name + "'";
        }
        std::string operator()(const Expr::ParamIndex& p) const {
            return bound_blocker(p.index);
        }
        std::string operator()(const Expr::Unary& u) const { return bound_blocker(u.operand); }
        std::string operator()(const Expr::Binary& b) const {
            if (b.op == BinOp::Div) {
                if (contains_ref(b.rhs, StateRef::Prop) || contains_ref(b.rhs, StateRef::Lab) ||
                    contains_ref(b.rhs, StateRef::Dist))
                    return "denominator at line " + std::to_string(self->line) +
                           " depends on a per-edge value";
                const StaticRange r = static_range(b.rhs);
                if (r.lo <= 0.0 && r.hi >= 0.0)
                    return "denominator at line " + std::to_string(self->line) +
                           " may reach zero";
            }
            if (auto s = bound_blocker(b.lhs); !s.empty()) return s;
            return bound_blocker(b.rhs);
        }
    };
    return std::visit(V{e}, e->node);
}

} // namespace

AnalysisResult analyze(const Program& prog) {
    AnalysisResult res;
    if (prog.has_loops) {
        res.flag = EstimationFlag::None;
        res.diagnostic = "loop constructs cannot be analyzed; execution stays on the "
                         "full-scan reservoir kernel";
        return res;
    }

    std::string none_reason;
    PathWalker walker{res, none_reason};
    walker.walk(prog.body, 0, {}, {});
    if (!none_reason.empty()) {
        res = AnalysisResult{};
        res.flag = EstimationFlag::None;
        res.diagnostic = none_reason;
        return res;
    }

    res.flag = EstimationFlag::PerKernel;
    for (Branch& br : res.branches) {
        const bool prop = contains_ref(br.value, StateRef::Prop);
        const bool label = contains_ref(br.value, StateRef::Lab);
        br.flag = (prop || label) ? EstimationFlag::PerStep : EstimationFlag::PerKernel;
        if (br.flag == EstimationFlag::PerStep) res.flag = EstimationFlag::PerStep;
        res.uses_prop = res.uses_prop || prop;
        res.uses_label = res.uses_label || label;

        if (contains_ref(br.value, StateRef::Dist)) {
            res.flag = EstimationFlag::None;
            res.diagnostic = "return expression at line " + std::to_string(br.value->line) +
                             " uses `dist`, which has no per-node aggregate";
            return res;
        }
        if (auto blocker = bound_blocker(br.value); !blocker.empty()) {
            res.flag = EstimationFlag::None;
            res.diagnostic = blocker;
            return res;
        }

        bool seen = false;
        for (const ExprPtr& leaf : res.unique_leaves)
            if (expr_equal(leaf, br.value)) { seen = true; break; }
        if (!seen) res.unique_leaves.push_back(br.value);
    }

    if (res.uses_prop) {
        res.preprocess_plan.push_back("MAX(h)");
        res.preprocess_plan.push_back("SUM(h)");
    }
    if (res.uses_label) {
        res.preprocess_plan.push_back("MAX(label)");
        res.preprocess_plan.push_back("SUM(label)");
    }
    return res;
}

std::string render_report(const Program& prog, const AnalysisResult& res) {
    std::ostringstream out;
    out << "weight function analysis: "
        << std::filesystem::path(prog.source_name).filename().string() << "\n";
    out << "flag: " << estimation_flag_name(res.flag) << "\n";
    if (!res.diagnostic.empty()) out << "diagnostic: " << res.diagnostic << "\n";

    if (!prog.scalar_params.empty() || !prog.array_params.empty()) {
        out << "hyperparameters:";
        for (const auto& [name, value] : prog.scalar_params) out << ' ' << name << '=' << value;
        for (const auto& [name, values] : prog.array_params) {
            out << ' ' << name << "=[";
            for (std::size_t i = 0; i < values.size(); ++i)
                out << (i ? "," : "") << values[i];
            out << ']';
        }
        out << "\n";
    }

    if (res.flag == EstimationFlag::None) return out.str();

    out << "branches:\n";
    for (std::size_t i = 0; i < res.branches.size(); ++i) {
        const Branch& br = res.branches[i];
        out << "  [" << i << "] when ";
        if (br.conditions.empty()) {
            out << "always";
        } else {
            for (std::size_t c = 0; c < br.conditions.size(); ++c)
                out << (c ? " && " : "") << br.conditions[c];
        }
        out << ": return " << to_string(br.value);
        out << "  deps: {";
        for (std::size_t d = 0; d < br.deps.size(); ++d)
            out << (d ? ", " : "") << br.deps[d];
        out << "}  flag: " << estimation_flag_name(br.flag) << "\n";
    }

    out << "preprocess:";
    if (res.preprocess_plan.empty()) {
        out << " none";
    } else {
        for (std::size_t i = 0; i < res.preprocess_plan.size(); ++i)
            out << (i ? ", " : " ") << res.preprocess_plan[i];
    }
    out << "\n";
    out << "max_estimator: " << render_max_estimator(res) << "\n";
    out << "sum_estimator: " << render_sum_estimator(res) << "\n";
    return out.str();
}

} // namespace dynwalk::dsl
