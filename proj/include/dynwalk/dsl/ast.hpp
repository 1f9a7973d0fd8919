#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace dynwalk::dsl {

enum class BinOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Min, Max };
enum class UnOp { Neg, Not };

// Values the weight function can read besides declared hyperparameters.
// Prop/Lab index the candidate edge's arrays; DegCur/DegPrev/Step/Dist come
// from the walker state. Dist is 0 for the previous node itself, 1 for a
// neighbor of the previous node, 2 otherwise (1 when there is no previous
// node yet, matching the builtin first-step fallback).
enum class StateRef { Prop, Lab, DegCur, DegPrev, Step, Dist };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    struct Number {
        double value;
    };
    struct Param {
        std::string name;
        double value;
    };
    // Hyperparameter array indexed by a runtime expression, e.g. schema[step].
    struct ParamIndex {
        std::string name;
        std::shared_ptr<const std::vector<double>> values;
        ExprPtr index;
    };
    struct State {
        StateRef ref;
    };
    struct Var {
        std::string name;
        int slot;
    };
    struct Unary {
        UnOp op;
        ExprPtr operand;
    };
    struct Binary {
        BinOp op;
        ExprPtr lhs;
        ExprPtr rhs;
    };

    std::variant<Number, Param, ParamIndex, State, Var, Unary, Binary> node;
    int line = 0;
    int col = 0;
};

struct Stmt {
    struct Return {
        ExprPtr value;
    };
    struct Let {
        std::string name;
        int slot;
        ExprPtr value;
    };
    struct Assign {
        std::string name;
        int slot;
        ExprPtr value;
    };
    struct If {
        ExprPtr cond;
        std::vector<Stmt> then_body;
        std::vector<Stmt> else_body;
    };
    struct While {
        ExprPtr cond;
        std::vector<Stmt> body;
    };

    std::variant<Return, Let, Assign, If, While> node;
    int line = 0;
    int col = 0;
};

struct Program {
    std::vector<std::pair<std::string, double>> scalar_params; // declaration order
    std::vector<std::pair<std::string, std::vector<double>>> array_params;
    std::vector<Stmt> body;
    int slot_count = 0;
    bool has_loops = false;
    std::string source_name;
};

const char* state_ref_name(StateRef r);

// Renders an expression with minimal parentheses; used by the analyzer
// report and diagnostics.
std::string to_string(const ExprPtr& e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

} // namespace dynwalk::dsl
