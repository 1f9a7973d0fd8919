#include "dynwalk/dsl/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dynwalk::dsl {

namespace {

enum class Tok {
    End, Number, Ident,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Comma, Semi, Assign,
    Plus, Minus, Star, Slash,
    Eq, Ne, Lt, Le, Gt, Ge, AndAnd, OrOr, Bang,
};

struct Token {
    Tok kind = Tok::End;
    double number = 0.0;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (at_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        const char c = src_[at_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && at_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[at_ + 1])))) {
            const char* begin = src_.c_str() + at_;
            char* end = nullptr;
            tok_.number = std::strtod(begin, &end);
            tok_.kind = Tok::Number;
            bump(static_cast<std::size_t>(end - begin));
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t n = 0;
            while (at_ + n < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[at_ + n])) || src_[at_ + n] == '_'))
                ++n;
            tok_.kind = Tok::Ident;
            tok_.text = src_.substr(at_, n);
            bump(n);
            return;
        }
        auto two = [&](char a, char b) {
            return c == a && at_ + 1 < src_.size() && src_[at_ + 1] == b;
        };
        if (two('=', '=')) { tok_.kind = Tok::Eq; bump(2); return; }
        if (two('!', '=')) { tok_.kind = Tok::Ne; bump(2); return; }
        if (two('<', '=')) { tok_.kind = Tok::Le; bump(2); return; }
        if (two('>', '=')) { tok_.kind = Tok::Ge; bump(2); return; }
        if (two('&', '&')) { tok_.kind = Tok::AndAnd; bump(2); return; }
        if (two('|', '|')) { tok_.kind = Tok::OrOr; bump(2); return; }
        switch (c) {
        case '(': tok_.kind = Tok::LParen; break;
        case ')': tok_.kind = Tok::RParen; break;
        case '{': tok_.kind = Tok::LBrace; break;
        case '}': tok_.kind = Tok::RBrace; break;
        case '[': tok_.kind = Tok::LBracket; break;
        case ']': tok_.kind = Tok::RBracket; break;
        case ',': tok_.kind = Tok::Comma; break;
        case ';': tok_.kind = Tok::Semi; break;
        case '=': tok_.kind = Tok::Assign; break;
        case '+': tok_.kind = Tok::Plus; break;
        case '-': tok_.kind = Tok::Minus; break;
        case '*': tok_.kind = Tok::Star; break;
        case '/': tok_.kind = Tok::Slash; break;
        case '<': tok_.kind = Tok::Lt; break;
        case '>': tok_.kind = Tok::Gt; break;
        case '!': tok_.kind = Tok::Bang; break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
        bump(1);
    }

    void skip_ws() {
        while (at_ < src_.size()) {
            const char c = src_[at_];
            if (c == '#') {
                while (at_ < src_.size() && src_[at_] != '\n') ++at_;
            } else if (c == '\n') {
                ++at_;
                ++line_;
                col_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump(1);
            } else {
                break;
            }
        }
    }

    void bump(std::size_t n) {
        at_ += n;
        col_ += static_cast<int>(n);
    }

    const std::string& src_;
    std::size_t at_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

const std::unordered_map<std::string, StateRef>& state_refs() {
    static const std::unordered_map<std::string, StateRef> m = {
        {"h", StateRef::Prop},         {"label", StateRef::Lab},
        {"deg_cur", StateRef::DegCur}, {"deg_prev", StateRef::DegPrev},
        {"step", StateRef::Step},      {"dist", StateRef::Dist},
    };
    return m;
}

class Parser {
public:
    Parser(const std::string& src, std::string name)
        : lex_(src) {
        prog_.source_name = std::move(name);
    }

    Program run() {
        while (peek_ident("param")) parse_param();
        expect_ident("fn");
        const Token fname = expect(Tok::Ident, "function name");
        if (fname.text != "weight")
            throw ParseError("expected 'fn weight', got 'fn " + fname.text + "'",
                             fname.line, fname.col);
        expect(Tok::LParen, "'('");
        expect(Tok::RParen, "')'");
        scopes_.emplace_back();
        prog_.body = parse_block();
        if (peek().kind != Tok::End)
            throw ParseError("trailing input after weight function", peek().line, peek().col);
        if (!prog_.has_loops && !returns_on_all_paths(prog_.body))
            throw ParseError("weight function must return a value on every path", 1, 1);
        return std::move(prog_);
    }

private:
    const Token& peek() const { return lex_.peek(); }

    bool peek_ident(const char* kw) const {
        return peek().kind == Tok::Ident && peek().text == kw;
    }

    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind)
            throw ParseError(std::string("expected ") + what, peek().line, peek().col);
        return lex_.take();
    }

    void expect_ident(const char* kw) {
        if (!peek_ident(kw))
            throw ParseError(std::string("expected '") + kw + "'", peek().line, peek().col);
        lex_.take();
    }

    void parse_param() {
        lex_.take(); // param
        const Token name = expect(Tok::Ident, "parameter name");
        if (state_refs().count(name.text))
            throw ParseError("'" + name.text + "' is a builtin name", name.line, name.col);
        if (param_names_.count(name.text))
            throw ParseError("parameter '" + name.text + "' already declared", name.line, name.col);
        expect(Tok::Assign, "'='");
        if (peek().kind == Tok::LBracket) {
            lex_.take();
            std::vector<double> values;
            values.push_back(parse_signed_number());
            while (peek().kind == Tok::Comma) {
                lex_.take();
                values.push_back(parse_signed_number());
            }
            expect(Tok::RBracket, "']'");
            prog_.array_params.emplace_back(name.text, std::move(values));
        } else {
            prog_.scalar_params.emplace_back(name.text, parse_signed_number());
        }
        param_names_.insert(name.text);
        expect(Tok::Semi, "';'");
    }

    double parse_signed_number() {
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            lex_.take();
            neg = true;
        }
        const Token num = expect(Tok::Number, "number");
        return neg ? -num.number : num.number;
    }

    std::vector<Stmt> parse_block() {
        expect(Tok::LBrace, "'{'");
        scopes_.emplace_back();
        std::vector<Stmt> body;
        while (peek().kind != Tok::RBrace) {
            if (peek().kind == Tok::End)
                throw ParseError("unterminated block", peek().line, peek().col);
            body.push_back(parse_stmt());
        }
        lex_.take();
        scopes_.pop_back();
        return body;
    }

    Stmt parse_stmt() {
        const Token& t = peek();
        Stmt s;
        s.line = t.line;
        s.col = t.col;
        if (peek_ident("return")) {
            lex_.take();
            Stmt::Return r{parse_expr()};
            expect(Tok::Semi, "';'");
            s.node = std::move(r);
            return s;
        }
        if (peek_ident("if")) {
            lex_.take();
            expect(Tok::LParen, "'('");
            Stmt::If node;
            node.cond = parse_expr();
            expect(Tok::RParen, "')'");
            node.then_body = parse_block();
            if (peek_ident("else")) {
                lex_.take();
                if (peek_ident("if")) {
                    node.else_body.push_back(parse_stmt());
                } else {
                    node.else_body = parse_block();
                }
            }
            s.node = std::move(node);
            return s;
        }
        if (peek_ident("while")) {
            const Token w = lex_.take();
            expect(Tok::LParen, "'('");
            Stmt::While node;
            node.cond = parse_expr();
            expect(Tok::RParen, "')'");
            node.body = parse_block();
            prog_.has_loops = true;
            s.line = w.line;
            s.node = std::move(node);
            return s;
        }
        if (peek_ident("let")) {
            lex_.take();
            const Token name = expect(Tok::Ident, "variable name");
            if (state_refs().count(name.text) || param_names_.count(name.text))
                throw ParseError("'" + name.text + "' is already a builtin or parameter name",
                                 name.line, name.col);
            if (lookup_slot(name.text) >= 0)
                throw ParseError("variable '" + name.text + "' already declared",
                                 name.line, name.col);
            expect(Tok::Assign, "'='");
            Stmt::Let node{name.text, prog_.slot_count, parse_expr()};
            expect(Tok::Semi, "';'");
            scopes_.back()[name.text] = prog_.slot_count++;
            s.node = std::move(node);
            return s;
        }
        if (peek().kind == Tok::Ident) {
            const Token name = lex_.take();
            const int slot = lookup_slot(name.text);
            if (slot < 0)
                throw ParseError("assignment to undeclared variable '" + name.text + "'",
                                 name.line, name.col);
            expect(Tok::Assign, "'='");
            Stmt::Assign node{name.text, slot, parse_expr()};
            expect(Tok::Semi, "';'");
            s.node = std::move(node);
            return s;
        }
        throw ParseError("expected statement", t.line, t.col);
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (peek().kind == Tok::OrOr) {
            const Token op = lex_.take();
            lhs = make_binary(BinOp::Or, lhs, parse_and(), op);
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_cmp();
        while (peek().kind == Tok::AndAnd) {
            const Token op = lex_.take();
            lhs = make_binary(BinOp::And, lhs, parse_cmp(), op);
        }
        return lhs;
    }

    ExprPtr parse_cmp() {
        ExprPtr lhs = parse_add();
        BinOp op;
        switch (peek().kind) {
        case Tok::Eq: op = BinOp::Eq; break;
        case Tok::Ne: op = BinOp::Ne; break;
        case Tok::Lt: op = BinOp::Lt; break;
        case Tok::Le: op = BinOp::Le; break;
        case Tok::Gt: op = BinOp::Gt; break;
        case Tok::Ge: op = BinOp::Ge; break;
        default: return lhs;
        }
        const Token t = lex_.take();
        return make_binary(op, lhs, parse_add(), t);
    }

    ExprPtr parse_add() {
        ExprPtr lhs = parse_mul();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token op = lex_.take();
            lhs = make_binary(op.kind == Tok::Plus ? BinOp::Add : BinOp::Sub,
                              lhs, parse_mul(), op);
        }
        return lhs;
    }

    ExprPtr parse_mul() {
        ExprPtr lhs = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token op = lex_.take();
            lhs = make_binary(op.kind == Tok::Star ? BinOp::Mul : BinOp::Div,
                              lhs, parse_unary(), op);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (peek().kind == Tok::Minus || peek().kind == Tok::Bang) {
            const Token op = lex_.take();
            auto e = std::make_shared<Expr>();
            e->line = op.line;
            e->col = op.col;
            e->node = Expr::Unary{op.kind == Tok::Minus ? UnOp::Neg : UnOp::Not, parse_unary()};
            return e;
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token t = peek();
        if (t.kind == Tok::Number) {
            lex_.take();
            auto e = std::make_shared<Expr>();
            e->line = t.line;
            e->col = t.col;
            e->node = Expr::Number{t.number};
            return e;
        }
        if (t.kind == Tok::LParen) {
            lex_.take();
            ExprPtr inner = parse_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "min" || t.text == "max") {
                lex_.take();
                expect(Tok::LParen, "'('");
                ExprPtr a = parse_expr();
                expect(Tok::Comma, "','");
                ExprPtr b = parse_expr();
                expect(Tok::RParen, "')'");
                auto e = std::make_shared<Expr>();
                e->line = t.line;
                e->col = t.col;
                e->node = Expr::Binary{t.text == "min" ? BinOp::Min : BinOp::Max, a, b};
                return e;
            }
            lex_.take();
            return resolve_identifier(t);
        }
        throw ParseError("expected expression", t.line, t.col);
    }

    ExprPtr resolve_identifier(const Token& t) {
        auto e = std::make_shared<Expr>();
        e->line = t.line;
        e->col = t.col;
        if (auto it = state_refs().find(t.text); it != state_refs().end()) {
            e->node = Expr::State{it->second};
            return e;
        }
        for (const auto& [name, value] : prog_.scalar_params) {
            if (name == t.text) {
                e->node = Expr::Param{name, value};
                return e;
            }
        }
        for (const auto& [name, values] : prog_.array_params) {
            if (name == t.text) {
                if (peek().kind != Tok::LBracket)
                    throw ParseError("array parameter '" + t.text + "' must be indexed",
                                     t.line, t.col);
                lex_.take();
                ExprPtr idx = parse_expr();
                expect(Tok::RBracket, "']'");
                e->node = Expr::ParamIndex{
                    name, std::make_shared<const std::vector<double>>(values), idx};
                return e;
            }
        }
        if (const int slot = lookup_slot(t.text); slot >= 0) {
            e->node = Expr::Var{t.text, slot};
            return e;
        }
        throw ParseError("undeclared identifier '" + t.text + "'", t.line, t.col);
    }

    static ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, const Token& t) {
        auto e = std::make_shared<Expr>();
        e->line = t.line;
        e->col = t.col;
        e->node = Expr::Binary{op, std::move(lhs), std::move(rhs)};
        return e;
    }

    int lookup_slot(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            if (auto f = it->find(name); f != it->end()) return f->second;
        }
        return -1;
    }

    static bool returns_on_all_paths(const std::vector<Stmt>& body) {
        for (const Stmt& s : body) {
            if (std::holds_alternative<Stmt::Return>(s.node)) return true;
            if (const auto* iff = std::get_if<Stmt::If>(&s.node)) {
                if (!iff->else_body.empty() && returns_on_all_paths(iff->then_body) &&
                    returns_on_all_paths(iff->else_body))
                    return true;
            }
        }
        return false;
    }

    Lexer lex_;
    Program prog_;
    std::unordered_set<std::string> param_names_;
    std::vector<std::unordered_map<std::string, int>> scopes_;
};

} // namespace

Program parse(const std::string& source, const std::string& source_name) {
    Parser p(source, source_name);
    Program prog = p.run();
    if (prog.slot_count > 64)
        throw ParseError("too many local variables (limit 64)", 1, 1);
    return prog;
}

Program parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open weight function file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

const char* state_ref_name(StateRef r) {
    switch (r) {
    case StateRef::Prop: return "h";
    case StateRef::Lab: return "label";
    case StateRef::DegCur: return "deg_cur";
    case StateRef::DegPrev: return "deg_prev";
    case StateRef::Step: return "step";
    case StateRef::Dist: return "dist";
    }
    return "?";
}

} // namespace dynwalk::dsl
