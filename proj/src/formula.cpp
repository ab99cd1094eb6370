#include "rsaware/formula.hpp"

#include <cctype>

namespace rsaware {

namespace {

enum class TokKind { Var, True, False, Not, And, Or, Xor, Implies, LParen, RParen, End };

struct Token {
    TokKind kind;
    int var = -1;  // 0-based
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    Lexer(std::string_view text, int k) : text_(text), k_(k) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.kind = TokKind::End;
            return t;
        }
        const char ch = text_[pos_];
        switch (ch) {
            case '(': advance(); t.kind = TokKind::LParen; return t;
            case ')': advance(); t.kind = TokKind::RParen; return t;
            case '!': advance(); t.kind = TokKind::Not; return t;
            case '&': advance(); t.kind = TokKind::And; return t;
            case '|': advance(); t.kind = TokKind::Or; return t;
            case '^': advance(); t.kind = TokKind::Xor; return t;
            case '-':
                advance();
                if (pos_ < text_.size() && text_[pos_] == '>') {
                    advance();
                    t.kind = TokKind::Implies;
                    return t;
                }
                throw ParseError("expected '->'", t.line, t.col);
            case 'T': advance(); t.kind = TokKind::True; return t;
            case 'F': advance(); t.kind = TokKind::False; return t;
            case 'c': {
                advance();
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    throw ParseError("expected digits after 'c'", t.line, t.col);
                long idx = 0;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    idx = idx * 10 + (text_[pos_] - '0');
                    if (idx > 1000) throw ParseError("variable index too large", t.line, t.col);
                    advance();
                }
                if (idx < 1 || idx > k_)
                    throw ParseError("variable c" + std::to_string(idx) +
                                         " out of range for arity " + std::to_string(k_),
                                     t.line, t.col);
                t.kind = TokKind::Var;
                t.var = static_cast<int>(idx - 1);
                return t;
            }
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'", t.line, t.col);
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            const char ch = text_[pos_];
            if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n')
                advance();
            else
                break;
        }
    }

    std::string_view text_;
    int k_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

class FormulaParser {
public:
    FormulaParser(std::string_view text, int k) : lex_(text, k) {
        f_.k_ = k;
        cur_ = lex_.next();
    }

    Formula run() {
        f_.root_ = parse_implies();
        expect_end();
        return std::move(f_);
    }

private:
    int add(Formula::Node n) {
        f_.nodes_.push_back(n);
        return static_cast<int>(f_.nodes_.size()) - 1;
    }

    void bump() { cur_ = lex_.next(); }

    void expect_end() {
        if (cur_.kind != TokKind::End)
            throw ParseError("unexpected trailing input", cur_.line, cur_.col);
    }

    int parse_implies() {
        int lhs = parse_or();
        if (cur_.kind == TokKind::Implies) {
            bump();
            int rhs = parse_implies();  // right-associative
            return add({Formula::Op::Implies, -1, lhs, rhs});
        }
        return lhs;
    }

    int parse_or() {
        int lhs = parse_xor();
        while (cur_.kind == TokKind::Or) {
            bump();
            int rhs = parse_xor();
            lhs = add({Formula::Op::Or, -1, lhs, rhs});
        }
        return lhs;
    }

    int parse_xor() {
        int lhs = parse_and();
        while (cur_.kind == TokKind::Xor) {
            bump();
            int rhs = parse_and();
            lhs = add({Formula::Op::Xor, -1, lhs, rhs});
        }
        return lhs;
    }

    int parse_and() {
        int lhs = parse_not();
        while (cur_.kind == TokKind::And) {
            bump();
            int rhs = parse_not();
            lhs = add({Formula::Op::And, -1, lhs, rhs});
        }
        return lhs;
    }

    int parse_not() {
        if (cur_.kind == TokKind::Not) {
            bump();
            int sub = parse_not();
            return add({Formula::Op::Not, -1, sub, -1});
        }
        return parse_atom();
    }

    int parse_atom() {
        switch (cur_.kind) {
            case TokKind::Var: {
                int v = cur_.var;
                bump();
                return add({Formula::Op::Var, v, -1, -1});
            }
            case TokKind::True: bump(); return add({Formula::Op::True, -1, -1, -1});
            case TokKind::False: bump(); return add({Formula::Op::False, -1, -1, -1});
            case TokKind::LParen: {
                bump();
                int sub = parse_implies();
                if (cur_.kind != TokKind::RParen)
                    throw ParseError("expected ')'", cur_.line, cur_.col);
                bump();
                return sub;
            }
            default: throw ParseError("expected variable, constant, '!' or '('", cur_.line, cur_.col);
        }
    }

    Lexer lex_;
    Token cur_;
    Formula f_;
};

Formula Formula::parse(std::string_view text, int k) {
    if (k < 1 || k > kMaxArity)
        throw ParseError("arity must be in [1, 16], got " + std::to_string(k), 1, 1);
    return FormulaParser(text, k).run();
}

bool Formula::eval(const Concept& c) const {
    if (c.arity() != k_) throw std::invalid_argument("Formula::eval: arity mismatch");
    return eval_node(root_, c);
}

bool Formula::eval_node(int idx, const Concept& c) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    switch (n.op) {
        case Op::Var: return c.bit(n.var) != 0;
        case Op::True: return true;
        case Op::False: return false;
        case Op::Not: return !eval_node(n.lhs, c);
        case Op::And: return eval_node(n.lhs, c) && eval_node(n.rhs, c);
        case Op::Or: return eval_node(n.lhs, c) || eval_node(n.rhs, c);
        case Op::Xor: return eval_node(n.lhs, c) != eval_node(n.rhs, c);
        case Op::Implies: return !eval_node(n.lhs, c) || eval_node(n.rhs, c);
    }
    return false;
}

}  // namespace rsaware
