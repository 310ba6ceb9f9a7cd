#pragma once

// Text mini-language for operator expressions and Laurent polynomials.
//
//   expr      := ['+'|'-'] term (('+'|'-') term)*
//   term      := factor ('*' factor)*
//   factor    := rational | atom | '(' expr ')'
//   atom      := invariant | generator
//   invariant := "Omega" ['(' laurent ';' laurent ')'] | "OmegaC"
//              | "T" '[' int ']' ['(' laurent (';' laurent)* ')']
//              | "S" '[' int ']' | "D" '[' int ']'
//   generator := label ['[' int (',' int)* ']'] ['(' laurent ')']
//   laurent   := ['+'|'-'] lterm (('+'|'-') lterm)*
//   lterm     := coeff ['*' lmono] | lmono
//   lmono     := 't' ['^' ['-'] int] | name
//   coeff     := int ['/' int]
//
// Whitespace is insignificant; ';' separates Laurent arguments; names like
// p1..pn resolve against the bound environment (the Lagrange basis of the
// active evaluation points). Omega, OmegaC, T, S, D are reserved.

#include "loopcas/invariants.hpp"
#include "loopcas/laurent.hpp"
#include "loopcas/roots.hpp"
#include "loopcas/uea.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopcas {

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)), line(l), column(c) {}
};

struct OperatorExpr;

struct ExprAtom {
    enum class Kind { Generator, Invariant, Group };
    Kind kind = Kind::Generator;
    std::string label;                  // generator label, suffix folded in
    std::optional<LaurentPoly> arg;     // generator Laurent argument (1 is normalized away)
    InvariantSpec inv;                  // invariant payload
    bool inv_default_args = false;      // T[k] written without an argument list
    std::shared_ptr<OperatorExpr> sub;  // parenthesized subexpression

    friend bool operator==(const ExprAtom& a, const ExprAtom& b);
};

struct ExprTerm {
    Rational coeff = Rational(1);
    std::vector<ExprAtom> atoms;
    friend bool operator==(const ExprTerm&, const ExprTerm&) = default;
};

struct OperatorExpr {
    std::vector<ExprTerm> terms;
    friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;
};

inline bool operator==(const ExprAtom& a, const ExprAtom& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case ExprAtom::Kind::Generator:
        return a.label == b.label && a.arg == b.arg;
    case ExprAtom::Kind::Invariant:
        return a.inv.kind == b.inv.kind && a.inv.k == b.inv.k && a.inv.args == b.inv.args &&
               a.inv_default_args == b.inv_default_args;
    case ExprAtom::Kind::Group:
        return (a.sub && b.sub) ? *a.sub == *b.sub : a.sub == b.sub;
    }
    return false;
}

using LaurentEnv = std::map<std::string, LaurentPoly>;

namespace detail {

struct Token {
    enum class Type { Ident, Int, LBracket, RBracket, LParen, RParen, Plus, Minus, Star, Slash, Caret, Semi, Comma, End };
    Type type = Type::End;
    std::string text;
    int line = 1, column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' || src_[pos_] == '\n'))
            bump();
        tok_.line = line_;
        tok_.column = col_;
        tok_.text.clear();
        if (pos_ >= src_.size()) {
            tok_.type = Token::Type::End;
            return;
        }
        char c = src_[pos_];
        auto single = [&](Token::Type t) {
            tok_.type = t;
            tok_.text = c;
            bump();
        };
        switch (c) {
        case '[': return single(Token::Type::LBracket);
        case ']': return single(Token::Type::RBracket);
        case '(': return single(Token::Type::LParen);
        case ')': return single(Token::Type::RParen);
        case '+': return single(Token::Type::Plus);
        case '-': return single(Token::Type::Minus);
        case '*': return single(Token::Type::Star);
        case '/': return single(Token::Type::Slash);
        case '^': return single(Token::Type::Caret);
        case ';': return single(Token::Type::Semi);
        case ',': return single(Token::Type::Comma);
        default: break;
        }
        if (c >= '0' && c <= '9') {
            tok_.type = Token::Type::Int;
            while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                tok_.text += src_[pos_];
                bump();
            }
            return;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            tok_.type = Token::Type::Ident;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                bool ident_char = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') ||
                                  d == '_' || d == '\'';
                if (!ident_char) break;
                tok_.text += d;
                bump();
            }
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    Parser(std::string_view src, const LaurentEnv* env) : lex_(src), env_(env) {}

    OperatorExpr parse_expr_all() {
        OperatorExpr e = parse_expr();
        expect_end();
        return e;
    }

    LaurentPoly parse_laurent_all() {
        LaurentPoly p = parse_laurent();
        expect_end();
        return p;
    }

private:
    using T = Token::Type;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lex_.peek().line, lex_.peek().column); }

    void expect_end() {
        if (lex_.peek().type != T::End) fail("trailing input");
    }

    Token expect(T type, const char* what) {
        if (lex_.peek().type != type) fail(std::string("expected ") + what);
        return lex_.take();
    }

    long long parse_int_lit() {
        Token t = expect(T::Int, "integer");
        try {
            return std::stoll(t.text);
        } catch (const std::exception&) {
            throw ParseError("integer literal out of range", t.line, t.column);
        }
    }

    Rational parse_rational_after(Token first) {
        Rational r = Rational::parse_or_throw(first.text);
        if (lex_.peek().type == T::Slash) {
            lex_.take();
            Token den = expect(T::Int, "denominator");
            Rational d = Rational::parse_or_throw(den.text);
            if (d.is_zero()) throw ParseError("zero denominator", den.line, den.column);
            r /= d;
        }
        return r;
    }

    OperatorExpr parse_expr() {
        OperatorExpr out;
        bool negate = false;
        if (lex_.peek().type == T::Plus) {
            lex_.take();
        } else if (lex_.peek().type == T::Minus) {
            lex_.take();
            negate = true;
        }
        out.terms.push_back(parse_term(negate));
        while (lex_.peek().type == T::Plus || lex_.peek().type == T::Minus) {
            bool minus = lex_.take().type == T::Minus;
            out.terms.push_back(parse_term(minus));
        }
        return out;
    }

    ExprTerm parse_term(bool negate) {
        ExprTerm term;
        if (negate) term.coeff = Rational(-1);
        parse_factor_into(term);
        while (lex_.peek().type == T::Star) {
            lex_.take();
            parse_factor_into(term);
        }
        return term;
    }

    void parse_factor_into(ExprTerm& term) {
        const Token& t = lex_.peek();
        switch (t.type) {
        case T::Int: {
            Token first = lex_.take();
            term.coeff *= parse_rational_after(first);
            return;
        }
        case T::LParen: {
            lex_.take();
            ExprAtom atom;
            atom.kind = ExprAtom::Kind::Group;
            atom.sub = std::make_shared<OperatorExpr>(parse_expr());
            expect(T::RParen, "')'");
            term.atoms.push_back(std::move(atom));
            return;
        }
        case T::Ident:
            term.atoms.push_back(parse_atom());
            return;
        default:
            fail("expected a coefficient, generator, operator name or '('");
        }
    }

    ExprAtom parse_atom() {
        Token name = lex_.take();
        if (name.text == "Omega" || name.text == "OmegaC") {
            ExprAtom atom;
            atom.kind = ExprAtom::Kind::Invariant;
            if (name.text == "OmegaC") {
                atom.inv.kind = InvariantKind::CasimirC;
                return atom;
            }
            if (lex_.peek().type == T::LParen) {
                lex_.take();
                atom.inv.kind = InvariantKind::GeneralizedCasimir;
                atom.inv.args.push_back(parse_laurent());
                expect(T::Semi, "';'");
                atom.inv.args.push_back(parse_laurent());
                expect(T::RParen, "')'");
            } else {
                atom.inv.kind = InvariantKind::Casimir;
            }
            return atom;
        }
        if ((name.text == "T" || name.text == "S" || name.text == "D") && lex_.peek().type == T::LBracket) {
            ExprAtom atom;
            atom.kind = ExprAtom::Kind::Invariant;
            lex_.take();
            long long k = parse_int_lit();
            expect(T::RBracket, "']'");
            if (k < 1) throw ParseError("order must be >= 1", name.line, name.column);
            atom.inv.k = static_cast<int>(k);
            if (name.text == "T") {
                atom.inv.kind = InvariantKind::Gelfand;
                if (lex_.peek().type == T::LParen) {
                    lex_.take();
                    atom.inv.args.push_back(parse_laurent());
                    while (lex_.peek().type == T::Semi) {
                        lex_.take();
                        atom.inv.args.push_back(parse_laurent());
                    }
                    expect(T::RParen, "')'");
                    if (static_cast<int>(atom.inv.args.size()) != atom.inv.k)
                        throw ParseError("T[k] takes exactly k arguments", name.line, name.column);
                } else {
                    atom.inv_default_args = true;
                }
            } else {
                atom.inv.kind = name.text == "S" ? InvariantKind::EvenGelfand : InvariantKind::AntiInvariant;
            }
            return atom;
        }

        ExprAtom atom;
        atom.kind = ExprAtom::Kind::Generator;
        atom.label = name.text;
        if (lex_.peek().type == T::LBracket) {
            lex_.take();
            atom.label += "[";
            atom.label += std::to_string(parse_int_lit());
            while (lex_.peek().type == T::Comma) {
                lex_.take();
                atom.label += ",";
                atom.label += std::to_string(parse_int_lit());
            }
            expect(T::RBracket, "']'");
            atom.label += "]";
        }
        if (lex_.peek().type == T::LParen) {
            lex_.take();
            LaurentPoly p = parse_laurent();
            expect(T::RParen, "')'");
            if (!p.is_one()) atom.arg = std::move(p); // x(1) normalizes to the bare generator
        }
        return atom;
    }

    LaurentPoly parse_laurent() {
        LaurentPoly out;
        bool negate = false;
        if (lex_.peek().type == T::Plus) {
            lex_.take();
        } else if (lex_.peek().type == T::Minus) {
            lex_.take();
            negate = true;
        }
        out += parse_laurent_term(negate);
        while (lex_.peek().type == T::Plus || lex_.peek().type == T::Minus) {
            bool minus = lex_.take().type == T::Minus;
            out += parse_laurent_term(minus);
        }
        return out;
    }

    LaurentPoly parse_laurent_term(bool negate) {
        Rational coeff(negate ? -1 : 1);
        const Token& t = lex_.peek();
        if (t.type == T::Int) {
            Token first = lex_.take();
            coeff *= parse_rational_after(first);
            if (lex_.peek().type == T::Star) {
                lex_.take();
                return parse_laurent_mono().scaled(coeff);
            }
            return LaurentPoly::constant(coeff);
        }
        if (t.type == T::Ident) return parse_laurent_mono().scaled(coeff);
        fail("expected a Laurent term");
    }

    LaurentPoly parse_laurent_mono() {
        Token name = expect(T::Ident, "'t' or a bound name");
        if (name.text == "t") {
            std::int64_t exp = 1;
            if (lex_.peek().type == T::Caret) {
                lex_.take();
                bool neg = false;
                if (lex_.peek().type == T::Minus) {
                    lex_.take();
                    neg = true;
                }
                exp = parse_int_lit();
                if (neg) exp = -exp;
            }
            return LaurentPoly::t(exp);
        }
        if (env_) {
            auto it = env_->find(name.text);
            if (it != env_->end()) return it->second;
        }
        throw ParseError("unknown name '" + name.text + "' in Laurent expression", name.line, name.column);
    }

    Lexer lex_;
    const LaurentEnv* env_;
};

} // namespace detail

inline OperatorExpr parse_expr(std::string_view text, const LaurentEnv& env = {}) {
    detail::Parser p(text, &env);
    return p.parse_expr_all();
}

inline LaurentPoly parse_laurent(std::string_view text, const LaurentEnv& env = {}) {
    detail::Parser p(text, &env);
    return p.parse_laurent_all();
}

// Canonical printer; print-then-parse reproduces the AST.
inline std::string print_expr(const OperatorExpr& e);

inline std::string print_atom(const ExprAtom& a) {
    switch (a.kind) {
    case ExprAtom::Kind::Generator: {
        std::string s = a.label;
        if (a.arg) s += "(" + a.arg->to_string() + ")";
        return s;
    }
    case ExprAtom::Kind::Invariant: {
        switch (a.inv.kind) {
        case InvariantKind::Casimir:
            return "Omega";
        case InvariantKind::CasimirC:
            return "OmegaC";
        case InvariantKind::GeneralizedCasimir:
            return "Omega(" + a.inv.args[0].to_string() + "; " + a.inv.args[1].to_string() + ")";
        case InvariantKind::Gelfand: {
            std::string s = "T[" + std::to_string(a.inv.k) + "]";
            if (!a.inv_default_args) {
                s += "(";
                for (std::size_t i = 0; i < a.inv.args.size(); ++i) {
                    if (i) s += "; ";
                    s += a.inv.args[i].to_string();
                }
                s += ")";
            }
            return s;
        }
        case InvariantKind::EvenGelfand:
            return "S[" + std::to_string(a.inv.k) + "]";
        case InvariantKind::AntiInvariant:
            return "D[" + std::to_string(a.inv.k) + "]";
        }
        return "";
    }
    case ExprAtom::Kind::Group:
        return "(" + print_expr(*a.sub) + ")";
    }
    return "";
}

inline std::string print_expr(const OperatorExpr& e) {
    if (e.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& term : e.terms) {
        Rational mag = term.coeff.sign() < 0 ? -term.coeff : term.coeff;
        if (first) {
            if (term.coeff.sign() < 0) out += "-";
            first = false;
        } else {
            out += term.coeff.sign() < 0 ? " - " : " + ";
        }
        bool unit = mag.is_one() && !term.atoms.empty();
        if (!unit) out += mag.to_string();
        for (std::size_t i = 0; i < term.atoms.size(); ++i) {
            if (i || !unit) out += "*";
            out += print_atom(term.atoms[i]);
        }
    }
    return out;
}

// Exact evaluation through the builder and engine modules.
inline UEAElement eval_expr(const SuperAlgebra& A, const RootDatum& R, const OperatorExpr& e) {
    UEAElement out;
    for (const auto& term : e.terms) {
        UEAElement acc = UEAElement::unit(term.coeff);
        for (const auto& atom : term.atoms) {
            UEAElement value;
            switch (atom.kind) {
            case ExprAtom::Kind::Generator: {
                auto idx = A.basis_index(atom.label);
                if (!idx) throw std::invalid_argument("unknown generator label '" + atom.label + "' in " + A.name());
                value = atom.arg ? UEAElement::from_elem(AlgElem::basis(*idx), *atom.arg)
                                 : UEAElement::generator(*idx);
                break;
            }
            case ExprAtom::Kind::Invariant: {
                InvariantSpec spec = atom.inv;
                if (atom.inv_default_args) spec.args = all_ones(spec.k);
                value = build_invariant(A, R, spec);
                break;
            }
            case ExprAtom::Kind::Group:
                value = eval_expr(A, R, *atom.sub);
                break;
            }
            acc = mul(A, acc, value);
        }
        out += acc;
    }
    return out;
}

inline UEAElement eval_expr(const SuperAlgebra& A, const RootDatum& R, std::string_view text,
                            const LaurentEnv& env = {}) {
    return eval_expr(A, R, parse_expr(text, env));
}

} // namespace loopcas
