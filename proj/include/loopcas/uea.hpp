#pragma once

// Canonical PBW normal form for the enveloping algebra of a loop
// superalgebra. Words are sequences of loop generators x_i ; t^m ordered by
// (basis index, exponent); out-of-order adjacent pairs rewrite through
//   x y -> (-1)^{|x||y|} y x + [x,y]
// and odd squares rewrite eagerly through x x -> (1/2)[x,x]. The bracket
// term strictly drops the word length, so rewriting terminates and the
// resulting representation is unique for the fixed generator order.

#include "loopcas/algebra.hpp"
#include "loopcas/laurent.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopcas {

struct LoopGen {
    std::int32_t basis = 0;
    std::int64_t exp = 0;

    friend bool operator==(const LoopGen&, const LoopGen&) = default;
    friend auto operator<=>(const LoopGen&, const LoopGen&) = default;
};

using Word = std::vector<LoopGen>;

enum class UEAParity { Even, Odd, Mixed };

inline Parity word_parity(const SuperAlgebra& A, const Word& w) {
    Parity p = Parity::Even;
    for (const auto& g : w) p = p + A.parity(g.basis);
    return p;
}

class UEAElement {
public:
    using TermMap = std::map<Word, Rational>;

    UEAElement() = default;

    static UEAElement zero() { return UEAElement(); }
    static UEAElement unit(Rational c = Rational(1)) {
        UEAElement u;
        u.add(Word{}, std::move(c));
        return u;
    }
    static UEAElement generator(int basis, std::int64_t exp = 0, Rational c = Rational(1)) {
        UEAElement u;
        u.add(Word{LoopGen{basis, exp}}, std::move(c));
        return u;
    }
    // x ; t^exp for a (possibly non-basis) algebra element x
    static UEAElement from_elem(const AlgElem& x, std::int64_t exp = 0) {
        UEAElement u;
        for (const auto& [i, c] : x.c) u.add(Word{LoopGen{i, exp}}, c);
        return u;
    }
    // x(p) for a Laurent polynomial p, expanded over the monomials of p
    static UEAElement from_elem(const AlgElem& x, const LaurentPoly& p) {
        UEAElement u;
        for (const auto& [e, pc] : p.terms())
            for (const auto& [i, c] : x.c) u.add(Word{LoopGen{i, e}}, c * pc);
        return u;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int degree() const {
        std::size_t d = 0;
        for (const auto& [w, c] : terms_) {
            (void)c;
            if (w.size() > d) d = w.size();
        }
        return static_cast<int>(d);
    }

    void add(Word w, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    UEAElement& operator+=(const UEAElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    UEAElement& operator-=(const UEAElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
    friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }

    UEAElement scaled(const Rational& k) const {
        UEAElement r;
        if (k.is_zero()) return r;
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * k);
        return r;
    }

    friend bool operator==(const UEAElement&, const UEAElement&) = default;

    UEAParity parity(const SuperAlgebra& A) const {
        bool even = false, odd = false;
        for (const auto& [w, c] : terms_) {
            (void)c;
            (is_odd(word_parity(A, w)) ? odd : even) = true;
        }
        if (even && odd) return UEAParity::Mixed;
        return odd ? UEAParity::Odd : UEAParity::Even;
    }

    std::string to_string(const SuperAlgebra& A) const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            Rational mag = c.sign() < 0 ? -c : c;
            if (first) {
                if (c.sign() < 0) s += "-";
                first = false;
            } else {
                s += c.sign() < 0 ? " - " : " + ";
            }
            if (w.empty()) {
                s += mag.to_string();
                continue;
            }
            bool unit_coeff = mag.is_one();
            if (!unit_coeff) s += mag.to_string();
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i || !unit_coeff) s += "*";
                s += A.label(w[i].basis);
                if (w[i].exp != 0) {
                    s += "(t";
                    if (w[i].exp != 1) s += "^" + std::to_string(w[i].exp);
                    s += ")";
                }
            }
        }
        return s;
    }

private:
    TermMap terms_;
};

// [x ; t^m, y ; t^n] = [x,y] ; t^{m+n}: a degree <= 1 element.
inline UEAElement loop_bracket(const SuperAlgebra& A, LoopGen x, LoopGen y) {
    UEAElement r;
    for (const auto& [k, c] : A.bracket(x.basis, y.basis)) r.add(Word{LoopGen{k, x.exp + y.exp}}, c);
    return r;
}

// PBW normal form of a formal sum of words. Reduction happens at the
// rightmost reducible position; an independent leftmost-recursive
// straightener lives in the test suite as a confluence oracle.
inline UEAElement normal_form(const SuperAlgebra& A, std::vector<std::pair<Word, Rational>> pending) {
    UEAElement out;
    while (!pending.empty()) {
        auto [w, coeff] = std::move(pending.back());
        pending.pop_back();
        if (coeff.is_zero()) continue;

        std::ptrdiff_t pos = -1;
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(w.size()) - 2; i >= 0; --i) {
            const LoopGen& x = w[static_cast<std::size_t>(i)];
            const LoopGen& y = w[static_cast<std::size_t>(i) + 1];
            if (x > y || (x == y && is_odd(A.parity(x.basis)))) {
                pos = i;
                break;
            }
        }
        if (pos < 0) {
            out.add(std::move(w), coeff);
            continue;
        }

        const std::size_t i = static_cast<std::size_t>(pos);
        LoopGen x = w[i], y = w[i + 1];
        const auto& br = A.bracket(x.basis, y.basis);
        if (x == y) {
            // odd square: x x -> (1/2)[x,x]
            Rational half = coeff * Rational(1, 2);
            for (const auto& [k, c] : br) {
                Word nw;
                nw.reserve(w.size() - 1);
                nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                nw.push_back(LoopGen{k, x.exp + y.exp});
                nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
                pending.emplace_back(std::move(nw), half * c);
            }
            continue;
        }
        int sign = koszul_sign(A.parity(x.basis), A.parity(y.basis));
        Word swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        for (const auto& [k, c] : br) {
            Word nw;
            nw.reserve(w.size() - 1);
            nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            nw.push_back(LoopGen{k, x.exp + y.exp});
            nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
            pending.emplace_back(std::move(nw), coeff * c);
        }
        pending.emplace_back(std::move(swapped), sign < 0 ? -coeff : coeff);
    }
    return out;
}

inline UEAElement normal_form(const SuperAlgebra& A, const UEAElement& u) {
    std::vector<std::pair<Word, Rational>> pending(u.terms().begin(), u.terms().end());
    return normal_form(A, std::move(pending));
}

inline UEAElement mul(const SuperAlgebra& A, const UEAElement& u, const UEAElement& v) {
    std::vector<std::pair<Word, Rational>> pending;
    pending.reserve(u.terms().size() * v.terms().size());
    for (const auto& [wu, cu] : u.terms())
        for (const auto& [wv, cv] : v.terms()) {
            Word w;
            w.reserve(wu.size() + wv.size());
            w.insert(w.end(), wu.begin(), wu.end());
            w.insert(w.end(), wv.begin(), wv.end());
            pending.emplace_back(std::move(w), cu * cv);
        }
    return normal_form(A, std::move(pending));
}

// [u,v] = uv - (-1)^{|u||v|} vu for parity-homogeneous u, v.
inline UEAElement supercommutator(const SuperAlgebra& A, const UEAElement& u, const UEAElement& v) {
    UEAParity pu = u.parity(A), pv = v.parity(A);
    if (pu == UEAParity::Mixed || pv == UEAParity::Mixed)
        throw std::invalid_argument("supercommutator: mixed-parity operand");
    int sign = (pu == UEAParity::Odd && pv == UEAParity::Odd) ? -1 : 1;
    UEAElement uv = mul(A, u, v);
    UEAElement vu = mul(A, v, u);
    return sign < 0 ? uv + vu : uv - vu;
}

// ad g.u = [g, u] with g embedded as a degree-1 element.
inline UEAElement ad_action(const SuperAlgebra& A, LoopGen g, const UEAElement& u) {
    return supercommutator(A, UEAElement::generator(g.basis, g.exp), u);
}

// [u, g] for u of arbitrary (possibly mixed) parity: the bracket is linear
// in u, so mixed elements split into their parity components.
inline UEAElement commutator_with_gen(const SuperAlgebra& A, const UEAElement& u, LoopGen g) {
    UEAElement even, odd;
    for (const auto& [w, c] : u.terms())
        (is_odd(word_parity(A, w)) ? odd : even).add(w, c);
    UEAElement gu_elem = UEAElement::generator(g.basis, g.exp);
    UEAElement r;
    if (!even.is_zero()) r += mul(A, even, gu_elem) - mul(A, gu_elem, even);
    if (!odd.is_zero()) {
        int sign = is_odd(A.parity(g.basis)) ? -1 : 1;
        UEAElement ug = mul(A, odd, gu_elem);
        UEAElement gu = mul(A, gu_elem, odd);
        r += sign < 0 ? ug + gu : ug - gu;
    }
    return r;
}

// Twisted action ad'g.u = gu - (-1)^{|g|(|u|+1)} ug for homogeneous u.
inline UEAElement ad_prime_action(const SuperAlgebra& A, LoopGen g, const UEAElement& u) {
    UEAParity pu = u.parity(A);
    if (pu == UEAParity::Mixed) throw std::invalid_argument("ad_prime_action: mixed-parity operand");
    UEAElement ge = UEAElement::generator(g.basis, g.exp);
    int e = is_odd(A.parity(g.basis)) ? ((pu == UEAParity::Odd ? 1 : 0) + 1) : 0;
    int sign = (e % 2 == 1) ? -1 : 1;
    UEAElement gu = mul(A, ge, u);
    UEAElement ug = mul(A, u, ge);
    return sign < 0 ? gu + ug : gu - ug;
}

} // namespace loopcas
