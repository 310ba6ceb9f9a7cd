#pragma once

// Sparse Laurent polynomials over Rational: the coefficient algebra of the
// loop construction. Canonical form never stores zero coefficients, so
// structural equality is semantic equality.

#include "loopcas/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopcas {

class LaurentPoly {
public:
    using TermMap = std::map<std::int64_t, Rational>;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return constant(Rational(1)); }
    static LaurentPoly constant(Rational c) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms_[0] = std::move(c);
        return p;
    }
    static LaurentPoly monomial(std::int64_t exp, Rational c = Rational(1)) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms_[exp] = std::move(c);
        return p;
    }
    static LaurentPoly t(std::int64_t exp = 1) { return monomial(exp); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one(); }
    std::int64_t min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    std::int64_t max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    Rational coeff(std::int64_t exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational() : it->second;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const Rational& c) const {
        LaurentPoly r;
        if (c.is_zero()) return r;
        for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    // Exact value at a rational point; points with negative exponents must be nonzero.
    Rational eval(const Rational& x) const {
        if (x.is_zero() && !terms_.empty() && min_exp() < 0)
            throw std::domain_error("LaurentPoly: evaluation at 0 with negative exponents");
        Rational acc;
        for (const auto& [e, c] : terms_) acc += c * x.pow(e);
        return acc;
    }

    // Canonical text form, ascending exponents: "2*t^-1 + 1 - t^3".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational mag = c.sign() < 0 ? -c : c;
            if (first) {
                if (c.sign() < 0) out += "-";
                first = false;
            } else {
                out += c.sign() < 0 ? " - " : " + ";
            }
            bool unit = mag.is_one() && e != 0;
            if (!unit) out += mag.to_string();
            if (e != 0) {
                if (!unit) out += "*";
                out += "t";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

private:
    void add_term(std::int64_t e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TermMap terms_;
};

// Interpolation basis over distinct nonzero points: p_i(d_j) = delta_ij and
// the p_i sum to 1.
inline std::vector<LaurentPoly> lagrange_basis(const std::vector<Rational>& d) {
    if (d.empty()) throw std::invalid_argument("lagrange_basis: no evaluation points");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].is_zero()) throw std::invalid_argument("lagrange_basis: evaluation point 0 at index " + std::to_string(i));
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if (d[i] == d[j])
                throw std::invalid_argument("lagrange_basis: repeated evaluation point at indices " +
                                            std::to_string(i) + "," + std::to_string(j));
    }
    std::vector<LaurentPoly> basis;
    basis.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        LaurentPoly p = LaurentPoly::one();
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (j == i) continue;
            LaurentPoly factor = LaurentPoly::t() - LaurentPoly::constant(d[j]);
            p = p * factor.scaled((d[i] - d[j]).inverse());
        }
        basis.push_back(std::move(p));
    }
    return basis;
}

// prod_j (t - d_j): generates the kernel ideal of the evaluation map.
inline LaurentPoly vanishing_poly(const std::vector<Rational>& d) {
    LaurentPoly p = LaurentPoly::one();
    for (const auto& di : d) p = p * (LaurentPoly::t() - LaurentPoly::constant(di));
    return p;
}

} // namespace loopcas
