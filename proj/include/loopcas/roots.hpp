#pragma once

// Root decomposition, dual bases and rho-data for a validated SuperAlgebra
// whose Cartan acts diagonally on the declared basis.

#include "loopcas/algebra.hpp"
#include "loopcas/matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopcas {

// Functional on the Cartan, stored as exact values on the Cartan basis.
struct Weight {
    std::vector<Rational> v;

    bool is_zero() const {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }
    Weight operator-() const {
        Weight w;
        w.v.reserve(v.size());
        for (const auto& x : v) w.v.push_back(-x);
        return w;
    }
    Weight& operator+=(const Weight& o) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) {
        for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
        return a;
    }
    Weight scaled(const Rational& k) const {
        Weight w;
        w.v.reserve(v.size());
        for (const auto& x : v) w.v.push_back(x * k);
        return w;
    }
    friend bool operator==(const Weight&, const Weight&) = default;
    friend auto operator<=>(const Weight& a, const Weight& b) { return a.v <=> b.v; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += v[i].to_string();
        }
        return s + ")";
    }
};

// Dual-paired bases of g_a and g_{-a} for one positive root: (e_i, f_j) = delta_ij.
struct DualPair {
    Weight root;
    Parity parity = Parity::Even;
    std::vector<AlgElem> e;
    std::vector<AlgElem> f;
};

struct RootDatum {
    std::vector<int> cartan;
    std::map<int, Weight> basis_weight;         // every basis index, Cartan included (weight 0)
    std::vector<Weight> roots;                  // sorted
    std::vector<Weight> positive;               // sorted
    std::vector<Weight> simple;                 // in Chevalley generator order (empty without Chevalley data)
    std::map<Weight, std::vector<int>> root_space;
    std::map<Weight, Parity> root_parity;
    std::map<Weight, int> multiplicity;
    std::vector<DualPair> dual_pairs;           // one per positive root, in `positive` order
    std::map<Weight, AlgElem> h_alpha;          // for every root
    AlgElem h_rho;
    std::vector<AlgElem> cartan_dual;           // (h_i, h^j) = delta_ij

    bool is_positive(const Weight& w) const {
        return std::binary_search(positive.begin(), positive.end(), w);
    }
    bool is_root(const Weight& w) const { return root_space.contains(w); }
    const DualPair& pair_for(const Weight& w) const {
        for (const auto& p : dual_pairs)
            if (p.root == w) return p;
        throw std::invalid_argument("pair_for: not a positive root: " + w.to_string());
    }
};

namespace detail {

inline Matrix cartan_gram(const SuperAlgebra& A) {
    const auto& c = A.cartan();
    Matrix g(c.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) g(i, j) = A.form(c[i], c[j]);
    return g;
}

// Unique h in the Cartan with (h, h_i) = values_i for the Cartan basis h_i.
inline AlgElem solve_cartan_dual(const SuperAlgebra& A, const Matrix& gram_inv, const std::vector<Rational>& values) {
    const auto& c = A.cartan();
    AlgElem h;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Rational coeff;
        for (std::size_t j = 0; j < c.size(); ++j) coeff += gram_inv(i, j) * values[j];
        h.add(c[i], coeff);
    }
    return h;
}

} // namespace detail

// h_a for a functional a on the Cartan: (h_a, h) = a(h) for all h in the Cartan.
inline AlgElem h_for_weight(const SuperAlgebra& A, const Weight& w) {
    Matrix gram = detail::cartan_gram(A);
    Matrix inv;
    try {
        inv = gram.inverse();
    } catch (const std::domain_error&) {
        throw std::domain_error("h_for_weight: form degenerate on the Cartan");
    }
    return detail::solve_cartan_dual(A, inv, w.v);
}

// Induced form on weights: (a,b) = (h_a, h_b).
inline Rational weight_form(const SuperAlgebra& A, const Weight& a, const Weight& b) {
    return A.form(h_for_weight(A, a), h_for_weight(A, b));
}

inline RootDatum root_decomposition(const SuperAlgebra& A) {
    RootDatum R;
    R.cartan = A.cartan();
    std::vector<std::vector<Rational>> weights;
    if (!detail::basis_weights(A, weights, nullptr))
        throw std::invalid_argument("root_decomposition: ad-Cartan is not diagonal on the supplied basis");

    const int n = A.dim();
    for (int j = 0; j < n; ++j) {
        Weight w{weights[static_cast<std::size_t>(j)]};
        R.basis_weight[j] = w;
        if (w.is_zero()) {
            if (!A.is_cartan_index(j))
                throw std::invalid_argument("root_decomposition: weight-0 basis vector outside the Cartan: " +
                                            A.label(j));
            continue;
        }
        R.root_space[w].push_back(j);
    }
    for (const auto& [w, members] : R.root_space) {
        R.roots.push_back(w);
        R.multiplicity[w] = static_cast<int>(members.size());
        Parity p = A.parity(members.front());
        for (int m : members)
            if (A.parity(m) != p)
                throw std::invalid_argument("root_decomposition: root space of mixed parity at " + w.to_string());
        R.root_parity[w] = p;
    }
    std::sort(R.roots.begin(), R.roots.end());

    // positivity: express roots in simple-root coordinates when Chevalley data
    // exists, otherwise fall back to the lexicographic sign of the weight vector
    if (A.chevalley()) {
        const auto& chev = *A.chevalley();
        for (int ei : chev.e) {
            auto it = R.basis_weight.find(ei);
            if (it == R.basis_weight.end() || it->second.is_zero())
                throw std::invalid_argument("root_decomposition: Chevalley raising generator has zero weight");
            R.simple.push_back(it->second);
        }
        const std::size_t rank = R.simple.size();
        const std::size_t cdim = R.cartan.size();
        for (const Weight& alpha : R.roots) {
            Matrix aug(cdim, rank + 1);
            for (std::size_t i = 0; i < cdim; ++i) {
                for (std::size_t j = 0; j < rank; ++j) aug(i, j) = R.simple[j].v[i];
                aug(i, rank) = alpha.v[i];
            }
            auto pivots = aug.rref();
            bool consistent = pivots.empty() || pivots.back() < rank;
            if (!consistent)
                throw std::invalid_argument("root_decomposition: root outside the simple-root span: " +
                                            alpha.to_string());
            std::vector<Rational> coeff(rank);
            for (std::size_t r = 0; r < pivots.size(); ++r) coeff[pivots[r]] = aug(r, rank);
            bool nonneg = true, nonpos = true;
            for (const auto& m : coeff) {
                if (m.sign() < 0) nonneg = false;
                if (m.sign() > 0) nonpos = false;
            }
            if (nonneg && !nonpos) {
                R.positive.push_back(alpha);
            } else if (!nonneg && nonpos) {
                // negative
            } else {
                throw std::invalid_argument("root_decomposition: root with mixed simple coordinates: " +
                                            alpha.to_string());
            }
        }
    } else {
        for (const Weight& alpha : R.roots) {
            for (const auto& x : alpha.v) {
                if (x.sign() > 0) {
                    R.positive.push_back(alpha);
                    break;
                }
                if (x.sign() < 0) break;
            }
        }
    }
    std::sort(R.positive.begin(), R.positive.end());
    for (const Weight& alpha : R.positive)
        if (!R.root_space.contains(-alpha))
            throw std::invalid_argument("root_decomposition: positive root without a negative partner: " +
                                        alpha.to_string());

    // dual pairs per positive root: e-basis are the basis vectors of g_a,
    // the f-basis solves the exact pairing equations in g_{-a}
    for (const Weight& alpha : R.positive) {
        const auto& up = R.root_space.at(alpha);
        const auto& down = R.root_space.at(-alpha);
        if (up.size() != down.size())
            throw std::invalid_argument("root_decomposition: multiplicity mismatch at " + alpha.to_string());
        Matrix gram(up.size(), down.size());
        for (std::size_t i = 0; i < up.size(); ++i)
            for (std::size_t j = 0; j < down.size(); ++j) gram(i, j) = A.form(up[i], down[j]);
        Matrix coeff;
        try {
            coeff = gram.transpose().inverse();
        } catch (const std::domain_error&) {
            throw std::domain_error("root_decomposition: singular pairing block at " + alpha.to_string());
        }
        DualPair pair;
        pair.root = alpha;
        pair.parity = R.root_parity.at(alpha);
        for (std::size_t i = 0; i < up.size(); ++i) {
            pair.e.push_back(AlgElem::basis(up[i]));
            AlgElem fi;
            for (std::size_t j = 0; j < down.size(); ++j) fi.add(down[j], coeff(i, j));
            pair.f.push_back(std::move(fi));
        }
        R.dual_pairs.push_back(std::move(pair));
    }

    // Cartan dual basis and h_alpha
    Matrix gram = detail::cartan_gram(A);
    Matrix gram_inv;
    try {
        gram_inv = gram.inverse();
    } catch (const std::domain_error&) {
        throw std::domain_error("root_decomposition: form degenerate on the Cartan");
    }
    for (std::size_t i = 0; i < R.cartan.size(); ++i) {
        std::vector<Rational> delta(R.cartan.size());
        delta[i] = Rational(1);
        R.cartan_dual.push_back(detail::solve_cartan_dual(A, gram_inv, delta));
    }
    for (const Weight& alpha : R.roots) R.h_alpha[alpha] = detail::solve_cartan_dual(A, gram_inv, alpha.v);

    // rho = rho_even - rho_odd, halved sums of positive roots with multiplicity
    Weight rho{std::vector<Rational>(R.cartan.size())};
    for (const Weight& alpha : R.positive) {
        Rational half = Rational(R.multiplicity.at(alpha)) * Rational(1, 2);
        if (is_odd(R.root_parity.at(alpha))) half = -half;
        rho += alpha.scaled(half);
    }
    R.h_rho = detail::solve_cartan_dual(A, gram_inv, rho.v);
    return R;
}

// Recomputes h_rho and verifies the defining normalization
// 2(rho, a_i) = (a_i, a_i) on every simple root.
inline AlgElem compute_h_rho(const SuperAlgebra& A, const RootDatum& R) {
    Weight rho{std::vector<Rational>(R.cartan.size())};
    for (const Weight& alpha : R.positive) {
        Rational half = Rational(R.multiplicity.at(alpha)) * Rational(1, 2);
        if (is_odd(R.root_parity.at(alpha))) half = -half;
        rho += alpha.scaled(half);
    }
    AlgElem h_rho = h_for_weight(A, rho);
    for (const Weight& s : R.simple) {
        Rational lhs = weight_form(A, rho, s) * Rational(2);
        Rational rhs = weight_form(A, s, s);
        if (lhs != rhs)
            throw std::runtime_error("compute_h_rho: 2(rho,a) != (a,a) at simple root " + s.to_string());
    }
    return h_rho;
}

// The automorphism fixed by its values on the Chevalley generators,
// extended through brackets to the whole basis. The generator relations
// force w(a^) = -a^ on coroots, so w acts as -Id on the Cartan. Returned
// as the dim x dim matrix in the declared basis; validated as an
// automorphism on every basis pair.
inline Matrix chevalley_automorphism(const SuperAlgebra& A) {
    if (!A.chevalley()) throw std::invalid_argument("chevalley_automorphism: algebra has no Chevalley data");
    const auto& chev = *A.chevalley();
    const int n = A.dim();
    std::vector<std::optional<AlgElem>> image(static_cast<std::size_t>(n));
    for (int c : A.cartan()) image[static_cast<std::size_t>(c)] = AlgElem::basis(c, Rational(-1));
    for (std::size_t i = 0; i < chev.e.size(); ++i) {
        image[static_cast<std::size_t>(chev.e[i])] = AlgElem::basis(chev.f[i], Rational(-1));
        image[static_cast<std::size_t>(chev.f[i])] =
            AlgElem::basis(chev.e[i], Rational(chev.odd[i] ? 1 : -1));
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < n; ++i) {
            if (!image[static_cast<std::size_t>(i)]) continue;
            for (int j = 0; j < n; ++j) {
                if (!image[static_cast<std::size_t>(j)]) continue;
                const auto& terms = A.bracket(i, j);
                if (terms.size() != 1) continue;
                auto [k, c] = terms.front();
                if (image[static_cast<std::size_t>(k)]) continue;
                AlgElem img = A.bracket(*image[static_cast<std::size_t>(i)], *image[static_cast<std::size_t>(j)])
                                  .scaled(c.inverse());
                image[static_cast<std::size_t>(k)] = std::move(img);
                progress = true;
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (!image[static_cast<std::size_t>(i)])
            throw std::runtime_error("chevalley_automorphism: generators do not reach basis element " + A.label(i));

    Matrix omega(n, n);
    for (int j = 0; j < n; ++j)
        for (const auto& [i, c] : image[static_cast<std::size_t>(j)]->c) omega(static_cast<std::size_t>(i), j) = c;

    // automorphism property on all basis pairs
    auto apply = [&](const AlgElem& x) {
        AlgElem r;
        for (const auto& [j, c] : x.c) r += image[static_cast<std::size_t>(j)]->scaled(c);
        return r;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            AlgElem lhs;
            for (const auto& [k, c] : A.bracket(i, j)) lhs.add(k, c);
            lhs = apply(lhs);
            AlgElem rhs = A.bracket(*image[static_cast<std::size_t>(i)], *image[static_cast<std::size_t>(j)]);
            if (lhs != rhs)
                throw std::runtime_error("chevalley_automorphism: extension is not an automorphism at pair (" +
                                         A.label(i) + "," + A.label(j) + ")");
        }
    return omega;
}

// Smallest k <= cap with m^k = identity; 0 if none.
inline int matrix_order(const Matrix& m, int cap = 16) {
    Matrix acc = m;
    Matrix id = Matrix::identity(m.rows());
    for (int k = 1; k <= cap; ++k) {
        if (acc == id) return k;
        acc = acc * m;
    }
    return 0;
}

} // namespace loopcas
