#pragma once

// Exact-matrix representations, Koszul-signed tensor products, evaluation
// modules for the loop algebra, action of enveloping-algebra elements,
// weight spaces and highest-weight-vector extraction.

#include "loopcas/invariants.hpp"
#include "loopcas/matrix.hpp"
#include "loopcas/roots.hpp"
#include "loopcas/uea.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopcas {

class Representation {
public:
    Representation() = default;
    Representation(std::size_t dimension, std::vector<Parity> vector_parity, std::vector<Matrix> actions)
        : dim_(dimension), parity_(std::move(vector_parity)), actions_(std::move(actions)) {
        if (parity_.size() != dim_) throw std::invalid_argument("Representation: parity list size mismatch");
        for (const auto& m : actions_)
            if (m.rows() != dim_ || m.cols() != dim_)
                throw std::invalid_argument("Representation: action matrix shape mismatch");
    }

    std::size_t dimension() const { return dim_; }
    Parity vector_parity(std::size_t v) const { return parity_[v]; }
    const std::vector<Parity>& vector_parities() const { return parity_; }
    const Matrix& action(int basis_index) const { return actions_[static_cast<std::size_t>(basis_index)]; }
    std::size_t algebra_dim() const { return actions_.size(); }

    // natural module of gl(M,N): matrix units act as themselves
    static Representation natural(const SuperAlgebra& A) {
        auto [M, N] = require_gl(A, "Representation::natural");
        const std::size_t n = static_cast<std::size_t>(M + N);
        std::vector<Parity> vp(n);
        for (std::size_t v = 0; v < n; ++v) vp[v] = (static_cast<int>(v) < M ? Parity::Even : Parity::Odd);
        std::vector<Matrix> acts;
        acts.reserve(static_cast<std::size_t>(A.dim()));
        for (int b = 0; b < A.dim(); ++b) {
            const std::string& label = A.label(b);
            auto comma = label.find(',');
            int i = std::stoi(label.substr(2, comma - 2));
            int j = std::stoi(label.substr(comma + 1, label.size() - comma - 2));
            Matrix m(n, n);
            m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = Rational(1);
            acts.push_back(std::move(m));
        }
        return Representation(n, std::move(vp), std::move(acts));
    }

    // adjoint module from the structure constants
    static Representation adjoint(const SuperAlgebra& A) {
        const std::size_t n = static_cast<std::size_t>(A.dim());
        std::vector<Parity> vp(n);
        for (std::size_t v = 0; v < n; ++v) vp[v] = A.parity(static_cast<int>(v));
        std::vector<Matrix> acts;
        for (int b = 0; b < A.dim(); ++b) {
            Matrix m(n, n);
            for (int j = 0; j < A.dim(); ++j)
                for (const auto& [k, c] : A.bracket(b, j)) m(static_cast<std::size_t>(k), static_cast<std::size_t>(j)) = c;
            acts.push_back(std::move(m));
        }
        return Representation(n, std::move(vp), std::move(acts));
    }

private:
    std::size_t dim_ = 0;
    std::vector<Parity> parity_;
    std::vector<Matrix> actions_;
};

// Checks parity structure and bracket compatibility
//   act([x,y]) = act(x)act(y) - (-1)^{|x||y|} act(y)act(x)
// exhaustively over basis pairs.
inline ValidationReport validate_representation(const SuperAlgebra& A, const Representation& rep) {
    ValidationReport out;
    if (rep.algebra_dim() != static_cast<std::size_t>(A.dim())) {
        out.violations.push_back({"action-count", {}, "one action matrix per basis element required"});
        return out;
    }
    for (int b = 0; b < A.dim(); ++b) {
        const Matrix& m = rep.action(b);
        for (std::size_t r = 0; r < rep.dimension(); ++r)
            for (std::size_t c = 0; c < rep.dimension(); ++c)
                if (!m(r, c).is_zero() && rep.vector_parity(r) != rep.vector_parity(c) + A.parity(b))
                    out.violations.push_back(
                        {"action-parity", {b, static_cast<int>(r), static_cast<int>(c)}, "entry crosses the grading"});
    }
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) {
            Matrix lhs(rep.dimension(), rep.dimension());
            for (const auto& [k, c] : A.bracket(i, j)) lhs += rep.action(k).scaled(c);
            Matrix rhs = rep.action(i) * rep.action(j) -
                         (rep.action(j) * rep.action(i)).scaled(Rational(koszul_sign(A.parity(i), A.parity(j))));
            if (lhs != rhs) out.violations.push_back({"bracket-compatibility", {i, j}, "action is not a homomorphism"});
        }
    return out;
}

// Koszul-signed tensor product: x acts on slot k with sign
// (-1)^{|x|(|w_1|+...+|w_{k-1}|)}. Basis order is lexicographic in the
// factor indices, first factor most significant.
inline Representation tensor_product(const SuperAlgebra& A, const std::vector<Representation>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor_product: no factors");
    std::size_t dim = 1;
    for (const auto& f : factors) dim *= f.dimension();

    auto decode = [&](std::size_t flat) {
        std::vector<std::size_t> tuple(factors.size());
        for (std::size_t s = factors.size(); s-- > 0;) {
            tuple[s] = flat % factors[s].dimension();
            flat /= factors[s].dimension();
        }
        return tuple;
    };
    std::vector<Parity> vp(dim, Parity::Even);
    for (std::size_t v = 0; v < dim; ++v) {
        auto tuple = decode(v);
        Parity p = Parity::Even;
        for (std::size_t s = 0; s < factors.size(); ++s) p = p + factors[s].vector_parity(tuple[s]);
        vp[v] = p;
    }

    std::vector<Matrix> acts;
    for (int b = 0; b < A.dim(); ++b) {
        bool x_odd = is_odd(A.parity(b));
        Matrix m(dim, dim);
        for (std::size_t col = 0; col < dim; ++col) {
            auto tuple = decode(col);
            bool prefix_odd = false;
            std::size_t stride = dim;
            for (std::size_t s = 0; s < factors.size(); ++s) {
                stride /= factors[s].dimension();
                const Matrix& fa = factors[s].action(b);
                int sign = (x_odd && prefix_odd) ? -1 : 1;
                for (std::size_t r = 0; r < factors[s].dimension(); ++r) {
                    const Rational& entry = fa(r, tuple[s]);
                    if (entry.is_zero()) continue;
                    std::size_t row = col + (r - tuple[s]) * stride;
                    m(row, col) += sign < 0 ? -entry : entry;
                }
                if (is_odd(factors[s].vector_parity(tuple[s]))) prefix_odd = !prefix_odd;
            }
        }
        acts.push_back(std::move(m));
    }
    return Representation(dim, std::move(vp), std::move(acts));
}

// Tensor factors with nonzero pairwise-distinct evaluation points: the loop
// generator x ; t^m acts on slot k through d_k^m times the slot action.
struct EvaluationModule {
    std::vector<Representation> factors;
    std::vector<Rational> points;

    EvaluationModule(std::vector<Representation> f, std::vector<Rational> d)
        : factors(std::move(f)), points(std::move(d)) {
        if (factors.empty()) throw std::invalid_argument("EvaluationModule: no factors");
        if (points.size() != factors.size())
            throw std::invalid_argument("EvaluationModule: one evaluation point per factor required");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].is_zero()) throw std::invalid_argument("EvaluationModule: evaluation point 0");
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j]) throw std::invalid_argument("EvaluationModule: repeated evaluation point");
        }
    }

    std::size_t dimension() const {
        std::size_t d = 1;
        for (const auto& f : factors) d *= f.dimension();
        return d;
    }

    std::vector<std::size_t> decode(std::size_t flat) const {
        std::vector<std::size_t> tuple(factors.size());
        for (std::size_t s = factors.size(); s-- > 0;) {
            tuple[s] = flat % factors[s].dimension();
            flat /= factors[s].dimension();
        }
        return tuple;
    }

    Parity vector_parity(std::size_t flat) const {
        auto tuple = decode(flat);
        Parity p = Parity::Even;
        for (std::size_t s = 0; s < factors.size(); ++s) p = p + factors[s].vector_parity(tuple[s]);
        return p;
    }
};

// Exact matrix of x ; t^m on the evaluation module.
inline Matrix evaluation_action(const SuperAlgebra& A, const EvaluationModule& mod, int basis_index,
                                std::int64_t exp) {
    const std::size_t dim = mod.dimension();
    bool x_odd = is_odd(A.parity(basis_index));
    Matrix m(dim, dim);
    std::vector<Rational> powers;
    for (const auto& d : mod.points) powers.push_back(d.pow(exp));
    for (std::size_t col = 0; col < dim; ++col) {
        auto tuple = mod.decode(col);
        bool prefix_odd = false;
        std::size_t stride = dim;
        for (std::size_t s = 0; s < mod.factors.size(); ++s) {
            stride /= mod.factors[s].dimension();
            const Matrix& fa = mod.factors[s].action(basis_index);
            Rational scale = powers[s];
            if (x_odd && prefix_odd) scale = -scale;
            for (std::size_t r = 0; r < mod.factors[s].dimension(); ++r) {
                const Rational& entry = fa(r, tuple[s]);
                if (entry.is_zero()) continue;
                std::size_t row = col + (r - tuple[s]) * stride;
                m(row, col) += entry * scale;
            }
            if (is_odd(mod.factors[s].vector_parity(tuple[s]))) prefix_odd = !prefix_odd;
        }
    }
    return m;
}

// x ; p(t) acts through the monomials of p.
inline Matrix evaluation_action(const SuperAlgebra& A, const EvaluationModule& mod, int basis_index,
                                const LaurentPoly& p) {
    Matrix m(mod.dimension(), mod.dimension());
    for (const auto& [e, c] : p.terms()) m += evaluation_action(A, mod, basis_index, e).scaled(c);
    return m;
}

// Matrix of an enveloping-algebra element: per monomial, the factor
// matrices compose left to right. Generator matrices are memoized across
// terms.
class ActionCache {
public:
    ActionCache(const SuperAlgebra& A, const EvaluationModule& mod) : A_(A), mod_(mod) {}

    const Matrix& generator(const LoopGen& g) {
        auto key = std::make_pair(g.basis, g.exp);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, evaluation_action(A_, mod_, g.basis, g.exp)).first;
        return it->second;
    }

    Matrix act(const UEAElement& u) {
        const std::size_t dim = mod_.dimension();
        Matrix out(dim, dim);
        for (const auto& [w, c] : u.terms()) {
            Matrix m = Matrix::identity(dim);
            for (const auto& g : w) m = m * generator(g);
            out += m.scaled(c);
        }
        return out;
    }

private:
    const SuperAlgebra& A_;
    const EvaluationModule& mod_;
    std::map<std::pair<int, std::int64_t>, Matrix> cache_;
};

inline Matrix act_uea(const SuperAlgebra& A, const EvaluationModule& mod, const UEAElement& u) {
    ActionCache cache(A, mod);
    return cache.act(u);
}

// Partition of the tensor basis by exact joint Cartan eigenvalue. The
// Cartan matrices must be diagonal on the tensor basis.
inline std::map<Weight, std::vector<std::size_t>> weight_spaces(const SuperAlgebra& A, const EvaluationModule& mod) {
    const auto& cartan = A.cartan();
    const std::size_t dim = mod.dimension();
    std::vector<Matrix> hs;
    for (int c : cartan) {
        Matrix m = evaluation_action(A, mod, c, 0);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t cc = 0; cc < dim; ++cc)
                if (r != cc && !m(r, cc).is_zero())
                    throw std::invalid_argument("weight_spaces: Cartan action is not diagonal on the tensor basis");
        hs.push_back(std::move(m));
    }
    std::map<Weight, std::vector<std::size_t>> out;
    for (std::size_t v = 0; v < dim; ++v) {
        Weight w;
        for (std::size_t ci = 0; ci < cartan.size(); ++ci) w.v.push_back(hs[ci](v, v));
        out[w].push_back(v);
    }
    return out;
}

namespace detail {

// canonical basis of the joint kernel of the given operators restricted to
// the coordinates `support`
inline std::vector<std::vector<Rational>> joint_kernel_on(const std::vector<Matrix>& ops,
                                                          const std::vector<std::size_t>& support,
                                                          std::size_t ambient_dim) {
    if (ops.empty()) {
        std::vector<std::vector<Rational>> all;
        for (std::size_t v : support) {
            std::vector<Rational> e(ambient_dim);
            e[v] = Rational(1);
            all.push_back(std::move(e));
        }
        return all;
    }
    const std::size_t rows_per_op = ops.front().rows();
    Matrix stacked(ops.size() * rows_per_op, support.size());
    for (std::size_t o = 0; o < ops.size(); ++o)
        for (std::size_t r = 0; r < rows_per_op; ++r)
            for (std::size_t c = 0; c < support.size(); ++c) stacked(o * rows_per_op + r, c) = ops[o](r, support[c]);
    auto local = stacked.nullspace();
    std::vector<std::vector<Rational>> out;
    for (const auto& v : local) {
        std::vector<Rational> full(ambient_dim);
        for (std::size_t c = 0; c < support.size(); ++c) full[support[c]] = v[c];
        out.push_back(std::move(full));
    }
    return Matrix::reduce_rows(out);
}

} // namespace detail

// Highest-weight vectors of weight mu: the joint kernel of all positive
// root-vector actions inside the mu weight space, in reduced echelon form.
inline std::vector<std::vector<Rational>> find_hwv(const SuperAlgebra& A, const RootDatum& R,
                                                   const EvaluationModule& mod, const Weight& mu) {
    auto spaces = weight_spaces(A, mod);
    auto it = spaces.find(mu);
    if (it == spaces.end()) return {};
    std::vector<Matrix> ops;
    for (const Weight& alpha : R.positive)
        for (int b : R.root_space.at(alpha)) ops.push_back(evaluation_action(A, mod, b, 0));
    return detail::joint_kernel_on(ops, it->second, mod.dimension());
}

inline std::map<Weight, std::vector<std::vector<Rational>>> find_all_hwv(const SuperAlgebra& A, const RootDatum& R,
                                                                         const EvaluationModule& mod) {
    std::map<Weight, std::vector<std::vector<Rational>>> out;
    std::vector<Matrix> ops;
    for (const Weight& alpha : R.positive)
        for (int b : R.root_space.at(alpha)) ops.push_back(evaluation_action(A, mod, b, 0));
    for (const auto& [mu, support] : weight_spaces(A, mod)) {
        auto basis = detail::joint_kernel_on(ops, support, mod.dimension());
        if (!basis.empty()) out.emplace(mu, std::move(basis));
    }
    return out;
}

// Same with only the even positive root vectors: highest-weight vectors for
// the even part.
inline std::map<Weight, std::vector<std::vector<Rational>>> find_even_hwv(const SuperAlgebra& A, const RootDatum& R,
                                                                          const EvaluationModule& mod) {
    std::map<Weight, std::vector<std::vector<Rational>>> out;
    std::vector<Matrix> ops;
    for (const Weight& alpha : R.positive) {
        if (is_odd(R.root_parity.at(alpha))) continue;
        for (int b : R.root_space.at(alpha)) ops.push_back(evaluation_action(A, mod, b, 0));
    }
    for (const auto& [mu, support] : weight_spaces(A, mod)) {
        auto basis = detail::joint_kernel_on(ops, support, mod.dimension());
        if (!basis.empty()) out.emplace(mu, std::move(basis));
    }
    return out;
}

// Exact membership check: does `op` map every listed basis vector back into
// the span of that basis? Escaping vectors are reported by index.
struct StabilityEntry {
    Weight mu;
    bool stable = true;
    std::vector<std::size_t> escaping; // indices into the basis of V_mu^+
};

struct StabilityReport {
    std::vector<StabilityEntry> entries;
    bool pass = true;
};

inline StabilityReport check_operator_stability(const Matrix& op,
                                                const std::map<Weight, std::vector<std::vector<Rational>>>& bases) {
    StabilityReport rep;
    for (const auto& [mu, basis] : bases) {
        StabilityEntry entry;
        entry.mu = mu;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<Rational> image = op.apply(basis[i]);
            if (!in_row_span(basis, image)) {
                entry.stable = false;
                entry.escaping.push_back(i);
            }
        }
        if (!entry.stable) rep.pass = false;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

// T_k(p_{j_1},...,p_{j_k}) stabilizes every space of highest-weight vectors.
inline StabilityReport check_hwv_stability(const SuperAlgebra& A, const RootDatum& R, const EvaluationModule& mod,
                                           int k, const std::vector<int>& tuple) {
    if (static_cast<int>(tuple.size()) != k)
        throw std::invalid_argument("check_hwv_stability: tuple size must equal k");
    auto basis_polys = lagrange_basis(mod.points);
    std::vector<LaurentPoly> args;
    for (int j : tuple) {
        if (j < 1 || j > static_cast<int>(basis_polys.size()))
            throw std::invalid_argument("check_hwv_stability: tuple entry out of range");
        args.push_back(basis_polys[static_cast<std::size_t>(j - 1)]);
    }
    UEAElement tk = build_gelfand(A, k, args);
    Matrix op = act_uea(A, mod, tk);
    return check_operator_stability(op, find_all_hwv(A, R, mod));
}

// act(T_k) equals the sum of act(T_k(p_{j_1},...,p_{j_k})) over all tuples.
struct GelfandSumCheck {
    Matrix total;
    Matrix tuple_sum;
    bool pass = false;
};

inline GelfandSumCheck check_gelfand_sum(const SuperAlgebra& A, const EvaluationModule& mod, int k) {
    GelfandSumCheck out;
    out.total = act_uea(A, mod, build_gelfand(A, k));
    auto basis_polys = lagrange_basis(mod.points);
    const int n = static_cast<int>(basis_polys.size());
    out.tuple_sum = Matrix(mod.dimension(), mod.dimension());
    std::vector<int> tuple(static_cast<std::size_t>(k), 0);
    ActionCache cache(A, mod);
    for (;;) {
        std::vector<LaurentPoly> args;
        for (int j : tuple) args.push_back(basis_polys[static_cast<std::size_t>(j)]);
        out.tuple_sum += cache.act(build_gelfand(A, k, args));
        int pos = k - 1;
        while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == n - 1) {
            tuple[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++tuple[static_cast<std::size_t>(pos)];
    }
    out.pass = out.total == out.tuple_sum;
    return out;
}

// Smallest subspace containing the seeds and closed under the zero-mode
// action of every basis element.
inline std::vector<std::vector<Rational>> cyclic_submodule(const SuperAlgebra& A, const EvaluationModule& mod,
                                                           const std::vector<std::vector<Rational>>& seeds) {
    std::vector<Matrix> gens;
    for (int b = 0; b < A.dim(); ++b) gens.push_back(evaluation_action(A, mod, b, 0));
    auto basis = Matrix::reduce_rows(seeds);
    for (;;) {
        auto next = basis;
        for (const auto& v : basis)
            for (const auto& g : gens) next.push_back(g.apply(v));
        next = Matrix::reduce_rows(next);
        if (next.size() == basis.size()) return basis;
        basis = std::move(next);
    }
}

// Matrix of `op` restricted to the span of `basis` (rows), entries in the
// coordinates of that basis. Throws if the span is not op-stable.
inline Matrix restrict_operator(const Matrix& op, const std::vector<std::vector<Rational>>& basis) {
    const std::size_t k = basis.size();
    if (k == 0) return Matrix();
    const std::size_t dim = basis.front().size();
    // solve coordinates: stack basis columns, solve B^T x = image
    Matrix bt(dim, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t r = 0; r < dim; ++r) bt(r, i) = basis[i][r];
    Matrix out(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Rational> image = op.apply(basis[i]);
        Matrix aug(dim, k + 1);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < k; ++c) aug(r, c) = bt(r, c);
            aug(r, k) = image[r];
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == k)
            throw std::domain_error("restrict_operator: image escapes the span");
        std::vector<Rational> coords(k);
        for (std::size_t r = 0; r < pivots.size(); ++r) coords[pivots[r]] = aug(r, k);
        for (std::size_t c = 0; c < k; ++c) out(c, i) = coords[c];
    }
    return out;
}

} // namespace loopcas
