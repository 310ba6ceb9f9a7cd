#pragma once

// Builders for the named invariant operators (Casimir, dual-basis Casimir,
// generalized Casimir with Laurent coefficients, Gelfand-type cyclic sums,
// their unsigned even variant, anti-invariant candidates) and the exact
// verifiers for centrality, even-centrality and anti-invariance.

#include "loopcas/laurent.hpp"
#include "loopcas/roots.hpp"
#include "loopcas/uea.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace loopcas {

// ---------------------------------------------------------------- tensors

// Element of the free tensor algebra on loop generators: words are kept
// verbatim, no reordering. Used for the pre-projection invariance checks
// and for the g (x) g identities.
struct TensorElem {
    std::map<Word, Rational> terms;

    void add(Word w, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(std::move(w), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    TensorElem& operator+=(const TensorElem& o) {
        for (const auto& [w, c] : o.terms) add(w, c);
        return *this;
    }
    TensorElem& operator-=(const TensorElem& o) {
        for (const auto& [w, c] : o.terms) add(w, -c);
        return *this;
    }
    friend TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }
    friend TensorElem operator-(TensorElem a, const TensorElem& b) { return a -= b; }
    friend bool operator==(const TensorElem&, const TensorElem&) = default;
};

// Diagonal action of g on tensor words with the sign (-1)^{|x||prefix|}
// picked up when an odd x moves past odd slots.
inline TensorElem ad_tensor(const SuperAlgebra& A, LoopGen g, const TensorElem& t) {
    TensorElem out;
    bool g_odd = is_odd(A.parity(g.basis));
    for (const auto& [w, c] : t.terms) {
        bool prefix_odd = false;
        for (std::size_t slot = 0; slot < w.size(); ++slot) {
            int sign = (g_odd && prefix_odd) ? -1 : 1;
            for (const auto& [k, bc] : A.bracket(g.basis, w[slot].basis)) {
                Word nw = w;
                nw[slot] = LoopGen{k, g.exp + w[slot].exp};
                out.add(std::move(nw), c * bc * Rational(sign));
            }
            if (is_odd(A.parity(w[slot].basis))) prefix_odd = !prefix_odd;
        }
    }
    return out;
}

// Multiplication map from the tensor algebra onto the enveloping algebra.
inline UEAElement project_tensor(const SuperAlgebra& A, const TensorElem& t) {
    std::vector<std::pair<Word, Rational>> pending(t.terms.begin(), t.terms.end());
    return normal_form(A, std::move(pending));
}

// --------------------------------------------------------- Casimir family

// Omega = 2 h_rho + sum_i h_i h^i + sum_{a in D+} 2 sum_i f_a^i e_a^i.
inline UEAElement build_casimir(const SuperAlgebra& A, const RootDatum& R) {
    UEAElement u = UEAElement::from_elem(R.h_rho.scaled(Rational(2)));
    for (std::size_t i = 0; i < R.cartan.size(); ++i)
        u += mul(A, UEAElement::generator(R.cartan[i]), UEAElement::from_elem(R.cartan_dual[i]));
    for (const auto& pair : R.dual_pairs)
        for (std::size_t i = 0; i < pair.e.size(); ++i)
            u += mul(A, UEAElement::from_elem(pair.f[i]), UEAElement::from_elem(pair.e[i])).scaled(Rational(2));
    return u;
}

// Omega_c = sum_i (-1)^{|x_i|} x_i y_i over any homogeneous basis {x_i} with
// dual basis {y_i}. Built from the full Gram matrix, independently of the
// root machinery, so equality with build_casimir is a real cross-check.
inline UEAElement build_casimir_c(const SuperAlgebra& A) {
    const int n = A.dim();
    Matrix gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram(i, j) = A.form(i, j);
    Matrix coeff;
    try {
        coeff = gram.transpose().inverse();
    } catch (const std::domain_error&) {
        throw std::domain_error("build_casimir_c: bilinear form is degenerate");
    }
    UEAElement u;
    for (int i = 0; i < n; ++i) {
        AlgElem dual;
        for (int j = 0; j < n; ++j) dual.add(j, coeff(i, j));
        UEAElement prod = mul(A, UEAElement::generator(i), UEAElement::from_elem(dual));
        u += is_odd(A.parity(i)) ? prod.scaled(Rational(-1)) : prod;
    }
    return u;
}

// Omega(a,b) = 2 h_rho(ab) + sum_i h_i(a) h^i(b)
//            + sum_{al in D+} sum_i [ f_al^i(a) e_al^i(b) + f_al^i(b) e_al^i(a) ].
inline UEAElement build_generalized_casimir(const SuperAlgebra& A, const RootDatum& R, const LaurentPoly& a,
                                            const LaurentPoly& b) {
    UEAElement u = UEAElement::from_elem(R.h_rho.scaled(Rational(2)), a * b);
    for (std::size_t i = 0; i < R.cartan.size(); ++i)
        u += mul(A, UEAElement::from_elem(AlgElem::basis(R.cartan[i]), a),
                 UEAElement::from_elem(R.cartan_dual[i], b));
    for (const auto& pair : R.dual_pairs)
        for (std::size_t i = 0; i < pair.e.size(); ++i) {
            u += mul(A, UEAElement::from_elem(pair.f[i], a), UEAElement::from_elem(pair.e[i], b));
            u += mul(A, UEAElement::from_elem(pair.f[i], b), UEAElement::from_elem(pair.e[i], a));
        }
    return u;
}

// ----------------------------------------------------- cyclic gl families

inline std::pair<int, int> require_gl(const SuperAlgebra& A, const char* who) {
    auto sig = A.gl_signature();
    if (!sig) throw std::invalid_argument(std::string(who) + ": algebra is not a gl(M,N) table");
    return *sig;
}

inline int gl_unit_index(const SuperAlgebra& A, int i, int j) {
    auto idx = A.basis_index("E[" + std::to_string(i) + "," + std::to_string(j) + "]");
    if (!idx) throw std::invalid_argument("gl_unit_index: no basis element E[" + std::to_string(i) + "," +
                                          std::to_string(j) + "]");
    return *idx;
}

enum class CyclicSign { Gelfand, None, AllIndices };

// sum over index tuples (i_1..i_k) of signed words
// E_{i_1 i_2}(a_1) E_{i_2 i_3}(a_2) ... E_{i_k i_1}(a_k), as a tensor.
inline TensorElem cyclic_tensor(const SuperAlgebra& A, int k, const std::vector<LaurentPoly>& args,
                                CyclicSign mode) {
    auto [M, N] = require_gl(A, "cyclic_tensor");
    if (k < 1) throw std::invalid_argument("cyclic_tensor: k >= 1 required");
    if (static_cast<int>(args.size()) != k) throw std::invalid_argument("cyclic_tensor: need k coefficient arguments");
    for (const auto& a : args)
        if (a.is_zero()) throw std::invalid_argument("cyclic_tensor: zero Laurent argument");
    const int n = M + N;
    auto index_parity = [&, M = M](int i) { return i <= M ? Parity::Even : Parity::Odd; };

    TensorElem out;
    std::vector<int> tuple(static_cast<std::size_t>(k), 1);
    for (;;) {
        int sign_bits = 0;
        for (int j = 0; j < k; ++j) {
            bool counts = (mode == CyclicSign::AllIndices) || (mode == CyclicSign::Gelfand && j >= 1);
            if (counts && is_odd(index_parity(tuple[static_cast<std::size_t>(j)]))) sign_bits ^= 1;
        }
        Rational base(sign_bits ? -1 : 1);
        std::vector<int> gens(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j)
            gens[static_cast<std::size_t>(j)] =
                gl_unit_index(A, tuple[static_cast<std::size_t>(j)], tuple[static_cast<std::size_t>((j + 1) % k)]);

        // expand the Laurent arguments slot by slot
        Word w(static_cast<std::size_t>(k));
        std::function<void(int, Rational)> expand = [&](int slot, Rational c) {
            if (slot == k) {
                out.add(w, c);
                return;
            }
            for (const auto& [e, pc] : args[static_cast<std::size_t>(slot)].terms()) {
                w[static_cast<std::size_t>(slot)] = LoopGen{gens[static_cast<std::size_t>(slot)], e};
                expand(slot + 1, c * pc);
            }
        };
        expand(0, base);

        int pos = k - 1;
        while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == n) {
            tuple[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++tuple[static_cast<std::size_t>(pos)];
    }
    return out;
}

inline std::vector<LaurentPoly> all_ones(int k) {
    return std::vector<LaurentPoly>(static_cast<std::size_t>(k), LaurentPoly::one());
}

inline TensorElem build_gelfand_tensor(const SuperAlgebra& A, int k, const std::vector<LaurentPoly>& args) {
    return cyclic_tensor(A, k, args, CyclicSign::Gelfand);
}

// T_k(a_1,...,a_k); with all arguments 1 this is the classical T_k.
inline UEAElement build_gelfand(const SuperAlgebra& A, int k, const std::vector<LaurentPoly>& args) {
    return project_tensor(A, cyclic_tensor(A, k, args, CyclicSign::Gelfand));
}
inline UEAElement build_gelfand(const SuperAlgebra& A, int k) { return build_gelfand(A, k, all_ones(k)); }

// S_k: the unsigned cyclic sum.
inline UEAElement build_even_gelfand(const SuperAlgebra& A, int k) {
    return project_tensor(A, cyclic_tensor(A, k, all_ones(k), CyclicSign::None));
}

// D_l: cyclic sum signed by the parity of the whole index tuple.
inline UEAElement build_anti_invariant(const SuperAlgebra& A, int l, bool allow_small = false) {
    auto [M, N] = require_gl(A, "build_anti_invariant");
    if (M + N < 3 && !allow_small)
        throw std::invalid_argument("build_anti_invariant: M+N >= 3 required (pass allow_small to override)");
    return project_tensor(A, cyclic_tensor(A, l, all_ones(l), CyclicSign::AllIndices));
}

// ------------------------------------------------------------- verifiers

struct ResidualEntry {
    std::string generator;
    LoopGen gen;
    UEAElement residual;
    bool informational = false;
};

struct ResidualReport {
    std::vector<ResidualEntry> entries;
    bool pass = true;

    const UEAElement& residual_for(const std::string& label) const {
        for (const auto& e : entries)
            if (e.generator == label) return e.residual;
        throw std::invalid_argument("no residual for generator '" + label + "'");
    }
};

inline int worker_count() {
    if (const char* s = std::getenv("LOOPCAS_WORKERS")) {
        int v = std::atoi(s);
        if (v >= 1) return v;
    }
    return 1;
}

// Evaluates f on each generator, fanning out across workers when requested;
// results are merged in generator order either way.
inline std::vector<UEAElement> map_generators(const std::vector<LoopGen>& gens,
                                              const std::function<UEAElement(LoopGen)>& f) {
    std::vector<UEAElement> out(gens.size());
    int workers = worker_count();
    if (workers <= 1 || gens.size() <= 1) {
        for (std::size_t i = 0; i < gens.size(); ++i) out[i] = f(gens[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= gens.size()) return;
            out[i] = f(gens[i]);
        }
    };
    std::vector<std::thread> pool;
    std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), gens.size());
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    return out;
}

inline std::vector<LoopGen> default_generators(const SuperAlgebra& A) {
    std::vector<LoopGen> gens;
    gens.reserve(static_cast<std::size_t>(A.dim()));
    for (int i = 0; i < A.dim(); ++i) gens.push_back(LoopGen{i, 0});
    return gens;
}

// Residual map g -> [u, g]; passes iff every residual is the zero element.
inline ResidualReport verify_central(const SuperAlgebra& A, const UEAElement& u,
                                     std::vector<LoopGen> generators = {}) {
    if (generators.empty()) generators = default_generators(A);
    ResidualReport rep;
    auto residuals = map_generators(generators, [&](LoopGen g) { return commutator_with_gen(A, u, g); });
    for (std::size_t i = 0; i < generators.size(); ++i) {
        bool zero = residuals[i].is_zero();
        if (!zero) rep.pass = false;
        rep.entries.push_back({A.label(generators[i].basis), generators[i], std::move(residuals[i]), false});
    }
    return rep;
}

// Pass/fail over the even part only; odd residuals are reported as
// informational entries and do not affect the verdict.
inline ResidualReport verify_even_central(const SuperAlgebra& A, const UEAElement& u) {
    auto gens = default_generators(A);
    ResidualReport rep;
    auto residuals = map_generators(gens, [&](LoopGen g) { return commutator_with_gen(A, u, g); });
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool odd = is_odd(A.parity(gens[i].basis));
        bool zero = residuals[i].is_zero();
        if (!odd && !zero) rep.pass = false;
        rep.entries.push_back({A.label(gens[i].basis), gens[i], std::move(residuals[i]), odd});
    }
    return rep;
}

// Residual map g -> ad'g.u over the full basis; u must be homogeneous.
inline ResidualReport verify_anti_invariant(const SuperAlgebra& A, const UEAElement& u) {
    if (u.parity(A) == UEAParity::Mixed)
        throw std::invalid_argument("verify_anti_invariant: mixed-parity element");
    auto gens = default_generators(A);
    ResidualReport rep;
    auto residuals = map_generators(gens, [&](LoopGen g) { return ad_prime_action(A, g, u); });
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool zero = residuals[i].is_zero();
        if (!zero) rep.pass = false;
        rep.entries.push_back({A.label(gens[i].basis), gens[i], std::move(residuals[i]), false});
    }
    return rep;
}

// ------------------------------------------- dual-basis pairing identity

// For positive roots al, be with dual-paired bases {x_i},{y_i} of
// g_{al},g_{-al} and {u_i},{v_i} of g_{be},g_{-be}, and z in g_{be-al}:
//   sum_i [v_i,z] (x) u_i = (-1)^{|z|} sum_i y_i (x) [z,x_i]
// together with its enveloping-algebra image under x (x) y -> x(a)y(b).
struct PairingCheck {
    TensorElem tensor_difference;
    UEAElement uea_difference;
    bool pass = true;
};

inline PairingCheck check_dual_pairing_identity(const SuperAlgebra& A, const RootDatum& R, const Weight& alpha,
                                                const Weight& beta, const AlgElem& z,
                                                const LaurentPoly& a = LaurentPoly::one(),
                                                const LaurentPoly& b = LaurentPoly::one()) {
    if (!R.is_positive(alpha) || !R.is_positive(beta))
        throw std::invalid_argument("check_dual_pairing_identity: alpha, beta must be positive roots");
    Weight diff = beta - alpha;
    if (!z.is_zero()) {
        for (const auto& [i, c] : z.c) {
            (void)c;
            if (R.basis_weight.at(i) != diff)
                throw std::invalid_argument("check_dual_pairing_identity: z is not in the root space of beta-alpha");
        }
    }
    const DualPair& pa = R.pair_for(alpha);
    const DualPair& pb = R.pair_for(beta);
    int zsign = 1;
    if (!z.is_zero() && is_odd(A.parity_of(z))) zsign = -1;

    TensorElem lhs, rhs;
    for (std::size_t i = 0; i < pb.e.size(); ++i) {
        AlgElem vz = A.bracket(pb.f[i], z);
        for (const auto& [m, cm] : vz.c)
            for (const auto& [l, cl] : pb.e[i].c) lhs.add(Word{LoopGen{m, 0}, LoopGen{l, 0}}, cm * cl);
    }
    for (std::size_t i = 0; i < pa.e.size(); ++i) {
        AlgElem zx = A.bracket(z, pa.e[i]);
        for (const auto& [m, cm] : pa.f[i].c)
            for (const auto& [l, cl] : zx.c) rhs.add(Word{LoopGen{m, 0}, LoopGen{l, 0}}, cm * cl * Rational(zsign));
    }

    UEAElement lhs_u, rhs_u;
    for (std::size_t i = 0; i < pb.e.size(); ++i) {
        AlgElem vz = A.bracket(pb.f[i], z);
        lhs_u += mul(A, UEAElement::from_elem(vz, a), UEAElement::from_elem(pb.e[i], b));
    }
    for (std::size_t i = 0; i < pa.e.size(); ++i) {
        AlgElem zx = A.bracket(z, pa.e[i]);
        rhs_u += mul(A, UEAElement::from_elem(pa.f[i], a), UEAElement::from_elem(zx, b)).scaled(Rational(zsign));
    }

    PairingCheck out;
    out.tensor_difference = lhs - rhs;
    out.uea_difference = lhs_u - rhs_u;
    out.pass = out.tensor_difference.is_zero() && out.uea_difference.is_zero();
    return out;
}

// ------------------------------------------------------------ spec atoms

enum class InvariantKind { Casimir, CasimirC, GeneralizedCasimir, Gelfand, EvenGelfand, AntiInvariant };

struct InvariantSpec {
    InvariantKind kind = InvariantKind::Casimir;
    int k = 0;                        // order for the cyclic families
    std::vector<LaurentPoly> args;    // Laurent arguments where applicable
};

inline UEAElement build_invariant(const SuperAlgebra& A, const RootDatum& R, const InvariantSpec& spec) {
    switch (spec.kind) {
    case InvariantKind::Casimir:
        return build_casimir(A, R);
    case InvariantKind::CasimirC:
        return build_casimir_c(A);
    case InvariantKind::GeneralizedCasimir:
        if (spec.args.size() != 2) throw std::invalid_argument("Omega(a;b) takes exactly two arguments");
        if (spec.args[0].is_zero() || spec.args[1].is_zero())
            throw std::invalid_argument("Omega(a;b): zero Laurent argument");
        return build_generalized_casimir(A, R, spec.args[0], spec.args[1]);
    case InvariantKind::Gelfand:
        if (spec.k < 1) throw std::invalid_argument("T[k]: k >= 1 required");
        return spec.args.empty() ? build_gelfand(A, spec.k) : build_gelfand(A, spec.k, spec.args);
    case InvariantKind::EvenGelfand:
        if (spec.k < 1) throw std::invalid_argument("S[k]: k >= 1 required");
        return build_even_gelfand(A, spec.k);
    case InvariantKind::AntiInvariant:
        if (spec.k < 1) throw std::invalid_argument("D[l]: l >= 1 required");
        return build_anti_invariant(A, spec.k);
    }
    throw std::logic_error("build_invariant: unknown kind");
}

} // namespace loopcas
