#pragma once

// Finite-dimensional Lie superalgebras given by validated structure-constant
// tables together with an invariant bilinear form. Built-ins: sl2, gl(1,1),
// osp(1,2) and gl(M,N) with the supertrace form.

#include "loopcas/matrix.hpp"
#include "loopcas/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopcas {

enum class Parity : unsigned char { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}
inline bool is_odd(Parity p) { return p == Parity::Odd; }
inline const char* parity_name(Parity p) { return is_odd(p) ? "odd" : "even"; }
// Sign (-1)^{|a||b|}.
inline int koszul_sign(Parity a, Parity b) { return (is_odd(a) && is_odd(b)) ? -1 : 1; }

// Sparse element of the underlying algebra, coefficients over the basis.
struct AlgElem {
    std::map<int, Rational> c;

    static AlgElem basis(int i, Rational coeff = Rational(1)) {
        AlgElem e;
        if (!coeff.is_zero()) e.c.emplace(i, std::move(coeff));
        return e;
    }

    bool is_zero() const { return c.empty(); }

    void add(int i, const Rational& x) {
        if (x.is_zero()) return;
        auto it = c.find(i);
        if (it == c.end()) {
            c.emplace(i, x);
        } else {
            it->second += x;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    AlgElem& operator+=(const AlgElem& o) {
        for (const auto& [i, x] : o.c) add(i, x);
        return *this;
    }
    AlgElem& operator-=(const AlgElem& o) {
        for (const auto& [i, x] : o.c) add(i, -x);
        return *this;
    }
    friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }

    AlgElem scaled(const Rational& k) const {
        AlgElem r;
        if (k.is_zero()) return r;
        for (const auto& [i, x] : c) r.c.emplace(i, x * k);
        return r;
    }

    friend bool operator==(const AlgElem&, const AlgElem&) = default;
    friend auto operator<=>(const AlgElem& a, const AlgElem& b) { return a.c <=> b.c; }
};

struct Violation {
    std::string check;
    std::vector<int> witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const {
        if (ok()) return "valid";
        std::string s;
        for (const auto& v : violations) {
            s += v.check + " [";
            for (std::size_t i = 0; i < v.witness.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(v.witness[i]);
            }
            s += "] " + v.detail + "\n";
        }
        return s;
    }
};

struct ChevalleyData {
    std::vector<int> e;      // raising generator per simple root
    std::vector<int> f;      // lowering generator per simple root
    std::vector<bool> odd;   // odd simple-root markers
};

class SuperAlgebra {
public:
    struct Data {
        std::string name;
        std::vector<std::string> labels;
        std::vector<Parity> parity;
        // sparse structure constants: (i,j) -> list of (k, c) with [x_i,x_j] = sum c x_k
        std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> brackets;
        std::vector<std::tuple<int, int, Rational>> form;
        std::vector<int> cartan;
        std::optional<ChevalleyData> chevalley;
        std::optional<std::pair<int, int>> gl_signature;
    };

    explicit SuperAlgebra(Data d)
        : name_(std::move(d.name)),
          labels_(std::move(d.labels)),
          parity_(std::move(d.parity)),
          cartan_(std::move(d.cartan)),
          chevalley_(std::move(d.chevalley)),
          gl_sig_(d.gl_signature) {
        const int n = static_cast<int>(labels_.size());
        if (static_cast<int>(parity_.size()) != n)
            throw std::invalid_argument("SuperAlgebra: parity list size mismatch");
        bracket_.assign(static_cast<std::size_t>(n) * n, {});
        for (auto& [ij, terms] : d.brackets) {
            auto [i, j] = ij;
            check_index(i);
            check_index(j);
            std::map<int, Rational> merged;
            for (auto& [k, c] : terms) {
                check_index(k);
                if (c.is_zero()) continue;
                merged[k] += c;
            }
            auto& row = bracket_[static_cast<std::size_t>(i) * n + j];
            for (auto& [k, c] : merged)
                if (!c.is_zero()) row.emplace_back(k, c);
        }
        form_ = Matrix(n, n);
        for (auto& [i, j, c] : d.form) {
            check_index(i);
            check_index(j);
            form_(i, j) = c;
        }
        for (int i : cartan_) check_index(i);
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!label_to_index_.emplace(labels_[i], static_cast<int>(i)).second)
                throw std::invalid_argument("SuperAlgebra: duplicate basis label '" + labels_[i] + "'");
        }
        if (chevalley_) {
            if (chevalley_->e.size() != chevalley_->f.size() || chevalley_->e.size() != chevalley_->odd.size())
                throw std::invalid_argument("SuperAlgebra: chevalley data size mismatch");
            for (std::size_t i = 0; i < chevalley_->e.size(); ++i) {
                check_index(chevalley_->e[i]);
                check_index(chevalley_->f[i]);
            }
        }
    }

    int dim() const { return static_cast<int>(labels_.size()); }
    const std::string& name() const { return name_; }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    Parity parity(int i) const { return parity_[static_cast<std::size_t>(i)]; }
    const std::vector<Parity>& parities() const { return parity_; }
    const std::vector<int>& cartan() const { return cartan_; }
    const std::optional<ChevalleyData>& chevalley() const { return chevalley_; }
    std::optional<std::pair<int, int>> gl_signature() const { return gl_sig_; }

    bool is_cartan_index(int i) const {
        for (int c : cartan_)
            if (c == i) return true;
        return false;
    }

    std::optional<int> basis_index(const std::string& label) const {
        auto it = label_to_index_.find(label);
        if (it == label_to_index_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<std::pair<int, Rational>>& bracket(int i, int j) const {
        return bracket_[static_cast<std::size_t>(i) * dim() + j];
    }

    AlgElem bracket(const AlgElem& x, const AlgElem& y) const {
        AlgElem r;
        for (const auto& [i, a] : x.c)
            for (const auto& [j, b] : y.c) {
                Rational ab = a * b;
                for (const auto& [k, c] : bracket(i, j)) r.add(k, ab * c);
            }
        return r;
    }

    const Rational& form(int i, int j) const { return form_(i, j); }
    const Matrix& form_matrix() const { return form_; }

    Rational form(const AlgElem& x, const AlgElem& y) const {
        Rational r;
        for (const auto& [i, a] : x.c)
            for (const auto& [j, b] : y.c) {
                const Rational& f = form_(i, j);
                if (!f.is_zero()) r += a * b * f;
            }
        return r;
    }

    Parity parity_of(const AlgElem& x) const {
        // zero counts as even; mixed support is rejected
        Parity p = Parity::Even;
        bool first = true;
        for (const auto& [i, c] : x.c) {
            (void)c;
            if (first) {
                p = parity(i);
                first = false;
            } else if (parity(i) != p) {
                throw std::invalid_argument("element is not parity-homogeneous");
            }
        }
        return p;
    }

    std::string elem_to_string(const AlgElem& x) const {
        if (x.is_zero()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [i, c] : x.c) {
            Rational mag = c.sign() < 0 ? -c : c;
            if (first) {
                if (c.sign() < 0) s += "-";
                first = false;
            } else {
                s += c.sign() < 0 ? " - " : " + ";
            }
            if (!mag.is_one()) s += mag.to_string() + "*";
            s += label(i);
        }
        return s;
    }

    // Stable content hash of the validated table (FNV-1a over a canonical dump).
    std::string fingerprint() const {
        std::string text = name_ + "\n";
        for (int i = 0; i < dim(); ++i)
            text += labels_[static_cast<std::size_t>(i)] + ":" + parity_name(parity(i)) + ";";
        text += "\n";
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) {
                std::map<int, Rational> sorted;
                for (const auto& [k, c] : bracket(i, j)) sorted[k] = c;
                for (const auto& [k, c] : sorted)
                    text += std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "=" +
                            c.to_string() + ";";
            }
        text += "\n";
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                if (!form_(i, j).is_zero())
                    text += std::to_string(i) + "," + std::to_string(j) + "=" + form_(i, j).to_string() + ";";
        text += "\n";
        for (int c : cartan_) text += std::to_string(c) + ",";
        if (chevalley_) {
            text += "\nchev:";
            for (std::size_t i = 0; i < chevalley_->e.size(); ++i)
                text += std::to_string(chevalley_->e[i]) + "/" + std::to_string(chevalley_->f[i]) +
                        (chevalley_->odd[i] ? "o" : "e") + ";";
        }
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char ch : text) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        std::ostringstream os;
        os << std::hex;
        for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
        return os.str();
    }

    // ---- built-ins ----

    // gl(M,N): matrix units under the supercommutator, supertrace form.
    // Basis order fixes the PBW generator order: Cartan E_ii first, then
    // lowering E_ij (i>j), then raising E_ij (i<j).
    static SuperAlgebra gl(int M, int N) {
        if (M < 1 || N < 1) throw std::invalid_argument("gl(M,N): M,N >= 1 required");
        const int n = M + N;
        auto p = [&](int i) { return i <= M ? Parity::Even : Parity::Odd; }; // 1-based
        Data d;
        d.name = "gl(" + std::to_string(M) + "," + std::to_string(N) + ")";
        std::vector<std::pair<int, int>> units; // 1-based (i,j)
        for (int i = 1; i <= n; ++i) units.emplace_back(i, i);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j < i; ++j) units.emplace_back(i, j);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) units.emplace_back(i, j);
        std::map<std::pair<int, int>, int> unit_index;
        for (std::size_t k = 0; k < units.size(); ++k) {
            auto [i, j] = units[k];
            d.labels.push_back("E[" + std::to_string(i) + "," + std::to_string(j) + "]");
            d.parity.push_back(p(i) + p(j));
            unit_index[units[k]] = static_cast<int>(k);
        }
        for (int a = 0; a < n; ++a) d.cartan.push_back(a);
        // [E_ab, E_cd] = d_bc E_ad - (-1)^{|ab||cd|} d_da E_cb
        for (std::size_t x = 0; x < units.size(); ++x)
            for (std::size_t y = 0; y < units.size(); ++y) {
                auto [a, b] = units[x];
                auto [c, dd] = units[y];
                AlgElem val;
                if (b == c) val.add(unit_index[{a, dd}], Rational(1));
                int sign = koszul_sign(d.parity[x], d.parity[y]);
                if (dd == a) val.add(unit_index[{c, b}], Rational(-sign));
                if (!val.is_zero()) {
                    std::vector<std::pair<int, Rational>> terms(val.c.begin(), val.c.end());
                    d.brackets[{static_cast<int>(x), static_cast<int>(y)}] = std::move(terms);
                }
            }
        // supertrace form (E_ij, E_kl) = (-1)^{p(i)} d_jk d_il
        for (std::size_t x = 0; x < units.size(); ++x)
            for (std::size_t y = 0; y < units.size(); ++y) {
                auto [i, j] = units[x];
                auto [k, l] = units[y];
                if (j == k && i == l)
                    d.form.emplace_back(static_cast<int>(x), static_cast<int>(y),
                                        Rational(p(i) == Parity::Odd ? -1 : 1));
            }
        ChevalleyData chev;
        for (int i = 1; i < n; ++i) {
            chev.e.push_back(unit_index[{i, i + 1}]);
            chev.f.push_back(unit_index[{i + 1, i}]);
            chev.odd.push_back(i == M);
        }
        d.chevalley = std::move(chev);
        d.gl_signature = {M, N};
        return SuperAlgebra(std::move(d));
    }

    // sl2, basis order (f, h, e): [e,f] = h, [h,e] = 2e, [h,f] = -2f,
    // (h,h) = 2, (e,f) = (f,e) = 1.
    static SuperAlgebra sl2() {
        Data d;
        d.name = "sl2";
        d.labels = {"f", "h", "e"};
        d.parity = {Parity::Even, Parity::Even, Parity::Even};
        const int F = 0, H = 1, E = 2;
        auto set = [&](int i, int j, std::vector<std::pair<int, Rational>> v) { d.brackets[{i, j}] = std::move(v); };
        set(E, F, {{H, Rational(1)}});
        set(F, E, {{H, Rational(-1)}});
        set(H, E, {{E, Rational(2)}});
        set(E, H, {{E, Rational(-2)}});
        set(H, F, {{F, Rational(-2)}});
        set(F, H, {{F, Rational(2)}});
        d.form = {{H, H, Rational(2)}, {E, F, Rational(1)}, {F, E, Rational(1)}};
        d.cartan = {H};
        d.chevalley = ChevalleyData{{E}, {F}, {false}};
        return SuperAlgebra(std::move(d));
    }

    // gl(1,1), basis order (f, h1, h2, e); e,f odd. [e,f] = h1+h2 = [f,e],
    // [h1,e] = e, [h2,e] = -e, [h1,f] = -f, [h2,f] = f.
    // (e,f) = 1 = -(f,e), (h1,h1) = 1 = -(h2,h2).
    static SuperAlgebra gl11() {
        Data d;
        d.name = "gl(1,1)";
        d.labels = {"f", "h1", "h2", "e"};
        d.parity = {Parity::Odd, Parity::Even, Parity::Even, Parity::Odd};
        const int F = 0, H1 = 1, H2 = 2, E = 3;
        auto set = [&](int i, int j, std::vector<std::pair<int, Rational>> v) { d.brackets[{i, j}] = std::move(v); };
        set(E, F, {{H1, Rational(1)}, {H2, Rational(1)}});
        set(F, E, {{H1, Rational(1)}, {H2, Rational(1)}});
        set(H1, E, {{E, Rational(1)}});
        set(E, H1, {{E, Rational(-1)}});
        set(H2, E, {{E, Rational(-1)}});
        set(E, H2, {{E, Rational(1)}});
        set(H1, F, {{F, Rational(-1)}});
        set(F, H1, {{F, Rational(1)}});
        set(H2, F, {{F, Rational(1)}});
        set(F, H2, {{F, Rational(-1)}});
        d.form = {{E, F, Rational(1)},
                  {F, E, Rational(-1)},
                  {H1, H1, Rational(1)},
                  {H2, H2, Rational(-1)}};
        d.cartan = {H1, H2};
        d.chevalley = ChevalleyData{{E}, {F}, {true}};
        return SuperAlgebra(std::move(d));
    }

    // osp(1,2), basis order (f, f', h, e', e); e,f odd, rest even.
    // Bracket table: [h,e']=4e', [h,f']=-4f', [h,e]=2e, [h,f]=-2f,
    // [e',f']=h/2, [e',f]=-e, [f',e]=-f, [e,e]=4e', [f,f]=-4f', [e,f]=h=[f,e].
    // (e,f) = 1 = -(f,e), (h,h) = 2, (e',f') = 1/4 = (f',e').
    static SuperAlgebra osp12() {
        Data d;
        d.name = "osp(1,2)";
        d.labels = {"f", "f'", "h", "e'", "e"};
        d.parity = {Parity::Odd, Parity::Even, Parity::Even, Parity::Even, Parity::Odd};
        const int F = 0, FP = 1, H = 2, EP = 3, E = 4;
        auto set = [&](int i, int j, std::vector<std::pair<int, Rational>> v) { d.brackets[{i, j}] = std::move(v); };
        set(H, EP, {{EP, Rational(4)}});
        set(EP, H, {{EP, Rational(-4)}});
        set(H, FP, {{FP, Rational(-4)}});
        set(FP, H, {{FP, Rational(4)}});
        set(H, E, {{E, Rational(2)}});
        set(E, H, {{E, Rational(-2)}});
        set(H, F, {{F, Rational(-2)}});
        set(F, H, {{F, Rational(2)}});
        set(EP, FP, {{H, Rational(1, 2)}});
        set(FP, EP, {{H, Rational(-1, 2)}});
        set(EP, F, {{E, Rational(-1)}});
        set(F, EP, {{E, Rational(1)}});
        set(FP, E, {{F, Rational(-1)}});
        set(E, FP, {{F, Rational(1)}});
        set(E, E, {{EP, Rational(4)}});
        set(F, F, {{FP, Rational(-4)}});
        set(E, F, {{H, Rational(1)}});
        set(F, E, {{H, Rational(1)}});
        d.form = {{E, F, Rational(1)},
                  {F, E, Rational(-1)},
                  {H, H, Rational(2)},
                  {EP, FP, Rational(1, 4)},
                  {FP, EP, Rational(1, 4)}};
        d.cartan = {H};
        d.chevalley = ChevalleyData{{E}, {F}, {true}};
        return SuperAlgebra(std::move(d));
    }

    // Builtin spec strings: "sl2", "gl11", "osp12", "gl:M,N".
    static std::optional<SuperAlgebra> builtin(const std::string& spec) {
        if (spec == "sl2") return sl2();
        if (spec == "gl11") return gl11();
        if (spec == "osp12") return osp12();
        if (spec.rfind("gl:", 0) == 0) {
            auto comma = spec.find(',', 3);
            if (comma == std::string::npos) return std::nullopt;
            try {
                int M = std::stoi(spec.substr(3, comma - 3));
                int N = std::stoi(spec.substr(comma + 1));
                if (M < 1 || N < 1) return std::nullopt;
                return gl(M, N);
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

private:
    void check_index(int i) const {
        if (i < 0 || i >= dim()) throw std::invalid_argument("SuperAlgebra: basis index out of range");
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<Parity> parity_;
    std::vector<std::vector<std::pair<int, Rational>>> bracket_;
    Matrix form_;
    std::vector<int> cartan_;
    std::optional<ChevalleyData> chevalley_;
    std::optional<std::pair<int, int>> gl_sig_;
    std::map<std::string, int> label_to_index_;
};

namespace detail {

// ad h diagonal on the declared basis: weight vector per basis index.
// Returns false (and records a violation when report != nullptr) otherwise.
inline bool basis_weights(const SuperAlgebra& A, std::vector<std::vector<Rational>>& weights,
                          ValidationReport* report) {
    const int n = A.dim();
    const auto& cartan = A.cartan();
    weights.assign(static_cast<std::size_t>(n), std::vector<Rational>(cartan.size()));
    bool ok = true;
    for (std::size_t ci = 0; ci < cartan.size(); ++ci) {
        for (int j = 0; j < n; ++j) {
            bool bad = false;
            Rational lambda;
            for (const auto& [k, c] : A.bracket(cartan[ci], j)) {
                if (k == j) {
                    lambda = c;
                } else if (!c.is_zero()) {
                    bad = true;
                }
            }
            if (bad) {
                ok = false;
                if (report)
                    report->violations.push_back({"cartan-diagonal",
                                                  {cartan[ci], j},
                                                  "ad " + A.label(cartan[ci]) + " is not diagonal on " + A.label(j)});
            } else {
                weights[static_cast<std::size_t>(j)][ci] = lambda;
            }
        }
    }
    return ok;
}

inline bool weight_is_zero(const std::vector<Rational>& w) {
    for (const auto& x : w)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace detail

// Exhaustive check of the superalgebra axioms and the bilinear-form axioms
// on basis elements. Every failure is reported with its witness indices.
inline ValidationReport validate_algebra(const SuperAlgebra& A) {
    ValidationReport rep;
    const int n = A.dim();

    // parity additivity of the bracket
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [k, c] : A.bracket(i, j)) {
                (void)c;
                if (A.parity(k) != A.parity(i) + A.parity(j))
                    rep.violations.push_back({"bracket-parity", {i, j, k}, "c_ijk nonzero across parity grading"});
            }

    // super-antisymmetry [x,y] = -(-1)^{|x||y|}[y,x]
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            AlgElem lhs, rhs;
            for (const auto& [k, c] : A.bracket(i, j)) lhs.add(k, c);
            int sign = koszul_sign(A.parity(i), A.parity(j));
            for (const auto& [k, c] : A.bracket(j, i)) rhs.add(k, c.is_zero() ? c : c * Rational(-sign));
            if (lhs != rhs)
                rep.violations.push_back({"super-antisymmetry", {i, j}, "[x_i,x_j] != -(-1)^{|i||j|}[x_j,x_i]"});
        }

    // super Jacobi [[x,y],z] = [x,[y,z]] - (-1)^{|x||y|}[y,[x,z]]
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                AlgElem xi = AlgElem::basis(i), xj = AlgElem::basis(j), xk = AlgElem::basis(k);
                AlgElem lhs = A.bracket(A.bracket(xi, xj), xk);
                AlgElem rhs = A.bracket(xi, A.bracket(xj, xk)) -
                              A.bracket(xj, A.bracket(xi, xk)).scaled(Rational(koszul_sign(A.parity(i), A.parity(j))));
                if (lhs != rhs) rep.violations.push_back({"super-jacobi", {i, j, k}, "Jacobi identity fails"});
            }

    // form axioms: even, super-symmetric, invariant
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational& f = A.form(i, j);
            if (!f.is_zero() && A.parity(i) != A.parity(j))
                rep.violations.push_back({"form-even", {i, j}, "form couples even with odd"});
            Rational sym = A.form(j, i) * Rational(koszul_sign(A.parity(i), A.parity(j)));
            if (f != sym)
                rep.violations.push_back({"form-supersymmetric", {i, j}, "(x,y) != (-1)^{|x||y|}(y,x)"});
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                AlgElem bij, bjk;
                for (const auto& [m, c] : A.bracket(i, j)) bij.add(m, c);
                for (const auto& [m, c] : A.bracket(j, k)) bjk.add(m, c);
                Rational lhs = A.form(bij, AlgElem::basis(k));
                Rational rhs = A.form(AlgElem::basis(i), bjk);
                if (lhs != rhs)
                    rep.violations.push_back({"form-invariant", {i, j, k}, "([x,y],z) != (x,[y,z])"});
            }

    // non-degenerate on the Cartan
    {
        const auto& cart = A.cartan();
        Matrix g(cart.size(), cart.size());
        for (std::size_t a = 0; a < cart.size(); ++a)
            for (std::size_t b = 0; b < cart.size(); ++b) g(a, b) = A.form(cart[a], cart[b]);
        if (g.rank() != cart.size())
            rep.violations.push_back({"form-cartan-degenerate", {}, "form restricted to the Cartan is singular"});
    }

    // root-space orthogonality needs diagonal ad-h
    std::vector<std::vector<Rational>> weights;
    if (detail::basis_weights(A, weights, &rep)) {
        for (int j = 0; j < n; ++j) {
            bool zero_weight = detail::weight_is_zero(weights[static_cast<std::size_t>(j)]);
            if (zero_weight != A.is_cartan_index(j))
                rep.violations.push_back({"zero-weight-space", {j}, "weight-0 basis vectors must be exactly the Cartan"});
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (A.form(i, j).is_zero()) continue;
                auto sum = weights[static_cast<std::size_t>(i)];
                for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += weights[static_cast<std::size_t>(j)][k];
                if (!detail::weight_is_zero(sum))
                    rep.violations.push_back({"form-root-orthogonality", {i, j}, "(g_a,g_b) != 0 with a+b != 0"});
            }
        // g_a x g_{-a} pairing nondegenerate, per weight
        std::map<std::vector<Rational>, std::vector<int>> spaces;
        for (int j = 0; j < n; ++j)
            if (!detail::weight_is_zero(weights[static_cast<std::size_t>(j)]))
                spaces[weights[static_cast<std::size_t>(j)]].push_back(j);
        for (const auto& [w, members] : spaces) {
            std::vector<Rational> neg;
            for (const auto& x : w) neg.push_back(-x);
            auto it = spaces.find(neg);
            if (it == spaces.end() || it->second.size() != members.size()) {
                rep.violations.push_back({"root-pairing", {members.front()}, "opposite root space missing or size mismatch"});
                continue;
            }
            Matrix g(members.size(), members.size());
            for (std::size_t a = 0; a < members.size(); ++a)
                for (std::size_t b = 0; b < members.size(); ++b) g(a, b) = A.form(members[a], it->second[b]);
            if (g.rank() != members.size())
                rep.violations.push_back({"root-pairing", {members.front()}, "pairing g_a x g_{-a} is degenerate"});
        }
    }

    return rep;
}

} // namespace loopcas
