#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "verma/rational.hpp"

namespace verma {

// A formal variable with an integer grading weight (h:0, c:0, c_k:k, z:1, ...).
struct Var {
    std::string name;
    int weight = 0;
};

inline bool operator==(const Var& a, const Var& b) { return a.name == b.name && a.weight == b.weight; }
inline bool operator!=(const Var& a, const Var& b) { return !(a == b); }

using VarTableData = std::vector<Var>;
using VarTable = std::shared_ptr<const VarTableData>;

inline VarTable make_vars(std::initializer_list<Var> vs) {
    return std::make_shared<const VarTableData>(vs);
}
inline VarTable make_vars(VarTableData vs) {
    return std::make_shared<const VarTableData>(std::move(vs));
}

inline int var_index(const VarTable& t, const std::string& name) {
    for (size_t i = 0; i < t->size(); ++i)
        if ((*t)[i].name == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable '" + name + "'");
}

using Expvec = std::vector<int>;

inline int weighted_degree(const VarTable& t, const Expvec& e) {
    int d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += e[i] * (*t)[i].weight;
    return d;
}

// Graded-lex, highest term first: higher weighted degree wins, ties broken
// lexicographically with later variables heavier kept simple as plain lex.
struct GrlexGreater {
    VarTable table;
    bool operator()(const Expvec& a, const Expvec& b) const {
        int da = weighted_degree(table, a), db = weighted_degree(table, b);
        if (da != db) return da > db;
        return a > b;
    }
};

// Sparse multivariate polynomial over Rational with graded variables.
class MPoly {
  public:
    using TermMap = std::map<Expvec, Rational, GrlexGreater>;

    explicit MPoly(VarTable t) : table_(std::move(t)), terms_(GrlexGreater{table_}) {}

    static MPoly zero(const VarTable& t) { return MPoly(t); }
    static MPoly constant(const VarTable& t, const Rational& r) {
        MPoly p(t);
        if (!r.is_zero()) p.terms_.emplace(Expvec(t->size(), 0), r);
        return p;
    }
    static MPoly variable(const VarTable& t, int idx) {
        if (idx < 0 || static_cast<size_t>(idx) >= t->size())
            throw std::invalid_argument("variable index out of range");
        MPoly p(t);
        Expvec e(t->size(), 0);
        e[idx] = 1;
        p.terms_.emplace(std::move(e), Rational(1));
        return p;
    }
    static MPoly variable(const VarTable& t, const std::string& name) {
        return variable(t, var_index(t, name));
    }

    const VarTable& table() const { return table_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 &&
               std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                           [](int x) { return x == 0; });
    }
    Rational constant_value() const {
        if (is_zero()) return Rational(0);
        if (!is_constant()) throw std::domain_error("polynomial is not constant");
        return terms_.begin()->second;
    }

    void add_term(const Expvec& e, const Rational& r) {
        if (r.is_zero()) return;
        if (e.size() != table_->size()) throw std::invalid_argument("exponent arity mismatch");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, r);
        } else {
            it->second += r;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        check_table(o);
        for (const auto& [e, r] : o.terms_) add_term(e, r);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check_table(o);
        for (const auto& [e, r] : o.terms_) add_term(e, -r);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    MPoly operator-() const {
        MPoly p(table_);
        for (const auto& [e, r] : terms_) p.terms_.emplace(e, -r);
        return p;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_table(b);
        MPoly p(a.table_);
        for (const auto& [ea, ra] : a.terms_)
            for (const auto& [eb, rb] : b.terms_) {
                Expvec e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                p.add_term(e, ra * rb);
            }
        return p;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly& operator*=(const Rational& r) {
        if (r.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= r;
        return *this;
    }
    friend MPoly operator*(MPoly a, const Rational& r) { return a *= r; }
    friend MPoly operator*(const Rational& r, MPoly a) { return a *= r; }

    MPoly pow(int n) const {
        if (n < 0) throw std::invalid_argument("negative polynomial power");
        MPoly acc = constant(table_, Rational(1));
        MPoly base = *this;
        while (n > 0) {
            if (n & 1) acc *= base;
            n >>= 1;
            if (n) base = base * base;
        }
        return acc;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        a.check_table(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    // Max weighted degree over terms; 0 for the zero polynomial.
    int wdeg() const {
        int d = 0;
        bool first = true;
        for (const auto& [e, r] : terms_) {
            int w = weighted_degree(table_, e);
            d = first ? w : std::max(d, w);
            first = false;
        }
        return d;
    }

    bool is_weighted_homogeneous(int* deg_out = nullptr) const {
        if (terms_.empty()) {
            if (deg_out) *deg_out = 0;
            return true;
        }
        int d = weighted_degree(table_, terms_.begin()->first);
        for (const auto& [e, r] : terms_)
            if (weighted_degree(table_, e) != d) return false;
        if (deg_out) *deg_out = d;
        return true;
    }

    MPoly weighted_component(int d) const {
        MPoly p(table_);
        for (const auto& [e, r] : terms_)
            if (weighted_degree(table_, e) == d) p.terms_.emplace(e, r);
        return p;
    }

    int deg_in(int idx) const {
        int d = 0;
        for (const auto& [e, r] : terms_) d = std::max(d, e[idx]);
        return d;
    }

    MPoly deriv(int idx) const {
        MPoly p(table_);
        for (const auto& [e, r] : terms_) {
            if (e[idx] == 0) continue;
            Expvec f(e);
            f[idx] -= 1;
            p.add_term(f, r * Rational(e[idx]));
        }
        return p;
    }

    // Substitute a rational value for one variable.
    MPoly subst(int idx, const Rational& val) const {
        MPoly p(table_);
        for (const auto& [e, r] : terms_) {
            Rational c = r;
            for (int k = 0; k < e[idx]; ++k) c *= val;
            Expvec f(e);
            f[idx] = 0;
            p.add_term(f, c);
        }
        return p;
    }

    // Full evaluation; vals[i] substitutes variable i.
    Rational eval(const std::vector<Rational>& vals) const {
        if (vals.size() != table_->size()) throw std::invalid_argument("eval arity mismatch");
        Rational acc(0);
        for (const auto& [e, r] : terms_) {
            Rational t = r;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= vals[i];
            acc += t;
        }
        return acc;
    }

    // Reindex into another table by variable name; the target must contain all
    // variables actually used here.
    MPoly mapped(const VarTable& target) const {
        std::vector<int> idx(table_->size(), -1);
        MPoly p(target);
        for (const auto& [e, r] : terms_) {
            Expvec f(target->size(), 0);
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (idx[i] < 0) idx[i] = var_index(target, (*table_)[i].name);
                f[idx[i]] = e[i];
            }
            p.add_term(f, r);
        }
        return p;
    }

    const Expvec& leading_exp() const {
        require_nonzero();
        return terms_.begin()->first;
    }
    const Rational& leading_coeff() const {
        require_nonzero();
        return terms_.begin()->second;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, r] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << r.str();
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                os << "*" << (*table_)[i].name;
                if (e[i] != 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

  private:
    void check_table(const MPoly& o) const {
        if (table_ == o.table_ || *table_ == *o.table_) return;
        throw std::invalid_argument("polynomials over different variable tables");
    }
    void require_nonzero() const {
        if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    }

    VarTable table_;
    TermMap terms_;
};

// ---- exact division ------------------------------------------------------

// Quotient of an exact division; throws if the division leaves a remainder.
inline MPoly divexact(const MPoly& num, const MPoly& den) {
    if (den.is_zero()) throw std::domain_error("division by zero polynomial");
    MPoly q(num.table());
    MPoly r = num;
    const Expvec& le = den.leading_exp();
    const Rational& lc = den.leading_coeff();
    while (!r.is_zero()) {
        const Expvec& re = r.leading_exp();
        Expvec d(re.size());
        for (size_t i = 0; i < re.size(); ++i) {
            d[i] = re[i] - le[i];
            if (d[i] < 0) throw std::domain_error("inexact polynomial division");
        }
        Rational c = r.leading_coeff() / lc;
        MPoly t(num.table());
        t.add_term(d, c);
        q += t;
        r -= t * den;
    }
    return q;
}

inline bool divides(const MPoly& den, const MPoly& num) {
    try {
        divexact(num, den);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

// ---- multivariate gcd ----------------------------------------------------
//
// Primitive-PRS euclidean gcd, recursing on the highest variable present.
// Desk-scale polynomials only (few variables, modest degree).

namespace detail {

inline int highest_used_var(const MPoly& p) {
    int hv = -1;
    for (const auto& [e, r] : p.terms())
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) hv = std::max(hv, static_cast<int>(i));
    return hv;
}

// Coefficients of p viewed as univariate in variable v.
inline std::map<int, MPoly> univariate_view(const MPoly& p, int v) {
    std::map<int, MPoly> out;
    for (const auto& [e, r] : p.terms()) {
        Expvec f(e);
        int d = f[v];
        f[v] = 0;
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, MPoly::zero(p.table())).first;
        it->second.add_term(f, r);
    }
    return out;
}

inline MPoly from_univariate(const std::map<int, MPoly>& coeffs, int v, const VarTable& t) {
    MPoly p(t);
    for (const auto& [d, c] : coeffs)
        for (const auto& [e, r] : c.terms()) {
            Expvec f(e);
            f[v] += d;
            p.add_term(f, r);
        }
    return p;
}

inline MPoly shift_in_var(const MPoly& p, int v, int k) {
    MPoly q(p.table());
    for (const auto& [e, r] : p.terms()) {
        Expvec f(e);
        f[v] += k;
        q.add_term(f, r);
    }
    return q;
}

inline MPoly leading_coeff_in(const MPoly& p, int v, int* deg_out) {
    auto view = univariate_view(p, v);
    auto it = view.rbegin();
    *deg_out = it->first;
    return it->second;
}

inline MPoly monicize(MPoly p);

// Dense primitive PRS over Z for polynomials in a single variable; keeps
// coefficient growth under control via integer content stripping.
inline MPoly univariate_gcd(const MPoly& f, const MPoly& g, int v) {
    auto to_dense = [&](const MPoly& p) {
        std::vector<mpz_class> c(static_cast<size_t>(p.deg_in(v)) + 1, mpz_class(0));
        mpz_class den_lcm(1);
        for (const auto& [e, r] : p.terms()) {
            mpz_class d = r.den();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        }
        for (const auto& [e, r] : p.terms()) c[e[v]] = r.num() * (den_lcm / r.den());
        while (c.size() > 1 && c.back() == 0) c.pop_back();
        return c;
    };
    auto strip_content = [](std::vector<mpz_class>& c) {
        mpz_class g0(0);
        for (const auto& x : c) mpz_gcd(g0.get_mpz_t(), g0.get_mpz_t(), x.get_mpz_t());
        if (g0 > 1)
            for (auto& x : c) x /= g0;
    };
    auto is_zero_vec = [](const std::vector<mpz_class>& c) {
        return c.size() == 1 && c[0] == 0;
    };
    std::vector<mpz_class> a = to_dense(f), b = to_dense(g);
    strip_content(a);
    strip_content(b);
    while (!is_zero_vec(b)) {
        // pseudo-remainder of a by b
        std::vector<mpz_class> r = a;
        const mpz_class& lb = b.back();
        while (!(r.size() == 1 && r[0] == 0) && r.size() >= b.size()) {
            mpz_class lr = r.back();
            size_t shift = r.size() - b.size();
            for (auto& x : r) x *= lb;
            for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= lr * b[i];
            while (r.size() > 1 && r.back() == 0) r.pop_back();
        }
        strip_content(r);
        a = std::move(b);
        b = std::move(r);
    }
    MPoly out(f.table());
    Expvec e(f.table()->size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        e[v] = static_cast<int>(i);
        out.add_term(e, Rational(mpq_class(a[i])));
    }
    return monicize(out);
}

inline bool uses_only_var(const MPoly& p, int v) {
    for (const auto& [e, r] : p.terms())
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0 && static_cast<int>(i) != v) return false;
    return true;
}

// Pseudo-remainder of f by g in variable v.
inline MPoly prem(MPoly f, const MPoly& g, int v) {
    int dg = 0;
    MPoly lg = leading_coeff_in(g, v, &dg);
    while (!f.is_zero()) {
        int df = 0;
        MPoly lf = leading_coeff_in(f, v, &df);
        if (df < dg) break;
        f = lg * f - shift_in_var(g, v, df - dg) * lf;
    }
    return f;
}

inline MPoly gcd_rec(MPoly f, MPoly g);

inline MPoly content_in(const MPoly& p, int v) {
    auto view = univariate_view(p, v);
    MPoly c = MPoly::zero(p.table());
    for (const auto& [d, q] : view) c = gcd_rec(c, q);
    return c;
}

// Normalize an associate: make the graded-lex leading coefficient 1.
inline MPoly monicize(MPoly p) {
    if (p.is_zero()) return p;
    p *= p.leading_coeff().inv();
    return p;
}

inline MPoly gcd_rec(MPoly f, MPoly g) {
    if (f.is_zero()) return monicize(g);
    if (g.is_zero()) return monicize(f);
    if (f.is_constant() || g.is_constant()) return MPoly::constant(f.table(), Rational(1));
    int v = std::max(highest_used_var(f), highest_used_var(g));
    if (v < 0) return MPoly::constant(f.table(), Rational(1));
    if (uses_only_var(f, v) && uses_only_var(g, v)) return univariate_gcd(f, g, v);
    if (f.deg_in(v) == 0 || g.deg_in(v) == 0) {
        // gcd must divide a polynomial of v-degree 0, so only the contents matter.
        MPoly cf = f.deg_in(v) == 0 ? f : content_in(f, v);
        MPoly cg = g.deg_in(v) == 0 ? g : content_in(g, v);
        return gcd_rec(cf, cg);
    }
    MPoly cf = content_in(f, v);
    MPoly cg = content_in(g, v);
    MPoly cont = gcd_rec(cf, cg);
    f = divexact(f, cf);
    g = divexact(g, cg);
    while (!g.is_zero()) {
        MPoly r = prem(f, g, v);
        f = g;
        if (r.is_zero()) {
            g = r;
        } else {
            g = divexact(r, content_in(r, v));
        }
    }
    return monicize(cont * divexact(f, content_in(f, v)));
}

}  // namespace detail

// gcd normalized to leading coefficient 1; gcd(0,0) = 0.
inline MPoly mpoly_gcd(const MPoly& f, const MPoly& g) { return detail::gcd_rec(f, g); }

inline MPoly mpoly_lcm(const MPoly& f, const MPoly& g) {
    if (f.is_zero() || g.is_zero()) return MPoly::zero(f.table());
    return divexact(f * g, mpoly_gcd(f, g));
}

}  // namespace verma
