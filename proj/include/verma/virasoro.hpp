#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "verma/graded.hpp"
#include "verma/json_io.hpp"
#include "verma/matrix.hpp"
#include "verma/partition.hpp"

namespace verma {

// ---- the abstract algebra --------------------------------------------------

// Finite linear combination of modes e_k plus the central element.
struct VirElement {
    std::map<int, Rational> modes;
    Rational central;

    static VirElement mode(int k, const Rational& r = Rational(1)) {
        VirElement v;
        if (!r.is_zero()) v.modes[k] = r;
        return v;
    }
    static VirElement center(const Rational& r = Rational(1)) {
        VirElement v;
        v.central = r;
        return v;
    }

    bool is_zero() const { return modes.empty() && central.is_zero(); }

    VirElement& operator+=(const VirElement& o) {
        for (const auto& [k, r] : o.modes) {
            auto it = modes.find(k);
            if (it == modes.end()) {
                modes[k] = r;
            } else {
                it->second += r;
                if (it->second.is_zero()) modes.erase(it);
            }
        }
        central += o.central;
        return *this;
    }
    friend VirElement operator+(VirElement a, const VirElement& b) { return a += b; }
    friend VirElement operator*(const Rational& s, const VirElement& v) {
        VirElement out;
        if (s.is_zero()) return out;
        for (const auto& [k, r] : v.modes) out.modes[k] = s * r;
        out.central = s * v.central;
        return out;
    }
    friend VirElement operator-(const VirElement& a, const VirElement& b) {
        return a + Rational(-1) * b;
    }
    friend bool operator==(const VirElement& a, const VirElement& b) {
        return a.modes == b.modes && a.central == b.central;
    }
};

// [e_j, e_k] = (j-k) e_{j+k} + (j^3-j)/12 c delta(j+k); the center is central.
inline VirElement vir_bracket(const VirElement& x, const VirElement& y) {
    VirElement out;
    for (const auto& [j, rj] : x.modes)
        for (const auto& [k, rk] : y.modes) {
            Rational s = rj * rk;
            out += s * Rational(j - k) * VirElement::mode(j + k);
            if (j + k == 0) {
                long jl = j;
                out += s * Rational(jl * jl * jl - jl, 12) * VirElement::center();
            }
        }
    return out;
}

// ---- the Verma module V_{h,c} ----------------------------------------------
//
// Basis convention: positive modes create, e_{-m} v = 0 for m > 0, e_0 has
// eigenvalue h + level.  This is the printed-basis convention; it is the
// k -> -k relabelling of the character convention, and the straightening
// bracket below is vir_bracket transported through that relabelling.

class VermaContext {
  public:
    static VermaContext symbolic() {
        VermaContext c;
        c.table_ = make_vars({Var{"h", 0}, Var{"c", 0}});
        c.h_ = RatFn::variable(c.table_, "h");
        c.c_ = RatFn::variable(c.table_, "c");
        return c;
    }
    static VermaContext at(const Rational& h, const Rational& c) {
        VermaContext ctx;
        ctx.table_ = make_vars({Var{"h", 0}, Var{"c", 0}});
        ctx.h_ = RatFn::constant(ctx.table_, h);
        ctx.c_ = RatFn::constant(ctx.table_, c);
        return ctx;
    }

    const VarTable& table() const { return table_; }
    const RatFn& h() const { return h_; }
    const RatFn& c() const { return c_; }
    RatFn scalar(const Rational& r) const { return RatFn::constant(table_, r); }

    using Combo = std::map<Partition, RatFn>;

    // Action of mode k on a PBW basis vector, fully straightened.
    const Combo& apply_mode_basis(int k, const Partition& p) const {
        auto key = std::make_pair(k, p);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        Combo out;
        if (k == 0) {
            out.emplace(p, h_ + scalar(Rational(partition_level(p))));
        } else if (p.empty()) {
            if (k > 0) out.emplace(Partition{k}, scalar(Rational(1)));
            // k < 0 annihilates the vacuum
        } else if (k >= p.front()) {
            Partition q;
            q.reserve(p.size() + 1);
            q.push_back(k);
            q.insert(q.end(), p.begin(), p.end());
            out.emplace(std::move(q), scalar(Rational(1)));
        } else {
            // A_k A_p1 X = A_p1 (A_k X) + [A_k, A_p1] X, with the module
            // bracket [A_j, A_k] obtained from vir_bracket via m -> -m.
            int p1 = p.front();
            Partition rest(p.begin() + 1, p.end());
            accumulate(out, scalar(Rational(1)), apply_mode(p1, apply_mode_basis(k, rest)));
            VirElement br = vir_bracket(VirElement::mode(-k), VirElement::mode(-p1));
            for (const auto& [m, r] : br.modes)
                accumulate(out, scalar(r), apply_mode_basis(-m, rest));
            if (!br.central.is_zero()) {
                auto jt = out.find(rest);
                RatFn add = scalar(br.central) * c_;
                if (jt == out.end()) {
                    if (!add.is_zero()) out.emplace(rest, add);
                } else {
                    jt->second += add;
                    if (jt->second.is_zero()) out.erase(jt);
                }
            }
        }
        return memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    Combo apply_mode(int k, const Combo& v) const {
        Combo out;
        for (const auto& [p, r] : v) accumulate(out, r, apply_mode_basis(k, p));
        return out;
    }

  private:
    static void accumulate(Combo& into, const RatFn& s, const Combo& from) {
        if (s.is_zero()) return;
        for (const auto& [p, r] : from) {
            auto it = into.find(p);
            if (it == into.end()) {
                RatFn v = s * r;
                if (!v.is_zero()) into.emplace(p, std::move(v));
            } else {
                it->second += s * r;
                if (it->second.is_zero()) into.erase(it);
            }
        }
    }

    VarTable table_;
    RatFn h_ = RatFn(make_vars({Var{"h", 0}, Var{"c", 0}}));
    RatFn c_ = h_;
    mutable std::map<std::pair<int, Partition>, Combo> memo_;
};

// Element of one graded component, coordinates indexed by level partitions.
struct PBWVector {
    int level = 0;
    VermaContext::Combo coords;

    bool is_zero() const { return coords.empty(); }
};

inline PBWVector verma_apply(int k, const PBWVector& v, const VermaContext& ctx) {
    PBWVector out;
    out.level = v.level + k;
    out.coords = ctx.apply_mode(k, v.coords);
    if (out.level < 0 && !out.coords.empty())
        throw std::logic_error("annihilation left coordinates below the vacuum");
    return out;
}

// <e_lambda v, e_mu v> by straightening: strip lambda's creators as
// annihilators against mu and read the vacuum coefficient.
inline RatFn shapovalov_entry(const Partition& lambda, const Partition& mu,
                              const VermaContext& ctx) {
    VermaContext::Combo v;
    v.emplace(mu, ctx.scalar(Rational(1)));
    for (int part : lambda) v = ctx.apply_mode(-part, v);
    auto it = v.find(Partition{});
    return it == v.end() ? RatFn::zero(ctx.table()) : it->second;
}

// Level-n Gram matrix of the invariant Hermitian form, basis = partitions of n
// in descending lexicographic order.
inline ExactMatrix gram_level(int n, const VermaContext& ctx) {
    auto parts = partitions_of(n);
    ExactMatrix g(parts.size(), parts.size(), ctx.table());
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = i; j < parts.size(); ++j) {
            RatFn e = shapovalov_entry(parts[i], parts[j], ctx);
            g.at(i, j) = e;
            if (i != j) g.at(j, i) = e;
        }
    return g;
}

// Matrix of mode k from level n to level n+k (PBW bases on both sides).
inline ExactMatrix verma_mode_matrix(int k, int n, const VermaContext& ctx) {
    auto src = partitions_of(n);
    auto dst = partitions_of(n + k);
    std::map<Partition, size_t> index;
    for (size_t i = 0; i < dst.size(); ++i) index[dst[i]] = i;
    ExactMatrix m(dst.size(), src.size(), ctx.table());
    for (size_t j = 0; j < src.size(); ++j)
        for (const auto& [p, r] : ctx.apply_mode_basis(k, src[j])) m.at(index.at(p), j) = r;
    return m;
}

inline GradedMap verma_mode_map(int k, int max_level, const VermaContext& ctx) {
    GradedMap m;
    m.shift = k;
    for (int n = 0; n <= max_level; ++n) {
        if (n + k > max_level) continue;
        if (n + k < 0) {
            m.comps.emplace(n, ExactMatrix(0, partitions_of(n).size(), ctx.table()));
            continue;
        }
        m.comps.emplace(n, verma_mode_matrix(k, n, ctx));
    }
    return m;
}

// ---- Kac determinant -------------------------------------------------------

enum class KacVariant { AsPrinted, Corrected };

// The determinant factor Phi_{alpha,beta}(h,c).  The as-printed variant keeps
// the (a^2-b^2)/16 cross-term and the (c-13)/24 diagonal; the corrected one
// squares the cross-term and restores the (alpha beta - 1)/2 shift on the
// diagonal, giving h + (c-1)/24 (alpha^2-1).  kac_det_compare arbitrates.
inline RatFn kac_phi(int alpha, int beta, KacVariant variant, const VermaContext& ctx) {
    if (alpha < 1 || beta < 1) throw std::invalid_argument("kac_phi needs alpha, beta >= 1");
    const RatFn& h = ctx.h();
    const RatFn& c = ctx.c();
    auto q = [&](long n, long d) { return ctx.scalar(Rational(n, d)); };
    long a = alpha, b = beta;
    if (alpha == beta) {
        RatFn shift = variant == KacVariant::Corrected ? q(a * a - 1, 2) : ctx.scalar(Rational(0));
        return h + (c - q(13, 1)) * q(a * a - 1, 24) + shift;
    }
    RatFn fa = h + (c - q(13, 1)) * q(b * b - 1, 24) + q(a * b - 1, 2);
    RatFn fb = h + (c - q(13, 1)) * q(a * a - 1, 24) + q(a * b - 1, 2);
    RatFn cross = variant == KacVariant::Corrected ? q((a * a - b * b) * (a * a - b * b), 16)
                                                   : q(a * a - b * b, 16);
    return fa * fb + cross;
}

struct KacCompare {
    int level = 0;
    KacVariant variant = KacVariant::Corrected;
    bool matches = false;
    std::optional<Rational> constant;  // A_n when matches
    RatFn det;
    RatFn phi_product;
    RatFn quotient;  // mismatch witness when not constant

    explicit KacCompare(const VarTable& t) : det(t), phi_product(t), quotient(t) {}
};

// det Gram_n against A * prod_{0<a<=b, ab<=n} Phi_{a,b}^{p(n-ab)}.
inline KacCompare kac_det_compare(int n, KacVariant variant, const VermaContext& ctx) {
    KacCompare out(ctx.table());
    out.level = n;
    out.variant = variant;
    out.det = bareiss_det(gram_level(n, ctx));
    RatFn prod = ctx.scalar(Rational(1));
    for (int a = 1; a * a <= n; ++a)
        for (int b = a; a * b <= n; ++b) {
            int e = partition_count(n - a * b);
            RatFn phi = kac_phi(a, b, variant, ctx);
            for (int k = 0; k < e; ++k) prod *= phi;
        }
    out.phi_product = prod;
    out.quotient = out.det / prod;
    out.matches = out.quotient.is_constant() && !out.quotient.is_zero();
    if (out.matches) out.constant = out.quotient.constant_value();
    return out;
}

// ---- degeneracy, unitarity, parametrizations --------------------------------

// Kernel of the level-n Gram at a rational point.  The primitive sub-basis
// collects the combinations annihilated by the lowering modes e_{-1}, e_{-2};
// at a first degeneracy it is the whole kernel, at deeper points the kernel
// also contains descendants of lower singular vectors.
struct SingularVectors {
    std::vector<PBWVector> kernel;
    std::vector<PBWVector> primitive;
};

inline SingularVectors singular_vectors(const Rational& h, const Rational& c, int n) {
    VermaContext ctx = VermaContext::at(h, c);
    auto parts = partitions_of(n);
    SingularVectors out;
    auto basis = kernel_basis(gram_level(n, ctx));
    for (const auto& vec : basis) {
        PBWVector v;
        v.level = n;
        for (size_t i = 0; i < parts.size(); ++i)
            if (!vec[i].is_zero()) v.coords.emplace(parts[i], vec[i]);
        out.kernel.push_back(std::move(v));
    }
    if (out.kernel.empty()) return out;

    // solve for kernel combinations killed by both lowering generators
    std::vector<Partition> low1 = partitions_of(n - 1), low2 = partitions_of(n - 2);
    size_t rows = low1.size() + low2.size();
    ExactMatrix cond(rows, out.kernel.size(), ctx.table());
    for (size_t j = 0; j < out.kernel.size(); ++j) {
        PBWVector d1 = verma_apply(-1, out.kernel[j], ctx);
        PBWVector d2 = n >= 2 ? verma_apply(-2, out.kernel[j], ctx) : PBWVector{};
        for (size_t i = 0; i < low1.size(); ++i) {
            auto it = d1.coords.find(low1[i]);
            if (it != d1.coords.end()) cond.at(i, j) = it->second;
        }
        for (size_t i = 0; i < low2.size(); ++i) {
            auto it = d2.coords.find(low2[i]);
            if (it != d2.coords.end()) cond.at(low1.size() + i, j) = it->second;
        }
    }
    for (const auto& combo : kernel_basis(cond)) {
        PBWVector v;
        v.level = n;
        VermaContext::Combo acc;
        for (size_t j = 0; j < out.kernel.size(); ++j) {
            if (combo[j].is_zero()) continue;
            for (const auto& [p, r] : out.kernel[j].coords) {
                auto it = acc.find(p);
                if (it == acc.end())
                    acc.emplace(p, combo[j] * r);
                else
                    it->second += combo[j] * r;
            }
        }
        for (auto it = acc.begin(); it != acc.end();)
            it = it->second.is_zero() ? acc.erase(it) : std::next(it);
        v.coords = std::move(acc);
        for (int m : {1, 2})
            if (!verma_apply(-m, v, ctx).is_zero())
                throw std::logic_error("primitive vector not annihilated by e_-" +
                                       std::to_string(m));
        out.primitive.push_back(std::move(v));
    }
    return out;
}

enum class UnitarityVerdict { PositiveDefinite, PositiveSemidefinite, Indefinite };

struct UnitarityScan {
    Rational h, c;
    std::vector<Inertia> levels;  // index = level
    UnitarityVerdict verdict = UnitarityVerdict::PositiveDefinite;
};

inline UnitarityScan unitarity_scan(const Rational& h, const Rational& c, int max_level) {
    VermaContext ctx = VermaContext::at(h, c);
    UnitarityScan scan;
    scan.h = h;
    scan.c = c;
    bool zero_seen = false, neg_seen = false;
    for (int n = 0; n <= max_level; ++n) {
        ExactMatrix g = gram_level(n, ctx);
        std::vector<std::vector<Rational>> rows(g.rows(), std::vector<Rational>(g.cols()));
        for (size_t i = 0; i < g.rows(); ++i)
            for (size_t j = 0; j < g.cols(); ++j) rows[i][j] = g.at(i, j).constant_value();
        Inertia sig = ldlt_signature(rows);
        zero_seen = zero_seen || sig.n_zero > 0;
        neg_seen = neg_seen || sig.n_neg > 0;
        scan.levels.push_back(sig);
    }
    scan.verdict = neg_seen ? UnitarityVerdict::Indefinite
                            : (zero_seen ? UnitarityVerdict::PositiveSemidefinite
                                         : UnitarityVerdict::PositiveDefinite);
    return scan;
}

struct DegeneracyRecord {
    // vanishing pairs of the corrected factor, alpha >= beta
    std::vector<std::pair<int, int>> vanishing;
    enum class Kind { None, One, TwoOrMore } kind = Kind::None;
    std::string submodule;  // for the single-pair case with alpha*beta > 0
    struct Family {
        std::pair<int, int> first, second;
        int sign = +1;  // coherent sign in (a1 +/- a2), (b1 +/- b2)
        Rational c12, h12;
    };
    std::vector<Family> families;  // reconstructed two-pair parameters
};

inline DegeneracyRecord degeneracy_classify(const Rational& h, const Rational& c,
                                            int search_bound) {
    if (search_bound < 1) throw std::invalid_argument("searchBound must be >= 1");
    VermaContext ctx = VermaContext::symbolic();
    DegeneracyRecord rec;
    std::vector<Rational> pt = {h, c};
    for (int b = 1; b <= search_bound; ++b)
        for (int a = b; a <= search_bound; ++a)
            if (kac_phi(a, b, KacVariant::Corrected, ctx).eval(pt).is_zero())
                rec.vanishing.emplace_back(a, b);
    if (rec.vanishing.empty()) {
        rec.kind = DegeneracyRecord::Kind::None;
        return rec;
    }
    if (rec.vanishing.size() == 1) {
        rec.kind = DegeneracyRecord::Kind::One;
        auto [a, b] = rec.vanishing[0];
        // with positive indices only the paper's case alpha*beta > 0 occurs
        rec.submodule = "V_{h+" + std::to_string(a * b) + ",c}";
        return rec;
    }
    rec.kind = DegeneracyRecord::Kind::TwoOrMore;
    for (size_t i = 0; i < rec.vanishing.size(); ++i)
        for (size_t j = i + 1; j < rec.vanishing.size(); ++j)
            for (int sign : {+1, -1}) {
                auto [a1, b1] = rec.vanishing[i];
                auto [a2, b2] = rec.vanishing[j];
                long p = a1 + sign * a2;
                long q = b1 + sign * b2;
                if (p == 0 || q == 0) continue;
                Rational pq(p * q);
                Rational diff2((p - q) * (p - q));
                Rational c12 = Rational(1) - Rational(6) * diff2 / pq;
                long w = static_cast<long>(a2) * b1 - static_cast<long>(a1) * b2;
                Rational h12 = (Rational(w * w) - diff2) / (Rational(4) * pq);
                if (c12 == c && h12 == h)
                    rec.families.push_back({rec.vanishing[i], rec.vanishing[j], sign, c12, h12});
            }
    return rec;
}

// Discrete-series point: c = 1 - 6/(p(p+1)),
// h = ((alpha p - beta (p+1))^2 - 1)/(4 p (p+1)); ranges as printed.
inline std::pair<Rational, Rational> discrete_series_point(int p, int alpha, int beta) {
    if (p < 2) throw std::invalid_argument("discrete series needs p >= 2");
    if (alpha < 1 || alpha > p) throw std::invalid_argument("discrete series needs 1 <= alpha <= p");
    if (beta < 1 || beta > p - 1)
        throw std::invalid_argument("discrete series needs 1 <= beta <= p-1");
    long pl = p;
    Rational c = Rational(1) - Rational(6) / Rational(pl * (pl + 1));
    long m = static_cast<long>(alpha) * p - static_cast<long>(beta) * (p + 1);
    Rational h = Rational(m * m - 1) / (Rational(4) * Rational(pl * (pl + 1)));
    // a corrected factor with index product <= alpha*beta vanishes here
    VermaContext ctx = VermaContext::symbolic();
    bool found = false;
    for (int a = 1; a <= alpha * beta && !found; ++a)
        for (int b = 1; a * b <= alpha * beta && !found; ++b)
            found = kac_phi(std::max(a, b), std::min(a, b), KacVariant::Corrected, ctx)
                        .eval({h, c})
                        .is_zero();
    if (!found) throw std::logic_error("discrete series point missed the degeneracy locus");
    return {h, c};
}

// a = h - c/12, b = c/12  <->  h = a + b, c = 12 b.
inline std::pair<Rational, Rational> param_ab_to_hc(const Rational& a, const Rational& b) {
    return {a + b, Rational(12) * b};
}
inline std::pair<Rational, Rational> param_hc_to_ab(const Rational& h, const Rational& c) {
    return {h - c / Rational(12), c / Rational(12)};
}

}  // namespace verma
