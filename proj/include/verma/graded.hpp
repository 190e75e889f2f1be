#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "verma/matrix.hpp"

namespace verma {

// Dimension profile of a Z-graded space truncated at some top level.
// Negative levels are the zero space; levels above the truncation are
// unrepresented (unknown), signalled by -1.
struct Grading {
    std::function<int(int)> dim_fn;
    int max_level = 0;

    int dim(int level) const {
        if (level < 0) return 0;
        if (level > max_level) return -1;
        return dim_fn(level);
    }
    bool defined(int level) const { return level <= max_level; }
};

// Degree-homogeneous linear map: one exact matrix per source degree.
// A missing component means "not determined at this truncation", never zero.
struct GradedMap {
    int shift = 0;
    std::map<int, ExactMatrix> comps;

    bool has(int level) const { return comps.count(level) > 0; }
    const ExactMatrix& at(int level) const { return comps.at(level); }

    std::pair<int, int> source_range() const {
        if (comps.empty()) return {0, -1};
        return {comps.begin()->first, comps.rbegin()->first};
    }
};

// Builds a map from an action on single source levels.
inline GradedMap build_graded(const Grading& g, int shift, const VarTable& t,
                              const std::function<void(int, ExactMatrix&)>& fill) {
    GradedMap m;
    m.shift = shift;
    for (int d = 0; d <= g.max_level; ++d) {
        int sd = g.dim(d);
        int td = g.dim(d + shift);
        if (sd < 0 || td < 0) continue;
        ExactMatrix comp(static_cast<size_t>(td), static_cast<size_t>(sd), t);
        fill(d, comp);
        m.comps.emplace(d, std::move(comp));
    }
    return m;
}

inline GradedMap graded_identity(const Grading& g, const VarTable& t) {
    return build_graded(g, 0, t, [&](int, ExactMatrix& comp) {
        for (size_t i = 0; i < comp.rows(); ++i) comp.at(i, i) = RatFn::constant(t, Rational(1));
    });
}

inline GradedMap graded_compose(const Grading& g, const GradedMap& a, const GradedMap& b,
                                const VarTable& t) {
    GradedMap m;
    m.shift = a.shift + b.shift;
    for (const auto& [d, mb] : b.comps) {
        int mid = d + b.shift;
        int target = mid + a.shift;
        int td = g.dim(target);
        if (td < 0) continue;
        if (mid < 0) {
            // factoring through the zero space: the composite is zero
            m.comps.emplace(d, ExactMatrix(static_cast<size_t>(td), mb.cols(), t));
            continue;
        }
        if (!a.has(mid)) continue;
        m.comps.emplace(d, a.at(mid) * mb);
    }
    return m;
}

inline GradedMap graded_add(const GradedMap& a, const GradedMap& b, int sign = 1) {
    if (a.shift != b.shift) throw std::invalid_argument("graded map shift mismatch in sum");
    GradedMap m;
    m.shift = a.shift;
    for (const auto& [d, ma] : a.comps) {
        if (!b.has(d)) continue;
        m.comps.emplace(d, sign > 0 ? ma + b.at(d) : ma - b.at(d));
    }
    return m;
}

inline GradedMap graded_sub(const GradedMap& a, const GradedMap& b) { return graded_add(a, b, -1); }

inline GradedMap graded_scale(const RatFn& s, const GradedMap& a) {
    GradedMap m;
    m.shift = a.shift;
    for (const auto& [d, ma] : a.comps) m.comps.emplace(d, s * ma);
    return m;
}

inline GradedMap graded_commutator(const Grading& g, const GradedMap& a, const GradedMap& b,
                                   const VarTable& t) {
    return graded_sub(graded_compose(g, a, b, t), graded_compose(g, b, a, t));
}

struct Violation {
    int level = 0;
    size_t row = 0, col = 0;
    std::string value;
};

// Zero test over all determined components, with a witness on failure.
inline std::optional<Violation> graded_first_nonzero(const GradedMap& a) {
    for (const auto& [d, m] : a.comps) {
        if (auto nz = m.first_nonzero()) {
            auto [i, j, v] = *nz;
            return Violation{d, i, j, v.str()};
        }
    }
    return std::nullopt;
}

inline bool graded_equal_on_overlap(const GradedMap& a, const GradedMap& b) {
    if (a.shift != b.shift) return false;
    for (const auto& [d, ma] : a.comps) {
        if (!b.has(d)) continue;
        if (!(ma == b.at(d))) return false;
    }
    return true;
}

}  // namespace verma
