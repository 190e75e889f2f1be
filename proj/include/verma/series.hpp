#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "verma/mpoly.hpp"

namespace verma {

// Truncated Laurent series in one formal variable with MPoly coefficients.
// Coefficients are known exactly for exponents in [lo, order]; exponents
// beyond `order` are unknown (never implicitly zero), exponents below `lo`
// are exactly zero.  Arithmetic propagates the weakest valid order.
class TruncSeries {
  public:
    TruncSeries(VarTable t, int lo, int order)
        : table_(std::move(t)), lo_(lo), order_(order) {
        if (order_ < lo_ - 1) throw std::invalid_argument("series order below lowest exponent");
        cs_.assign(static_cast<size_t>(order_ - lo_ + 1), MPoly::zero(table_));
    }

    static TruncSeries zero(const VarTable& t, int order) { return TruncSeries(t, 0, order); }
    static TruncSeries constant(const VarTable& t, const Rational& r, int order) {
        TruncSeries s(t, 0, order);
        s.set_coeff(0, MPoly::constant(t, r));
        return s;
    }
    // z^k as a series known through `order`.
    static TruncSeries monomial(const VarTable& t, int k, int order) {
        TruncSeries s(t, std::min(k, 0), order);
        s.set_coeff(k, MPoly::constant(t, Rational(1)));
        return s;
    }

    const VarTable& table() const { return table_; }
    int lowest() const { return lo_; }
    int order() const { return order_; }

    // Exact coefficient; below `lo` it is zero, beyond `order` it is unknown.
    MPoly coeff(int e) const {
        if (e > order_) throw std::out_of_range("coefficient beyond truncation order");
        if (e < lo_) return MPoly::zero(table_);
        return cs_[static_cast<size_t>(e - lo_)];
    }

    void set_coeff(int e, MPoly p) {
        if (e > order_) throw std::out_of_range("coefficient beyond truncation order");
        if (e < lo_) {
            if (p.is_zero()) return;
            // grow downward
            std::vector<MPoly> grown(static_cast<size_t>(order_ - e + 1), MPoly::zero(table_));
            for (int k = lo_; k <= order_; ++k) grown[k - e] = cs_[k - lo_];
            cs_ = std::move(grown);
            lo_ = e;
        }
        cs_[static_cast<size_t>(e - lo_)] = std::move(p);
    }

    // Smallest exponent with a nonzero known coefficient; order+1 when the
    // series is zero through its order.
    int valuation() const {
        for (int e = lo_; e <= order_; ++e)
            if (!cs_[e - lo_].is_zero()) return e;
        return order_ + 1;
    }

    bool known_zero() const { return valuation() > order_; }

    TruncSeries truncated(int new_order) const {
        if (new_order > order_) throw std::out_of_range("cannot extend truncation order");
        TruncSeries s(table_, lo_, new_order);
        for (int e = lo_; e <= new_order; ++e) s.cs_[e - lo_] = cs_[e - lo_];
        return s;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        int order = std::min(a.order_, b.order_);
        TruncSeries s(a.table_, std::min(a.lo_, b.lo_), order);
        for (int e = s.lo_; e <= order; ++e) s.cs_[e - s.lo_] = a.coeff(e) + b.coeff(e);
        return s;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        int order = std::min(a.order_, b.order_);
        TruncSeries s(a.table_, std::min(a.lo_, b.lo_), order);
        for (int e = s.lo_; e <= order; ++e) s.cs_[e - s.lo_] = a.coeff(e) - b.coeff(e);
        return s;
    }
    TruncSeries operator-() const {
        TruncSeries s(table_, lo_, order_);
        for (int e = lo_; e <= order_; ++e) s.cs_[e - lo_] = -cs_[e - lo_];
        return s;
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        // product coefficient at e is determined iff every contributing pair is
        int order = std::min(a.order_ + b.lo_, b.order_ + a.lo_);
        TruncSeries s(a.table_, a.lo_ + b.lo_, order);
        for (int ea = a.lo_; ea <= a.order_; ++ea) {
            if (a.cs_[ea - a.lo_].is_zero()) continue;
            for (int eb = b.lo_; eb <= b.order_; ++eb) {
                int e = ea + eb;
                if (e > order) continue;
                if (b.cs_[eb - b.lo_].is_zero()) continue;
                s.cs_[e - s.lo_] += a.cs_[ea - a.lo_] * b.cs_[eb - b.lo_];
            }
        }
        return s;
    }

    friend TruncSeries operator*(const MPoly& p, const TruncSeries& a) {
        TruncSeries s(a.table_, a.lo_, a.order_);
        for (int e = a.lo_; e <= a.order_; ++e) s.cs_[e - a.lo_] = p * a.cs_[e - a.lo_];
        return s;
    }
    friend TruncSeries operator*(const Rational& r, const TruncSeries& a) {
        TruncSeries s(a.table_, a.lo_, a.order_);
        for (int e = a.lo_; e <= a.order_; ++e) s.cs_[e - a.lo_] = a.cs_[e - a.lo_] * r;
        return s;
    }

    // Multiply by z^k.
    TruncSeries shifted(int k) const {
        TruncSeries s(table_, lo_ + k, order_ + k);
        s.cs_ = cs_;
        return s;
    }

    TruncSeries deriv() const {
        TruncSeries s(table_, lo_ - 1, order_ - 1);
        for (int e = lo_; e <= order_; ++e)
            s.cs_[e - 1 - s.lo_] = cs_[e - lo_] * Rational(e);
        return s;
    }

    bool agrees_with(const TruncSeries& o) const {
        int order = std::min(order_, o.order_);
        for (int e = std::min(lo_, o.lo_); e <= order; ++e)
            if (coeff(e) != o.coeff(e)) return false;
        return true;
    }

  private:
    VarTable table_;
    int lo_;
    int order_;
    std::vector<MPoly> cs_;
};

// Multiplicative inverse. The lowest-order coefficient must be a nonzero
// rational constant (a unit).
inline TruncSeries series_invert(const TruncSeries& s) {
    int v = s.valuation();
    if (v > s.order()) throw std::domain_error("cannot invert a series with no known nonzero term");
    MPoly lead = s.coeff(v);
    if (!lead.is_constant())
        throw std::domain_error("series leading coefficient is not a unit");
    Rational a0 = lead.constant_value();

    // s = a0 z^v (1 + u), u of positive valuation known through rel = order - v
    int rel = s.order() - v;
    const VarTable& t = s.table();
    TruncSeries u(t, 1, rel);
    for (int e = 1; e <= rel; ++e) u.set_coeff(e, s.coeff(e + v) * a0.inv());

    TruncSeries geom = TruncSeries::constant(t, Rational(1), rel);
    TruncSeries upow = TruncSeries::constant(t, Rational(1), rel);
    for (int k = 1; k <= rel; ++k) {
        upow = upow * u;
        geom = geom + (k % 2 == 0 ? upow : -upow);
    }

    // result = a0^-1 z^-v * geom, known through -v + rel = order - 2v
    TruncSeries out = (a0.inv() * geom).shifted(-v);
    return out;
}

// Composition f(g(z)).  g must have positive valuation (no constant term).
inline TruncSeries series_compose(const TruncSeries& f, const TruncSeries& g) {
    for (int e = g.lowest(); e <= std::min(0, g.order()); ++e)
        if (!g.coeff(e).is_zero())
            throw std::domain_error("composition with a series of non-positive valuation");
    if (g.order() < 1) throw std::domain_error("inner series order too small for composition");
    int vg = g.valuation();
    if (vg < 1) throw std::domain_error("composition with a series of non-positive valuation");
    const VarTable& t = f.table();

    // f's unknown tail starts at order+1 and contributes from exponent (order+1)*vg
    bool g_known_zero = vg > g.order();
    int out_order = g_known_zero ? std::max(f.order(), 0) : (f.order() + 1) * vg - 1;

    TruncSeries acc(t, 0, out_order);
    bool acc_started = false;
    auto add = [&](const TruncSeries& part) {
        acc = acc_started ? acc + part : part;
        acc_started = true;
    };

    // nonnegative powers
    TruncSeries gpow = TruncSeries::constant(t, Rational(1), out_order);
    for (int k = 0; k <= f.order(); ++k) {
        if (k >= f.lowest() && !f.coeff(k).is_zero()) add(f.coeff(k) * gpow);
        if (k < f.order()) {
            gpow = gpow * g;
            if (gpow.order() > out_order) gpow = gpow.truncated(out_order);
        }
        if (gpow.known_zero() && k >= f.lowest()) break;
    }
    // negative powers via 1/g
    if (f.lowest() < 0) {
        TruncSeries ginv = series_invert(g);
        TruncSeries gp = ginv;
        for (int k = -1; k >= f.lowest(); --k) {
            if (k <= f.order() && !f.coeff(k).is_zero()) add(f.coeff(k) * gp);
            if (k > f.lowest()) gp = gp * ginv;
        }
    }
    if (!acc_started) return TruncSeries::zero(t, out_order);
    if (acc.order() > out_order) acc = acc.truncated(out_order);
    return acc;
}

}  // namespace verma
