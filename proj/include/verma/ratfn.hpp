#pragma once

#include <stdexcept>
#include <string>

#include "verma/mpoly.hpp"

namespace verma {

// Rational function num/den in canonical form: gcd(num, den) = 1 and the
// graded-lex leading coefficient of den is 1.  Equality is plain structural
// equality of the canonical form.
class RatFn {
  public:
    explicit RatFn(VarTable t)
        : num_(MPoly::zero(t)), den_(MPoly::constant(t, Rational(1))) {}
    RatFn(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    explicit RatFn(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.table(), Rational(1))) {}

    static RatFn zero(const VarTable& t) { return RatFn(t); }
    static RatFn constant(const VarTable& t, const Rational& r) {
        return RatFn(MPoly::constant(t, r));
    }
    static RatFn variable(const VarTable& t, const std::string& name) {
        return RatFn(MPoly::variable(t, name));
    }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const VarTable& table() const { return num_.table(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const {
        if (!is_constant()) throw std::domain_error("rational function is not constant");
        return num_.constant_value() / den_.constant_value();
    }
    MPoly polynomial_value() const {
        if (!is_polynomial()) throw std::domain_error("rational function is not polynomial");
        return num_ * den_.constant_value().inv();
    }

    RatFn operator-() const {
        RatFn r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

    RatFn inv() const {
        if (is_zero()) throw std::domain_error("division by zero rational function");
        return RatFn(den_, num_);
    }

    // a/b == c/d iff ad == cb; with canonical forms this is structural.
    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    Rational eval(const std::vector<Rational>& vals) const {
        Rational d = den_.eval(vals);
        if (d.is_zero()) throw std::domain_error("rational function pole at evaluation point");
        return num_.eval(vals) / d;
    }

    RatFn mapped(const VarTable& target) const {
        return RatFn(num_.mapped(target), den_.mapped(target));
    }

    std::string str() const {
        if (is_polynomial()) return polynomial_value().str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("division by zero polynomial");
        if (num_.is_zero()) {
            den_ = MPoly::constant(num_.table(), Rational(1));
            return;
        }
        if (!den_.is_constant() && !num_.is_constant()) {
            MPoly g = mpoly_gcd(num_, den_);
            if (!g.is_constant() || !g.leading_coeff().is_one()) {
                num_ = divexact(num_, g);
                den_ = divexact(den_, g);
            }
        }
        Rational lc = den_.leading_coeff();
        if (!lc.is_one()) {
            Rational s = lc.inv();
            num_ *= s;
            den_ *= s;
        }
    }

    MPoly num_;
    MPoly den_;
};

// Spec-facing constructor name: gcd-reduced, leading-coefficient-normalized.
inline RatFn ratfn_normalize(const MPoly& num, const MPoly& den) { return RatFn(num, den); }

}  // namespace verma
