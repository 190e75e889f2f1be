#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "verma/ratfn.hpp"

namespace verma {

// Dense matrix over the rational-function field.  Zero-row / zero-column
// shapes are legal and stand for maps into or out of the zero space.
class ExactMatrix {
  public:
    ExactMatrix(size_t rows, size_t cols, const VarTable& t)
        : rows_(rows), cols_(cols), table_(t), e_(rows * cols, RatFn::zero(t)) {}

    static ExactMatrix identity(size_t n, const VarTable& t) {
        ExactMatrix m(n, n, t);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = RatFn::constant(t, Rational(1));
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const VarTable& table() const { return table_; }

    RatFn& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const RatFn& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    std::optional<std::tuple<size_t, size_t, RatFn>> first_nonzero() const {
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) return std::make_tuple(i, j, at(i, j));
        return std::nullopt;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        a.check_shape(b);
        ExactMatrix m = a;
        for (size_t k = 0; k < m.e_.size(); ++k) m.e_[k] += b.e_[k];
        return m;
    }
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
        a.check_shape(b);
        ExactMatrix m = a;
        for (size_t k = 0; k < m.e_.size(); ++k) m.e_[k] -= b.e_[k];
        return m;
    }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        ExactMatrix m(a.rows_, b.cols_, a.table_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    m.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return m;
    }
    friend ExactMatrix operator*(const RatFn& s, const ExactMatrix& a) {
        ExactMatrix m = a;
        for (auto& x : m.e_) x *= s;
        return m;
    }
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        return a.e_ == b.e_;
    }

    ExactMatrix transpose() const {
        ExactMatrix m(cols_, rows_, table_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    ExactMatrix mapped_entries(const VarTable& target) const {
        ExactMatrix m(rows_, cols_, target);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).mapped(target);
        return m;
    }

    std::vector<Rational> eval(const std::vector<Rational>& vals) const {
        std::vector<Rational> out;
        out.reserve(e_.size());
        for (const auto& x : e_) out.push_back(x.eval(vals));
        return out;
    }

  private:
    void check_shape(const ExactMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    size_t rows_, cols_;
    VarTable table_;
    std::vector<RatFn> e_;
};

// Fraction-free determinant: clears each row's denominators, runs Bareiss
// elimination over polynomials, divides the accumulated row factors back out.
inline RatFn bareiss_det(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const size_t n = m.rows();
    const VarTable& t = m.table();
    if (n == 0) return RatFn::constant(t, Rational(1));

    std::vector<std::vector<MPoly>> a(n, std::vector<MPoly>(n, MPoly::zero(t)));
    MPoly denom = MPoly::constant(t, Rational(1));
    for (size_t i = 0; i < n; ++i) {
        MPoly rowden = MPoly::constant(t, Rational(1));
        for (size_t j = 0; j < n; ++j) rowden = mpoly_lcm(rowden, m.at(i, j).den());
        for (size_t j = 0; j < n; ++j)
            a[i][j] = m.at(i, j).num() * divexact(rowden, m.at(i, j).den());
        denom *= rowden;
    }

    int sign = 1;
    MPoly prev = MPoly::constant(t, Rational(1));
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return RatFn::zero(t);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = divexact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    MPoly det = a[n - 1][n - 1];
    if (sign < 0) det = -det;
    return RatFn(det, denom);
}

// Basis of the right null space, each vector scaled so its first nonzero
// coordinate is 1.  Empty iff the matrix has full column rank.
inline std::vector<std::vector<RatFn>> kernel_basis(const ExactMatrix& m) {
    const size_t rows = m.rows(), cols = m.cols();
    const VarTable& t = m.table();
    std::vector<std::vector<RatFn>> a(rows, std::vector<RatFn>(cols, RatFn::zero(t)));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);

    std::vector<int> pivot_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        RatFn inv = a[r][c].inv();
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            RatFn f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_of_col[c] = static_cast<int>(r);
        ++r;
    }

    std::vector<std::vector<RatFn>> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<RatFn> v(cols, RatFn::zero(t));
        v[c] = RatFn::constant(t, Rational(1));
        for (size_t j = 0; j < cols; ++j)
            if (pivot_of_col[j] >= 0) v[j] = -a[pivot_of_col[j]][c];
        // scale so the first nonzero coordinate is 1
        for (size_t j = 0; j < cols; ++j) {
            if (!v[j].is_zero()) {
                RatFn s = v[j].inv();
                for (auto& x : v) x *= s;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline size_t matrix_rank(const ExactMatrix& m) {
    return m.cols() - kernel_basis(m).size();
}

struct Inertia {
    int n_pos = 0;
    int n_neg = 0;
    int n_zero = 0;
};

// Exact inertia of a symmetric rational matrix via congruence elimination.
inline Inertia ldlt_signature(const std::vector<std::vector<Rational>>& sym) {
    const size_t n = sym.size();
    for (const auto& row : sym)
        if (row.size() != n) throw std::invalid_argument("inertia of non-square matrix");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (sym[i][j] != sym[j][i]) throw std::invalid_argument("inertia of non-symmetric matrix");

    auto a = sym;
    Inertia sig;
    for (size_t k = 0; k < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && a[p][p].is_zero()) ++p;
            if (p < n) {
                std::swap(a[k], a[p]);
                for (size_t i = 0; i < n; ++i) std::swap(a[i][k], a[i][p]);
            } else {
                // all active diagonal entries vanish; look for an off-diagonal one
                size_t q = k + 1;
                while (q < n && a[k][q].is_zero()) ++q;
                if (q == n) {
                    bool zero_row = true;
                    for (size_t j = k; j < n && zero_row; ++j) zero_row = a[k][j].is_zero();
                    if (zero_row) {
                        sig.n_zero++;
                        continue;
                    }
                    // a[k][q] == 0 for all q >= k contradicts non-zero row
                    throw std::logic_error("inertia pivot search failed");
                }
                // congruence: row/col k += row/col q makes a[k][k] = 2 a[k][q] != 0
                for (size_t j = 0; j < n; ++j) a[k][j] += a[q][j];
                for (size_t i = 0; i < n; ++i) a[i][k] += a[i][q];
            }
        }
        if (a[k][k].is_zero()) {
            sig.n_zero++;
            continue;
        }
        if (a[k][k].sign() > 0)
            sig.n_pos++;
        else
            sig.n_neg++;
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k].is_zero()) continue;
            Rational f = a[i][k] / a[k][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
        for (size_t j = k + 1; j < n; ++j) {
            if (a[k][j].is_zero()) continue;
            Rational f = a[k][j] / a[k][k];
            for (size_t i = k; i < n; ++i) a[i][j] -= f * a[i][k];
        }
    }
    return sig;
}

}  // namespace verma
