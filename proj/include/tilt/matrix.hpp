/*
 * Dense exact matrices over Q or F_p.
 *
 * Reduction strategy: over F_p plain Gauss-Jordan; over Q the forward
 * phase runs fraction-free (Bareiss) on integer-rescaled rows, the back
 * phase divides out pivots.  Pivot choice is always the first nonzero
 * entry scanning rows top-down within the leftmost unfinished column,
 * so all reductions are deterministic and RREF output is canonical.
 */
#pragma once

#include <optional>
#include <vector>

#include "scalar.hpp"

namespace tilt {

using Vec = std::vector<Scalar>;

class MatrixE {
  public:
    MatrixE() : rows_(0), cols_(0) {}
    MatrixE(int rows, int cols, FieldSpec f)
        : rows_(rows), cols_(cols), field_(f), a_((size_t)rows * cols, Scalar::zero(f)) {}

    static MatrixE identity(int n, FieldSpec f) {
        MatrixE m(n, n, f);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FieldSpec field() const { return field_; }

    Scalar& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
    const Scalar& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

    bool operator==(const MatrixE& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) return false;
        for (size_t k = 0; k < a_.size(); ++k)
            if (a_[k] != o.a_[k]) return false;
        return true;
    }
    bool operator!=(const MatrixE& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& s : a_)
            if (!s.is_zero()) return false;
        return true;
    }

    MatrixE transpose() const {
        MatrixE t(cols_, rows_, field_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    MatrixE block(int r0, int c0, int nr, int nc) const {
        MatrixE b(nr, nc, field_);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
        return b;
    }

    void set_block(int r0, int c0, const MatrixE& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
    }

    Vec col(int j) const {
        Vec v;
        v.reserve(rows_);
        for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
        return v;
    }

    void set_col(int j, const Vec& v) {
        for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    friend MatrixE operator+(const MatrixE& x, const MatrixE& y) {
        x.check_same_shape(y);
        MatrixE r = x;
        for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
        return r;
    }

    friend MatrixE operator-(const MatrixE& x, const MatrixE& y) {
        x.check_same_shape(y);
        MatrixE r = x;
        for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
        return r;
    }

    friend MatrixE operator*(const MatrixE& x, const MatrixE& y) {
        if (x.cols_ != y.rows_ || !(x.field_ == y.field_)) throw error("matmul: shape/field mismatch");
        MatrixE r(x.rows_, y.cols_, x.field_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const Scalar& s = x.at(i, k);
                if (s.is_zero()) continue;
                for (int j = 0; j < y.cols_; ++j) {
                    const Scalar& t = y.at(k, j);
                    if (!t.is_zero()) r.at(i, j) += s * t;
                }
            }
        return r;
    }

    friend MatrixE operator*(const Scalar& s, const MatrixE& x) {
        MatrixE r = x;
        for (auto& e : r.a_) e *= s;
        return r;
    }

    MatrixE operator-() const { return Scalar::from_int(-1, field_) * *this; }

  private:
    void check_same_shape(const MatrixE& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_))
            throw error("matrix: shape/field mismatch");
    }

    int rows_, cols_;
    FieldSpec field_;
    std::vector<Scalar> a_;
};

inline Vec zero_vec(int n, FieldSpec f) { return Vec((size_t)n, Scalar::zero(f)); }

inline Vec unit_vec(int n, int i, FieldSpec f) {
    Vec v = zero_vec(n, f);
    v[i] = Scalar::one(f);
    return v;
}

inline bool vec_is_zero(const Vec& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

inline Vec mat_vec(const MatrixE& m, const Vec& v) {
    if ((int)v.size() != m.cols()) throw error("mat_vec: shape mismatch");
    Vec r = zero_vec(m.rows(), m.field());
    for (int j = 0; j < m.cols(); ++j) {
        if (v[j].is_zero()) continue;
        for (int i = 0; i < m.rows(); ++i) {
            const Scalar& e = m.at(i, j);
            if (!e.is_zero()) r[i] += e * v[j];
        }
    }
    return r;
}

inline MatrixE from_cols(const std::vector<Vec>& cols, int ambient, FieldSpec f) {
    MatrixE m(ambient, (int)cols.size(), f);
    for (int j = 0; j < (int)cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
}

struct Rref {
    MatrixE r;
    std::vector<int> pivots;  // pivot column of each pivot row

    int rank() const { return (int)pivots.size(); }
};

inline Rref rref(const MatrixE& m) {
    const FieldSpec f = m.field();
    MatrixE w = m;
    const int nr = w.rows(), nc = w.cols();
    std::vector<int> pivots;

    if (!f.is_q()) {
        int r = 0;
        for (int c = 0; c < nc && r < nr; ++c) {
            int p = -1;
            for (int i = r; i < nr; ++i)
                if (!w.at(i, c).is_zero()) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            if (p != r)
                for (int j = 0; j < nc; ++j) std::swap(w.at(p, j), w.at(r, j));
            Scalar inv = w.at(r, c).inv();
            for (int j = c; j < nc; ++j) w.at(r, j) *= inv;
            for (int i = 0; i < nr; ++i) {
                if (i == r || w.at(i, c).is_zero()) continue;
                Scalar coef = w.at(i, c);
                for (int j = c; j < nc; ++j) w.at(i, j) -= coef * w.at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return {std::move(w), std::move(pivots)};
    }

    // Q: clear denominators per row, then fraction-free forward elimination.
    for (int i = 0; i < nr; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < nc; ++j)
            if (!w.at(i, j).is_zero()) {
                mpq_class q = w.at(i, j).as_mpq();
                mpz_class d = q.get_den();
                l = l / gcd(l, d) * d;
            }
        if (l != 1) {
            Scalar s = Scalar::from_mpq(mpq_class(l), f);
            for (int j = 0; j < nc; ++j) w.at(i, j) *= s;
        }
    }

    Scalar prev = Scalar::one(f);
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int p = -1;
        for (int i = r; i < nr; ++i)
            if (!w.at(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < nc; ++j) std::swap(w.at(p, j), w.at(r, j));
        const Scalar piv = w.at(r, c);
        for (int i = r + 1; i < nr; ++i) {
            const Scalar lead = w.at(i, c);
            for (int j = c; j < nc; ++j)
                w.at(i, j) = (piv * w.at(i, j) - lead * w.at(r, j)) / prev;
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }

    // Back phase: normalize pivot rows, eliminate above.
    for (int i = (int)pivots.size() - 1; i >= 0; --i) {
        int c = pivots[i];
        Scalar inv = w.at(i, c).inv();
        for (int j = c; j < nc; ++j) w.at(i, j) *= inv;
        for (int k = 0; k < i; ++k) {
            Scalar coef = w.at(k, c);
            if (coef.is_zero()) continue;
            for (int j = c; j < nc; ++j) w.at(k, j) -= coef * w.at(i, j);
        }
    }
    return {std::move(w), std::move(pivots)};
}

inline int rank(const MatrixE& m) { return rref(m).rank(); }

// Kernel vectors as columns; canonical (free coordinate set to 1).
inline MatrixE kernel_basis(const MatrixE& m) {
    Rref rr = rref(m);
    const int nc = m.cols();
    std::vector<int> pivot_of_col(nc, -1);
    for (int i = 0; i < rr.rank(); ++i) pivot_of_col[rr.pivots[i]] = i;
    std::vector<Vec> cols;
    for (int c = 0; c < nc; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        Vec v = zero_vec(nc, m.field());
        v[c] = Scalar::one(m.field());
        for (int i = 0; i < rr.rank(); ++i) v[rr.pivots[i]] = -rr.r.at(i, c);
        cols.push_back(std::move(v));
    }
    return from_cols(cols, nc, m.field());
}

// One solution of m x = b (free coordinates zero), or nullopt.
inline std::optional<Vec> solve(const MatrixE& m, const Vec& b) {
    if ((int)b.size() != m.rows()) throw error("solve: shape mismatch");
    MatrixE aug(m.rows(), m.cols() + 1, m.field());
    aug.set_block(0, 0, m);
    aug.set_col(m.cols(), b);
    Rref rr = rref(aug);
    for (int c : rr.pivots)
        if (c == m.cols()) return std::nullopt;
    Vec x = zero_vec(m.cols(), m.field());
    for (int i = 0; i < rr.rank(); ++i) x[rr.pivots[i]] = rr.r.at(i, m.cols());
    return x;
}

// Columnwise solve of m X = B; nullopt if any column is inconsistent.
inline std::optional<MatrixE> solve_matrix(const MatrixE& m, const MatrixE& b) {
    if (b.rows() != m.rows()) throw error("solve_matrix: shape mismatch");
    MatrixE aug(m.rows(), m.cols() + b.cols(), m.field());
    aug.set_block(0, 0, m);
    aug.set_block(0, m.cols(), b);
    Rref rr = rref(aug);
    for (int c : rr.pivots)
        if (c >= m.cols()) return std::nullopt;
    MatrixE x(m.cols(), b.cols(), m.field());
    for (int i = 0; i < rr.rank(); ++i)
        for (int j = 0; j < b.cols(); ++j) x.at(rr.pivots[i], j) = rr.r.at(i, m.cols() + j);
    return x;
}

inline std::optional<MatrixE> inverse(const MatrixE& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve_matrix(m, MatrixE::identity(m.rows(), m.field()));
    if (!x) return std::nullopt;
    // solve_matrix found a preimage for every unit vector, so m is onto, hence invertible.
    return x;
}

inline MatrixE kronecker(const MatrixE& x, const MatrixE& y) {
    if (!(x.field() == y.field())) throw error("kronecker: field mismatch");
    MatrixE r(x.rows() * y.rows(), x.cols() * y.cols(), x.field());
    for (int i1 = 0; i1 < x.rows(); ++i1)
        for (int j1 = 0; j1 < x.cols(); ++j1) {
            const Scalar& s = x.at(i1, j1);
            if (s.is_zero()) continue;
            for (int i2 = 0; i2 < y.rows(); ++i2)
                for (int j2 = 0; j2 < y.cols(); ++j2) {
                    const Scalar& t = y.at(i2, j2);
                    if (!t.is_zero()) r.at(i1 * y.rows() + i2, j1 * y.cols() + j2) = s * t;
                }
        }
    return r;
}

inline MatrixE random_matrix(int rows, int cols, FieldSpec f, std::int64_t bound,
                             std::uint64_t seed) {
    Rng rng(seed);
    MatrixE m(rows, cols, f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Scalar::from_int(rng.int_in(bound), f);
    return m;
}

/*
 * A linear subspace of k^n held as a canonical (RREF-of-transpose) basis.
 * Basis vectors are the columns of basis(); pivots()[i] is the coordinate
 * in which basis vector i has its leading 1 (and all other basis vectors
 * vanish), so coordinates in the subspace read off pivot positions.
 */
class Subspace {
  public:
    static Subspace from_span(const MatrixE& span_cols) {
        Rref rr = rref(span_cols.transpose());
        Subspace s;
        s.ambient_ = span_cols.rows();
        s.field_ = span_cols.field();
        s.pivots_ = rr.pivots;
        s.basis_ = MatrixE(s.ambient_, rr.rank(), s.field_);
        for (int i = 0; i < rr.rank(); ++i)
            for (int j = 0; j < s.ambient_; ++j) s.basis_.at(j, i) = rr.r.at(i, j);
        return s;
    }

    int dim() const { return basis_.cols(); }
    int ambient() const { return ambient_; }
    const MatrixE& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Residual of v after subtracting its projection onto the subspace.
    Vec reduce(const Vec& v) const {
        Vec w = v;
        for (int i = 0; i < dim(); ++i) {
            Scalar c = w[pivots_[i]];
            if (c.is_zero()) continue;
            for (int j = 0; j < ambient_; ++j) {
                const Scalar& b = basis_.at(j, i);
                if (!b.is_zero()) w[j] -= c * b;
            }
        }
        return w;
    }

    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

    // Coordinates of v in the canonical basis; throws if v is outside.
    Vec coords(const Vec& v) const {
        Vec c;
        c.reserve(dim());
        for (int i = 0; i < dim(); ++i) c.push_back(v[pivots_[i]]);
        if (!contains(v)) throw error("subspace: vector not contained");
        return c;
    }

  private:
    int ambient_ = 0;
    FieldSpec field_;
    MatrixE basis_;
    std::vector<int> pivots_;
};

// Canonical basis of the column space, as columns.
inline MatrixE image_basis(const MatrixE& m) { return Subspace::from_span(m).basis(); }

}  // namespace tilt
