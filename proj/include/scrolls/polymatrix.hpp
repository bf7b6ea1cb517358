#pragma once

#include "context.hpp"
#include "errors.hpp"
#include "multipoly.hpp"
#include "parse.hpp"
#include "qmatrix.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace scrolls {

/// Rectangular matrix of polynomials over one shared variable list.
class PolyMatrix {
public:
    PolyMatrix() : vars_(make_vars({})) {}
    PolyMatrix(VarsPtr vars, std::size_t rows, std::size_t cols)
        : vars_(std::move(vars)), rows_(rows), cols_(cols), data_(rows * cols, MultiPoly(vars_)) {}

    static PolyMatrix from_rows(VarsPtr vars, const std::vector<std::vector<MultiPoly>>& rows, std::size_t cols = 0) {
        PolyMatrix m(vars, rows.size(), rows.empty() ? cols : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw InvalidInput("ragged polynomial matrix");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j].embed(vars);
        }
        return m;
    }

    /// Parse a matrix of expression strings.
    static PolyMatrix parse(const VarsPtr& vars, const std::vector<std::vector<std::string>>& rows) {
        std::vector<std::vector<MultiPoly>> polys;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::vector<MultiPoly> r;
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                try {
                    r.push_back(parse_poly(rows[i][j], vars));
                } catch (const ParseError& e) {
                    throw ParseError("row " + std::to_string(i + 1) + ", entry " + std::to_string(j + 1) + ": " +
                                         e.what(),
                                     0, e.column());
                }
            }
            polys.push_back(std::move(r));
        }
        return from_rows(vars, polys);
    }

    static PolyMatrix from_constant(const VarsPtr& vars, const QMatrix& q) {
        PolyMatrix m(vars, q.rows(), q.cols());
        for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j) m(i, j) = MultiPoly::constant(vars, q(i, j));
        return m;
    }

    const VarsPtr& vars() const { return vars_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    MultiPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const MultiPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<MultiPoly> row_entries(std::size_t r) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    PolyMatrix row(std::size_t r) const { return select_rows({r}); }

    PolyMatrix select_rows(const std::vector<std::size_t>& which) const {
        PolyMatrix m(vars_, which.size(), cols_);
        for (std::size_t i = 0; i < which.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(which[i], j);
        return m;
    }

    PolyMatrix select_cols(const std::vector<std::size_t>& which) const {
        PolyMatrix m(vars_, rows_, which.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < which.size(); ++j) m(i, j) = (*this)(i, which[j]);
        return m;
    }

    void append_row(const std::vector<MultiPoly>& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw InvalidInput("row length mismatch");
        for (const auto& p : r) data_.push_back(p.embed(vars_));
        ++rows_;
    }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && same_vars(vars_, o.vars_) && data_ == o.data_;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const MultiPoly& p) { return p.is_zero(); });
    }

    bool is_constant() const {
        return std::all_of(data_.begin(), data_.end(), [](const MultiPoly& p) { return p.is_constant(); });
    }

    int max_degree() const {
        int d = -1;
        for (const auto& p : data_) d = std::max(d, p.degree());
        return d;
    }

    PolyMatrix transpose() const {
        PolyMatrix t(vars_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
        if (!same_vars(a.vars_, b.vars_)) throw InvalidInput("matrix product over different rings");
        PolyMatrix r(a.vars_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

    PolyMatrix differentiate(std::size_t var) const {
        PolyMatrix r(vars_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].differentiate(var);
        return r;
    }

    PolyMatrix differentiate(const std::string& var) const {
        auto it = std::find(vars_->begin(), vars_->end(), var);
        if (it == vars_->end()) throw InvalidInput("unknown variable '" + var + "'");
        return differentiate(static_cast<std::size_t>(it - vars_->begin()));
    }

    /// Entrywise value at a point given in variable order.
    QMatrix evaluate(const std::vector<Rational>& point) const {
        QMatrix q(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) q(i, j) = (*this)(i, j).evaluate(point);
        return q;
    }

    /// Entrywise value at a named point; every occurring variable must be assigned.
    QMatrix evaluate(const std::map<std::string, Rational>& point) const {
        QMatrix q(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) q(i, j) = (*this)(i, j).evaluate(point);
        return q;
    }

    /// Entrywise substitution of some variables, keeping the rest.
    PolyMatrix partial_evaluate(const std::map<std::size_t, Rational>& fixed) const {
        PolyMatrix r(vars_, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].partial_evaluate(fixed);
        return r;
    }

    PolyMatrix substitute(const std::map<std::string, MultiPoly>& images, const VarsPtr& target) const {
        PolyMatrix r(target, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].substitute(images, target);
        return r;
    }

    PolyMatrix embed(const VarsPtr& target) const {
        PolyMatrix r(target, rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].embed(target);
        return r;
    }

    std::vector<std::vector<std::string>> to_strings() const {
        std::vector<std::vector<std::string>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
        return out;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).to_string();
            s += "]";
        }
        return s + "]";
    }

private:
    VarsPtr vars_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<MultiPoly> data_;
};

inline PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows() == 0 && a.cols() == 0) return b;
    if (b.rows() == 0 && b.cols() == 0) return a;
    if (a.cols() != b.cols()) throw InvalidInput("column count mismatch in vstack");
    PolyMatrix r = a;
    for (std::size_t i = 0; i < b.rows(); ++i) r.append_row(b.row_entries(i));
    return r;
}

inline PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows()) throw InvalidInput("row count mismatch in hstack");
    PolyMatrix r(a.vars(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j).embed(a.vars());
    }
    return r;
}

/// Entrywise partial derivative.
inline PolyMatrix differentiate(const PolyMatrix& m, const std::string& var) { return m.differentiate(var); }

inline QMatrix evaluate(const PolyMatrix& m, const std::map<std::string, Rational>& point) { return m.evaluate(point); }

/// Random point with one coordinate per ring variable.
template <class Rng>
std::vector<Rational> random_point(Rng& rng, std::size_t n, long bound = 100) {
    std::vector<Rational> p;
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) p.push_back(random_rational(rng, bound));
    return p;
}

namespace detail {

using PolyRow = std::vector<MultiPoly>;

inline void check_limits(const PolyRow& row, const Limits& limits) {
    for (const auto& p : row) {
        if (p.degree() > static_cast<int>(limits.max_degree))
            throw ResourceError("intermediate polynomial degree " + std::to_string(p.degree()) + " exceeds cap " +
                                std::to_string(limits.max_degree));
        if (p.max_bits() > limits.max_bits)
            throw ResourceError("intermediate coefficient size exceeds cap of " + std::to_string(limits.max_bits) +
                                " bits");
    }
}

/// Divide a row by its integer content and its monomial content.
inline void remove_content(PolyRow& row) {
    Integer den_lcm = 1, num_gcd = 0;
    std::optional<Monomial> mono;
    for (const auto& p : row) {
        if (p.is_zero()) continue;
        for (const auto& [m, c] : p.terms()) {
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        }
        Monomial mc = p.monomial_content();
        if (!mono) {
            mono = mc;
        } else {
            for (std::size_t i = 0; i < mc.size(); ++i) (*mono)[i] = std::min((*mono)[i], mc[i]);
        }
    }
    if (!mono) return;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    bool shift = std::any_of(mono->begin(), mono->end(), [](auto e) { return e > 0; });
    for (auto& p : row) {
        if (p.is_zero()) continue;
        if (scale != 1) p *= scale;
        if (shift) p = p.divide_monomial(*mono);
    }
}

/// Divide every entry by `d` when all divisions are exact; leave the row alone otherwise.
inline void try_divide_row(PolyRow& row, const MultiPoly& d) {
    if (d.is_constant()) return;
    PolyRow out;
    out.reserve(row.size());
    for (const auto& p : row) {
        if (p.is_zero()) {
            out.push_back(p);
            continue;
        }
        auto q = p.divide_exact(d);
        if (!q) return;
        out.push_back(std::move(*q));
    }
    row = std::move(out);
}

struct Elimination {
    std::vector<PolyRow> rows; // first `pivot_cols.size()` rows are the nonzero echelon rows
    std::vector<std::size_t> pivot_cols;
};

/// Fraction-free elimination over the polynomial ring.
///
/// Each step cross-multiplies by the pivot, then attempts an exact Bareiss
/// division by the previous pivot and removes integer and monomial content.
/// Pivots are the lowest-degree nonzero entries, ties broken by column then
/// row. With `reduce_above` the pivot column is also cleared in earlier rows.
inline Elimination eliminate(const PolyMatrix& m, bool reduce_above, const Limits& limits) {
    Elimination e;
    const std::size_t nr = m.rows(), nc = m.cols();
    e.rows.reserve(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        e.rows.push_back(m.row_entries(i));
        remove_content(e.rows.back());
    }
    std::vector<bool> used(nc, false);
    MultiPoly prev = MultiPoly::constant(m.vars(), 1);
    std::size_t rank = 0;
    while (rank < nr) {
        std::tuple<int, std::size_t, std::size_t> best{-1, 0, 0};
        bool found = false;
        for (std::size_t i = rank; i < nr; ++i)
            for (std::size_t c = 0; c < nc; ++c) {
                if (used[c] || e.rows[i][c].is_zero()) continue;
                std::tuple<int, std::size_t, std::size_t> key{e.rows[i][c].degree(), c, i};
                if (!found || key < best) {
                    best = key;
                    found = true;
                }
            }
        if (!found) break;
        auto [deg, c, i] = best;
        std::swap(e.rows[i], e.rows[rank]);
        const PolyRow& pr = e.rows[rank];
        const MultiPoly piv = pr[c];
        for (std::size_t r = 0; r < nr; ++r) {
            if (r == rank || (r < rank && !reduce_above)) continue;
            const MultiPoly a = e.rows[r][c];
            if (a.is_zero()) continue;
            PolyRow& row = e.rows[r];
            for (std::size_t j = 0; j < nc; ++j) {
                MultiPoly v = piv * row[j];
                if (!pr[j].is_zero()) v -= a * pr[j];
                row[j] = std::move(v);
            }
            if (r > rank) try_divide_row(row, prev);
            remove_content(row);
            check_limits(row, limits);
        }
        used[c] = true;
        e.pivot_cols.push_back(c);
        prev = piv;
        ++rank;
    }
    return e;
}

} // namespace detail

/// Rank over the fraction field of the polynomial ring.
inline std::size_t generic_rank(const PolyMatrix& m, const Limits& limits = {}) {
    return detail::eliminate(m, false, limits).pivot_cols.size();
}

/// Maximal rank of `m` over `ctx.samples` random rational points. Ranks only
/// drop on a proper closed subset, so this equals the generic rank with high
/// probability.
inline std::size_t sampled_rank(const PolyMatrix& m, const Context& ctx, std::string_view tag = "sampled_rank") {
    auto rng = ctx.rng(tag, m.rows() * 1000 + m.cols());
    std::size_t best = 0;
    const std::size_t cap = std::min(m.rows(), m.cols());
    for (unsigned s = 0; s < std::max(1u, ctx.samples) && best < cap; ++s)
        best = std::max(best, m.evaluate(random_point(rng, m.vars()->size())).rank());
    return best;
}

/// Fraction-free echelon basis of the row space (polynomial entries).
inline PolyMatrix row_basis(const PolyMatrix& m, const Limits& limits = {}) {
    auto e = detail::eliminate(m, false, limits);
    PolyMatrix out(m.vars(), 0, m.cols());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) out.append_row(e.rows[i]);
    return out;
}

/// Rows form a basis of the right null space {y : m * y^T = 0} over the
/// function field, with denominators cleared.
inline PolyMatrix kernel_basis(const PolyMatrix& m, const Limits& limits = {}) {
    auto e = detail::eliminate(m, true, limits);
    const std::size_t nc = m.cols();
    const auto& piv = e.pivot_cols;
    std::vector<bool> is_pivot(nc, false);
    for (auto p : piv) is_pivot[p] = true;
    PolyMatrix out(m.vars(), 0, nc);
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        // common multiple of the pivots that meet column f
        MultiPoly common = MultiPoly::constant(m.vars(), 1);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            if (e.rows[i][f].is_zero()) continue;
            const MultiPoly& d = e.rows[i][piv[i]];
            if (common.divide_exact(d)) continue;
            if (auto q = d.divide_exact(common)) {
                common = d;
            } else {
                common *= d;
            }
        }
        detail::PolyRow y(nc, MultiPoly(m.vars()));
        y[f] = common;
        for (std::size_t i = 0; i < piv.size(); ++i) {
            if (e.rows[i][f].is_zero()) continue;
            auto scale = common.divide_exact(e.rows[i][piv[i]]);
            y[piv[i]] = -(e.rows[i][f] * *scale);
        }
        detail::remove_content(y);
        detail::check_limits(y, limits);
        out.append_row(y);
    }
    return out;
}

/// Row spaces agree over the function field.
inline bool rowspan_equal(const PolyMatrix& a, const PolyMatrix& b, const Limits& limits = {}) {
    if (a.cols() != b.cols()) throw InvalidInput("rowspan_equal: column counts differ");
    std::size_t ra = generic_rank(a, limits), rb = generic_rank(b, limits);
    return ra == rb && generic_rank(vstack(a, b.embed(a.vars())), limits) == ra;
}

/// rowspan(a) is contained in rowspan(b).
inline bool rowspan_contains(const PolyMatrix& b, const PolyMatrix& a, const Limits& limits = {}) {
    if (a.cols() != b.cols()) throw InvalidInput("rowspan_contains: column counts differ");
    return generic_rank(vstack(b, a.embed(b.vars())), limits) == generic_rank(b, limits);
}

/// Greedy choice of rows that are independent at a generic point; returns
/// row indices in original order. `target` is the rank to reach.
inline std::vector<std::size_t> independent_rows(const PolyMatrix& m, std::size_t target, const Context& ctx,
                                                 std::string_view tag = "independent_rows") {
    auto rng = ctx.rng(tag, m.rows());
    for (unsigned attempt = 0; attempt < std::max(1u, ctx.samples); ++attempt) {
        QMatrix q = m.evaluate(random_point(rng, m.vars()->size()));
        std::vector<std::size_t> chosen;
        QMatrix acc(0, m.cols());
        for (std::size_t i = 0; i < m.rows() && chosen.size() < target; ++i) {
            QMatrix trial = vstack(acc, QMatrix::from_rows({q.row(i)}));
            if (trial.rank() > chosen.size()) {
                acc = trial;
                chosen.push_back(i);
            }
        }
        if (chosen.size() == target) return chosen;
    }
    throw DegenerateError("independent_rows: no generic sample point found");
}

/// Determinant of a square polynomial matrix (fraction-free, exact divisions).
inline MultiPoly determinant(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidInput("determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return MultiPoly::constant(m.vars(), 1);
    std::vector<std::vector<MultiPoly>> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = m.row_entries(i);
    MultiPoly prev = MultiPoly::constant(m.vars(), 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k].is_zero()) ++p;
        if (p == n) return MultiPoly(m.vars());
        if (p != k) {
            std::swap(a[p], a[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                auto q = v.divide_exact(prev);
                if (!q) throw VerificationError("determinant: inexact fraction-free division");
                a[i][j] = std::move(*q);
            }
            a[i][k] = MultiPoly(m.vars());
        }
        prev = a[k][k];
    }
    return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

} // namespace scrolls
