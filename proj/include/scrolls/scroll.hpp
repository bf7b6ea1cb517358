#pragma once

#include "context.hpp"
#include "errors.hpp"
#include "polymatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scrolls {

/// Divide each row by its integer and monomial content.
inline PolyMatrix normalize_rows(const PolyMatrix& m) {
    PolyMatrix out(m.vars(), 0, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row_entries(i);
        detail::remove_content(row);
        // sign: first nonzero entry gets a positive leading coefficient
        for (const auto& p : row) {
            if (p.is_zero()) continue;
            if (p.leading_coefficient() < 0)
                for (auto& q : row) q = -q;
            break;
        }
        out.append_row(row);
    }
    return out;
}

/// Rank of the differential of t -> rowspan(m(t)) into the Grassmannian at
/// `point`, differentiating along the variables `dirs`.
///
/// The tangent space of the Grassmannian at a subspace W is Hom(W, V/W); the
/// derivative along v sends row i to d_v(row i) modulo W.
inline std::size_t grassmann_differential_rank(const PolyMatrix& m, const std::vector<std::size_t>& dirs,
                                               const std::vector<Rational>& point) {
    QMatrix w = m.evaluate(point);
    QMatrix annihilator = w.kernel(); // rows span W^perp
    const std::size_t r = w.rows(), q = annihilator.rows();
    QMatrix jac(0, r * q);
    for (auto v : dirs) {
        QMatrix d = m.differentiate(v).evaluate(point) * annihilator.transpose();
        std::vector<Rational> flat;
        flat.reserve(r * q);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < q; ++j) flat.push_back(d(i, j));
        jac.append_row(flat);
    }
    return jac.rows() == 0 ? 0 : jac.rank();
}

/// A parametric scroll: a polynomial classifying matrix whose rowspan at a
/// base point t is the fibre P^k_t in P^N.
///
/// The matrix has k+1 rows, N+1 columns and full generic row rank. Base
/// variables are the matrix's ring variables.
class ParametricScroll {
public:
    /// Checked construction: full row rank and a generically finite
    /// classifying map (the differential into the Grassmannian has rank g).
    static ParametricScroll make(PolyMatrix classifying, std::string name = {}, const Context& ctx = {}) {
        ParametricScroll s = unchecked(std::move(classifying), std::move(name));
        std::size_t r = s.classifying_map_rank(ctx);
        if (r != s.base_dim())
            throw InvalidInput("classifying map is not generically finite: differential rank " + std::to_string(r) +
                               " on a " + std::to_string(s.base_dim()) + "-dimensional base");
        return s;
    }

    /// Construction that only checks shape and full row rank. Used for
    /// members of flags and other derived objects that may be constant along
    /// part of the base.
    static ParametricScroll unchecked(PolyMatrix classifying, std::string name = {}) {
        if (classifying.rows() == 0) throw InvalidInput("classifying matrix has no rows");
        if (classifying.rows() > classifying.cols())
            throw InvalidInput("classifying matrix has more rows than columns");
        std::size_t r = generic_rank(classifying);
        if (r != classifying.rows())
            throw InvalidInput("classifying matrix has generic rank " + std::to_string(r) + ", expected " +
                               std::to_string(classifying.rows()));
        ParametricScroll s;
        s.classifying_ = std::move(classifying);
        s.name_ = std::move(name);
        return s;
    }

    const PolyMatrix& classifying() const { return classifying_; }
    const std::string& name() const { return name_; }
    const VarsPtr& base_vars() const { return classifying_.vars(); }
    std::size_t base_dim() const { return classifying_.vars()->size(); }
    std::size_t fibre_dim() const { return classifying_.rows() - 1; }
    std::size_t ambient_dim() const { return classifying_.cols() - 1; }

    ParametricScroll with_name(std::string name) const {
        ParametricScroll s = *this;
        s.name_ = std::move(name);
        return s;
    }

    /// Rank of the classifying map's differential at a generic base point.
    std::size_t classifying_map_rank(const Context& ctx = {}) const {
        std::vector<std::size_t> dirs(base_dim());
        for (std::size_t i = 0; i < dirs.size(); ++i) dirs[i] = i;
        auto rng = ctx.rng("classifying_map_rank");
        std::size_t best = 0;
        for (unsigned s = 0; s < std::max(1u, ctx.samples); ++s) {
            auto point = random_point(rng, base_dim());
            if (classifying_.evaluate(point).rank() != classifying_.rows()) continue;
            best = std::max(best, grassmann_differential_rank(classifying_, dirs, point));
        }
        return best;
    }

    bool is_generically_finite(const Context& ctx = {}) const { return classifying_map_rank(ctx) == base_dim(); }

private:
    PolyMatrix classifying_;
    std::string name_;
};

/// Fibre vectors at a base point (given in base-variable order).
inline QMatrix fibre_at(const ParametricScroll& x, const std::vector<Rational>& point) {
    QMatrix f = x.classifying().evaluate(point);
    if (f.rank() != x.fibre_dim() + 1)
        throw DegenerateError("fibre_at: classifying matrix drops rank at this base point; resample");
    return f;
}

/// Names for the fibre coordinates x0..xk, avoiding clashes with base variables.
inline VarList fibre_var_names(const ParametricScroll& x) {
    std::string prefix = "x";
    auto clash = [&](const std::string& p) {
        for (const auto& v : *x.base_vars())
            if (v.rfind(p, 0) == 0) return true;
        return false;
    };
    while (clash(prefix)) prefix = "_" + prefix;
    VarList names;
    for (std::size_t i = 0; i <= x.fibre_dim(); ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

/// Ring of base variables followed by fibre coordinates.
inline VarsPtr total_space_vars(const ParametricScroll& x) {
    VarList all = *x.base_vars();
    for (auto& v : fibre_var_names(x)) all.push_back(v);
    return make_vars(std::move(all));
}

/// Stack of the classifying rows and the rows x * dS/dt_i, over base and fibre
/// variables. Its rowspan at (t, x) is the affine cone over the embedded
/// tangent space of the spread at the point x * S(t).
inline PolyMatrix tangent_span(const ParametricScroll& x) {
    VarsPtr vars = total_space_vars(x);
    PolyMatrix s = x.classifying().embed(vars);
    const std::size_t g = x.base_dim(), k1 = x.fibre_dim() + 1;
    PolyMatrix out = s;
    for (std::size_t i = 0; i < g; ++i) {
        PolyMatrix d = s.differentiate(i);
        std::vector<MultiPoly> row(s.cols(), MultiPoly(vars));
        for (std::size_t j = 0; j < k1; ++j) {
            MultiPoly xj = MultiPoly::variable(vars, (*vars)[g + j]);
            for (std::size_t c = 0; c < s.cols(); ++c)
                if (!d(j, c).is_zero()) row[c] += xj * d(j, c);
        }
        out.append_row(row);
    }
    return out;
}

/// Classifying rows stacked with all their first partials.
inline PolyMatrix first_order_stack(const PolyMatrix& s) {
    PolyMatrix out = s;
    for (std::size_t i = 0; i < s.vars()->size(); ++i) out = vstack(out, s.differentiate(i));
    return out;
}

/// dim of the spread f(X_B).
inline std::size_t spread_dim(const ParametricScroll& x, const Context& ctx = {}) {
    return sampled_rank(tangent_span(x), ctx, "spread_dim") - 1;
}

/// The image of d_x f is independent of the fibre point x: the tangent span
/// at a generic (t, x) already has the rank of the whole first-order stack.
inline bool is_stationary(const ParametricScroll& x, const Context& ctx = {}) {
    if (x.fibre_dim() == 0 || x.base_dim() == 0) return true;
    std::size_t full = generic_rank(first_order_stack(x.classifying()), ctx.limits);
    return sampled_rank(tangent_span(x), ctx, "is_stationary") == full;
}

inline bool is_filling(const ParametricScroll& x, const Context& ctx = {}) {
    return spread_dim(x, ctx) == x.ambient_dim();
}

inline bool is_overfilling(const ParametricScroll& x, const Context& ctx = {}) {
    return is_filling(x, ctx) && x.base_dim() + x.fibre_dim() > x.ambient_dim();
}

/// Scroll of tangent spaces along the rulings.
inline ParametricScroll derived(const ParametricScroll& x, const Context& ctx = {}) {
    if (!is_stationary(x, ctx)) throw PreconditionError("derived: scroll is not stationary");
    PolyMatrix w = first_order_stack(x.classifying());
    std::size_t r = generic_rank(w, ctx.limits);
    if (r == x.fibre_dim() + 1) throw PreconditionError("derived: scroll spans a linear subspace (fixpoint)");
    auto rows = independent_rows(w, r, ctx, "derived");
    return ParametricScroll::unchecked(normalize_rows(w.select_rows(rows)));
}

namespace detail {

/// Coefficient vectors x (rows) with x * dS/dt_i in rowspan(S) for all i.
inline PolyMatrix edge_coefficients(const PolyMatrix& s, const Limits& limits) {
    PolyMatrix annihilator = kernel_basis(s, limits);
    const std::size_t k1 = s.rows();
    if (annihilator.rows() == 0 || s.vars()->empty()) {
        PolyMatrix id(s.vars(), k1, k1);
        for (std::size_t i = 0; i < k1; ++i) id(i, i) = MultiPoly::constant(s.vars(), 1);
        return id;
    }
    PolyMatrix pairing(s.vars(), k1, 0);
    for (std::size_t i = 0; i < s.vars()->size(); ++i)
        pairing = hstack(pairing, s.differentiate(i) * annihilator.transpose());
    return kernel_basis(pairing.transpose(), limits);
}

} // namespace detail

/// Antiderived scroll without the stationarity precondition; nullopt when empty.
inline std::optional<ParametricScroll> antiderived_unchecked(const ParametricScroll& x, const Context& ctx = {}) {
    PolyMatrix coeffs = detail::edge_coefficients(x.classifying(), ctx.limits);
    if (coeffs.rows() == 0) return std::nullopt;
    return ParametricScroll::unchecked(normalize_rows(coeffs * x.classifying()));
}

/// Co-osculating scroll (leading edge); nullopt when empty.
inline std::optional<ParametricScroll> antiderived(const ParametricScroll& x, const Context& ctx = {}) {
    if (!is_stationary(x, ctx)) throw PreconditionError("antiderived: scroll is not stationary");
    return antiderived_unchecked(x, ctx);
}

/// Fibrewise annihilator with respect to sum y_i x_i.
inline ParametricScroll dual(const ParametricScroll& x, const Context& ctx = {}) {
    if (x.fibre_dim() >= x.ambient_dim()) throw PreconditionError("dual: fibres fill the ambient space (k = N)");
    return ParametricScroll::unchecked(normalize_rows(kernel_basis(x.classifying(), ctx.limits)));
}

/// Scroll equality: equal fibres over the function field.
inline bool same_scroll(const ParametricScroll& a, const ParametricScroll& b, const Context& ctx = {}) {
    if (a.ambient_dim() != b.ambient_dim()) return false;
    return rowspan_equal(a.classifying(), b.classifying().embed(a.base_vars()), ctx.limits);
}

/// Rowspan independent of the base point: equal to its values at two random points.
inline bool is_constant_rowspan(const PolyMatrix& m, const Context& ctx = {}) {
    if (m.is_constant()) return true;
    auto rng = ctx.rng("constant_rowspan", m.rows());
    for (int i = 0; i < 2; ++i) {
        QMatrix q = m.evaluate(random_point(rng, m.vars()->size()));
        if (!rowspan_equal(m, PolyMatrix::from_constant(m.vars(), q), ctx.limits)) return false;
    }
    return true;
}

/// Constant basis (RREF) of the linear span of the spread, obtained by
/// closing the rowspan under differentiation.
inline QMatrix linear_span(const ParametricScroll& x, const Context& ctx = {}) {
    if (!is_stationary(x, ctx)) throw PreconditionError("linear_span: scroll is not stationary");
    PolyMatrix w = x.classifying();
    std::size_t r = w.rows();
    for (;;) {
        PolyMatrix next = first_order_stack(w);
        std::size_t nr = generic_rank(next, ctx.limits);
        if (nr == r) break;
        w = next.select_rows(independent_rows(next, nr, ctx, "linear_span"));
        r = nr;
    }
    auto rng = ctx.rng("linear_span_point");
    for (unsigned attempt = 0; attempt < std::max(1u, ctx.samples); ++attempt) {
        QMatrix q = w.evaluate(random_point(rng, w.vars()->size()));
        if (q.rank() == r) return q.row_basis();
    }
    throw DegenerateError("linear_span: no generic sample point found");
}

inline bool is_nondegenerate(const ParametricScroll& x, const Context& ctx = {}) {
    return linear_span(x, ctx).rows() == x.ambient_dim() + 1;
}

/// Intersection of each fibre with the hyperplane {y : H . y = 0}.
inline ParametricScroll hyperplane_section(const ParametricScroll& x, const std::vector<Rational>& h,
                                           const Context& ctx = {}) {
    if (x.fibre_dim() == 0) throw PreconditionError("hyperplane_section: fibre dimension must be at least 1");
    if (h.size() != x.ambient_dim() + 1) throw InvalidInput("hyperplane_section: covector has wrong length");
    PolyMatrix hcol = PolyMatrix::from_constant(x.base_vars(), QMatrix::from_rows({h}).transpose());
    PolyMatrix values = x.classifying() * hcol;
    if (values.is_zero()) throw PreconditionError("hyperplane_section: hyperplane contains every fibre");
    PolyMatrix coeffs = kernel_basis(values.transpose(), ctx.limits);
    return ParametricScroll::unchecked(normalize_rows(coeffs * x.classifying()));
}

} // namespace scrolls
