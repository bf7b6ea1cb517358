#pragma once

#include "scroll.hpp"

#include <functional>
#include <numeric>
#include <vector>

namespace scrolls {

namespace detail {

inline void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline QMatrix columns(const QMatrix& m, const std::vector<std::size_t>& cols) {
    QMatrix out(m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(i, cols[j]);
    return out;
}

} // namespace detail

/// Dimension of the image of the Gauss map of the spread.
///
/// Works on the total space (t, x): the embedded tangent space is spanned by
/// the rows of the tangent span. Its Plücker vector (all maximal minors) is
/// dehomogenized by a minor that is nonzero at the sample, and the rank of
/// the Jacobian of the resulting affine coordinates is returned. Minor
/// derivatives use the row-wise Jacobi formula, so only rational determinants
/// are evaluated.
inline std::size_t gauss_dimension(const ParametricScroll& x, const Context& ctx = {}) {
    PolyMatrix span = tangent_span(x);
    const std::size_t rank = sampled_rank(span, ctx, "gauss_dimension_rank");
    PolyMatrix basis = span.select_rows(independent_rows(span, rank, ctx, "gauss_dimension_rows"));
    const std::size_t nv = basis.vars()->size(), ncols = basis.cols();
    std::vector<PolyMatrix> partials;
    partials.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v) partials.push_back(basis.differentiate(v));

    auto rng = ctx.rng("gauss_dimension");
    for (unsigned attempt = 0; attempt < std::max(1u, ctx.samples); ++attempt) {
        auto point = random_point(rng, nv);
        QMatrix a = basis.evaluate(point);
        if (a.rank() != rank) continue;
        std::vector<QMatrix> da;
        for (const auto& p : partials) da.push_back(p.evaluate(point));

        std::vector<Rational> minors;
        std::vector<std::vector<Rational>> dminors; // [minor][var]
        detail::for_each_combination(ncols, rank, [&](const std::vector<std::size_t>& cols) {
            QMatrix sub = detail::columns(a, cols);
            minors.push_back(sub.determinant());
            std::vector<Rational> d(nv, Rational(0));
            for (std::size_t v = 0; v < nv; ++v) {
                QMatrix dsub = detail::columns(da[v], cols);
                for (std::size_t i = 0; i < rank; ++i) {
                    QMatrix replaced = sub;
                    for (std::size_t j = 0; j < rank; ++j) replaced(i, j) = dsub(i, j);
                    d[v] += replaced.determinant();
                }
            }
            dminors.push_back(std::move(d));
        });
        std::size_t ref = 0;
        while (ref < minors.size() && minors[ref] == 0) ++ref;
        if (ref == minors.size()) continue;
        QMatrix jac(0, nv);
        for (std::size_t i = 0; i < minors.size(); ++i) {
            if (i == ref) continue;
            std::vector<Rational> row(nv);
            for (std::size_t v = 0; v < nv; ++v)
                row[v] = minors[ref] * dminors[i][v] - minors[i] * dminors[ref][v];
            jac.append_row(row);
        }
        return jac.rows() == 0 ? 0 : jac.rank();
    }
    throw DegenerateError("gauss_dimension: no generic sample point after " + std::to_string(ctx.samples) +
                          " attempts");
}

/// spread_dim - gauss_dimension.
inline std::size_t gauss_deficiency(const ParametricScroll& x, const Context& ctx = {}) {
    return spread_dim(x, ctx) - gauss_dimension(x, ctx);
}

} // namespace scrolls
