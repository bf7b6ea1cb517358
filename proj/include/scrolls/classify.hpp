#pragma once

#include "flag.hpp"
#include "gauss.hpp"
#include "scroll.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scrolls {

enum class Verdict { Cone, InflatedTangentScroll, CurveOsculating, DualOfDevelopable, Unclassified };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Cone: return "Cone";
    case Verdict::InflatedTangentScroll: return "InflatedTangentScroll";
    case Verdict::CurveOsculating: return "CurveOsculating";
    case Verdict::DualOfDevelopable: return "DualOfDevelopable";
    case Verdict::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

struct ScrollParameters {
    std::size_t g = 0, k = 0, N = 0;
    std::size_t spread_dim = 0, gauss_dim = 0;
    std::size_t index_m = 0;
    std::optional<std::size_t> coindex_l;
    bool is_filling = false;
    bool is_degenerate = false;
};

struct ClassificationReport {
    Verdict verdict = Verdict::Unclassified;
    std::optional<PolyMatrix> witness; // vertex span, curve (first row) and constant rows, or a section
    ScrollParameters parameters;
    std::optional<std::size_t> curve_order;   // k' for decompose_g1
    std::optional<std::size_t> constant_count; // constant directions for decompose_g1
};

inline ScrollParameters scroll_parameters(const ParametricScroll& x, const Context& ctx = {}) {
    ScrollParameters p;
    p.g = x.base_dim();
    p.k = x.fibre_dim();
    p.N = x.ambient_dim();
    p.spread_dim = spread_dim(x, ctx);
    p.gauss_dim = gauss_dimension(x, ctx);
    p.is_filling = p.spread_dim == p.N;
    if (is_stationary(x, ctx)) {
        GaussianFlag flag = maximal_flag(x, ctx);
        p.index_m = flag.index_m;
        p.coindex_l = flag.coindex_l;
        p.is_degenerate = !is_nondegenerate(x, ctx);
    } else {
        p.index_m = maximal_flag(x, ctx).index_m;
    }
    return p;
}

/// Cone or inflated tangent scroll when the Gauss dimension g' satisfies
/// g'(g'+1) <= spread_dim.
inline ClassificationReport classify_small(const ParametricScroll& x, const Context& ctx = {}) {
    if (!is_stationary(x, ctx)) throw PreconditionError("classify_small: scroll is not stationary");
    ClassificationReport rep;
    rep.parameters = scroll_parameters(x, ctx);
    const std::size_t gd = rep.parameters.gauss_dim, n = rep.parameters.spread_dim;
    if (gd * (gd + 1) > n)
        throw PreconditionError("classify_small: hypothesis g'(g'+1) <= n fails (g' = " + std::to_string(gd) +
                                ", n = " + std::to_string(n) + ")");
    auto edge = antiderived(x, ctx);
    if (!edge) throw VerificationError("classify_small: antiderived scroll is empty under the hypothesis");
    ConeTest cone = is_cone(x, ctx);
    if (cone.is_cone) {
        rep.verdict = Verdict::Cone;
        rep.witness = PolyMatrix::from_constant(x.base_vars(), *cone.vertex);
    } else {
        PolyMatrix p = edge->classifying().row(0).embed(x.base_vars());
        PolyMatrix span = p;
        for (std::size_t i = 0; i < x.base_dim(); ++i) span = vstack(span, p.differentiate(i));
        if (!rowspan_contains(x.classifying(), span, ctx.limits))
            throw VerificationError("classify_small: witness section does not osculate inside the fibres");
        rep.verdict = Verdict::InflatedTangentScroll;
        rep.witness = p;
    }
    if (!rowspan_contains(x.classifying(), *rep.witness, ctx.limits))
        throw VerificationError("classify_small: witness does not lie in the fibres");
    return rep;
}

/// Constant vectors lying in every fibre, as a row basis (RREF).
inline QMatrix constant_part(const ParametricScroll& x, const Context& ctx = {}) {
    PolyMatrix annihilator = kernel_basis(x.classifying(), ctx.limits);
    const std::size_t n1 = x.ambient_dim() + 1;
    if (annihilator.rows() == 0) return QMatrix::identity(n1);
    // y . Q(t)^T = 0 identically iff y pairs to zero with every monomial coefficient of Q
    std::map<Monomial, QMatrix, GrlexLess> coeffs;
    for (std::size_t r = 0; r < annihilator.rows(); ++r)
        for (std::size_t c = 0; c < n1; ++c)
            for (const auto& [m, v] : annihilator(r, c).terms()) {
                auto [it, fresh] = coeffs.try_emplace(m, QMatrix(annihilator.rows(), n1));
                it->second(r, c) = v;
            }
    QMatrix all(0, n1);
    for (const auto& [m, q] : coeffs) all = vstack(all, q);
    QMatrix basis = all.kernel();
    return basis.rows() == 0 ? QMatrix(0, n1) : basis.row_basis();
}

/// Writes a stationary scroll over a curve as the span of p, p', ..., p^(k')
/// and constant vectors.
inline ClassificationReport decompose_g1(const ParametricScroll& x, const Context& ctx = {}) {
    if (x.base_dim() != 1) throw PreconditionError("decompose_g1: base must be a curve (g = 1)");
    if (!is_stationary(x, ctx)) throw PreconditionError("decompose_g1: scroll is not stationary");
    ClassificationReport rep;
    rep.parameters = scroll_parameters(x, ctx);
    if (rep.parameters.gauss_dim != 1) throw PreconditionError("decompose_g1: Gauss dimension is not 1");

    const VarsPtr& vars = x.base_vars();
    QMatrix c = constant_part(x, ctx);
    const std::size_t nc = c.rows(), k1 = x.fibre_dim() + 1;
    if (nc >= k1) throw VerificationError("decompose_g1: every fibre direction is constant");

    // project away the constant part: y -> y . P with ker P = span(c)
    QMatrix proj = nc == 0 ? QMatrix::identity(x.ambient_dim() + 1) : c.kernel().transpose();
    PolyMatrix s = x.classifying();
    PolyMatrix projected = s * PolyMatrix::from_constant(vars, proj);
    auto rows = independent_rows(projected, k1 - nc, ctx, "decompose_g1");
    PolyMatrix sel = s.select_rows(rows);
    ParametricScroll quotient = ParametricScroll::unchecked(projected.select_rows(rows));

    ParametricScroll cur = quotient;
    std::size_t order = 0;
    while (cur.fibre_dim() > 0) {
        auto below = antiderived_unchecked(cur, ctx);
        if (!below || below->fibre_dim() + 1 != cur.fibre_dim())
            throw VerificationError("decompose_g1: quotient is not an osculating scroll of a curve");
        cur = *below;
        ++order;
    }
    // lift the curve: a . projected_rows + b . curve = 0
    PolyMatrix rel = kernel_basis(vstack(quotient.classifying(), cur.classifying()).transpose(), ctx.limits);
    if (rel.rows() != 1 || rel(0, k1 - nc).is_zero()) throw VerificationError("decompose_g1: cannot lift the curve");
    PolyMatrix a(vars, 1, k1 - nc);
    for (std::size_t j = 0; j < k1 - nc; ++j) a(0, j) = rel(0, j);
    PolyMatrix p = normalize_rows(a * sel);

    PolyMatrix rebuilt = p;
    PolyMatrix d = p;
    for (std::size_t i = 0; i < order; ++i) {
        d = d.differentiate(0);
        rebuilt = vstack(rebuilt, d);
    }
    PolyMatrix constants = PolyMatrix::from_constant(vars, c);
    if (nc > 0) rebuilt = vstack(rebuilt, constants);
    if (generic_rank(rebuilt, ctx.limits) != k1 || !rowspan_equal(rebuilt, s, ctx.limits))
        throw VerificationError("decompose_g1: reassembled scroll differs from the input");

    rep.verdict = nc == 0 ? Verdict::CurveOsculating : Verdict::Cone;
    rep.witness = nc == 0 ? p : vstack(p, constants);
    rep.curve_order = order;
    rep.constant_count = nc;
    return rep;
}

/// Dispatch: curve bases through decompose_g1, otherwise the small Gauss
/// dimension theorem when its hypothesis holds.
inline ClassificationReport classify(const ParametricScroll& x, const Context& ctx = {}) {
    ClassificationReport rep;
    if (!is_stationary(x, ctx)) {
        rep.parameters = scroll_parameters(x, ctx);
        return rep;
    }
    rep.parameters = scroll_parameters(x, ctx);
    const ScrollParameters& p = rep.parameters;
    if (x.base_dim() == 1 && p.gauss_dim == 1) return decompose_g1(x, ctx);
    if (p.gauss_dim * (p.gauss_dim + 1) <= p.spread_dim) return classify_small(x, ctx);
    return rep;
}

} // namespace scrolls
