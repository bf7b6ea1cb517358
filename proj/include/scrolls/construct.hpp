#pragma once

#include "gauss.hpp"
#include "scroll.hpp"

#include <map>
#include <string>
#include <vector>

namespace scrolls {

namespace detail {

/// All partial derivatives of order exactly `order`, as rows.
inline PolyMatrix partials_of_order(const PolyMatrix& m, unsigned order) {
    std::vector<PolyMatrix> level{m};
    const std::size_t g = m.vars()->size();
    // derivatives indexed by nondecreasing variable sequences to avoid repeats
    std::vector<std::size_t> last{0};
    for (unsigned o = 0; o < order; ++o) {
        std::vector<PolyMatrix> next;
        std::vector<std::size_t> next_last;
        for (std::size_t i = 0; i < level.size(); ++i)
            for (std::size_t v = last[i]; v < g; ++v) {
                next.push_back(level[i].differentiate(v));
                next_last.push_back(v);
            }
        level = std::move(next);
        last = std::move(next_last);
    }
    PolyMatrix out(m.vars(), 0, m.cols());
    for (const auto& p : level) out = vstack(out, p);
    return out;
}

inline std::string rank_collapse(const std::string& op, std::size_t achieved, std::size_t expected) {
    return op + ": rank collapse (achieved rank " + std::to_string(achieved) + ", expected " +
           std::to_string(expected) + ")";
}

} // namespace detail

/// Scroll of r-th osculating spaces of the parametrized variety `map`: the
/// span of all partials of order at most r.
inline ParametricScroll osculating_scroll(const PolyMatrix& map, unsigned r, const Context& ctx = {}) {
    if (r > map.cols()) throw InvalidInput("osculating_scroll: order exceeds the ambient dimension");
    PolyMatrix stack = map;
    std::size_t rank = generic_rank(stack, ctx.limits);
    for (unsigned o = 1; o <= r; ++o) {
        stack = vstack(stack, detail::partials_of_order(map, o));
        std::size_t next = generic_rank(stack, ctx.limits);
        if (next == rank)
            throw PreconditionError("osculation saturates below r (order " + std::to_string(o) + " adds nothing)");
        rank = next;
    }
    auto rows = independent_rows(stack, rank, ctx, "osculating_scroll");
    return ParametricScroll::make(normalize_rows(stack.select_rows(rows)), "", ctx);
}

inline ParametricScroll osculating_scroll(const ParametricScroll& y, unsigned r, const Context& ctx = {}) {
    return osculating_scroll(y.classifying(), r, ctx);
}

/// Join over the product of the bases. Clashing base variable names are
/// suffixed with _1 and _2.
inline ParametricScroll join(const ParametricScroll& x1, const ParametricScroll& x2, const Context& ctx = {}) {
    if (x1.ambient_dim() != x2.ambient_dim()) throw InvalidInput("join: ambient dimensions differ");
    VarList v1 = *x1.base_vars(), v2 = *x2.base_vars();
    bool clash = false;
    for (const auto& a : v1)
        for (const auto& b : v2)
            if (a == b) clash = true;
    std::map<std::string, std::string> r1, r2;
    if (clash) {
        for (auto& a : v1) {
            r1[a] = a + "_1";
            a += "_1";
        }
        for (auto& b : v2) {
            r2[b] = b + "_2";
            b += "_2";
        }
    }
    VarList all = v1;
    all.insert(all.end(), v2.begin(), v2.end());
    VarsPtr vars = make_vars(all);
    auto move_to = [&](const ParametricScroll& x, const std::map<std::string, std::string>& ren) {
        if (ren.empty()) return x.classifying().embed(vars);
        std::map<std::string, MultiPoly> images;
        for (const auto& [from, to] : ren) images.emplace(from, MultiPoly::variable(vars, to));
        return x.classifying().substitute(images, vars);
    };
    PolyMatrix stacked = vstack(move_to(x1, r1), move_to(x2, r2));
    std::size_t expected = x1.fibre_dim() + x2.fibre_dim() + 2;
    std::size_t rank = generic_rank(stacked, ctx.limits);
    if (rank != expected) throw PreconditionError(detail::rank_collapse("join", rank, expected));
    return ParametricScroll::make(stacked, "", ctx);
}

/// Cone over `x` with the constant vertex span given by the rows of `vertex`.
inline ParametricScroll cone(const QMatrix& vertex, const ParametricScroll& x, const Context& ctx = {}) {
    if (vertex.cols() != x.ambient_dim() + 1) throw InvalidInput("cone: vertex has the wrong number of coordinates");
    if (vertex.rank() != vertex.rows()) throw InvalidInput("cone: vertex rows are dependent");
    ParametricScroll v = ParametricScroll::make(PolyMatrix::from_constant(make_vars({}), vertex), "", ctx);
    return join(v, x, ctx);
}

/// Enlarge each fibre of the stationary scroll `x0` by extra sections over the
/// same base.
inline ParametricScroll inflate(const ParametricScroll& x0, const PolyMatrix& sections, const Context& ctx = {}) {
    if (!is_stationary(x0, ctx)) throw PreconditionError("inflate: base scroll is not stationary");
    if (sections.cols() != x0.ambient_dim() + 1) throw InvalidInput("inflate: section has the wrong number of coordinates");
    PolyMatrix stacked = vstack(x0.classifying(), sections.embed(x0.base_vars()));
    std::size_t expected = x0.fibre_dim() + 1 + sections.rows();
    std::size_t rank = generic_rank(stacked, ctx.limits);
    if (rank != expected) throw PreconditionError(detail::rank_collapse("inflate", rank, expected));
    ParametricScroll x = ParametricScroll::make(stacked, "", ctx);
    if (gauss_deficiency(x, ctx) < x0.fibre_dim())
        throw VerificationError("inflate: Gauss deficiency dropped below the fibre dimension of the base scroll");
    return x;
}

/// Pull back along t_i := gamma_i(u) for the variables of `curve`'s ring.
inline ParametricScroll base_change(const ParametricScroll& x, const std::map<std::string, MultiPoly>& gamma,
                                    const VarsPtr& target, const Context& ctx = {}) {
    bool moving = false;
    for (const auto& v : *x.base_vars()) {
        auto it = gamma.find(v);
        if (it == gamma.end()) throw InvalidInput("base_change: no image given for base variable '" + v + "'");
        if (!it->second.is_constant()) moving = true;
    }
    if (!moving) throw InvalidInput("base_change: substitution is constant");
    PolyMatrix pulled = x.classifying().substitute(gamma, target);
    std::size_t rank = generic_rank(pulled, ctx.limits);
    if (rank != x.fibre_dim() + 1)
        throw PreconditionError(detail::rank_collapse("base_change", rank, x.fibre_dim() + 1));
    return ParametricScroll::make(pulled, "", ctx);
}

/// The mixed second partial of the surface lies in its tangent span.
inline bool is_conjugate(const PolyMatrix& phi, const Context& ctx = {}) {
    if (phi.rows() != 1 || phi.vars()->size() != 2) throw InvalidInput("is_conjugate: expected a surface parametrization");
    PolyMatrix tangent = vstack(vstack(phi, phi.differentiate(0)), phi.differentiate(1));
    return rowspan_contains(tangent, phi.differentiate(0).differentiate(1), ctx.limits);
}

struct EigenscrollDiagram {
    ParametricScroll x1, x2, y1, y2;
};

/// Tangent line scrolls along the two conjugate directions of a surface in P4,
/// with their derived scrolls.
inline EigenscrollDiagram eigenscroll_diagram(const PolyMatrix& phi, const Context& ctx = {}) {
    if (phi.rows() != 1 || phi.vars()->size() != 2 || phi.cols() != 5)
        throw InvalidInput("eigenscroll_diagram: expected a surface in P4 over two parameters");
    if (!is_conjugate(phi, ctx))
        throw PreconditionError("eigenscroll_diagram: coordinates are not conjugate; supply a conjugate parametrization");
    PolyMatrix p1 = phi.differentiate(0), p2 = phi.differentiate(1);
    PolyMatrix tangent = vstack(vstack(phi, p1), p2);
    PolyMatrix y1 = vstack(tangent, p1.differentiate(0)), y2 = vstack(tangent, p2.differentiate(1));
    if (generic_rank(y1, ctx.limits) != 4 || generic_rank(y2, ctx.limits) != 4)
        throw PreconditionError("eigenscroll_diagram: second-order partials do not span a hyperplane");
    EigenscrollDiagram d{ParametricScroll::unchecked(vstack(phi, p2), "X1"),
                         ParametricScroll::unchecked(vstack(phi, p1), "X2"),
                         ParametricScroll::unchecked(y1, "Y1"), ParametricScroll::unchecked(y2, "Y2")};
    if (!same_scroll(derived(d.x2, ctx), d.y1, ctx) || !same_scroll(derived(d.x1, ctx), d.y2, ctx))
        throw VerificationError("eigenscroll_diagram: derived scrolls do not match");
    return d;
}

} // namespace scrolls
