#pragma once

#include "scroll.hpp"

#include <optional>
#include <vector>

namespace scrolls {

/// Chain of scrolls over one base, each member's derived scroll spanning the next.
struct GaussianFlag {
    std::vector<ParametricScroll> members; // bottom first, strictly nested
    std::size_t pivot_index = 0;           // position of the scroll the flag was grown from
    std::size_t index_m = 0;               // antiderived steps below the pivot
    std::optional<std::size_t> coindex_l;  // derived steps to a member whose spread is linear
    std::vector<std::size_t> osc_dims;     // fibre dimension of each member
    bool bottom_is_constant = false;       // bottom member is a fixed linear space (cone vertex)
    bool pivot_stationary = true;          // false: no upward extension was possible

    const ParametricScroll& bottom() const { return members.front(); }
    const ParametricScroll& top() const { return members.back(); }
    const ParametricScroll& pivot() const { return members[pivot_index]; }
};

/// Spread equals its own linear span.
inline bool spreads_onto_linear_space(const ParametricScroll& x, const Context& ctx = {}) {
    return spread_dim(x, ctx) + 1 == linear_span(x, ctx).rows();
}

/// Maximal Gaussian flag through `x`: antiderived steps down to the empty
/// scroll or a constant bottom, derived steps up to the first member whose
/// spread is a linear subspace.
///
/// A non-stationary `x` is accepted as the top member: the downward part is
/// still defined, but no derived scroll exists and `coindex_l` stays empty.
inline GaussianFlag maximal_flag(const ParametricScroll& x, const Context& ctx = {}) {
    GaussianFlag flag;
    std::vector<ParametricScroll> down;
    ParametricScroll cur = x;
    for (;;) {
        if (is_constant_rowspan(cur.classifying(), ctx)) {
            flag.bottom_is_constant = true;
            break;
        }
        auto below = antiderived_unchecked(cur, ctx);
        if (!below) break;
        if (below->fibre_dim() >= cur.fibre_dim())
            throw VerificationError("maximal_flag: antiderived scroll is not a proper subscroll");
        down.push_back(*below);
        cur = *below;
    }
    flag.index_m = down.size();
    for (auto it = down.rbegin(); it != down.rend(); ++it) flag.members.push_back(*it);
    flag.pivot_index = flag.members.size();
    flag.members.push_back(x);

    flag.pivot_stationary = is_stationary(x, ctx);
    if (flag.pivot_stationary) {
        cur = x;
        std::size_t steps = 0;
        for (;;) {
            if (spreads_onto_linear_space(cur, ctx)) {
                flag.coindex_l = steps;
                break;
            }
            ParametricScroll up = derived(cur, ctx);
            flag.members.push_back(up);
            cur = up;
            ++steps;
            if (!is_stationary(cur, ctx)) break;
        }
    }
    for (const auto& m : flag.members) flag.osc_dims.push_back(m.fibre_dim());
    return flag;
}

struct ConeTest {
    bool is_cone = false;
    std::optional<QMatrix> vertex; // constant basis of the vertex span
};

/// Cone iff the bottom of the maximal flag is a fixed linear space. A constant
/// scroll is its own vertex.
inline ConeTest is_cone(const ParametricScroll& x, const Context& ctx = {}) {
    if (!is_stationary(x, ctx)) throw PreconditionError("is_cone: scroll is not stationary");
    GaussianFlag flag = maximal_flag(x, ctx);
    ConeTest out;
    if (!flag.bottom_is_constant) return out;
    out.is_cone = true;
    const PolyMatrix& b = flag.bottom().classifying();
    auto rng = ctx.rng("cone_vertex");
    for (unsigned attempt = 0; attempt < std::max(1u, ctx.samples); ++attempt) {
        QMatrix q = b.evaluate(random_point(rng, b.vars()->size()));
        if (q.rank() == b.rows()) {
            out.vertex = q.row_basis();
            return out;
        }
    }
    throw DegenerateError("is_cone: no generic sample point for the vertex");
}

} // namespace scrolls
