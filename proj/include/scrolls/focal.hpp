#pragma once

#include "gauss.hpp"
#include "scroll.hpp"
#include "univariate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace scrolls {

enum class SplitVerdict { Split, NonSplit, Unknown };

inline const char* to_string(SplitVerdict v) {
    switch (v) {
    case SplitVerdict::Split: return "split";
    case SplitVerdict::NonSplit: return "non-split";
    case SplitVerdict::Unknown: return "unknown";
    }
    return "unknown";
}

/// Outcome of the split-focus search at one base point.
struct SplitFocus {
    SplitVerdict verdict = SplitVerdict::Unknown;
    std::vector<Rational> base_point;
    std::vector<std::vector<Rational>> forms;      // f_a on x0..xk, first nonzero coefficient 1
    std::vector<std::vector<Rational>> directions; // base direction v_a with v_a * L = f_a c_a
    std::vector<std::vector<Rational>> columns;    // c_a as a vector of the ambient space
    std::optional<std::string> advisory;           // floating-point remark, never an exact claim
};

struct FocalData {
    PolyMatrix focal_matrix;   // g x (N-k), linear in the fibre coordinates
    std::size_t image_rank = 0;
    bool stationary = false;
    bool is_hypersurface = false;
    std::size_t degree_in_x = 0;
    std::optional<MultiPoly> focal_polynomial;
    std::optional<SplitFocus> split;
};

/// Row a is x * dS/dt_a paired with the annihilator of the fibre, i.e. the
/// normal component of the derivative of the spreading map along t_a.
inline PolyMatrix focal_matrix(const ParametricScroll& x, const Context& ctx = {}) {
    VarsPtr vars = total_space_vars(x);
    const std::size_t g = x.base_dim(), k1 = x.fibre_dim() + 1;
    PolyMatrix annihilator = kernel_basis(x.classifying(), ctx.limits).embed(vars);
    PolyMatrix s = x.classifying().embed(vars);
    PolyMatrix out(vars, 0, annihilator.rows());
    for (std::size_t a = 0; a < g; ++a) {
        PolyMatrix d = s.differentiate(a);
        std::vector<MultiPoly> moved(s.cols(), MultiPoly(vars));
        for (std::size_t j = 0; j < k1; ++j) {
            MultiPoly xj = MultiPoly::variable(vars, (*vars)[g + j]);
            for (std::size_t c = 0; c < s.cols(); ++c)
                if (!d(j, c).is_zero()) moved[c] += xj * d(j, c);
        }
        std::vector<MultiPoly> row(annihilator.rows(), MultiPoly(vars));
        for (std::size_t q = 0; q < annihilator.rows(); ++q)
            for (std::size_t c = 0; c < s.cols(); ++c)
                if (!moved[c].is_zero() && !annihilator(q, c).is_zero()) row[q] += moved[c] * annihilator(q, c);
        out.append_row(row);
    }
    return out;
}

namespace detail {

inline std::vector<Rational> normalize_leading(std::vector<Rational> v) {
    for (const auto& c : v) {
        if (c == 0) continue;
        Rational inv = 1 / c;
        for (auto& w : v) w *= inv;
        break;
    }
    return v;
}

inline bool is_zero_vector(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

/// Base point followed by fibre coordinates.
inline std::vector<Rational> total_point(const std::vector<Rational>& t, const std::vector<Rational>& x) {
    std::vector<Rational> p = t;
    p.insert(p.end(), x.begin(), x.end());
    return p;
}

/// Generic base point: the fibre has full rank there.
inline std::vector<Rational> generic_base_point(const ParametricScroll& x, const Context& ctx, std::string_view tag) {
    auto rng = ctx.rng(tag);
    for (unsigned attempt = 0; attempt < std::max(1u, ctx.samples); ++attempt) {
        auto t = random_point(rng, x.base_dim());
        if (x.classifying().evaluate(t).rank() == x.fibre_dim() + 1) return t;
    }
    throw DegenerateError(std::string(tag) + ": no generic base point found");
}

/// gcd of all r x r minors of the focal matrix along the line a + s b in a
/// fibre over t.
inline UniPoly restricted_minor_gcd(const PolyMatrix& f, std::size_t g, const std::vector<Rational>& t,
                                    const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t r) {
    VarsPtr line = make_vars({"s"});
    MultiPoly s = MultiPoly::variable(line, "s");
    std::map<std::string, MultiPoly> images;
    const VarList& names = *f.vars();
    for (std::size_t i = 0; i < g; ++i) images.emplace(names[i], MultiPoly::constant(line, t[i]));
    for (std::size_t j = 0; j < a.size(); ++j)
        images.emplace(names[g + j], MultiPoly::constant(line, a[j]) + s * b[j]);
    PolyMatrix m = f.substitute(images, line);
    UniPoly acc;
    bool done = false;
    for_each_combination(m.rows(), r, [&](const std::vector<std::size_t>& rows) {
        if (done) return;
        PolyMatrix sub = m.select_rows(rows);
        for_each_combination(m.cols(), r, [&](const std::vector<std::size_t>& cols) {
            if (done) return;
            UniPoly d = UniPoly::from_multi(determinant(sub.select_cols(cols)), 0);
            acc = gcd(acc, d);
            if (acc.degree() == 0) done = true;
        });
    });
    return acc;
}

/// Group terms by their exponent in the fibre variables (indices >= g).
inline std::map<Monomial, MultiPoly> fibre_coefficients(const MultiPoly& p, std::size_t g) {
    std::map<Monomial, MultiPoly> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial xs(m.begin() + static_cast<std::ptrdiff_t>(g), m.end());
        Monomial ts = m;
        std::fill(ts.begin() + static_cast<std::ptrdiff_t>(g), ts.end(), 0);
        auto [it, fresh] = out.try_emplace(xs, MultiPoly(p.vars()));
        it->second += MultiPoly::monomial(p.vars(), ts, c);
    }
    return out;
}

/// Strip factors depending on the base only, as far as that is possible without
/// multivariate factorization: monomial and integer content always, a common
/// univariate gcd when the base is a curve, otherwise the smallest fibre
/// coefficient when it divides all others.
inline MultiPoly normalize_focal(MultiPoly p, std::size_t g) {
    if (p.is_zero()) return p;
    Monomial content = p.monomial_content();
    std::fill(content.begin() + static_cast<std::ptrdiff_t>(g), content.end(), 0);
    p = p.divide_monomial(content);
    auto coeffs = fibre_coefficients(p, g);
    MultiPoly divisor = MultiPoly::constant(p.vars(), 1);
    if (g == 1) {
        UniPoly acc;
        for (const auto& [m, c] : coeffs) acc = gcd(acc, UniPoly::from_multi(c, 0));
        if (acc.degree() > 0) {
            divisor = MultiPoly(p.vars());
            for (std::size_t i = 0; i < acc.coeffs().size(); ++i) {
                Monomial m(p.nvars(), 0);
                m[0] = static_cast<std::uint32_t>(i);
                if (acc.coeffs()[i] != 0) divisor += MultiPoly::monomial(p.vars(), m, acc.coeffs()[i]);
            }
        }
    } else if (g > 1) {
        const MultiPoly* smallest = nullptr;
        for (const auto& [m, c] : coeffs)
            if (!smallest || c.terms().size() < smallest->terms().size() ||
                (c.terms().size() == smallest->terms().size() && c.degree() < smallest->degree()))
                smallest = &c;
        bool divides = smallest && !smallest->is_constant();
        for (const auto& [m, c] : coeffs)
            if (divides && !c.divide_exact(*smallest)) divides = false;
        if (divides) divisor = *smallest;
    }
    if (!divisor.is_constant()) p = *p.divide_exact(divisor);
    return primitive_part(p);
}

inline std::vector<std::vector<Rational>> rows_of(const QMatrix& m) {
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
    return out;
}

/// Floating-point look at the eigen-directions when some are irrational.
inline std::string numeric_split_advisory(const QMatrix& a, const std::vector<QMatrix>& slices) {
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXcd at(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            at(i, j) = a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)).get_d();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(at);
    if (solver.info() != Eigen::Success) return "numerical check failed to converge";
    const auto k1 = static_cast<Eigen::Index>(slices.size());
    const auto q = static_cast<Eigen::Index>(slices.front().cols());
    std::size_t rank_one = 0;
    for (Eigen::Index e = 0; e < n; ++e) {
        Eigen::VectorXcd v = solver.eigenvectors().col(e);
        Eigen::MatrixXcd c(k1, q);
        for (Eigen::Index j = 0; j < k1; ++j)
            for (Eigen::Index col = 0; col < q; ++col) {
                std::complex<double> acc = 0;
                for (Eigen::Index i = 0; i < n; ++i)
                    acc += v(i) * slices[static_cast<std::size_t>(j)](static_cast<std::size_t>(i),
                                                                       static_cast<std::size_t>(col)).get_d();
                c(j, col) = acc;
            }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c);
        const auto& sv = svd.singularValues();
        if (sv.size() < 2 || sv(1) <= 1e-9 * sv(0)) ++rank_one;
    }
    if (rank_one == static_cast<std::size_t>(n))
        return "numerical check (tolerance 1e-9): eigen-directions are irrational but give rank-one rows; "
               "the focus appears to split over an extension of Q";
    return "numerical check (tolerance 1e-9): " + std::to_string(rank_one) + " of " + std::to_string(n) +
           " eigen-directions give rank-one rows; the focus does not appear to split";
}

/// Split-focus search at base point t for a stationary scroll whose focal
/// image has rank g.
inline SplitFocus split_focus_at(const ParametricScroll& x, const PolyMatrix& f, const std::vector<Rational>& t,
                                 const Context& ctx) {
    const std::size_t g = x.base_dim(), k1 = x.fibre_dim() + 1;
    SplitFocus out;
    out.base_point = t;
    if (k1 == 1 && g > 1) {
        // every direction gives a multiple of x0: the hyperplanes coincide
        out.verdict = SplitVerdict::NonSplit;
        return out;
    }
    std::vector<Rational> zero(k1, Rational(0));
    std::vector<QMatrix> slices;
    for (std::size_t j = 0; j < k1; ++j) slices.push_back(f.differentiate(g + j).evaluate(total_point(t, zero)));
    auto at = [&](const std::vector<Rational>& xs) {
        QMatrix m(g, f.cols());
        for (std::size_t j = 0; j < k1; ++j)
            for (std::size_t r = 0; r < g; ++r)
                for (std::size_t c = 0; c < f.cols(); ++c) m(r, c) += xs[j] * slices[j](r, c);
        return m;
    };
    std::vector<PolyMatrix> ds;
    for (std::size_t a = 0; a < g; ++a) ds.push_back(x.classifying().differentiate(a));

    auto rng = ctx.rng("split_focus");
    for (unsigned attempt = 0; attempt < std::max(1u, ctx.samples); ++attempt) {
        auto x1 = random_point(rng, k1), x2 = random_point(rng, k1);
        QMatrix m1full = at(x1);
        QMatrix echelon = m1full;
        auto pivots = echelon.rref_in_place();
        if (pivots.size() != g) continue;
        QMatrix m1 = columns(m1full, pivots), m2 = columns(at(x2), pivots);
        auto m2inv = m2.inverse();
        if (!m2inv) continue;
        QMatrix a = m1 * *m2inv;
        UniPoly p = characteristic_polynomial(a);
        if (squarefree_part(p).degree() < p.degree()) continue;
        auto roots = rational_roots(p);
        if (roots.size() < g) {
            out.advisory = numeric_split_advisory(a, slices);
            out.verdict = (roots.empty() && (p.degree() == 2 || p.degree() == 3)) ? SplitVerdict::NonSplit
                                                                                   : SplitVerdict::Unknown;
            return out;
        }
        struct Piece {
            std::vector<Rational> form, direction, column;
        };
        std::vector<Piece> pieces;
        for (const auto& lambda : roots) {
            QMatrix pencil = m1;
            for (std::size_t r = 0; r < g; ++r)
                for (std::size_t c = 0; c < g; ++c) pencil(r, c) -= lambda * m2(r, c);
            QMatrix left = pencil.transpose().kernel();
            if (left.rows() != 1) throw VerificationError("split_focus: eigenspace is not one-dimensional");
            std::vector<Rational> v = normalize_leading(left.row(0));
            QMatrix c(k1, f.cols());
            for (std::size_t j = 0; j < k1; ++j)
                for (std::size_t col = 0; col < f.cols(); ++col)
                    for (std::size_t r = 0; r < g; ++r) c(j, col) += v[r] * slices[j](r, col);
            if (c.rank() != 1) {
                out.verdict = SplitVerdict::NonSplit;
                return out;
            }
            Piece piece;
            piece.direction = v;
            QMatrix ct = c.transpose();
            for (std::size_t col = 0; col < ct.rows() && piece.form.empty(); ++col)
                if (!is_zero_vector(ct.row(col))) piece.form = normalize_leading(ct.row(col));
            std::size_t lead = 0;
            while (piece.form[lead] == 0) ++lead;
            QMatrix moved(1, x.ambient_dim() + 1);
            for (std::size_t a2 = 0; a2 < g; ++a2) {
                QMatrix d = ds[a2].evaluate(t);
                for (std::size_t col = 0; col < d.cols(); ++col) moved(0, col) += v[a2] * d(lead, col);
            }
            piece.column = moved.row(0);
            pieces.push_back(std::move(piece));
        }
        std::sort(pieces.begin(), pieces.end(), [](const Piece& l, const Piece& r) { return l.form < r.form; });
        for (std::size_t i = 1; i < pieces.size(); ++i)
            if (pieces[i].form == pieces[i - 1].form) {
                out.verdict = SplitVerdict::NonSplit;
                return out;
            }
        out.verdict = SplitVerdict::Split;
        for (auto& piece : pieces) {
            out.forms.push_back(piece.form);
            out.directions.push_back(piece.direction);
            out.columns.push_back(piece.column);
        }
        return out;
    }
    out.advisory = "repeated eigenvalues at every sample";
    return out;
}

} // namespace detail

/// Focal matrix, focal hypersurface degree on a general fibre, and when the
/// scroll is stationary with a g-dimensional focal image, the focal
/// polynomial and the split-focus search.
inline FocalData focal_data(const ParametricScroll& x, const Context& ctx = {}) {
    FocalData fd;
    fd.focal_matrix = focal_matrix(x, ctx);
    fd.stationary = is_stationary(x, ctx);
    const std::size_t g = x.base_dim(), k1 = x.fibre_dim() + 1;
    if (g == 0 || fd.focal_matrix.cols() == 0) return fd;
    fd.image_rank = sampled_rank(fd.focal_matrix, ctx, "focal_rank");
    if (fd.image_rank == 0) return fd;

    auto rng = ctx.rng("focal_degree");
    std::optional<std::size_t> degree;
    std::vector<Rational> base;
    for (unsigned attempt = 0; attempt < std::max(1u, ctx.samples); ++attempt) {
        auto t = random_point(rng, g);
        if (x.classifying().evaluate(t).rank() != k1) continue;
        auto a = random_point(rng, k1), b = random_point(rng, k1);
        UniPoly h = detail::restricted_minor_gcd(fd.focal_matrix, g, t, a, b, fd.image_rank);
        if (h.is_zero()) continue;
        auto d = static_cast<std::size_t>(h.degree());
        if (!degree || d < *degree) degree = d;
        if (base.empty()) base = t;
    }
    if (!degree) throw DegenerateError("focal_data: no generic sample point found");
    fd.degree_in_x = *degree;
    fd.is_hypersurface = fd.degree_in_x > 0;

    if (!fd.stationary || fd.image_rank != g) return fd;

    std::vector<Rational> zero(k1, Rational(0));
    QMatrix image(0, fd.focal_matrix.cols());
    for (std::size_t i = 0; i < k1 + 1; ++i)
        image = vstack(image, fd.focal_matrix.evaluate(detail::total_point(base, random_point(rng, k1))));
    if (image.rank() != g) throw VerificationError("focal_data: focal image is not a constant subbundle");

    std::optional<MultiPoly> best;
    detail::for_each_combination(fd.focal_matrix.cols(), g, [&](const std::vector<std::size_t>& cols) {
        MultiPoly d = determinant(fd.focal_matrix.select_cols(cols));
        if (d.is_zero()) return;
        d = detail::normalize_focal(d, g);
        if (!best || d.degree() < best->degree() ||
            (d.degree() == best->degree() && d.terms().size() < best->terms().size()))
            best = d;
    });
    fd.focal_polynomial = best;
    if (fd.is_hypersurface) fd.split = detail::split_focus_at(x, fd.focal_matrix, base, ctx);
    return fd;
}

/// Focal hypersurface degree equals the base dimension.
inline bool stationarity_by_focus(const ParametricScroll& x, const Context& ctx = {}) {
    FocalData fd = focal_data(x, ctx);
    if (!fd.is_hypersurface) throw PreconditionError("stationarity_by_focus: focal locus not a hypersurface");
    return fd.degree_in_x == x.base_dim();
}

/// Split-focus search at a generic base point.
inline SplitFocus split_focus_detect(const ParametricScroll& x, const Context& ctx = {}) {
    if (!is_stationary(x, ctx)) throw PreconditionError("split_focus_detect: scroll is not stationary");
    PolyMatrix f = focal_matrix(x, ctx);
    if (f.cols() == 0 || sampled_rank(f, ctx, "focal_rank") != x.base_dim())
        throw PreconditionError("split_focus_detect: focal locus not a hypersurface");
    return detail::split_focus_at(x, f, detail::generic_base_point(x, ctx, "split_focus_point"), ctx);
}

/// Two polynomials agree up to a factor depending on the base variables only.
inline bool same_up_to_base_factor(const MultiPoly& p, const MultiPoly& q, std::size_t g) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    auto cp = detail::fibre_coefficients(p, g), cq = detail::fibre_coefficients(q.embed(p.vars()), g);
    if (cp.size() != cq.size()) return false;
    auto ip = cp.begin(), iq = cq.begin();
    for (; ip != cp.end(); ++ip, ++iq)
        if (ip->first != iq->first) return false;
    const MultiPoly& p0 = cp.begin()->second;
    const MultiPoly& q0 = cq.begin()->second;
    for (ip = cp.begin(), iq = cq.begin(); ip != cp.end(); ++ip, ++iq)
        if (ip->second * q0 != iq->second * p0) return false;
    return true;
}

/// Graph scroll of the split-focus normal form: fibre coordinates x, ambient
/// point (x, sum_a c_{j a} f_a(x)). `forms` holds the coefficient vectors of
/// f_1..f_m as rows; `columns` is the (N-k) x m matrix c.
inline ParametricScroll z_construct(const PolyMatrix& forms, const PolyMatrix& columns, const Context& ctx = {}) {
    const VarsPtr& vars = forms.vars();
    const std::size_t m = forms.rows(), k1 = forms.cols(), g = vars->size();
    if (m != g) throw InvalidInput("z_construct: number of forms must equal the number of base variables");
    if (columns.cols() != m) throw InvalidInput("z_construct: c must have one column per form");
    PolyMatrix c = columns.embed(vars);
    for (std::size_t a = 0; a < m; ++a) {
        if (forms.row(a).is_zero()) throw InvalidInput("z_construct: zero linear form");
        for (std::size_t b = a + 1; b < m; ++b)
            if (generic_rank(vstack(forms.row(a), forms.row(b)), ctx.limits) < 2)
                throw InvalidInput("z_construct: forms " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                   " are proportional");
    }
    PolyMatrix graph = forms.transpose() * c.transpose();
    for (std::size_t a = 0; a < m; ++a) {
        PolyMatrix d = graph.differentiate(a);
        if (d.is_zero()) continue;
        if (generic_rank(vstack(forms.row(a), d.transpose()), ctx.limits) != 1)
            throw PreconditionError("z_construct: derivative along " + (*vars)[a] +
                                    " does not produce columns proportional to f_" + std::to_string(a + 1));
    }
    PolyMatrix id(vars, k1, k1);
    for (std::size_t i = 0; i < k1; ++i) id(i, i) = MultiPoly::constant(vars, 1);
    ParametricScroll z = ParametricScroll::make(hstack(id, graph), "Z", ctx);
    if (!is_stationary(z, ctx)) throw VerificationError("z_construct: result is not stationary");
    return z;
}

struct DualSplitCheck {
    bool ok = false;
    SplitFocus original;
    SplitFocus dual;
    bool same_directions = false;
    bool columns_match = false;
};

/// The dual of a split-focus stationary scroll is split with the same number of
/// forms; the dual forms are the functionals of the original columns c_a.
inline DualSplitCheck dual_split_check_report(const ParametricScroll& x, const Context& ctx = {}) {
    if (x.fibre_dim() >= x.ambient_dim()) throw PreconditionError("dual_split_check: fibres fill the ambient space");
    if (!is_stationary(x, ctx)) throw PreconditionError("dual_split_check: scroll is not stationary");
    PolyMatrix f = focal_matrix(x, ctx);
    if (f.cols() == 0 || sampled_rank(f, ctx, "focal_rank") != x.base_dim())
        throw PreconditionError("dual_split_check: focal locus not a hypersurface");
    auto t = detail::generic_base_point(x, ctx, "dual_split_point");
    DualSplitCheck out;
    out.original = detail::split_focus_at(x, f, t, ctx);
    if (out.original.verdict != SplitVerdict::Split)
        throw PreconditionError("dual_split_check: input does not have split focus");
    ParametricScroll d = dual(x, ctx);
    PolyMatrix fd = focal_matrix(d, ctx);
    if (fd.cols() == 0 || !is_stationary(d, ctx) || sampled_rank(fd, ctx, "focal_rank") != x.base_dim()) return out;
    QMatrix k = d.classifying().evaluate(t);
    if (k.rank() != k.rows()) return out;
    out.dual = detail::split_focus_at(d, fd, t, ctx);
    if (out.dual.verdict != SplitVerdict::Split || out.dual.forms.size() != out.original.forms.size()) return out;

    auto sorted = [](std::vector<std::vector<Rational>> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    out.same_directions = sorted(out.original.directions) == sorted(out.dual.directions);
    out.columns_match = true;
    for (const auto& u : out.original.columns) {
        QMatrix pairing = k * QMatrix::from_rows({u}).transpose();
        std::vector<Rational> w(pairing.rows());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = pairing(i, 0);
        w = detail::normalize_leading(w);
        if (std::find(out.dual.forms.begin(), out.dual.forms.end(), w) == out.dual.forms.end())
            out.columns_match = false;
    }
    out.ok = out.same_directions && out.columns_match;
    return out;
}

inline bool dual_split_check(const ParametricScroll& x, const Context& ctx = {}) {
    return dual_split_check_report(x, ctx).ok;
}

/// Linear form with the given coefficients in the fibre coordinates of `x`.
inline std::string form_to_string(const std::vector<Rational>& coeffs, const VarList& names) {
    VarsPtr vars = make_vars(names);
    MultiPoly p(vars);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) p += MultiPoly::variable(vars, names[i]) * coeffs[i];
    return p.to_string();
}

} // namespace scrolls
