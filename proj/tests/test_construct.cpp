#include <scrolls/classify.hpp>
#include <scrolls/construct.hpp>

#include <gtest/gtest.h>

using namespace scrolls;

namespace {

const VarsPtr T = make_vars({"t"});
const VarsPtr SU = make_vars({"s", "u"});

PolyMatrix curve(const std::vector<std::string>& entries, const VarsPtr& vars = T) {
    return PolyMatrix::parse(vars, {entries});
}

PolyMatrix twisted_cubic() { return curve({"1", "t", "t^2", "t^3"}); }
PolyMatrix rnc5() { return curve({"1", "t", "t^2", "t^3", "t^4", "t^5"}); }
PolyMatrix veronese() { return curve({"1", "s", "u", "s^2", "s*u", "u^2"}, SU); }

QMatrix unit(std::size_t n, std::size_t i) {
    QMatrix q(1, n);
    q(0, i) = 1;
    return q;
}

} // namespace

TEST(Osculating, Examples) {
    auto tangent = osculating_scroll(twisted_cubic(), 1);
    EXPECT_TRUE(rowspan_equal(tangent.classifying(), PolyMatrix::parse(T, {{"1", "t", "t^2", "t^3"}, {"0", "1", "2*t", "3*t^2"}})));
    auto osc = osculating_scroll(rnc5(), 2);
    EXPECT_EQ(osc.fibre_dim(), 2u);
    auto vt = osculating_scroll(veronese(), 1);
    EXPECT_EQ(vt.fibre_dim(), 2u);
    EXPECT_EQ(vt.base_dim(), 2u);
    EXPECT_THROW(osculating_scroll(twisted_cubic(), 4), PreconditionError);
    EXPECT_THROW(osculating_scroll(curve({"1", "t", "t^2", "0"}), 3), PreconditionError);
}

TEST(Osculating, NextOrderIsDerived) {
    for (unsigned r = 0; r < 4; ++r) {
        auto lower = osculating_scroll(rnc5(), r);
        EXPECT_TRUE(same_scroll(osculating_scroll(rnc5(), r + 1), derived(lower)));
    }
    EXPECT_TRUE(same_scroll(osculating_scroll(veronese(), 1), derived(osculating_scroll(veronese(), 0))));
}

TEST(Join, Examples) {
    auto c1 = ParametricScroll::make(curve({"1", "s", "s^2", "0", "0", "0"}, make_vars({"s"})));
    auto c2 = ParametricScroll::make(curve({"0", "0", "0", "1", "u", "u^2"}, make_vars({"u"})));
    auto j = join(c1, c2);
    EXPECT_EQ(j.base_dim(), 2u);
    EXPECT_EQ(j.fibre_dim(), 1u);
    EXPECT_TRUE(is_stationary(j));

    auto d1 = ParametricScroll::make(curve({"1", "t", "t^2", "0", "0", "0"}));
    auto d2 = ParametricScroll::make(curve({"0", "0", "0", "1", "t", "t^2"}));
    auto renamed = join(d1, d2);
    EXPECT_EQ(*renamed.base_vars(), (VarList{"t_1", "t_2"}));
    EXPECT_TRUE(is_stationary(renamed));

    auto none = make_vars({});
    auto l1 = ParametricScroll::make(PolyMatrix::parse(none, {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}}));
    auto l2 = ParametricScroll::make(PolyMatrix::parse(none, {{"0", "0", "1", "0"}, {"0", "0", "0", "1"}}));
    auto all = join(l1, l2);
    EXPECT_TRUE(all.classifying().is_constant());
    EXPECT_EQ(generic_rank(all.classifying()), 4u);
    EXPECT_THROW(join(l1, l1), PreconditionError);
}

TEST(Cone, Examples) {
    auto tc = ParametricScroll::make(curve({"1", "t", "t^2", "t^3", "0"}));
    auto c = cone(unit(5, 4), tc);
    EXPECT_TRUE(same_scroll(c, ParametricScroll::make(PolyMatrix::parse(T, {{"0", "0", "0", "0", "1"}, {"1", "t", "t^2", "t^3", "0"}}))));
    auto test = is_cone(c);
    EXPECT_TRUE(test.is_cone);
    EXPECT_TRUE(rowspan_equal(*test.vertex, unit(5, 4)));

    auto tangent = osculating_scroll(curve({"1", "t", "t^2", "t^3", "0"}), 1);
    auto ct = cone(unit(5, 4), tangent);
    EXPECT_EQ(ct.fibre_dim(), 2u);
    auto flag = maximal_flag(ct);
    EXPECT_TRUE(flag.bottom_is_constant);
    EXPECT_TRUE(rowspan_equal(flag.bottom().classifying().evaluate({Rational(2)}), unit(5, 4)));
    auto line = ParametricScroll::make(PolyMatrix::parse(T, {{"1", "t", "0", "0", "0"}, {"0", "1", "t", "0", "0"}}));
    EXPECT_THROW(cone(unit(5, 1), ParametricScroll::make(PolyMatrix::parse(T, {{"0", "1", "0", "0", "0"}, {"1", "0", "t", "t^2", "0"}}))),
                 PreconditionError);
    (void)line;
}

TEST(Inflate, Examples) {
    auto tangent = osculating_scroll(rnc5(), 1);
    PolyMatrix c = PolyMatrix::parse(T, {{"3", "-1", "4", "1", "-5", "9"}});
    auto x = inflate(tangent, c);
    EXPECT_EQ(spread_dim(x), 3u);
    EXPECT_GE(gauss_deficiency(x), 1u);
    EXPECT_THROW(inflate(tangent, PolyMatrix::parse(T, {{"1", "2*t", "3*t^2", "4*t^3", "5*t^4", "6*t^5"}})), PreconditionError);
    // inflating a curve by a constant point is the cone over it
    auto tc = ParametricScroll::make(curve({"1", "t", "t^2", "t^3", "0"}));
    EXPECT_TRUE(same_scroll(inflate(tc, PolyMatrix::from_constant(T, unit(5, 4))), cone(unit(5, 4), tc)));
}

TEST(BaseChange, Examples) {
    auto tangent = osculating_scroll(twisted_cubic(), 1);
    VarsPtr vv = make_vars({"v"});
    auto re = base_change(tangent, {{"t", parse_poly("v^2 + v", vv)}}, vv);
    EXPECT_EQ(re.base_dim(), 1u);
    EXPECT_TRUE(is_stationary(re));
    EXPECT_EQ(decompose_g1(re).verdict, Verdict::CurveOsculating);
    EXPECT_TRUE(same_scroll(base_change(tangent, {{"t", MultiPoly::variable(T, "t")}}, T), tangent));
    EXPECT_THROW(base_change(tangent, {{"t", MultiPoly::constant(T, 2)}}, T), InvalidInput);
}

TEST(BaseChange, CurveInsideAJoin) {
    // the join of two conics is stationary over its surface base, but the
    // lines over a curve in that base form a non-developable ruled surface
    auto c1 = ParametricScroll::make(curve({"1", "s", "s^2", "0", "0", "0"}, make_vars({"s"})));
    auto c2 = ParametricScroll::make(curve({"0", "0", "0", "1", "u", "u^2"}, make_vars({"u"})));
    auto j = join(c1, c2);
    ASSERT_TRUE(is_stationary(j));
    VarsPtr vv = make_vars({"v"});
    MultiPoly v = MultiPoly::variable(vv, "v");
    auto diag = base_change(j, {{"s", v}, {"u", v}}, vv);
    EXPECT_EQ(diag.base_dim(), 1u);
    EXPECT_FALSE(is_stationary(diag));
    EXPECT_THROW(decompose_g1(diag), PreconditionError);
}

TEST(Eigenscroll, DarbouxSurface) {
    VarsPtr v = make_vars({"t1", "t2"});
    PolyMatrix phi = PolyMatrix::parse(v, {{"1", "t1", "t2", "t1^2", "t2^2"}});
    EXPECT_TRUE(is_conjugate(phi));
    auto d = eigenscroll_diagram(phi);
    EXPECT_TRUE(same_scroll(derived(d.x2), d.y1));
    EXPECT_TRUE(same_scroll(derived(d.x1), d.y2));
    EXPECT_EQ(d.y1.fibre_dim(), 3u);
    // oracle: Y1 = span{phi, phi_t1, phi_t2, phi_t1t1} contains e3 = phi_t1t1 / 2
    EXPECT_TRUE(rowspan_contains(d.y1.classifying(), PolyMatrix::from_constant(v, unit(5, 3))));
}

TEST(Eigenscroll, CubicPerturbationAndFailure) {
    VarsPtr v = make_vars({"t1", "t2"});
    auto d = eigenscroll_diagram(PolyMatrix::parse(v, {{"1", "t1", "t2", "t1^2 + t2^3", "t2^2"}}));
    EXPECT_TRUE(same_scroll(derived(d.x2), d.y1));
    EXPECT_TRUE(same_scroll(derived(d.x1), d.y2));
    EXPECT_FALSE(same_scroll(d.y1, d.y2));
    PolyMatrix bad = PolyMatrix::parse(v, {{"1", "t1", "t2", "t1^2", "t1*t2"}});
    EXPECT_FALSE(is_conjugate(bad));
    EXPECT_THROW(eigenscroll_diagram(bad), PreconditionError);
}

TEST(ClassifySmall, ConeOverTwistedCubic) {
    auto c = cone(unit(5, 4), ParametricScroll::make(curve({"1", "t", "t^2", "t^3", "0"})));
    auto rep = classify_small(c);
    EXPECT_EQ(rep.verdict, Verdict::Cone);
    ASSERT_TRUE(rep.witness);
    EXPECT_TRUE(rowspan_equal(rep.witness->evaluate({Rational(0)}), unit(5, 4)));
    EXPECT_EQ(rep.parameters.gauss_dim, 1u);
    EXPECT_EQ(rep.parameters.spread_dim, 2u);
}

TEST(ClassifySmall, TangentScrolls) {
    auto tangent = osculating_scroll(twisted_cubic(), 1);
    auto rep = classify_small(tangent);
    EXPECT_EQ(rep.verdict, Verdict::InflatedTangentScroll);
    EXPECT_TRUE(rowspan_equal(*rep.witness, twisted_cubic()));

    auto quintic_tangent = osculating_scroll(rnc5(), 1);
    // section p'' + (t + 3) p' - 2 p
    PolyMatrix p0 = rnc5(), p1 = p0.differentiate(0), p2 = p1.differentiate(0);
    std::vector<MultiPoly> entries;
    for (std::size_t c = 0; c < 6; ++c)
        entries.push_back(p2(0, c) + parse_poly("t + 3", T) * p1(0, c) - p0(0, c) * Rational(2));
    PolyMatrix section = PolyMatrix::from_rows(T, {entries});
    auto inflated = inflate(quintic_tangent, section);
    ASSERT_TRUE(is_stationary(inflated));
    auto r2 = classify_small(inflated);
    EXPECT_EQ(r2.verdict, Verdict::InflatedTangentScroll);
    PolyMatrix p = *r2.witness;
    EXPECT_TRUE(rowspan_contains(inflated.classifying(), vstack(p, p.differentiate(0))));

    EXPECT_THROW(classify_small(osculating_scroll(veronese(), 1)), PreconditionError);
}

TEST(DecomposeG1, Examples) {
    auto osc = osculating_scroll(rnc5(), 2);
    auto rep = decompose_g1(osc);
    EXPECT_EQ(rep.verdict, Verdict::CurveOsculating);
    EXPECT_EQ(rep.curve_order, 2u);
    EXPECT_EQ(rep.constant_count, 0u);
    EXPECT_TRUE(rowspan_equal(rep.witness->row(0), rnc5()));

    PolyMatrix p = curve({"1", "t", "t^2", "t^3", "t^4", "0"});
    auto c = cone(unit(6, 5), osculating_scroll(p, 1));
    auto r2 = decompose_g1(c);
    EXPECT_EQ(r2.verdict, Verdict::Cone);
    EXPECT_EQ(r2.curve_order, 1u);
    EXPECT_EQ(r2.constant_count, 1u);
    EXPECT_TRUE(rowspan_equal(r2.witness->row(0), p));
    EXPECT_THROW(decompose_g1(osculating_scroll(veronese(), 1)), PreconditionError);
}

TEST(Classify, Dispatch) {
    EXPECT_EQ(classify(osculating_scroll(rnc5(), 2)).verdict, Verdict::CurveOsculating);
    auto q = ParametricScroll::make(PolyMatrix::parse(T, {{"1", "0", "t", "0"}, {"0", "1", "0", "t"}}));
    EXPECT_EQ(classify(q).verdict, Verdict::Unclassified);
    EXPECT_EQ(classify(osculating_scroll(veronese(), 1)).verdict, Verdict::Unclassified);
}
