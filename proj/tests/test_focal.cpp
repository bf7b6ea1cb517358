#include <scrolls/focal.hpp>

#include <gtest/gtest.h>

using namespace scrolls;

namespace {

ParametricScroll scroll(const VarList& vars, const std::vector<std::vector<std::string>>& rows) {
    return ParametricScroll::make(PolyMatrix::parse(make_vars(vars), rows));
}

ParametricScroll twisted_cubic_tangent() {
    return scroll({"t"}, {{"1", "t", "t^2", "t^3"}, {"0", "1", "2*t", "3*t^2"}});
}

ParametricScroll quadric_ruling() { return scroll({"t"}, {{"1", "0", "t", "0"}, {"0", "1", "0", "t"}}); }

ParametricScroll z_p4() {
    VarsPtr v = make_vars({"t1", "t2"});
    PolyMatrix f = PolyMatrix::parse(v, {{"1", "0"}, {"0", "1"}});
    PolyMatrix c = PolyMatrix::parse(v, {{"t1", "t2^3"}, {"t1^2", "t2"}, {"t1^3", "t2^2"}});
    return z_construct(f, c);
}

// General filling scroll (x, t1 f1 + t2 f2, t1 f1' + t2 f2') with f1 = x0,
// f1' = x1, f2 = x2, f2' = x0 + x1 + x2.
ParametricScroll filling_conic_focus() {
    return scroll({"t1", "t2"}, {{"1", "0", "0", "t1", "t2"}, {"0", "1", "0", "0", "t1 + t2"}, {"0", "0", "1", "t2", "t2"}});
}

MultiPoly total(const ParametricScroll& x, const std::string& text) { return parse_poly(text, total_space_vars(x)); }

} // namespace

TEST(Univariate, CharacteristicPolynomialAndRoots) {
    QMatrix a = QMatrix::from_rows({{2, 1}, {0, Rational(1, 3)}});
    UniPoly p = characteristic_polynomial(a);
    // (s - 2)(s - 1/3) = s^2 - 7/3 s + 2/3
    EXPECT_EQ(p, UniPoly({Rational(2, 3), Rational(-7, 3), 1}));
    EXPECT_EQ(rational_roots(p), (std::vector<Rational>{Rational(1, 3), 2}));
    EXPECT_TRUE(rational_roots(UniPoly({-2, 0, 1})).empty());
    UniPoly big({Rational(-1234567, 89), 0, 0, 1});
    EXPECT_TRUE(rational_roots(big).empty());
    UniPoly mixed = UniPoly({Rational(-5, 7), 1}) * UniPoly({-2, 0, 1}) * UniPoly({Rational(-5, 7), 1});
    EXPECT_EQ(rational_roots(mixed), (std::vector<Rational>{Rational(5, 7)}));
    EXPECT_EQ(gcd(UniPoly({-1, 0, 1}), UniPoly({1, 1})), UniPoly({1, 1}));
}

TEST(Univariate, CharacteristicPolynomialProperty) {
    // oracle: p(A) = 0 (Cayley-Hamilton), evaluated by Horner on matrices
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        QMatrix a(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = random_rational(rng, 9);
        UniPoly p = characteristic_polynomial(a);
        QMatrix acc(3, 3);
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
            acc = acc * a;
            for (std::size_t i = 0; i < 3; ++i) acc(i, i) += *it;
        }
        EXPECT_EQ(acc, QMatrix(3, 3));
    }
}

TEST(Determinant, MatchesRationalDeterminant) {
    VarsPtr v = make_vars({"a", "b"});
    PolyMatrix m = PolyMatrix::parse(v, {{"0", "a", "1"}, {"b", "a*b", "2"}, {"1", "a^2", "b"}});
    MultiPoly d = determinant(m);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5; ++i) {
        auto p = random_point(rng, 2);
        EXPECT_EQ(d.evaluate(p), m.evaluate(p).determinant());
    }
}

TEST(FocalMatrix, TwistedCubicTangent) {
    auto x = twisted_cubic_tangent();
    PolyMatrix f = focal_matrix(x);
    ASSERT_EQ(f.rows(), 1u);
    ASSERT_EQ(f.cols(), 2u);
    // every entry is x1 times a function of t (reduction of x1 p'')
    for (std::size_t c = 0; c < 2; ++c) {
        EXPECT_TRUE(f(0, c).divide_exact(total(x, "x1")));
        EXPECT_EQ(f(0, c).degree_in(std::vector<std::size_t>{1}), 0);
    }
}

TEST(FocalData, TwistedCubicTangent) {
    auto x = twisted_cubic_tangent();
    FocalData fd = focal_data(x);
    EXPECT_TRUE(fd.stationary);
    EXPECT_TRUE(fd.is_hypersurface);
    EXPECT_EQ(fd.degree_in_x, 1u);
    ASSERT_TRUE(fd.focal_polynomial);
    EXPECT_EQ(*fd.focal_polynomial, total(x, "x1"));
    ASSERT_TRUE(fd.split);
    EXPECT_EQ(fd.split->verdict, SplitVerdict::Split);
    EXPECT_EQ(fd.split->forms, (std::vector<std::vector<Rational>>{{0, 1}}));
    EXPECT_TRUE(stationarity_by_focus(x));
}

TEST(FocalData, QuadricRulingHasNoFocalHypersurface) {
    auto x = quadric_ruling();
    FocalData fd = focal_data(x);
    EXPECT_FALSE(fd.stationary);
    EXPECT_FALSE(fd.is_hypersurface);
    EXPECT_EQ(fd.degree_in_x, 0u);
    EXPECT_FALSE(fd.focal_polynomial);
    EXPECT_THROW(stationarity_by_focus(x), PreconditionError);
    EXPECT_THROW(split_focus_detect(x), PreconditionError);
}

TEST(FocalData, ZeroLocusIsAntiderivedFibre) {
    for (auto x : {twisted_cubic_tangent(),
                   scroll({"t"}, {{"0", "0", "0", "0", "1"}, {"1", "t", "t^2", "t^3", "0"}})}) {
        PolyMatrix f = focal_matrix(x);
        auto edge = antiderived(x);
        ASSERT_TRUE(edge);
        // coefficients of the edge rows in terms of the fibre rows, at a sample t
        std::vector<Rational> t{Rational(3, 2)};
        QMatrix s = x.classifying().evaluate(t), e = edge->classifying().evaluate(t);
        QMatrix coeffs = vstack(s, e).transpose().kernel(); // relations sum a_i s_i + sum b_j e_j = 0
        ASSERT_EQ(coeffs.rows(), e.rows());
        for (std::size_t r = 0; r < coeffs.rows(); ++r) {
            std::vector<Rational> point = t;
            for (std::size_t j = 0; j < s.rows(); ++j) point.push_back(coeffs(r, j));
            EXPECT_TRUE(f.evaluate(point).rank() == 0);
        }
        // a random fibre point off the edge is not a zero of the focal matrix
        std::vector<Rational> generic = t;
        for (std::size_t j = 0; j < s.rows(); ++j) generic.push_back(Rational(static_cast<long>(j) + 2, 3));
        EXPECT_GT(f.evaluate(generic).rank(), 0u);
    }
}

TEST(ZConstruct, CoordinateFormsInP4) {
    auto z = z_p4();
    EXPECT_EQ(z.fibre_dim(), 1u);
    EXPECT_EQ(z.ambient_dim(), 4u);
    EXPECT_TRUE(is_stationary(z));
    FocalData fd = focal_data(z);
    EXPECT_EQ(fd.degree_in_x, 2u);
    ASSERT_TRUE(fd.focal_polynomial);
    EXPECT_TRUE(same_up_to_base_factor(*fd.focal_polynomial, total(z, "x0*x1"), 2));
    auto split = split_focus_detect(z);
    EXPECT_EQ(split.verdict, SplitVerdict::Split);
    EXPECT_EQ(split.forms, (std::vector<std::vector<Rational>>{{0, 1}, {1, 0}}));
    EXPECT_TRUE(dual_split_check(z));
}

TEST(ZConstruct, SingleFormIsTangentType) {
    VarsPtr v = make_vars({"t"});
    auto z = z_construct(PolyMatrix::parse(v, {{"0", "1"}}), PolyMatrix::parse(v, {{"t"}, {"t^2"}}));
    FocalData fd = focal_data(z);
    ASSERT_TRUE(fd.focal_polynomial);
    EXPECT_EQ(*fd.focal_polynomial, total(z, "x1"));
    EXPECT_EQ(fd.degree_in_x, 1u);
}

TEST(ZConstruct, RejectsBadInput) {
    VarsPtr v = make_vars({"t1", "t2"});
    PolyMatrix c = PolyMatrix::parse(v, {{"t1", "t2^3"}, {"t1^2", "t2"}, {"t1^3", "t2^2"}});
    EXPECT_THROW(z_construct(PolyMatrix::parse(v, {{"1", "0"}, {"2", "0"}}), c), InvalidInput);
    EXPECT_THROW(z_construct(PolyMatrix::parse(v, {{"1", "0"}}), c.select_cols({0})), InvalidInput);
    // c_{.1} depending on t2 breaks the compatibility condition
    PolyMatrix mixed = PolyMatrix::parse(v, {{"t2", "t2^3"}, {"t1^2", "t2"}, {"t1^3", "t2^2"}});
    EXPECT_THROW(z_construct(PolyMatrix::parse(v, {{"1", "0"}, {"0", "1"}}), mixed), PreconditionError);
}

TEST(SplitFocus, IrreducibleConicIsNonSplit) {
    auto x = filling_conic_focus();
    EXPECT_TRUE(is_stationary(x));
    EXPECT_TRUE(is_filling(x));
    FocalData fd = focal_data(x);
    EXPECT_EQ(fd.degree_in_x, 2u);
    auto split = split_focus_detect(x);
    EXPECT_EQ(split.verdict, SplitVerdict::NonSplit);
    EXPECT_THROW(dual_split_check(x), PreconditionError);
}

TEST(FocalDegree, RandomNonStationarySurfaceScrolls) {
    std::mt19937_64 rng(11);
    VarsPtr v = make_vars({"s", "u"});
    int checked = 0;
    for (int trial = 0; trial < 4; ++trial) {
        // lines joining points of two random quadratic surfaces in P4
        std::vector<std::vector<MultiPoly>> rows(2);
        for (auto& row : rows)
            for (int c = 0; c < 5; ++c) {
                MultiPoly p(v);
                for (const char* m : {"1", "s", "u", "s^2", "s*u", "u^2"})
                    p += parse_poly(m, v) * random_rational(rng, 5);
                row.push_back(p);
            }
        auto x = ParametricScroll::make(PolyMatrix::from_rows(v, rows));
        if (is_stationary(x)) continue;
        ++checked;
        FocalData fd = focal_data(x);
        EXPECT_LT(fd.degree_in_x, 2u);
    }
    EXPECT_GT(checked, 0);
}
