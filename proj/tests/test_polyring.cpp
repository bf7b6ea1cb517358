#include <scrolls/polymatrix.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace scrolls;

namespace {

const VarsPtr T = make_vars({"t"});

PolyMatrix mat(const VarsPtr& vars, const std::vector<std::vector<std::string>>& rows) {
    return PolyMatrix::parse(vars, rows);
}

MultiPoly poly(const std::string& s, const VarsPtr& vars = T) { return parse_poly(s, vars); }

} // namespace

TEST(Rational, StaysCanonical) {
    Rational q = make_rational(6, -4);
    EXPECT_EQ(q.get_num(), -3);
    EXPECT_EQ(q.get_den(), 2);
    q += make_rational(3, 2);
    EXPECT_EQ(q.get_num(), 0);
    EXPECT_EQ(q.get_den(), 1);
}

TEST(Parse, RationalCoefficients) {
    auto vars = make_vars({"t1", "t2"});
    MultiPoly p = parse_poly("3*t1^2 - 1/2*t2", vars);
    MultiPoly expected = MultiPoly::variable(vars, "t1").pow(2) * Rational(3) -
                         MultiPoly::variable(vars, "t2") * make_rational(1, 2);
    EXPECT_EQ(p, expected);
}

TEST(Parse, BinomialExpansion) {
    auto vars = make_vars({"t1"});
    EXPECT_EQ(parse_poly("(t1+1)^3", vars), parse_poly("t1^3 + 3*t1^2 + 3*t1 + 1", vars));
}

TEST(Parse, UnknownIdentifier) {
    auto vars = make_vars({"t1", "t2"});
    try {
        parse_poly("t3", vars);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 1u);
        EXPECT_NE(std::string(e.what()).find("unknown identifier"), std::string::npos);
    }
}

TEST(Parse, RejectsBadExponentsAndImplicitProduct) {
    EXPECT_THROW(parse_poly("t^-1", T), ParseError);
    EXPECT_THROW(parse_poly("t^1/2", T), ParseError);
    EXPECT_THROW(parse_poly("2t", T), ParseError);
    EXPECT_THROW(parse_poly("2 t", T), ParseError);
    EXPECT_THROW(parse_poly("(t+1", T), ParseError);
    EXPECT_THROW(parse_poly("1/0", T), ParseError);
    EXPECT_THROW(parse_poly("", T), ParseError);
}

TEST(Parse, ErrorColumn) {
    try {
        parse_poly("t + * 2", T);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 5u);
    }
}

TEST(Parse, PrintParseIdempotent) {
    auto vars = make_vars({"t1", "t2", "x0"});
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        MultiPoly p(vars);
        for (int k = 0; k < 5; ++k) {
            Monomial m{static_cast<std::uint32_t>(rng() % 4), static_cast<std::uint32_t>(rng() % 3),
                       static_cast<std::uint32_t>(rng() % 2)};
            p += MultiPoly::monomial(vars, m, random_rational(rng, 20));
        }
        std::string once = p.to_string();
        MultiPoly q = parse_poly(once, vars);
        EXPECT_EQ(p, q);
        EXPECT_EQ(q.to_string(), once);
    }
}

TEST(Differentiate, PowerRule) {
    auto vars = make_vars({"t", "x0"});
    EXPECT_EQ(parse_poly("t^2*x0", vars).differentiate("t"), parse_poly("2*t*x0", vars));
    EXPECT_TRUE(parse_poly("5", vars).differentiate("t").is_zero());
    PolyMatrix p = mat(T, {{"1", "t", "t^2", "t^3"}});
    EXPECT_EQ(p.differentiate("t"), mat(T, {{"0", "1", "2*t", "3*t^2"}}));
    EXPECT_THROW(p.differentiate("s"), InvalidInput);
}

TEST(Differentiate, LeibnizRuleProperty) {
    auto vars = make_vars({"a", "b"});
    std::mt19937_64 rng(5);
    auto random_poly = [&] {
        MultiPoly p(vars);
        for (int k = 0; k < 4; ++k)
            p += MultiPoly::monomial(
                vars, {static_cast<std::uint32_t>(rng() % 4), static_cast<std::uint32_t>(rng() % 4)},
                random_rational(rng, 9));
        return p;
    };
    for (int trial = 0; trial < 40; ++trial) {
        MultiPoly p = random_poly(), q = random_poly();
        for (const char* v : {"a", "b"})
            EXPECT_EQ((p * q).differentiate(v), p.differentiate(v) * q + p * q.differentiate(v));
    }
}

TEST(Evaluate, Substitution) {
    std::map<std::string, Rational> at2{{"t", 2}};
    EXPECT_EQ(poly("t^2 + 1").evaluate(at2), 5);
    EXPECT_EQ(evaluate(mat(T, {{"1", "t", "t^2", "t^3"}}), {{"t", 1}}), QMatrix::from_rows({{1, 1, 1, 1}}));
    EXPECT_EQ(evaluate(mat(T, {{"0", "1", "2*t", "3*t^2"}}), {{"t", -1}}), QMatrix::from_rows({{0, 1, -2, 3}}));
    EXPECT_THROW(evaluate(mat(T, {{"t"}}), {{"s", 1}}), InvalidInput);
}

TEST(GenericRank, Examples) {
    EXPECT_EQ(generic_rank(mat(T, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}})), 3u);
    EXPECT_EQ(generic_rank(mat(T, {{"1", "t"}, {"t", "t^2"}})), 1u);
    PolyMatrix osc = mat(T, {{"1", "t", "t^2", "t^3"}, {"0", "1", "2*t", "3*t^2"}, {"0", "0", "2", "6*t"}});
    // oracle: exact numeric rank at t = 2
    QMatrix at2 = QMatrix::from_rows({{1, 2, 4, 8}, {0, 1, 4, 12}, {0, 0, 2, 12}});
    EXPECT_EQ(at2.rank(), 3u);
    EXPECT_EQ(generic_rank(osc), at2.rank());
}

TEST(GenericRank, AgreesWithSampledRank) {
    auto vars = make_vars({"s", "u"});
    std::mt19937_64 rng(17);
    Context ctx;
    for (int trial = 0; trial < 25; ++trial) {
        // random low-rank product A(s,u) * B with small shapes
        std::size_t inner = 1 + rng() % 3;
        PolyMatrix a(vars, 4, inner), b(vars, inner, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < inner; ++j)
                a(i, j) = MultiPoly::monomial(vars, {static_cast<std::uint32_t>(rng() % 3),
                                                     static_cast<std::uint32_t>(rng() % 2)},
                                              random_rational(rng, 5)) +
                          MultiPoly::constant(vars, random_rational(rng, 5));
        for (std::size_t i = 0; i < inner; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                b(i, j) = MultiPoly::monomial(vars, {static_cast<std::uint32_t>(rng() % 2),
                                                     static_cast<std::uint32_t>(rng() % 3)},
                                              random_rational(rng, 5));
        PolyMatrix m = a * b;
        ctx.seed = static_cast<std::uint64_t>(trial);
        EXPECT_EQ(generic_rank(m), sampled_rank(m, ctx));
    }
}

TEST(KernelBasis, TwistedCubicTangentAnnihilator) {
    PolyMatrix m = mat(T, {{"1", "t", "t^2", "t^3"}, {"0", "1", "2*t", "3*t^2"}});
    PolyMatrix k = kernel_basis(m);
    ASSERT_EQ(k.rows(), 2u);
    // oracle: M * y^T vanishes identically
    EXPECT_TRUE((m * k.transpose()).is_zero());
    EXPECT_TRUE(rowspan_equal(k, mat(T, {{"t^2", "-2*t", "1", "0"}, {"2*t^3", "-3*t^2", "0", "1"}})));
}

TEST(KernelBasis, EdgeCases) {
    EXPECT_EQ(kernel_basis(mat(T, {{"1", "0"}, {"0", "1"}})).rows(), 0u);
    PolyMatrix k = kernel_basis(mat(T, {{"1", "t"}}));
    ASSERT_EQ(k.rows(), 1u);
    EXPECT_TRUE(rowspan_equal(k, mat(T, {{"-t", "1"}})));
}

TEST(KernelBasis, RandomIdentityProperty) {
    auto vars = make_vars({"s", "u"});
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t r = 1 + rng() % 3, c = r + 1 + rng() % 3;
        PolyMatrix m(vars, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = MultiPoly::monomial(vars, {static_cast<std::uint32_t>(rng() % 3),
                                                     static_cast<std::uint32_t>(rng() % 2)},
                                              random_rational(rng, 7)) +
                          MultiPoly::constant(vars, random_rational(rng, 7));
        PolyMatrix k = kernel_basis(m);
        EXPECT_EQ(k.rows(), c - generic_rank(m));
        EXPECT_TRUE((m * k.transpose()).is_zero());
        EXPECT_EQ(generic_rank(k), k.rows());
    }
}

TEST(RowspanEqual, Examples) {
    EXPECT_TRUE(rowspan_equal(mat(T, {{"1", "t"}}), mat(T, {{"2", "2*t"}})));
    EXPECT_FALSE(rowspan_equal(mat(T, {{"1", "t"}}), mat(T, {{"1", "t+1"}})));
    PolyMatrix pp = mat(T, {{"1", "t", "t^2", "t^3"}, {"0", "1", "2*t", "3*t^2"}});
    PolyMatrix mixed = PolyMatrix::from_constant(T, QMatrix::from_rows({{2, 1}, {3, -1}})) * pp;
    // oracle: rank of the 4-row stack equals 2
    EXPECT_EQ(generic_rank(vstack(pp, mixed)), 2u);
    EXPECT_TRUE(rowspan_equal(pp, mixed));
    EXPECT_THROW(rowspan_equal(pp, mat(T, {{"1", "t"}})), InvalidInput);
}

TEST(Limits, DegreeCapRaisesResourceError) {
    PolyMatrix m = mat(T, {{"t^40", "1", "0"}, {"1", "t^40", "t"}, {"t", "0", "t^39"}});
    Limits tight{.max_degree = 50, .max_bits = 4096};
    EXPECT_THROW(kernel_basis(m, tight), ResourceError);
}
