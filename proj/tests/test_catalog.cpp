#include <scrolls/catalog.hpp>
#include <scrolls/scroll_file.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace scrolls;

namespace {

void expect_parse_error(const std::string& text, std::size_t line, std::size_t column) {
    try {
        read_scroll(text);
        FAIL() << "no error for:\n" << text;
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_EQ(e.column(), column) << e.what();
    }
}

const std::string header = "name: x\nbase_vars: t\nambient_dim: 3\n";

} // namespace

TEST(Catalog, NamesAreUniqueAndListed) {
    auto names = catalog_list();
    EXPECT_EQ(names.size(), catalog().size());
    EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
    for (const auto& n : {"twisted_cubic_tangent", "veronese_tangent", "segre_linepairs", "quadric_ruling",
                          "cone_twisted_cubic"})
        EXPECT_NO_THROW(catalog_get(n)) << n;
    EXPECT_THROW(catalog_get("no_such_entry"), InvalidInput);
}

TEST(Catalog, RecordsMatchRecomputationUnderOtherSeeds) {
    for (std::uint64_t seed : {1u, 99u}) {
        Context ctx;
        ctx.seed = seed;
        for (const auto& e : catalog())
            EXPECT_TRUE(record_mismatches(e.expected, compute_record(e.scroll, ctx)).empty()) << e.name << " seed " << seed;
    }
}

TEST(Catalog, TwistedCubicByHand) {
    // p = (1, t, t^2, t^3): the tangent developable is a surface whose Gauss map is the curve of tangent lines.
    const auto& r = catalog_get("twisted_cubic_tangent").expected;
    EXPECT_TRUE(r.stationary);
    EXPECT_EQ(r.spread_dim, 2u);
    EXPECT_EQ(r.gauss_dim, 1u);
    EXPECT_EQ(r.focal_degree, 1u);
}

TEST(Catalog, VeroneseDualIsSegreLinePairs) {
    const auto& v = catalog_get("veronese_tangent").scroll;
    const auto& s = catalog_get("segre_linepairs").scroll;
    EXPECT_TRUE(same_scroll(dual(v), s));
    EXPECT_TRUE(same_scroll(dual(s), v));
    // every line pair is singular at the point (s : u : 1)
    const PolyMatrix& phi = v.classifying();
    PolyMatrix pairing = phi * s.classifying().embed(phi.vars()).transpose();
    for (std::size_t i = 0; i < pairing.rows(); ++i)
        for (std::size_t j = 0; j < pairing.cols(); ++j) EXPECT_TRUE(pairing(i, j).is_zero());
}

TEST(ScrollFile, RoundTripsEveryCatalogEntry) {
    for (const auto& e : catalog()) {
        std::string text = write_scroll(e.scroll);
        ParametricScroll back = read_scroll(text);
        EXPECT_EQ(back.name(), e.name);
        EXPECT_EQ(*back.base_vars(), *e.scroll.base_vars());
        EXPECT_TRUE(same_scroll(back, e.scroll)) << e.name;
        EXPECT_EQ(write_scroll(back), text);
    }
}

TEST(ScrollFile, CommentsBlankLinesAndSpacing) {
    ParametricScroll x = read_scroll("# tangent lines\n\n  name:  tc \nbase_vars:t\nambient_dim: 3\n"
                                     "row:\"1\",\"t\" , \"t^2\",  \"t^3\"\nrow: \"0\", \"1\", \"2*t\", \"3*t^2\"\n");
    EXPECT_EQ(x.name(), "tc");
    EXPECT_TRUE(same_scroll(x, catalog_get("twisted_cubic_tangent").scroll));
}

TEST(ScrollFile, EmptyBaseIsAConstantSpace) {
    ParametricScroll x = read_scroll("base_vars:\nambient_dim: 2\nrow: \"1\", \"0\", \"0\"\n");
    EXPECT_EQ(x.base_dim(), 0u);
    EXPECT_EQ(x.fibre_dim(), 0u);
}

TEST(ScrollFile, ErrorPositions) {
    expect_parse_error(header + "row: \"1\", \"t\", \"t^2\", \"t^3\"\nrow: \"0\", \"1\", \"2*t\", \"3*t^^2\"\n", 5, 28);
    expect_parse_error(header + "row: \"1\", \"t\", \"t^2\"\n", 4, 1);
    expect_parse_error(header + "colour: red\n", 4, 1);
    expect_parse_error("name: a\nname: b\n", 2, 1);
    expect_parse_error("base_vars: t, 2s\n", 1, 15);
    expect_parse_error("base_vars: t, t\n", 1, 15);
    expect_parse_error("ambient_dim: three\n", 1, 14);
    expect_parse_error("base_vars: t\nambient_dim: 1\nrow: \"1\" \"t\"\n", 3, 10);
    expect_parse_error("base_vars: t\nambient_dim: 1\nrow: \"1\", \"t\n", 3, 11);
    expect_parse_error("base_vars: t\nambient_dim: 1\nrow: \"1\", \"s\"\n", 3, 12);
    expect_parse_error("just words\n", 1, 1);
    expect_parse_error("base_vars: t\nrow: \"1\"\n", 0, 0);
}

TEST(ScrollFile, ConstructorInvariantsAreInvalidInput) {
    // dependent rows
    EXPECT_THROW(read_scroll(header + "row: \"1\", \"t\", \"0\", \"0\"\nrow: \"2\", \"2*t\", \"0\", \"0\"\n"), InvalidInput);
    // second parameter never used: not generically finite
    EXPECT_THROW(read_scroll("base_vars: t, s\nambient_dim: 2\nrow: \"1\", \"t\", \"t^2\"\n"), InvalidInput);
}

TEST(ScrollFile, MissingFile) { EXPECT_THROW(read_scroll_file("/nonexistent/x.scroll"), InvalidInput); }

TEST(ScrollFile, SamplesMatchCatalog) {
    for (const auto& e : catalog()) {
        ParametricScroll x = read_scroll_file(std::string(SAMPLES_DIR) + "/" + e.name + ".scroll");
        EXPECT_TRUE(same_scroll(x, e.scroll)) << e.name;
    }
}
