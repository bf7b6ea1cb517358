#pragma once

#include "construct.hpp"
#include "flag.hpp"
#include "focal.hpp"
#include "gauss.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scrolls {

/// Invariants recorded with each catalog entry.
struct ExpectedRecord {
    bool stationary = false;
    std::size_t g = 0, k = 0, N = 0;
    std::size_t spread_dim = 0, gauss_dim = 0;
    std::size_t index_m = 0;
    std::optional<std::size_t> coindex_l;
    std::optional<bool> is_cone; // absent for non-stationary scrolls
    std::size_t focal_degree = 0;
    std::optional<SplitVerdict> split;
    std::vector<std::vector<Rational>> split_forms;

    bool operator==(const ExpectedRecord&) const = default;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    ParametricScroll scroll;
    ExpectedRecord expected;
};

/// Recompute every field of the record with the library.
inline ExpectedRecord compute_record(const ParametricScroll& x, const Context& ctx = {}) {
    ExpectedRecord r;
    r.stationary = is_stationary(x, ctx);
    r.g = x.base_dim();
    r.k = x.fibre_dim();
    r.N = x.ambient_dim();
    r.spread_dim = spread_dim(x, ctx);
    r.gauss_dim = gauss_dimension(x, ctx);
    GaussianFlag flag = maximal_flag(x, ctx);
    r.index_m = flag.index_m;
    r.coindex_l = flag.coindex_l;
    if (r.stationary) r.is_cone = is_cone(x, ctx).is_cone;
    FocalData fd = focal_data(x, ctx);
    r.focal_degree = fd.degree_in_x;
    if (fd.split) {
        r.split = fd.split->verdict;
        r.split_forms = fd.split->forms;
    }
    return r;
}

/// Field-by-field differences, formatted for error messages.
inline std::vector<std::string> record_mismatches(const ExpectedRecord& want, const ExpectedRecord& got) {
    std::vector<std::string> out;
    auto opt = [](const auto& o) { return o ? std::to_string(*o) : std::string("none"); };
    auto check = [&](const char* field, const std::string& w, const std::string& g) {
        if (w != g) out.push_back(std::string(field) + ": expected " + w + ", got " + g);
    };
    check("stationary", std::to_string(want.stationary), std::to_string(got.stationary));
    check("g", std::to_string(want.g), std::to_string(got.g));
    check("k", std::to_string(want.k), std::to_string(got.k));
    check("N", std::to_string(want.N), std::to_string(got.N));
    check("spread_dim", std::to_string(want.spread_dim), std::to_string(got.spread_dim));
    check("gauss_dim", std::to_string(want.gauss_dim), std::to_string(got.gauss_dim));
    check("index_m", std::to_string(want.index_m), std::to_string(got.index_m));
    check("coindex_l", opt(want.coindex_l), opt(got.coindex_l));
    check("is_cone", opt(want.is_cone), opt(got.is_cone));
    check("focal_degree", std::to_string(want.focal_degree), std::to_string(got.focal_degree));
    check("split", want.split ? to_string(*want.split) : "none", got.split ? to_string(*got.split) : "none");
    if (want.split_forms != got.split_forms) out.push_back("split_forms differ");
    return out;
}

namespace detail {

inline ParametricScroll parsed(const std::string& name, const VarList& vars,
                               const std::vector<std::vector<std::string>>& rows) {
    return ParametricScroll::make(PolyMatrix::parse(make_vars(vars), rows), name);
}

inline std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;
    auto add = [&](ParametricScroll x, std::string description, ExpectedRecord e) {
        std::string name = x.name();
        out.push_back({std::move(name), std::move(description), std::move(x), std::move(e)});
    };
    auto forms = [](std::initializer_list<std::vector<Rational>> f) { return std::vector<std::vector<Rational>>(f); };

    add(parsed("twisted_cubic_tangent", {"t"}, {{"1", "t", "t^2", "t^3"}, {"0", "1", "2*t", "3*t^2"}}),
        "tangent lines {p, p'} of the twisted cubic p = [1, t, t^2, t^3]",
        {true, 1, 1, 3, 2, 1, 1, 1, false, 1, SplitVerdict::Split, forms({{0, 1}})});

    add(parsed("veronese_tangent", {"s", "u"},
               {{"1", "s", "u", "s^2", "s*u", "u^2"}, {"0", "1", "0", "2*s", "u", "0"}, {"0", "0", "1", "0", "s", "2*u"}}),
        "tangent planes {phi, phi_s, phi_u} of the Veronese surface phi = [1, s, u, s^2, s*u, u^2]",
        {false, 2, 2, 5, 4, 2, 1, std::nullopt, std::nullopt, 0, std::nullopt, {}});

    add(parsed("segre_linepairs", {"s", "u"},
               {{"s^2", "-2*s", "0", "1", "0", "0"}, {"s*u", "-u", "-s", "0", "1", "0"}, {"u^2", "0", "-2*u", "0", "0", "1"}}),
        "line pairs through the point (s : u : 1): conics (x - s z)^2, (x - s z)(y - u z), (y - u z)^2 "
        "in the basis z^2, xz, yz, x^2, xy, y^2",
        {true, 2, 2, 5, 4, 2, 0, 1, false, 2, SplitVerdict::NonSplit, {}});

    add(parsed("quadric_ruling", {"t"}, {{"1", "0", "t", "0"}, {"0", "1", "0", "t"}}),
        "one ruling of the smooth quadric surface in P3",
        {false, 1, 1, 3, 2, 2, 0, std::nullopt, std::nullopt, 0, std::nullopt, {}});

    add(parsed("cone_twisted_cubic", {"t"}, {{"0", "0", "0", "0", "1"}, {"1", "t", "t^2", "t^3", "0"}}),
        "cone with vertex e4 over the twisted cubic in P4",
        {true, 1, 1, 4, 2, 1, 1, 2, true, 1, SplitVerdict::Split, forms({{0, 1}})});

    add(parsed("darboux_surface_p4", {"t1", "t2"}, {{"1", "t1", "t2", "t1^2", "t2^2"}}),
        "surface [1, t1, t2, t1^2, t2^2] in P4 in conjugate coordinates",
        {true, 2, 0, 4, 2, 2, 0, 1, false, 2, SplitVerdict::NonSplit, {}});

    {
        VarsPtr v = make_vars({"t1", "t2"});
        ParametricScroll z = z_construct(PolyMatrix::parse(v, {{"1", "0"}, {"0", "1"}}),
                                         PolyMatrix::parse(v, {{"t1", "t2^3"}, {"t1^2", "t2"}, {"t1^3", "t2^2"}}))
                                 .with_name("z_split_p4");
        add(z, "split-focus normal form Z(f, c) with f = (x0, x1), c_1 = (t1, t1^2, t1^3), c_2 = (t2^3, t2, t2^2)",
            {true, 2, 1, 4, 3, 2, 0, 1, false, 2, SplitVerdict::Split, forms({{0, 1}, {1, 0}})});
    }

    add(osculating_scroll(PolyMatrix::parse(make_vars({"t"}), {{"1", "t", "t^2", "t^3", "t^4", "t^5"}}), 2)
            .with_name("rnc5_osc2"),
        "osculating planes {p, p', p''} of the rational normal quintic in P5",
        {true, 1, 2, 5, 3, 1, 2, 2, false, 1, SplitVerdict::Split, forms({{0, 0, 1}})});
    return out;
}

} // namespace detail

/// Built-in entries; the first call builds them and checks every expected
/// record against a recomputation, throwing VerificationError on a mismatch.
inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        auto built = detail::build_catalog();
        for (const auto& e : built) {
            auto diff = record_mismatches(e.expected, compute_record(e.scroll));
            if (!diff.empty()) {
                std::string msg = "catalog self-check failed for " + e.name + ":";
                for (const auto& d : diff) msg += " " + d + ";";
                throw VerificationError(msg);
            }
        }
        return built;
    }();
    return entries;
}

inline std::vector<std::string> catalog_list() {
    std::vector<std::string> names;
    for (const auto& e : catalog()) names.push_back(e.name);
    return names;
}

inline const CatalogEntry& catalog_get(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw InvalidInput("unknown catalog entry '" + name + "'");
}

} // namespace scrolls
