#pragma once

#include <scrolls/catalog.hpp>
#include <scrolls/classify.hpp>
#include <scrolls/scroll_file.hpp>

#include "json.hpp"

#include <string>
#include <vector>

namespace scrolls::report {

using Json = nlohmann::ordered_json;

inline Json optional_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json rows_json(const PolyMatrix& m) { return Json(m.to_strings()); }

inline Json rows_json(const QMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        out.push_back(row);
    }
    return out;
}

inline Json parameters_json(const ParametricScroll& x, const ScrollParameters& p, const Context& ctx) {
    return Json{{"g", p.g},
                {"k", p.k},
                {"N", p.N},
                {"stationary", is_stationary(x, ctx)},
                {"spread_dim", p.spread_dim},
                {"gauss_dim", p.gauss_dim},
                {"gauss_deficiency", p.spread_dim - p.gauss_dim},
                {"index_m", p.index_m},
                {"coindex_l", optional_json(p.coindex_l)},
                {"is_filling", p.is_filling},
                {"is_degenerate", p.is_degenerate}};
}

inline Json classification_json(const ClassificationReport& r) {
    return Json{{"verdict", to_string(r.verdict)},
                {"witness", r.witness ? rows_json(*r.witness) : Json(nullptr)},
                {"curve_order", optional_json(r.curve_order)},
                {"constant_count", optional_json(r.constant_count)}};
}

inline Json flag_json(const GaussianFlag& f) {
    Json members = Json::array();
    for (const auto& m : f.members) members.push_back(Json{{"k", m.fibre_dim()}, {"rows", rows_json(m.classifying())}});
    return Json{{"members", members},
                {"osc_dims", f.osc_dims},
                {"pivot_index", f.pivot_index},
                {"index_m", f.index_m},
                {"coindex_l", optional_json(f.coindex_l)},
                {"bottom_is_constant", f.bottom_is_constant},
                {"pivot_stationary", f.pivot_stationary}};
}

inline Json split_json(const ParametricScroll& x, const SplitFocus& s) {
    VarList names = fibre_var_names(x);
    Json forms = Json::array();
    for (const auto& f : s.forms) forms.push_back(form_to_string(f, names));
    Json point = Json::array();
    for (const auto& v : s.base_point) point.push_back(v.get_str());
    return Json{{"verdict", to_string(s.verdict)},
                {"base_point", point},
                {"forms", forms},
                {"advisory", s.advisory ? Json(*s.advisory) : Json(nullptr)}};
}

inline Json focal_json(const ParametricScroll& x, const FocalData& f) {
    return Json{{"degree", f.degree_in_x},
                {"image_rank", f.image_rank},
                {"is_hypersurface", f.is_hypersurface},
                {"polynomial", f.focal_polynomial ? Json(f.focal_polynomial->to_string()) : Json(nullptr)},
                {"split", f.split ? split_json(x, *f.split) : Json(nullptr)}};
}

inline Json dual_summary_json(const ParametricScroll& d, const Context& ctx) {
    return Json{{"g", d.base_dim()},
                {"k", d.fibre_dim()},
                {"N", d.ambient_dim()},
                {"spread_dim", spread_dim(d, ctx)},
                {"gauss_dim", gauss_dimension(d, ctx)}};
}

/// Runs `f` and stores its result, or the message of a precondition failure.
/// Other errors propagate so that the caller maps them to an exit code.
template <class F>
Json section(F&& f) {
    try {
        return f();
    } catch (const PreconditionError& e) {
        return Json{{"error", e.what()}};
    }
}

inline Json header(const ParametricScroll& x, const Context& ctx) {
    return Json{{"name", x.name()}, {"seed", ctx.seed}, {"samples", ctx.samples}};
}

inline Json analyze(const ParametricScroll& x, const Context& ctx) {
    Json out = header(x, ctx);
    out["parameters"] = parameters_json(x, scroll_parameters(x, ctx), ctx);
    out["classification"] = section([&] { return classification_json(classify(x, ctx)); });
    out["flag"] = section([&] { return flag_json(maximal_flag(x, ctx)); });
    out["focal"] = section([&] { return focal_json(x, focal_data(x, ctx)); });
    out["dual"] = section([&] { return dual_summary_json(dual(x, ctx), ctx); });
    return out;
}

struct Check {
    std::string name;
    std::string status; // "pass", "fail" or "skip"
    std::string detail;
};

inline Json checks_json(const std::vector<Check>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) out.push_back(Json{{"check", c.name}, {"status", c.status}, {"detail", c.detail}});
    return out;
}

inline bool all_passed(const std::vector<Check>& checks) {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == "fail"; });
}

/// Invariant suite for one scroll. `against` is compared by rowspan when given.
inline std::vector<Check> verify(const ParametricScroll& x, const ParametricScroll* against, const Context& ctx) {
    std::vector<Check> out;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        out.push_back({std::move(name), ok ? "pass" : "fail", std::move(detail)});
    };
    auto skip = [&](std::string name, std::string why) { out.push_back({std::move(name), "skip", std::move(why)}); };

    if (x.fibre_dim() < x.ambient_dim()) {
        ParametricScroll d = dual(x, ctx);
        add("duality_involution", same_scroll(dual(d, ctx), x, ctx));
        ParametricScroll reread = read_scroll(write_scroll(d), ctx);
        add("dual_file_roundtrip", same_scroll(dual(reread, ctx), x, ctx));
    } else {
        skip("duality_involution", "fibres fill the ambient space");
        skip("dual_file_roundtrip", "fibres fill the ambient space");
    }

    const bool stationary = is_stationary(x, ctx);
    if (stationary && is_nondegenerate(x, ctx) && !is_cone(x, ctx).is_cone) {
        bool checked = false, ok = true;
        if (!spreads_onto_linear_space(x, ctx)) {
            ParametricScroll up = derived(x, ctx);
            auto back = antiderived_unchecked(up, ctx);
            ok = ok && back && same_scroll(*back, x, ctx);
            checked = true;
        }
        if (auto down = antiderived_unchecked(x, ctx)) {
            ok = ok && is_stationary(*down, ctx) && same_scroll(derived(*down, ctx), x, ctx);
            checked = true;
        }
        if (checked)
            add("biduality", ok);
        else
            skip("biduality", "neither side defined");
    } else {
        skip("biduality", "requires a stationary, nondegenerate, non-cone scroll");
    }

    FocalData fd = focal_data(x, ctx);
    if (stationary)
        add("focal_degree", fd.degree_in_x == x.base_dim(),
            "degree " + std::to_string(fd.degree_in_x) + ", g = " + std::to_string(x.base_dim()));
    else
        add("focal_degree", fd.degree_in_x < x.base_dim(),
            "degree " + std::to_string(fd.degree_in_x) + " < g = " + std::to_string(x.base_dim()) + " (not stationary)");

    if (fd.split && fd.split->verdict == SplitVerdict::Split && x.fibre_dim() < x.ambient_dim()) {
        DualSplitCheck dc = dual_split_check_report(x, ctx);
        if (dc.dual.verdict == SplitVerdict::Split || dc.ok)
            add("split_round_trip", dc.ok);
        else
            skip("split_round_trip", "dual focal locus is not a split hypersurface");
    } else {
        skip("split_round_trip", "focus is not split");
    }

    for (const auto& e : catalog()) {
        if (e.name != x.name() || !same_scroll(e.scroll, x, ctx)) continue;
        auto diff = record_mismatches(e.expected, compute_record(x, ctx));
        std::string detail;
        for (const auto& d : diff) detail += (detail.empty() ? "" : "; ") + d;
        add("catalog_record", diff.empty(), detail);
    }

    if (against) {
        bool ok = x.ambient_dim() == against->ambient_dim() && same_scroll(x, *against, ctx);
        add("against", ok, against->name());
    }
    return out;
}

/// Indented `key: value` rendering of a report for terminals.
inline void render_text(const Json& j, std::string& out, const std::string& indent = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        std::string key = j.is_object() ? it.key() + ":" : "-";
        bool scalar_array = v.is_array() && std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
        if (v.is_object() && v.contains("check")) {
            std::string detail = v["detail"].get<std::string>();
            out += indent + v["status"].get<std::string>() + "  " + v["check"].get<std::string>() +
                   (detail.empty() ? "" : "  (" + detail + ")") + "\n";
        } else if (v.is_object() || (v.is_array() && !scalar_array && !v.empty())) {
            out += indent + key + "\n";
            render_text(v, out, indent + "  ");
        } else if (v.is_string()) {
            out += indent + key + " " + v.get<std::string>() + "\n";
        } else {
            out += indent + key + " " + v.dump() + "\n";
        }
    }
}

inline std::string render(const Json& j, bool json) {
    if (json) return j.dump(2) + "\n";
    std::string out;
    render_text(j, out);
    return out;
}

} // namespace scrolls::report
