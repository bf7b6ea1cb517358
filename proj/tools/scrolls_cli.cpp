#include "report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

namespace {

using namespace scrolls;
using report::Json;

enum Exit { Ok = 0, Failed = 1, BadInput = 2, Degenerate = 3, Resource = 4 };

struct Options {
    std::uint64_t seed = 0;
    unsigned samples = 3;
    bool json = false;
    bool timing = false;
    std::size_t max_degree = Limits{}.max_degree;
    std::size_t max_bits = Limits{}.max_bits;
    std::string output;

    Context context() const {
        Context ctx;
        ctx.seed = seed;
        ctx.samples = samples;
        ctx.limits.max_degree = max_degree;
        ctx.limits.max_bits = max_bits;
        return ctx;
    }
};

/// A path to a scroll file, or else the name of a catalog entry.
ParametricScroll load(const std::string& source, const Context& ctx) {
    if (std::filesystem::exists(source)) return read_scroll_file(source, ctx);
    for (const auto& name : catalog_list())
        if (name == source) return catalog_get(name).scroll;
    throw InvalidInput("'" + source + "' is neither a readable file nor a catalog entry");
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
}

template <class F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return BadInput;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return BadInput;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return Degenerate;
    } catch (const DegenerateError& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return Degenerate;
    } catch (const ResourceError& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return Resource;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return Failed;
    }
}

template <class F>
Json timed(const Options& opt, F&& f) {
    auto start = std::chrono::steady_clock::now();
    Json out = f();
    if (opt.timing)
        out["timing_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

Json verify_one(const ParametricScroll& x, const ParametricScroll* against, const Context& ctx) {
    Json out = report::header(x, ctx);
    auto checks = report::verify(x, against, ctx);
    out["ok"] = report::all_passed(checks);
    out["checks"] = report::checks_json(checks);
    return out;
}

int run_verify(const Options& opt, const std::string& input, bool all_catalog, const std::string& against_src) {
    Context ctx = opt.context();
    if (all_catalog) {
        const auto& entries = catalog();
        std::vector<std::future<Json>> jobs;
        for (const auto& e : entries)
            jobs.push_back(std::async(std::launch::async, [&e, ctx] {
                try {
                    return verify_one(e.scroll, nullptr, ctx);
                } catch (const Error& err) {
                    Json j = report::header(e.scroll, ctx);
                    j["ok"] = false;
                    j["error"] = err.what();
                    return j;
                }
            }));
        Json results = Json::array();
        bool ok = true;
        for (auto& job : jobs) {
            Json j = job.get();
            ok = ok && j["ok"].get<bool>();
            results.push_back(std::move(j));
        }
        Json out{{"seed", ctx.seed}, {"samples", ctx.samples}, {"ok", ok}, {"entries", results}};
        emit(report::render(out, opt.json), opt.output);
        return ok ? Ok : Failed;
    }
    if (input.empty()) throw InvalidInput("verify needs an input or --all-catalog");
    ParametricScroll x = load(input, ctx);
    std::optional<ParametricScroll> other;
    if (!against_src.empty()) other = load(against_src, ctx);
    Json out = timed(opt, [&] { return verify_one(x, other ? &*other : nullptr, ctx); });
    emit(report::render(out, opt.json), opt.output);
    return out["ok"].get<bool>() ? Ok : Failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of parametric scrolls"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
    app.add_option("--samples", opt.samples, "sample points per randomized test")->capture_default_str();
    app.add_flag("--json", opt.json, "machine-readable output");
    app.add_flag("--timing", opt.timing, "add wall-clock timing to the report");
    app.add_option("--max-degree", opt.max_degree, "cap on intermediate polynomial degree")->capture_default_str();
    app.add_option("--max-bits", opt.max_bits, "cap on intermediate coefficient size in bits")->capture_default_str();
    app.add_option("-o,--output", opt.output, "write output to a file");

    std::string input;
    auto add_input = [&](CLI::App* cmd) { cmd->add_option("input", input, "scroll file or catalog name")->required(); };

    auto* analyze = app.add_subcommand("analyze", "full report");
    add_input(analyze);
    auto* flag = app.add_subcommand("flag", "maximal Gaussian flag");
    add_input(flag);
    auto* dual_cmd = app.add_subcommand("dual", "write the dual scroll as a scroll file");
    add_input(dual_cmd);
    auto* focal = app.add_subcommand("focal", "focal locus and split focus");
    add_input(focal);
    auto* classify_cmd = app.add_subcommand("classify", "classification report");
    add_input(classify_cmd);

    auto* catalog_cmd = app.add_subcommand("catalog", "built-in examples");
    catalog_cmd->require_subcommand(1);
    catalog_cmd->fallthrough();
    catalog_cmd->add_subcommand("list", "list entry names");
    std::string emit_name;
    auto* emit_cmd = catalog_cmd->add_subcommand("emit", "print an entry as a scroll file");
    emit_cmd->add_option("name", emit_name, "entry name")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    bool all_catalog = false;
    std::string against;
    verify_cmd->add_option("input", input, "scroll file or catalog name");
    verify_cmd->add_flag("--all-catalog", all_catalog, "verify every catalog entry");
    verify_cmd->add_option("--against", against, "scroll file or catalog name expected to equal the input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : BadInput;
    }

    return guarded([&]() -> int {
        Context ctx = opt.context();
        if (*analyze) {
            ParametricScroll x = load(input, ctx);
            emit(report::render(timed(opt, [&] { return report::analyze(x, ctx); }), opt.json), opt.output);
        } else if (*flag) {
            ParametricScroll x = load(input, ctx);
            Json out = timed(opt, [&] {
                Json j = report::header(x, ctx);
                j["flag"] = report::flag_json(maximal_flag(x, ctx));
                return j;
            });
            emit(report::render(out, opt.json), opt.output);
        } else if (*dual_cmd) {
            ParametricScroll x = load(input, ctx);
            ParametricScroll d = dual(x, ctx);
            emit(write_scroll(d.with_name(x.name().empty() ? "dual" : x.name() + "_dual")), opt.output);
        } else if (*focal) {
            ParametricScroll x = load(input, ctx);
            Json out = timed(opt, [&] {
                Json j = report::header(x, ctx);
                j["focal"] = report::focal_json(x, focal_data(x, ctx));
                return j;
            });
            emit(report::render(out, opt.json), opt.output);
        } else if (*classify_cmd) {
            ParametricScroll x = load(input, ctx);
            Json out = timed(opt, [&] {
                ClassificationReport r = classify(x, ctx);
                Json j = report::header(x, ctx);
                j["parameters"] = report::parameters_json(x, r.parameters, ctx);
                j["classification"] = report::classification_json(r);
                return j;
            });
            emit(report::render(out, opt.json), opt.output);
        } else if (*catalog_cmd) {
            if (*emit_cmd) {
                emit(write_scroll(catalog_get(emit_name).scroll), opt.output);
            } else {
                std::string text;
                for (const auto& e : catalog()) text += opt.json ? "" : e.name + "  " + e.description + "\n";
                if (opt.json) {
                    Json list = Json::array();
                    for (const auto& e : catalog()) list.push_back(Json{{"name", e.name}, {"description", e.description}});
                    text = list.dump(2) + "\n";
                }
                emit(text, opt.output);
            }
        } else if (*verify_cmd) {
            return run_verify(opt, input, all_catalog, against);
        }
        return Ok;
    });
}
