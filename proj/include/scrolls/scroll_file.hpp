#pragma once

#include "errors.hpp"
#include "parse.hpp"
#include "scroll.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace scrolls {

/// Text form of a scroll, one key per line:
///
///     # comment
///     name: twisted_cubic_tangent
///     base_vars: t
///     ambient_dim: 3
///     row: "1", "t", "t^2", "t^3"
///     row: "0", "1", "2*t", "3*t^2"
///
/// `base_vars` is a comma-separated (possibly empty) list of identifiers and
/// every row holds ambient_dim + 1 quoted polynomial expressions.
struct ScrollFile {
    std::string name;
    VarList base_vars;
    std::size_t ambient_dim = 0;
    std::vector<std::vector<std::string>> rows;
};

namespace detail {

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct QuotedEntry {
    std::string text;
    std::size_t column; // 1-based column of the first character inside the quotes
};

inline std::vector<QuotedEntry> parse_quoted_list(const std::string& line, std::size_t start, std::size_t lineno) {
    std::vector<QuotedEntry> out;
    std::size_t i = start;
    auto skip = [&] {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    skip();
    if (i >= line.size()) throw ParseError("row has no entries", lineno, i + 1);
    for (;;) {
        if (line[i] != '"') throw ParseError("expected '\"'", lineno, i + 1);
        std::size_t close = line.find('"', i + 1);
        if (close == std::string::npos) throw ParseError("unterminated string", lineno, i + 1);
        out.push_back({line.substr(i + 1, close - i - 1), i + 2});
        i = close + 1;
        skip();
        if (i >= line.size()) return out;
        if (line[i] != ',') throw ParseError("expected ',' between entries", lineno, i + 1);
        ++i;
        skip();
        if (i >= line.size()) throw ParseError("trailing ','", lineno, i + 1);
    }
}

} // namespace detail

/// Parse a scroll file and build the scroll. Positions in errors refer to the
/// file (1-based line and column).
inline ParametricScroll read_scroll(const std::string& text, const Context& ctx = {}) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::string> name;
    std::optional<VarList> vars;
    std::optional<std::size_t> ambient;
    std::vector<std::vector<detail::QuotedEntry>> rows;
    std::vector<std::size_t> row_lines;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = detail::trim(line);
        if (body.empty() || body[0] == '#') continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno, 1);
        std::string key = detail::trim(line.substr(0, colon));
        std::string value = detail::trim(line.substr(colon + 1));
        std::size_t value_col = line.find_first_not_of(" \t", colon + 1);
        value_col = value_col == std::string::npos ? line.size() + 1 : value_col + 1;
        if (key == "name") {
            if (name) throw ParseError("duplicate key 'name'", lineno, 1);
            name = value;
        } else if (key == "base_vars") {
            if (vars) throw ParseError("duplicate key 'base_vars'", lineno, 1);
            VarList list;
            std::size_t pos = colon + 1;
            if (!value.empty()) {
                for (;;) {
                    std::size_t comma = line.find(',', pos);
                    std::string item = detail::trim(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
                    std::size_t item_col = line.find_first_not_of(" \t", pos) + 1;
                    if (!detail::is_identifier(item))
                        throw ParseError("invalid base variable name '" + item + "'", lineno, item_col);
                    if (std::find(list.begin(), list.end(), item) != list.end())
                        throw ParseError("duplicate base variable '" + item + "'", lineno, item_col);
                    list.push_back(item);
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
            }
            vars = list;
        } else if (key == "ambient_dim") {
            if (ambient) throw ParseError("duplicate key 'ambient_dim'", lineno, 1);
            if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw ParseError("ambient_dim must be a nonnegative integer", lineno, value_col);
            ambient = static_cast<std::size_t>(std::stoul(value));
        } else if (key == "row") {
            rows.push_back(detail::parse_quoted_list(line, colon + 1, lineno));
            row_lines.push_back(lineno);
        } else {
            throw ParseError("unknown key '" + key + "'", lineno, 1);
        }
    }
    if (!vars) throw ParseError("missing key 'base_vars'", 0, 0);
    if (!ambient) throw ParseError("missing key 'ambient_dim'", 0, 0);
    if (rows.empty()) throw ParseError("no rows given", 0, 0);

    VarsPtr vp = make_vars(*vars);
    std::vector<std::vector<MultiPoly>> polys;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != *ambient + 1)
            throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                 " entries, expected " + std::to_string(*ambient + 1),
                             row_lines[i], 1);
        std::vector<MultiPoly> r;
        for (const auto& entry : rows[i]) {
            try {
                r.push_back(parse_poly(entry.text, vp));
            } catch (const ParseError& e) {
                throw ParseError(e.reason(), row_lines[i], entry.column + (e.column() > 0 ? e.column() - 1 : 0));
            }
        }
        polys.push_back(std::move(r));
    }
    return ParametricScroll::make(PolyMatrix::from_rows(vp, polys, *ambient + 1), name.value_or(""), ctx);
}

inline ParametricScroll read_scroll_file(const std::string& path, const Context& ctx = {}) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return read_scroll(buf.str(), ctx);
}

inline std::string write_scroll(const ParametricScroll& x) {
    std::string out;
    if (!x.name().empty()) out += "name: " + x.name() + "\n";
    out += "base_vars: ";
    for (std::size_t i = 0; i < x.base_vars()->size(); ++i) out += (i ? ", " : "") + (*x.base_vars())[i];
    out += "\nambient_dim: " + std::to_string(x.ambient_dim()) + "\n";
    for (const auto& row : x.classifying().to_strings()) {
        out += "row: ";
        for (std::size_t j = 0; j < row.size(); ++j) out += (j ? ", \"" : "\"") + row[j] + "\"";
        out += "\n";
    }
    return out;
}

} // namespace scrolls
