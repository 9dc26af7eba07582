#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "twint/arrangement.hpp"
#include "twint/gram.hpp"
#include "twint/params.hpp"

namespace twint {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load_json(const std::string& path) { return json::parse(read_file(path)); }

inline std::string fixture_path(const std::string& name) { return std::string(TWINT_FIXTURE_DIR) + "/" + name; }

/// Rational from a JSON string ("p/q") or integer.
inline Rat rat_from_json(const json& v) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    throw std::invalid_argument("matrix entries must be \"p/q\" strings or integers");
}

inline CoeffMatrix matrix_from_json(const json& j) {
    int k = j.at("k").get<int>();
    int n = j.at("n").get<int>();
    const json& rows = j.at("z");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(k + 1))
        throw std::invalid_argument("z must have k+1 rows");
    Matrix<Rat> z(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + n + 2));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != z.cols()) throw std::invalid_argument("z must have k+n+2 columns");
        for (std::size_t c = 0; c < z.cols(); ++c) z(i, c) = rat_from_json(rows[i][c]);
    }
    return CoeffMatrix(k, n, std::move(z));
}

/// CSV: k+1 lines of k+n+2 comma separated "p/q" values.
inline CoeffMatrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<Rat>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<Rat> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(parse_rat(cell));
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw std::invalid_argument("CSV matrix needs at least two rows");
    int k = static_cast<int>(rows.size()) - 1;
    int n = static_cast<int>(rows[0].size()) - k - 2;
    Matrix<Rat> z(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged CSV matrix");
        for (std::size_t c = 0; c < rows[i].size(); ++c) z(i, c) = rows[i][c];
    }
    return CoeffMatrix(k, n, std::move(z));
}

inline CoeffMatrix load_matrix(const std::string& path) {
    std::string text = read_file(path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return matrix_from_csv(text);
    return matrix_from_json(json::parse(text));
}

inline json matrix_to_json(const CoeffMatrix& z) {
    json rows = json::array();
    for (int i = 0; i <= z.k(); ++i) {
        json r = json::array();
        for (int c = 0; c < z.ncols(); ++c) r.push_back(to_string(z(i, c)));
        rows.push_back(r);
    }
    return {{"k", z.k()}, {"n", z.n()}, {"z", rows}};
}

inline json classification_to_json(const Classification& c) {
    json j = {{"variant", variant_name(c.variant)}};
    if (c.variant == Variant::OneDegenerate) j["Jvan"] = c.jvan;
    if (c.variant == Variant::Other) j["vanishing"] = c.vanishing;
    return j;
}

inline std::string entry_text(const ParamContext& ctx, const RatFunc& f) { return ctx.format(f); }
inline std::string entry_text(const ParamContext&, const Rat& r) { return to_string(r); }

template <class T>
json gram_to_json(const GramMatrix<T>& g, const ParamContext& ctx) {
    json entries = json::array();
    for (std::size_t i = 0; i < g.entries.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < g.entries.cols(); ++j) row.push_back(entry_text(ctx, g.entries(i, j)));
        entries.push_back(row);
    }
    return {{"rows", g.rows}, {"cols", g.cols}, {"scalar", "(2*pi*i)^" + std::to_string(g.scalar_power)},
            {"scalar_power", g.scalar_power}, {"entries", entries}};
}

/// Reads back a symbolic Gram matrix written by gram_to_json.
inline GramMatrix<RatFunc> gram_from_json(const json& j, const ParamContext& ctx) {
    GramMatrix<RatFunc> g;
    g.rows = j.at("rows").get<Family>();
    g.cols = j.at("cols").get<Family>();
    g.scalar_power = j.at("scalar_power").get<int>();
    g.entries = Matrix<RatFunc>(g.rows.size(), g.cols.size());
    for (std::size_t i = 0; i < g.rows.size(); ++i)
        for (std::size_t c = 0; c < g.cols.size(); ++c) g.entries(i, c) = ctx.parse(j.at("entries")[i][c].get<std::string>());
    return g;
}

}  // namespace twint
