#pragma once

// File formats.
//
//   points CSV: one point per row, decimal reals, optional header
//   points binary: little-endian "u64 n, u64 d" header then row-major f64
//   Gram CSV: n x n reals
//   results / reports / sidecars: JSON
//
// Doubles are written with shortest round-trip formatting, and JSON files
// are written atomically (temp file + rename), so identical runs produce
// identical bytes.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hullcode/evaluate.hpp"
#include "hullcode/greedy_hull.hpp"
#include "hullcode/point_set.hpp"
#include "hullcode/sparse_combination.hpp"

namespace hullcode {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, r.ptr};
}

inline double parse_double(std::string_view s, int row, int col) {
    // trim spaces
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        throw IoError("bad number at row " + std::to_string(row + 1) + ", column " +
                      std::to_string(col + 1));
    return v;
}

} // namespace detail

inline std::vector<std::vector<double>> read_csv_matrix(const std::string& path,
                                                        bool skip_header = false) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int rownum = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (first && skip_header) {
            first = false;
            continue;
        }
        first = false;
        // skip blank lines
        bool blank = true;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') blank = false;
        if (blank) continue;
        std::vector<double> row;
        std::size_t start = 0;
        int col = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string_view cell(line.data() + start,
                                        (comma == std::string::npos ? line.size() : comma) - start);
            row.push_back(detail::parse_double(cell, rownum, col));
            ++col;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
        ++rownum;
    }
    if (rows.empty()) throw IoError("empty input: " + path);
    return rows;
}

inline void write_csv_matrix(const std::string& path, const PointSet& ps) {
    std::ostringstream out;
    for (int i = 0; i < ps.size(); ++i) {
        for (int j = 0; j < ps.dim(); ++j) {
            if (j) out << ',';
            out << detail::format_double(ps(i, j));
        }
        out << '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << out.str();
}

inline std::vector<std::vector<double>> read_binary_points(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::uint64_t n = 0, d = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&d), sizeof d);
    if (!in || n == 0 || d == 0 || n > (1ull << 32) || d > (1ull << 20))
        throw IoError("bad binary header in " + path);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& row : rows) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(d * sizeof(double)));
        if (!in) throw IoError("truncated binary data in " + path);
    }
    return rows;
}

inline void write_binary_points(const std::string& path, const PointSet& ps) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    const std::uint64_t n = static_cast<std::uint64_t>(ps.size());
    const std::uint64_t d = static_cast<std::uint64_t>(ps.dim());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&d), sizeof d);
    out.write(reinterpret_cast<const char*>(ps.coords().data()),
              static_cast<std::streamsize>(ps.coords().size() * sizeof(double)));
}

/// Read an n x n Gram matrix from CSV.
inline std::vector<double> read_gram_csv(const std::string& path, int& n_out) {
    const auto rows = read_csv_matrix(path);
    const int n = static_cast<int>(rows.size());
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw IoError("Gram matrix is not square in " + path);
        g.insert(g.end(), r.begin(), r.end());
    }
    n_out = n;
    return g;
}

inline void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
        if (!out) throw IoError("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline nlohmann::json codes_to_json(const std::vector<SparseCombination>& codes,
                                    const std::vector<double>& dists) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < codes.size(); ++i) {
        nlohmann::json support = nlohmann::json::array();
        for (const auto& e : codes[i].entries())
            support.push_back(nlohmann::json::array({e.index, e.weight}));
        arr.push_back({{"point", i}, {"support", std::move(support)}, {"dist", dists[i]}});
    }
    return arr;
}

inline nlohmann::json result_to_json(const HullApproximation& hull, const BallTransform& transform,
                                     const std::string& algo, const std::string& engine,
                                     const std::vector<SparseCombination>& codes,
                                     const std::vector<double>& code_dists) {
    nlohmann::json j;
    j["transform"] = {{"center", transform.center}, {"scale", transform.scale}};
    j["selected"] = hull.selected;
    j["radii"] = hull.radii;
    j["codes"] = codes_to_json(codes, code_dists);
    j["stats"] = {{"iterations", hull.stats.iterations},
                  {"eps", hull.stats.eps},
                  {"bound", hull.achieved_bound},
                  {"algo", algo},
                  {"engine", engine},
                  {"delta", hull.stats.delta},
                  {"diam", hull.stats.diam_hint},
                  {"distance_queries", hull.stats.distance_queries}};
    return j;
}

inline nlohmann::json report_to_json(const EvalReport& r) {
    return {{"hausdorff_one_sided", r.hausdorff_one_sided},
            {"max_code_support", r.max_code_support},
            {"mean_code_support", r.mean_code_support},
            {"selected_size", r.selected_size},
            {"eps_used", r.eps_used},
            {"method", r.method}};
}

} // namespace hullcode
