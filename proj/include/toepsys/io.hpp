// io.hpp — JSON file formats shared by the CLI and tests.
//
// MatrixFile: {"rows": R, "cols": C, "re": [...], "im": [...]}, entries
// row-major, re/im of length R*C. FamilyFile: {"n": N, "pairs": [{"a":
// MatrixFile, "b": MatrixFile}, ...]}. Parsers validate shape and throw
// std::invalid_argument on malformed input.

#pragma once

#include "toepsys/pert.hpp"
#include "toepsys/types.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace toepsys {

using nlohmann::json;

inline json matrix_to_json(const CMat& m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

inline CMat matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
        !j.contains("im") || !j["rows"].is_number_integer() || !j["cols"].is_number_integer() ||
        !j["re"].is_array() || !j["im"].is_array())
        throw std::invalid_argument("matrix_from_json: expected {rows, cols, re[], im[]}");
    const auto rows = j["rows"].get<Eigen::Index>();
    const auto cols = j["cols"].get<Eigen::Index>();
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("matrix_from_json: negative dimensions");
    const auto& re = j["re"];
    const auto& im = j["im"];
    if (static_cast<Eigen::Index>(re.size()) != rows * cols ||
        static_cast<Eigen::Index>(im.size()) != rows * cols)
        throw std::invalid_argument("matrix_from_json: re/im length must equal rows*cols");
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j2 = 0; j2 < cols; ++j2) {
            const auto p = i * cols + j2;
            if (!re[p].is_number() || !im[p].is_number())
                throw std::invalid_argument("matrix_from_json: non-numeric entry");
            m(i, j2) = Complex(re[p].get<double>(), im[p].get<double>());
        }
    return m;
}

inline json family_to_json(const KrausFamily& f) {
    json pairs = json::array();
    for (const auto& [a, b] : f.pairs)
        pairs.push_back(json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}});
    return json{{"n", f.n}, {"pairs", pairs}};
}

inline KrausFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("pairs") ||
        !j["n"].is_number_integer() || !j["pairs"].is_array())
        throw std::invalid_argument("family_from_json: expected {n, pairs[]}");
    KrausFamily f{j["n"].get<int>(), {}};
    if (f.n < 1) throw std::invalid_argument("family_from_json: n must be >= 1");
    for (const auto& p : j["pairs"]) {
        if (!p.is_object() || !p.contains("a") || !p.contains("b"))
            throw std::invalid_argument("family_from_json: pair must have a and b");
        CMat a = matrix_from_json(p["a"]);
        CMat b = matrix_from_json(p["b"]);
        if (a.rows() != f.n || a.cols() != f.n || b.rows() != f.n || b.cols() != f.n)
            throw std::invalid_argument("family_from_json: pair entries must be n x n");
        f.pairs.emplace_back(std::move(a), std::move(b));
    }
    if (f.pairs.empty()) throw std::invalid_argument("family_from_json: family is empty");
    return f;
}

// "RE,IM" (or bare "RE") to a complex scalar.
inline Complex parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return Complex(re, 0.0);
        }
        const std::string re_s = s.substr(0, comma);
        const std::string im_s = s.substr(comma + 1);
        const double re = std::stod(re_s, &used);
        if (used != re_s.size()) throw std::invalid_argument("");
        const double im = std::stod(im_s, &used);
        if (used != im_s.size()) throw std::invalid_argument("");
        return Complex(re, im);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_complex: expected RE or RE,IM, got '" + s + "'");
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace toepsys
