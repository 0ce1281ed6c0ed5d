#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "k2km/bigint.hpp"
#include "k2km/gcm.hpp"
#include "k2km/matrix.hpp"

namespace k2km {

class MatrixTextError : public std::runtime_error {
public:
    explicit MatrixTextError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Rows separated by ';' or newline, entries by whitespace (commas count as
/// whitespace), surrounding brackets ignored. "[[2,-1],[-1,2]]" and
/// "2 -1; -1 2" parse to the same matrix.
inline IntMatrix parse_matrix_text(const std::string& text) {
    std::string norm;
    norm.reserve(text.size());
    for (char c : text) {
        if (c == ']') {
            norm += ';';
        } else if (c == '[' || c == '(' || c == ')' || c == ',' || c == '\t' || c == '\r') {
            norm += ' ';
        } else if (c == '\n') {
            norm += ';';
        } else {
            norm += c;
        }
    }
    std::vector<std::vector<BigInt>> rows;
    std::size_t pos = 0;
    while (pos <= norm.size()) {
        std::size_t sep = norm.find(';', pos);
        std::string rowtext = sep == std::string::npos ? norm.substr(pos) : norm.substr(pos, sep - pos);
        std::vector<BigInt> row;
        std::size_t k = 0;
        while (k < rowtext.size()) {
            while (k < rowtext.size() && rowtext[k] == ' ') ++k;
            std::size_t start = k;
            while (k < rowtext.size() && rowtext[k] != ' ') ++k;
            if (k > start) {
                try {
                    row.emplace_back(std::string_view(rowtext).substr(start, k - start));
                } catch (const std::invalid_argument&) {
                    throw MatrixTextError("not an integer: '" + rowtext.substr(start, k - start) + "'");
                }
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
        if (sep == std::string::npos) break;
        pos = sep + 1;
    }
    if (rows.empty()) throw MatrixTextError("no matrix entries found");
    const std::size_t cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw MatrixTextError("ragged rows in matrix text");
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

inline std::string format_matrix(const IntMatrix& m) {
    std::string s;
    for (int i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) s += " ";
            s += m.at(i, j).to_string();
        }
    }
    return s;
}

/// Parse then validate; MatrixTextError for malformed text, GcmError for
/// text that parses but breaks the GCM axioms.
inline Gcm parse_gcm(const std::string& text) { return validate(parse_matrix_text(text)); }

}  // namespace k2km
