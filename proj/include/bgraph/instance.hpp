#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bgraph/degree_sequence.hpp"

namespace bgraph {

// Parse failure with a 1-based position for diagnostics. For single-line
// specs the line is 1 and the column points into the spec string.
struct ParseError : std::runtime_error {
    int line;
    int column;

    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

namespace detail {

inline long long parse_int_at(const std::string& text, std::size_t& pos, int line) {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start)
        throw ParseError("expected an integer", line, static_cast<int>(start) + 1);
    if (pos - start > 9)
        throw ParseError("integer too large", line, static_cast<int>(start) + 1);
    return std::stoll(text.substr(start, pos - start));
}

}  // namespace detail

// Degree spec grammar: spec := term (',' term)*; term := INT | INT '^' INT.
// "3^4,2,1^3" expands to 3,3,3,3,2,1,1,1.
inline std::vector<int> parse_degree_spec(const std::string& spec) {
    std::vector<int> out;
    std::size_t pos = 0;
    if (spec.empty()) throw ParseError("empty degree spec", 1, 1);
    for (;;) {
        const long long value = detail::parse_int_at(spec, pos, 1);
        long long repeat = 1;
        if (pos < spec.size() && spec[pos] == '^') {
            ++pos;
            repeat = detail::parse_int_at(spec, pos, 1);
            if (repeat < 1)
                throw ParseError("repeat count must be positive", 1, static_cast<int>(pos));
        }
        for (long long i = 0; i < repeat; ++i) out.push_back(static_cast<int>(value));
        if (pos == spec.size()) break;
        if (spec[pos] != ',')
            throw ParseError("expected ',' or '^'", 1, static_cast<int>(pos) + 1);
        ++pos;
    }
    return out;
}

// Left-set spec: "none" or a comma list of 1-based vertex indices.
inline std::vector<int> parse_left_spec(const std::string& spec, int n) {
    std::vector<int> out;
    if (spec == "none" || spec.empty()) return out;
    std::size_t pos = 0;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (;;) {
        const std::size_t at = pos;
        const long long v = detail::parse_int_at(spec, pos, 1);
        if (v < 1 || v > n)
            throw ParseError("left vertex out of range 1.." + std::to_string(n), 1,
                             static_cast<int>(at) + 1);
        if (seen[static_cast<std::size_t>(v - 1)])
            throw ParseError("duplicate left vertex " + std::to_string(v), 1,
                             static_cast<int>(at) + 1);
        seen[static_cast<std::size_t>(v - 1)] = 1;
        out.push_back(static_cast<int>(v - 1));
        if (pos == spec.size()) break;
        if (spec[pos] != ',') throw ParseError("expected ','", 1, static_cast<int>(pos) + 1);
        ++pos;
    }
    return out;
}

// Subgraph file: a header `S: i1 i2 ... is`, then one `u v` edge per line.
// Vertices are 1-based host indices; every edge must stay inside S.
inline InducedSubgraphSpec parse_subgraph_stream(std::istream& in, int n) {
    std::string line;
    int line_no = 0;
    std::vector<int> s_vertices;
    bool have_header = false;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (!have_header) {
            if (line.compare(first, 2, "S:") != 0)
                throw ParseError("expected header 'S: i1 i2 ... is'", line_no,
                                 static_cast<int>(first) + 1);
            std::istringstream head(line.substr(first + 2));
            long long v;
            while (head >> v) {
                if (v < 1 || v > n)
                    throw ParseError("S vertex out of range 1.." + std::to_string(n), line_no, 1);
                s_vertices.push_back(static_cast<int>(v - 1));
            }
            if (!head.eof()) throw ParseError("bad vertex in header", line_no, 1);
            if (s_vertices.empty()) throw ParseError("empty S in header", line_no, 1);
            have_header = true;
            continue;
        }
        std::istringstream row(line);
        long long u, v;
        if (!(row >> u >> v)) throw ParseError("expected an edge 'u v'", line_no, 1);
        std::string tail;
        if (row >> tail) throw ParseError("trailing text after edge", line_no, 1);
        for (long long x : {u, v})
            if (x < 1 || x > n)
                throw ParseError("edge vertex out of range 1.." + std::to_string(n), line_no, 1);
        for (long long x : {u, v}) {
            bool in_s = false;
            for (int s : s_vertices) in_s = in_s || s == static_cast<int>(x - 1);
            if (!in_s)
                throw ParseError("edge endpoint " + std::to_string(x) + " outside S", line_no, 1);
        }
        edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    }
    if (!have_header) throw ParseError("missing 'S:' header", std::max(line_no, 1), 1);
    try {
        return InducedSubgraphSpec(s_vertices, edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

}  // namespace bgraph
