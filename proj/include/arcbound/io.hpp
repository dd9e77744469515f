#pragma once

// Plain-text digraph and coloring formats.
//
// Digraph files:
//   digraph <n>
//   <u> <v>        one arc per line, 0-based ids
// Blank lines and lines starting with '#' are ignored.
//
// Coloring files:
//   coloring <n>
//   <v> <c>        one assignment per line

#include "chromatic.hpp"
#include "core.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace arcbound {

namespace detail {

inline bool content_line(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return false;
        if (!isspace(static_cast<unsigned char>(ch))) return true;
    }
    return false;
}

}  // namespace detail

inline OrientedGraph parse_digraph(std::istream& in) {
    std::string line;
    int line_no = 0;
    OrientedGraph d;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::content_line(line)) continue;
        std::istringstream row(line);
        if (!have_header) {
            std::string kw;
            int n;
            if (!(row >> kw >> n) || kw != "digraph" || n < 0)
                throw parse_error("expected header 'digraph <n>'", line_no);
            d = OrientedGraph(n);
            have_header = true;
            continue;
        }
        int u, v;
        if (!(row >> u >> v)) throw parse_error("expected arc '<u> <v>'", line_no);
        std::string rest;
        if (row >> rest) throw parse_error("trailing tokens after arc", line_no);
        try {
            d.add_arc(u, v);
        } catch (const contract_error& e) {
            throw parse_error(e.what(), line_no);
        }
    }
    if (!have_header) throw parse_error("missing 'digraph <n>' header", line_no);
    return d;
}

inline OrientedGraph parse_digraph(const std::string& text) {
    std::istringstream in(text);
    return parse_digraph(in);
}

inline void serialize_digraph(const OrientedGraph& d, std::ostream& out) {
    out << "digraph " << d.n() << "\n";
    for (const auto& e : d.arcs()) out << e.from << " " << e.to << "\n";
}

inline std::string serialize_digraph(const OrientedGraph& d) {
    std::ostringstream out;
    serialize_digraph(d, out);
    return out.str();
}

inline Coloring parse_coloring(std::istream& in) {
    std::string line;
    int line_no = 0;
    Coloring c;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::content_line(line)) continue;
        std::istringstream row(line);
        if (!have_header) {
            std::string kw;
            int n;
            if (!(row >> kw >> n) || kw != "coloring" || n < 0)
                throw parse_error("expected header 'coloring <n>'", line_no);
            c = Coloring(n);
            have_header = true;
            continue;
        }
        int v, col;
        if (!(row >> v >> col)) throw parse_error("expected assignment '<v> <c>'", line_no);
        if (v < 0 || v >= c.n()) throw parse_error("vertex outside universe", line_no);
        if (col < 0) throw parse_error("colors must be >= 0", line_no);
        c.color[v] = col;
    }
    if (!have_header) throw parse_error("missing 'coloring <n>' header", line_no);
    c.recount();
    return c;
}

inline Coloring parse_coloring(const std::string& text) {
    std::istringstream in(text);
    return parse_coloring(in);
}

inline void serialize_coloring(const Coloring& c, std::ostream& out) {
    out << "coloring " << c.n() << "\n";
    for (int v = 0; v < c.n(); ++v)
        if (c.color[v] >= 0) out << v << " " << c.color[v] << "\n";
}

inline std::string serialize_coloring(const Coloring& c) {
    std::ostringstream out;
    serialize_coloring(c, out);
    return out.str();
}

}  // namespace arcbound
