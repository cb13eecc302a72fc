// Line-oriented arrangement file grammar and deterministic serialization.
//
//   ground N
//   piece L1 ... Lk
//   <tuple lines: k whitespace-separated integers each>
//   # comment lines and blank lines are skipped anywhere
//
// Tuple entries are read in the written label order of their piece header and
// stored against the canonical (sorted) label order.

#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "arrangement.hpp"
#include "core.hpp"

namespace strata {

struct parse_error : error {
    parse_error(int line, int column, const std::string& what)
        : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                what),
          line(line), column(column) {}
    int line;
    int column;
};

namespace detail {

struct token {
    std::string text;
    int column;  // 1-based
};

inline std::vector<token> tokenize_line(const std::string& line) {
    std::vector<token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

inline int parse_int(const token& t, int line_no) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(t.text, &used);
    } catch (const std::exception&) {
        throw parse_error(line_no, t.column, "expected an integer, got '" + t.text + "'");
    }
    if (used != t.text.size())
        throw parse_error(line_no, t.column, "expected an integer, got '" + t.text + "'");
    return value;
}

}  // namespace detail

inline arrangement parse_arrangement(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    struct raw_piece {
        std::vector<std::string> labels;  // written order
        std::vector<std::vector<int>> tuples;
        std::vector<int> tuple_lines;
        int header_line;
    };
    int ground_size = -1;
    std::vector<raw_piece> raw;

    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize_line(line);
        if (toks.empty()) continue;
        const auto& head = toks.front();

        if (head.text == "ground") {
            if (ground_size >= 0) throw parse_error(line_no, head.column, "duplicate 'ground'");
            if (!raw.empty())
                throw parse_error(line_no, head.column, "'ground' must precede pieces");
            if (toks.size() != 2)
                throw parse_error(line_no, head.column, "'ground' takes exactly one integer");
            ground_size = detail::parse_int(toks[1], line_no);
            if (ground_size < 1)
                throw parse_error(line_no, toks[1].column, "ground size must be at least 1");
        } else if (head.text == "piece") {
            if (ground_size < 0)
                throw parse_error(line_no, head.column, "'piece' before 'ground'");
            if (toks.size() < 2)
                throw parse_error(line_no, head.column, "'piece' needs at least one label");
            raw_piece p;
            p.header_line = line_no;
            for (std::size_t k = 1; k < toks.size(); ++k) {
                for (const auto& seen : p.labels)
                    if (seen == toks[k].text)
                        throw parse_error(line_no, toks[k].column,
                                          "duplicate label '" + toks[k].text + "'");
                p.labels.push_back(toks[k].text);
            }
            raw.push_back(std::move(p));
        } else {
            if (raw.empty())
                throw parse_error(line_no, head.column,
                                  "expected 'ground' or 'piece', got '" + head.text + "'");
            auto& p = raw.back();
            if (toks.size() != p.labels.size())
                throw parse_error(line_no, head.column,
                                  "tuple has " + std::to_string(toks.size()) + " entries, piece has " +
                                      std::to_string(p.labels.size()) + " coordinates");
            std::vector<int> tuple;
            for (const auto& t : toks) {
                int v = detail::parse_int(t, line_no);
                if (v < 0 || v >= ground_size)
                    throw parse_error(line_no, t.column,
                                      "entry " + std::to_string(v) + " outside ground range 0.." +
                                          std::to_string(ground_size - 1));
                tuple.push_back(v);
            }
            p.tuples.push_back(std::move(tuple));
            p.tuple_lines.push_back(line_no);
        }
    }
    if (ground_size < 0) throw parse_error(line_no + 1, 1, "missing 'ground' line");

    ground_set g(ground_size);
    arrangement arr(g);
    for (std::size_t pi = 0; pi < raw.size(); ++pi) {
        const auto& p = raw[pi];
        index_set idx(p.labels);
        // position of written label k in the canonical order
        std::vector<int> canon_pos;
        for (const auto& l : p.labels) canon_pos.push_back(idx.position(l));

        subset_of_power s(g, idx);
        std::vector<int> canon(p.labels.size());
        for (std::size_t ti = 0; ti < p.tuples.size(); ++ti) {
            const auto& tuple = p.tuples[ti];
            for (std::size_t k = 0; k < tuple.size(); ++k) canon[canon_pos[k]] = tuple[k];
            if (s.test_tuple(canon))
                throw parse_error(p.tuple_lines[ti], 1,
                                  "duplicate tuple in piece " + std::to_string(pi + 1));
            s.set_tuple(canon);
        }
        arr.add_piece("p" + std::to_string(pi + 1), std::move(s));
    }
    return arr;
}

/// Canonical text form: sorted labels, tuples in encoding order.
/// parse_arrangement(serialize_arrangement(a)) reproduces a exactly.
inline std::string serialize_arrangement(const arrangement& arr) {
    std::ostringstream out;
    out << "ground " << arr.ground().size() << "\n";
    for (const auto& p : arr.pieces()) {
        out << "piece";
        for (const auto& l : p.indices().labels()) out << ' ' << l;
        out << "\n";
        for (const auto& tuple : p.subset.tuples()) {
            for (std::size_t k = 0; k < tuple.size(); ++k) out << (k ? " " : "") << tuple[k];
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace strata
