// Arrangements: named pieces A_i ⊆ X^{S_i} with the coordinate-axis and
// pullback-freeness hypothesis checks.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "subset.hpp"

namespace strata {

struct arrangement_piece {
    std::string name;
    subset_of_power subset;

    const index_set& indices() const { return subset.indices(); }
    int arity() const { return subset.arity(); }
};

class arrangement {
  public:
    arrangement() = default;
    explicit arrangement(ground_set ground) : ground_(ground) {}

    const ground_set& ground() const { return ground_; }
    int piece_count() const { return static_cast<int>(pieces_.size()); }
    const arrangement_piece& piece(int i) const { return pieces_.at(i); }
    const std::vector<arrangement_piece>& pieces() const { return pieces_; }

    void add_piece(std::string name, subset_of_power subset) {
        if (!(subset.ground() == ground_)) throw error("piece ground set does not match");
        if (subset.arity() == 0) throw error("piece must have at least one coordinate");
        for (const auto& p : pieces_)
            if (p.name == name) throw error("duplicate piece name: " + name);
        pieces_.push_back({std::move(name), std::move(subset)});
    }

  private:
    ground_set ground_;
    std::vector<arrangement_piece> pieces_;
};

/// A coordinate axis found inside a piece: fixing the other coordinates of
/// A_i at `base` leaves the `axis_label` coordinate completely unconstrained.
struct axis_witness {
    int piece;               // index into arrangement::pieces()
    std::string axis_label;  // the free coordinate s ∈ S_i
    std::vector<int> base;   // x̄ ∈ X^{S_i \ {s}}, canonical label order

    std::string to_string(const arrangement& arr) const {
        std::string out = "piece " + arr.piece(piece).name + " axis " + axis_label + " base (";
        for (std::size_t k = 0; k < base.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(base[k]);
        }
        out += ")";
        return out;
    }
};

/// Search A_i for a fiber {x̄} x X ⊆ A_i in coordinate `axis_pos`.
/// For arity 1 this asks whether A_i is all of X.
inline std::optional<std::vector<int>> find_axis(const subset_of_power& piece, int axis_pos) {
    int arity = piece.arity();
    const ground_set& g = piece.ground();
    std::uint64_t rest_cells = power_cells(g, arity - 1);
    std::vector<int> base(static_cast<std::size_t>(arity - 1));
    std::vector<int> tuple(static_cast<std::size_t>(arity));
    for (std::uint64_t rc = 0; rc < rest_cells; ++rc) {
        decode_tuple(rc, g, std::span<int>(base));
        for (int i = 0, k = 0; i < arity; ++i)
            if (i != axis_pos) tuple[i] = base[k++];
        bool fiber = true;
        for (int v = 0; v < g.size() && fiber; ++v) {
            tuple[axis_pos] = v;
            fiber = piece.test_tuple(tuple);
        }
        if (fiber) return base;
    }
    return std::nullopt;
}

/// First axis in canonical order (pieces in order, coordinates in canonical
/// label order, bases in encoding order), or nullopt when the arrangement is
/// axis-free.
inline std::optional<axis_witness> check_axis_free(const arrangement& arr) {
    for (int i = 0; i < arr.piece_count(); ++i) {
        const auto& piece = arr.piece(i);
        for (int pos = 0; pos < piece.arity(); ++pos) {
            if (auto base = find_axis(piece.subset, pos))
                return axis_witness{i, piece.indices().label(pos), std::move(*base)};
        }
    }
    return std::nullopt;
}

/// A coordinate in which a whole piece is unconstrained.
struct free_coordinate_witness {
    int piece;
    std::string label;
};

/// Pullback-freeness: no piece is free in any of its coordinates.  The empty
/// piece is free in every coordinate, so it passes the axis check but fails
/// this one.
inline std::optional<free_coordinate_witness> check_pullback_free(const arrangement& arr) {
    for (int i = 0; i < arr.piece_count(); ++i) {
        const auto& piece = arr.piece(i);
        for (int pos = 0; pos < piece.arity(); ++pos) {
            const std::string& label = piece.indices().label(pos);
            if (is_free_in(piece.subset, label)) return free_coordinate_witness{i, label};
        }
    }
    return std::nullopt;
}

struct hypothesis_report {
    bool axis_free = false;
    bool pullback_free = false;
    std::optional<axis_witness> axis;
    std::optional<free_coordinate_witness> free_coord;
    bool any_piece_empty = false;
};

inline hypothesis_report check_hypotheses(const arrangement& arr) {
    hypothesis_report rep;
    rep.axis = check_axis_free(arr);
    rep.free_coord = check_pullback_free(arr);
    rep.axis_free = !rep.axis.has_value();
    rep.pullback_free = !rep.free_coord.has_value();
    for (const auto& p : arr.pieces())
        if (p.subset.is_empty()) rep.any_piece_empty = true;
    if (rep.axis_free && !rep.any_piece_empty && !rep.pullback_free)
        throw internal_error("axis-free arrangement with nonempty pieces must be pullback-free");
    return rep;
}

}  // namespace strata
