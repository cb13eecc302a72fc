// Finite ground sets, coordinate label sets, and the mixed-radix cell codec
// shared by every subset representation in the library.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

inline constexpr const char* version_string = "strata 0.1.0";

/// Every tuple space is materialized as an explicit bitset, so the number of
/// cells |X|^|T| is hard-capped.  Operations that would exceed the cap throw.
inline constexpr std::uint64_t cell_cap = std::uint64_t{1} << 24;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal-consistency failure: a condition the kernel guarantees was found
/// violated.  Distinct from `error` so callers can surface it as a bug.
struct internal_error : error {
    using error::error;
};

/// The finite set X.  Points are bare indices 0..size-1; no further structure.
class ground_set {
  public:
    ground_set() = default;
    explicit ground_set(int size) : size_(size) {
        if (size < 1) throw error("ground set must have at least one point");
    }
    int size() const { return size_; }
    bool operator==(const ground_set&) const = default;

  private:
    int size_ = 1;
};

/// An ordered set of distinct coordinate labels.  The canonical order is
/// lexicographic and is fixed at construction; all cell encodings, products
/// and serializations derive from it.
class index_set {
  public:
    index_set() = default;
    explicit index_set(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (const auto& l : labels_)
            if (l.empty()) throw error("coordinate label must be nonempty");
        std::sort(labels_.begin(), labels_.end());
        if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            throw error("coordinate labels must be pairwise distinct");
    }

    /// Default labels a, b, c, ... used when only a size is given.
    static index_set alphabet(int count, int offset = 0) {
        if (count < 0 || offset < 0 || count + offset > 26)
            throw error("alphabet labels support at most 26 coordinates");
        std::vector<std::string> ls;
        for (int i = 0; i < count; ++i) ls.push_back(std::string(1, char('a' + offset + i)));
        return index_set(std::move(ls));
    }

    int arity() const { return static_cast<int>(labels_.size()); }
    bool is_empty() const { return labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int pos) const { return labels_.at(pos); }

    /// Position of a label in canonical order, or -1 if absent.
    int position(const std::string& label) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
        if (it == labels_.end() || *it != label) return -1;
        return static_cast<int>(it - labels_.begin());
    }
    bool contains(const std::string& label) const { return position(label) >= 0; }

    bool subset_of(const index_set& other) const {
        return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(),
                             labels_.end());
    }
    bool disjoint_from(const index_set& other) const {
        std::vector<std::string> common;
        std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(),
                              other.labels_.end(), std::back_inserter(common));
        return common.empty();
    }

    index_set minus(const index_set& other) const {
        std::vector<std::string> rest;
        std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(),
                            other.labels_.end(), std::back_inserter(rest));
        return index_set(std::move(rest));
    }
    index_set minus(const std::string& label) const {
        std::vector<std::string> rest;
        for (const auto& l : labels_)
            if (l != label) rest.push_back(l);
        return index_set(std::move(rest));
    }

    friend index_set disjoint_union(const index_set& a, const index_set& b) {
        if (!a.disjoint_from(b)) throw error("index sets are not label-disjoint");
        std::vector<std::string> all = a.labels_;
        all.insert(all.end(), b.labels_.begin(), b.labels_.end());
        return index_set(std::move(all));
    }

    std::string to_string() const {
        std::string out;
        for (const auto& l : labels_) {
            if (!out.empty()) out += ' ';
            out += l;
        }
        return out;
    }

    bool operator==(const index_set&) const = default;

  private:
    std::vector<std::string> labels_;  // sorted, distinct
};

/// Number of cells of X^k, checked against the cap.  X^0 has one cell.
inline std::uint64_t power_cells(const ground_set& ground, int arity) {
    if (arity < 0) throw error("negative arity");
    std::uint64_t cells = 1;
    for (int i = 0; i < arity; ++i) {
        cells *= static_cast<std::uint64_t>(ground.size());
        if (cells > cell_cap) throw error("cell cap exceeded: |X|^|T| > 2^24");
    }
    return cells;
}

/// Mixed-radix encoding of a tuple, first coordinate most significant.
inline std::uint64_t encode_tuple(std::span<const int> tuple, const ground_set& ground) {
    std::uint64_t index = 0;
    for (int v : tuple) {
        if (v < 0 || v >= ground.size()) throw error("tuple entry out of ground-set range");
        index = index * static_cast<std::uint64_t>(ground.size()) + static_cast<std::uint64_t>(v);
    }
    return index;
}

inline void decode_tuple(std::uint64_t index, const ground_set& ground, std::span<int> out) {
    for (int pos = static_cast<int>(out.size()) - 1; pos >= 0; --pos) {
        out[pos] = static_cast<int>(index % static_cast<std::uint64_t>(ground.size()));
        index /= static_cast<std::uint64_t>(ground.size());
    }
    if (index != 0) throw error("cell index out of range for this tuple space");
}

inline std::vector<int> decode_tuple(std::uint64_t index, const ground_set& ground, int arity) {
    std::vector<int> out(static_cast<std::size_t>(arity));
    decode_tuple(index, ground, std::span<int>(out));
    return out;
}

/// An injection of coordinate labels j : S -> T.  Stored positionally against
/// the canonical orders of source and target.
class coord_injection {
  public:
    coord_injection() = default;

    /// `images[i]` is the target label assigned to source label i (canonical
    /// source order).
    coord_injection(index_set source, index_set target, std::vector<std::string> images)
        : source_(std::move(source)), target_(std::move(target)) {
        if (static_cast<int>(images.size()) != source_.arity())
            throw error("injection must assign every source label");
        target_pos_.reserve(images.size());
        for (const auto& img : images) {
            int p = target_.position(img);
            if (p < 0) throw error("injection image label not in target: " + img);
            target_pos_.push_back(p);
        }
        auto sorted = target_pos_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw error("coordinate map is not injective");
    }

    /// Positional form: `target_positions[i]` is the target position of
    /// source label i.
    static coord_injection from_positions(index_set source, index_set target,
                                          std::vector<int> target_positions) {
        std::vector<std::string> images;
        images.reserve(target_positions.size());
        for (int p : target_positions) images.push_back(target.label(p));
        return coord_injection(std::move(source), std::move(target), std::move(images));
    }

    const index_set& source() const { return source_; }
    const index_set& target() const { return target_; }
    int target_position(int source_pos) const { return target_pos_.at(source_pos); }
    const std::string& image_label(int source_pos) const {
        return target_.label(target_pos_.at(source_pos));
    }

    bool uses(const std::string& target_label) const {
        int p = target_.position(target_label);
        return p >= 0 && std::find(target_pos_.begin(), target_pos_.end(), p) != target_pos_.end();
    }

    /// True when every image label lies in `sub` (the injection factors
    /// through sub ⊆ target).
    bool factors_through(const index_set& sub) const {
        for (int p : target_pos_)
            if (!sub.contains(target_.label(p))) return false;
        return true;
    }

    std::string to_string() const {
        std::string out;
        for (int i = 0; i < source_.arity(); ++i) {
            if (!out.empty()) out += ",";
            out += source_.label(i) + "->" + image_label(i);
        }
        return out;
    }

    bool operator==(const coord_injection&) const = default;

  private:
    index_set source_;
    index_set target_;
    std::vector<int> target_pos_;
};

}  // namespace strata
