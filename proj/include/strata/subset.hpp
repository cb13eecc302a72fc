// Subsets of finite tuple spaces X^T as explicit cell bitsets, with the
// product / pullback / projection / coordinate-freeness kernel.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "core.hpp"

namespace strata {

/// A subset of X^T for a fixed ground set X and label set T, stored as one
/// bit per cell of X^T in mixed-radix order, packed into 64-bit words.
/// Bits beyond the last cell are kept zero.
class subset_of_power {
  public:
    subset_of_power() = default;

    subset_of_power(ground_set ground, index_set indices)
        : ground_(ground), indices_(std::move(indices)),
          cells_(power_cells(ground_, indices_.arity())), words_((cells_ + 63) / 64, 0) {}

    static subset_of_power full(ground_set ground, index_set indices) {
        subset_of_power s(ground, std::move(indices));
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.clear_tail();
        return s;
    }
    static subset_of_power empty(ground_set ground, index_set indices) {
        return subset_of_power(ground, std::move(indices));
    }

    const ground_set& ground() const { return ground_; }
    const index_set& indices() const { return indices_; }
    int arity() const { return indices_.arity(); }
    std::uint64_t cells() const { return cells_; }

    bool test(std::uint64_t cell) const {
        check_cell(cell);
        return (words_[cell >> 6] >> (cell & 63)) & 1;
    }
    void set(std::uint64_t cell, bool value = true) {
        check_cell(cell);
        std::uint64_t mask = std::uint64_t{1} << (cell & 63);
        if (value)
            words_[cell >> 6] |= mask;
        else
            words_[cell >> 6] &= ~mask;
    }

    bool test_tuple(std::span<const int> tuple) const {
        if (static_cast<int>(tuple.size()) != arity())
            throw error("tuple arity does not match index set");
        return test(encode_tuple(tuple, ground_));
    }
    void set_tuple(std::span<const int> tuple, bool value = true) {
        if (static_cast<int>(tuple.size()) != arity())
            throw error("tuple arity does not match index set");
        set(encode_tuple(tuple, ground_), value);
    }

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
        return c;
    }
    bool is_empty() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }
    bool is_full() const { return count() == cells_; }

    /// First member cell in encoding order, if any.
    std::optional<std::uint64_t> first_cell() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i])
                return (static_cast<std::uint64_t>(i) << 6) +
                       static_cast<std::uint64_t>(__builtin_ctzll(words_[i]));
        return std::nullopt;
    }

    bool same_space(const subset_of_power& other) const {
        return ground_ == other.ground_ && indices_ == other.indices_;
    }

    bool operator==(const subset_of_power& other) const {
        return same_space(other) && words_ == other.words_;
    }

    /// Set containment: every cell of `other` is a cell of this.
    bool contains(const subset_of_power& other) const {
        require_same_space(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (other.words_[i] & ~words_[i]) return false;
        return true;
    }

    subset_of_power intersect(const subset_of_power& other) const {
        require_same_space(other);
        subset_of_power out(ground_, indices_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
        return out;
    }

    /// Strict total order on subsets of one space: cell-ascending, with
    /// absent-before-present at the first differing cell.
    static int lex_compare(const subset_of_power& a, const subset_of_power& b) {
        a.require_same_space(b);
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            std::uint64_t diff = a.words_[i] ^ b.words_[i];
            if (diff) {
                std::uint64_t low = diff & (~diff + 1);
                return (a.words_[i] & low) ? 1 : -1;
            }
        }
        return 0;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h;
    }

    std::vector<std::vector<int>> tuples() const {
        std::vector<std::vector<int>> out;
        for (std::uint64_t c = 0; c < cells_; ++c)
            if (test(c)) out.push_back(decode_tuple(c, ground_, arity()));
        return out;
    }

  private:
    void require_same_space(const subset_of_power& other) const {
        if (!same_space(other)) throw error("subsets live in different tuple spaces");
    }
    void check_cell(std::uint64_t cell) const {
        if (cell >= cells_) throw error("cell index outside the tuple space");
    }
    void clear_tail() {
        if (cells_ & 63) words_.back() &= (std::uint64_t{1} << (cells_ & 63)) - 1;
    }

    ground_set ground_;
    index_set indices_;
    std::uint64_t cells_ = 0;  // unusable until constructed with a space
    std::vector<std::uint64_t> words_;
};

/// b x c in X^(S ⊔ T) for label-disjoint S, T.  Membership is coordinatewise:
/// a tuple lies in the product iff its S-part lies in b and its T-part in c.
inline subset_of_power product(const subset_of_power& b, const subset_of_power& c) {
    if (!(b.ground() == c.ground())) throw error("product factors have different ground sets");
    index_set st = disjoint_union(b.indices(), c.indices());
    power_cells(b.ground(), st.arity());
    subset_of_power out(b.ground(), st);

    std::vector<int> s_pos(b.indices().arity()), t_pos(c.indices().arity());
    for (int i = 0; i < b.indices().arity(); ++i) s_pos[i] = st.position(b.indices().label(i));
    for (int i = 0; i < c.indices().arity(); ++i) t_pos[i] = st.position(c.indices().label(i));

    std::vector<int> tuple(st.arity()), sub_b(b.indices().arity()), sub_c(c.indices().arity());
    for (std::uint64_t cell = 0; cell < out.cells(); ++cell) {
        decode_tuple(cell, b.ground(), std::span<int>(tuple));
        for (int i = 0; i < b.indices().arity(); ++i) sub_b[i] = tuple[s_pos[i]];
        for (int i = 0; i < c.indices().arity(); ++i) sub_c[i] = tuple[t_pos[i]];
        if (b.test_tuple(sub_b) && c.test_tuple(sub_c)) out.set(cell);
    }
    return out;
}

/// Pullback of a ⊆ X^S along j : S -> T, as a subset of X^T: a tuple t is a
/// member iff (t ∘ j) ∈ a.
inline subset_of_power pullback(const subset_of_power& a, const coord_injection& j) {
    if (!(a.indices() == j.source())) throw error("pullback: injection source does not match");
    power_cells(a.ground(), j.target().arity());
    subset_of_power out(a.ground(), j.target());

    std::vector<int> tuple(j.target().arity()), composed(j.source().arity());
    for (std::uint64_t cell = 0; cell < out.cells(); ++cell) {
        decode_tuple(cell, a.ground(), std::span<int>(tuple));
        for (int i = 0; i < j.source().arity(); ++i) composed[i] = tuple[j.target_position(i)];
        if (a.test_tuple(composed)) out.set(cell);
    }
    return out;
}

/// Image of b ⊆ X^T under the coordinate projection X^T -> X^S, S ⊆ T.
inline subset_of_power project(const subset_of_power& b, const index_set& onto) {
    if (!onto.subset_of(b.indices())) throw error("projection target is not a subset of indices");
    subset_of_power out(b.ground(), onto);

    std::vector<int> pos(onto.arity());
    for (int i = 0; i < onto.arity(); ++i) pos[i] = b.indices().position(onto.label(i));

    std::vector<int> tuple(b.arity()), sub(onto.arity());
    for (std::uint64_t cell = 0; cell < b.cells(); ++cell) {
        if (!b.test(cell)) continue;
        decode_tuple(cell, b.ground(), std::span<int>(tuple));
        for (int i = 0; i < onto.arity(); ++i) sub[i] = tuple[pos[i]];
        out.set_tuple(sub);
    }
    return out;
}

/// Coordinate `label` is free in b when membership never depends on it:
/// changing that coordinate of a member tuple always yields a member.
/// The empty subset is free in every coordinate.
inline bool is_free_in(const subset_of_power& b, const std::string& label) {
    int pos = b.indices().position(label);
    if (pos < 0) throw error("coordinate label not in index set: " + label);

    std::vector<int> tuple(b.arity());
    for (std::uint64_t cell = 0; cell < b.cells(); ++cell) {
        if (!b.test(cell)) continue;
        decode_tuple(cell, b.ground(), std::span<int>(tuple));
        for (int v = 0; v < b.ground().size(); ++v) {
            tuple[pos] = v;
            if (!b.test_tuple(tuple)) return false;
        }
    }
    return true;
}

/// Minimal S' ⊆ T with b = project(b, S') x X^(T \ S').  Coordinatewise:
/// S' is exactly the set of non-free coordinates, and the reconstruction
/// identity is verified before returning.
inline index_set support(const subset_of_power& b) {
    std::vector<std::string> needed;
    for (const auto& label : b.indices().labels())
        if (!is_free_in(b, label)) needed.push_back(label);
    index_set sup(std::move(needed));

    index_set rest = b.indices().minus(sup);
    subset_of_power rebuilt = product(project(b, sup), subset_of_power::full(b.ground(), rest));
    if (!(rebuilt == b)) throw internal_error("support reconstruction identity failed");
    return sup;
}

}  // namespace strata
