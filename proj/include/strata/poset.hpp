// Stratification posets: pullback generators, their intersection closure,
// reverse-inclusion order, Möbius function, covers, and avoiding counts.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "arrangement.hpp"
#include "core.hpp"
#include "subset.hpp"

namespace strata {

/// One distinct pullback subset together with every (piece, injection) pair
/// that produces it.
struct generator {
    subset_of_power subset;
    struct source {
        int piece;
        coord_injection injection;
    };
    std::vector<source> sources;
};

/// All injections source ↪ target, ordered lexicographically by the sequence
/// of chosen target positions.
inline std::vector<coord_injection> enumerate_injections(const index_set& source,
                                                         const index_set& target) {
    std::vector<coord_injection> out;
    int k = source.arity(), n = target.arity();
    if (k > n) return out;
    std::vector<int> chosen;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            out.push_back(coord_injection::from_positions(source, target, chosen));
            return;
        }
        for (int p = 0; p < n; ++p) {
            if (used[p]) continue;
            used[p] = true;
            chosen.push_back(p);
            self(self, depth + 1);
            chosen.pop_back();
            used[p] = false;
        }
    };
    rec(rec, 0);
    return out;
}

/// Pullback generators of an arrangement in X^T, one per distinct subset,
/// in first-appearance order (pieces in order, injections lexicographic).
inline std::vector<generator> enumerate_generators(const arrangement& arr, const index_set& T) {
    std::vector<generator> gens;
    for (int pi = 0; pi < arr.piece_count(); ++pi) {
        const auto& piece = arr.piece(pi);
        for (const auto& j : enumerate_injections(piece.indices(), T)) {
            subset_of_power pulled = pullback(piece.subset, j);
            bool merged = false;
            for (auto& g : gens) {
                if (g.subset == pulled) {
                    g.sources.push_back({pi, j});
                    merged = true;
                    break;
                }
            }
            if (!merged) gens.push_back({std::move(pulled), {{pi, j}}});
        }
    }
    return gens;
}

struct poset_options {
    bool include_empty = false;
};

/// The stratification poset of an arrangement in X^T.  Elements are the
/// distinct subsets generated from X^T and the pullback generators by
/// pairwise intersection to a fixpoint; the empty subset is dropped unless
/// `include_empty` was set.  Order: b ≤ c iff subset(b) ⊇ subset(c), so
/// element 0 is always 0̂ = X^T and element numbering (cardinality
/// descending, then cell-lexicographic) is a linear extension.
class strat_poset {
  public:
    strat_poset(const arrangement& arr, index_set coords, poset_options options = {})
        : ground_(arr.ground()), coords_(std::move(coords)), options_(options) {
        generators_ = enumerate_generators(arr, coords_);
        build_elements();
        build_order();
    }

    const ground_set& ground() const { return ground_; }
    const index_set& coords() const { return coords_; }
    const std::vector<generator>& generators() const { return generators_; }

    int size() const { return static_cast<int>(elements_.size()); }
    const subset_of_power& element(int i) const { return elements_.at(i); }

    /// Index of a subset among the elements, or -1.
    int find(const subset_of_power& s) const {
        auto [lo, hi] = index_.equal_range(key(s));
        for (auto it = lo; it != hi; ++it)
            if (elements_[it->second] == s) return it->second;
        return -1;
    }

    /// b ≤ c (subset(b) ⊇ subset(c)) iff contrib(b) ⊆ contrib(c): every
    /// generator above b contains subset(c), and meets only shrink.
    bool leq(int i, int j) const {
        const std::uint64_t* mi = &masks_[static_cast<std::size_t>(i) * mask_words_];
        const std::uint64_t* mj = &masks_[static_cast<std::size_t>(j) * mask_words_];
        for (std::size_t w = 0; w < mask_words_; ++w)
            if (mi[w] & ~mj[w]) return false;
        return true;
    }

    /// Generators g with element(i) ⊆ g.subset; their intersection is
    /// element(i) itself (empty list for 0̂: the empty intersection is X^T).
    const std::vector<int>& contributing_generators(int i) const { return contrib_.at(i); }

    /// Strictly-between elements of the closed interval [lo, hi].
    std::vector<int> open_interval(int lo, int hi) const {
        std::vector<int> out;
        if (lo == hi || !leq(lo, hi)) return out;
        for (int k = lo + 1; k < hi; ++k)
            if (leq(lo, k) && leq(k, hi)) out.push_back(k);
        return out;
    }

    /// Möbius values μ(lo, k) for every k, one triangular pass; entries are
    /// zero outside the up-set of lo.  Same recurrence as mobius(), but all
    /// targets share the partial sums instead of recomputing them per call.
    std::vector<long long> mobius_row(int lo) const {
        std::vector<long long> mu(static_cast<std::size_t>(size()), 0);
        mu[static_cast<std::size_t>(lo)] = 1;
        for (int j = lo + 1; j < size(); ++j) {
            if (!leq(lo, j)) continue;
            long long acc = 0;
            for (int k = lo; k < j; ++k)
                if (leq(lo, k) && leq(k, j)) acc += mu[static_cast<std::size_t>(k)];
            mu[static_cast<std::size_t>(j)] = -acc;
        }
        return mu;
    }

    /// Möbius function of the closed interval [lo, hi]; zero when lo ≰ hi.
    long long mobius(int lo, int hi) const {
        if (lo == hi) return 1;
        if (!leq(lo, hi)) return 0;
        std::vector<long long> mu(static_cast<std::size_t>(hi - lo + 1), 0);
        mu[0] = 1;
        for (int j = lo + 1; j <= hi; ++j) {
            if (!leq(lo, j) || !leq(j, hi)) continue;
            long long acc = 0;
            for (int k = lo; k < j; ++k)
                if (leq(lo, k) && leq(k, j)) acc += mu[k - lo];
            mu[j - lo] = -acc;
        }
        return mu[hi - lo];
    }

    /// j covers i: i < j with nothing strictly between.
    bool covers(int i, int j) const {
        if (i == j || !leq(i, j)) return false;
        for (int k = i + 1; k < j; ++k)
            if (leq(i, k) && leq(k, j)) return false;
        return true;
    }

    std::vector<std::pair<int, int>> cover_relations() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (covers(i, j)) out.emplace_back(i, j);
        return out;
    }

    /// Unique maximum element, if the poset has one.
    std::optional<int> top() const {
        int t = size() - 1;
        for (int i = 0; i < size(); ++i)
            if (!leq(i, t)) return std::nullopt;
        return t;
    }

    std::string to_dot() const {
        std::ostringstream out;
        out << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
        for (int i = 0; i < size(); ++i) {
            out << "  e" << i << " [label=\"" << i << ": |" << elements_[i].count() << "|";
            if (elements_[i].count() <= 8) {
                for (const auto& t : elements_[i].tuples()) {
                    out << "\\n(";
                    for (std::size_t k = 0; k < t.size(); ++k) out << (k ? "," : "") << t[k];
                    out << ")";
                }
            }
            out << "\"];\n";
        }
        for (auto [i, j] : cover_relations()) out << "  e" << i << " -> e" << j << ";\n";
        out << "}\n";
        return out.str();
    }

  private:
    static std::uint64_t key(const subset_of_power& s) { return s.hash(); }

    void build_elements() {
        std::vector<subset_of_power> pool;
        std::unordered_multimap<std::uint64_t, std::size_t> seen;
        auto push = [&](const subset_of_power& s) {
            if (s.is_empty() && !options_.include_empty) return;
            std::uint64_t h = key(s);
            auto [lo, hi] = seen.equal_range(h);
            for (auto it = lo; it != hi; ++it)
                if (pool[it->second] == s) return;
            seen.emplace(h, pool.size());
            pool.push_back(s);
        };

        push(subset_of_power::full(ground_, coords_));
        for (const auto& g : generators_) push(g.subset);

        // Intersections to a fixpoint.  Closing against the generators alone
        // suffices: every pairwise meet of generator intersections is reached
        // one generator at a time, and each intermediate contains the result,
        // so nonempty meets are never lost.
        for (std::size_t a = 0; a < pool.size(); ++a) {
            for (const auto& g : generators_) {
                if (g.subset.contains(pool[a])) continue;
                push(pool[a].intersect(g.subset));
            }
        }

        std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) {
            if (x.count() != y.count()) return x.count() > y.count();
            return subset_of_power::lex_compare(x, y) < 0;
        });
        elements_ = std::move(pool);
        for (int i = 0; i < size(); ++i) index_.emplace(key(elements_[i]), i);

        if (elements_.empty() || !elements_[0].is_full())
            throw internal_error("bottom element 0̂ = X^T missing or misplaced");
    }

    void build_order() {
        contrib_.resize(static_cast<std::size_t>(size()));
        mask_words_ = generators_.size() / 64 + 1;
        masks_.assign(static_cast<std::size_t>(size()) * mask_words_, 0);
        for (int i = 0; i < size(); ++i) {
            for (int gi = 0; gi < static_cast<int>(generators_.size()); ++gi)
                if (generators_[gi].subset.contains(elements_[i])) {
                    contrib_[i].push_back(gi);
                    masks_[static_cast<std::size_t>(i) * mask_words_ +
                           static_cast<std::size_t>(gi) / 64] |= std::uint64_t{1} << (gi % 64);
                }
            if (!contrib_[i].empty()) {
                subset_of_power meet = generators_[contrib_[i][0]].subset;
                for (std::size_t k = 1; k < contrib_[i].size(); ++k)
                    meet = meet.intersect(generators_[contrib_[i][k]].subset);
                if (!(meet == elements_[i]))
                    throw internal_error("contributing generators do not realize the element");
            } else if (!elements_[i].is_full()) {
                throw internal_error("non-bottom element with no contributing generator");
            }
        }
    }

    ground_set ground_;
    index_set coords_;
    poset_options options_;
    std::vector<generator> generators_;
    std::vector<subset_of_power> elements_;
    std::multimap<std::uint64_t, int> index_;
    std::size_t mask_words_ = 1;
    std::vector<std::uint64_t> masks_;
    std::vector<std::vector<int>> contrib_;
};

inline strat_poset build_poset(const arrangement& arr, const index_set& coords,
                               poset_options options = {}) {
    return strat_poset(arr, coords, options);
}

/// Number of tuples of X^T lying in no pullback generator, by direct count.
inline std::uint64_t avoiding_count(const arrangement& arr, const index_set& T) {
    auto gens = enumerate_generators(arr, T);
    std::uint64_t cells = power_cells(arr.ground(), T.arity());
    std::uint64_t avoided = 0;
    for (std::uint64_t c = 0; c < cells; ++c) {
        bool in_any = false;
        for (const auto& g : gens)
            if (g.subset.test(c)) {
                in_any = true;
                break;
            }
        avoided += !in_any;
    }
    return avoided;
}

/// The same count through Möbius inversion over the include-empty poset:
/// Σ_β μ(0̂,β) · |β|.  Agrees with avoiding_count exactly when no generator
/// is all of X^T (a full generator coincides with 0̂ and is invisible to the
/// poset; axis-free pieces never produce one).
inline long long inclusion_exclusion_count(const arrangement& arr, const index_set& T) {
    strat_poset p(arr, T, {.include_empty = true});
    auto mu = p.mobius_row(0);
    long long total = 0;
    for (int i = 0; i < p.size(); ++i)
        total += mu[static_cast<std::size_t>(i)] * static_cast<long long>(p.element(i).count());
    return total;
}

}  // namespace strata
