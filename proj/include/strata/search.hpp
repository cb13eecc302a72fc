// Counterexample search: canonical enumeration of small arrangements,
// slice-ideal violation scan per (arrangement, S, T), optional sampling,
// symmetry reduction, and deterministic parallel evaluation.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "arrangement.hpp"
#include "core.hpp"
#include "embedding.hpp"

namespace strata {

struct search_bounds {
    int max_ground = 2;  // |X| sweeps 1..max_ground
    int max_arity = 2;
    int max_pieces = 1;
    int max_tuples = 4;  // per piece; 0-tuple (empty) pieces included
    int min_s = 1;
    int max_s = 2;
    int t_size = 1;
};

struct search_options {
    bool exhaustive = true;
    std::uint64_t seed = 0;  // random mode
    int samples = 1000;      // random mode
    bool axis_free_only = false;
    bool symmetry_reduce = false;
    int threads = 1;
};

struct search_violation {
    arrangement arr;
    std::uint64_t ordinal;  // enumeration position of the arrangement
    index_set s;
    index_set t;
    ideal_violation violation;  // indices against product_embedding(arr, s, t)
    bool full_image_violation;  // the full image also fails downward closure
    bool axis_free;
    std::optional<axis_witness> axis;
};

struct search_result {
    std::vector<search_violation> violations;  // slice violations, canonical order
    std::uint64_t arrangements_scanned = 0;
    std::uint64_t embeddings_checked = 0;
    std::uint64_t axis_free_scanned = 0;           // arrangements passing the axis check
    std::uint64_t axis_free_slice_violations = 0;  // contrapositive: must stay zero
    std::uint64_t full_only_violations = 0;        // full-image fails, slice fine
    bool exhaustive = false;
};

namespace detail {

/// All candidate pieces for one ground size: every subset of X^arity with at
/// most max_tuples cells, ordered by (arity, cell-lexicographic).
inline std::vector<subset_of_power> piece_pool(const ground_set& g, int max_arity,
                                               int max_tuples) {
    std::vector<subset_of_power> pool;
    for (int arity = 1; arity <= max_arity; ++arity) {
        index_set idx = index_set::alphabet(arity, 20);
        std::uint64_t cells = power_cells(g, arity);
        std::vector<subset_of_power> level;
        // enumerate by popcount-bounded bitmask; cells ≤ 9 in practice
        if (cells > 20) throw error("piece pool too large to enumerate");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
            if (static_cast<int>(__builtin_popcountll(mask)) > max_tuples) continue;
            subset_of_power s(g, idx);
            for (std::uint64_t c = 0; c < cells; ++c)
                if (mask & (std::uint64_t{1} << c)) s.set(c);
            level.push_back(std::move(s));
        }
        std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) {
            return subset_of_power::lex_compare(a, b) < 0;
        });
        for (auto& s : level) pool.push_back(std::move(s));
    }
    return pool;
}

inline arrangement assemble(const ground_set& g, const std::vector<subset_of_power>& pieces) {
    arrangement arr(g);
    for (std::size_t i = 0; i < pieces.size(); ++i)
        arr.add_piece("p" + std::to_string(i + 1), pieces[i]);
    return arr;
}

/// Piece transformed by a ground permutation and a coordinate permutation.
inline subset_of_power transform_piece(const subset_of_power& a, const std::vector<int>& sigma,
                                       const std::vector<int>& tau) {
    subset_of_power out(a.ground(), a.indices());
    std::vector<int> moved(static_cast<std::size_t>(a.arity()));
    for (const auto& t : a.tuples()) {
        for (std::size_t p = 0; p < moved.size(); ++p)
            moved[p] = sigma[static_cast<std::size_t>(t[static_cast<std::size_t>(
                tau[p])])];
        out.set_tuple(moved);
    }
    return out;
}

inline std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> base(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

/// Sort key of one piece: (arity, cell bits).
inline std::pair<int, std::vector<bool>> piece_key(const subset_of_power& a) {
    std::vector<bool> bits(a.cells());
    for (std::uint64_t c = 0; c < a.cells(); ++c) bits[c] = a.test(c);
    return {a.arity(), std::move(bits)};
}

/// Canonical-representative test for the symmetry quotient: the arrangement's
/// sorted piece keys must be minimal over global ground permutations combined
/// with per-piece coordinate permutations.
inline bool is_symmetry_representative(const arrangement& arr) {
    std::vector<std::pair<int, std::vector<bool>>> self;
    for (const auto& p : arr.pieces()) self.push_back(piece_key(p.subset));
    std::sort(self.begin(), self.end());

    auto sigmas = permutations(arr.ground().size());
    for (const auto& sigma : sigmas) {
        std::vector<std::pair<int, std::vector<bool>>> key;
        for (const auto& p : arr.pieces()) {
            auto taus = permutations(p.arity());
            std::pair<int, std::vector<bool>> best;
            bool first = true;
            for (const auto& tau : taus) {
                auto cand = piece_key(transform_piece(p.subset, sigma, tau));
                if (first || cand < best) {
                    best = std::move(cand);
                    first = false;
                }
            }
            key.push_back(std::move(best));
        }
        std::sort(key.begin(), key.end());
        if (key < self) return false;
    }
    return true;
}

}  // namespace detail

/// Every arrangement within the bounds, in canonical order: ground size
/// ascending, piece count ascending, then pieces as a nondecreasing multiset
/// over the (arity, cells)-ordered pool.
inline std::vector<arrangement> enumerate_arrangements(const search_bounds& b) {
    std::vector<arrangement> out;
    for (int n = 1; n <= b.max_ground; ++n) {
        ground_set g(n);
        auto pool = detail::piece_pool(g, b.max_arity, b.max_tuples);
        for (int count = 1; count <= b.max_pieces; ++count) {
            std::vector<std::size_t> pick(static_cast<std::size_t>(count), 0);
            auto rec = [&](auto&& self, int depth, std::size_t from) -> void {
                if (depth == count) {
                    std::vector<subset_of_power> pieces;
                    for (int d = 0; d < count; ++d)
                        pieces.push_back(pool[pick[static_cast<std::size_t>(d)]]);
                    out.push_back(detail::assemble(g, pieces));
                    return;
                }
                for (std::size_t i = from; i < pool.size(); ++i) {
                    pick[static_cast<std::size_t>(depth)] = i;
                    self(self, depth + 1, i);
                }
            };
            rec(rec, 0, 0);
        }
    }
    return out;
}

/// Seeded pseudo-random arrangements within the bounds.
inline std::vector<arrangement> sample_arrangements(const search_bounds& b, std::uint64_t seed,
                                                    int samples) {
    std::mt19937_64 rng(seed);
    std::vector<arrangement> out;
    for (int i = 0; i < samples; ++i) {
        int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(b.max_ground));
        ground_set g(n);
        int count = 1 + static_cast<int>(rng() % static_cast<unsigned>(b.max_pieces));
        std::vector<subset_of_power> pieces;
        for (int pi = 0; pi < count; ++pi) {
            int arity = 1 + static_cast<int>(rng() % static_cast<unsigned>(b.max_arity));
            subset_of_power s(g, index_set::alphabet(arity, 20));
            int tuples = static_cast<int>(rng() % static_cast<unsigned>(b.max_tuples + 1));
            for (int t = 0; t < tuples; ++t) s.set(rng() % s.cells());
            pieces.push_back(std::move(s));
        }
        out.push_back(detail::assemble(g, pieces));
    }
    return out;
}

/// Scan arrangements for 0̂-slice ideal violations of the product embedding,
/// sweeping |S| = min_s..max_s with T the next t_size labels.  Results are
/// in canonical order regardless of thread count.
inline search_result counterexample_search(const search_bounds& bounds,
                                           const search_options& options = {}) {
    std::vector<arrangement> candidates =
        options.exhaustive ? enumerate_arrangements(bounds)
                           : sample_arrangements(bounds, options.seed, options.samples);
    if (options.symmetry_reduce) {
        std::vector<arrangement> kept;
        for (auto& arr : candidates)
            if (detail::is_symmetry_representative(arr)) kept.push_back(std::move(arr));
        candidates = std::move(kept);
    }

    search_result result;
    result.exhaustive = options.exhaustive;

    struct slot {
        std::vector<search_violation> violations;
        std::uint64_t embeddings = 0;
        std::uint64_t axis_free = 0;
        std::uint64_t axis_free_slice = 0;
        std::uint64_t full_only = 0;
        bool scanned = false;
    };
    std::vector<slot> slots(candidates.size());

    auto work = [&](std::size_t idx) {
        const arrangement& arr = candidates[idx];
        slot& s = slots[idx];
        s.scanned = true;
        auto axis = check_axis_free(arr);
        bool axis_free = !axis.has_value();
        if (axis_free) s.axis_free = 1;
        if (options.axis_free_only && !axis_free) return;

        for (int s_size = bounds.min_s; s_size <= bounds.max_s; ++s_size) {
            index_set s_idx = index_set::alphabet(s_size);
            index_set t_idx = index_set::alphabet(bounds.t_size, s_size);
            product_embedding e(arr, s_idx, t_idx);
            ++s.embeddings;

            auto slice_viol = find_ideal_violation(e, true);
            auto full_viol = find_ideal_violation(e, false);
            if (slice_viol) {
                if (axis_free) ++s.axis_free_slice;
                s.violations.push_back({arr, static_cast<std::uint64_t>(idx), s_idx, t_idx,
                                        *slice_viol, full_viol.has_value(), axis_free, axis});
            } else if (full_viol) {
                ++s.full_only;
            }
        }
    };

    int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < candidates.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> crew;
        for (int t = 0; t < threads; ++t)
            crew.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= candidates.size()) return;
                    work(i);
                }
            });
        for (auto& th : crew) th.join();
    }

    for (auto& s : slots) {
        result.arrangements_scanned += s.scanned;
        result.embeddings_checked += s.embeddings;
        result.axis_free_scanned += s.axis_free;
        result.axis_free_slice_violations += s.axis_free_slice;
        result.full_only_violations += s.full_only;
        for (auto& v : s.violations) result.violations.push_back(std::move(v));
    }
    return result;
}

}  // namespace strata
