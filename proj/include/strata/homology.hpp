// Exact integral simplicial homology via Smith normal form, with a checked
// 64-bit fast path that falls back to arbitrary precision on overflow.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "complex.hpp"
#include "core.hpp"

namespace strata {

using bigint = boost::multiprecision::cpp_int;

template <typename I>
class dense_matrix {
  public:
    dense_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    I& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const I& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void swap_rows(std::size_t r1, std::size_t r2) {
        if (r1 == r2) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
    }
    void swap_cols(std::size_t c1, std::size_t c2) {
        if (c1 == c2) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, c1), at(r, c2));
    }

  private:
    std::size_t rows_, cols_;
    std::vector<I> a_;
};

struct snf_overflow : error {
    snf_overflow() : error("64-bit overflow during normal form reduction") {}
};

namespace detail {

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw snf_overflow();
    return r;
}
inline long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw snf_overflow();
    return r;
}
inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw snf_overflow();
    return r;
}

template <typename I>
I abs_of(const I& v) {
    return v < 0 ? I(-v) : v;
}

/// row_r -= q * row_p, column analogue below.
template <typename I>
void row_axpy(dense_matrix<I>& m, std::size_t r, std::size_t p, const I& q, std::size_t from) {
    for (std::size_t c = from; c < m.cols(); ++c) {
        if constexpr (std::is_same_v<I, long long>) {
            m.at(r, c) = checked_sub(m.at(r, c), checked_mul(q, m.at(p, c)));
        } else {
            m.at(r, c) -= q * m.at(p, c);
        }
    }
}
template <typename I>
void col_axpy(dense_matrix<I>& m, std::size_t c, std::size_t p, const I& q, std::size_t from) {
    for (std::size_t r = from; r < m.rows(); ++r) {
        if constexpr (std::is_same_v<I, long long>) {
            m.at(r, c) = checked_sub(m.at(r, c), checked_mul(q, m.at(r, p)));
        } else {
            m.at(r, c) -= q * m.at(r, p);
        }
    }
}

template <typename I>
std::vector<I> snf_diagonal(dense_matrix<I> m) {
    std::size_t n = std::min(m.rows(), m.cols());
    std::vector<I> diag;
    for (std::size_t pos = 0; pos < n; ++pos) {
        // minimal nonzero |entry| in the trailing submatrix
        bool found = false;
        std::size_t pr = pos, pc = pos;
        I best{};
        for (std::size_t r = pos; r < m.rows(); ++r)
            for (std::size_t c = pos; c < m.cols(); ++c) {
                const I& v = m.at(r, c);
                if (v == 0) continue;
                I a = abs_of(v);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        if (!found) break;
        m.swap_rows(pos, pr);
        m.swap_cols(pos, pc);

        for (;;) {
            bool clean = true;
            for (std::size_t r = pos + 1; r < m.rows(); ++r) {
                if (m.at(r, pos) == 0) continue;
                I q = m.at(r, pos) / m.at(pos, pos);
                row_axpy(m, r, pos, q, pos);
                if (m.at(r, pos) != 0) {
                    m.swap_rows(pos, r);  // strictly smaller remainder becomes the pivot
                    clean = false;
                }
            }
            for (std::size_t c = pos + 1; c < m.cols(); ++c) {
                if (m.at(pos, c) == 0) continue;
                I q = m.at(pos, c) / m.at(pos, pos);
                col_axpy(m, c, pos, q, pos);
                if (m.at(pos, c) != 0) {
                    m.swap_cols(pos, c);
                    clean = false;
                }
            }
            if (clean) break;
        }
        diag.push_back(abs_of(m.at(pos, pos)));
    }
    return diag;
}

}  // namespace detail

struct snf_result {
    std::vector<bigint> factors;  // nonzero invariant factors, d1 | d2 | ...
    std::size_t rank = 0;
    bool used_fallback = false;
};

namespace detail {

inline bigint gcd_big(bigint a, bigint b) { return boost::multiprecision::gcd(a, b); }

inline void normalize_factors(std::vector<bigint>& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0) continue;
            bigint g = gcd_big(d[i], d[j]);
            bigint l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    std::sort(d.begin(), d.end());
}

}  // namespace detail

/// Invariant factors and rank of an integer matrix, exactly.
inline snf_result smith_normal_form(const dense_matrix<long long>& m) {
    snf_result out;
    try {
        auto diag = detail::snf_diagonal(m);
        for (const auto& v : diag) out.factors.emplace_back(v);
    } catch (const snf_overflow&) {
        dense_matrix<bigint> big(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) big.at(r, c) = m.at(r, c);
        out.factors = detail::snf_diagonal(std::move(big));
        out.used_fallback = true;
    }
    detail::normalize_factors(out.factors);
    out.rank = out.factors.size();
    return out;
}

struct homology_group {
    int degree;
    long long betti;
    std::vector<bigint> torsion;  // invariant factors > 1 in ascending order

    bool operator==(const homology_group&) const = default;

    std::string to_string() const {
        std::string out = "H_" + std::to_string(degree) + " = ";
        bool first = true;
        for (long long i = 0; i < betti; ++i) {
            out += first ? "Z" : " + Z";
            first = false;
        }
        for (const auto& t : torsion) {
            out += (first ? "Z/" : " + Z/") + t.str();
            first = false;
        }
        if (first) out += "0";
        return out;
    }
};

/// Boundary matrix ∂_k : C_k -> C_{k-1} of a complex, with the empty face as
/// the single (-1)-dimensional generator when `reduced`.
inline dense_matrix<long long> boundary_matrix(const simplicial_complex& k, int dim,
                                               bool reduced = true) {
    const auto& rows_faces = k.faces(dim - 1);
    const auto& cols_faces = k.faces(dim);
    std::size_t nrows = (dim == 0 && reduced) ? 1 : rows_faces.size();
    dense_matrix<long long> m(nrows, cols_faces.size());

    if (dim == 0) {
        if (reduced)
            for (std::size_t c = 0; c < cols_faces.size(); ++c) m.at(0, c) = 1;
        return m;
    }

    std::map<std::vector<int>, std::size_t> row_of;
    for (std::size_t r = 0; r < rows_faces.size(); ++r) row_of[rows_faces[r]] = r;

    std::vector<int> sub;
    for (std::size_t c = 0; c < cols_faces.size(); ++c) {
        const auto& face = cols_faces[c];
        long long sign = 1;
        for (std::size_t drop = 0; drop < face.size(); ++drop) {
            sub.clear();
            for (std::size_t i = 0; i < face.size(); ++i)
                if (i != drop) sub.push_back(face[i]);
            m.at(row_of.at(sub), c) = sign;
            sign = -sign;
        }
    }
    return m;
}

/// Reduced (default) or unreduced integral homology in every degree from
/// -1 (reduced, empty complex only has H_{-1} = Z) up to the dimension.
inline std::vector<homology_group> homology(const simplicial_complex& k, bool reduced = true) {
    std::vector<homology_group> out;
    int lo = reduced ? -1 : 0;
    int top = k.dimension();

    // rank and factors of each boundary map; ∂_{top+1} = 0
    std::map<int, snf_result> snf;
    for (int d = lo + 1; d <= top; ++d) snf[d] = smith_normal_form(boundary_matrix(k, d, reduced));

    for (int d = lo; d <= std::max(top, lo); ++d) {
        long long chains;
        if (d == -1)
            chains = 1;
        else
            chains = static_cast<long long>(k.face_count(d));
        long long rank_d = (d >= lo + 1) ? static_cast<long long>(snf[d].rank) : 0;
        long long rank_up = (d + 1 <= top) ? static_cast<long long>(snf[d + 1].rank) : 0;
        homology_group h;
        h.degree = d;
        h.betti = chains - rank_d - rank_up;
        if (d + 1 <= top)
            for (const auto& f : snf[d + 1].factors)
                if (f > 1) h.torsion.push_back(f);
        out.push_back(std::move(h));
    }
    return out;
}

/// Reduced integral homology through an acyclic cell matching.
///
/// Cells (the empty face included) are paired greedily from the top down:
/// whenever a cell has exactly one unpaired coface the two cancel as a
/// matched pair, and when no such cell exists the highest-dimensional
/// remaining cell is set aside as critical.  Cancelling a matched pair never
/// changes homology, so the groups come from a boundary operator on the
/// critical cells alone, obtained by pushing facet chains through the
/// matching.  The critical complex is typically a handful of cells even when
/// the input is enormous, which keeps the normal-form step feasible on
/// complexes whose raw boundary matrices could never be materialized: a
/// sphere-like order complex has no free pair at all until one top cell goes
/// critical, after which it collapses completely.
inline std::vector<homology_group> homology_morse(const simplicial_complex& k) {
    constexpr std::uint32_t none = 0xffffffffu;
    const int top = k.dimension();

    // Cell ids: 0 is the empty face, then each dimension's faces in stored
    // (lexicographic) order.  Ascending id means nondecreasing dimension.
    std::vector<std::size_t> off(static_cast<std::size_t>(top) + 3, 1);
    off[0] = 0;
    for (int d = 0; d <= top; ++d)
        off[static_cast<std::size_t>(d) + 2] =
            off[static_cast<std::size_t>(d) + 1] + k.face_count(d);
    const std::size_t total = off[static_cast<std::size_t>(top) + 2];

    std::vector<int> cdim(total, -1);
    for (int d = 0; d <= top; ++d)
        for (std::size_t x = off[static_cast<std::size_t>(d) + 1];
             x < off[static_cast<std::size_t>(d) + 2]; ++x)
            cdim[x] = d;

    // Facets of every cell in vertex-drop order, so slot parity is the
    // incidence sign.  A vertex has the empty face, the empty face nothing.
    std::vector<std::size_t> facet_off(total + 1, 0);
    for (std::size_t x = 1; x < total; ++x)
        facet_off[x + 1] = facet_off[x] + static_cast<std::size_t>(cdim[x] + 1);
    std::vector<std::uint32_t> facet(facet_off[total]);
    for (int d = 1; d <= top; ++d) {
        const auto& below = k.faces(d - 1);
        const auto& here = k.faces(d);
        std::vector<int> sub;
        for (std::size_t i = 0; i < here.size(); ++i) {
            const std::size_t x = off[static_cast<std::size_t>(d) + 1] + i;
            const auto& face = here[i];
            for (std::size_t drop = 0; drop < face.size(); ++drop) {
                sub.clear();
                for (std::size_t j = 0; j < face.size(); ++j)
                    if (j != drop) sub.push_back(face[j]);
                auto it = std::lower_bound(below.begin(), below.end(), sub);
                facet[facet_off[x] + drop] = static_cast<std::uint32_t>(
                    off[static_cast<std::size_t>(d)] + (it - below.begin()));
            }
        }
    }
    // Vertex slots keep their zero-initialized value: the empty face's id.

    std::vector<std::size_t> cof_off(total + 2, 0);
    for (std::uint32_t f : facet) ++cof_off[f + 2];
    for (std::size_t x = 2; x <= total + 1; ++x) cof_off[x] += cof_off[x - 1];
    std::vector<std::uint32_t> cof(facet.size());
    for (std::size_t x = 0; x < total; ++x)
        for (std::size_t s = facet_off[x]; s < facet_off[x + 1]; ++s)
            cof[cof_off[facet[s] + 1]++] = static_cast<std::uint32_t>(x);

    // Matching phase.  cc counts unprocessed cofaces; a cell with exactly one
    // pairs with it, and when the cascade stalls the highest-dimensional
    // remaining cell goes critical, which restarts it.  The queue is consumed
    // in FIFO order: breadth-first collapse peels sphere-like complexes layer
    // by layer and leaves far fewer critical cells than depth-first does.
    std::vector<std::uint8_t> processed(total, 0), critical(total, 0);
    std::vector<std::uint32_t> pair_up(total, none), pair_down(total, none);
    std::vector<std::uint32_t> cc(total);
    std::vector<std::uint32_t> queue;
    std::size_t qhead = 0;
    for (std::size_t x = 0; x < total; ++x) {
        cc[x] = static_cast<std::uint32_t>(cof_off[x + 1] - cof_off[x]);
        if (cc[x] == 1) queue.push_back(static_cast<std::uint32_t>(x));
    }

    std::size_t remaining = total;
    auto settle = [&](std::uint32_t x) {
        processed[x] = 1;
        --remaining;
        for (std::size_t s = facet_off[x]; s < facet_off[x + 1]; ++s) {
            std::uint32_t y = facet[s];
            if (!processed[y] && --cc[y] == 1) queue.push_back(y);
        }
    };

    std::size_t cursor = total;
    while (remaining > 0) {
        if (qhead < queue.size()) {
            std::uint32_t x = queue[qhead++];
            if (processed[x] || cc[x] != 1) continue;
            std::uint32_t upper = none;
            for (std::size_t s = cof_off[x]; s < cof_off[x + 1]; ++s)
                if (!processed[cof[s]]) upper = cof[s];
            pair_up[x] = upper;
            pair_down[upper] = x;
            settle(upper);
            settle(x);
            continue;
        }
        while (processed[cursor - 1]) --cursor;
        critical[cursor - 1] = 1;
        settle(static_cast<std::uint32_t>(cursor - 1));
    }

    long long chi_cells = 0, chi_crit = 0;
    for (std::size_t x = 0; x < total; ++x) {
        long long s = (cdim[x] % 2 == 0) ? 1 : -1;
        chi_cells += s;
        if (critical[x]) chi_crit += s;
    }
    if (chi_cells != chi_crit) throw internal_error("cell matching dropped cells");

    // Flow phase: express each needed facet chain in the critical basis.
    // Matched-up cells expand through their partner's other facets; the
    // matching's acyclicity makes the expansion a DAG.
    std::vector<std::vector<std::pair<std::uint32_t, long long>>> flow(total);
    std::vector<std::uint8_t> mark(total, 0);
    std::vector<std::uint32_t> stk;
    auto resolve = [&](std::uint32_t root) {
        if (mark[root] == 2) return;
        stk.assign(1, root);
        while (!stk.empty()) {
            std::uint32_t x = stk.back();
            if (mark[x] == 2) {
                stk.pop_back();
                continue;
            }
            if (critical[x]) {
                flow[x].assign(1, {x, 1});
                mark[x] = 2;
                stk.pop_back();
                continue;
            }
            if (pair_down[x] != none) {
                mark[x] = 2;
                stk.pop_back();
                continue;
            }
            const std::uint32_t t = pair_up[x];
            if (mark[x] == 0) {
                mark[x] = 1;
                for (std::size_t s = facet_off[t]; s < facet_off[t + 1]; ++s) {
                    std::uint32_t f = facet[s];
                    if (f == x) continue;
                    if (mark[f] == 1) throw internal_error("cell matching is not acyclic");
                    if (mark[f] == 0) stk.push_back(f);
                }
                continue;
            }
            long long sx = 0;
            std::map<std::uint32_t, long long> acc;
            for (std::size_t s = facet_off[t]; s < facet_off[t + 1]; ++s) {
                std::uint32_t f = facet[s];
                long long sgn = ((s - facet_off[t]) % 2 == 0) ? 1 : -1;
                if (f == x) {
                    sx = sgn;
                    continue;
                }
                if (mark[f] != 2) throw internal_error("cell matching is not acyclic");
                for (const auto& [c, v] : flow[f]) {
                    auto& slot = acc[c];
                    slot = detail::checked_add(slot, detail::checked_mul(sgn, v));
                }
            }
            auto& out = flow[x];
            for (const auto& [c, v] : acc)
                if (v != 0) out.emplace_back(c, detail::checked_mul(-sx, v));
            mark[x] = 2;
            stk.pop_back();
        }
    };

    std::vector<std::vector<std::uint32_t>> crit(static_cast<std::size_t>(std::max(top, -1)) + 2);
    std::vector<std::uint32_t> cidx(total, 0);
    for (std::size_t x = 0; x < total; ++x)
        if (critical[x]) {
            auto& bucket = crit[static_cast<std::size_t>(cdim[x] + 1)];
            cidx[x] = static_cast<std::uint32_t>(bucket.size());
            bucket.push_back(static_cast<std::uint32_t>(x));
        }

    // Boundary operator restricted to critical cells, one matrix per degree.
    std::map<int, dense_matrix<long long>> mats;
    for (int d = 0; d <= top; ++d) {
        const auto& rows = crit[static_cast<std::size_t>(d)];
        const auto& cols = crit[static_cast<std::size_t>(d) + 1];
        dense_matrix<long long> m(rows.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::uint32_t t = cols[j];
            std::map<std::uint32_t, long long> acc;
            for (std::size_t s = facet_off[t]; s < facet_off[t + 1]; ++s) {
                std::uint32_t f = facet[s];
                long long sgn = ((s - facet_off[t]) % 2 == 0) ? 1 : -1;
                resolve(f);
                for (const auto& [c, v] : flow[f]) {
                    auto& slot = acc[c];
                    slot = detail::checked_add(slot, detail::checked_mul(sgn, v));
                }
            }
            for (const auto& [c, v] : acc)
                if (v != 0) m.at(cidx[c], j) = v;
        }
        mats.emplace(d, std::move(m));
    }

    for (int d = 1; d <= top; ++d) {
        const auto& a = mats.at(d - 1);
        const auto& b = mats.at(d);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) {
                long long acc = 0;
                for (std::size_t m = 0; m < a.cols(); ++m)
                    acc = detail::checked_add(acc, detail::checked_mul(a.at(r, m), b.at(m, c)));
                if (acc != 0) throw internal_error("critical boundary does not square to zero");
            }
    }

    std::map<int, snf_result> snf;
    for (int d = 0; d <= top; ++d) snf.emplace(d, smith_normal_form(mats.at(d)));

    std::vector<homology_group> out;
    for (int d = -1; d <= std::max(top, -1); ++d) {
        long long chains = static_cast<long long>(crit[static_cast<std::size_t>(d) + 1].size());
        long long rank_d = (d >= 0) ? static_cast<long long>(snf.at(d).rank) : 0;
        long long rank_up = (d + 1 <= top) ? static_cast<long long>(snf.at(d + 1).rank) : 0;
        homology_group h;
        h.degree = d;
        h.betti = chains - rank_d - rank_up;
        if (d + 1 <= top)
            for (const auto& f : snf.at(d + 1).factors)
                if (f > 1) h.torsion.push_back(f);
        out.push_back(std::move(h));
    }
    return out;
}

/// Σ_{k ≥ -1} (-1)^k f_k with f_{-1} = 1 for the empty face.
inline long long reduced_euler_characteristic(const simplicial_complex& k) {
    long long chi = -1;
    for (int d = 0; d <= k.dimension(); ++d) {
        long long f = static_cast<long long>(k.face_count(d));
        chi += (d % 2 == 0) ? f : -f;
    }
    return chi;
}

}  // namespace strata
