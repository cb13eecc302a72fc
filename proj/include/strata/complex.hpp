// Finite abstract simplicial complexes, order complexes of poset intervals,
// joins, and the zero-sphere.

#pragma once

#include <algorithm>
#include <vector>

#include "core.hpp"
#include "poset.hpp"

namespace strata {

/// Faces grouped by dimension, each face a sorted vertex-id list, each
/// dimension's face list sorted lexicographically.  The complex is closed
/// under taking subsets; the empty face is implicit.
class simplicial_complex {
  public:
    simplicial_complex() = default;

    /// Dimension of the complex, -1 when there are no vertices.
    int dimension() const { return static_cast<int>(faces_.size()) - 1; }

    /// Faces of dimension k (k+1 vertices each); empty list out of range.
    const std::vector<std::vector<int>>& faces(int k) const {
        static const std::vector<std::vector<int>> none;
        if (k < 0 || k >= static_cast<int>(faces_.size())) return none;
        return faces_[static_cast<std::size_t>(k)];
    }

    std::size_t face_count(int k) const { return faces(k).size(); }

    std::size_t total_faces() const {
        std::size_t n = 0;
        for (const auto& fs : faces_) n += fs.size();
        return n;
    }

    /// Insert a face and all of its subsets.
    void add_face(std::vector<int> face) {
        std::sort(face.begin(), face.end());
        if (std::adjacent_find(face.begin(), face.end()) != face.end())
            throw error("face has a repeated vertex");
        add_closed(face);
    }

    bool has_face(const std::vector<int>& face) const {
        int k = static_cast<int>(face.size()) - 1;
        const auto& fs = faces(k);
        return std::binary_search(fs.begin(), fs.end(), face);
    }

    /// The same complex with every vertex id shifted by `offset`.
    simplicial_complex shifted(int offset) const {
        simplicial_complex out;
        out.faces_ = faces_;
        for (auto& fs : out.faces_)
            for (auto& f : fs)
                for (auto& v : f) v += offset;
        return out;
    }

    int max_vertex() const {
        int m = -1;
        for (const auto& f : faces(0)) m = std::max(m, f[0]);
        return m;
    }

    bool operator==(const simplicial_complex&) const = default;

    /// Bulk constructor from complete per-dimension face lists.  Each list is
    /// sorted and checked: distinct sorted vertices per face, no duplicate
    /// faces, and closure under facets.
    static simplicial_complex from_faces(std::vector<std::vector<std::vector<int>>> by_dim) {
        while (!by_dim.empty() && by_dim.back().empty()) by_dim.pop_back();
        simplicial_complex out;
        out.faces_ = std::move(by_dim);
        std::vector<int> facet;
        for (std::size_t d = 0; d < out.faces_.size(); ++d) {
            auto& fs = out.faces_[d];
            std::sort(fs.begin(), fs.end());
            if (std::adjacent_find(fs.begin(), fs.end()) != fs.end())
                throw internal_error("duplicate face in bulk complex build");
            for (const auto& f : fs) {
                if (f.size() != d + 1 || !std::is_sorted(f.begin(), f.end()) ||
                    std::adjacent_find(f.begin(), f.end()) != f.end())
                    throw internal_error("malformed face in bulk complex build");
                if (d == 0) continue;
                const auto& below = out.faces_[d - 1];
                for (std::size_t drop = 0; drop < f.size(); ++drop) {
                    facet.clear();
                    for (std::size_t i = 0; i < f.size(); ++i)
                        if (i != drop) facet.push_back(f[i]);
                    if (!std::binary_search(below.begin(), below.end(), facet))
                        throw internal_error("bulk complex build not closed under facets");
                }
            }
        }
        return out;
    }

  private:
    void add_closed(const std::vector<int>& face) {
        if (face.empty()) return;
        int k = static_cast<int>(face.size()) - 1;
        if (k >= static_cast<int>(faces_.size())) faces_.resize(static_cast<std::size_t>(k) + 1);
        auto& fs = faces_[static_cast<std::size_t>(k)];
        auto it = std::lower_bound(fs.begin(), fs.end(), face);
        if (it != fs.end() && *it == face) return;
        fs.insert(it, face);
        std::vector<int> sub;
        sub.reserve(face.size() - 1);
        for (std::size_t drop = 0; drop < face.size(); ++drop) {
            sub.clear();
            for (std::size_t i = 0; i < face.size(); ++i)
                if (i != drop) sub.push_back(face[i]);
            add_closed(sub);
        }
    }

    std::vector<std::vector<std::vector<int>>> faces_;
};

/// Order complex of the induced subposet on `members` (poset element indices,
/// ascending): one vertex per member, one face per chain.  Vertex v of the
/// result corresponds to members[v].
inline simplicial_complex order_complex(const strat_poset& p, const std::vector<int>& members) {
    for (std::size_t i = 1; i < members.size(); ++i)
        if (members[i - 1] >= members[i]) throw error("order complex members must be ascending");

    // Element numbering is a linear extension, so every chain is an ascending
    // index sequence and depth-first extension over precomputed successor
    // lists enumerates each exactly once, in lexicographic order per length.
    std::size_t m = members.size();
    std::vector<std::vector<int>> succ(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (p.leq(members[i], members[j])) succ[i].push_back(static_cast<int>(j));

    std::vector<std::vector<std::vector<int>>> by_dim;
    std::vector<int> chain;
    auto extend = [&](auto&& self, int at) -> void {
        chain.push_back(at);
        if (chain.size() > by_dim.size()) by_dim.resize(chain.size());
        by_dim[chain.size() - 1].push_back(chain);
        for (int next : succ[static_cast<std::size_t>(at)]) self(self, next);
        chain.pop_back();
    };
    for (std::size_t i = 0; i < m; ++i) extend(extend, static_cast<int>(i));
    return simplicial_complex::from_faces(std::move(by_dim));
}

/// Join K * L on the disjoint union of vertex sets; L's vertices are shifted
/// past K's.  Faces are all unions σ ∪ τ with σ ∈ K ∪ {∅}, τ ∈ L ∪ {∅}.
inline simplicial_complex join(const simplicial_complex& k, const simplicial_complex& l) {
    int offset = k.max_vertex() + 1;
    simplicial_complex ls = l.shifted(offset);
    std::vector<std::vector<int>> k_faces{{}}, l_faces{{}};
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto& f : k.faces(d)) k_faces.push_back(f);
    for (int d = 0; d <= ls.dimension(); ++d)
        for (const auto& f : ls.faces(d)) l_faces.push_back(f);
    // Vertex sets are disjoint, so distinct (σ, τ) pairs give distinct unions
    // and the family of unions is closed under facets.
    std::vector<std::vector<std::vector<int>>> by_dim;
    for (const auto& sigma : k_faces)
        for (const auto& tau : l_faces) {
            if (sigma.empty() && tau.empty()) continue;
            std::vector<int> face = sigma;
            face.insert(face.end(), tau.begin(), tau.end());
            if (face.size() > by_dim.size()) by_dim.resize(face.size());
            by_dim[face.size() - 1].push_back(std::move(face));
        }
    return simplicial_complex::from_faces(std::move(by_dim));
}

/// Two isolated vertices; joining with it is suspension.
inline simplicial_complex sphere0() {
    simplicial_complex s;
    s.add_face({0});
    s.add_face({1});
    return s;
}

}  // namespace strata
