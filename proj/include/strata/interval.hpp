// Closed-interval comparison under the product embedding and the homology
// shadow: order complex of (0̂, β x β') against the join of the factor
// complexes with a zero-sphere.

#pragma once

#include <optional>
#include <vector>

#include "complex.hpp"
#include "embedding.hpp"
#include "homology.hpp"

namespace strata {

struct interval_iso_result {
    bool isomorphic = false;
    /// First element of [0̂, β x β'] not hit by a pair from [0̂,β] x [0̂,β'];
    /// -1 when isomorphic.
    int failing_element = -1;
};

/// Does the embedding restrict to a poset isomorphism
/// [0̂,β] x [0̂,β'] -> [0̂, β x β']?  Injectivity and order preservation hold
/// for the whole map, so the question is surjectivity onto the interval.
inline interval_iso_result interval_iso_check(const product_embedding& e, int beta,
                                              int beta_prime) {
    int target = e.pair_image(beta, beta_prime);
    const strat_poset& pst = e.pst();
    for (int k = 0; k <= target; ++k) {
        if (!pst.leq(k, target)) continue;
        auto [i, j] = e.pair_of(k);
        if (i < 0 || !e.ps().leq(i, beta) || !e.pt().leq(j, beta_prime))
            return {false, k};
    }
    return {true, -1};
}

struct kunneth_result {
    bool iso = false;          // interval_iso_check outcome
    bool agrees = false;       // degreewise betti and torsion equality
    int first_disagreement = -2;  // degree, or -2 when agrees
    std::vector<homology_group> interval_homology;  // Δ(0̂, β x β')
    std::vector<homology_group> join_homology;      // Δ(0̂,β) * Δ(0̂,β') * S⁰
};

/// Compare reduced homology of the open interval (0̂, β x β') in P_A(S⊔T)
/// with that of Δ(0̂,β) * Δ(0̂,β') * S⁰.  When the closed intervals multiply
/// (interval_iso_check passes) the two agree in every degree.  Both sides go
/// through the matching-based homology path, which handles the large
/// sphere-like interval complexes that a dense normal form cannot.
inline kunneth_result kunneth_compare(const product_embedding& e, int beta, int beta_prime) {
    kunneth_result out;
    out.iso = interval_iso_check(e, beta, beta_prime).isomorphic;

    int target = e.pair_image(beta, beta_prime);
    simplicial_complex interval_cx =
        order_complex(e.pst(), e.pst().open_interval(0, target));
    simplicial_complex join_cx =
        join(join(order_complex(e.ps(), e.ps().open_interval(0, beta)),
                  order_complex(e.pt(), e.pt().open_interval(0, beta_prime))),
             sphere0());

    out.interval_homology = homology_morse(interval_cx);
    out.join_homology = homology_morse(join_cx);

    auto betti = [](const std::vector<homology_group>& h, int d) -> long long {
        for (const auto& g : h)
            if (g.degree == d) return g.betti;
        return 0;
    };
    auto torsion = [](const std::vector<homology_group>& h, int d) -> std::vector<bigint> {
        for (const auto& g : h)
            if (g.degree == d) return g.torsion;
        return {};
    };

    int hi = std::max(interval_cx.dimension(), join_cx.dimension());
    out.agrees = true;
    for (int d = -1; d <= hi; ++d) {
        if (betti(out.interval_homology, d) != betti(out.join_homology, d) ||
            torsion(out.interval_homology, d) != torsion(out.join_homology, d)) {
            out.agrees = false;
            out.first_disagreement = d;
            break;
        }
    }
    return out;
}

}  // namespace strata
