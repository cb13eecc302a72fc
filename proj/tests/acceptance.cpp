// Acceptance gate: a standalone driver that exercises every advertised
// guarantee of the library end to end and prints one verdict line per
// criterion.  Exit status 0 means every criterion passed.
//
// The corpus used throughout is the exhaustive enumeration of arrangements
// with |X| <= 3, at most 2 pieces, arity <= 2, and at most 4 tuples per
// piece; "axis-free corpus" means the members passing check_axis_free.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <strata/strata.hpp>

using namespace strata;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

int failures = 0;

void verdict(int criterion, bool pass, const std::string& details) {
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", details.c_str());
    std::fflush(stdout);
}

void progress(const char* label, std::size_t done, std::size_t total, double elapsed) {
    std::fprintf(stderr, "  [%s] %zu/%zu, %.0fs\n", label, done, total, elapsed);
    std::fflush(stderr);
}

std::string fmt(const char* pattern, ...) {
    va_list args;
    va_start(args, pattern);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

search_bounds corpus_bounds() {
    search_bounds b;
    b.max_ground = 3;
    b.max_arity = 2;
    b.max_pieces = 2;
    b.max_tuples = 4;
    b.min_s = 1;
    b.max_s = 3;
    b.t_size = 1;
    return b;
}

arrangement diagonal_arrangement(int n) {
    ground_set g(n);
    subset_of_power d(g, index_set({"u", "v"}));
    for (int v = 0; v < n; ++v) d.set_tuple(std::vector<int>{v, v});
    arrangement arr(g);
    arr.add_piece("diag", d);
    return arr;
}

simplicial_complex random_complex(std::mt19937_64& rng, int vertices, int faces, int max_size) {
    simplicial_complex k;
    for (int f = 0; f < faces; ++f) {
        int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_size));
        std::vector<int> all(static_cast<std::size_t>(vertices));
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(std::min(size, vertices)));
        k.add_face(std::move(all));
    }
    return k;
}

/// Exact rank by fraction-free elimination, independent of the normal form.
std::size_t bareiss_rank(const dense_matrix<long long>& in) {
    dense_matrix<bigint> m(in.rows(), in.cols());
    for (std::size_t r = 0; r < in.rows(); ++r)
        for (std::size_t c = 0; c < in.cols(); ++c) m.at(r, c) = in.at(r, c);
    std::size_t rank = 0;
    bigint prev = 1;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(rank, pivot);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            for (std::size_t c = col + 1; c < m.cols(); ++c)
                m.at(r, c) = (m.at(rank, col) * m.at(r, c) - m.at(r, col) * m.at(rank, c)) / prev;
            m.at(r, col) = 0;
        }
        prev = m.at(rank, col);
        ++rank;
    }
    return rank;
}

using wide = __int128;

wide checked_wide_add(wide a, wide b) {
    wide r;
    if (__builtin_add_overflow(a, b, &r)) throw internal_error("chain count overflow");
    return r;
}

/// Per-level chain counts N[L][x] = ascending chains y1 < ... < y(L+1) = x
/// avoiding the bottom element.  Dropping the endpoint is a bijection onto
/// the L-chains of the open interval (0, x), so N[L][x] is the number of
/// (L-1)-dimensional faces of the order complex of (0, x).
std::vector<std::vector<wide>> chain_level_counts(const strat_poset& p) {
    int n = p.size();
    std::vector<std::vector<int>> pred(static_cast<std::size_t>(n));
    for (int x = 1; x < n; ++x)
        for (int y = 1; y < x; ++y)
            if (p.leq(y, x)) pred[static_cast<std::size_t>(x)].push_back(y);
    std::vector<std::vector<wide>> lv;
    lv.emplace_back(static_cast<std::size_t>(n), wide(1));
    lv[0][0] = 0;
    for (;;) {
        const auto& prev = lv.back();
        std::vector<wide> next(static_cast<std::size_t>(n), wide(0));
        bool any = false;
        for (int x = 1; x < n; ++x) {
            wide acc = 0;
            for (int y : pred[static_cast<std::size_t>(x)])
                acc = checked_wide_add(acc, prev[static_cast<std::size_t>(y)]);
            if (acc != 0) any = true;
            next[static_cast<std::size_t>(x)] = acc;
        }
        if (!any) break;
        lv.push_back(std::move(next));
    }
    return lv;
}

struct euler_mobius_totals {
    std::size_t posets = 0;
    std::size_t intervals = 0;
    std::size_t sampled = 0;
    std::size_t mismatches = 0;
    std::size_t counter = 0;
    double elapsed = 0;
};

/// chi~ of the order complex of every interval (0, beta), computed from the
/// f-vector, against the Mobius row of the bottom element.  A deterministic
/// sample of intervals is also materialized as an explicit complex and
/// checked face count by face count.
void check_euler_mobius(const strat_poset& p, euler_mobius_totals& totals) {
    auto start = clock_type::now();
    auto mu = p.mobius_row(0);
    auto lv = chain_level_counts(p);
    ++totals.posets;
    for (int beta = 1; beta < p.size(); ++beta) {
        wide chi = -1;
        int sign = 1;
        for (std::size_t level = 1; level < lv.size(); ++level) {
            chi += sign * lv[level][static_cast<std::size_t>(beta)];
            sign = -sign;
        }
        if (chi != wide(mu[static_cast<std::size_t>(beta)])) ++totals.mismatches;
        ++totals.intervals;

        if (totals.counter++ % 4096 == 0) {
            wide faces_below = 0;
            for (std::size_t level = 1; level < lv.size(); ++level)
                faces_below = checked_wide_add(faces_below,
                                               lv[level][static_cast<std::size_t>(beta)]);
            if (faces_below <= 20000) {
                std::vector<int> members = p.open_interval(0, beta);
                simplicial_complex cx = order_complex(p, members);
                ++totals.sampled;
                if (reduced_euler_characteristic(cx) !=
                    mu[static_cast<std::size_t>(beta)])
                    ++totals.mismatches;
                int top = cx.dimension();
                for (int d = 0; d <= top; ++d)
                    if (wide(cx.face_count(d)) != lv[static_cast<std::size_t>(d) + 1]
                                                    [static_cast<std::size_t>(beta)])
                        ++totals.mismatches;
                for (std::size_t level = static_cast<std::size_t>(top) + 2;
                     level < lv.size(); ++level)
                    if (lv[level][static_cast<std::size_t>(beta)] != 0) ++totals.mismatches;
            }
        }
    }
    totals.elapsed += seconds_since(start);
}

long long falling_factorial(int m, int k) {
    long long out = 1;
    for (int i = 0; i < k; ++i) out *= m - i;
    return std::max(out, 0ll);
}

}  // namespace

int main() {
    auto bounds = corpus_bounds();

    std::fprintf(stderr, "enumerating corpus...\n");
    std::vector<arrangement> corpus = enumerate_arrangements(bounds);
    std::vector<char> axis_free(corpus.size());
    std::size_t axis_free_count = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        axis_free[i] = !check_axis_free(corpus[i]).has_value();
        axis_free_count += axis_free[i];
    }
    std::fprintf(stderr, "corpus: %zu arrangements, %zu axis-free\n", corpus.size(),
                 axis_free_count);

    // Criterion 1: the slice order-ideal certificate holds across the whole
    // axis-free corpus for |S| = 1..3, within the time budget.
    {
        auto start = clock_type::now();
        std::size_t embeddings = 0, certified = 0, violations = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (!axis_free[i]) continue;
            for (int s = 1; s <= 3; ++s) {
                claim1_result r = verify_claim1(corpus[i], index_set::alphabet(s));
                ++embeddings;
                if (r.applicable && r.certified && !r.contradiction)
                    ++certified;
                else
                    ++violations;
            }
            if (i % 8192 == 0) progress("criterion 1", i, corpus.size(), seconds_since(start));
        }
        double t = seconds_since(start);
        bool pass = violations == 0 && certified == embeddings && embeddings > 0 && t < 300.0;
        verdict(1, pass,
                fmt("slice order ideal certified for %zu/%zu embeddings "
                    "(%zu axis-free arrangements, |S| = 1..3), %zu violations, %.1fs (budget 300s)",
                    certified, embeddings, axis_free_count, violations, t));
    }

    // Criterion 2: exhaustive counterexample search at the same bounds with a
    // singleton T blames every slice violation on an axis witness.
    {
        auto start = clock_type::now();
        search_options options;
        options.exhaustive = true;
        search_result res = counterexample_search(bounds, options);
        double t = seconds_since(start);
        bool blamed = true;
        for (const auto& v : res.violations)
            if (v.axis_free || !v.axis.has_value()) blamed = false;
        bool pass = res.exhaustive && res.arrangements_scanned == corpus.size() &&
                    res.axis_free_slice_violations == 0 && blamed;
        std::string detail;
        if (res.violations.empty())
            detail = fmt("no slice violation found at these bounds (%llu arrangements, "
                         "%llu embeddings, T singleton); vacuously zero axis-free violations, "
                         "%.1fs",
                         static_cast<unsigned long long>(res.arrangements_scanned),
                         static_cast<unsigned long long>(res.embeddings_checked), t);
        else
            detail = fmt("%zu slice violations over %llu embeddings, every one carrying an "
                         "axis witness; %llu violations among axis-free arrangements, %.1fs",
                         res.violations.size(),
                         static_cast<unsigned long long>(res.embeddings_checked),
                         static_cast<unsigned long long>(res.axis_free_slice_violations), t);
        verdict(2, pass, detail);
    }

    // Criterion 3: for single-piece arrangements, axis-free and nonempty
    // forces pullback-freeness.  Exhaustive over all pieces at three
    // parameterizations, including both readings of 65536 subsets.
    {
        auto start = clock_type::now();
        std::size_t checked = 0, exceptions = 0;
        auto sweep = [&](int ground_n, int arity) {
            ground_set g(ground_n);
            std::uint64_t cells = power_cells(g, arity);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
                subset_of_power s(g, index_set::alphabet(arity, 20));
                for (std::uint64_t c = 0; c < cells; ++c)
                    if (mask >> c & 1) s.set(c);
                bool empty = s.is_empty();
                arrangement arr(g);
                arr.add_piece("p", std::move(s));
                ++checked;
                if (check_axis_free(arr).has_value() || empty) continue;
                if (check_pullback_free(arr).has_value()) ++exceptions;
            }
        };
        sweep(2, 2);
        sweep(4, 2);
        sweep(2, 4);
        double t = seconds_since(start);
        bool pass = exceptions == 0 && checked == 16 + 65536 + 65536 && t < 10.0;
        verdict(3, pass,
                fmt("axis-free nonempty pieces are pullback-free for all %zu single pieces "
                    "((|X|, arity) in {(2,2), (4,2), (2,4)}), %zu exceptions, %.1fs (budget 10s)",
                    checked, exceptions, t));
    }

    // Criterion 4: the diagonal arrangement over n coordinates reproduces the
    // set-partition lattice: Bell-number size, Mobius value at the top, and
    // top-interval homology concentrated in one degree.
    {
        auto start = clock_type::now();
        bool pass = true;
        std::string notes;
        for (int n : {3, 4}) {
            arrangement arr = diagonal_arrangement(n);
            strat_poset p(arr, index_set::alphabet(n));
            long long bell = n == 3 ? 5 : 15;
            long long mu_top = n == 3 ? 2 : -6;
            long long factorial = n == 3 ? 2 : 6;
            auto top = p.top();
            if (p.size() != bell || !top.has_value()) {
                pass = false;
                continue;
            }
            if (p.mobius(0, *top) != mu_top) pass = false;
            simplicial_complex cx = order_complex(p, p.open_interval(0, *top));
            auto h = homology(cx);
            if (homology_morse(cx) != h) pass = false;
            long long top_rank = 0;
            for (const auto& grp : h) {
                long long expect = grp.degree == n - 3 ? factorial : 0;
                if (grp.degree == n - 3) top_rank = grp.betti;
                if (grp.betti != expect || !grp.torsion.empty()) pass = false;
            }
            notes += fmt("%sn=%d: %d elements, mu(0,1)=%lld, H~_%d rank %lld", n == 3 ? "" : "; ",
                         n, p.size(), p.mobius(0, *top), n - 3, top_rank);
        }
        double t = seconds_since(start);
        pass = pass && t < 60.0;
        verdict(4, pass, notes + fmt(", %.1fs (budget 60s)", t));
    }

    // Criteria 5 and 6 share one pass over the axis-free corpus embeddings.
    {
        auto start = clock_type::now();
        euler_mobius_totals em;
        std::size_t pairs = 0, isos = 0, agreeing = 0, disagreements = 0;
        std::string first_disagreement;
        double kunneth_time = 0;
        std::size_t done = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (!axis_free[i]) continue;
            for (int s = 1; s <= 3; ++s) {
                product_embedding e(corpus[i], index_set::alphabet(s),
                                    index_set::alphabet(1, s));
                for (const strat_poset* p : {&e.ps(), &e.pt(), &e.pst()})
                    check_euler_mobius(*p, em);

                auto kstart = clock_type::now();
                for (int beta = 1; beta < e.ps().size(); ++beta)
                    for (int bp = 1; bp < e.pt().size(); ++bp) {
                        ++pairs;
                        if (!interval_iso_check(e, beta, bp).isomorphic) continue;
                        ++isos;
                        kunneth_result r = kunneth_compare(e, beta, bp);
                        if (r.agrees) {
                            ++agreeing;
                        } else {
                            ++disagreements;
                            if (first_disagreement.empty())
                                first_disagreement =
                                    fmt(" (first at arrangement %zu, |S|=%d, beta=%d, "
                                        "beta'=%d, degree %d)",
                                        i, s, beta, bp, r.first_disagreement);
                        }
                    }
                kunneth_time += seconds_since(kstart);
            }
            if (++done % 2048 == 0)
                progress("criteria 5+6", done, axis_free_count, seconds_since(start));
        }
        bool pass5 = em.mismatches == 0 && em.intervals > 0;
        verdict(5, pass5,
                fmt("order-complex Euler characteristic equals Mobius on %zu intervals "
                    "across %zu posets (%zu materialized and f-vector checked), "
                    "%zu mismatches, %.1fs",
                    em.intervals, em.posets, em.sampled, em.mismatches, em.elapsed));
        bool pass6 = disagreements == 0 && isos > 0 && agreeing == isos;
        verdict(6, pass6,
                fmt("interval homology matches the join model on %zu/%zu isomorphic pairs "
                    "(%zu proper pairs scanned), %zu disagreements%s, %.1fs",
                    agreeing, isos, pairs, disagreements, first_disagreement.c_str(),
                    kunneth_time));
    }

    // Criterion 7: the avoiding count agrees with Mobius inversion over the
    // include-empty poset corpus-wide, and with falling factorials on the
    // diagonal family.
    {
        auto start = clock_type::now();
        std::size_t checked = 0, mismatches = 0;
        std::size_t done = 0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (!axis_free[i]) continue;
            for (int k = 1; k <= 3; ++k) {
                index_set T = index_set::alphabet(k);
                ++checked;
                if (static_cast<long long>(avoiding_count(corpus[i], T)) !=
                    inclusion_exclusion_count(corpus[i], T))
                    ++mismatches;
            }
            if (++done % 4096 == 0)
                progress("criterion 7", done, axis_free_count, seconds_since(start));
        }
        std::size_t diag_checked = 0, diag_mismatches = 0;
        for (int m = 2; m <= 5; ++m)
            for (int k = 1; k <= 3; ++k) {
                ++diag_checked;
                if (avoiding_count(diagonal_arrangement(m), index_set::alphabet(k)) !=
                    static_cast<std::uint64_t>(falling_factorial(m, k)))
                    ++diag_mismatches;
            }
        double t = seconds_since(start);
        bool pass = mismatches == 0 && diag_mismatches == 0 && checked > 0;
        verdict(7, pass,
                fmt("avoiding count matches Mobius inversion on %zu corpus cases (|T| = 1..3) "
                    "and falling factorials on %zu diagonal cases, %zu mismatches, %.1fs",
                    checked, diag_checked, mismatches + diag_mismatches, t));
    }

    // Criterion 8: kernel invariants at volume.  Every sub-suite runs at
    // least 1000 generated cases.
    {
        auto start = clock_type::now();

        // Boundary operators compose to zero.
        std::size_t dd_cases = 0, dd_bad = 0;
        {
            std::mt19937_64 rng(8801);
            std::vector<simplicial_complex> pool;
            for (int rep = 0; rep < 1000; ++rep)
                pool.push_back(random_complex(rng, 3 + static_cast<int>(rng() % 6),
                                              1 + static_cast<int>(rng() % 10), 5));
            for (int n : {3, 4}) {
                arrangement arr = diagonal_arrangement(n);
                strat_poset p(arr, index_set::alphabet(n));
                pool.push_back(order_complex(p, p.open_interval(0, *p.top())));
            }
            for (const auto& k : pool) {
                ++dd_cases;
                for (int d = 0; d <= k.dimension(); ++d) {
                    auto up = boundary_matrix(k, d + 1, true);
                    auto down = boundary_matrix(k, d, true);
                    for (std::size_t r = 0; r < down.rows(); ++r)
                        for (std::size_t c = 0; c < up.cols(); ++c) {
                            long long acc = 0;
                            for (std::size_t m = 0; m < up.rows(); ++m)
                                acc += down.at(r, m) * up.at(m, c);
                            if (acc != 0) ++dd_bad;
                        }
                }
            }
        }

        // Invariant factors divide in order and match an independent rank.
        std::size_t snf_cases = 0, snf_bad = 0;
        {
            std::mt19937_64 rng(8802);
            std::uniform_int_distribution<long long> entry(-9, 9);
            for (int rep = 0; rep < 1000; ++rep) {
                std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
                dense_matrix<long long> m(rows, cols);
                for (std::size_t r = 0; r < rows; ++r)
                    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = entry(rng);
                snf_result s = smith_normal_form(m);
                ++snf_cases;
                bool ok = s.rank == s.factors.size() && s.rank == bareiss_rank(m);
                for (std::size_t f = 0; f < s.factors.size() && ok; ++f) {
                    if (s.factors[f] <= 0) ok = false;
                    if (f + 1 < s.factors.size() && s.factors[f + 1] % s.factors[f] != 0)
                        ok = false;
                }
                if (!ok) ++snf_bad;
            }
        }

        // Poset closure is idempotent: pairwise intersections of elements are
        // already elements.
        std::size_t closure_cases = 0, closure_bad = 0;
        {
            auto pool = sample_arrangements(bounds, 8803, 1000);
            for (const auto& arr : pool) {
                strat_poset p(arr, index_set::alphabet(2));
                ++closure_cases;
                bool ok = true;
                for (int i = 0; i < p.size() && ok; ++i)
                    for (int j = i + 1; j < p.size() && ok; ++j) {
                        subset_of_power meet = p.element(i).intersect(p.element(j));
                        if (!meet.is_empty() && p.find(meet) < 0) ok = false;
                    }
                if (!ok) ++closure_bad;
            }
        }

        // Text round-trip and byte-stable reports through the driver.
        std::size_t report_cases = 0, report_bad = 0;
        {
            std::filesystem::path tmp =
                std::filesystem::temp_directory_path() / "strata_acceptance_input.txt";
            std::size_t step = std::max<std::size_t>(1, corpus.size() / 1000);
            for (std::size_t i = 0; i < corpus.size(); i += step) {
                std::string text = serialize_arrangement(corpus[i]);
                ++report_cases;
                bool ok = serialize_arrangement(parse_arrangement(text)) == text;
                {
                    std::ofstream out(tmp);
                    out << text;
                }
                for (const char* sub : {"check-hypotheses", "build-poset"}) {
                    std::vector<std::string> args{sub, tmp.string(), "--kv"};
                    if (std::string(sub) == "build-poset") {
                        args.push_back("--t-size");
                        args.push_back("2");
                    }
                    std::ostringstream out1, err1, out2, err2;
                    int rc1 = run_command(args, out1, err1);
                    int rc2 = run_command(args, out2, err2);
                    if (rc1 != rc2 || out1.str() != out2.str() || err1.str() != err2.str())
                        ok = false;
                    if (out1.str().empty()) ok = false;
                }
                if (!ok) ++report_bad;
            }
            std::filesystem::remove(tmp);
        }

        // The matching-based homology agrees with the normal-form route.
        std::size_t hom_cases = 0, hom_bad = 0;
        {
            std::mt19937_64 rng(8805);
            for (int rep = 0; rep < 1000; ++rep) {
                simplicial_complex k = random_complex(rng, 3 + static_cast<int>(rng() % 7),
                                                      1 + static_cast<int>(rng() % 12), 6);
                ++hom_cases;
                if (homology(k) != homology_morse(k)) ++hom_bad;
            }
        }

        double t = seconds_since(start);
        bool pass = dd_bad == 0 && snf_bad == 0 && closure_bad == 0 && report_bad == 0 &&
                    hom_bad == 0 && dd_cases >= 1000 && snf_cases >= 1000 &&
                    closure_cases >= 1000 && report_cases >= 1000 && hom_cases >= 1000;
        verdict(8, pass,
                fmt("boundary-squared zero %zu/%zu, invariant-factor divisibility %zu/%zu, "
                    "closure idempotence %zu/%zu, report stability %zu/%zu, "
                    "homology route agreement %zu/%zu, %.1fs",
                    dd_cases - dd_bad, dd_cases, snf_cases - snf_bad, snf_cases,
                    closure_cases - closure_bad, closure_cases, report_cases - report_bad,
                    report_cases, hom_cases - hom_bad, hom_cases, t));
    }

    std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
