// Command-line driver: subcommands over arrangement files with deterministic
// reports.  Exit codes: 0 verified/completed, 1 property violated (witness in
// the report), 2 usage or input error.

#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arrangement.hpp"
#include "core.hpp"
#include "embedding.hpp"
#include "homology.hpp"
#include "interval.hpp"
#include "io.hpp"
#include "poset.hpp"
#include "report.hpp"
#include "search.hpp"

namespace strata {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline index_set parse_labels(const std::string& csv) {
    std::vector<std::string> labels;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) labels.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) labels.push_back(cur);
    if (labels.empty()) throw error("empty label list: '" + csv + "'");
    return index_set(labels);
}

/// Coordinate set for poset-level commands: explicit labels, a size over the
/// default alphabet, or (when neither is given) the largest piece arity.
inline index_set resolve_coords(const std::string& coords_csv, int t_size,
                                const arrangement& arr) {
    if (!coords_csv.empty() && t_size > 0)
        throw error("give either --coords or --t-size, not both");
    if (!coords_csv.empty()) return parse_labels(coords_csv);
    if (t_size > 0) return index_set::alphabet(t_size);
    int widest = 1;
    for (const auto& p : arr.pieces()) widest = std::max(widest, p.arity());
    return index_set::alphabet(widest);
}

inline std::string tuple_string(const std::vector<int>& t) {
    std::string out = "(";
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(t[k]);
    }
    return out + ")";
}

/// Short deterministic rendering of a subset: tuple list capped at 12 cells.
inline std::string subset_summary(const subset_of_power& s) {
    std::string out = "count " + std::to_string(s.count());
    if (s.is_full()) return out + " (full)";
    if (s.is_empty()) return out;
    out += ":";
    int shown = 0;
    for (const auto& t : s.tuples()) {
        if (shown == 12) {
            out += " ...";
            break;
        }
        out += " " + tuple_string(t);
        ++shown;
    }
    return out;
}

inline std::string flatten(const std::string& multiline) {
    std::string out;
    for (char c : multiline) {
        if (c == '\n') {
            if (!out.empty() && out.back() != ' ') out += "; ";
        } else {
            out += c;
        }
    }
    while (!out.empty() && (out.back() == ' ' || out.back() == ';')) out.pop_back();
    return out;
}

inline void add_violation(report& rep, const std::string& prefix, const strat_poset& pst,
                          const arrangement& arr, const ideal_violation& v) {
    rep.add(prefix + "outside", std::to_string(v.outside) + ", " +
                                    subset_summary(pst.element(v.outside)));
    rep.add(prefix + "inside",
            std::to_string(v.inside) + ", " + subset_summary(pst.element(v.inside)));
    rep.add(prefix + "crossing_generator", v.crossing_generator);
    rep.add(prefix + "crossing_piece", arr.piece(v.piece).name);
    rep.add(prefix + "crossing_injection", v.injection.to_string());
}

inline void print_report(const report& rep, bool kv, std::ostream& out) {
    out << (kv ? rep.to_kv() : rep.to_text());
}

}  // namespace detail

/// Run one driver invocation; `args` excludes the program name.  Reports go
/// to `out`, diagnostics to `err`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"stratification poset toolkit"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    bool kv = false;
    app.add_flag("--kv", kv, "machine-readable key=value report");

    std::string file;
    std::string coords_csv;
    int t_size = 0;
    std::string s_csv, t_csv;
    int s_size = 0;
    bool dot = false;
    int lo = -1, hi = -1;
    int beta = -1, beta_prime = -1;

    search_bounds bounds;
    search_options options;
    bool exhaustive_flag = false;
    bool have_seed = false;

    auto* cmd_hyp = app.add_subcommand("check-hypotheses",
                                       "axis-freeness and pullback-freeness of the pieces");
    cmd_hyp->add_option("file", file, "arrangement file")->required();

    auto* cmd_poset = app.add_subcommand("build-poset", "stratification poset over a power");
    cmd_poset->add_option("file", file, "arrangement file")->required();
    cmd_poset->add_option("--coords", coords_csv, "coordinate labels, comma-separated");
    cmd_poset->add_option("--t-size", t_size, "number of default-alphabet coordinates");
    cmd_poset->add_flag("--dot", dot, "emit Graphviz DOT instead of a report");

    auto* cmd_claim = app.add_subcommand("verify-claim1",
                                         "slice order-ideal certificate for axis-free input");
    cmd_claim->add_option("file", file, "arrangement file")->required();
    cmd_claim->add_option("--s-size", s_size, "number of S coordinates (labels a, b, ...)")
        ->required();

    auto* cmd_ideal = app.add_subcommand("order-ideal",
                                         "downward closure of the product-embedding image");
    cmd_ideal->add_option("file", file, "arrangement file")->required();
    cmd_ideal->add_option("--s", s_csv, "S labels, comma-separated")->required();
    cmd_ideal->add_option("--t", t_csv, "T labels, comma-separated")->required();

    auto* cmd_dec = app.add_subcommand("decomposables", "support and decomposability per element");
    cmd_dec->add_option("file", file, "arrangement file")->required();
    cmd_dec->add_option("--coords", coords_csv, "coordinate labels, comma-separated");
    cmd_dec->add_option("--t-size", t_size, "number of default-alphabet coordinates");

    auto* cmd_hom = app.add_subcommand("homology", "reduced homology of an open interval");
    cmd_hom->add_option("file", file, "arrangement file")->required();
    cmd_hom->add_option("--coords", coords_csv, "coordinate labels, comma-separated");
    cmd_hom->add_option("--t-size", t_size, "number of default-alphabet coordinates");
    cmd_hom->add_option("--lo", lo, "lower interval endpoint (element index)")->required();
    cmd_hom->add_option("--hi", hi, "upper interval endpoint (element index)")->required();

    auto* cmd_kun = app.add_subcommand("kunneth",
                                       "product-interval homology vs join of factor complexes");
    cmd_kun->add_option("file", file, "arrangement file")->required();
    cmd_kun->add_option("--s", s_csv, "S labels, comma-separated")->required();
    cmd_kun->add_option("--t", t_csv, "T labels, comma-separated")->required();
    cmd_kun->add_option("--beta", beta, "element index in the S poset")->required();
    cmd_kun->add_option("--beta-prime", beta_prime, "element index in the T poset")->required();

    auto* cmd_search = app.add_subcommand("search", "sweep small arrangements for violations");
    cmd_search->add_option("--max-ground", bounds.max_ground, "largest ground-set size");
    cmd_search->add_option("--max-arity", bounds.max_arity, "largest piece arity");
    cmd_search->add_option("--max-pieces", bounds.max_pieces, "largest piece count");
    cmd_search->add_option("--max-tuples", bounds.max_tuples, "largest tuple count per piece");
    cmd_search->add_option("--min-s", bounds.min_s, "smallest |S|");
    cmd_search->add_option("--max-s", bounds.max_s, "largest |S|");
    cmd_search->add_option("--t-size", bounds.t_size, "|T|");
    auto* seed_opt = cmd_search->add_option("--seed", options.seed, "random mode with this seed");
    cmd_search->add_option("--samples", options.samples, "random arrangements to draw");
    auto* ex_flag = cmd_search->add_flag("--exhaustive", exhaustive_flag,
                                         "enumerate every arrangement in bounds (default)");
    ex_flag->excludes(seed_opt);
    cmd_search->add_flag("--axis-free-only", options.axis_free_only,
                         "skip arrangements with a coordinate axis");
    cmd_search->add_flag("--symmetry-reduce", options.symmetry_reduce,
                         "scan one arrangement per symmetry class");
    cmd_search->add_option("--threads", options.threads, "worker threads");

    auto* cmd_avoid = app.add_subcommand("avoiding-count",
                                         "tuples avoiding every piece, two ways");
    cmd_avoid->add_option("file", file, "arrangement file")->required();
    cmd_avoid->add_option("--t-size", t_size, "number of default-alphabet coordinates")
        ->required();

    std::vector<const char*> argv;
    argv.push_back("strata");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    have_seed = seed_opt->count() > 0;

    try {
        if (app.got_subcommand(cmd_hyp)) {
            std::string bytes = detail::read_file(file);
            arrangement arr = parse_arrangement(bytes);
            report rep("check-hypotheses", bytes);
            rep.add("ground", arr.ground().size());
            rep.add("pieces", arr.piece_count());
            auto h = check_hypotheses(arr);
            rep.add("axis_free", h.axis_free);
            rep.add("pullback_free", h.pullback_free);
            rep.add("any_piece_empty", h.any_piece_empty);
            if (h.axis) rep.add("axis", h.axis->to_string(arr));
            if (h.free_coord)
                rep.add("free_coordinate", "piece " + arr.piece(h.free_coord->piece).name +
                                               " coordinate " + h.free_coord->label);
            detail::print_report(rep, kv, out);
            return h.axis_free ? 0 : 1;
        }

        if (app.got_subcommand(cmd_poset)) {
            std::string bytes = detail::read_file(file);
            arrangement arr = parse_arrangement(bytes);
            index_set coords = detail::resolve_coords(coords_csv, t_size, arr);
            strat_poset p(arr, coords);
            if (dot) {
                out << p.to_dot();
                return 0;
            }
            report rep("build-poset", bytes);
            rep.add("coords", coords.to_string());
            rep.add("elements", p.size());
            rep.add("generators", static_cast<int>(p.generators().size()));
            rep.add("cover_relations", static_cast<int>(p.cover_relations().size()));
            auto top = p.top();
            rep.add("top", top ? std::to_string(*top) : std::string("none"));
            if (top) rep.add("mobius_bottom_top", p.mobius(0, *top));
            rep.section("element");
            for (int i = 0; i < p.size(); ++i) {
                index_set supp = element_support(p, i);
                rep.add(std::to_string(i),
                        detail::subset_summary(p.element(i)) + ", support " +
                            (supp.arity() ? supp.to_string() : "-") + ", mobius " +
                            std::to_string(p.mobius(0, i)));
            }
            detail::print_report(rep, kv, out);
            return 0;
        }

        if (app.got_subcommand(cmd_claim)) {
            std::string bytes = detail::read_file(file);
            arrangement arr = parse_arrangement(bytes);
            if (s_size < 1) throw error("--s-size must be at least 1");
            auto res = verify_claim1(arr, index_set::alphabet(s_size));
            report rep("verify-claim1", bytes);
            rep.add("s", res.s.to_string());
            rep.add("t", res.t.to_string());
            rep.add("applicable", res.applicable);
            if (res.axis) rep.add("axis", res.axis->to_string(arr));
            if (!res.applicable) {
                detail::print_report(rep, kv, out);
                err << "error: arrangement has a coordinate axis; the slice ideal "
                       "certificate needs axis-freeness\n";
                return 2;
            }
            rep.add("order_ideal", !res.slice_violation.has_value());
            rep.add("certified", res.certified);
            rep.add("checked_elements", res.checked_elements);
            rep.add("ps_size", res.ps_size);
            rep.add("pst_size", res.pst_size);
            rep.add("full_image_ideal", res.full_ideal);
            if (res.slice_violation) {
                strat_poset pst(arr, disjoint_union(res.s, res.t));
                rep.section("violation");
                detail::add_violation(rep, "", pst, arr, *res.slice_violation);
            }
            detail::print_report(rep, kv, out);
            return res.certified ? 0 : 1;
        }

        if (app.got_subcommand(cmd_ideal)) {
            std::string bytes = detail::read_file(file);
            arrangement arr = parse_arrangement(bytes);
            index_set s = detail::parse_labels(s_csv);
            index_set t = detail::parse_labels(t_csv);
            product_embedding e(arr, s, t);
            report rep("order-ideal", bytes);
            rep.add("s", s.to_string());
            rep.add("t", t.to_string());
            rep.add("axis_free", !check_axis_free(arr).has_value());
            rep.add("ps_size", e.ps().size());
            rep.add("pt_size", e.pt().size());
            rep.add("pst_size", e.pst().size());
            auto slice_v = find_ideal_violation(e, true);
            auto full_v = find_ideal_violation(e, false);
            rep.add("slice_order_ideal", !slice_v.has_value());
            rep.add("full_order_ideal", !full_v.has_value());
            if (slice_v) {
                rep.section("slice_violation");
                detail::add_violation(rep, "", e.pst(), arr, *slice_v);
            }
            if (full_v) {
                rep.section("full_violation");
                detail::add_violation(rep, "", e.pst(), arr, *full_v);
            }
            detail::print_report(rep, kv, out);
            return slice_v ? 1 : 0;
        }

        if (app.got_subcommand(cmd_dec)) {
            std::string bytes = detail::read_file(file);
            arrangement arr = parse_arrangement(bytes);
            index_set coords = detail::resolve_coords(coords_csv, t_size, arr);
            strat_poset p(arr, coords);
            auto entries = decomposability_report(arr, p, true);
            report rep("decomposables", bytes);
            rep.add("coords", coords.to_string());
            rep.add("elements", p.size());
            int dec = 0;
            for (const auto& en : entries) dec += en.decomposable ? 1 : 0;
            rep.add("decomposable", dec);
            rep.add("indecomposable", p.size() - dec);
            rep.section("element");
            for (const auto& en : entries) {
                std::string line = "support ";
                line += en.support.arity() ? en.support.to_string() : "-";
                line += en.decomposable ? ", decomposable" : ", indecomposable";
                if (en.projection_is_element)
                    line += std::string(", projection_is_element ") +
                            (*en.projection_is_element ? "true" : "false");
                rep.add(std::to_string(en.element), line);
            }
            detail::print_report(rep, kv, out);
            return 0;
        }

        if (app.got_subcommand(cmd_hom)) {
            std::string bytes = detail::read_file(file);
            arrangement arr = parse_arrangement(bytes);
            index_set coords = detail::resolve_coords(coords_csv, t_size, arr);
            strat_poset p(arr, coords);
            if (lo < 0 || lo >= p.size() || hi < 0 || hi >= p.size())
                throw error("interval endpoints must be element indices 0.." +
                            std::to_string(p.size() - 1));
            if (lo == hi || !p.leq(lo, hi))
                throw error("interval endpoints must satisfy lo < hi in the poset order");
            auto members = p.open_interval(lo, hi);
            simplicial_complex k = order_complex(p, members);
            auto groups = homology(k);
            long long euler = reduced_euler_characteristic(k);
            long long mob = p.mobius(lo, hi);
            report rep("homology", bytes);
            rep.add("coords", coords.to_string());
            rep.add("interval", "(" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
            rep.add("open_interval_size", static_cast<int>(members.size()));
            rep.add("dimension", k.dimension());
            rep.add("euler", euler);
            rep.add("mobius", mob);
            rep.add("match", euler == mob);
            rep.section("homology");
            for (const auto& g : groups) rep.add("degree_" + std::to_string(g.degree),
                                                 g.to_string());
            detail::print_report(rep, kv, out);
            return euler == mob ? 0 : 1;
        }

        if (app.got_subcommand(cmd_kun)) {
            std::string bytes = detail::read_file(file);
            arrangement arr = parse_arrangement(bytes);
            index_set s = detail::parse_labels(s_csv);
            index_set t = detail::parse_labels(t_csv);
            product_embedding e(arr, s, t);
            if (beta <= 0 || beta >= e.ps().size())
                throw error("--beta must be a non-bottom element index of the S poset");
            if (beta_prime <= 0 || beta_prime >= e.pt().size())
                throw error("--beta-prime must be a non-bottom element index of the T poset");
            auto iso = interval_iso_check(e, beta, beta_prime);
            auto kun = kunneth_compare(e, beta, beta_prime);
            report rep("kunneth", bytes);
            rep.add("s", s.to_string());
            rep.add("t", t.to_string());
            rep.add("beta", std::to_string(beta) + ", " +
                                detail::subset_summary(e.ps().element(beta)));
            rep.add("beta_prime", std::to_string(beta_prime) + ", " +
                                      detail::subset_summary(e.pt().element(beta_prime)));
            rep.add("product_element", e.pair_image(beta, beta_prime));
            rep.add("interval_isomorphic", iso.isomorphic);
            if (!iso.isomorphic) rep.add("failing_element", iso.failing_element);
            rep.add("homology_agrees", kun.agrees);
            if (!kun.agrees) rep.add("first_disagreement_degree", kun.first_disagreement);
            rep.section("interval");
            for (const auto& g : kun.interval_homology)
                rep.add("degree_" + std::to_string(g.degree), g.to_string());
            rep.section("join");
            for (const auto& g : kun.join_homology)
                rep.add("degree_" + std::to_string(g.degree), g.to_string());
            detail::print_report(rep, kv, out);
            return (iso.isomorphic && !kun.agrees) ? 1 : 0;
        }

        if (app.got_subcommand(cmd_search)) {
            options.exhaustive = !have_seed;
            std::ostringstream params;
            params << "ground " << bounds.max_ground << " arity " << bounds.max_arity
                 << " pieces " << bounds.max_pieces << " tuples " << bounds.max_tuples
                 << " s " << bounds.min_s << ".." << bounds.max_s << " t " << bounds.t_size
                 << (options.exhaustive ? " exhaustive"
                                        : " seed " + std::to_string(options.seed) + " samples " +
                                              std::to_string(options.samples));
            auto r = counterexample_search(bounds, options);
            report rep("search", params.str());
            rep.add("mode", options.exhaustive ? "exhaustive" : "random");
            if (!options.exhaustive) {
                rep.add("seed", options.seed);
                rep.add("samples", options.samples);
            }
            rep.add("max_ground", bounds.max_ground);
            rep.add("max_arity", bounds.max_arity);
            rep.add("max_pieces", bounds.max_pieces);
            rep.add("max_tuples", bounds.max_tuples);
            rep.add("s_sizes", std::to_string(bounds.min_s) + ".." + std::to_string(bounds.max_s));
            rep.add("t_size", bounds.t_size);
            rep.add("axis_free_only", options.axis_free_only);
            rep.add("symmetry_reduce", options.symmetry_reduce);
            rep.add("arrangements_scanned", r.arrangements_scanned);
            rep.add("embeddings_checked", r.embeddings_checked);
            rep.add("axis_free_scanned", r.axis_free_scanned);
            rep.add("slice_violations", static_cast<int>(r.violations.size()));
            rep.add("axis_free_slice_violations", r.axis_free_slice_violations);
            rep.add("full_only_violations", r.full_only_violations);
            if (r.violations.empty())
                rep.add("note", "no slice violations found at these bounds");
            for (std::size_t k = 0; k < r.violations.size(); ++k) {
                const auto& v = r.violations[k];
                rep.section("violation_" + std::to_string(k));
                rep.add("ordinal", v.ordinal);
                rep.add("s", v.s.to_string());
                rep.add("t", v.t.to_string());
                rep.add("axis_free", v.axis_free);
                if (v.axis) rep.add("axis", v.axis->to_string(v.arr));
                rep.add("arrangement", detail::flatten(serialize_arrangement(v.arr)));
                product_embedding e(v.arr, v.s, v.t);
                detail::add_violation(rep, "", e.pst(), v.arr, v.violation);
                rep.add("full_image_violation", v.full_image_violation);
            }
            detail::print_report(rep, kv, out);
            return r.axis_free_slice_violations > 0 ? 1 : 0;
        }

        if (app.got_subcommand(cmd_avoid)) {
            std::string bytes = detail::read_file(file);
            arrangement arr = parse_arrangement(bytes);
            if (t_size < 1) throw error("--t-size must be at least 1");
            index_set t = index_set::alphabet(t_size);
            std::uint64_t direct = avoiding_count(arr, t);
            long long weighted = inclusion_exclusion_count(arr, t);
            bool full_generator = false;
            for (const auto& gen : enumerate_generators(arr, t))
                if (gen.subset.is_full()) full_generator = true;
            bool consistent = weighted >= 0 &&
                              direct == static_cast<std::uint64_t>(weighted);
            report rep("avoiding-count", bytes);
            rep.add("t", t.to_string());
            rep.add("cells", power_cells(arr.ground(), t.arity()));
            rep.add("direct", direct);
            rep.add("mobius_weighted", weighted);
            rep.add("full_generator_present", full_generator);
            rep.add("consistent", consistent);
            detail::print_report(rep, kv, out);
            return (!consistent && !full_generator) ? 1 : 0;
        }
    } catch (const internal_error&) {
        throw;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace strata
