#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bgraph/exact_count.hpp"
#include "bgraph/formulas.hpp"
#include "bgraph/instance.hpp"
#include "bgraph/monte_carlo.hpp"
#include "bgraph/switching.hpp"

namespace bgraph::cli {

// Exit codes: 0 success, 1 usage or input error, 2 infeasible instance,
// 3 failed verification or insufficient data.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_infeasible = 2, exit_check_failed = 3 };

struct Record {
    std::string instance;
    std::string quantity;
    std::optional<double> value;
    std::optional<double> log_value;
    std::optional<double> stderr_;
    std::optional<double> error_hint;
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::vector<std::pair<std::string, nlohmann::ordered_json>> extra;
};

class Emitter {
public:
    Emitter(std::ostream& out, bool csv) : out_(out), csv_(csv) {}

    void emit(const Record& r) {
        if (csv_) {
            if (!header_) {
                out_ << "instance,quantity,value,log_value,stderr,error_hint,seed,trials\n";
                header_ = true;
            }
            out_ << '"' << r.instance << "\"," << r.quantity << ',';
            put_csv(r.value);
            out_ << ',';
            put_csv(r.log_value);
            out_ << ',';
            put_csv(r.stderr_);
            out_ << ',';
            put_csv(r.error_hint);
            out_ << ',';
            if (r.seed) out_ << *r.seed;
            out_ << ',';
            if (r.trials) out_ << *r.trials;
            out_ << '\n';
            return;
        }
        nlohmann::ordered_json j;
        j["instance"] = r.instance;
        j["quantity"] = r.quantity;
        j["value"] = json_number(r.value);
        j["log_value"] = json_number(r.log_value);
        j["stderr"] = json_number(r.stderr_);
        j["error_hint"] = json_number(r.error_hint);
        if (r.seed)
            j["seed"] = *r.seed;
        else
            j["seed"] = nullptr;
        if (r.trials)
            j["trials"] = *r.trials;
        else
            j["trials"] = nullptr;
        for (const auto& [key, value] : r.extra) j[key] = value;
        out_ << j.dump() << '\n';
    }

private:
    std::ostream& out_;
    bool csv_;
    bool header_ = false;

    static nlohmann::ordered_json json_number(const std::optional<double>& x) {
        if (!x || !std::isfinite(*x)) return nullptr;
        return *x;
    }
    void put_csv(const std::optional<double>& x) {
        if (x && std::isfinite(*x)) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", *x);
            out_ << buf;
        }
    }
};

namespace detail {

inline std::string instance_label(const std::string& degrees, const std::string& left) {
    return "degrees=" + degrees + ";left=" + (left.empty() ? "none" : left);
}

inline double big_log_or_zero(const BigInt& x) { return x > 0 ? log_big(x) : 0.0; }

inline Record record_from_formula(const std::string& instance, const std::string& quantity,
                                  const FormulaOutput& out) {
    Record r;
    r.instance = instance;
    r.quantity = quantity;
    if (out.point.is_zero()) {
        r.value = 0.0;
        r.extra.emplace_back("reason", to_string(out.reason));
    } else {
        r.value = out.point.value();
        r.log_value = out.point.log;
    }
    r.error_hint = out.error_hint;
    if (out.regime_warning) r.extra.emplace_back("regime_warning", true);
    const auto& t = out.exponent_terms;
    nlohmann::ordered_json terms;
    if (t.mu0) terms["mu0"] = *t.mu0;
    if (t.mu1) terms["mu1"] = *t.mu1;
    if (t.mu2) terms["mu2"] = *t.mu2;
    if (t.mu) terms["mu"] = *t.mu;
    if (t.mu_squared) terms["mu_squared"] = *t.mu_squared;
    if (t.f) terms["f"] = *t.f;
    if (!terms.empty()) r.extra.emplace_back("exponent_terms", terms);
    return r;
}

inline Record record_from_bigint(const std::string& instance, const std::string& quantity,
                                 const BigInt& value) {
    Record r;
    r.instance = instance;
    r.quantity = quantity;
    r.value = static_cast<double>(value);
    if (value > 0) r.log_value = log_big(value);
    r.extra.emplace_back("value_exact", value.str());
    return r;
}

inline Record record_from_rational(const std::string& instance, const std::string& quantity,
                                   const Rational& value) {
    Record r;
    r.instance = instance;
    r.quantity = quantity;
    r.value = to_double(value);
    if (value > 0) r.log_value = log_rational(value);
    r.extra.emplace_back("value_exact", value.str());
    return r;
}

inline Record record_from_estimate(const std::string& instance, const std::string& quantity,
                                   const Estimate& e) {
    Record r;
    r.instance = instance;
    r.quantity = quantity;
    r.value = e.mean;
    r.stderr_ = e.stderr_;
    r.seed = e.seed;
    r.trials = e.trials;
    return r;
}

inline std::uint64_t pick_seed(std::optional<std::uint64_t> given) {
    if (given) return *given;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline bool regular_degree(const DegreeSequence& ds, int& d_out) {
    if (ds.n() == 0) return false;
    d_out = ds.degree(0);
    for (int v = 1; v < ds.n(); ++v)
        if (ds.degree(v) != d_out) return false;
    return true;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"B-graph counts, induced-subgraph probabilities and pairing-model validators"};
    app.require_subcommand(1);

    std::string degrees_spec, left_spec = "none", subgraph_file;
    bool csv = false;
    app.add_flag("--csv", csv, "emit CSV instead of JSON lines");

    // ---- formula ----
    auto* formula = app.add_subcommand("formula", "asymptotic counts and probabilities");
    formula->add_option("--degrees", degrees_spec, "degree spec, e.g. 3,3,2 or 3^100")->required();
    formula->add_option("--left", left_spec, "L as 1-based comma list, or 'none'");
    formula->add_option("--subgraph", subgraph_file, "induced subgraph file (header 'S: ...')");
    int indep_size = -1;
    formula->add_option("--independent-set-size", indep_size, "independent-set size s (regular only)");
    bool simplified = false;
    formula->add_flag("--simplified", simplified, "also emit the small-subgraph simplification");
    long long exact_limit = FormulaConfig{}.exact_prefactor_limit;
    formula->add_option("--exact-limit", exact_limit, "use exact prefactors while M <= this");

    // ---- exact ----
    auto* exact = app.add_subcommand("exact", "brute-force oracle counts and probabilities");
    exact->add_option("--degrees", degrees_spec, "degree spec")->required();
    exact->add_option("--left", left_spec, "L as 1-based comma list, or 'none'");
    exact->add_option("--subgraph", subgraph_file, "induced subgraph file");
    bool want_class_table = false, want_p_simple = false, want_pairing_count = false;
    exact->add_flag("--class-table", want_class_table, "tabulate |C_{l0,l1,l2}| by enumeration");
    exact->add_flag("--p-simple", want_p_simple, "exact P(simple) by enumeration");
    exact->add_flag("--count-pairings", want_pairing_count, "total restricted pairings");
    ExactCountConfig exact_cfg;
    exact->add_option("--max-total-degree", exact_cfg.max_total_degree, "bound for exact counts");
    exact->add_option("--max-enum-points", exact_cfg.max_enum_points, "bound on M1(R) for enumeration");

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "sample restricted pairings");
    sample->add_option("--degrees", degrees_spec, "degree spec")->required();
    sample->add_option("--left", left_spec, "L as 1-based comma list, or 'none'");
    long long sample_count = 1;
    sample->add_option("--count", sample_count, "number of samples");
    std::optional<std::uint64_t> seed_opt;
    sample->add_option("--seed", seed_opt, "RNG seed (generated and printed when omitted)");
    bool with_census = false, raw = false;
    sample->add_flag("--census", with_census, "include defect and 2-path censuses");
    sample->add_flag("--raw", raw, "emit bare pairing text lines");

    // ---- estimate ----
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimators");
    std::string estimator;
    estimate->add_option("what", estimator, "p-simple | defect-means | class-conditional")
        ->required()
        ->check(CLI::IsMember({"p-simple", "defect-means", "class-conditional"}));
    estimate->add_option("--degrees", degrees_spec, "degree spec")->required();
    estimate->add_option("--left", left_spec, "L as 1-based comma list, or 'none'");
    long long trials = 100000;
    estimate->add_option("--trials", trials, "number of samples");
    estimate->add_option("--seed", seed_opt, "RNG seed (generated and printed when omitted)");
    MonteCarloConfig mc_cfg;
    estimate->add_option("--threads", mc_cfg.threads, "worker threads (0 = auto)");
    int l0 = 0, l1 = 0, l2 = 0;
    estimate->add_option("--l0", l0, "class loops (class-conditional)");
    estimate->add_option("--l1", l1, "class mixed double pairs");
    estimate->add_option("--l2", l2, "class pure double pairs");

    // ---- verify-switchings ----
    auto* verify = app.add_subcommand("verify-switchings", "exact double-counting identities");
    verify->add_option("--degrees", degrees_spec, "degree spec")->required();
    verify->add_option("--left", left_spec, "L as 1-based comma list, or 'none'");
    std::string kinds_spec = "L1,L2,D1,D2,D3,D4,S1,S2,S3,S4";
    verify->add_option("--kinds", kinds_spec, "comma list of switching kinds");
    bool no_round_trips = false;
    verify->add_flag("--no-round-trips", no_round_trips, "skip the per-site round-trip audit");
    verify->add_option("--max-enum-points", exact_cfg.max_enum_points, "bound on M1(R)");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "formula-vs-oracle tables over n, d or s");
    std::string sweep_quantity;
    sweep->add_option("what", sweep_quantity, "gcount | indep | psimple")
        ->required()
        ->check(CLI::IsMember({"gcount", "indep", "psimple"}));
    int sweep_d = 3, sweep_n = 10;
    std::string sweep_ns = "8,10,12,14", sweep_ss = "1,2,3";
    sweep->add_option("--d", sweep_d, "degree");
    sweep->add_option("--n", sweep_n, "vertex count (indep sweep)");
    sweep->add_option("--n-list", sweep_ns, "comma list of n values");
    sweep->add_option("--s-list", sweep_ss, "comma list of s values (indep sweep)");
    sweep->add_option("--trials", trials, "samples per point (psimple sweep)");
    sweep->add_option("--seed", seed_opt, "RNG seed");

    std::vector<std::string> argv_storage = args;
    std::vector<const char*> argv;
    argv.push_back("bgraph");
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    Emitter emitter(out, csv);
    try {
        if (app.got_subcommand(sweep)) {
            const auto parse_list = [](const std::string& spec) {
                std::vector<int> out_list;
                for (int x : parse_degree_spec(spec)) out_list.push_back(x);
                return out_list;
            };
            FormulaConfig fcfg;
            if (sweep_quantity == "gcount") {
                for (int n : parse_list(sweep_ns)) {
                    const DegreeSequence ds(std::vector<int>(static_cast<std::size_t>(n), sweep_d));
                    const BigInt g = exact_graph_count(ds, exact_cfg);
                    const FormulaOutput f = g_asymptotic(ds, fcfg);
                    Record r;
                    r.instance = detail::instance_label(std::to_string(sweep_d) + "^" + std::to_string(n), "");
                    r.quantity = "gcount_rel_error";
                    const double exact_log = detail::big_log_or_zero(g);
                    r.value = g > 0 ? std::exp(f.point.log - exact_log) - 1.0 : 0.0;
                    r.error_hint = f.error_hint;
                    r.extra.emplace_back("formula_log", f.point.log);
                    r.extra.emplace_back("exact_log", exact_log);
                    r.extra.emplace_back("exact", g.str());
                    emitter.emit(r);
                }
            } else if (sweep_quantity == "indep") {
                for (int s : parse_list(sweep_ss)) {
                    const DegreeSequence ds(std::vector<int>(static_cast<std::size_t>(sweep_n), sweep_d));
                    std::vector<int> s_set;
                    for (int i = 0; i < s; ++i) s_set.push_back(i);
                    const InducedSubgraphSpec empty_h(s_set, {});
                    const Rational exact_p = exact_induced_probability(ds, empty_h, exact_cfg);
                    const FormulaOutput f = independent_set_probability(sweep_n, sweep_d, s, fcfg);
                    Record r;
                    r.instance = detail::instance_label(std::to_string(sweep_d) + "^" + std::to_string(sweep_n),
                                                        "") + ";s=" + std::to_string(s);
                    r.quantity = "indep_rel_error";
                    r.value = exact_p > 0 ? f.point.value() / to_double(exact_p) - 1.0 : 0.0;
                    r.error_hint = f.error_hint;
                    r.extra.emplace_back("formula", f.point.value());
                    r.extra.emplace_back("exact", to_double(exact_p));
                    emitter.emit(r);
                }
            } else {
                const std::uint64_t seed = detail::pick_seed(seed_opt);
                for (int n : parse_list(sweep_ns)) {
                    const DegreeSequence ds(std::vector<int>(static_cast<std::size_t>(n), sweep_d));
                    const Bipartition bip = Bipartition::empty_left(n);
                    const PSimpleReport rep = estimate_p_simple(ds, bip, trials, seed, mc_cfg);
                    Record r = detail::record_from_estimate(
                        detail::instance_label(std::to_string(sweep_d) + "^" + std::to_string(n), ""),
                        "p_simple_vs_predicted", rep.estimate);
                    r.value = rep.estimate.mean - rep.predicted;
                    r.extra.emplace_back("estimate", rep.estimate.mean);
                    r.extra.emplace_back("predicted", rep.predicted);
                    r.error_hint = rep.error_hint;
                    emitter.emit(r);
                }
            }
            return exit_ok;
        }

        const std::vector<int> degree_values = parse_degree_spec(degrees_spec);
        const DegreeSequence ds(degree_values);
        const std::vector<int> left = parse_left_spec(left_spec, ds.n());
        const Bipartition bip(ds.n(), left);
        const std::string label = detail::instance_label(degrees_spec, left_spec == "none" ? "" : left_spec);
        std::optional<InducedSubgraphSpec> subgraph;
        if (!subgraph_file.empty()) {
            std::ifstream in(subgraph_file);
            if (!in) {
                err << "error: cannot open subgraph file '" << subgraph_file << "'\n";
                return exit_usage;
            }
            subgraph = parse_subgraph_stream(in, ds.n());
        }
        const Feasibility feas = feasibility(ds, bip);

        if (app.got_subcommand(formula)) {
            FormulaConfig fcfg;
            fcfg.exact_prefactor_limit = exact_limit;
            emitter.emit(detail::record_from_formula(label, "g_asymptotic", g_asymptotic(ds, fcfg)));
            if (!left.empty())
                emitter.emit(detail::record_from_formula(label, "g_bgraph_asymptotic",
                                                         g_bgraph_asymptotic(ds, bip, fcfg)));
            int d = 0;
            const bool regular = detail::regular_degree(ds, d);
            if (subgraph) {
                emitter.emit(detail::record_from_formula(
                    label, "p_induced_asymptotic", induced_probability_asymptotic(ds, *subgraph, fcfg)));
                if (regular) {
                    emitter.emit(detail::record_from_formula(
                        label, "p_induced_regular",
                        induced_probability_regular(ds.n(), d, *subgraph, fcfg)));
                    if (simplified)
                        emitter.emit(detail::record_from_formula(
                            label, "p_induced_simplified",
                            induced_probability_simplified(ds.n(), d, *subgraph, fcfg)));
                }
            }
            if (indep_size >= 0) {
                if (!regular) {
                    err << "error: --independent-set-size needs a regular degree sequence\n";
                    return exit_usage;
                }
                const FormulaOutput f = independent_set_probability(ds.n(), d, indep_size, fcfg);
                emitter.emit(detail::record_from_formula(label, "p_independent_set", f));
                if (f.simplified) {
                    Record r;
                    r.instance = label;
                    r.quantity = "p_independent_set_stirling";
                    r.value = f.simplified->value();
                    r.log_value = f.simplified->log;
                    r.error_hint = f.error_hint;
                    r.extra.emplace_back("guard_ok", f.simplified_guard_ok);
                    emitter.emit(r);
                }
            }
            return feas == Feasibility::feasible ? exit_ok : exit_infeasible;
        }

        if (app.got_subcommand(exact)) {
            emitter.emit(detail::record_from_bigint(label, "g", exact_graph_count(ds, exact_cfg)));
            if (!left.empty())
                emitter.emit(detail::record_from_bigint(label, "g_bgraph",
                                                        exact_bgraph_count(ds, bip, exact_cfg)));
            if (subgraph)
                emitter.emit(detail::record_from_rational(
                    label, "p_induced_exact", exact_induced_probability(ds, *subgraph, exact_cfg)));
            if (want_pairing_count)
                emitter.emit(detail::record_from_bigint(label, "restricted_pairings",
                                                        count_restricted_pairings(ds, bip)));
            if (want_class_table) {
                const ClassTable table = exact_class_table(ds, bip, exact_cfg);
                for (const auto& [key, count] : table.counts)
                    emitter.emit(detail::record_from_bigint(label, "class_count" + to_string(key), count));
                emitter.emit(detail::record_from_bigint(label, "restricted_pairings", table.total));
            }
            if (want_p_simple)
                emitter.emit(detail::record_from_rational(label, "p_simple_exact",
                                                          exact_p_simple(ds, bip, exact_cfg)));
            return feas == Feasibility::feasible ? exit_ok : exit_infeasible;
        }

        if (app.got_subcommand(sample)) {
            if (feas != Feasibility::feasible) {
                err << "error: infeasible instance (" << to_string(feas) << ")\n";
                return exit_infeasible;
            }
            const std::uint64_t seed = detail::pick_seed(seed_opt);
            if (raw && !seed_opt) err << "seed: " << seed << "\n";
            const LayoutPtr layout = make_layout(ds, bip);
            for (long long i = 0; i < sample_count; ++i) {
                auto rng = bgraph::detail::chunk_rng(seed, static_cast<std::uint64_t>(i));
                const Pairing P = sample_restricted(layout, rng);
                if (raw) {
                    out << to_text(P) << '\n';
                    continue;
                }
                Record r;
                r.instance = label;
                r.quantity = "pairing";
                r.seed = seed;
                r.trials = i;  // trial index within the seed's stream
                r.extra.emplace_back("pairing", to_text(P));
                if (with_census) {
                    const DefectCensus c = defect_census(P);
                    nlohmann::ordered_json census;
                    census["B0"] = c.loops;
                    census["B1"] = c.mixed_double_pairs;
                    census["B2"] = c.pure_double_pairs;
                    census["T1"] = c.mixed_triple_pairs;
                    census["T2"] = c.pure_triple_pairs;
                    census["I"] = c.double_loops;
                    census["heavy"] = c.heavy_multiplicities;
                    r.extra.emplace_back("defects", census);
                    const TwoPathCensus tp = two_path_census(P);
                    nlohmann::ordered_json paths;
                    paths["A1"] = tp.a1;
                    paths["A2"] = tp.a2;
                    paths["A3"] = tp.a3;
                    paths["A4"] = tp.a4;
                    r.extra.emplace_back("two_paths", paths);
                }
                emitter.emit(r);
            }
            return exit_ok;
        }

        if (app.got_subcommand(estimate)) {
            if (feas != Feasibility::feasible) {
                err << "error: infeasible instance (" << to_string(feas) << ")\n";
                return exit_infeasible;
            }
            const std::uint64_t seed = detail::pick_seed(seed_opt);
            if (estimator == "p-simple") {
                const PSimpleReport rep = estimate_p_simple(ds, bip, trials, seed, mc_cfg);
                Record r = detail::record_from_estimate(label, "p_simple", rep.estimate);
                r.error_hint = rep.error_hint;
                r.extra.emplace_back("identity_violations", rep.identity_violations);
                emitter.emit(r);
                Record pred;
                pred.instance = label;
                pred.quantity = "p_simple_predicted";
                pred.value = rep.predicted;
                pred.log_value = std::log(rep.predicted);
                pred.error_hint = rep.error_hint;
                emitter.emit(pred);
                return rep.identity_violations == 0 ? exit_ok : exit_check_failed;
            }
            if (estimator == "defect-means") {
                const DefectMeansReport rep = estimate_defect_means(ds, bip, trials, seed, mc_cfg);
                const auto put = [&](const char* name, const Estimate& e, double hint) {
                    Record r = detail::record_from_estimate(label, name, e);
                    r.error_hint = hint;
                    emitter.emit(r);
                };
                put("B0_mean", rep.loops, 0.0);
                put("B1_mean", rep.mixed_double_pairs, 0.0);
                put("B2_mean", rep.pure_double_pairs, 0.0);
                put("T1_mean", rep.mixed_triple_pairs, rep.triple_scale);
                put("T2_mean", rep.pure_triple_pairs, rep.triple_scale);
                put("I_mean", rep.double_loops, rep.double_loop_scale);
                for (const auto& [name, value] :
                     {std::pair<const char*, double>{"mu0", rep.mu0}, {"mu1", rep.mu1}, {"mu2", rep.mu2}}) {
                    Record r;
                    r.instance = label;
                    r.quantity = name;
                    r.value = value;
                    emitter.emit(r);
                }
                return rep.identity_violations == 0 ? exit_ok : exit_check_failed;
            }
            const ClassKey key{l0, l1, l2, false};
            const ClassConditionalReport rep =
                estimate_class_conditional(ds, bip, key, trials, seed, mc_cfg);
            const std::string class_label = label + ";class=" + to_string(key);
            const auto put = [&](const char* name, const Estimate& e) {
                Record r = detail::record_from_estimate(class_label, name, e);
                r.extra.emplace_back("accepted", rep.accepted);
                emitter.emit(r);
            };
            put("A1_mean", rep.a1);
            put("A2_mean", rep.a2);
            put("A3_mean", rep.a3);
            put("A4_mean", rep.a4);
            put("A1_sq_mean", rep.b1);
            put("A3_sq_mean", rep.b3);
            Record pred;
            pred.instance = class_label;
            pred.quantity = rep.compare_a1 ? "a1_predicted" : "a3_predicted";
            pred.value = rep.predicted;
            emitter.emit(pred);
            return rep.identity_violations == 0 ? exit_ok : exit_check_failed;
        }

        if (app.got_subcommand(verify)) {
            if (feas != Feasibility::feasible) {
                err << "error: infeasible instance (" << to_string(feas) << ")\n";
                return exit_infeasible;
            }
            std::vector<SwitchingKind> kinds;
            {
                std::istringstream k(kinds_spec);
                std::string tok;
                while (std::getline(k, tok, ',')) {
                    bool found = false;
                    for (const SwitchingKind kind : all_switching_kinds)
                        if (tok == to_string(kind)) {
                            kinds.push_back(kind);
                            found = true;
                        }
                    if (!found) {
                        err << "error: unknown switching kind '" << tok << "'\n";
                        return exit_usage;
                    }
                }
            }
            const SwitchingAudit audit = audit_switchings(ds, bip, !no_round_trips, exact_cfg);
            bool all_ok = true;
            for (const SwitchingKind kind : kinds) {
                for (const auto& [key, size] : audit.table.counts) {
                    if (!valid_high_key(kind, key)) continue;
                    const ClassKey low = low_key_of(kind, key);
                    BigInt fwd = 0, inv = 0;
                    if (const auto it = audit.forward_sums.find({kind, key});
                        it != audit.forward_sums.end())
                        fwd = it->second;
                    if (const auto it = audit.inverse_sums.find({kind, low});
                        it != audit.inverse_sums.end())
                        inv = it->second;
                    const bool ok = fwd == inv;
                    all_ok = all_ok && ok;
                    Record r;
                    r.instance = label;
                    r.quantity = std::string("double_count:") + to_string(kind) + ":" + to_string(key) +
                                 "->" + to_string(low);
                    r.value = ok ? 1.0 : 0.0;
                    r.extra.emplace_back("forward_sum", fwd.str());
                    r.extra.emplace_back("inverse_sum", inv.str());
                    r.extra.emplace_back("high_size", audit.table.count(key).str());
                    r.extra.emplace_back("low_size", audit.table.count(low).str());
                    emitter.emit(r);
                }
            }
            if (!no_round_trips) {
                Record r;
                r.instance = label;
                r.quantity = "switching_audit";
                r.value = (audit.round_trip_failures == 0 && audit.class_transition_failures == 0)
                              ? 1.0
                              : 0.0;
                all_ok = all_ok && *r.value == 1.0;
                r.extra.emplace_back("round_trips", audit.round_trips);
                r.extra.emplace_back("round_trip_failures", audit.round_trip_failures);
                r.extra.emplace_back("class_transition_failures", audit.class_transition_failures);
                emitter.emit(r);
            }
            return all_ok ? exit_ok : exit_check_failed;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const infeasible_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const insufficient_data_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_check_failed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace bgraph::cli
