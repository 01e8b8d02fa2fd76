#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mirrorcount/report.hpp"

using namespace mirrorcount;

namespace {

struct CommonOpts {
    ExperimentConfig cfg;
    std::string lambda_text = "0";
    std::string format = "json";
    std::string output;
    std::string group = "dwork-diagonal";
    std::string perms_text;
    bool verify_cache = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool member_opts = true) {
    cmd->add_option("--p", o.cfg.p, "characteristic p (prime)")->required();
    cmd->add_option("--a", o.cfg.a, "extension degree a, q = p^a")->capture_default_str();
    if (member_opts) {
        cmd->add_option("--n", o.cfg.n, "ambient projective dimension")->capture_default_str();
        cmd->add_option("--lambda", o.lambda_text,
                        "family parameter: residue (\"3\") or F_q coordinates (\"0,1\") in the "
                        "canonical power basis")
            ->capture_default_str();
        cmd->add_option("--kmax", o.cfg.k_max, "largest k")->capture_default_str();
    }
    cmd->add_option("--threads", o.cfg.threads, "worker count")->capture_default_str();
    cmd->add_option("--budget-cells", o.cfg.cell_budget, "enumeration budget in chart cells")
        ->capture_default_str();
    cmd->add_option("--degree-budget", o.cfg.degree_budget, "largest allowed ambient degree")
        ->capture_default_str();
    cmd->add_option("--cache-dir", o.cfg.cache_dir,
                    "count cache directory (default: $MIRRORCOUNT_CACHE_DIR)");
    cmd->add_flag("--verify-cache", o.verify_cache,
                  "recompute a deterministic 5% sample of cache hits and require equality");
    cmd->add_option("--cache-seed", o.cfg.cache_seed, "seed for the cache verification sample")
        ->capture_default_str();
    cmd->add_flag("--allow-singular", o.cfg.allow_singular,
                  "run on singular members (congruence conclusions do not apply)");
    cmd->add_option("--format", o.format, "json or csv")->capture_default_str();
    cmd->add_option("--output", o.output, "write the report to a file instead of stdout");
}

void finalize(CommonOpts& o) {
    if (o.cfg.cache_dir.empty()) {
        if (const char* env = std::getenv("MIRRORCOUNT_CACHE_DIR")) o.cfg.cache_dir = env;
    }
    if (o.verify_cache) o.cfg.cache_verify_percent = 5;
    o.cfg.lambda = parse_fq_value(o.lambda_text, o.cfg.a);
    if (o.group == "dwork-diagonal")
        o.cfg.group = GroupSpec::dwork_diagonal;
    else if (o.group == "trivial")
        o.cfg.group = GroupSpec::trivial;
    else if (o.group == "perm" || o.group == "permutation")
        o.cfg.group = GroupSpec::permutation;
    else
        throw validation_error("unknown group: " + o.group);
    if (!o.perms_text.empty()) {
        // "1,0,2;2,0,1" -> two generators
        std::vector<int> cur;
        std::string num;
        auto flushnum = [&] {
            if (!num.empty()) {
                cur.push_back(std::stoi(num));
                num.clear();
            }
        };
        for (char c : o.perms_text + ";") {
            if (c == ',') {
                flushnum();
            } else if (c == ';') {
                flushnum();
                if (!cur.empty()) o.cfg.perms.push_back(cur);
                cur.clear();
            } else {
                num += c;
            }
        }
    }
}

OutputFormat parse_format(const std::string& f) {
    if (f == "json") return OutputFormat::json;
    if (f == "csv") return OutputFormat::csv;
    throw validation_error("unknown format: " + f);
}

void write_out(const std::string& bytes, const std::string& path) {
    if (path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot open output file " + path);
    out << bytes;
}

std::vector<uint32_t> parse_u32_list(const std::string& text) {
    std::vector<uint32_t> out;
    std::string num;
    for (char c : text + ",") {
        if (c == ',') {
            if (!num.empty()) out.push_back(static_cast<uint32_t>(std::stoul(num)));
            num.clear();
        } else {
            num += c;
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact point counts, quotient congruences and zeta diagnostics for "
                 "one-parameter hypersurface families over finite fields"};
    app.require_subcommand(1);

    CommonOpts o;
    int exit_code = 0;

    // count
    auto* c_count = app.add_subcommand("count", "N_k of a family member (or the P^n baseline)");
    bool baseline = false;
    std::string strategy = "naive";
    add_common(c_count, o);
    c_count->add_flag("--baseline-pn", baseline, "count P^n instead of the member");
    c_count->add_option("--strategy", strategy, "naive | roots")->capture_default_str();

    // twisted-count
    auto* c_twist = app.add_subcommand("twisted-count", "twisted fixed-point numbers of g o F^k");
    std::string zeta_text, perm_text, path_text = "auto";
    add_common(c_twist, o);
    c_twist->add_option("--zeta", zeta_text,
                        "diagonal scalings, one F_q value per coordinate separated by ';' "
                        "(e.g. \"1;2;4\")");
    c_twist->add_option("--perm", perm_text, "coordinate permutation image list (e.g. \"1,0,2\")");
    c_twist->add_option("--path", path_text, "auto | kummer | brute")->capture_default_str();
    c_twist->add_option("--group", o.group, "group housing the element")->capture_default_str();

    // quotient-count
    auto* c_quot = app.add_subcommand("quotient-count", "#(X/G)(F_{q^k}) by Burnside averaging");
    std::string method = "both";
    add_common(c_quot, o);
    c_quot->add_option("--group", o.group, "dwork-diagonal | trivial | perm")->capture_default_str();
    c_quot->add_option("--perms", o.perms_text, "';'-separated permutation generators");
    c_quot->add_option("--method", method, "burnside | both (adds the orbit oracle)")
        ->capture_default_str();

    // verify-congruence
    auto* c_cong = app.add_subcommand("verify-congruence",
                                      "check N_k(X) = N_k(X/G) mod q^k for k = 1..kmax");
    bool sweep = false;
    add_common(c_cong, o);
    c_cong->add_option("--group", o.group, "dwork-diagonal | trivial | perm")->capture_default_str();
    c_cong->add_flag("--with-zeta", o.cfg.with_zeta,
                     "fit the difference sequence and check q-divisibility of its roots");
    c_cong->add_flag("--lambda-sweep", sweep, "run every smooth lambda in F_q");

    // verify-unit
    auto* c_unit = app.add_subcommand(
        "verify-unit", "check N_k = 1 mod q^k for rational baselines and their quotients");
    std::string family = "pn", qgroup = "c2";
    add_common(c_unit, o);
    c_unit->add_option("--family", family, "pn | quadric | p2-quotients")->capture_default_str();
    c_unit->add_option("--quotient-group", qgroup, "c2 | c3 | s3 (p2-quotients only)")
        ->capture_default_str();

    // zeta-fit
    auto* c_zeta = app.add_subcommand("zeta-fit", "rational zeta-ratio reconstruction from counts");
    bool difference = false;
    std::string zstrategy = "naive";
    add_common(c_zeta, o);
    c_zeta->add_flag("--difference", difference, "fit N_k(X) - N_k(X/G) instead of N_k(X)");
    c_zeta->add_option("--group", o.group, "group for the difference fit")->capture_default_str();
    c_zeta->add_option("--strategy", zstrategy, "naive | roots")->capture_default_str();

    // newton-hodge
    auto* c_nh = app.add_subcommand("newton-hodge",
                                    "Newton-above-Hodge sweep for smooth plane-cubic members");
    std::string primes_text = "5,7,11,13";
    int nh_kmax = 4;
    uint64_t nh_budget = kDefaultCellBudget;
    int nh_threads = 1;
    std::string nh_format = "json", nh_output;
    c_nh->add_option("--primes", primes_text, "comma-separated base primes")->capture_default_str();
    c_nh->add_option("--kmax", nh_kmax, "counts per member")->capture_default_str();
    c_nh->add_option("--budget-cells", nh_budget, "enumeration budget")->capture_default_str();
    c_nh->add_option("--threads", nh_threads, "worker count")->capture_default_str();
    c_nh->add_option("--format", nh_format, "json or csv")->capture_default_str();
    c_nh->add_option("--output", nh_output, "output file");

    // smoothness
    auto* c_smooth = app.add_subcommand("smoothness",
                                        "closed-form smoothness against the Jacobian search");
    add_common(c_smooth, o);

    // hodge-numbers
    auto* c_hodge = app.add_subcommand("hodge-numbers",
                                       "primitive middle Hodge numbers of a hypersurface");
    int hn = 2, hd = 3;
    std::string h_format = "json", h_output;
    c_hodge->add_option("--n", hn, "ambient projective dimension")->required();
    c_hodge->add_option("--d", hd, "hypersurface degree")->required();
    c_hodge->add_option("--format", h_format, "json or csv")->capture_default_str();
    c_hodge->add_option("--output", h_output, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_hodge->parsed()) {
            auto h = hodge_numbers_hypersurface(hn, hd);
            write_out(report_emit(h, parse_format(h_format)), h_output);
            return 0;
        }
        if (c_nh->parsed()) {
            auto primes = parse_u32_list(primes_text);
            auto res = run_newton_hodge_sweep(primes, nh_kmax, nh_budget, nh_threads);
            write_out(report_emit(res, parse_format(nh_format)), nh_output);
            if (!res.all_pass) return 1;
            return res.found_supersingular ? 0 : 2;
        }

        finalize(o);
        OutputFormat fmt = parse_format(o.format);

        if (c_count->parsed()) {
            o.cfg.strategy = strategy == "roots" ? CountStrategy::last_coordinate_roots
                                                 : CountStrategy::naive;
            auto res = run_count(o.cfg, baseline);
            write_out(report_emit(res, fmt), o.output);
            return 0;
        }
        if (c_twist->parsed()) {
            GroupElement g;
            for (int i = 0; i <= o.cfg.n; ++i) g.perm.push_back(i);
            g.scalings.assign(static_cast<size_t>(o.cfg.n) + 1, FqValue::residue(1, o.cfg.a));
            if (!zeta_text.empty()) {
                std::vector<std::string> parts;
                std::string cur;
                for (char c : zeta_text + ";") {
                    if (c == ';') {
                        parts.push_back(cur);
                        cur.clear();
                    } else
                        cur += c;
                }
                if (parts.size() != static_cast<size_t>(o.cfg.n) + 1)
                    throw validation_error("--zeta needs n+1 values");
                for (size_t i = 0; i < parts.size(); ++i)
                    g.scalings[i] = parse_fq_value(parts[i], o.cfg.a);
            }
            if (!perm_text.empty()) {
                auto vals = parse_u32_list(perm_text);
                if (vals.size() != static_cast<size_t>(o.cfg.n) + 1)
                    throw validation_error("--perm needs n+1 entries");
                for (size_t i = 0; i < vals.size(); ++i) g.perm[i] = static_cast<int>(vals[i]);
            }
            LambdaPath path = LambdaPath::automatic;
            if (path_text == "kummer") path = LambdaPath::kummer;
            else if (path_text == "brute") path = LambdaPath::brute;
            else if (path_text != "auto") throw validation_error("unknown path: " + path_text);
            auto res = run_twisted_count(o.cfg, g, path);
            write_out(report_emit(res, fmt), o.output);
            return 0;
        }
        if (c_quot->parsed()) {
            auto res = run_quotient_count(o.cfg, method == "both" || method == "oracle");
            write_out(report_emit(res, fmt), o.output);
            return res.oracle_agrees ? 0 : 1;
        }
        if (c_cong->parsed()) {
            std::vector<FqValue> lambdas{o.cfg.lambda};
            if (sweep) {
                lambdas.clear();
                for (const auto& lam : all_lambdas(o.cfg.q()))
                    if (is_smooth_dwork(o.cfg.q(), o.cfg.n, lam)) lambdas.push_back(lam);
            }
            bool all_pass = true;
            bool inconclusive = false;
            std::string bytes;
            nlohmann::json sweep_json = nlohmann::json::array();
            for (const auto& lam : lambdas) {
                ExperimentConfig cfg = o.cfg;
                cfg.lambda = lam;
                auto res = run_congruence_experiment(cfg);
                if (!res.congruence.all_pass) all_pass = false;
                if (cfg.with_zeta) {
                    if (!res.difference_fit || !res.difference_fit->ok)
                        inconclusive = true;
                    else if (res.divisibility && !res.divisibility->pass)
                        all_pass = false;
                }
                if (fmt == OutputFormat::csv)
                    bytes += to_csv(res);
                else
                    sweep_json.push_back(to_json(res));
            }
            if (fmt == OutputFormat::json)
                bytes = report_emit(sweep_json.size() == 1 ? sweep_json[0] : sweep_json);
            write_out(bytes, o.output);
            if (!all_pass) return 1;
            return inconclusive ? 2 : 0;
        }
        if (c_unit->parsed()) {
            UnitExperimentResult res;
            if (family == "pn")
                res = run_unit_projective_space(o.cfg);
            else if (family == "quadric")
                res = run_unit_quadric(o.cfg);
            else if (family == "p2-quotients")
                res = run_unit_plane_quotient(o.cfg, qgroup);
            else
                throw validation_error("unknown family: " + family);
            write_out(report_emit(res, fmt), o.output);
            return res.congruence.all_pass ? 0 : 1;
        }
        if (c_zeta->parsed()) {
            o.cfg.strategy = zstrategy == "roots" ? CountStrategy::last_coordinate_roots
                                                  : CountStrategy::naive;
            auto res = run_zeta_fit(o.cfg, difference);
            write_out(report_emit(res, fmt), o.output);
            if (!res.fit.ok) return 2;
            if (res.sanity && !res.sanity->pass) return 1;
            if (res.divisibility && !res.divisibility->pass) return 1;
            return 0;
        }
        if (c_smooth->parsed()) {
            auto res = run_smoothness(o.cfg);
            write_out(report_emit(res, fmt), o.output);
            return res.all_agree ? 0 : 1;
        }
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const degree_budget_error& e) {
        std::cerr << "degree budget error: " << e.what() << "\n";
        return 2;
    } catch (const tower_too_small_error& e) {
        std::cerr << "tower error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return 2;
    } catch (const internal_consistency_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
