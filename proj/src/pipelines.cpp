#include "mirrorcount/pipelines.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace mirrorcount {

namespace {

std::string twist_key(const GroupElement& g) {
    if (g.is_diagonal()) {
        bool id = true;
        for (const auto& s : g.scalings)
            if (!(s == FqValue::residue(1, static_cast<int>(s.coords.size())))) {
                id = false;
                break;
            }
        if (id) return "id";
        std::string key = "diag:";
        for (size_t i = 0; i < g.scalings.size(); ++i) {
            if (i) key += '|';
            key += g.scalings[i].str();
        }
        return key;
    }
    std::string key = "perm:";
    for (size_t i = 0; i < g.perm.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(g.perm[i]);
    }
    key += ";scal:";
    for (size_t i = 0; i < g.scalings.size(); ++i) {
        if (i) key += '|';
        key += g.scalings[i].str();
    }
    return key;
}

GroupAction build_group(const ExperimentConfig& cfg, const Hypersurface& X) {
    switch (cfg.group) {
        case GroupSpec::dwork_diagonal: return dwork_diagonal_group(cfg.q(), X);
        case GroupSpec::trivial: return trivial_group(cfg.q(), cfg.n, X);
        case GroupSpec::permutation: return permutation_group(cfg.q(), cfg.n, X, cfg.perms);
    }
    throw validation_error("unknown group spec");
}

void smoothness_gate(const ExperimentConfig& cfg) {
    if (cfg.allow_singular) return;
    if (!is_smooth_dwork(cfg.q(), cfg.n, cfg.lambda))
        throw validation_error(
            "the requested member is singular; pass --allow-singular to count it anyway");
}

Integer cached_burnside(const ExperimentConfig& cfg, CountCache& cache, const Hypersurface& X,
                        const GroupAction& G, int k, BudgetMeter& budget) {
    // one tower per element order: scalar tuples only need F_{q^k},
    // everything else needs the Kummer cosets of its own order
    std::map<int, FieldTower> towers;
    for (const auto& g : G.elements) {
        int m = projective_order(cfg.q(), g);
        if (!towers.count(m))
            towers.emplace(m, build_tower(cfg.p, cfg.a, std::set<int>{k, k * m}, cfg.degree_budget));
    }
    Integer sum = 0;
    // schedule lambda computations over a small worker pool, assembled in
    // element order
    const size_t m = G.elements.size();
    std::vector<Integer> vals(m);
    std::vector<std::exception_ptr> errs(m);
    std::atomic<size_t> next{0};
    int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(m)));
    auto body = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= m) return;
            try {
                const GroupElement& g = G.elements[i];
                const FieldTower& tower = towers.at(projective_order(cfg.q(), g));
                std::string key = CountCache::make_key(X, twist_key(g), k);
                vals[i] = cache.fetch(
                    key,
                    [&] {
                        return lambda_twisted(tower, G, g, k, LambdaPath::automatic, budget, 1)
                            .value;
                    },
                    cfg.cache_verify_percent, cfg.cache_seed);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    for (const auto& v : vals) sum += v;
    Integer order = G.order();
    if (sum % order != 0)
        throw internal_consistency_error("twisted fixed-point sum not divisible by |G|");
    return sum / order;
}

Integer cached_count(const ExperimentConfig& cfg, CountCache& cache, const Hypersurface& X, int k,
                     BudgetMeter& budget) {
    std::string key = CountCache::make_key(X, "id", k);
    return cache.fetch(
        key,
        [&] {
            auto tower = build_tower(cfg.p, cfg.a, {k}, cfg.degree_budget);
            return count_points(tower, X, k, cfg.strategy, budget, cfg.threads).value;
        },
        cfg.cache_verify_percent, cfg.cache_seed);
}

}  // namespace

std::string group_spec_name(GroupSpec g) {
    switch (g) {
        case GroupSpec::dwork_diagonal: return "dwork-diagonal";
        case GroupSpec::trivial: return "trivial";
        case GroupSpec::permutation: return "permutation";
    }
    return "unknown";
}

std::string unit_family_name(UnitFamily f) {
    switch (f) {
        case UnitFamily::projective_space: return "pn";
        case UnitFamily::quadric_surface: return "quadric";
        case UnitFamily::plane_quotient: return "p2-quotients";
    }
    return "unknown";
}

FqValue parse_fq_value(const std::string& text, int a) {
    std::vector<uint32_t> coords;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (cur.empty()) throw validation_error("bad F_q value: " + text);
            coords.push_back(static_cast<uint32_t>(std::stoul(cur)));
            cur.clear();
        } else if (ch >= '0' && ch <= '9') {
            cur += ch;
        } else {
            throw validation_error("bad F_q value: " + text);
        }
    }
    if (coords.size() == 1 && a > 1) coords.resize(static_cast<size_t>(a), 0);
    if (coords.size() != static_cast<size_t>(a))
        throw validation_error("F_q value needs " + std::to_string(a) + " coordinates: " + text);
    return FqValue{coords};
}

CongruenceExperimentResult run_congruence_experiment(const ExperimentConfig& cfg) {
    smoothness_gate(cfg);
    CongruenceExperimentResult res;
    res.config = cfg;
    res.smooth = is_smooth_dwork(cfg.q(), cfg.n, cfg.lambda);

    auto X = dwork(cfg.q(), cfg.n, cfg.lambda);
    auto G = build_group(cfg, X);
    res.group_order = G.order();

    BudgetMeter budget(cfg.cell_budget);
    CountCache cache(cfg.cache_dir, cfg.q());

    res.counts_x.q = cfg.q();
    res.counts_quotient.q = cfg.q();
    for (int k = 1; k <= cfg.k_max; ++k) {
        res.counts_x.values.push_back(cached_count(cfg, cache, X, k, budget));
        res.counts_quotient.values.push_back(cached_burnside(cfg, cache, X, G, k, budget));
    }
    res.congruence =
        verify_congruence(res.counts_x, res.counts_quotient, CongruenceMode::quotient, G.order());

    if (cfg.with_zeta && cfg.k_max >= 2) {
        CountSequence diff{cfg.q(), {}};
        for (int k = 1; k <= cfg.k_max; ++k)
            diff.values.push_back(res.counts_x.at_k(k) - res.counts_quotient.at_k(k));
        res.difference_fit = fit_ratio(diff);
        if (res.difference_fit->ok)
            res.divisibility = check_root_divisibility(*res.difference_fit, cfg.q());
    }
    res.cells_used = budget.used();
    res.cache_verified = cache.verified_hits();
    return res;
}

UnitExperimentResult run_unit_projective_space(const ExperimentConfig& cfg) {
    UnitExperimentResult res;
    res.config = cfg;
    res.family = UnitFamily::projective_space;
    res.counts_x.q = cfg.q();
    for (int k = 1; k <= cfg.k_max; ++k)
        res.counts_x.values.push_back(projective_space_count(cfg.q(), cfg.n, k));
    res.counts_quotient = res.counts_x;
    res.congruence =
        verify_congruence(res.counts_x, res.counts_quotient, CongruenceMode::unit, Integer(1));
    return res;
}

UnitExperimentResult run_unit_quadric(const ExperimentConfig& cfg) {
    if (cfg.p == 2) throw validation_error("the quadric family needs odd characteristic");
    UnitExperimentResult res;
    res.config = cfg;
    res.family = UnitFamily::quadric_surface;
    auto X = diagonal_hypersurface(cfg.q(), 3, 2);
    BudgetMeter budget(cfg.cell_budget);
    res.counts_x.q = cfg.q();
    for (int k = 1; k <= cfg.k_max; ++k) {
        auto tower = build_tower(cfg.p, cfg.a, {k}, cfg.degree_budget);
        res.counts_x.values.push_back(
            count_points(tower, X, k, CountStrategy::last_coordinate_roots, budget, cfg.threads)
                .value);
    }
    res.counts_quotient = res.counts_x;
    res.congruence =
        verify_congruence(res.counts_x, res.counts_quotient, CongruenceMode::unit, Integer(1));
    res.cells_used = budget.used();
    return res;
}

UnitExperimentResult run_unit_plane_quotient(const ExperimentConfig& cfg,
                                             const std::string& which) {
    std::vector<std::vector<int>> gens;
    if (which == "c2")
        gens = {{1, 0, 2}};
    else if (which == "c3")
        gens = {{1, 2, 0}};
    else if (which == "s3")
        gens = {{1, 0, 2}, {1, 2, 0}};
    else
        throw validation_error("unknown plane quotient group: " + which);

    UnitExperimentResult res;
    res.config = cfg;
    res.family = UnitFamily::plane_quotient;
    res.group_name = which;
    auto G = permutation_group(cfg.q(), 2, std::nullopt, gens);
    res.group_order = G.order();

    BudgetMeter budget(cfg.cell_budget);
    res.counts_x.q = cfg.q();
    res.counts_quotient.q = cfg.q();
    for (int k = 1; k <= cfg.k_max; ++k) {
        res.counts_x.values.push_back(projective_space_count(cfg.q(), 2, k));
        std::set<int> degs{k, k * G.exponent};
        auto tower = build_tower(cfg.p, cfg.a, degs, cfg.degree_budget);
        res.counts_quotient.values.push_back(
            burnside_quotient_count(tower, G, k, LambdaPath::automatic, budget, cfg.threads)
                .value);
    }
    res.congruence =
        verify_congruence(res.counts_x, res.counts_quotient, CongruenceMode::unit, G.order());
    res.cells_used = budget.used();
    return res;
}

CountExperimentResult run_count(const ExperimentConfig& cfg, bool baseline) {
    CountExperimentResult res;
    res.config = cfg;
    res.baseline = baseline;
    BudgetMeter budget(cfg.cell_budget);
    if (baseline) {
        for (int k = 1; k <= cfg.k_max; ++k)
            res.records.push_back(
                CountRecord{k, projective_space_count(cfg.q(), cfg.n, k), Provenance::closed_form});
        return res;
    }
    smoothness_gate(cfg);
    auto X = dwork(cfg.q(), cfg.n, cfg.lambda);
    CountCache cache(cfg.cache_dir, cfg.q());
    for (int k = 1; k <= cfg.k_max; ++k) {
        Integer v = cached_count(cfg, cache, X, k, budget);
        res.records.push_back(CountRecord{k, v,
                                          cfg.strategy == CountStrategy::naive
                                              ? Provenance::naive_enumeration
                                              : Provenance::last_coordinate_roots});
    }
    res.cells_used = budget.used();
    return res;
}

TwistedCountResult run_twisted_count(const ExperimentConfig& cfg, const GroupElement& g,
                                     LambdaPath path) {
    smoothness_gate(cfg);
    TwistedCountResult res;
    res.config = cfg;
    res.element = g;
    auto X = dwork(cfg.q(), cfg.n, cfg.lambda);
    auto G = build_group(cfg, X);
    BudgetMeter budget(cfg.cell_budget);
    for (int k = 1; k <= cfg.k_max; ++k) {
        int m = projective_order(cfg.q(), g);
        std::set<int> degs{k, k * m};
        auto tower = build_tower(cfg.p, cfg.a, degs, cfg.degree_budget);
        res.records.push_back(lambda_twisted(tower, G, g, k, path, budget, cfg.threads));
    }
    res.cells_used = budget.used();
    return res;
}

QuotientCountResult run_quotient_count(const ExperimentConfig& cfg, bool with_oracle) {
    smoothness_gate(cfg);
    QuotientCountResult res;
    res.config = cfg;
    auto X = dwork(cfg.q(), cfg.n, cfg.lambda);
    auto G = build_group(cfg, X);
    res.group_order = G.order();
    BudgetMeter budget(cfg.cell_budget);
    CountCache cache(cfg.cache_dir, cfg.q());
    for (int k = 1; k <= cfg.k_max; ++k) {
        Integer v = cached_burnside(cfg, cache, X, G, k, budget);
        res.burnside.push_back(CountRecord{k, v, Provenance::burnside});
        if (with_oracle) {
            std::set<int> degs{k, k * G.exponent};
            auto tower = build_tower(cfg.p, cfg.a, degs, cfg.degree_budget);
            auto oracle = orbit_oracle(tower, G, k, budget);
            res.oracle.push_back(CountRecord{k, oracle.count, Provenance::orbit_oracle});
            if (oracle.count != v) res.oracle_agrees = false;
        }
    }
    res.cells_used = budget.used();
    return res;
}

ZetaExperimentResult run_zeta_fit(const ExperimentConfig& cfg, bool difference) {
    ZetaExperimentResult res;
    res.config = cfg;
    res.difference = difference;
    if (difference) {
        ExperimentConfig sub = cfg;
        sub.with_zeta = false;
        auto cong = run_congruence_experiment(sub);
        res.seq.q = cfg.q();
        for (int k = 1; k <= cfg.k_max; ++k)
            res.seq.values.push_back(cong.counts_x.at_k(k) - cong.counts_quotient.at_k(k));
        res.cells_used = cong.cells_used;
    } else {
        auto counts = run_count(cfg, false);
        res.seq.q = cfg.q();
        for (const auto& rec : counts.records) res.seq.values.push_back(rec.value);
        res.cells_used = counts.cells_used;
    }
    res.fit = fit_ratio(res.seq);
    if (res.fit.ok) {
        if (difference) {
            res.divisibility = check_root_divisibility(res.fit, cfg.q());
        } else if (cfg.n == 2) {
            res.sanity = curve_sanity(res.fit, cfg.q(), 1);
            res.numerator_slopes = newton_polygon(res.fit.numerator, cfg.q()).slopes;
        }
    }
    return res;
}

SmoothnessResult run_smoothness(const ExperimentConfig& cfg) {
    SmoothnessResult res;
    res.config = cfg;
    res.search_degree = cfg.n + 1;
    std::set<int> degs;
    for (int e = 1; e <= res.search_degree; ++e) degs.insert(e);
    auto tower = build_tower(cfg.p, cfg.a, degs, cfg.degree_budget);
    BudgetMeter budget(cfg.cell_budget);
    for (const auto& lam : all_lambdas(cfg.q())) {
        SmoothnessRow row;
        row.lambda = lam;
        row.closed_form_smooth = is_smooth_dwork(cfg.q(), cfg.n, lam);
        auto X = dwork(cfg.q(), cfg.n, lam);
        row.oracle_found_singularity =
            jacobian_singular_oracle(tower, X, res.search_degree, budget).found();
        row.agree = row.closed_form_smooth == !row.oracle_found_singularity;
        if (!row.agree) res.all_agree = false;
        if (!row.closed_form_smooth) res.singular_set.push_back(lam);
        res.rows.push_back(std::move(row));
    }
    res.cells_used = budget.used();
    return res;
}

NewtonHodgeResult run_newton_hodge_sweep(std::vector<uint32_t> primes, int k_max,
                                         uint64_t cell_budget, int threads) {
    NewtonHodgeResult res;
    res.k_max = k_max;
    auto hodge = hodge_polygon(hodge_numbers_hypersurface(2, 3));
    const std::vector<uint32_t> extensions{17, 19, 23, 29, 31};
    size_t ext_next = 0;
    BudgetMeter budget(cell_budget);
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        uint32_t p = primes[pi];
        QDescriptor q{p, 1};
        for (const auto& lam : all_lambdas(q)) {
            if (!is_smooth_dwork(q, 2, lam)) continue;
            NewtonHodgeRow row;
            row.p = p;
            row.lambda = lam;
            ExperimentConfig cfg;
            cfg.p = p;
            cfg.a = 1;
            cfg.n = 2;
            cfg.lambda = lam;
            cfg.k_max = k_max;
            cfg.strategy = CountStrategy::last_coordinate_roots;
            cfg.threads = threads;
            cfg.cell_budget = cell_budget;
            auto counts = run_count(cfg, false);
            res.cells_used += counts.cells_used;
            CountSequence seq{q, {}};
            for (const auto& rec : counts.records) seq.values.push_back(rec.value);
            auto fit = fit_ratio(seq);
            row.fit_ok = fit.ok;
            if (fit.ok) {
                row.numerator = fit.numerator;
                auto np = newton_polygon(fit.numerator, q);
                row.slopes = np.slopes;
                row.above_hodge = newton_above_hodge(np, hodge).pass;
                row.supersingular =
                    np.slopes.size() == 1 && np.slopes[0].first == Rational(1, 2);
                if (row.supersingular) res.found_supersingular = true;
            }
            if (!row.fit_ok || !row.above_hodge) res.all_pass = false;
            res.rows.push_back(std::move(row));
        }
        // extend the sweep until a supersingular member shows up
        if (pi + 1 == primes.size() && !res.found_supersingular && ext_next < extensions.size())
            primes.push_back(extensions[ext_next++]);
    }
    res.primes = std::move(primes);
    return res;
}

}  // namespace mirrorcount
