#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mirrorcount/report.hpp"

using namespace mirrorcount;

namespace {

ExperimentConfig small_congruence_config() {
    ExperimentConfig cfg;
    cfg.p = 7;
    cfg.a = 1;
    cfg.n = 2;
    cfg.lambda = FqValue::residue(3);
    cfg.k_max = 2;
    cfg.group = GroupSpec::dwork_diagonal;
    cfg.strategy = CountStrategy::naive;
    return cfg;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("mirrorcount_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("congruence report carries the documented fields") {
    auto res = run_congruence_experiment(small_congruence_config());
    auto j = to_json(res);
    for (const char* key : {"assumptions", "config", "counts", "differences", "ord_q", "verdicts"})
        CHECK(j.contains(key));
    CHECK(j["assumptions"][0] == "smooth");
    CHECK(j["assumptions"][1] == "lifting-hypothesis-assumed");
    CHECK(j["counts"]["variety"].size() == 2);
    CHECK(j["counts"]["variety"][0].is_string());
    CHECK(j["verdicts"]["quotient_congruence"] == true);
    CHECK(j["config"]["engine"] == kEngineVersion);
    // environmental knobs stay out of the report
    CHECK_FALSE(j["config"].contains("threads"));
}

TEST_CASE("count CSV uses the documented header") {
    ExperimentConfig cfg = small_congruence_config();
    auto res = run_count(cfg, false);
    auto csv = to_csv(res);
    CHECK(csv.rfind("k,N_k,provenance\n", 0) == 0);
    CHECK(csv.find("1,9,naive-enumeration") != std::string::npos);
}

TEST_CASE("zeta report serializes coefficient lists constant term first") {
    ExperimentConfig cfg = small_congruence_config();
    cfg.lambda = FqValue::residue(0);
    cfg.k_max = 4;
    auto res = run_zeta_fit(cfg, false);
    REQUIRE(res.fit.ok);
    auto j = to_json(res);
    CHECK(j["fit"]["numerator"][0] == "1");
    CHECK(j["fit"]["numerator"][1] == "1");
    CHECK(j["fit"]["numerator"][2] == "7");
    CHECK(j["fit"]["denominator"] == nlohmann::json({"1", "-8", "7"}));
    CHECK(j["curve_sanity"]["pass"] == true);
}

TEST_CASE("reports are byte-identical regardless of the worker count") {
    auto cfg1 = small_congruence_config();
    cfg1.threads = 1;
    auto cfg3 = small_congruence_config();
    cfg3.threads = 3;
    auto r1 = report_emit(to_json(run_congruence_experiment(cfg1)));
    auto r3 = report_emit(to_json(run_congruence_experiment(cfg3)));
    CHECK(r1 == r3);
}

TEST_CASE("golden congruence report") {
    auto res = run_congruence_experiment(small_congruence_config());
    auto bytes = report_emit(to_json(res));
    std::string golden_path = std::string(MIRRORCOUNT_GOLDEN_DIR) + "/congruence_q7_lambda3_k2.json";
    std::ifstream in(golden_path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << golden_path);
    std::string golden((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(bytes == golden);
}

TEST_CASE("cache round trip, corruption handling and verification") {
    TempDir dir;
    QDescriptor q{7, 1};
    auto X = dwork(q, 2, FqValue::residue(3));
    std::string key = CountCache::make_key(X, "id", 1);

    {
        CountCache cache(dir.path.string(), q);
        CHECK(cache.enabled());
        CHECK_FALSE(cache.lookup(key).has_value());
        cache.store(key, Integer(9));
        CHECK(cache.lookup(key).value() == 9);
    }
    {
        // reload from disk
        CountCache cache(dir.path.string(), q);
        CHECK(cache.lookup(key).value() == 9);
        int computed = 0;
        Integer v = cache.fetch(key, [&] {
            ++computed;
            return Integer(9);
        });
        CHECK(v == 9);
        CHECK(computed == 0);  // hit, verification off
    }
    {
        // corrupt lines are skipped, intact entries survive
        std::ofstream app(dir.path / "cache_p7_a1.jsonl", std::ios::app);
        app << "this is not json\n";
        app.close();
        CountCache cache(dir.path.string(), q);
        CHECK(cache.lookup(key).value() == 9);
    }
    {
        // a poisoned value is caught by full verification
        std::string key2 = CountCache::make_key(X, "id", 2);
        std::ofstream app(dir.path / "cache_p7_a1.jsonl", std::ios::app);
        app << nlohmann::json{{"key", key2}, {"value", "12345"}, {"engine", kEngineVersion}}.dump()
            << "\n";
        app.close();
        CountCache cache(dir.path.string(), q);
        CHECK_THROWS_AS(cache.fetch(key2, [] { return Integer(63); }, 100, 1),
                        internal_consistency_error);
    }
    {
        // entries from other engine versions are ignored
        TempDir dir2;
        std::ofstream out(dir2.path / "cache_p7_a1.jsonl");
        out << nlohmann::json{{"key", key}, {"value", "9"}, {"engine", "0.0.1"}}.dump() << "\n";
        out.close();
        CountCache cache(dir2.path.string(), q);
        CHECK_FALSE(cache.lookup(key).has_value());
    }
}

TEST_CASE("cached congruence runs agree with uncached ones") {
    TempDir dir;
    auto cfg = small_congruence_config();
    auto plain = run_congruence_experiment(cfg);
    cfg.cache_dir = dir.path.string();
    auto first = run_congruence_experiment(cfg);   // fills the cache
    cfg.cache_verify_percent = 100;
    auto second = run_congruence_experiment(cfg);  // hits + verifies every entry
    CHECK(first.counts_x.values == plain.counts_x.values);
    CHECK(second.counts_quotient.values == plain.counts_quotient.values);
    CHECK(second.cache_verified > 0);
    CHECK(report_emit(to_json(first)) == report_emit(to_json(second)));
}

TEST_CASE("unit pipelines") {
    ExperimentConfig cfg;
    cfg.p = 5;
    cfg.a = 1;
    cfg.n = 3;
    cfg.k_max = 3;
    cfg.lambda = FqValue::residue(0);
    auto pn = run_unit_projective_space(cfg);
    CHECK(pn.congruence.all_pass);
    CHECK(pn.counts_x.at_k(2) == projective_space_count({5, 1}, 3, 2));

    ExperimentConfig qc = cfg;
    qc.p = 3;
    qc.k_max = 2;
    auto quad = run_unit_quadric(qc);
    CHECK(quad.congruence.all_pass);

    ExperimentConfig pq = cfg;
    pq.p = 5;
    pq.n = 2;
    pq.k_max = 2;
    auto c2 = run_unit_plane_quotient(pq, "c2");
    CHECK(c2.congruence.all_pass);
    CHECK(c2.group_order == 2);
    // Burnside at k = 1: (31 + 31)/2, since the swap twist also fixes 31 points
    CHECK(c2.counts_quotient.at_k(1) == 31);
}

TEST_CASE("smoothness pipeline sweeps agree") {
    ExperimentConfig cfg;
    cfg.p = 7;
    cfg.a = 1;
    cfg.n = 2;
    auto res = run_smoothness(cfg);
    CHECK(res.all_agree);
    REQUIRE(res.singular_set.size() == 3);
    CHECK(res.singular_set[0] == FqValue::residue(1));
    CHECK(res.singular_set[1] == FqValue::residue(2));
    CHECK(res.singular_set[2] == FqValue::residue(4));
}

TEST_CASE("newton-hodge sweep finds the supersingular member over F_5") {
    auto res = run_newton_hodge_sweep({5}, 4, kDefaultCellBudget, 1);
    CHECK(res.all_pass);
    CHECK(res.found_supersingular);
    bool saw_zero = false;
    for (const auto& row : res.rows)
        if (row.lambda == FqValue::residue(0)) {
            saw_zero = true;
            CHECK(row.supersingular);
        }
    CHECK(saw_zero);
}

TEST_CASE("parse_fq_value") {
    CHECK(parse_fq_value("3", 1) == FqValue::residue(3));
    CHECK(parse_fq_value("0,1", 2) == FqValue{{0, 1}});
    CHECK(parse_fq_value("1", 2) == FqValue{{1, 0}});
    CHECK_THROWS_AS(parse_fq_value("1,2,3", 2), validation_error);
    CHECK_THROWS_AS(parse_fq_value("x", 1), validation_error);
}

TEST_CASE("singular members are gated") {
    ExperimentConfig cfg = small_congruence_config();
    cfg.lambda = FqValue::residue(1);  // singular over F_7
    CHECK_THROWS_AS(run_congruence_experiment(cfg), validation_error);
    cfg.allow_singular = true;
    auto res = run_congruence_experiment(cfg);
    CHECK_FALSE(res.smooth);
    auto j = to_json(res);
    CHECK(j["assumptions"][0] == "singular-allowed");
}
