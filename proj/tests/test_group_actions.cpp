#include "doctest.h"
#include "mirrorcount/group.hpp"

using namespace mirrorcount;

namespace {

GroupElement diagonal_of(QDescriptor q, std::vector<uint32_t> residues) {
    GroupElement g;
    for (uint32_t r : residues) g.scalings.push_back(FqValue::residue(r, q.a));
    for (size_t i = 0; i < residues.size(); ++i) g.perm.push_back(static_cast<int>(i));
    return g;
}

}  // namespace

TEST_CASE("diagonal family group orders") {
    QDescriptor q7{7, 1};
    auto X7 = dwork(q7, 2, FqValue::residue(0));
    auto G7 = dwork_diagonal_group(q7, X7);
    CHECK(G7.elements.size() == 9);  // gcd(3,6)^2
    CHECK(G7.exponent == 3);

    QDescriptor q5{5, 1};
    auto X5 = dwork(q5, 2, FqValue::residue(0));
    auto G5 = dwork_diagonal_group(q5, X5);
    CHECK(G5.elements.size() == 1);  // gcd(3,4)^2

    auto X53 = dwork(q5, 3, FqValue::residue(1));
    auto G53 = dwork_diagonal_group(q5, X53);
    CHECK(G53.elements.size() == 64);  // gcd(4,4)^3
    CHECK(G53.exponent == 4);

    QDescriptor q4{2, 2};
    auto X4 = dwork(q4, 2, FqValue{{0, 0}});
    auto G4 = dwork_diagonal_group(q4, X4);
    CHECK(G4.elements.size() == 9);  // gcd(3,3)^2
}

TEST_CASE("group construction rejects non-groups and bad actions") {
    QDescriptor q7{7, 1};
    CHECK_THROWS_AS(permutation_group(q7, 2, std::nullopt, {{0, 0, 1}}), validation_error);
    // a permutation does not preserve an asymmetric hypersurface
    auto X = make_hypersurface(q7, 2,
                               {Term{{3, 0, 0}, FqValue::residue(1)},
                                Term{{0, 3, 0}, FqValue::residue(2)},
                                Term{{0, 0, 3}, FqValue::residue(1)}});
    CHECK_THROWS_AS(permutation_group(q7, 2, X, {{1, 0, 2}}), validation_error);
}

TEST_CASE("identity twist equals the plain point count") {
    QDescriptor q7{7, 1};
    auto X = dwork(q7, 2, FqValue::residue(3));
    auto G = dwork_diagonal_group(q7, X);
    auto t = build_tower(7, 1, {1, 2, 3, 6});
    BudgetMeter budget;
    for (int k : {1, 2}) {
        auto lam = lambda_twisted(t, G, G.elements[0], k, LambdaPath::kummer, budget);
        auto cnt = count_points(t, X, k, CountStrategy::naive, budget);
        CHECK(lam.value == cnt.value);
    }
}

TEST_CASE("kummer and brute paths agree on the Fermat cubic over F_7") {
    QDescriptor q7{7, 1};
    auto X = dwork(q7, 2, FqValue::residue(0));
    auto G = dwork_diagonal_group(q7, X);
    auto t = build_tower(7, 1, {1, 3});
    BudgetMeter budget;
    auto g = diagonal_of(q7, {1, 2, 4});
    auto fast = lambda_twisted(t, G, g, 1, LambdaPath::kummer, budget);
    auto brute = lambda_twisted(t, G, g, 1, LambdaPath::brute, budget);
    CHECK(fast.value == brute.value);

    // every group element agrees across paths at k = 1
    for (const auto& h : G.elements) {
        auto a = lambda_twisted(t, G, h, 1, LambdaPath::kummer, budget);
        auto b = lambda_twisted(t, G, h, 1, LambdaPath::brute, budget);
        CHECK(a.value == b.value);
    }
}

TEST_CASE("scalar tuples act trivially") {
    QDescriptor q7{7, 1};
    auto X = dwork(q7, 2, FqValue::residue(3));
    auto G = dwork_diagonal_group(q7, X);
    auto t = build_tower(7, 1, {1, 2, 3, 6});
    BudgetMeter budget;
    auto scalar = diagonal_of(q7, {2, 2, 2});
    for (int k : {1, 2}) {
        auto lam = lambda_twisted(t, G, scalar, k, LambdaPath::kummer, budget);
        auto cnt = count_points(t, X, k, CountStrategy::naive, budget);
        CHECK(lam.value == cnt.value);
    }
    // multiplying any element by a scalar tuple leaves its twist count alone
    auto fq = build_tower(7, 1, {1});
    auto g = diagonal_of(q7, {1, 2, 4});
    GroupElement zg = g;
    for (int i = 0; i < 3; ++i)
        zg.scalings[i] = fq.extract_fq(fq.mul(fq.embed_fq(zg.scalings[i]), fq.from_residue(4)));
    auto a = lambda_twisted(t, G, g, 1, LambdaPath::kummer, budget);
    auto b = lambda_twisted(t, G, zg, 1, LambdaPath::kummer, budget);
    CHECK(a.value == b.value);
}

TEST_CASE("base change invariance of the brute path") {
    QDescriptor q7{7, 1};
    auto X = dwork(q7, 2, FqValue::residue(0));
    auto G = dwork_diagonal_group(q7, X);
    auto g = diagonal_of(q7, {1, 2, 4});
    BudgetMeter budget;
    // ambient degree 3 and ambient degree 6 give the same twisted count
    auto t3 = build_tower(7, 1, {1, 3});
    auto t6 = build_tower(7, 1, {1, 2, 3, 6});
    auto a = lambda_twisted(t3, G, g, 1, LambdaPath::brute, budget);
    auto b = lambda_twisted(t6, G, g, 1, LambdaPath::brute, budget);
    CHECK(a.value == b.value);
}

TEST_CASE("burnside count: trivial group returns N_k") {
    QDescriptor q5{5, 1};
    auto X = dwork(q5, 2, FqValue::residue(4));
    auto G = trivial_group(q5, 2, X);
    auto t = build_tower(5, 1, {1, 2});
    BudgetMeter budget;
    auto bq = burnside_quotient_count(t, G, 2, LambdaPath::automatic, budget);
    auto cnt = count_points(t, X, 2, CountStrategy::naive, budget);
    CHECK(bq.value == cnt.value);
    CHECK(bq.provenance == Provenance::burnside);
}

TEST_CASE("burnside equals the orbit oracle on the Fermat cubic") {
    BudgetMeter budget;
    {
        QDescriptor q7{7, 1};
        auto X = dwork(q7, 2, FqValue::residue(0));
        auto G = dwork_diagonal_group(q7, X);
        auto t = build_tower(7, 1, {1, 3});
        auto bq = burnside_quotient_count(t, G, 1, LambdaPath::kummer, budget);
        auto oracle = orbit_oracle(t, G, 1, budget);
        CHECK(bq.value == oracle.count);
        for (const auto& orb : oracle.orbits)
            CHECK(Integer(static_cast<unsigned long>(orb.points.size())) * orb.stabilizer_size ==
                  G.order());
    }
    {
        QDescriptor q4{2, 2};
        auto X = dwork(q4, 2, FqValue{{0, 0}});
        auto G = dwork_diagonal_group(q4, X);
        auto t = build_tower(2, 2, {1, 3});
        auto bq = burnside_quotient_count(t, G, 1, LambdaPath::kummer, budget);
        auto oracle = orbit_oracle(t, G, 1, budget);
        CHECK(bq.value == oracle.count);
    }
}

TEST_CASE("orbit oracle on the trivial group yields singleton orbits") {
    QDescriptor q5{5, 1};
    auto X = dwork(q5, 2, FqValue::residue(4));
    auto G = trivial_group(q5, 2, X);
    auto t = build_tower(5, 1, {1});
    BudgetMeter budget;
    auto oracle = orbit_oracle(t, G, 1, budget);
    auto cnt = count_points(t, X, 1, CountStrategy::naive, budget);
    CHECK(oracle.count == cnt.value);
    for (const auto& orb : oracle.orbits) {
        CHECK(orb.points.size() == 1);
        CHECK(orb.frobenius_stable);
    }
}

TEST_CASE("coordinate swap on the projective plane baseline") {
    QDescriptor q5{5, 1};
    auto C2 = permutation_group(q5, 2, std::nullopt, {{1, 0, 2}});
    REQUIRE(C2.elements.size() == 2);
    CHECK(C2.exponent == 2);
    auto t = build_tower(5, 1, {1, 2});
    BudgetMeter budget;

    // brute twisted count matches the hand count q^2 + q + 1
    const GroupElement* swap = nullptr;
    for (const auto& g : C2.elements)
        if (!g.is_identity_perm()) swap = &g;
    REQUIRE(swap != nullptr);
    auto lam = lambda_twisted(t, C2, *swap, 1, LambdaPath::brute, budget);
    CHECK(lam.value == 31);  // 25 + 5 + 1

    // Burnside against the orbit oracle on the baseline
    auto bq = burnside_quotient_count(t, C2, 1, LambdaPath::automatic, budget);
    auto oracle = orbit_oracle(t, C2, 1, budget);
    CHECK(bq.value == oracle.count);
    CHECK(bq.value == (projective_space_count(q5, 2, 1) + 31) / 2);
}

TEST_CASE("burnside divisibility holds across a lambda sweep") {
    QDescriptor q7{7, 1};
    auto t = build_tower(7, 1, {1, 2, 3, 6});
    BudgetMeter budget;
    for (uint32_t lam : {0u, 3u, 5u, 6u}) {
        auto X = dwork(q7, 2, FqValue::residue(lam));
        auto G = dwork_diagonal_group(q7, X);
        for (int k : {1, 2}) {
            Integer sum = 0;
            for (const auto& g : G.elements)
                sum += lambda_twisted(t, G, g, k, LambdaPath::kummer, budget).value;
            CHECK(sum % G.order() == 0);
            CHECK(burnside_quotient_count(t, G, k, LambdaPath::kummer, budget).value ==
                  sum / G.order());
        }
    }
}

TEST_CASE("kummer path rejects permutation twists") {
    QDescriptor q5{5, 1};
    auto C2 = permutation_group(q5, 2, std::nullopt, {{1, 0, 2}});
    auto t = build_tower(5, 1, {1, 2});
    BudgetMeter budget;
    const GroupElement* swap = nullptr;
    for (const auto& g : C2.elements)
        if (!g.is_identity_perm()) swap = &g;
    CHECK_THROWS_AS(lambda_twisted(t, C2, *swap, 1, LambdaPath::kummer, budget),
                    validation_error);
}
