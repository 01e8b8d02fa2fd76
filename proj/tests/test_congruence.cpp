#include "doctest.h"
#include "mirrorcount/congruence.hpp"

using namespace mirrorcount;

TEST_CASE("ord_q basics") {
    CHECK(ord_q(Integer(49), {7, 1}).str() == "2");
    CHECK(ord_q(Integer(8), {2, 2}).str() == "3/2");
    CHECK(ord_q(Integer(0), {7, 1}).is_infinite());
    CHECK(ord_q(Integer(-14), {7, 1}).str() == "1");
    CHECK(ord_q(Integer(5), {7, 1}).str() == "0");
    // the sentinel beats every finite value
    CHECK(ord_q(Integer(0), {7, 1}).geq(ord_q(Integer(1) << 200, {7, 1})));
    CHECK(ord_q(Integer(0), {7, 1}) >= 1000000);
}

TEST_CASE("ord_q is a valuation on sampled integers") {
    QDescriptor q{3, 1};
    uint64_t seed = 12345;
    auto next = [&] {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<long>((seed >> 40) % 2000) - 1000;
    };
    for (int i = 0; i < 200; ++i) {
        Integer x(next()), y(next());
        if (x == 0 || y == 0) continue;
        CHECK(ord_q(x * y, q) == ord_q(x, q).plus(ord_q(y, q)));
        if (x + y != 0) CHECK(ord_q(x + y, q).geq(OrdQ::min(ord_q(x, q), ord_q(y, q))));
    }
}

TEST_CASE("unit congruence for the projective plane over F_5") {
    QDescriptor q{5, 1};
    CountSequence seq{q, {}};
    for (int k = 1; k <= 4; ++k) {
        Integer qk = q.q_pow(k);
        seq.values.push_back(1 + qk + qk * qk);
    }
    auto rep = verify_congruence(seq, seq, CongruenceMode::unit, Integer(1));
    CHECK(rep.all_pass);
    for (const auto& row : rep.rows) {
        CHECK(row.pass);
        CHECK(*row.pass_unit);
        CHECK(row.difference == 0);
        CHECK(row.ord_difference.is_infinite());
    }
}

TEST_CASE("corrupted count fails at the right k with ord 0") {
    QDescriptor q{5, 1};
    CountSequence seq{q, {}};
    for (int k = 1; k <= 4; ++k) {
        Integer qk = q.q_pow(k);
        seq.values.push_back(1 + qk + qk * qk);
    }
    CountSequence bad = seq;
    bad.values[1] += 1;
    auto rep = verify_congruence(seq, bad, CongruenceMode::quotient, Integer(1));
    CHECK_FALSE(rep.all_pass);
    CHECK(rep.rows[0].pass);
    CHECK_FALSE(rep.rows[1].pass);
    CHECK(rep.rows[1].ord_difference.str() == "0");
    CHECK(rep.rows[2].pass);
}

TEST_CASE("verdicts are stable under extending the k range") {
    QDescriptor q{3, 1};
    CountSequence x{q, {Integer(4), Integer(13), Integer(31)}};
    CountSequence y{q, {Integer(1), Integer(4), Integer(4)}};
    auto shorter = verify_congruence({q, {x.values[0], x.values[1]}},
                                     {q, {y.values[0], y.values[1]}},
                                     CongruenceMode::quotient, Integer(3));
    auto longer = verify_congruence(x, y, CongruenceMode::quotient, Integer(3));
    for (size_t i = 0; i < shorter.rows.size(); ++i) {
        CHECK(shorter.rows[i].pass == longer.rows[i].pass);
        CHECK(shorter.rows[i].pass_weak == longer.rows[i].pass_weak);
    }
}

TEST_CASE("weak bound uses c = ord_q of the group order") {
    QDescriptor q{7, 1};
    // difference 7^2 at k = 3 fails the strong bound but passes k - c
    // once c >= 1
    CountSequence x{q, {Integer(0), Integer(0), Integer(49)}};
    CountSequence y{q, {Integer(0), Integer(0), Integer(0)}};
    auto rep = verify_congruence(x, y, CongruenceMode::quotient, Integer(7));
    CHECK(rep.c.str() == "1");
    CHECK_FALSE(rep.rows[2].pass);
    CHECK(rep.rows[2].pass_weak);
}

TEST_CASE("mismatched ranges are rejected") {
    QDescriptor q{5, 1};
    CountSequence x{q, {Integer(1)}};
    CountSequence y{q, {Integer(1), Integer(2)}};
    CHECK_THROWS_AS(verify_congruence(x, y, CongruenceMode::quotient, Integer(1)),
                    validation_error);
    CountSequence z{{3, 1}, {Integer(1)}};
    CHECK_THROWS_AS(verify_congruence(x, z, CongruenceMode::quotient, Integer(1)),
                    validation_error);
}
