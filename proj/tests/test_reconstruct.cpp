#include <doctest.h>

#include "frobrec/io.hpp"
#include "frobrec/verify.hpp"
#include "helpers.hpp"

using namespace frobrec;
using namespace frobrec::testing;

TEST_CASE("base exponential key by degeneration type") {
    CHECK(base_exponential_key(Orbifold(2, 2, 2)).alpha.length() == 3);
    CHECK(base_exponential_key(Orbifold(1, 2, 4)).alpha.length() == 2);
    CHECK(base_exponential_key(Orbifold(1, 1, 4)).alpha ==
          mk(Orbifold(1, 1, 4), {{3, 1, 1}}));
    CHECK(base_exponential_key(Orbifold(1, 1, 1)).alpha.is_zero());
    CHECK(base_exponential_key(Orbifold(1, 1, 1)).m == 1);
}

TEST_CASE("seed: cubics, base term, counts") {
    SeedReport rep;
    Orbifold A(3, 3, 3);
    Potential P = seed(A, &rep);
    for (int leg = 1; leg <= 3; ++leg)
        CHECK(*P.lookup({mk(A, {{leg, 1, 3}}), 0}) == rat_frac(1, 18));
    CHECK(*P.lookup(base_exponential_key(A)) == 1);
    CHECK(rep.cubic == 3);
    CHECK(rep.base == 1);

    SeedReport rep2;
    Orbifold B(2, 2, 2);
    seed(B, &rep2);
    CHECK(rep2.cubic == 0);  // no j-triple sums to 2

    // cubic count = sum_i #{j1<=j2<=j3 : j1+j2+j3 = a_i}
    SeedReport rep3;
    seed(Orbifold(2, 3, 7), &rep3);
    CHECK(rep3.cubic == 0 + 1 + 4);
    SeedReport rep4;
    seed(Orbifold(4, 4, 4), &rep4);
    CHECK(rep4.cubic == 3);

    Orbifold C(2, 3, 4);
    Potential Q = seed(C);
    CHECK(*Q.lookup({mk(C, {{3, 1, 2}, {3, 2, 1}}), 0}) == rat_frac(1, 8));
}

TEST_CASE("reconstruct (1,1,1): a single forced coefficient") {
    Orbifold A(1, 1, 1);
    auto rec = reconstruct(A, 4);
    auto items = rec.potential.sorted_nonzero();
    REQUIRE(items.size() == 1);
    CHECK(items[0].first == base_exponential_key(A));
    CHECK(items[0].second == 1);
    CHECK(rec.potential.max_m() == 1);
}

TEST_CASE("reconstruct: quartic coefficients") {
    Orbifold A(3, 3, 3);
    auto rec = reconstruct(A, 1);
    for (int leg = 1; leg <= 3; ++leg)
        CHECK(rec.potential.coeff({mk(A, {{leg, 1, 2}, {leg, 2, 2}}), 0}).value ==
              rat_frac(-1, 36));

    Orbifold B(2, 2, 2);
    auto rb = reconstruct(B, 4);
    for (int leg = 1; leg <= 3; ++leg)
        CHECK(rb.potential.coeff({mk(B, {{leg, 1, 4}}), 0}).value == rat_frac(-1, 96));

    Orbifold C(2, 3, 4);
    auto rc = reconstruct(C, 1);
    CHECK(rc.potential.coeff({mk(C, {{1, 1, 4}}), 0}).value == rat_frac(-1, 96));
    CHECK(rc.potential.coeff({mk(C, {{2, 1, 2}, {2, 2, 2}}), 0}).value == rat_frac(-1, 36));
    CHECK(rc.potential.coeff({mk(C, {{3, 1, 2}, {3, 3, 2}}), 0}).value == rat_frac(-1, 64));
}

TEST_CASE("reconstruct: length-4 e-term coefficients") {
    Orbifold A(3, 3, 3);
    auto rec = reconstruct(A, 1);
    // j+1 = 2 = a-j: the halved value 1/(2a)
    CHECK(rec.potential.coeff({mk(A, {{1, 2, 2}, {2, 1, 1}, {3, 1, 1}}), 1}).value ==
          rat_frac(1, 6));

    Orbifold B(2, 3, 5);
    auto rb = reconstruct(B, 1);
    CHECK(rb.potential.coeff({mk(B, {{2, 2, 2}, {1, 1, 1}, {3, 1, 1}}), 1}).value ==
          rat_frac(1, 6));
    CHECK(rb.potential.coeff({mk(B, {{3, 2, 1}, {3, 4, 1}, {1, 1, 1}, {2, 1, 1}}), 1}).value ==
          rat_frac(1, 5));
    CHECK(rb.potential.coeff({mk(B, {{3, 3, 2}, {1, 1, 1}, {2, 1, 1}}), 1}).value ==
          rat_frac(1, 10));
}

TEST_CASE("structural zeros never enter the worklist or the log") {
    Orbifold A(2, 3, 5);
    auto rec = reconstruct(A, 1);
    CoeffKey cross{mk(A, {{2, 1, 1}, {2, 2, 1}, {3, 1, 1}, {3, 4, 1}}), 0};
    REQUIRE(rec.potential.admissible(cross));
    CHECK(*rec.potential.lookup(cross) == 0);
    for (const auto& entry : rec.log) CHECK(entry.key != cross);
}

TEST_CASE("seed-term uniqueness at its level") {
    for (auto [a1, a2, a3] : std::vector<std::array<int, 3>>{
             {2, 2, 2}, {2, 3, 5}, {1, 2, 2}, {1, 2, 3}, {1, 1, 2}, {3, 3, 3}}) {
        Orbifold A(a1, a2, a3);
        auto rec = reconstruct(A, 1);
        CoeffKey base = base_exponential_key(A);
        int cap = base.alpha.length();
        for (const auto& alpha : admissible_alphas(A, 1)) {
            if (alpha.length() > cap) continue;
            Rational v = rec.potential.coeff({alpha, 1}).value;
            if (alpha == base.alpha)
                CHECK(v == 1);
            else
                CHECK(v == 0);
        }
    }
}

TEST_CASE("apply symmetry and orbit invariance") {
    Orbifold A(2, 2, 5);
    auto rec = reconstruct(A, 2);
    std::array<int, 3> swap12{1, 0, 2};
    for (const auto& [key, value] : rec.potential.sorted_items())
        CHECK(rec.potential.coeff({permute_legs(A, key.alpha, swap12), key.m}).value == value);

    // no nontrivial permutation: nothing to copy
    Orbifold B(2, 3, 7);
    SolveState st(B, 1, std::nullopt);
    CHECK(apply_symmetry(st) == 0);

    Orbifold C(3, 3, 3);
    auto rc = reconstruct(C, 1);
    for (int leg = 1; leg <= 3; ++leg)
        CHECK(rc.potential.coeff({mk(C, {{leg, 1, 3}}), 0}).value == rat_frac(1, 18));
}

TEST_CASE("resolution log is monotone along the induction order") {
    Orbifold A(2, 3, 6);
    auto rec = reconstruct(A, 3);
    size_t i = 0;
    // m in {0,1} first, lengths nondecreasing
    int last_len = -1;
    while (i < rec.log.size() && rec.log[i].key.m <= 1) {
        CHECK(rec.log[i].key.alpha.length() >= last_len);
        last_len = rec.log[i].key.alpha.length();
        ++i;
    }
    // then strictly by (m, length)
    std::pair<int, int> last{1, 0};
    for (; i < rec.log.size(); ++i) {
        std::pair<int, int> cur{rec.log[i].key.m, rec.log[i].key.alpha.length()};
        CHECK(cur.first >= 2);
        CHECK(cur >= last);
        last = cur;
    }
}

TEST_CASE("re-verification: every logged equation has residual zero") {
    Orbifold A(2, 3, 5);
    auto rec = reconstruct(A, 2);
    CHECK(!rec.log.empty());
    for (const auto& entry : rec.log) {
        CHECK(wdvv_residual(rec.potential, entry.inst) == 0);
        CHECK(rec.potential.coeff(entry.key).value == entry.value);
    }
}

TEST_CASE("determinism: identical runs, identical bytes and logs") {
    Orbifold A(2, 3, 6);
    auto r1 = reconstruct(A, 2);
    auto r2 = reconstruct(A, 2);
    CHECK(serialize(r1.potential, Format::Json) == serialize(r2.potential, Format::Json));
    REQUIRE(r1.log.size() == r2.log.size());
    for (size_t i = 0; i < r1.log.size(); ++i) {
        CHECK(r1.log[i].key == r2.log[i].key);
        CHECK(r1.log[i].value == r2.log[i].value);
        CHECK(r1.log[i].inst.q == r2.log[i].inst.q);
        CHECK(r1.log[i].inst.beta == r2.log[i].inst.beta);
        CHECK(r1.log[i].inst.n == r2.log[i].inst.n);
    }
}

TEST_CASE("argument validation") {
    Orbifold A(2, 2, 2);
    CHECK_THROWS_AS(reconstruct(A, 0), std::invalid_argument);
}

TEST_CASE("resolve_key on a seeded state resolves the quartic directly") {
    Orbifold A(2, 2, 2);
    SolveState st(A, 4, std::nullopt);
    CoeffKey quartic{mk(A, {{1, 1, 4}}), 0};
    REQUIRE(st.is_unknown(quartic));
    auto v = resolve_key(st, quartic);
    REQUIRE(v.has_value());
    CHECK(*v == rat_frac(-1, 96));
    // the orbit was assigned along with it
    CHECK(!st.is_unknown({mk(A, {{2, 1, 4}}), 0}));
}
