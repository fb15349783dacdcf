#include <doctest.h>

#include "lefschetz/ledger.hpp"

using namespace lefschetz;

namespace {

InvariantLedger relator_ledger(int g, BigInt n, BigInt sigma)
{
    InvariantLedger l;
    l.genus = g;
    l.n = std::move(n);
    l.sigma = std::move(sigma);
    l.is_relator = true;
    return l;
}

}  // namespace

TEST_CASE("slope report of the genus-3 hyperelliptic ledger")
{
    SlopeReport r = slope_report(relator_ledger(3, 28, -16));
    CHECK(r.e == 20);
    CHECK(r.chi_h == 1);
    CHECK(r.c1_sq == -8);
    CHECK(r.k_sq == 8);
    CHECK(r.chi_f == 3);
    CHECK(r.lambda == Rat(8, 3));
}

TEST_CASE("slope report rejects corrupted ledgers")
{
    // not a relator
    InvariantLedger l = relator_ledger(3, 28, -16);
    l.is_relator = false;
    CHECK_THROWS_AS(slope_report(l), verify_error);
    // sigma+e not divisible by 4
    CHECK_THROWS_AS(slope_report(relator_ledger(3, 28, -15)), verify_error);
    // chi_f <= 0 (empty word)
    CHECK_THROWS_AS(slope_report(relator_ledger(3, 0, 0)), verify_error);
}

TEST_CASE("sanity bounds")
{
    SanityReport ok = sanity_bounds(slope_report(relator_ledger(3, 28, -16)));
    CHECK(ok.all_pass);
    CHECK(ok.checks.size() == 4);

    // fabricated report with chi_f = 0 fails with the bound identifier
    SlopeReport fake;
    fake.genus = 3;
    fake.n = 10;
    fake.e = 2;
    fake.sigma = -2;
    fake.chi_h = 0;
    fake.c1_sq = -2;
    fake.k_sq = 14;
    fake.chi_f = 0;
    fake.lambda = Rat(0);
    SanityReport bad = sanity_bounds(fake);
    CHECK_FALSE(bad.all_pass);
    bool found = false;
    for (const auto& c : bad.checks)
        if (c.name == "chi_f_positive" && !c.pass)
            found = true;
    CHECK(found);
}

TEST_CASE("rational formatting")
{
    CHECK(rat_string(Rat(8, 3)) == "8/3");
    CHECK(rat_string(Rat(3)) == "3");
    CHECK(rat_string(Rat(-22, 4)) == "-11/2");
    CHECK(rat_decimal(Rat(8, 3), 6) == "2.666667");
    CHECK(rat_decimal(Rat(18, 7), 6) == "2.571429");
    CHECK(rat_decimal(Rat(3), 6) == "3.000000");
    CHECK(rat_decimal(Rat(-1, 8), 6) == "-0.125000");
    CHECK(rat_decimal(Rat(1, 2), 0) == "1");
}
