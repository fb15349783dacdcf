#include <doctest.h>

#include "lefschetz/pipelines.hpp"

using namespace lefschetz;

TEST_CASE("hyperelliptic base ledgers")
{
    Factorization b3 = hyperelliptic_base(3);
    CHECK(b3.size() == 28);
    CHECK(b3.ledger().n == 28);
    CHECK(b3.ledger().sigma == -16);
    CHECK(b3.ledger().euler() == 20);
    CHECK(verify_relator_homology(b3));
    SlopeReport r = slope_report(b3.ledger());
    CHECK(r.k_sq == 8);
    CHECK(r.chi_f == 3);
    CHECK(r.lambda == Rat(8, 3));

    SlopeReport r4 = slope_report(hyperelliptic_base(4).ledger());
    CHECK(r4.k_sq == 12);
    CHECK(r4.chi_f == 4);
    CHECK(r4.lambda == Rat(3));
}

TEST_CASE("closed forms")
{
    // n = 0 returns the base invariants
    ClosedForm c0 = closed_form_invariants(8, 3, 1, 1, 0);
    CHECK(c0.k_sq == 8);
    CHECK(c0.chi4 == 12);
    CHECK(c0.lambda == Rat(8, 3));
    // the g=3 family: lambda_n = (2^{n+1} + 14) / (2^n + 5)
    for (int n = 0; n <= 12; ++n) {
        ClosedForm c = closed_form_invariants(8, 3, 1, 1, n);
        CHECK(c.lambda == Rat((BigInt(1) << (n + 1)) + 14, (BigInt(1) << n) + 5));
    }
    // fixed point: h = g-1 = 2 from the genus-3 base keeps lambda = 8/3
    for (int n = 0; n <= 6; ++n)
        CHECK(closed_form_invariants(8, 3, 1, 2, n).lambda == Rat(8, 3));
    CHECK_THROWS_AS(closed_form_invariants(8, 0, 1, 1, 1), usage_error);
}

TEST_CASE("slope limit")
{
    CHECK(slope_limit(1) == Rat(2));
    CHECK(slope_limit(2) == Rat(8, 3));
    for (int g : {3, 5, 9})
        CHECK(slope_limit(g - 1) == Rat(4) - Rat(4, g));
    CHECK_THROWS_AS(slope_limit(0), usage_error);
}

TEST_CASE("explicit doubling step from the genus-3 base (h=1)")
{
    SequenceOptions opt;
    opt.h = 1;
    opt.r = 1;
    opt.steps = 1;
    opt.mode = PipelineMode::Explicit;
    SequenceResult seq = slope_sequence(hyperelliptic_base(3), opt);
    REQUIRE(seq.reports.size() == 2);
    const SlopeReport& r1 = seq.reports[1].report;
    CHECK(r1.k_sq == 18);
    CHECK(r1.chi_f == 7);
    CHECK(r1.lambda == Rat(18, 7));
    CHECK(seq.reports[1].r == 4);  // r_1 = 2(h+1) r_0
    REQUIRE(seq.final_word.has_value());
    CHECK(seq.final_word->size() == 66);
    CHECK(verify_relator_homology(*seq.final_word));
}

TEST_CASE("explicit doubling step with h=2 stays at the fixed point")
{
    SequenceOptions opt;
    opt.h = 2;
    opt.r = 1;
    opt.steps = 1;
    opt.mode = PipelineMode::Explicit;
    SequenceResult seq = slope_sequence(hyperelliptic_base(3), opt);
    const SlopeReport& r1 = seq.reports[1].report;
    CHECK(r1.k_sq == 24);
    CHECK(r1.chi_f == 9);
    CHECK(r1.lambda == Rat(8, 3));
    CHECK(seq.reports[1].r == 6);
}

TEST_CASE("explicit and ledger modes agree")
{
    for (int h : {1, 2}) {
        SequenceOptions opt;
        opt.h = h;
        opt.r = 2;
        opt.steps = 3;
        opt.mode = PipelineMode::Explicit;
        SequenceResult ex = slope_sequence(hyperelliptic_base(3), opt);
        opt.mode = PipelineMode::Ledger;
        SequenceResult ld = slope_sequence(hyperelliptic_base(3), opt);
        REQUIRE(ex.reports.size() == ld.reports.size());
        for (std::size_t i = 0; i < ex.reports.size(); ++i) {
            CHECK(ex.reports[i].n == ld.reports[i].n);
            CHECK(ex.reports[i].sigma == ld.reports[i].sigma);
            CHECK(ex.reports[i].r == ld.reports[i].r);
            CHECK(ex.reports[i].report.lambda == ld.reports[i].report.lambda);
        }
    }
}

TEST_CASE("ledger mode reaches large step counts")
{
    // the genus-5 base sits at the h = g-1 fixed point: lambda stays 16/5
    SequenceOptions opt;
    opt.h = 4;
    opt.r = 1;
    opt.steps = 50;
    opt.mode = PipelineMode::Ledger;
    SequenceResult seq = slope_sequence(hyperelliptic_base(5), opt);
    for (const auto& s : seq.reports)
        CHECK(s.report.lambda == slope_limit(4));

    // h = 3 from the same base decreases strictly toward 3
    opt.h = 3;
    SequenceResult seq3 = slope_sequence(hyperelliptic_base(5), opt);
    const Rat limit = slope_limit(3);
    Rat prev;
    for (std::size_t i = 0; i < seq3.reports.size(); ++i) {
        Rat cur = seq3.reports[i].report.lambda;
        CHECK(cur > limit);
        if (i > 0)
            CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev - limit < Rat(1, BigInt(1) << 40));
}

TEST_CASE("letter budget is enforced distinctly")
{
    SequenceOptions opt;
    opt.h = 1;
    opt.r = 1;
    opt.steps = 3;
    opt.mode = PipelineMode::Explicit;
    opt.budget = 100;
    CHECK_THROWS_AS(slope_sequence(hyperelliptic_base(3), opt), budget_error);
}

TEST_CASE("sequence preconditions")
{
    Factorization base = hyperelliptic_base(3);
    SequenceOptions opt;
    opt.h = 3;  // > g-1
    CHECK_THROWS_AS(slope_sequence(base, opt), usage_error);
    opt.h = 1;
    opt.r = 5;  // base has only 4 literal c1 letters
    opt.mode = PipelineMode::Explicit;
    CHECK_THROWS_AS(slope_sequence(base, opt), usage_error);
    opt.r = 1;
    opt.curve = "s1";  // separating
    CHECK_THROWS_AS(slope_sequence(base, opt), usage_error);
}

TEST_CASE("simply connected family: certificates and slope")
{
    FamilyResult fam = simply_connected_family(3, 1, PipelineMode::Explicit);
    CHECK(fam.report.lambda == Rat(18, 7));
    CHECK(fam.certificates.homology_identity);
    CHECK(fam.certificates.full_chain_presence);
    CHECK(fam.certificates.h1_trivial);
    CHECK(fam.certificates.simply_connected);
    CHECK(fam.certificates.minimal);
    CHECK(fam.certificates.slope_bounds);
    REQUIRE(fam.word.has_value());
    CHECK(fam.word->size() == 132);
    CHECK(fam.word->ledger().is_fiber_sum);

    // ledger mode reproduces the closed-form slope at n = 4
    FamilyResult lm = simply_connected_family(3, 4, PipelineMode::Ledger);
    CHECK(lm.report.lambda == Rat(46, 21));
    CHECK(lm.certificates.slope_bounds);
    CHECK_FALSE(lm.certificates.word_certificates_computed);
}

TEST_CASE("family rejects bad parameters")
{
    CHECK_THROWS_AS(simply_connected_family(2, 1, PipelineMode::Ledger), usage_error);
    CHECK_THROWS_AS(simply_connected_family(3, -1, PipelineMode::Ledger), usage_error);
}

TEST_CASE("lantern walks on the genus-3 base")
{
    Factorization base = hyperelliptic_base(3);
    WalkResult down = lantern_walk(base, "c1", WalkDirection::Down);
    CHECK(down.before.lambda == Rat(8, 3));
    CHECK(down.after.k_sq == 23);
    CHECK(down.after.chi_f == 9);
    CHECK(down.after.lambda == Rat(23, 9));
    CHECK(down.after.lambda < down.before.lambda);
    CHECK(verify_relator_homology(down.word));

    WalkResult up = lantern_walk(base, "c1", WalkDirection::Up);
    CHECK(up.after.k_sq == 33);
    CHECK(up.after.chi_f == 12);
    CHECK(up.after.lambda == Rat(33, 12));
    CHECK(up.after.lambda > up.before.lambda);
    CHECK(verify_relator_homology(up.word));
}

TEST_CASE("lantern walk on a family member")
{
    FamilyResult fam = simply_connected_family(3, 1, PipelineMode::Explicit);
    WalkResult down = lantern_walk(*fam.word, "c1", WalkDirection::Down);
    CHECK(down.before.lambda == fam.report.lambda);
    CHECK(down.after.lambda < down.before.lambda);
    WalkResult up = lantern_walk(*fam.word, "c1", WalkDirection::Up);
    CHECK(up.after.lambda > up.before.lambda);
}

TEST_CASE("default letter budget honours the environment override")
{
    CHECK(default_letter_budget() == kDefaultLetterBudget);
}
