#include <doctest.h>

#include <random>

#include "lefschetz/pipelines.hpp"
#include "lefschetz/word.hpp"

using namespace lefschetz;

namespace {

Factorization small_word(SurfacePtr s, const std::vector<std::string>& names)
{
    std::vector<CurvePtr> letters;
    for (const auto& n : names)
        letters.push_back(named_curve(*s, n));
    InvariantLedger ledger;
    ledger.genus = s->genus();
    ledger.n = letters.size();
    ledger.sigma = 0;
    return Factorization::make(std::move(s), std::move(letters), std::move(ledger));
}

bool classes_match_letters(const Factorization& w)
{
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!equal_up_to_sign(w.letter_classes()[i], homology_of_curve(*w.surface(), w.letters()[i])))
            return false;
    return true;
}

}  // namespace

TEST_CASE("hurwitz right on an intersecting pair produces the conjugate")
{
    SurfacePtr s = Surface::make(3);
    Factorization w = small_word(s, {"c1", "c2"});
    Factorization moved = hurwitz_move(w, 0, HurwitzDirection::Right);
    CHECK(equal(moved.letters()[0],
                image_curve(twist(named_curve(*s, "c1")), named_curve(*s, "c2"))));
    CHECK(equal(moved.letters()[1], named_curve(*s, "c1")));
    CHECK(classes_match_letters(moved));
    CHECK(product_transvection_matrix(moved) == product_transvection_matrix(w));
}

TEST_CASE("hurwitz right on a commuting pair is a plain swap")
{
    SurfacePtr s = Surface::make(3);
    Factorization w = small_word(s, {"c1", "c3"});
    Factorization moved = hurwitz_move(w, 0, HurwitzDirection::Right);
    CHECK(equal(moved.letters()[0], named_curve(*s, "c3")));
    CHECK(equal(moved.letters()[1], named_curve(*s, "c1")));
}

TEST_CASE("left then right at the same index restores the word")
{
    SurfacePtr s = Surface::make(3);
    Factorization w = small_word(s, {"c1", "c2", "c4", "u"});
    for (std::size_t pos = 0; pos + 1 < w.size(); ++pos) {
        Factorization back = hurwitz_move(hurwitz_move(w, pos, HurwitzDirection::Right), pos,
                                          HurwitzDirection::Left);
        REQUIRE(back.size() == w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            CHECK(equal(back.letters()[i], w.letters()[i]));
        Factorization back2 = hurwitz_move(hurwitz_move(w, pos, HurwitzDirection::Left), pos,
                                           HurwitzDirection::Right);
        for (std::size_t i = 0; i < w.size(); ++i)
            CHECK(equal(back2.letters()[i], w.letters()[i]));
    }
}

TEST_CASE("hurwitz move rejects out-of-range indices")
{
    SurfacePtr s = Surface::make(3);
    Factorization w = small_word(s, {"c1", "c2"});
    CHECK_THROWS_AS(hurwitz_move(w, 1, HurwitzDirection::Right), usage_error);
}

TEST_CASE("gather_right examples")
{
    SurfacePtr s = Surface::make(3);
    // (C1, C2, C1) gathering two C1s conjugates the middle letter once
    Factorization w = small_word(s, {"c1", "c2", "c1"});
    Factorization g2 = gather_right(w, "c1", 2);
    REQUIRE(g2.size() == 3);
    CHECK(equal(g2.letters()[0], image_curve(twist(named_curve(*s, "c1")), named_curve(*s, "c2"))));
    CHECK(equal(g2.letters()[1], named_curve(*s, "c1")));
    CHECK(equal(g2.letters()[2], named_curve(*s, "c1")));
    CHECK(product_transvection_matrix(g2) == product_transvection_matrix(w));

    // identity case: trailing letter already in place
    Factorization v = small_word(s, {"c3", "c1"});
    Factorization g1 = gather_right(v, "c1", 1);
    CHECK(equal(g1.letters()[0], named_curve(*s, "c3")));
    CHECK(equal(g1.letters()[1], named_curve(*s, "c1")));

    // insufficient occurrences
    CHECK_THROWS_AS(gather_right(v, "c1", 2), usage_error);

    // the hyperelliptic word already ends with c_1
    Factorization base = hyperelliptic_base(3);
    Factorization gb = gather_right(base, "c1", 1);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(equal(gb.letters()[i], base.letters()[i]));
}

TEST_CASE("gather_right postconditions on random words")
{
    SurfacePtr s = Surface::make(3);
    std::mt19937_64 rng(41);
    std::vector<std::string> names{"c1", "c2", "c3", "c4", "c5", "d2", "u"};
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> letters;
        std::size_t c1_count = 0;
        for (int i = 0; i < 30; ++i) {
            letters.push_back(names[pick(rng)]);
            if (letters.back() == "c1")
                ++c1_count;
        }
        if (c1_count == 0) {
            letters.push_back("c1");
            ++c1_count;
        }
        Factorization w = small_word(s, letters);
        std::uniform_int_distribution<std::size_t> kdist(1, c1_count);
        std::size_t k = kdist(rng);
        Factorization g = gather_right(w, "c1", k);
        CurvePtr c1 = named_curve(*s, "c1");
        // trailing k letters literal
        for (std::size_t i = g.size() - k; i < g.size(); ++i)
            CHECK(equal(g.letters()[i], c1));
        // prefix holds exactly count - k literal letters
        std::size_t prefix_literal = 0;
        for (std::size_t i = 0; i + k < g.size(); ++i)
            if (equal(g.letters()[i], c1))
                ++prefix_literal;
        CHECK(prefix_literal == c1_count - k);
        CHECK(g.size() == w.size());
        CHECK(product_transvection_matrix(g) == product_transvection_matrix(w));
        CHECK(classes_match_letters(g));
    }
}

TEST_CASE("global conjugation by the identity and by declared maps")
{
    SurfacePtr s0 = Surface::make(3);
    Factorization base = hyperelliptic_base(s0);
    Factorization same = global_conjugate(base, identity_map());
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(equal(same.letters()[i], base.letters()[i]));

    // phi2 = U E_2 C_1 U fixes c_3 as an axiom
    IntMat m = matrix_of_map(*s0, compose({twist(named_curve(*s0, "u")), twist(named_curve(*s0, "e2")),
                                           twist(named_curve(*s0, "c1")), twist(named_curve(*s0, "u"))}));
    SurfacePtr s = s0->with_declared({"phi2", {{"c1", "e2"}, {"c3", "c3"}}, m});
    Factorization w = small_word(s, {"c3"});
    Factorization conj = global_conjugate(w, declared_map(*s, "phi2"));
    CHECK(equal(conj.letters()[0], named_curve(*s, "c3")));

    // ledger and product-conjugation invariants
    Factorization wc = global_conjugate(with_surface(base, s), declared_map(*s, "phi2"));
    CHECK(wc.ledger().n == base.ledger().n);
    CHECK(wc.ledger().sigma == base.ledger().sigma);
    CHECK(verify_relator_homology(wc));
    CHECK(classes_match_letters(wc));
}

TEST_CASE("fiber sum adds ledgers and keeps the relator identity")
{
    Factorization base = hyperelliptic_base(3);
    Factorization f = fiber_sum(base, base, identity_map());
    CHECK(f.ledger().n == 56);
    CHECK(f.ledger().sigma == -32);
    CHECK(f.ledger().is_fiber_sum);
    CHECK(verify_relator_homology(f));
    // e-ledger additivity: e = e1 + e2 + 4(g-1)
    CHECK(f.ledger().euler() == base.ledger().euler() * 2 + 4 * (3 - 1));
    // slope is preserved under self fiber sum
    CHECK(slope_report(f.ledger()).lambda == slope_report(base.ledger()).lambda);

    // genus mismatch and non-relator inputs are rejected
    Factorization other = hyperelliptic_base(4);
    CHECK_THROWS_AS(fiber_sum(base, other, identity_map()), usage_error);
    SurfacePtr s = Surface::make(3);
    Factorization not_relator = small_word(s, {"c1"});
    CHECK_THROWS_AS(fiber_sum(base, not_relator, identity_map()), usage_error);
}

TEST_CASE("relator library templates act trivially on homology")
{
    for (int g : {3, 4, 5, 6}) {
        SurfacePtr s = Surface::make(g);
        CHECK(template_acts_trivially(*s, relator_library(*s, "lantern")));
        for (int h = 1; h <= g - 1; ++h) {
            RelatorTemplate odd = relator_library(*s, "odd_chain", h);
            CHECK(odd.rhs.size() == static_cast<std::size_t>((2 * h + 1) * (2 * h + 2)));
            CHECK(odd.delta_n == 4 * h * h + 6 * h);
            CHECK(odd.delta_sigma == -2 * h * (h + 2));
            CHECK(template_acts_trivially(*s, odd));
            CHECK(template_acts_trivially(*s, relator_library(*s, "even_chain", h)));
        }
        RelatorTemplate hyp = relator_library(*s, "hyperelliptic");
        CHECK(hyp.rhs.size() == static_cast<std::size_t>(8 * g + 4));
        CHECK(hyp.delta_sigma == -4 * (g + 1));
        CHECK(template_acts_trivially(*s, hyp));
    }
    SurfacePtr s3 = Surface::make(3);
    CHECK_THROWS_AS(relator_library(*s3, "odd_chain", 3), usage_error);
    CHECK_THROWS_AS(relator_library(*s3, "odd_chain", 0), usage_error);
    CHECK_THROWS_AS(relator_library(*s3, "nope"), usage_error);
}

TEST_CASE("odd chain h=1 template has the documented shape")
{
    SurfacePtr s = Surface::make(3);
    RelatorTemplate t = relator_library(*s, "odd_chain", 1);
    REQUIRE(t.lhs.size() == 2);
    CHECK(equal(t.lhs[0], named_curve(*s, "d2")));
    CHECK(equal(t.lhs[1], named_curve(*s, "e2")));
    CHECK(t.rhs.size() == 12);
    CHECK(t.delta_n == 10);
    CHECK(t.delta_sigma == -6);
}

TEST_CASE("substitution updates the ledger and preserves the product")
{
    SurfacePtr s = Surface::make(3);
    RelatorTemplate odd = relator_library(*s, "odd_chain", 1);
    // build D_2 E_2 followed by some tail
    Factorization w = small_word(s, {"d2", "e2", "c6"});
    InvariantLedger start = w.ledger();
    Factorization sub = substitute(w, 0, odd, SubstDirection::Forward);
    CHECK(sub.ledger().n == start.n + 10);
    CHECK(sub.ledger().sigma == start.sigma - 6);
    CHECK(sub.size() == 13);
    CHECK(product_transvection_matrix(sub) == product_transvection_matrix(w));
    // inverse substitution undoes the trade
    Factorization back = substitute(sub, 0, odd, SubstDirection::Inverse);
    CHECK(back.ledger().n == start.n);
    CHECK(back.ledger().sigma == start.sigma);
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(equal(back.letters()[i], w.letters()[i]));
    // mismatch is reported
    CHECK_THROWS_AS(substitute(w, 1, odd, SubstDirection::Forward), verify_error);
    CHECK_THROWS_AS(substitute(w, 2, odd, SubstDirection::Forward), usage_error);
}

TEST_CASE("lantern substitution deltas")
{
    SurfacePtr s = Surface::make(3);
    RelatorTemplate lantern = relator_library(*s, "lantern");
    Factorization w = small_word(s, {"c6", "x", "y", "z"});
    Factorization sub = substitute(w, 1, lantern, SubstDirection::Forward);
    CHECK(sub.ledger().n == w.ledger().n + 1);
    CHECK(sub.ledger().sigma == w.ledger().sigma - 1);
    Factorization back = substitute(sub, 1, lantern, SubstDirection::Inverse);
    CHECK(back.ledger().n == w.ledger().n);
    CHECK(back.ledger().sigma == w.ledger().sigma);
}

TEST_CASE("find_pattern convenience search")
{
    SurfacePtr s = Surface::make(3);
    Factorization w = small_word(s, {"c1", "d2", "e2", "c1"});
    std::vector<CurvePtr> pat{named_curve(*s, "d2"), named_curve(*s, "e2")};
    auto hit = find_pattern(w, pat);
    REQUIRE(hit.has_value());
    CHECK(*hit == 1);
    CHECK_FALSE(find_pattern(w, pat, 2).has_value());
}

TEST_CASE("block commute and interleave match single hurwitz moves")
{
    SurfacePtr s = Surface::make(3);
    Factorization w = small_word(s, {"d2", "d2", "c2", "u", "c5"});
    // block of two d2 letters crosses the next two letters
    Factorization block = commute_block_right(w, 0, 2, 2);
    Factorization steps = w;
    // move the rightmost block letter first, then the leftmost
    steps = hurwitz_move(steps, 1, HurwitzDirection::Right);
    steps = hurwitz_move(steps, 2, HurwitzDirection::Right);
    steps = hurwitz_move(steps, 0, HurwitzDirection::Right);
    steps = hurwitz_move(steps, 1, HurwitzDirection::Right);
    REQUIRE(block.size() == steps.size());
    for (std::size_t i = 0; i < block.size(); ++i)
        CHECK(equal(block.letters()[i], steps.letters()[i]));
    CHECK(product_transvection_matrix(block) == product_transvection_matrix(w));
    CHECK(classes_match_letters(block));

    // interleave D^2 E^2 -> (DE)^2 equals the single commuting move
    Factorization de = small_word(s, {"c1", "d2", "d2", "e2", "e2"});
    Factorization inter = interleave_tail(de, 2);
    Factorization manual = hurwitz_move(de, 2, HurwitzDirection::Right);
    for (std::size_t i = 0; i < inter.size(); ++i)
        CHECK(equal(inter.letters()[i], manual.letters()[i]));
    CHECK(product_transvection_matrix(inter) == product_transvection_matrix(de));
}

TEST_CASE("move_letter_right equals iterated right moves")
{
    SurfacePtr s = Surface::make(3);
    Factorization w = small_word(s, {"x", "c2", "c3", "y"});
    Factorization fast = move_letter_right(w, 0, 2);
    Factorization slow = hurwitz_move(hurwitz_move(w, 0, HurwitzDirection::Right), 1, HurwitzDirection::Right);
    for (std::size_t i = 0; i < fast.size(); ++i)
        CHECK(equal(fast.letters()[i], slow.letters()[i]));
    CHECK(classes_match_letters(fast));
}

TEST_CASE("verify_relator_homology on singles and relators")
{
    SurfacePtr s = Surface::make(3);
    CHECK_FALSE(verify_relator_homology(small_word(s, {"c1"})));
    CHECK(verify_relator_homology(hyperelliptic_base(3)));
}

TEST_CASE("h1 of the fiber quotient")
{
    SurfacePtr s = Surface::make(3);
    // empty word: free of rank 2g
    Factorization empty = small_word(s, {});
    auto div0 = h1_of_fiber_quotient(empty);
    CHECK(div0 == std::vector<Int>(6, 0));
    // single letter: rank-5 free part
    auto div1 = h1_of_fiber_quotient(small_word(s, {"c1"}));
    CHECK(div1 == std::vector<Int>(5, 0));
    // all chain curves: trivial quotient
    auto div_full = h1_of_fiber_quotient(small_word(s, {"c1", "c2", "c3", "c4", "c5", "c6", "c7"}));
    CHECK(div_full.empty());
}

TEST_CASE("fiber sum flags feed the h1 quotient invariance")
{
    Factorization base = hyperelliptic_base(3);
    CHECK(h1_of_fiber_quotient(base).empty());
}
