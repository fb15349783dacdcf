#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lefschetz/ledger.hpp"
#include "lefschetz/surface.hpp"

namespace lefschetz {

enum class HurwitzDirection { Left, Right };
enum class SubstDirection { Forward, Inverse };

// A substitution rule: the letters of `lhs` may be traded for the letters of
// `rhs` (forward) or back (inverse), changing the twist count by delta_n and
// the signature by delta_sigma.
struct RelatorTemplate {
    std::string name;
    int h = 0;
    std::vector<CurvePtr> lhs;
    std::vector<CurvePtr> rhs;
    Int delta_n = 0;
    Int delta_sigma = 0;
};

// An ordered word of positive Dehn twists with its invariant ledger. Letters
// are kept normalized; a parallel vector caches each letter's homology class
// (determined up to sign, which transvections ignore). Values are immutable:
// every operation returns a new word.
class Factorization {
public:
    const SurfacePtr& surface() const { return surface_; }
    const std::vector<CurvePtr>& letters() const { return letters_; }
    const std::vector<HomologyClass>& letter_classes() const { return classes_; }
    const InvariantLedger& ledger() const { return ledger_; }
    const std::vector<std::string>& provenance() const { return provenance_; }
    std::size_t size() const { return letters_.size(); }

    // Normalizes letters, computes classes, and verifies the relator
    // homology identity when the ledger claims a relator.
    static Factorization make(SurfacePtr surface, std::vector<CurvePtr> letters, InvariantLedger ledger,
                              std::vector<std::string> provenance = {});

    // Internal constructor for operations that maintain the invariants
    // themselves; skips normalization and verification.
    static Factorization raw(SurfacePtr surface, std::vector<CurvePtr> letters,
                             std::vector<HomologyClass> classes, InvariantLedger ledger,
                             std::vector<std::string> provenance);

private:
    Factorization() = default;

    SurfacePtr surface_;
    std::vector<CurvePtr> letters_;
    std::vector<HomologyClass> classes_;
    InvariantLedger ledger_;
    std::vector<std::string> provenance_;
};

// Product of the letters' transvections, leftmost letter as leftmost factor
// (the group convention composes the rightmost factor first).
IntMat product_transvection_matrix(const Factorization& w);

// True iff the ordered product of letter transvections is the identity.
bool verify_relator_homology(const Factorization& w);

// Elementary Hurwitz move on the adjacent pair at positions (pos, pos+1),
// 0-based, 0 <= pos <= n-2:
//   Right: (A, B) -> (B^A, A)      Left: (A, B) -> (B, A^{B^{-1}})
Factorization hurwitz_move(const Factorization& w, std::size_t pos, HurwitzDirection dir);

// Moves the rightmost `count` letters equal to Named(curve) to the word's
// tail via the identity C U = U^C C; the prefix keeps the remaining literal
// occurrences. Throws usage_error when fewer than `count` occurrences exist.
Factorization gather_right(const Factorization& w, const std::string& curve, std::size_t count);

// Every letter L becomes normalize(Image(m, L)); the ledger is unchanged.
Factorization global_conjugate(const Factorization& w, const MapPtr& m);

// Iterated right Hurwitz moves carrying the letter at `from` to position
// `to` (from <= to); each passed letter is conjugated by the traveler.
Factorization move_letter_right(const Factorization& w, std::size_t from, std::size_t to);

// Moves the block [start, start+len) right past the next `past` letters,
// the word-level result of len*past single right Hurwitz moves: each passed
// letter U becomes U^{A_1...A_len} (leftmost block letter outermost).
Factorization commute_block_right(const Factorization& w, std::size_t start, std::size_t len,
                                  std::size_t past);

// Rewrites the trailing D^r E^r into (D E)^r, where the tail consists of r
// copies of one letter followed by r copies of another whose curves are
// declared disjoint (so every crossing is a commuting swap).
Factorization interleave_tail(const Factorization& w, std::size_t r);

// Concatenation of w1 with the psi-conjugate of w2. Both inputs must be
// relators of the same genus; the result is flagged as a fiber sum and the
// ledger adds componentwise (n = n1+n2, sigma = sigma1+sigma2).
Factorization fiber_sum(const Factorization& w1, const Factorization& w2, const MapPtr& psi);

// Replaces `times` consecutive occurrences of the template pattern starting
// at `pos` (forward: LHS -> RHS, inverse: RHS -> LHS). Matching is
// structural on normalized letters. The transvection product over the
// replaced segment is verified unchanged.
Factorization substitute(const Factorization& w, std::size_t pos, const RelatorTemplate& t,
                         SubstDirection dir, std::size_t times = 1);

// First position >= from where the letters match `pattern` structurally.
std::optional<std::size_t> find_pattern(const Factorization& w, const std::vector<CurvePtr>& pattern,
                                        std::size_t from = 0);

// Instantiates library relators on the committed curve system:
//   lantern         (g >= 3): (x, y, z) -> (a1, a2, a3, a4)
//   odd_chain   h   (1 <= h <= g-1): (d_{h+1}, e_{h+1}) -> (c_1..c_{2h+1})^{2h+2}
//   even_chain  h   (1 <= h <= g-1): (s_h) -> (c_1..c_{2h})^{4h+2}
//   hyperelliptic   (): () -> (c_1..c_{2g} c_{2g+1}^2 c_{2g}..c_1)^2
RelatorTemplate relator_library(const Surface& s, const std::string& name, int h = 0);

// Necessary condition for a template to come from a relation: RHS and LHS
// act identically on homology.
bool template_acts_trivially(const Surface& s, const RelatorTemplate& t);

// Elementary divisors of H_1(fiber) modulo the span of the letters' classes
// (the abelianized vanishing-cycle quotient). Empty list = trivial group.
std::vector<Int> h1_of_fiber_quotient(const Factorization& w);

// Same word over a surface extended with more declared maps (genus and
// curve table must agree).
Factorization with_surface(const Factorization& w, SurfacePtr s);

}  // namespace lefschetz
