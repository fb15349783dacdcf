#pragma once

#include <string>
#include <vector>

#include "lefschetz/numeric.hpp"

namespace lefschetz {

// Exact bookkeeping for a positive factorization: twist count and signature
// are maintained axiomatically (base relator constants, substitution deltas,
// fiber-sum additivity); everything else derives from them.
struct InvariantLedger {
    int genus = 0;
    BigInt n = 0;
    BigInt sigma = 0;
    bool is_relator = false;
    bool is_fiber_sum = false;
    std::string base_name;

    BigInt euler() const { return 4 - 4 * genus + n; }
};

struct SlopeReport {
    int genus = 0;
    BigInt n;
    BigInt e;
    BigInt sigma;
    BigInt chi_h;   // (sigma + e) / 4
    BigInt c1_sq;   // 3 sigma + 2 e
    BigInt k_sq;    // c1^2 + 8(g-1)
    BigInt chi_f;   // chi_h + (g-1)
    Rat lambda;     // k_sq / chi_f, lowest terms
};

// Derives the full report. Throws verify_error when the ledger cannot belong
// to a relator: missing relator flag, (sigma+e) not divisible by 4, or
// chi_f <= 0.
SlopeReport slope_report(const InvariantLedger& ledger);

struct BoundCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct SanityReport {
    bool all_pass = true;
    std::vector<BoundCheck> checks;
};

// K^2 >= 4g-4, chi_f >= 1, 4 | (sigma+e), lambda < 10 (strict).
SanityReport sanity_bounds(const SlopeReport& r);

}  // namespace lefschetz
