#include "lefschetz/ledger.hpp"

namespace lefschetz {

SlopeReport slope_report(const InvariantLedger& ledger)
{
    if (!ledger.is_relator)
        throw verify_error("slope report requires a relator");
    SlopeReport r;
    r.genus = ledger.genus;
    r.n = ledger.n;
    r.sigma = ledger.sigma;
    r.e = ledger.euler();
    BigInt se = r.sigma + r.e;
    if (se % 4 != 0)
        throw verify_error("ledger corrupt: sigma + e = " + se.str() + " is not divisible by 4");
    r.chi_h = se / 4;
    r.c1_sq = 3 * r.sigma + 2 * r.e;
    r.k_sq = r.c1_sq + 8 * (ledger.genus - 1);
    r.chi_f = r.chi_h + (ledger.genus - 1);
    if (r.chi_f <= 0)
        throw verify_error("chi_f = " + r.chi_f.str() + " is not positive (non-relatively-minimal or corrupted ledger)");
    r.lambda = make_rat(r.k_sq, r.chi_f);
    return r;
}

SanityReport sanity_bounds(const SlopeReport& r)
{
    SanityReport out;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        out.checks.push_back({name, pass, detail});
        if (!pass)
            out.all_pass = false;
    };
    BigInt k_min = 4 * r.genus - 4;
    check("K2_lower_bound", r.k_sq >= k_min, "K^2 = " + r.k_sq.str() + " vs 4g-4 = " + k_min.str());
    check("chi_f_positive", r.chi_f >= 1, "chi_f = " + r.chi_f.str());
    check("signature_parity", (r.sigma + r.e) % 4 == 0, "sigma+e = " + BigInt(r.sigma + r.e).str());
    check("slope_below_ten", r.lambda < Rat(10), "lambda = " + rat_string(r.lambda));
    return out;
}

}  // namespace lefschetz
