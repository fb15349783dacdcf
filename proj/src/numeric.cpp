#include "lefschetz/numeric.hpp"

namespace lefschetz {

std::string rat_string(const Rat& r)
{
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

std::string rat_decimal(const Rat& r, int digits)
{
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    bool neg = num < 0;
    if (neg)
        num = -num;
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    // round half away from zero
    BigInt scaled = (num * scale * 2 + den) / (den * 2);
    BigInt whole = scaled / scale;
    BigInt frac = scaled % scale;
    std::string f = frac.str();
    if (static_cast<int>(f.size()) < digits)
        f.insert(f.begin(), digits - f.size(), '0');
    std::string out = whole.str();
    if (digits > 0)
        out += "." + f;
    if (neg && (whole != 0 || frac != 0))
        out.insert(out.begin(), '-');
    return out;
}

}  // namespace lefschetz
