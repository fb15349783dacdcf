#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lefschetz {

// Machine integers carry homology coefficients and matrix entries; all
// arithmetic on them is overflow-checked. Ledger quantities (twist counts,
// signatures, slopes) use arbitrary precision since they grow like 2^n.
using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Bad arguments or violated preconditions (CLI exit code 2).
struct usage_error : error {
    using error::error;
};
// A certificate, identity, or consistency check failed (CLI exit code 1).
struct verify_error : error {
    using error::error;
};
// Explicit-mode word exceeded the letter budget (CLI exit code 3).
struct budget_error : error {
    using error::error;
};

inline Int checked_add(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw error("integer overflow in addition");
    return r;
}

inline Int checked_sub(Int a, Int b)
{
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw error("integer overflow in subtraction");
    return r;
}

inline Int checked_mul(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw error("integer overflow in multiplication");
    return r;
}

inline Rat make_rat(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw error("rational with zero denominator");
    return Rat(num, den);
}

// "p/q" in lowest terms, or just "p" when q == 1.
std::string rat_string(const Rat& r);

// Decimal rendering with the given number of digits after the point,
// round half away from zero. Presentation only; comparisons stay exact.
std::string rat_decimal(const Rat& r, int digits = 6);

}  // namespace lefschetz
