#pragma once

#include <optional>
#include <vector>

#include "lefschetz/linalg.hpp"

namespace lefschetz {

struct SnfResult {
    IntMat u;  // unimodular row transform
    IntMat d;  // diagonal, d_i | d_{i+1}, entries >= 0
    IntMat v;  // unimodular column transform; u * m * v == d
};

// Smith normal form by elementary row/column operations. Pivot selection is
// the smallest nonzero absolute value in the remaining block, so the
// reduction is deterministic.
SnfResult smith_normal_form(const IntMat& m);

// Rank of the integer matrix (number of nonzero diagonal entries of the SNF).
int snf_rank(const IntMat& m);

// One integer solution of A x = b, or nullopt when none exists.
std::optional<std::vector<Int>> solve_integer(const IntMat& a, const std::vector<Int>& b);

// Basis of the integer kernel of A, as columns.
IntMat integer_kernel(const IntMat& a);

// Elementary divisors of Z^rows / column-span(m): the nontrivial diagonal
// entries of the SNF (> 1), followed by one 0 per free rank. Divisors equal
// to 1 are dropped; an empty list means the quotient is trivial.
std::vector<Int> cokernel_divisors(const IntMat& m);

}  // namespace lefschetz
