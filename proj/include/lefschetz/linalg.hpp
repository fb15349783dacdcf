#pragma once

#include <vector>

#include "lefschetz/numeric.hpp"

namespace lefschetz {

// Element of H_1 of the genus-g surface in the fixed basis
// (x_1..x_g, y_1..y_g); coefficient i is x_{i+1}, coefficient g+i is y_{i+1}.
struct HomologyClass {
    std::vector<Int> c;

    HomologyClass() = default;
    explicit HomologyClass(std::vector<Int> coeffs) : c(std::move(coeffs)) {}

    std::size_t dim() const { return c.size(); }
    bool is_zero() const;
    bool is_primitive() const;  // gcd of coefficients is 1

    friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

HomologyClass operator+(const HomologyClass& a, const HomologyClass& b);
HomologyClass operator-(const HomologyClass& a, const HomologyClass& b);
HomologyClass operator-(const HomologyClass& a);
HomologyClass operator*(Int k, const HomologyClass& a);

// a == b or a == -b
bool equal_up_to_sign(const HomologyClass& a, const HomologyClass& b);

// Basis vectors: x_i and y_i are 1-based.
HomologyClass basis_x(int g, int i);
HomologyClass basis_y(int g, int i);
HomologyClass zero_class(int g);

// The symplectic intersection pairing <u,v> = u^T J v with <x_i,y_i> = +1.
Int pairing(const HomologyClass& u, const HomologyClass& v);

// Dense integer matrix, row major, overflow-checked arithmetic.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    Int at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    IntMat transposed() const;
    bool is_identity() const;

    friend bool operator==(const IntMat&, const IntMat&) = default;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
HomologyClass operator*(const IntMat& m, const HomologyClass& v);

// The standard symplectic form J (antisymmetric, unimodular).
IntMat symplectic_form(int g);

// Matrix of the transvection v |-> v + <v,c>c (homology action of the
// positive Dehn twist about a curve with class c). Satisfies T(c) == T(-c).
IntMat transvection(const HomologyClass& c);

// Applies T(c)^k in place: v += k<v,c>c. Powers of a transvection stay
// closed-form because <c,c> = 0.
void apply_transvection_power(HomologyClass& v, const HomologyClass& c, Int k);

// M^T J M == J
bool is_symplectic(const IntMat& m, int g);

// Inverse of a symplectic matrix: M^{-1} = -J M^T J. Exact over Z.
IntMat symplectic_inverse(const IntMat& m, int g);

// Accumulates p <- p * T(c) as a rank-one update (one row pass).
void right_multiply_transvection(IntMat& p, const HomologyClass& c);

}  // namespace lefschetz
