#include "lefschetz/linalg.hpp"

#include <cstdlib>
#include <numeric>

namespace lefschetz {

bool HomologyClass::is_zero() const
{
    for (Int v : c)
        if (v != 0)
            return false;
    return true;
}

bool HomologyClass::is_primitive() const
{
    Int g = 0;
    for (Int v : c)
        g = std::gcd(g, v < 0 ? -v : v);
    return g == 1;
}

static void check_same_dim(const HomologyClass& a, const HomologyClass& b)
{
    if (a.dim() != b.dim())
        throw usage_error("homology class dimension mismatch");
}

HomologyClass operator+(const HomologyClass& a, const HomologyClass& b)
{
    check_same_dim(a, b);
    HomologyClass r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = checked_add(r.c[i], b.c[i]);
    return r;
}

HomologyClass operator-(const HomologyClass& a, const HomologyClass& b)
{
    check_same_dim(a, b);
    HomologyClass r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = checked_sub(r.c[i], b.c[i]);
    return r;
}

HomologyClass operator-(const HomologyClass& a)
{
    HomologyClass r = a;
    for (auto& v : r.c)
        v = checked_sub(0, v);
    return r;
}

HomologyClass operator*(Int k, const HomologyClass& a)
{
    HomologyClass r = a;
    for (auto& v : r.c)
        v = checked_mul(k, v);
    return r;
}

bool equal_up_to_sign(const HomologyClass& a, const HomologyClass& b)
{
    if (a.dim() != b.dim())
        return false;
    bool plus = true, minus = true;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] != b.c[i])
            plus = false;
        if (a.c[i] != -b.c[i])
            minus = false;
        if (!plus && !minus)
            return false;
    }
    return true;
}

HomologyClass basis_x(int g, int i)
{
    HomologyClass v(std::vector<Int>(2 * static_cast<std::size_t>(g), 0));
    v.c[i - 1] = 1;
    return v;
}

HomologyClass basis_y(int g, int i)
{
    HomologyClass v(std::vector<Int>(2 * static_cast<std::size_t>(g), 0));
    v.c[g + i - 1] = 1;
    return v;
}

HomologyClass zero_class(int g)
{
    return HomologyClass(std::vector<Int>(2 * static_cast<std::size_t>(g), 0));
}

Int pairing(const HomologyClass& u, const HomologyClass& v)
{
    check_same_dim(u, v);
    if (u.dim() % 2 != 0)
        throw usage_error("odd-dimensional class");
    std::size_t g = u.dim() / 2;
    Int s = 0;
    for (std::size_t i = 0; i < g; ++i) {
        // <x_i, y_i> = 1
        s = checked_add(s, checked_mul(u.c[i], v.c[g + i]));
        s = checked_sub(s, checked_mul(u.c[g + i], v.c[i]));
    }
    return s;
}

IntMat IntMat::identity(int n)
{
    IntMat m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const
{
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

bool IntMat::is_identity() const
{
    if (rows_ != cols_)
        return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0))
                return false;
    return true;
}

IntMat operator*(const IntMat& a, const IntMat& b)
{
    if (a.cols() != b.rows())
        throw usage_error("matrix dimension mismatch");
    IntMat r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            Int aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < b.cols(); ++j)
                r.at(i, j) = checked_add(r.at(i, j), checked_mul(aik, b.at(k, j)));
        }
    return r;
}

HomologyClass operator*(const IntMat& m, const HomologyClass& v)
{
    if (static_cast<std::size_t>(m.cols()) != v.dim())
        throw usage_error("matrix/vector dimension mismatch");
    HomologyClass r(std::vector<Int>(m.rows(), 0));
    for (int i = 0; i < m.rows(); ++i) {
        Int s = 0;
        for (int j = 0; j < m.cols(); ++j)
            s = checked_add(s, checked_mul(m.at(i, j), v.c[j]));
        r.c[i] = s;
    }
    return r;
}

IntMat symplectic_form(int g)
{
    IntMat j(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        j.at(i, g + i) = 1;
        j.at(g + i, i) = -1;
    }
    return j;
}

IntMat transvection(const HomologyClass& c)
{
    if (c.dim() % 2 != 0)
        throw usage_error("odd-dimensional class");
    int n = static_cast<int>(c.dim());
    int g = n / 2;
    // Jc in the fixed basis: (Jc)_i = c_{g+i}, (Jc)_{g+i} = -c_i
    std::vector<Int> jc(n);
    for (int i = 0; i < g; ++i) {
        jc[i] = c.c[g + i];
        jc[g + i] = checked_sub(0, c.c[i]);
    }
    IntMat m = IntMat::identity(n);
    for (int i = 0; i < n; ++i) {
        if (c.c[i] == 0)
            continue;
        for (int j = 0; j < n; ++j)
            m.at(i, j) = checked_add(m.at(i, j), checked_mul(c.c[i], jc[j]));
    }
    return m;
}

void apply_transvection_power(HomologyClass& v, const HomologyClass& c, Int k)
{
    if (k == 0)
        return;
    Int t = checked_mul(k, pairing(v, c));
    if (t == 0)
        return;
    for (std::size_t i = 0; i < v.c.size(); ++i)
        v.c[i] = checked_add(v.c[i], checked_mul(t, c.c[i]));
}

bool is_symplectic(const IntMat& m, int g)
{
    if (m.rows() != 2 * g || m.cols() != 2 * g)
        return false;
    IntMat j = symplectic_form(g);
    return m.transposed() * j * m == j;
}

IntMat symplectic_inverse(const IntMat& m, int g)
{
    IntMat j = symplectic_form(g);
    IntMat minus_j(2 * g, 2 * g);
    for (int i = 0; i < 2 * g; ++i)
        for (int k = 0; k < 2 * g; ++k)
            minus_j.at(i, k) = checked_sub(0, j.at(i, k));
    return minus_j * m.transposed() * j;
}

void right_multiply_transvection(IntMat& p, const HomologyClass& c)
{
    // p * (I + c (Jc)^T) = p + (p c) (Jc)^T
    int n = p.cols();
    if (static_cast<std::size_t>(n) != c.dim() || p.rows() != n)
        throw usage_error("matrix/class dimension mismatch");
    int g = n / 2;
    std::vector<Int> jc(n);
    for (int i = 0; i < g; ++i) {
        jc[i] = c.c[g + i];
        jc[g + i] = checked_sub(0, c.c[i]);
    }
    for (int i = 0; i < n; ++i) {
        Int pc = 0;
        for (int k = 0; k < n; ++k)
            pc = checked_add(pc, checked_mul(p.at(i, k), c.c[k]));
        if (pc == 0)
            continue;
        for (int j = 0; j < n; ++j)
            p.at(i, j) = checked_add(p.at(i, j), checked_mul(pc, jc[j]));
    }
}

}  // namespace lefschetz
