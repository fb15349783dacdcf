#include "lefschetz/snf.hpp"

#include <cstdlib>

namespace lefschetz {

namespace {

void swap_rows(IntMat& m, int a, int b)
{
    if (a == b)
        return;
    for (int j = 0; j < m.cols(); ++j)
        std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMat& m, int a, int b)
{
    if (a == b)
        return;
    for (int i = 0; i < m.rows(); ++i)
        std::swap(m.at(i, a), m.at(i, b));
}

// row a -= q * row b
void add_row(IntMat& m, int a, int b, Int q)
{
    if (q == 0)
        return;
    for (int j = 0; j < m.cols(); ++j)
        m.at(a, j) = checked_sub(m.at(a, j), checked_mul(q, m.at(b, j)));
}

// col a -= q * col b
void add_col(IntMat& m, int a, int b, Int q)
{
    if (q == 0)
        return;
    for (int i = 0; i < m.rows(); ++i)
        m.at(i, a) = checked_sub(m.at(i, a), checked_mul(q, m.at(i, b)));
}

void negate_row(IntMat& m, int a)
{
    for (int j = 0; j < m.cols(); ++j)
        m.at(a, j) = checked_sub(0, m.at(a, j));
}

}  // namespace

SnfResult smith_normal_form(const IntMat& m)
{
    int rows = m.rows(), cols = m.cols();
    SnfResult r{IntMat::identity(rows), m, IntMat::identity(cols)};
    IntMat& d = r.d;
    int t = 0;
    int nmin = rows < cols ? rows : cols;
    while (t < nmin) {
        // pivot: smallest nonzero |entry| in d[t.., t..]
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                Int v = d.at(i, j);
                if (v == 0)
                    continue;
                Int av = v < 0 ? -v : v;
                if (pi < 0 || av < best) {
                    best = av;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0)
            break;
        swap_rows(d, t, pi);
        swap_rows(r.u, t, pi);
        swap_cols(d, t, pj);
        swap_cols(r.v, t, pj);

        bool dirty = false;
        for (int i = t + 1; i < rows; ++i) {
            Int q = d.at(i, t) / d.at(t, t);
            add_row(d, i, t, q);
            add_row(r.u, i, t, q);
            if (d.at(i, t) != 0)
                dirty = true;
        }
        for (int j = t + 1; j < cols; ++j) {
            Int q = d.at(t, j) / d.at(t, t);
            add_col(d, j, t, q);
            add_col(r.v, j, t, q);
            if (d.at(t, j) != 0)
                dirty = true;
        }
        if (dirty)
            continue;

        // enforce d_t | all remaining entries
        int bi = -1, bj = -1;
        for (int i = t + 1; i < rows && bi < 0; ++i)
            for (int j = t + 1; j < cols; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
        if (bi >= 0) {
            // fold the offending column into column t and redo the pivot
            add_col(d, t, bj, -1);
            add_col(r.v, t, bj, -1);
            continue;
        }
        if (d.at(t, t) < 0) {
            negate_row(d, t);
            negate_row(r.u, t);
        }
        ++t;
    }
    return r;
}

int snf_rank(const IntMat& m)
{
    SnfResult r = smith_normal_form(m);
    int nmin = m.rows() < m.cols() ? m.rows() : m.cols();
    int rank = 0;
    for (int i = 0; i < nmin; ++i)
        if (r.d.at(i, i) != 0)
            ++rank;
    return rank;
}

std::optional<std::vector<Int>> solve_integer(const IntMat& a, const std::vector<Int>& b)
{
    if (static_cast<std::size_t>(a.rows()) != b.size())
        throw usage_error("solve_integer: dimension mismatch");
    SnfResult s = smith_normal_form(a);
    // U a V = D ; a x = b  <=>  D (V^-1 x) = U b
    std::vector<Int> c(a.rows(), 0);
    for (int i = 0; i < a.rows(); ++i) {
        Int acc = 0;
        for (int j = 0; j < a.rows(); ++j)
            acc = checked_add(acc, checked_mul(s.u.at(i, j), b[j]));
        c[i] = acc;
    }
    int nmin = a.rows() < a.cols() ? a.rows() : a.cols();
    std::vector<Int> y(a.cols(), 0);
    for (int i = 0; i < a.rows(); ++i) {
        Int di = i < nmin ? s.d.at(i, i) : 0;
        if (di != 0) {
            if (c[i] % di != 0)
                return std::nullopt;
            y[i] = c[i] / di;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(a.cols(), 0);
    for (int i = 0; i < a.cols(); ++i) {
        Int acc = 0;
        for (int j = 0; j < a.cols(); ++j)
            acc = checked_add(acc, checked_mul(s.v.at(i, j), y[j]));
        x[i] = acc;
    }
    return x;
}

IntMat integer_kernel(const IntMat& a)
{
    SnfResult s = smith_normal_form(a);
    int nmin = a.rows() < a.cols() ? a.rows() : a.cols();
    int rank = 0;
    for (int i = 0; i < nmin; ++i)
        if (s.d.at(i, i) != 0)
            ++rank;
    IntMat k(a.cols(), a.cols() - rank);
    for (int i = 0; i < a.cols(); ++i)
        for (int j = rank; j < a.cols(); ++j)
            k.at(i, j - rank) = s.v.at(i, j);
    return k;
}

std::vector<Int> cokernel_divisors(const IntMat& m)
{
    SnfResult s = smith_normal_form(m);
    int nmin = m.rows() < m.cols() ? m.rows() : m.cols();
    std::vector<Int> out;
    int rank = 0;
    for (int i = 0; i < nmin; ++i) {
        Int di = s.d.at(i, i);
        if (di == 0)
            break;
        ++rank;
        if (di != 1)
            out.push_back(di);
    }
    for (int i = rank; i < m.rows(); ++i)
        out.push_back(0);
    return out;
}

}  // namespace lefschetz
