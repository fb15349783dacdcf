#include <vector>

#include "lefschetz/snf.hpp"
#include "lefschetz/surface.hpp"

namespace lefschetz {

namespace {

struct Anchor {
    bool is_pair;
    std::vector<Int> v;
    std::vector<Int> w;  // only for pairs
};

std::vector<Int> mat_vec(const IntMat& m, const std::vector<Int>& x)
{
    std::vector<Int> r(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        Int s = 0;
        for (int j = 0; j < m.cols(); ++j)
            s = checked_add(s, checked_mul(m.at(i, j), x[j]));
        r[i] = s;
    }
    return r;
}

std::vector<Int> row_times_mat(const std::vector<Int>& x, const IntMat& m)
{
    std::vector<Int> r(m.cols(), 0);
    for (int j = 0; j < m.cols(); ++j) {
        Int s = 0;
        for (int i = 0; i < m.rows(); ++i)
            s = checked_add(s, checked_mul(x[i], m.at(i, j)));
        r[j] = s;
    }
    return r;
}

Int form_value(const IntMat& gram, const std::vector<Int>& a, const std::vector<Int>& b)
{
    std::vector<Int> gb = mat_vec(gram, b);
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = checked_add(s, checked_mul(a[i], gb[i]));
    return s;
}

// Inverse of a unimodular matrix: with U B V = I we have B^{-1} = V U.
IntMat unimodular_inverse(const IntMat& b)
{
    SnfResult s = smith_normal_form(b);
    if (!s.d.is_identity())
        throw error("matrix is not unimodular");
    return s.v * s.u;
}

// Recursively builds a basis B (columns) of the lattice with antisymmetric
// unimodular Gram matrix `gram`, such that B^T gram B is the standard
// interleaved symplectic form, with the anchor vectors placed first.
IntMat symplectic_basis_with(const IntMat& gram, std::vector<Anchor> anchors)
{
    const int dim = gram.rows();
    if (dim == 0)
        return IntMat(0, 0);

    std::vector<Int> v, w;
    std::vector<Anchor> rest;
    if (!anchors.empty()) {
        Anchor a = anchors.front();
        rest.assign(anchors.begin() + 1, anchors.end());
        v = a.v;
        if (a.is_pair) {
            w = a.w;
        } else {
            // solve <v,w> = 1, <s,w> = 0 for every later anchor vector s
            std::vector<std::vector<Int>> rows{row_times_mat(v, gram)};
            std::vector<Int> rhs{1};
            for (const Anchor& b : rest) {
                rows.push_back(row_times_mat(b.v, gram));
                rhs.push_back(0);
                if (b.is_pair) {
                    rows.push_back(row_times_mat(b.w, gram));
                    rhs.push_back(0);
                }
            }
            IntMat a_mat(static_cast<int>(rows.size()), dim);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (int j = 0; j < dim; ++j)
                    a_mat.at(static_cast<int>(i), j) = rows[i][j];
            auto sol = solve_integer(a_mat, rhs);
            if (!sol)
                throw verify_error("symplectic extension: no integral completion found");
            w = *sol;
        }
    } else {
        v.assign(dim, 0);
        v[0] = 1;
        IntMat a_mat(1, dim);
        auto row = row_times_mat(v, gram);
        for (int j = 0; j < dim; ++j)
            a_mat.at(0, j) = row[j];
        auto sol = solve_integer(a_mat, std::vector<Int>{1});
        if (!sol)
            throw verify_error("symplectic extension: gram matrix not unimodular");
        w = *sol;
    }
    if (form_value(gram, v, w) != 1)
        throw error("symplectic extension: internal pairing error");

    // complement: integer kernel of the two linear forms <v,.> and <w,.>
    IntMat forms(2, dim);
    auto rv = row_times_mat(v, gram);
    auto rw = row_times_mat(w, gram);
    for (int j = 0; j < dim; ++j) {
        forms.at(0, j) = rv[j];
        forms.at(1, j) = rw[j];
    }
    IntMat k = integer_kernel(forms);
    if (k.cols() != dim - 2)
        throw verify_error("symplectic extension: complement has unexpected rank");

    // re-express remaining anchors in complement coordinates
    std::vector<Anchor> rest_in_k;
    for (const Anchor& b : rest) {
        Anchor nb;
        nb.is_pair = b.is_pair;
        auto a1 = solve_integer(k, b.v);
        if (!a1)
            throw verify_error("symplectic extension: constraint not orthogonal to chosen pair");
        nb.v = *a1;
        if (b.is_pair) {
            auto a2 = solve_integer(k, b.w);
            if (!a2)
                throw verify_error("symplectic extension: constraint not orthogonal to chosen pair");
            nb.w = *a2;
        }
        rest_in_k.push_back(std::move(nb));
    }

    IntMat gram_k = k.transposed() * gram * k;
    IntMat inner = symplectic_basis_with(gram_k, std::move(rest_in_k));

    IntMat out(dim, dim);
    for (int i = 0; i < dim; ++i) {
        out.at(i, 0) = v[i];
        out.at(i, 1) = w[i];
    }
    for (int j = 0; j < dim - 2; ++j) {
        std::vector<Int> col(inner.rows());
        for (int i = 0; i < inner.rows(); ++i)
            col[i] = inner.at(i, j);
        std::vector<Int> lifted = mat_vec(k, col);
        for (int i = 0; i < dim; ++i)
            out.at(i, j + 2) = lifted[i];
    }
    return out;
}

}  // namespace

IntMat symplectic_extension(int genus, const std::vector<ImageConstraint>& constraints)
{
    const int dim = 2 * genus;
    for (const auto& c : constraints) {
        if (c.source.dim() != static_cast<std::size_t>(dim) || c.target.dim() != static_cast<std::size_t>(dim))
            throw usage_error("symplectic extension: constraint dimension mismatch");
        if (!c.source.is_primitive())
            throw usage_error("symplectic extension: source class is not primitive");
        if (!c.target.is_primitive())
            throw usage_error("symplectic extension: target class is not primitive");
    }
    const std::size_t k = constraints.size();
    if (k > 16)
        throw usage_error("symplectic extension: too many constraints");

    // resolve signs of sign-tolerant targets so the two Gram matrices agree
    std::vector<std::size_t> tolerant;
    for (std::size_t i = 0; i < k; ++i)
        if (constraints[i].sign_tolerant)
            tolerant.push_back(i);
    std::vector<HomologyClass> src(k), tgt(k);
    for (std::size_t i = 0; i < k; ++i) {
        src[i] = constraints[i].source;
        tgt[i] = constraints[i].target;
    }
    bool found = false;
    for (std::size_t mask = 0; mask < (1u << tolerant.size()); ++mask) {
        std::vector<HomologyClass> cand = tgt;
        for (std::size_t b = 0; b < tolerant.size(); ++b)
            if (mask & (1u << b))
                cand[tolerant[b]] = -cand[tolerant[b]];
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            for (std::size_t j = i + 1; j < k && ok; ++j)
                if (pairing(src[i], src[j]) != pairing(cand[i], cand[j]))
                    ok = false;
        if (ok) {
            tgt = std::move(cand);
            found = true;
            break;
        }
    }
    if (!found)
        throw usage_error("symplectic extension: constraint pairings are inconsistent");

    // group into symplectic pairs (pairing +-1) and isotropic singles
    std::vector<Anchor> s_anchors, t_anchors;
    std::vector<bool> used(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        if (used[i])
            continue;
        used[i] = true;
        bool paired = false;
        for (std::size_t j = i + 1; j < k && !paired; ++j) {
            if (used[j])
                continue;
            Int p = pairing(src[i], src[j]);
            if (p == 1 || p == -1) {
                HomologyClass sj = p == 1 ? src[j] : -src[j];
                HomologyClass tj = p == 1 ? tgt[j] : -tgt[j];
                s_anchors.push_back({true, src[i].c, sj.c});
                t_anchors.push_back({true, tgt[i].c, tj.c});
                used[j] = true;
                paired = true;
            }
        }
        if (!paired) {
            s_anchors.push_back({false, src[i].c, {}});
            t_anchors.push_back({false, tgt[i].c, {}});
        }
    }

    IntMat j = symplectic_form(genus);
    IntMat bs = symplectic_basis_with(j, s_anchors);
    IntMat bt = symplectic_basis_with(j, t_anchors);
    IntMat m = bt * unimodular_inverse(bs);

    if (!is_symplectic(m, genus))
        throw verify_error("symplectic extension: result failed the symplectic check");
    for (std::size_t i = 0; i < k; ++i) {
        HomologyClass img = m * constraints[i].source;
        bool ok = constraints[i].sign_tolerant ? equal_up_to_sign(img, constraints[i].target)
                                               : img == constraints[i].target;
        if (!ok)
            throw verify_error("symplectic extension: result misses a constraint image");
    }
    return m;
}

}  // namespace lefschetz
