#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lefschetz/monodromy_io.hpp"
#include "lefschetz/pipelines.hpp"
#include "lefschetz/snf.hpp"

namespace py = pybind11;
using namespace lefschetz;

namespace {

py::dict report_dict(const SlopeReport& r)
{
    py::dict d;
    d["genus"] = r.genus;
    d["n"] = r.n.str();
    d["e"] = r.e.str();
    d["sigma"] = r.sigma.str();
    d["chi_h"] = r.chi_h.str();
    d["c1_sq"] = r.c1_sq.str();
    d["K2"] = r.k_sq.str();
    d["chi_f"] = r.chi_f.str();
    d["lambda"] = rat_string(r.lambda);
    d["lambda_dec"] = rat_decimal(r.lambda, 6);
    return d;
}

py::list step_list(const std::vector<StepReport>& steps)
{
    py::list out;
    for (const auto& s : steps) {
        py::dict d;
        d["i"] = s.index;
        d["r"] = s.r.str();
        d["n"] = s.n.str();
        d["sigma"] = s.sigma.str();
        d["report"] = report_dict(s.report);
        out.append(std::move(d));
    }
    return out;
}

PipelineMode mode_from(const std::string& mode)
{
    if (mode == "explicit")
        return PipelineMode::Explicit;
    if (mode == "ledger")
        return PipelineMode::Ledger;
    throw usage_error("mode must be 'explicit' or 'ledger'");
}

py::dict certificates_dict(const CertificateSet& c)
{
    py::dict d;
    d["homology_identity"] = c.homology_identity;
    d["full_chain_presence"] = c.full_chain_presence;
    d["h1_trivial"] = c.h1_trivial;
    d["simply_connected"] = c.simply_connected;
    d["minimal"] = c.minimal;
    d["slope_bounds"] = c.slope_bounds;
    d["word_certificates_computed"] = c.word_certificates_computed;
    return d;
}

IntMat mat_from_rows(const std::vector<std::vector<Int>>& rows)
{
    if (rows.empty())
        return IntMat(0, 0);
    IntMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw usage_error("matrix rows must have equal length");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
}

py::list mat_rows(const IntMat& m)
{
    py::list rows;
    for (int i = 0; i < m.rows(); ++i) {
        py::list row;
        for (int j = 0; j < m.cols(); ++j)
            row.append(m.at(i, j));
        rows.append(std::move(row));
    }
    return rows;
}

// thin handle over an immutable factorization
struct Word {
    Factorization w;

    static Word hyperelliptic(int g) { return {hyperelliptic_base(g)}; }

    std::size_t size() const { return w.size(); }
    int genus() const { return w.surface()->genus(); }
    py::dict ledger() const
    {
        py::dict d;
        d["n"] = w.ledger().n.str();
        d["sigma"] = w.ledger().sigma.str();
        d["is_relator"] = w.ledger().is_relator;
        d["is_fiber_sum"] = w.ledger().is_fiber_sum;
        d["base_name"] = w.ledger().base_name;
        return d;
    }
    std::vector<std::string> letters() const
    {
        std::vector<std::string> out;
        out.reserve(w.size());
        for (const auto& l : w.letters())
            out.push_back(to_string(l));
        return out;
    }
    py::dict slope() const { return report_dict(slope_report(w.ledger())); }
    bool verify() const { return verify_relator_homology(w); }
    std::vector<Int> h1_divisors() const { return h1_of_fiber_quotient(w); }
    std::vector<std::string> provenance() const { return w.provenance(); }

    Word hurwitz(std::size_t pos, const std::string& dir) const
    {
        if (dir != "left" && dir != "right")
            throw usage_error("direction must be 'left' or 'right'");
        return {hurwitz_move(w, pos, dir == "right" ? HurwitzDirection::Right : HurwitzDirection::Left)};
    }
    Word gather(const std::string& curve, std::size_t count) const { return {gather_right(w, curve, count)}; }
    Word self_fiber_sum() const { return {fiber_sum(w, w, identity_map())}; }
    py::tuple walk(const std::string& curve, const std::string& dir) const
    {
        if (dir != "down" && dir != "up")
            throw usage_error("direction must be 'down' or 'up'");
        WalkResult res = lantern_walk(w, curve, dir == "down" ? WalkDirection::Down : WalkDirection::Up);
        py::dict d;
        d["before"] = report_dict(res.before);
        d["after"] = report_dict(res.after);
        return py::make_tuple(Word{std::move(res.word)}, std::move(d));
    }
    std::string to_json() const { return write_monodromy(w); }
    static Word from_json(const std::string& text) { return {read_monodromy(text)}; }
};

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "exact monodromy-factorization calculator for Lefschetz fibrations";

    py::register_exception<usage_error>(m, "UsageError", PyExc_ValueError);
    py::register_exception<verify_error>(m, "VerifyError", PyExc_RuntimeError);
    py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);

    py::class_<Word>(m, "Word")
        .def_static("hyperelliptic", &Word::hyperelliptic, py::arg("genus"))
        .def_static("from_json", &Word::from_json, py::arg("text"))
        .def("__len__", &Word::size)
        .def_property_readonly("genus", &Word::genus)
        .def("ledger", &Word::ledger)
        .def("letters", &Word::letters)
        .def("slope", &Word::slope)
        .def("verify", &Word::verify)
        .def("h1_divisors", &Word::h1_divisors)
        .def("provenance", &Word::provenance)
        .def("hurwitz", &Word::hurwitz, py::arg("pos"), py::arg("direction"))
        .def("gather_right", &Word::gather, py::arg("curve"), py::arg("count"))
        .def("self_fiber_sum", &Word::self_fiber_sum)
        .def("lantern_walk", &Word::walk, py::arg("curve"), py::arg("direction"))
        .def("to_json", &Word::to_json);

    m.def(
        "base_report", [](int g) { return report_dict(slope_report(hyperelliptic_base(g).ledger())); },
        py::arg("genus"), "ledger of the hyperelliptic base fibration");

    m.def(
        "sequence",
        [](int g, int h, long long r, int n, const std::string& mode, std::size_t budget) {
            SequenceOptions opt;
            opt.h = h;
            opt.r = r;
            opt.steps = n;
            opt.mode = mode_from(mode);
            opt.budget = budget ? budget : default_letter_budget();
            return step_list(slope_sequence(hyperelliptic_base(g), opt).reports);
        },
        py::arg("genus"), py::arg("h"), py::arg("r") = 1, py::arg("n") = 0, py::arg("mode") = "ledger",
        py::arg("budget") = 0, "doubling sequence reports from the hyperelliptic base");

    m.def(
        "family",
        [](int g, int n, const std::string& mode, std::size_t budget) {
            FamilyResult fam =
                simply_connected_family(g, n, mode_from(mode), budget ? budget : default_letter_budget());
            py::dict d;
            d["report"] = report_dict(fam.report);
            d["certificates"] = certificates_dict(fam.certificates);
            d["steps"] = step_list(fam.steps);
            if (fam.word)
                d["word"] = Word{*fam.word};
            return d;
        },
        py::arg("genus"), py::arg("n"), py::arg("mode") = "ledger", py::arg("budget") = 0,
        "simply connected minimal family member with certificates");

    m.def(
        "closed_form",
        [](long long k0, long long chi0, long long r, int h, int n) {
            ClosedForm c = closed_form_invariants(k0, chi0, r, h, n);
            py::dict d;
            d["K2"] = c.k_sq.str();
            d["chi4"] = c.chi4.str();
            d["lambda"] = rat_string(c.lambda);
            return d;
        },
        py::arg("K2_0"), py::arg("chi_0"), py::arg("r"), py::arg("h"), py::arg("n"));

    m.def(
        "slope_limit", [](int h) { return rat_string(slope_limit(h)); }, py::arg("h"));

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<Int>>& rows) {
            SnfResult s = smith_normal_form(mat_from_rows(rows));
            py::dict d;
            d["U"] = mat_rows(s.u);
            d["D"] = mat_rows(s.d);
            d["V"] = mat_rows(s.v);
            return d;
        },
        py::arg("matrix"), "U, D, V with U*matrix*V = D diagonal, d_i | d_{i+1}");
}
