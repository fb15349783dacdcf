#include "lefschetz/pipelines.hpp"

#include <cstdlib>
#include <limits>
#include <set>

namespace lefschetz {

namespace {

std::size_t to_size(const BigInt& v, const char* what)
{
    if (v < 0 || v > BigInt(std::numeric_limits<std::int64_t>::max()))
        throw usage_error(std::string(what) + " out of range");
    return static_cast<std::size_t>(v.convert_to<std::int64_t>());
}

std::string join(const std::vector<std::string>& parts)
{
    std::string s;
    for (const auto& p : parts) {
        if (!s.empty())
            s += "; ";
        s += p;
    }
    return s;
}

}  // namespace

std::size_t default_letter_budget()
{
    if (const char* env = std::getenv("LEFSCHETZ_MAX_LETTERS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw usage_error("LEFSCHETZ_MAX_LETTERS must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return kDefaultLetterBudget;
}

Factorization hyperelliptic_base(SurfacePtr surface)
{
    const int g = surface->genus();
    RelatorTemplate t = relator_library(*surface, "hyperelliptic");
    InvariantLedger ledger;
    ledger.genus = g;
    ledger.n = 8 * g + 4;
    ledger.sigma = -4 * (g + 1);
    ledger.is_relator = true;
    ledger.base_name = "hyperelliptic";
    Factorization base = Factorization::make(std::move(surface), t.rhs, std::move(ledger),
                                             {"hyperelliptic_base g=" + std::to_string(g)});
    if (!verify_relator_homology(base))
        throw verify_error("hyperelliptic relator fails the homology identity");
    return base;
}

Factorization hyperelliptic_base(int genus)
{
    return hyperelliptic_base(Surface::make(genus));
}

ClosedForm closed_form_invariants(const BigInt& k0_sq, const BigInt& chi0, const BigInt& r, int h, int n)
{
    if (chi0 < 1 || r < 1 || h < 1 || n < 0)
        throw usage_error("closed_form_invariants: bad parameters");
    BigInt pow2 = BigInt(1) << n;
    BigInt hp = 1;
    for (int i = 0; i < n; ++i)
        hp *= (h + 1);
    ClosedForm out;
    out.k_sq = pow2 * k0_sq + pow2 * r * (hp - 1) * h;
    out.chi4 = pow2 * 4 * chi0 + pow2 * r * (hp - 1) * (h + 1);
    out.lambda = make_rat(4 * out.k_sq, out.chi4);
    return out;
}

Rat slope_limit(int h)
{
    if (h < 1)
        throw usage_error("slope_limit: h must be positive");
    return make_rat(4 * h, h + 1);
}

PipelineState sequence_step(const PipelineState& st, const std::string& phi1, const std::string& phi2)
{
    const int h = st.h;
    const Int delta_n = static_cast<Int>(4) * h * h + 6 * h;
    const Int delta_sigma = static_cast<Int>(-2) * h * (h + 2);

    PipelineState next = st;
    next.index = st.index + 1;
    next.r = 2 * (h + 1) * st.r;
    next.ledger.n = 2 * st.ledger.n + st.r * delta_n;
    next.ledger.sigma = 2 * st.ledger.sigma + st.r * delta_sigma;
    next.ledger.is_relator = true;
    next.ledger.is_fiber_sum = true;

    if (st.mode == PipelineMode::Ledger || !st.word) {
        next.word.reset();
        return next;
    }

    const Factorization& w = *st.word;
    const Surface& s = *w.surface();
    const std::size_t r = to_size(st.r, "multiplicity r");
    const std::size_t n = w.size();
    const std::size_t projected = 2 * n + r * static_cast<std::size_t>(delta_n);
    if (projected > st.budget)
        throw budget_error("explicit step needs " + std::to_string(projected) + " letters, budget is " +
                           std::to_string(st.budget));

    const std::string dname = "d" + std::to_string(h + 1);
    const std::string ename = s.canonical_name("e" + std::to_string(h + 1));
    CurvePtr d_letter = named_curve(s, dname);
    CurvePtr e_letter = named_curve(s, ename);

    Factorization g0 = gather_right(w, st.curve, r);
    Factorization a = global_conjugate(g0, declared_map(s, phi1));
    for (std::size_t i = n - r; i < n; ++i)
        if (!equal(a.letters()[i], d_letter))
            throw verify_error("step: " + phi1 + " does not carry the designated curve to " + dname);
    Factorization b = fiber_sum(a, g0, declared_map(s, phi2));
    for (std::size_t i = 2 * n - r; i < 2 * n; ++i)
        if (!equal(b.letters()[i], e_letter))
            throw verify_error("step: " + phi2 + " does not carry the designated curve to " + ename);

    const std::size_t m = n - r;
    Factorization c = commute_block_right(b, m, r, m);
    Factorization d = interleave_tail(c, r);
    RelatorTemplate tmpl = relator_library(s, "odd_chain", h);
    Factorization e = substitute(d, 2 * m, tmpl, SubstDirection::Forward, r);

    // literal-count law: the new word holds exactly (2h+2) r_i designated twists
    CurvePtr designated = named_curve(s, st.curve);
    std::size_t literal = 0;
    for (const auto& l : e.letters())
        if (equal(l, designated))
            ++literal;
    if (BigInt(literal) != next.r)
        throw verify_error("step: literal twist count " + std::to_string(literal) + " != expected " +
                           next.r.str());
    if (e.ledger().n != next.ledger.n || e.ledger().sigma != next.ledger.sigma)
        throw verify_error("step: word ledger disagrees with the recurrence");

    next.word = std::move(e);
    return next;
}

SequenceResult slope_sequence(const Factorization& base, const SequenceOptions& opt)
{
    const int g = base.surface()->genus();
    if (opt.h < 1 || opt.h > g - 1)
        throw usage_error("slope sequence: h must satisfy 1 <= h <= g-1");
    if (opt.r < 1)
        throw usage_error("slope sequence: r must be positive");
    if (opt.steps < 0)
        throw usage_error("slope sequence: n must be nonnegative");
    if (!base.ledger().is_relator)
        throw usage_error("slope sequence: base must be a relator");
    const std::string curve = base.surface()->canonical_name(opt.curve);
    const HomologyClass& curve_class = base.surface()->curve_class(curve);
    if (curve_class.is_zero() || !curve_class.is_primitive())
        throw usage_error("slope sequence: designated curve must be nonseparating");

    SurfacePtr s = base.surface();
    Factorization work = base;
    std::string phi1 = opt.phi1, phi2 = opt.phi2;
    if (phi1.empty() || phi2.empty()) {
        const std::string dname = "d" + std::to_string(opt.h + 1);
        const std::string ename = s->canonical_name("e" + std::to_string(opt.h + 1));
        IntMat m1 = symplectic_extension(g, {{curve_class, s->curve_class(dname), true}});
        IntMat m2 = symplectic_extension(g, {{curve_class, s->curve_class(ename), true}});
        s = s->with_declared({"phi1", {{curve, dname}}, std::move(m1)});
        s = s->with_declared({"phi2", {{curve, ename}}, std::move(m2)});
        phi1 = "phi1";
        phi2 = "phi2";
        work = with_surface(base, s);
    }
    for (const std::string& name : {phi1, phi2}) {
        ConsistencyReport rep = check_declared_consistency(*s, s->declared(name));
        if (!rep.pass)
            throw verify_error("slope sequence: declared map inconsistent: " + join(rep.failures));
    }

    if (opt.mode == PipelineMode::Explicit) {
        std::size_t literal = 0;
        CurvePtr designated = named_curve(*s, curve);
        for (const auto& l : work.letters())
            if (equal(l, designated))
                ++literal;
        if (BigInt(literal) < opt.r)
            throw usage_error("slope sequence: base has " + std::to_string(literal) + " literal twists about " +
                              curve + ", needs " + opt.r.str());
    }

    PipelineState st;
    st.word = opt.mode == PipelineMode::Explicit ? std::optional<Factorization>(work) : std::nullopt;
    st.ledger = work.ledger();
    st.curve = curve;
    st.r = opt.r;
    st.h = opt.h;
    st.mode = opt.mode;
    st.budget = opt.budget;

    SlopeReport base_report = slope_report(st.ledger);
    SequenceResult out;
    out.reports.push_back({0, st.r, st.ledger.n, st.ledger.sigma, base_report});
    for (int i = 1; i <= opt.steps; ++i) {
        st = sequence_step(st, phi1, phi2);
        SlopeReport rep = slope_report(st.ledger);
        ClosedForm cf = closed_form_invariants(base_report.k_sq, base_report.chi_f, opt.r, opt.h, i);
        if (cf.k_sq != rep.k_sq || cf.chi4 != 4 * rep.chi_f || cf.lambda != rep.lambda)
            throw verify_error("slope sequence: step " + std::to_string(i) +
                               " ledger disagrees with the closed forms");
        if (st.word && !verify_relator_homology(*st.word))
            throw verify_error("slope sequence: step " + std::to_string(i) + " word fails the homology identity");
        out.reports.push_back({i, st.r, st.ledger.n, st.ledger.sigma, rep});
    }
    if (st.word)
        out.final_word = std::move(*st.word);
    return out;
}

FamilyResult simply_connected_family(int genus, int steps, PipelineMode mode, std::size_t budget)
{
    if (genus < 3)
        throw usage_error("the family needs genus >= 3");
    if (steps < 0)
        throw usage_error("the family needs n >= 0");
    SurfacePtr s0 = Surface::make(genus);
    const Surface& s_ref = *s0;

    // phi1 = U D_2 C_1 U and phi2 = U E_2 C_1 U (rightmost applied first),
    // declared with their curve-fixing axioms
    MapPtr tu = twist(named_curve(s_ref, "u"));
    MapPtr tc1 = twist(named_curve(s_ref, "c1"));
    IntMat m1 = matrix_of_map(s_ref, compose({tu, twist(named_curve(s_ref, "d2")), tc1, tu}));
    IntMat m2 = matrix_of_map(s_ref, compose({tu, twist(named_curve(s_ref, "e2")), tc1, tu}));
    std::map<std::string, std::string> ax1{{"c1", "d2"}, {"c3", "c3"}};
    std::map<std::string, std::string> ax2{{"c1", "e2"}, {"c3", "c3"}};
    for (int j = 6; j <= 2 * genus + 1; ++j) {
        std::string cj = "c" + std::to_string(j);
        ax1[cj] = cj;
        ax2[cj] = cj;
    }
    IntMat mpsi = symplectic_extension(
        genus, {{s_ref.curve_class("c1"), s_ref.curve_class("c4"), true},
                {s_ref.curve_class("c2"), s_ref.curve_class("c5"), true}});
    SurfacePtr s = s0->with_declared({"phi1", std::move(ax1), std::move(m1)})
                       ->with_declared({"phi2", std::move(ax2), std::move(m2)})
                       ->with_declared({"psi", {{"c1", "c4"}, {"c2", "c5"}}, std::move(mpsi)});
    for (const char* name : {"phi1", "phi2", "psi"}) {
        ConsistencyReport rep = check_declared_consistency(*s, s->declared(name));
        if (!rep.pass)
            throw verify_error("family: declared map inconsistent: " + join(rep.failures));
    }

    Factorization base = with_surface(hyperelliptic_base(s0), s);
    SequenceOptions opt;
    opt.curve = "c1";
    opt.h = 1;
    opt.r = 1;
    opt.steps = steps;
    opt.mode = mode;
    opt.budget = budget;
    opt.phi1 = "phi1";
    opt.phi2 = "phi2";
    SequenceResult seq = slope_sequence(base, opt);

    FamilyResult out;
    out.steps = seq.reports;
    CertificateSet& certs = out.certificates;

    if (mode == PipelineMode::Explicit) {
        const Factorization& wn = *seq.final_word;
        if (2 * wn.size() > budget)
            throw budget_error("family fiber sum needs " + std::to_string(2 * wn.size()) +
                               " letters, budget is " + std::to_string(budget));
        Factorization f = fiber_sum(wn, wn, declared_map(*s, "psi"));
        certs.word_certificates_computed = true;
        certs.homology_identity = verify_relator_homology(f);
        if (!certs.homology_identity)
            certs.failures.push_back("homology identity fails");
        std::set<std::string> present;
        for (const auto& l : f.letters())
            if (l->kind == CurveExpr::Kind::Named)
                present.insert(l->name);
        certs.full_chain_presence = true;
        for (int j = 1; j <= 2 * genus + 1; ++j) {
            std::string cj = s->canonical_name("c" + std::to_string(j));
            if (!present.count(cj)) {
                certs.full_chain_presence = false;
                certs.failures.push_back("vanishing cycles miss " + cj);
            }
        }
        certs.h1_trivial = h1_of_fiber_quotient(f).empty();
        if (!certs.h1_trivial)
            certs.failures.push_back("H1 quotient is nontrivial");
        certs.simply_connected = certs.full_chain_presence && certs.h1_trivial;
        certs.minimal = f.ledger().is_fiber_sum;
        out.report = slope_report(f.ledger());
        out.word = std::move(f);
    } else {
        const StepReport& last = seq.reports.back();
        InvariantLedger ledger;
        ledger.genus = genus;
        ledger.n = 2 * last.n;
        ledger.sigma = 2 * last.sigma;
        ledger.is_relator = true;
        ledger.is_fiber_sum = true;
        ledger.base_name = "hyperelliptic";
        out.report = slope_report(ledger);
        certs.minimal = true;
    }
    if (!certs.minimal)
        certs.failures.push_back("minimality flag is not set");

    Rat low(2);
    Rat high = Rat(2) + make_rat(4 * genus - 8, BigInt(1) << steps);
    certs.slope_bounds = out.report.lambda > low && out.report.lambda < high;
    if (!certs.slope_bounds)
        certs.failures.push_back("slope " + rat_string(out.report.lambda) + " outside (2, " + rat_string(high) +
                                 ")");
    if (out.report.lambda != seq.reports.back().report.lambda)
        certs.failures.push_back("fiber sum changed the slope");

    if (!certs.all_pass())
        throw verify_error("family certificates failed: " + join(certs.failures));
    return out;
}

WalkResult lantern_walk(const Factorization& w, const std::string& curve, WalkDirection dir)
{
    const Surface& s_in = *w.surface();
    const int g = s_in.genus();
    if (!w.ledger().is_relator)
        throw usage_error("lantern walk: input must be a relator");
    const std::string cn = s_in.canonical_name(curve);
    const HomologyClass& cls = s_in.curve_class(cn);
    if (cls.is_zero() || !cls.is_primitive())
        throw usage_error("lantern walk: designated curve must be nonseparating");

    CurvePtr designated = named_curve(s_in, cn);
    bool has_literal = false;
    for (const auto& l : w.letters())
        if (equal(l, designated)) {
            has_literal = true;
            break;
        }
    if (!has_literal)
        throw usage_error("lantern walk: word has no literal twist about " + cn);

    const std::vector<std::string> targets = dir == WalkDirection::Down
                                                 ? std::vector<std::string>{"x", "y", "z"}
                                                 : std::vector<std::string>{"a1", "a2", "a3", "a4"};
    const std::size_t copies = targets.size();

    SurfacePtr s = w.surface();
    std::vector<std::string> map_names;
    for (std::size_t i = 0; i < copies; ++i) {
        IntMat m = symplectic_extension(g, {{cls, s->curve_class(targets[i]), true}});
        std::string name = "walk" + std::to_string(i + 1);
        s = s->with_declared({name, {{cn, targets[i]}}, std::move(m)});
        map_names.push_back(std::move(name));
    }
    for (const auto& name : map_names) {
        ConsistencyReport rep = check_declared_consistency(*s, s->declared(name));
        if (!rep.pass)
            throw verify_error("lantern walk: declared map inconsistent: " + join(rep.failures));
    }

    Factorization base = with_surface(w, s);
    SlopeReport before = slope_report(base.ledger());

    Factorization acc = global_conjugate(base, declared_map(*s, map_names[0]));
    for (std::size_t i = 1; i < copies; ++i)
        acc = fiber_sum(acc, base, declared_map(*s, map_names[i]));
    if (slope_report(acc.ledger()).lambda != before.lambda)
        throw verify_error("lantern walk: fiber sum changed the slope");

    const std::size_t n0 = base.size();
    const std::size_t total = acc.size();
    for (std::size_t j = copies; j-- > 0;) {
        // last literal target letter inside copy j
        CurvePtr want = named_curve(*s, targets[j]);
        std::size_t lo = j * n0, hi = (j + 1) * n0;
        std::size_t pos = hi;
        for (std::size_t i = hi; i-- > lo;)
            if (equal(acc.letters()[i], want)) {
                pos = i;
                break;
            }
        if (pos == hi)
            throw verify_error("lantern walk: conjugated copy lost its " + targets[j] + " twist");
        acc = move_letter_right(acc, pos, total - (copies - j));
    }

    RelatorTemplate lantern = relator_library(*s, "lantern");
    Factorization result = substitute(acc, total - copies, lantern,
                                      dir == WalkDirection::Down ? SubstDirection::Forward
                                                                 : SubstDirection::Inverse);
    SlopeReport after = slope_report(result.ledger());
    if (dir == WalkDirection::Down && !(after.lambda < before.lambda))
        throw verify_error("lantern walk down did not decrease the slope");
    if (dir == WalkDirection::Up && !(after.lambda > before.lambda))
        throw verify_error("lantern walk up did not increase the slope");
    return {std::move(result), std::move(before), std::move(after)};
}

}  // namespace lefschetz
