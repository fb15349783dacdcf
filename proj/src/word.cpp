#include "lefschetz/word.hpp"

#include <algorithm>

#include "lefschetz/snf.hpp"

namespace lefschetz {

Factorization Factorization::make(SurfacePtr surface, std::vector<CurvePtr> letters, InvariantLedger ledger,
                                  std::vector<std::string> provenance)
{
    if (!surface)
        throw usage_error("factorization needs a surface");
    if (ledger.genus != surface->genus())
        throw usage_error("ledger genus does not match the surface");
    if (ledger.n != BigInt(letters.size()))
        throw usage_error("ledger twist count does not match the letter count");
    Factorization w;
    w.surface_ = std::move(surface);
    w.letters_.reserve(letters.size());
    w.classes_.reserve(letters.size());
    for (auto& l : letters) {
        CurvePtr n = normalize_curve(*w.surface_, std::move(l));
        w.classes_.push_back(homology_of_curve(*w.surface_, n));
        w.letters_.push_back(std::move(n));
    }
    w.ledger_ = std::move(ledger);
    w.provenance_ = std::move(provenance);
    return w;
}

Factorization Factorization::raw(SurfacePtr surface, std::vector<CurvePtr> letters,
                                 std::vector<HomologyClass> classes, InvariantLedger ledger,
                                 std::vector<std::string> provenance)
{
    Factorization w;
    w.surface_ = std::move(surface);
    w.letters_ = std::move(letters);
    w.classes_ = std::move(classes);
    w.ledger_ = std::move(ledger);
    w.provenance_ = std::move(provenance);
    return w;
}

IntMat product_transvection_matrix(const Factorization& w)
{
    IntMat p = IntMat::identity(2 * w.surface()->genus());
    for (const auto& c : w.letter_classes())
        right_multiply_transvection(p, c);
    return p;
}

bool verify_relator_homology(const Factorization& w)
{
    return product_transvection_matrix(w).is_identity();
}

Factorization hurwitz_move(const Factorization& w, std::size_t pos, HurwitzDirection dir)
{
    if (w.size() < 2 || pos > w.size() - 2)
        throw usage_error("hurwitz move index out of range");
    const Surface& s = *w.surface();
    std::vector<CurvePtr> letters = w.letters();
    std::vector<HomologyClass> classes = w.letter_classes();
    const CurvePtr a = letters[pos];
    const CurvePtr b = letters[pos + 1];
    if (dir == HurwitzDirection::Right) {
        // (A, B) -> (B^A, A)
        letters[pos] = normalize_image_parts(s, twist(a), b);
        letters[pos + 1] = a;
        HomologyClass bc = classes[pos + 1];
        apply_transvection_power(bc, classes[pos], 1);
        classes[pos + 1] = classes[pos];
        classes[pos] = std::move(bc);
    } else {
        // (A, B) -> (B, A^{B^{-1}})
        letters[pos] = b;
        letters[pos + 1] = normalize_image_parts(s, power(twist(b), -1), a);
        HomologyClass ac = classes[pos];
        apply_transvection_power(ac, classes[pos + 1], -1);
        classes[pos] = classes[pos + 1];
        classes[pos + 1] = std::move(ac);
    }
    std::vector<std::string> prov = w.provenance();
    prov.push_back("hurwitz " + std::string(dir == HurwitzDirection::Right ? "right" : "left") + " at " +
                   std::to_string(pos));
    return Factorization::raw(w.surface(), std::move(letters), std::move(classes), w.ledger(), std::move(prov));
}

Factorization gather_right(const Factorization& w, const std::string& curve, std::size_t count)
{
    const Surface& s = *w.surface();
    const std::string name = s.canonical_name(curve);
    CurvePtr target = named_curve(s, name);

    std::vector<std::size_t> occurrences;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (equal(w.letters()[i], target))
            occurrences.push_back(i);
    if (occurrences.size() < count)
        throw usage_error("gather_right: word has " + std::to_string(occurrences.size()) + " literal " + name +
                          " letters, needs " + std::to_string(count));
    // the rightmost `count` occurrences move; everything they pass is
    // conjugated once per passing twist (C U = U^C C)
    std::size_t first_moved = occurrences[occurrences.size() - count];
    const MapPtr t = twist(target);
    const HomologyClass& axis = s.curve_class(name);

    std::vector<CurvePtr> letters;
    std::vector<HomologyClass> classes;
    letters.reserve(w.size());
    classes.reserve(w.size());
    std::size_t passed = 0;  // gathered letters seen so far
    std::size_t moves = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i >= first_moved && equal(w.letters()[i], target) && passed < count) {
            ++passed;
            continue;
        }
        CurvePtr l = w.letters()[i];
        HomologyClass c = w.letter_classes()[i];
        if (passed > 0) {
            l = normalize_image_parts(s, passed == 1 ? t : power(t, static_cast<Int>(passed)), l);
            apply_transvection_power(c, axis, static_cast<Int>(passed));
            moves += passed;
        }
        letters.push_back(std::move(l));
        classes.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < count; ++i) {
        letters.push_back(target);
        classes.push_back(axis);
    }
    std::vector<std::string> prov = w.provenance();
    prov.push_back("gather_right " + name + " count=" + std::to_string(count) + " (" + std::to_string(moves) +
                   " hurwitz moves)");
    return Factorization::raw(w.surface(), std::move(letters), std::move(classes), w.ledger(), std::move(prov));
}

Factorization global_conjugate(const Factorization& w, const MapPtr& m)
{
    const Surface& s = *w.surface();
    MapPtr mn = normalize_map(s, m);
    std::vector<std::string> prov = w.provenance();
    prov.push_back("global_conjugate by " + to_string(mn));
    if (mn->kind == MapExpr::Kind::Compose && mn->parts.empty())
        return Factorization::raw(w.surface(), w.letters(), w.letter_classes(), w.ledger(), std::move(prov));
    IntMat mat = matrix_of_map(s, mn);
    std::vector<CurvePtr> letters;
    std::vector<HomologyClass> classes;
    letters.reserve(w.size());
    classes.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        letters.push_back(normalize_image_parts(s, mn, w.letters()[i]));
        classes.push_back(mat * w.letter_classes()[i]);
    }
    return Factorization::raw(w.surface(), std::move(letters), std::move(classes), w.ledger(), std::move(prov));
}

Factorization move_letter_right(const Factorization& w, std::size_t from, std::size_t to)
{
    if (from > to || to >= w.size())
        throw usage_error("move_letter_right: bad range");
    if (from == to)
        return w;
    const Surface& s = *w.surface();
    std::vector<CurvePtr> letters = w.letters();
    std::vector<HomologyClass> classes = w.letter_classes();
    CurvePtr traveler = letters[from];
    HomologyClass traveler_class = classes[from];
    MapPtr t = twist(traveler);
    for (std::size_t i = from; i < to; ++i) {
        letters[i] = normalize_image_parts(s, t, letters[i + 1]);
        classes[i] = classes[i + 1];
        apply_transvection_power(classes[i], traveler_class, 1);
    }
    letters[to] = std::move(traveler);
    classes[to] = std::move(traveler_class);
    std::vector<std::string> prov = w.provenance();
    prov.push_back("move_letter_right " + std::to_string(from) + "->" + std::to_string(to) + " (" +
                   std::to_string(to - from) + " hurwitz moves)");
    return Factorization::raw(w.surface(), std::move(letters), std::move(classes), w.ledger(), std::move(prov));
}

Factorization commute_block_right(const Factorization& w, std::size_t start, std::size_t len, std::size_t past)
{
    if (len == 0 || past == 0)
        return w;
    if (start + len + past > w.size())
        throw usage_error("commute_block_right: bad range");
    const Surface& s = *w.surface();
    bool uniform = true;
    for (std::size_t i = 1; i < len && uniform; ++i)
        uniform = equal(w.letters()[start], w.letters()[start + i]);

    std::vector<CurvePtr> letters = w.letters();
    std::vector<HomologyClass> classes = w.letter_classes();
    std::vector<CurvePtr> block(letters.begin() + start, letters.begin() + start + len);
    std::vector<HomologyClass> block_classes(classes.begin() + start, classes.begin() + start + len);

    MapPtr uniform_wrap;
    if (uniform)
        uniform_wrap = len == 1 ? twist(block[0]) : power(twist(block[0]), static_cast<Int>(len));
    for (std::size_t i = 0; i < past; ++i) {
        std::size_t src = start + len + i;
        CurvePtr l = letters[src];
        HomologyClass c = classes[src];
        if (uniform) {
            l = normalize_image_parts(s, uniform_wrap, l);
            apply_transvection_power(c, block_classes[0], static_cast<Int>(len));
        } else {
            for (std::size_t j = len; j-- > 0;) {
                l = normalize_image_parts(s, twist(block[j]), l);
                apply_transvection_power(c, block_classes[j], 1);
            }
        }
        letters[start + i] = std::move(l);
        classes[start + i] = std::move(c);
    }
    for (std::size_t j = 0; j < len; ++j) {
        letters[start + past + j] = block[j];
        classes[start + past + j] = block_classes[j];
    }
    std::vector<std::string> prov = w.provenance();
    prov.push_back("commute_block_right [" + std::to_string(start) + "," + std::to_string(start + len) +
                   ") past " + std::to_string(past) + " (" + std::to_string(len * past) + " hurwitz moves)");
    return Factorization::raw(w.surface(), std::move(letters), std::move(classes), w.ledger(), std::move(prov));
}

Factorization interleave_tail(const Factorization& w, std::size_t r)
{
    if (r <= 1)
        return w;
    if (2 * r > w.size())
        throw usage_error("interleave_tail: word too short");
    const Surface& s = *w.surface();
    std::size_t base = w.size() - 2 * r;
    const CurvePtr& d = w.letters()[base];
    const CurvePtr& e = w.letters()[base + r];
    for (std::size_t i = 0; i < r; ++i)
        if (!equal(w.letters()[base + i], d) || !equal(w.letters()[base + r + i], e))
            throw usage_error("interleave_tail: tail is not of the form D^r E^r");
    if (d->kind != CurveExpr::Kind::Named || e->kind != CurveExpr::Kind::Named ||
        !s.declared_disjoint(d->name, e->name))
        throw usage_error("interleave_tail: tail letters are not declared disjoint");

    std::vector<CurvePtr> letters = w.letters();
    std::vector<HomologyClass> classes = w.letter_classes();
    HomologyClass dc = w.letter_classes()[base];
    HomologyClass ec = w.letter_classes()[base + r];
    for (std::size_t i = 0; i < r; ++i) {
        letters[base + 2 * i] = d;
        classes[base + 2 * i] = dc;
        letters[base + 2 * i + 1] = e;
        classes[base + 2 * i + 1] = ec;
    }
    std::vector<std::string> prov = w.provenance();
    prov.push_back("interleave tail to (DE)^" + std::to_string(r) + " (" + std::to_string(r * (r - 1) / 2) +
                   " commuting hurwitz moves)");
    return Factorization::raw(w.surface(), std::move(letters), std::move(classes), w.ledger(), std::move(prov));
}

Factorization fiber_sum(const Factorization& w1, const Factorization& w2, const MapPtr& psi)
{
    if (w1.surface()->genus() != w2.surface()->genus())
        throw usage_error("fiber sum requires equal genus");
    if (!w1.ledger().is_relator || !w2.ledger().is_relator)
        throw usage_error("fiber sum requires relator factorizations");
    Factorization conj = global_conjugate(w2, psi);
    std::vector<CurvePtr> letters = w1.letters();
    letters.insert(letters.end(), conj.letters().begin(), conj.letters().end());
    std::vector<HomologyClass> classes = w1.letter_classes();
    classes.insert(classes.end(), conj.letter_classes().begin(), conj.letter_classes().end());
    InvariantLedger ledger;
    ledger.genus = w1.ledger().genus;
    ledger.n = w1.ledger().n + w2.ledger().n;
    ledger.sigma = w1.ledger().sigma + w2.ledger().sigma;
    ledger.is_relator = true;
    ledger.is_fiber_sum = true;
    ledger.base_name = w1.ledger().base_name;
    std::vector<std::string> prov = w1.provenance();
    prov.insert(prov.end(), conj.provenance().begin(), conj.provenance().end());
    prov.push_back("fiber_sum: n=" + ledger.n.str() + " sigma=" + ledger.sigma.str());
    return Factorization::raw(w1.surface(), std::move(letters), std::move(classes), std::move(ledger),
                              std::move(prov));
}

namespace {

IntMat segment_product(const Surface& s, const std::vector<HomologyClass>& classes)
{
    IntMat p = IntMat::identity(2 * s.genus());
    for (const auto& c : classes)
        right_multiply_transvection(p, c);
    return p;
}

}  // namespace

Factorization substitute(const Factorization& w, std::size_t pos, const RelatorTemplate& t, SubstDirection dir,
                         std::size_t times)
{
    const Surface& s = *w.surface();
    const std::vector<CurvePtr>& pattern = dir == SubstDirection::Forward ? t.lhs : t.rhs;
    const std::vector<CurvePtr>& repl = dir == SubstDirection::Forward ? t.rhs : t.lhs;
    const std::size_t plen = pattern.size();
    const std::size_t span = plen * times;
    if (times == 0)
        throw usage_error("substitute: times must be positive");
    if (pos + span > w.size())
        throw usage_error("substitute: pattern does not fit at position " + std::to_string(pos));
    for (std::size_t r = 0; r < times; ++r)
        for (std::size_t i = 0; i < plen; ++i)
            if (!equal(w.letters()[pos + r * plen + i], pattern[i]))
                throw verify_error("substitute: pattern mismatch at position " +
                                   std::to_string(pos + r * plen + i) + " (expected " + to_string(pattern[i]) +
                                   ", found " + to_string(w.letters()[pos + r * plen + i]) + ")");

    std::vector<HomologyClass> repl_classes;
    repl_classes.reserve(repl.size());
    for (const auto& l : repl)
        repl_classes.push_back(homology_of_curve(s, l));

    // the traded segments must act identically on homology
    std::vector<HomologyClass> removed(w.letter_classes().begin() + pos,
                                       w.letter_classes().begin() + pos + span);
    std::vector<HomologyClass> inserted;
    inserted.reserve(repl.size() * times);
    for (std::size_t r = 0; r < times; ++r)
        inserted.insert(inserted.end(), repl_classes.begin(), repl_classes.end());
    if (!(segment_product(s, removed) == segment_product(s, inserted)))
        throw verify_error("substitute: replacement changes the homology action");

    std::vector<CurvePtr> letters(w.letters().begin(), w.letters().begin() + pos);
    std::vector<HomologyClass> classes(w.letter_classes().begin(), w.letter_classes().begin() + pos);
    for (std::size_t r = 0; r < times; ++r) {
        letters.insert(letters.end(), repl.begin(), repl.end());
        classes.insert(classes.end(), repl_classes.begin(), repl_classes.end());
    }
    letters.insert(letters.end(), w.letters().begin() + pos + span, w.letters().end());
    classes.insert(classes.end(), w.letter_classes().begin() + pos + span, w.letter_classes().end());

    Int sign = dir == SubstDirection::Forward ? 1 : -1;
    InvariantLedger ledger = w.ledger();
    ledger.n += BigInt(sign) * BigInt(t.delta_n) * BigInt(times);
    ledger.sigma += BigInt(sign) * BigInt(t.delta_sigma) * BigInt(times);
    if (ledger.n != BigInt(letters.size()))
        throw error("substitute: ledger/letter count drift");

    std::vector<std::string> prov = w.provenance();
    prov.push_back("substitute " + t.name + (t.h ? " h=" + std::to_string(t.h) : "") +
                   (dir == SubstDirection::Forward ? " forward" : " inverse") + " at " + std::to_string(pos) +
                   (times > 1 ? " x" + std::to_string(times) : ""));
    return Factorization::raw(w.surface(), std::move(letters), std::move(classes), std::move(ledger),
                              std::move(prov));
}

std::optional<std::size_t> find_pattern(const Factorization& w, const std::vector<CurvePtr>& pattern,
                                        std::size_t from)
{
    if (pattern.empty() || pattern.size() > w.size())
        return std::nullopt;
    for (std::size_t i = from; i + pattern.size() <= w.size(); ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < pattern.size() && ok; ++j)
            ok = equal(w.letters()[i + j], pattern[j]);
        if (ok)
            return i;
    }
    return std::nullopt;
}

RelatorTemplate relator_library(const Surface& s, const std::string& name, int h)
{
    const int g = s.genus();
    RelatorTemplate t;
    t.name = name;
    t.h = h;
    auto named = [&](const std::string& n) { return named_curve(s, n); };
    auto chain = [&](int len) {
        std::vector<CurvePtr> c;
        for (int i = 1; i <= len; ++i)
            c.push_back(named("c" + std::to_string(i)));
        return c;
    };
    if (name == "lantern") {
        if (g < 3)
            throw usage_error("lantern relator needs genus >= 3");
        t.lhs = {named("x"), named("y"), named("z")};
        t.rhs = {named("a1"), named("a2"), named("a3"), named("a4")};
        t.delta_n = 1;
        t.delta_sigma = -1;
    } else if (name == "odd_chain") {
        if (h < 1 || h > g - 1)
            throw usage_error("odd chain parameter h must satisfy 1 <= h <= g-1");
        t.lhs = {named("d" + std::to_string(h + 1)), named("e" + std::to_string(h + 1))};
        std::vector<CurvePtr> block = chain(2 * h + 1);
        for (int rep = 0; rep < 2 * h + 2; ++rep)
            t.rhs.insert(t.rhs.end(), block.begin(), block.end());
        t.delta_n = static_cast<Int>(4) * h * h + 6 * h;
        t.delta_sigma = static_cast<Int>(-2) * h * (h + 2);
    } else if (name == "even_chain") {
        if (h < 1 || h > g - 1)
            throw usage_error("even chain parameter h must satisfy 1 <= h <= g-1");
        t.lhs = {named("s" + std::to_string(h))};
        std::vector<CurvePtr> block = chain(2 * h);
        for (int rep = 0; rep < 4 * h + 2; ++rep)
            t.rhs.insert(t.rhs.end(), block.begin(), block.end());
        t.delta_n = static_cast<Int>(2) * h * (4 * h + 2) - 1;
        t.delta_sigma = static_cast<Int>(-4) * h * (h + 1) + 1;
    } else if (name == "hyperelliptic") {
        std::vector<CurvePtr> half;
        for (int i = 1; i <= 2 * g; ++i)
            half.push_back(named("c" + std::to_string(i)));
        half.push_back(named("c" + std::to_string(2 * g + 1)));
        half.push_back(named("c" + std::to_string(2 * g + 1)));
        for (int i = 2 * g; i >= 1; --i)
            half.push_back(named("c" + std::to_string(i)));
        t.rhs = half;
        t.rhs.insert(t.rhs.end(), half.begin(), half.end());
        t.delta_n = static_cast<Int>(8) * g + 4;
        t.delta_sigma = static_cast<Int>(-4) * (g + 1);
    } else {
        throw usage_error("unknown relator template: " + name);
    }
    return t;
}

bool template_acts_trivially(const Surface& s, const RelatorTemplate& t)
{
    auto side_product = [&](const std::vector<CurvePtr>& side) {
        IntMat p = IntMat::identity(2 * s.genus());
        for (const auto& l : side)
            right_multiply_transvection(p, homology_of_curve(s, l));
        return p;
    };
    return side_product(t.lhs) == side_product(t.rhs);
}

std::vector<Int> h1_of_fiber_quotient(const Factorization& w)
{
    const int dim = 2 * w.surface()->genus();
    IntMat m(dim, static_cast<int>(w.size()));
    for (std::size_t j = 0; j < w.size(); ++j)
        for (int i = 0; i < dim; ++i)
            m.at(i, static_cast<int>(j)) = w.letter_classes()[j].c[i];
    return cokernel_divisors(m);
}

Factorization with_surface(const Factorization& w, SurfacePtr s)
{
    if (!s || s->genus() != w.surface()->genus())
        throw usage_error("with_surface: genus mismatch");
    return Factorization::raw(std::move(s), w.letters(), w.letter_classes(), w.ledger(), w.provenance());
}

}  // namespace lefschetz
