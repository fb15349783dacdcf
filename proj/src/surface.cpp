#include "lefschetz/surface.hpp"

#include <algorithm>
#include <unordered_map>

#include "lefschetz/snf.hpp"

namespace lefschetz {

namespace {

std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b)
{
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::size_t hash_mix(std::size_t h, std::size_t v)
{
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::size_t hash_str(const std::string& s)
{
    return std::hash<std::string>{}(s);
}

}  // namespace

std::shared_ptr<const Surface> Surface::make(int genus)
{
    if (genus < 2)
        throw usage_error("genus must be at least 2");
    auto s = std::shared_ptr<Surface>(new Surface());
    s->genus_ = genus;
    const int g = genus;

    auto& t = s->classes_;
    t["c1"] = basis_y(g, 1);
    for (int i = 1; i <= g; ++i)
        t["c" + std::to_string(2 * i)] = basis_x(g, i);
    for (int i = 1; i <= g - 1; ++i)
        t["c" + std::to_string(2 * i + 1)] = basis_y(g, i + 1) - basis_y(g, i);
    t["c" + std::to_string(2 * g + 1)] = -basis_y(g, g);
    for (int i = 1; i <= g; ++i) {
        t["d" + std::to_string(i)] = basis_y(g, i);
        t["e" + std::to_string(i)] = -basis_y(g, i);
    }
    t["u"] = basis_x(g, 1) + basis_x(g, 2);
    if (g >= 3) {
        // lantern configuration: a1 a2 a3 a4 bound the 4-holed sphere
        // carrying x, y, z
        t["a1"] = basis_x(g, 1);
        t["a2"] = basis_x(g, 2);
        t["a3"] = basis_x(g, 3);
        t["a4"] = -(basis_x(g, 1) + basis_x(g, 2) + basis_x(g, 3));
        t["x"] = basis_x(g, 1) + basis_x(g, 2);
        t["y"] = basis_x(g, 2) + basis_x(g, 3);
        t["z"] = basis_x(g, 1) + basis_x(g, 3);
    }
    // boundary curves of even-subchain neighborhoods; separating, class zero
    for (int h = 1; h <= g - 1; ++h)
        t["s" + std::to_string(h)] = zero_class(g);

    // the identification e_g == c_{2g+1} is kept as an alias; drop the
    // duplicate key so every stored curve has one canonical name
    t.erase("e" + std::to_string(g));

    auto add = [&](const std::string& a, const std::string& b) {
        s->disjoint_.insert(ordered(s->canonical_name(a), s->canonical_name(b)));
    };
    auto cname = [](int j) { return "c" + std::to_string(j); };
    auto dname = [](int i) { return "d" + std::to_string(i); };
    auto ename = [](int i) { return "e" + std::to_string(i); };

    for (int i = 1; i <= 2 * g + 1; ++i)
        for (int j = i + 2; j <= 2 * g + 1; ++j)
            add(cname(i), cname(j));
    for (int i = 1; i <= g; ++i)
        add(dname(i), ename(i));
    // d_{h+1}, e_{h+1} cobound the chain c_1..c_{2h+1}
    for (int h = 1; h <= g - 1; ++h)
        for (int j = 1; j <= 2 * h + 1; ++j) {
            add(dname(h + 1), cname(j));
            add(ename(h + 1), cname(j));
        }
    for (int i = 1; i <= g; ++i)
        for (int j = 2 * i + 2; j <= 2 * g + 1; ++j) {
            add(dname(i), cname(j));
            add(ename(i), cname(j));
        }
    for (int i = 1; i <= g; ++i)
        for (int j = 1; j <= g; ++j)
            if (i != j) {
                add(dname(i), dname(j));
                add(ename(i), ename(j));
                add(dname(i), ename(j));
            }
    if (g >= 3) {
        const char* lantern[] = {"a1", "a2", "a3", "a4"};
        const char* interior[] = {"x", "y", "z"};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                add(lantern[i], lantern[j]);
        for (const char* a : lantern)
            for (const char* w : interior)
                add(a, w);
    }

    // every declared-disjoint pair must pair to zero in homology
    for (const auto& [a, b] : s->disjoint_)
        if (pairing(s->curve_class(a), s->curve_class(b)) != 0)
            throw error("disjointness table inconsistent with pairing: " + a + "," + b);

    return s;
}

std::string Surface::canonical_name(const std::string& name) const
{
    if (name == "e" + std::to_string(genus_))
        return "c" + std::to_string(2 * genus_ + 1);
    return name;
}

bool Surface::has_curve(const std::string& name) const
{
    return classes_.count(canonical_name(name)) != 0;
}

const HomologyClass& Surface::curve_class(const std::string& name) const
{
    auto it = classes_.find(canonical_name(name));
    if (it == classes_.end())
        throw usage_error("unknown curve name: " + name);
    return it->second;
}

bool Surface::declared_disjoint(const std::string& a, const std::string& b) const
{
    return disjoint_.count(ordered(canonical_name(a), canonical_name(b))) != 0;
}

const DeclaredDiffeo* Surface::find_declared(const std::string& name) const
{
    auto it = declared_.find(name);
    return it == declared_.end() ? nullptr : &it->second;
}

const DeclaredDiffeo& Surface::declared(const std::string& name) const
{
    const DeclaredDiffeo* d = find_declared(name);
    if (!d)
        throw usage_error("unknown declared map: " + name);
    return *d;
}

std::shared_ptr<const Surface> Surface::with_declared(DeclaredDiffeo d) const
{
    if (d.matrix.rows() != 2 * genus_ || d.matrix.cols() != 2 * genus_)
        throw usage_error("declared map matrix has wrong size: " + d.name);
    auto s = std::shared_ptr<Surface>(new Surface(*this));
    std::map<std::string, std::string> canon;
    for (const auto& [a, b] : d.axioms)
        canon[canonical_name(a)] = canonical_name(b);
    d.axioms = std::move(canon);
    s->declared_[d.name] = std::move(d);
    return s;
}

// ---------------------------------------------------------------------------
// expression nodes

CurvePtr named_curve(const Surface& s, const std::string& name)
{
    std::string canon = s.canonical_name(name);
    if (!s.has_curve(canon))
        throw usage_error("unknown curve name: " + name);
    auto e = std::make_shared<CurveExpr>();
    e->kind = CurveExpr::Kind::Named;
    e->name = canon;
    e->hash = hash_mix(1, hash_str(canon));
    e->size = 1;
    return e;
}

CurvePtr image_curve(MapPtr m, CurvePtr of)
{
    auto e = std::make_shared<CurveExpr>();
    e->kind = CurveExpr::Kind::Image;
    e->map = std::move(m);
    e->of = std::move(of);
    e->hash = hash_mix(hash_mix(2, e->map->hash), e->of->hash);
    e->size = 1 + e->map->size + e->of->size;
    return e;
}

MapPtr twist(CurvePtr curve)
{
    auto m = std::make_shared<MapExpr>();
    m->kind = MapExpr::Kind::Twist;
    m->curve = std::move(curve);
    m->hash = hash_mix(3, m->curve->hash);
    m->size = 1 + m->curve->size;
    return m;
}

MapPtr declared_map(const Surface& s, const std::string& name)
{
    if (!s.find_declared(name))
        throw usage_error("unknown declared map: " + name);
    auto m = std::make_shared<MapExpr>();
    m->kind = MapExpr::Kind::Declared;
    m->name = name;
    m->hash = hash_mix(4, hash_str(name));
    m->size = 1;
    return m;
}

MapPtr compose(std::vector<MapPtr> parts)
{
    auto m = std::make_shared<MapExpr>();
    m->kind = MapExpr::Kind::Compose;
    m->parts = std::move(parts);
    std::size_t h = 5, sz = 1;
    for (const auto& p : m->parts) {
        h = hash_mix(h, p->hash);
        sz += p->size;
    }
    m->hash = h;
    m->size = sz;
    return m;
}

MapPtr power(MapPtr base, Int exponent)
{
    auto m = std::make_shared<MapExpr>();
    m->kind = MapExpr::Kind::Power;
    m->base = std::move(base);
    m->exponent = exponent;
    m->hash = hash_mix(hash_mix(6, m->base->hash), static_cast<std::size_t>(exponent));
    m->size = 1 + m->base->size;
    return m;
}

MapPtr inverse(MapPtr m)
{
    return power(std::move(m), -1);
}

MapPtr identity_map()
{
    return compose({});
}

bool equal(const MapPtr& a, const MapPtr& b);

bool equal(const CurvePtr& a, const CurvePtr& b)
{
    if (a.get() == b.get())
        return true;
    if (!a || !b || a->hash != b->hash || a->kind != b->kind || a->size != b->size)
        return false;
    switch (a->kind) {
    case CurveExpr::Kind::Named:
        return a->name == b->name;
    case CurveExpr::Kind::Image:
        return equal(a->map, b->map) && equal(a->of, b->of);
    }
    return false;
}

bool equal(const MapPtr& a, const MapPtr& b)
{
    if (a.get() == b.get())
        return true;
    if (!a || !b || a->hash != b->hash || a->kind != b->kind || a->size != b->size)
        return false;
    switch (a->kind) {
    case MapExpr::Kind::Twist:
        return equal(a->curve, b->curve);
    case MapExpr::Kind::Declared:
        return a->name == b->name;
    case MapExpr::Kind::Compose:
        if (a->parts.size() != b->parts.size())
            return false;
        for (std::size_t i = 0; i < a->parts.size(); ++i)
            if (!equal(a->parts[i], b->parts[i]))
                return false;
        return true;
    case MapExpr::Kind::Power:
        return a->exponent == b->exponent && equal(a->base, b->base);
    }
    return false;
}

std::string to_string(const CurvePtr& e)
{
    if (e->kind == CurveExpr::Kind::Named)
        return e->name;
    return to_string(e->map) + "(" + to_string(e->of) + ")";
}

std::string to_string(const MapPtr& m)
{
    switch (m->kind) {
    case MapExpr::Kind::Twist:
        return "T[" + to_string(m->curve) + "]";
    case MapExpr::Kind::Declared:
        return m->name;
    case MapExpr::Kind::Compose: {
        if (m->parts.empty())
            return "id";
        std::string s = "(";
        for (std::size_t i = 0; i < m->parts.size(); ++i) {
            if (i)
                s += " ";
            s += to_string(m->parts[i]);
        }
        return s + ")";
    }
    case MapExpr::Kind::Power:
        return to_string(m->base) + "^" + std::to_string(m->exponent);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// normalization

namespace {

bool is_identity_map(const MapPtr& m)
{
    return (m->kind == MapExpr::Kind::Compose && m->parts.empty()) ||
           (m->kind == MapExpr::Kind::Power && m->exponent == 0);
}

// base map and exponent of m (Power unwraps once; everything else is ^1)
std::pair<MapPtr, Int> map_base(const MapPtr& m)
{
    if (m->kind == MapExpr::Kind::Power)
        return {m->base, m->exponent};
    return {m, 1};
}

MapPtr make_power(const MapPtr& base, Int k)
{
    if (k == 0)
        return identity_map();
    if (k == 1)
        return base;
    return power(base, k);
}

}  // namespace

MapPtr normalize_map(const Surface& s, MapPtr m)
{
    switch (m->kind) {
    case MapExpr::Kind::Twist: {
        CurvePtr c = normalize_curve(s, m->curve);
        return c.get() == m->curve.get() ? m : twist(std::move(c));
    }
    case MapExpr::Kind::Declared:
        return m;
    case MapExpr::Kind::Compose: {
        std::vector<MapPtr> parts;
        bool changed = false;
        for (const auto& p : m->parts) {
            MapPtr q = normalize_map(s, p);
            if (q.get() != p.get())
                changed = true;
            if (is_identity_map(q)) {
                changed = true;
                continue;
            }
            if (q->kind == MapExpr::Kind::Compose) {
                changed = true;
                for (const auto& inner : q->parts)
                    parts.push_back(inner);
            } else {
                parts.push_back(std::move(q));
            }
        }
        if (parts.size() == 1)
            return parts[0];
        if (!changed)
            return m;
        return compose(std::move(parts));
    }
    case MapExpr::Kind::Power: {
        MapPtr base = normalize_map(s, m->base);
        Int k = m->exponent;
        if (k == 0 || is_identity_map(base))
            return identity_map();
        if (base->kind == MapExpr::Kind::Power) {
            k = checked_mul(k, base->exponent);
            base = base->base;
        }
        if (k == 1)
            return base;
        if (base.get() == m->base.get() && k == m->exponent)
            return m;
        return power(std::move(base), k);
    }
    }
    return m;
}

CurvePtr normalize_image_parts(const Surface& s, MapPtr m, CurvePtr inner)
{
    for (;;) {
        if (is_identity_map(m))
            return inner;
        auto [base, k] = map_base(m);
        if (base->kind == MapExpr::Kind::Twist) {
            const CurvePtr& a = base->curve;
            if (equal(a, inner))
                return inner;  // a twist fixes its own curve
            if (a->kind == CurveExpr::Kind::Named && inner->kind == CurveExpr::Kind::Named &&
                s.declared_disjoint(a->name, inner->name))
                return inner;
        }
        if (m->kind == MapExpr::Kind::Declared && inner->kind == CurveExpr::Kind::Named) {
            const DeclaredDiffeo& d = s.declared(m->name);
            auto it = d.axioms.find(inner->name);
            if (it != d.axioms.end())
                return named_curve(s, it->second);
        }
        if (inner->kind == CurveExpr::Kind::Image) {
            auto [base2, k2] = map_base(inner->map);
            if (equal(base, base2)) {
                Int k_total = checked_add(k, k2);
                m = make_power(base, k_total);
                inner = inner->of;
                continue;
            }
        }
        break;
    }
    return image_curve(std::move(m), std::move(inner));
}

CurvePtr normalize_curve(const Surface& s, CurvePtr e)
{
    if (e->kind == CurveExpr::Kind::Named)
        return e;
    MapPtr m = normalize_map(s, e->map);
    CurvePtr inner = normalize_curve(s, e->of);
    CurvePtr out = normalize_image_parts(s, m, inner);
    if (out->kind == CurveExpr::Kind::Image && out->map.get() == e->map.get() && out->of.get() == e->of.get())
        return e;
    return out;
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

struct EvalCache {
    std::unordered_map<const CurveExpr*, HomologyClass> curves;
    std::unordered_map<const MapExpr*, IntMat> maps;
};

const IntMat& matrix_rec(const Surface& s, const MapPtr& m, EvalCache& cache);

HomologyClass homology_rec(const Surface& s, const CurvePtr& e, EvalCache& cache)
{
    auto it = cache.curves.find(e.get());
    if (it != cache.curves.end())
        return it->second;
    HomologyClass result;
    if (e->kind == CurveExpr::Kind::Named) {
        result = s.curve_class(e->name);
    } else {
        // fast path: a twist power acts by the closed-form rank-one update
        auto [base, k] = map_base(e->map);
        if (base->kind == MapExpr::Kind::Twist) {
            result = homology_rec(s, e->of, cache);
            HomologyClass axis = homology_rec(s, base->curve, cache);
            apply_transvection_power(result, axis, k);
        } else {
            result = matrix_rec(s, e->map, cache) * homology_rec(s, e->of, cache);
        }
    }
    cache.curves.emplace(e.get(), result);
    return result;
}

IntMat matrix_pow(const Surface& s, const IntMat& base, Int k, int g)
{
    if (k < 0)
        return matrix_pow(s, symplectic_inverse(base, g), -k, g);
    IntMat acc = IntMat::identity(2 * g);
    IntMat sq = base;
    Int e = k;
    while (e > 0) {
        if (e & 1)
            acc = acc * sq;
        e >>= 1;
        if (e)
            sq = sq * sq;
    }
    return acc;
}

const IntMat& matrix_rec(const Surface& s, const MapPtr& m, EvalCache& cache)
{
    auto it = cache.maps.find(m.get());
    if (it != cache.maps.end())
        return it->second;
    const int g = s.genus();
    IntMat result;
    switch (m->kind) {
    case MapExpr::Kind::Twist:
        result = transvection(homology_rec(s, m->curve, cache));
        break;
    case MapExpr::Kind::Declared:
        result = s.declared(m->name).matrix;
        break;
    case MapExpr::Kind::Compose: {
        result = IntMat::identity(2 * g);
        for (const auto& p : m->parts)
            result = result * matrix_rec(s, p, cache);
        break;
    }
    case MapExpr::Kind::Power: {
        if (m->base->kind == MapExpr::Kind::Twist) {
            // T(c)^k = I + k c (Jc)^T
            HomologyClass c = homology_rec(s, m->base->curve, cache);
            HomologyClass kc = c;
            for (auto& v : kc.c)
                v = checked_mul(m->exponent, v);
            result = IntMat::identity(2 * g);
            // I + (k c)(Jc)^T
            std::vector<Int> jc(2 * g);
            for (int i = 0; i < g; ++i) {
                jc[i] = c.c[g + i];
                jc[g + i] = checked_sub(0, c.c[i]);
            }
            for (int i = 0; i < 2 * g; ++i)
                for (int j = 0; j < 2 * g; ++j)
                    result.at(i, j) = checked_add(result.at(i, j), checked_mul(kc.c[i], jc[j]));
        } else {
            result = matrix_pow(s, matrix_rec(s, m->base, cache), m->exponent, g);
        }
        break;
    }
    }
    return cache.maps.emplace(m.get(), std::move(result)).first->second;
}

}  // namespace

HomologyClass homology_of_curve(const Surface& s, const CurvePtr& e)
{
    EvalCache cache;
    return homology_rec(s, e, cache);
}

IntMat matrix_of_map(const Surface& s, const MapPtr& m)
{
    EvalCache cache;
    return matrix_rec(s, m, cache);
}

ConsistencyReport check_declared_consistency(const Surface& s, const DeclaredDiffeo& d)
{
    ConsistencyReport r;
    if (!is_symplectic(d.matrix, s.genus())) {
        r.pass = false;
        r.failures.push_back(d.name + ": matrix is not symplectic");
    }
    for (const auto& [a, b] : d.axioms) {
        if (!s.has_curve(a) || !s.has_curve(b)) {
            r.pass = false;
            r.failures.push_back(d.name + ": axiom on unknown curve " + a + "->" + b);
            continue;
        }
        HomologyClass img = d.matrix * s.curve_class(a);
        if (!equal_up_to_sign(img, s.curve_class(b))) {
            r.pass = false;
            r.failures.push_back(d.name + ": axiom " + a + "->" + b + " fails on homology");
        }
    }
    return r;
}

}  // namespace lefschetz
