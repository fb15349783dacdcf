#include "lefschetz/monodromy_io.hpp"

#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

namespace lefschetz {

namespace {

using nlohmann::json;

void collect_declared(const CurvePtr& e, std::set<std::string>& names);

void collect_declared(const MapPtr& m, std::set<std::string>& names)
{
    switch (m->kind) {
    case MapExpr::Kind::Twist:
        collect_declared(m->curve, names);
        break;
    case MapExpr::Kind::Declared:
        names.insert(m->name);
        break;
    case MapExpr::Kind::Compose:
        for (const auto& p : m->parts)
            collect_declared(p, names);
        break;
    case MapExpr::Kind::Power:
        collect_declared(m->base, names);
        break;
    }
}

void collect_declared(const CurvePtr& e, std::set<std::string>& names)
{
    if (e->kind == CurveExpr::Kind::Image) {
        collect_declared(e->map, names);
        collect_declared(e->of, names);
    }
}

json curve_to_json(const CurvePtr& e);

json map_to_json(const MapPtr& m)
{
    switch (m->kind) {
    case MapExpr::Kind::Twist:
        return json{{"twist", curve_to_json(m->curve)}};
    case MapExpr::Kind::Declared:
        return json{{"declared", m->name}};
    case MapExpr::Kind::Compose: {
        json parts = json::array();
        for (const auto& p : m->parts)
            parts.push_back(map_to_json(p));
        return json{{"compose", parts}};
    }
    case MapExpr::Kind::Power:
        return json{{"power", json{{"base", map_to_json(m->base)}, {"exp", m->exponent}}}};
    }
    throw error("unreachable map kind");
}

json curve_to_json(const CurvePtr& e)
{
    if (e->kind == CurveExpr::Kind::Named)
        return json{{"named", e->name}};
    return json{{"image", json{{"map", map_to_json(e->map)}, {"of", curve_to_json(e->of)}}}};
}

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object())
        throw usage_error("monodromy file: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw usage_error("monodromy file: unknown field \"" + it.key() + "\" in " + where);
}

CurvePtr curve_from_json(const Surface& s, const json& j);

MapPtr map_from_json(const Surface& s, const json& j)
{
    expect_keys(j, {"twist", "declared", "compose", "power", "inverse"}, "map record");
    if (j.size() != 1)
        throw usage_error("monodromy file: map record must have exactly one field");
    if (j.contains("twist"))
        return twist(curve_from_json(s, j["twist"]));
    if (j.contains("declared")) {
        if (!j["declared"].is_string())
            throw usage_error("monodromy file: declared map name must be a string");
        return declared_map(s, j["declared"].get<std::string>());
    }
    if (j.contains("compose")) {
        if (!j["compose"].is_array())
            throw usage_error("monodromy file: compose must be an array");
        std::vector<MapPtr> parts;
        for (const auto& p : j["compose"])
            parts.push_back(map_from_json(s, p));
        return compose(std::move(parts));
    }
    if (j.contains("inverse"))
        return inverse(map_from_json(s, j["inverse"]));
    const json& p = j["power"];
    expect_keys(p, {"base", "exp"}, "power record");
    if (!p.contains("base") || !p.contains("exp") || !p["exp"].is_number_integer())
        throw usage_error("monodromy file: power record needs base and integer exp");
    return power(map_from_json(s, p["base"]), p["exp"].get<Int>());
}

CurvePtr curve_from_json(const Surface& s, const json& j)
{
    expect_keys(j, {"named", "image"}, "curve record");
    if (j.size() != 1)
        throw usage_error("monodromy file: curve record must have exactly one field");
    if (j.contains("named")) {
        if (!j["named"].is_string())
            throw usage_error("monodromy file: curve name must be a string");
        return named_curve(s, j["named"].get<std::string>());
    }
    const json& im = j["image"];
    expect_keys(im, {"map", "of"}, "image record");
    if (!im.contains("map") || !im.contains("of"))
        throw usage_error("monodromy file: image record needs map and of");
    return image_curve(map_from_json(s, im["map"]), curve_from_json(s, im["of"]));
}

}  // namespace

std::string write_monodromy(const Factorization& w)
{
    const Surface& s = *w.surface();
    json j;
    j["format_version"] = kMonodromyFormatVersion;
    j["genus"] = s.genus();
    json letters = json::array();
    std::set<std::string> declared_names;
    for (const auto& l : w.letters()) {
        letters.push_back(curve_to_json(l));
        collect_declared(l, declared_names);
    }
    j["letters"] = std::move(letters);
    if (w.ledger().n > BigInt(std::numeric_limits<std::int64_t>::max()) ||
        w.ledger().sigma < BigInt(std::numeric_limits<std::int64_t>::min()))
        throw usage_error("monodromy file: ledger out of serializable range");
    j["ledger"] = json{{"n", w.ledger().n.convert_to<std::int64_t>()},
                       {"sigma", w.ledger().sigma.convert_to<std::int64_t>()}};
    j["flags"] = json{{"is_relator", w.ledger().is_relator},
                      {"is_fiber_sum", w.ledger().is_fiber_sum},
                      {"base_name", w.ledger().base_name}};
    json maps = json::object();
    for (const auto& name : declared_names) {
        const DeclaredDiffeo& d = s.declared(name);
        json rows = json::array();
        for (int i = 0; i < d.matrix.rows(); ++i) {
            json row = json::array();
            for (int k = 0; k < d.matrix.cols(); ++k)
                row.push_back(d.matrix.at(i, k));
            rows.push_back(std::move(row));
        }
        maps[name] = json{{"matrix", std::move(rows)}, {"axioms", d.axioms}};
    }
    j["declared_maps"] = std::move(maps);
    j["provenance"] = w.provenance();
    return j.dump(2) + "\n";
}

Factorization read_monodromy(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw usage_error(std::string("monodromy file: invalid JSON: ") + e.what());
    }
    expect_keys(j, {"format_version", "genus", "letters", "ledger", "flags", "declared_maps", "provenance"},
                "top level");
    for (const char* key : {"format_version", "genus", "letters", "ledger", "flags"})
        if (!j.contains(key))
            throw usage_error(std::string("monodromy file: missing field ") + key);
    if (!j["format_version"].is_number_integer() || j["format_version"].get<int>() != kMonodromyFormatVersion)
        throw usage_error("monodromy file: unsupported format_version");
    if (!j["genus"].is_number_integer())
        throw usage_error("monodromy file: genus must be an integer");
    const int g = j["genus"].get<int>();
    SurfacePtr s = Surface::make(g);

    if (j.contains("declared_maps")) {
        const json& maps = j["declared_maps"];
        if (!maps.is_object())
            throw usage_error("monodromy file: declared_maps must be an object");
        for (auto it = maps.begin(); it != maps.end(); ++it) {
            const json& rec = it.value();
            expect_keys(rec, {"matrix", "axioms"}, "declared map record");
            if (!rec.contains("matrix") || !rec["matrix"].is_array())
                throw usage_error("monodromy file: declared map needs a matrix");
            DeclaredDiffeo d;
            d.name = it.key();
            const json& rows = rec["matrix"];
            if (rows.size() != static_cast<std::size_t>(2 * g))
                throw usage_error("monodromy file: declared map matrix must be 2g x 2g");
            d.matrix = IntMat(2 * g, 2 * g);
            for (int i = 0; i < 2 * g; ++i) {
                const json& row = rows[i];
                if (!row.is_array() || row.size() != static_cast<std::size_t>(2 * g))
                    throw usage_error("monodromy file: declared map matrix must be 2g x 2g");
                for (int k = 0; k < 2 * g; ++k) {
                    if (!row[k].is_number_integer())
                        throw usage_error("monodromy file: matrix entries must be integers");
                    d.matrix.at(i, k) = row[k].get<Int>();
                }
            }
            if (rec.contains("axioms")) {
                if (!rec["axioms"].is_object())
                    throw usage_error("monodromy file: axioms must be an object");
                for (auto ax = rec["axioms"].begin(); ax != rec["axioms"].end(); ++ax) {
                    if (!ax.value().is_string())
                        throw usage_error("monodromy file: axiom targets must be strings");
                    d.axioms[ax.key()] = ax.value().get<std::string>();
                }
            }
            s = s->with_declared(std::move(d));
        }
    }

    const json& ledger_j = j["ledger"];
    expect_keys(ledger_j, {"n", "sigma"}, "ledger");
    if (!ledger_j.contains("n") || !ledger_j.contains("sigma") || !ledger_j["n"].is_number_integer() ||
        !ledger_j["sigma"].is_number_integer())
        throw usage_error("monodromy file: ledger needs integer n and sigma");
    const json& flags = j["flags"];
    expect_keys(flags, {"is_relator", "is_fiber_sum", "base_name"}, "flags");

    InvariantLedger ledger;
    ledger.genus = g;
    ledger.n = ledger_j["n"].get<std::int64_t>();
    ledger.sigma = ledger_j["sigma"].get<std::int64_t>();
    ledger.is_relator = flags.value("is_relator", false);
    ledger.is_fiber_sum = flags.value("is_fiber_sum", false);
    ledger.base_name = flags.value("base_name", std::string());

    if (!j["letters"].is_array())
        throw usage_error("monodromy file: letters must be an array");
    std::vector<CurvePtr> letters;
    std::vector<HomologyClass> classes;
    for (const auto& rec : j["letters"]) {
        CurvePtr l = normalize_curve(*s, curve_from_json(*s, rec));
        classes.push_back(homology_of_curve(*s, l));
        letters.push_back(std::move(l));
    }
    std::vector<std::string> provenance;
    if (j.contains("provenance")) {
        if (!j["provenance"].is_array())
            throw usage_error("monodromy file: provenance must be an array");
        for (const auto& p : j["provenance"]) {
            if (!p.is_string())
                throw usage_error("monodromy file: provenance entries must be strings");
            provenance.push_back(p.get<std::string>());
        }
    }
    return Factorization::raw(std::move(s), std::move(letters), std::move(classes), std::move(ledger),
                              std::move(provenance));
}

void save_monodromy(const Factorization& w, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw usage_error("cannot open for writing: " + path);
    out << write_monodromy(w);
    if (!out)
        throw error("write failed: " + path);
}

Factorization load_monodromy(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw usage_error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return read_monodromy(text);
}

}  // namespace lefschetz
