#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lefschetz/linalg.hpp"

namespace lefschetz {

struct CurveExpr;
struct MapExpr;
using CurvePtr = std::shared_ptr<const CurveExpr>;
using MapPtr = std::shared_ptr<const MapExpr>;

// A diffeomorphism known only through its homology matrix and a finite table
// of curve images taken as axioms (a |-> b means the map carries curve a to
// curve b as isotopy classes).
struct DeclaredDiffeo {
    std::string name;
    std::map<std::string, std::string> axioms;
    IntMat matrix;
};

struct ConsistencyReport {
    bool pass = true;
    std::vector<std::string> failures;
};

// The fixed genus-g curve system: named curves c_1..c_{2g+1}, d_i, e_i, u,
// the lantern configuration a1..a4/x/y/z, separating curves s_h, with their
// committed homology classes, the declared-disjointness table and the
// identification e_g == c_{2g+1}.
class Surface {
public:
    static std::shared_ptr<const Surface> make(int genus);

    int genus() const { return genus_; }

    // Resolves the alias e_g -> c_{2g+1}; other names pass through.
    std::string canonical_name(const std::string& name) const;

    bool has_curve(const std::string& name) const;
    const HomologyClass& curve_class(const std::string& name) const;
    const std::map<std::string, HomologyClass>& curves() const { return classes_; }

    bool declared_disjoint(const std::string& a, const std::string& b) const;
    const std::set<std::pair<std::string, std::string>>& disjoint_pairs() const { return disjoint_; }

    const DeclaredDiffeo* find_declared(const std::string& name) const;
    const DeclaredDiffeo& declared(const std::string& name) const;
    const std::map<std::string, DeclaredDiffeo>& declared_maps() const { return declared_; }

    // Functional update: a copy of this surface with one more declared map.
    std::shared_ptr<const Surface> with_declared(DeclaredDiffeo d) const;

private:
    Surface() = default;

    int genus_ = 0;
    std::map<std::string, HomologyClass> classes_;
    std::set<std::pair<std::string, std::string>> disjoint_;
    std::map<std::string, DeclaredDiffeo> declared_;
};

using SurfacePtr = std::shared_ptr<const Surface>;

// Symbolic curve: a table name, or the image of a curve under a map.
struct CurveExpr {
    enum class Kind { Named, Image };

    Kind kind;
    std::string name;  // Named
    MapPtr map;        // Image
    CurvePtr of;       // Image
    std::size_t hash = 0;
    std::size_t size = 1;  // node count, normalization strictly shrinks it
};

// Symbolic mapping class. Compose applies its rightmost factor first;
// Inverse is represented as Power with exponent -1.
struct MapExpr {
    enum class Kind { Twist, Declared, Compose, Power };

    Kind kind;
    CurvePtr curve;             // Twist
    std::string name;           // Declared
    std::vector<MapPtr> parts;  // Compose
    MapPtr base;                // Power
    Int exponent = 0;           // Power
    std::size_t hash = 0;
    std::size_t size = 1;
};

// Node factories (the only way to build expressions).
CurvePtr named_curve(const Surface& s, const std::string& name);
CurvePtr image_curve(MapPtr m, CurvePtr of);
MapPtr twist(CurvePtr curve);
MapPtr declared_map(const Surface& s, const std::string& name);
MapPtr compose(std::vector<MapPtr> parts);
MapPtr power(MapPtr base, Int exponent);
MapPtr inverse(MapPtr m);
MapPtr identity_map();

bool equal(const CurvePtr& a, const CurvePtr& b);
bool equal(const MapPtr& a, const MapPtr& b);

std::string to_string(const CurvePtr& e);
std::string to_string(const MapPtr& m);

// Rewrites to a fixed point of the axiom rules:
//   Image(Twist(a)^k, b)        -> b    when (a,b) declared disjoint or a == b
//   Image(Declared(f), Named(a)) -> Named(b)  when f has axiom a -> b
//   Image(Power(m,0), e)        -> e
//   Image(m, Image(m^k, e))     -> Image(m^{k+1}, e)   (same base map)
//   Compose flattening, Power(m,1) -> m, Power(Power(m,j),k) -> Power(m,jk)
// Every rule strictly shrinks the node count, so the rewriting terminates;
// the homology class is preserved up to sign.
CurvePtr normalize_curve(const Surface& s, CurvePtr e);
MapPtr normalize_map(const Surface& s, MapPtr m);

// Applies the top-level rules to Image(m, inner) assuming both parts are
// already normalized. Word operations wrap letters with this to keep each
// rewrite O(1) instead of re-walking the whole expression.
CurvePtr normalize_image_parts(const Surface& s, MapPtr m, CurvePtr inner);

HomologyClass homology_of_curve(const Surface& s, const CurvePtr& e);
IntMat matrix_of_map(const Surface& s, const MapPtr& m);

// Matrix symplectic, and matrix * [a] == +-[b] for every axiom (a -> b).
ConsistencyReport check_declared_consistency(const Surface& s, const DeclaredDiffeo& d);

struct ImageConstraint {
    HomologyClass source;
    HomologyClass target;
    bool sign_tolerant = true;
};

// A symplectic integer matrix carrying each source to its target (exactly;
// sign-tolerant constraints may have the stored target replaced by its
// negative during consistency resolution). Sources and targets must be
// primitive. Throws usage_error when the constraint pairings are
// inconsistent with preserving the form, verify_error when the completion
// search finds no integral solution.
IntMat symplectic_extension(int genus, const std::vector<ImageConstraint>& constraints);

}  // namespace lefschetz
