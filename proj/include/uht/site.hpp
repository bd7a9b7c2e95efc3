#pragma once

// Finite Grothendieck sites: covering families, the local-surjectivity cover
// predicate, Čech nerves, hypercover conditions and the relation maps
// hocolim(U) -> rX generated by covering families.

#include <optional>
#include <string>
#include <vector>

#include "uht/fincat.hpp"
#include "uht/homology.hpp"
#include "uht/presheaf.hpp"

namespace uht {

struct CoveringFamily {
  std::vector<int> members;  // morphisms into the covered object
  bool synthesized = false;  // the identity family added by make_site
};

struct SiteData {
  CatPtr base;
  std::vector<std::vector<CoveringFamily>> covers;  // per object
};

/// Families are given per object by morphism ids. Every member must land in
/// its object (InvalidInput otherwise). The identity family is added, and
/// flagged, wherever it is missing.
SiteData make_site(const CatPtr& base, const std::vector<std::vector<std::vector<std::string>>>& covers);

struct SiteAxioms {
  bool identity_families = true;  // after synthesis; false only for hand-built data
  bool pullback_stable = true;    // checked on representable pullbacks
  bool local = true;              // composite families are refined by a cover
  std::vector<std::string> problems;
  bool pass() const { return identity_families && pullback_stable && local; }
};

/// Optional axiom validation, reported rather than enforced.
SiteAxioms validate_site(const SiteData& site);

struct CoverVerdict {
  bool pass = false;
  /// On failure: an object and a section of the codomain there that does
  /// not lift locally along any covering family.
  std::string witness_object;
  std::string witness_section;
};

/// f: E -> B is a cover when every section b of B(X) has, for some covering
/// family {U_a -> X}, every restriction b|U_a in the image of E(U_a).
CoverVerdict is_cover(const Presheaf& e, const Presheaf& b, const PresheafMap& f, const SiteData& site);

struct AugmentedObject {
  SimplicialPresheaf u;
  int object = -1;                     // X
  SimplicialPresheafMap augmentation;  // U -> discrete rX
  std::optional<TruncationTag> truncation;
};

/// The Čech nerve of a family of morphisms into X through level `levels`:
/// level k at Z is the set of (k+1)-tuples of lifts Z -> U_a over a common
/// Z -> X, so that level k is the coproduct over (k+1)-tuples of members of
/// the fiber products over rX. Generator ids list the lifts as
/// "v@u" (lift v through member u).
AugmentedObject cech_nerve(const SiteData& site, int x, const std::vector<int>& family, int levels);

/// The augmentation in degree 0, as a map of presheaves of sets.
struct LevelMap {
  Presheaf source;
  Presheaf target;
  PresheafMap map;
};
LevelMap augmentation_level0(const AugmentedObject& u);

/// U_n -> M_n, where M_n is the matching object of ∂Δ^n computed over rX:
/// families (x_0, ..., x_n) of (n-1)-simplices with d_i x_j = d_{j-1} x_i
/// for i < j and a common augmentation.
LevelMap relative_matching(const AugmentedObject& u, int n);

struct HypercoverReport {
  int bound = 0;
  std::vector<bool> representable_levels;  // (i), per level 0..bound
  std::optional<int> first_bad_level;
  CoverVerdict degree0;                    // (ii)
  std::vector<CoverVerdict> matching;      // (iii), for n = 1..bound
  std::vector<bool> matching_iso;          // whether each matching map is an isomorphism
  bool pass = false;
};

HypercoverReport is_hypercover(const AugmentedObject& u, const SiteData& site, int bound);

/// The colimit over C of a simplicial presheaf, with the map induced by a
/// map of simplicial presheaves. On levelwise coproducts of representables
/// this is the homotopy colimit.
struct PointRealization {
  SimplicialSetFin set;
  Quotient quotient;
  Coproduct coproduct;
};
PointRealization realize_at_point(const SimplicialPresheaf& f);
SimplicialMap realize_at_point(const SimplicialPresheaf& f, const PointRealization& rf, const SimplicialPresheaf& g,
                               const PointRealization& rg, const SimplicialPresheafMap& phi);

struct Relation {
  int object = -1;
  int family = -1;  // index into site.covers[object]
  AugmentedObject cech;
  SimplicialPresheaf target;  // discrete rX
  ObjectwiseVerdict objectwise;
  EquivalenceVerdict realized;  // after realization at the point
};

/// One relation per listed (not synthesized) covering family.
std::vector<Relation> relations(const SiteData& site, int levels);

}  // namespace uht
