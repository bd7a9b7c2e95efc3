#pragma once

// JSON documents for every input type. Documents carry a "kind" field;
// categories may be given inline or as a path relative to the referring
// document. Malformed documents raise InvalidInput; documents that parse but
// violate an invariant raise InvariantViolation.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "uht/fincat.hpp"
#include "uht/hocolim.hpp"
#include "uht/presheaf.hpp"
#include "uht/site.hpp"

namespace uht {

using Json = nlohmann::ordered_json;

/// Parses a file; InvalidInput on I/O or syntax errors.
Json read_json(const std::filesystem::path& path);
std::string document_kind(const Json& doc);

/// A document together with the directory that relative references resolve against.
struct DocContext {
  std::filesystem::path dir;
};

CategorySpec category_spec_from_json(const Json& j);
/// Validates the axioms; InvariantViolation lists every problem.
CatPtr category_from_json(const Json& j, const DocContext& ctx = {});
Json category_to_json(const FinCategory& c);

SimplicialSetFin simpset_from_json(const Json& j, const DocContext& ctx = {});
Json simpset_to_json(const SimplicialSetFin& k);
Json simplex_to_json(const SimplicialSetFin& k, const Simplex& s);
Simplex simplex_from_json(const SimplicialSetFin& k, const Json& j);

/// {"images": {"source-id": [word, "target-id"], ...}}
SimplicialMap simplicial_map_from_json(const Json& j, const SimplicialSetFin& source, const SimplicialSetFin& target);
Json simplicial_map_to_json(const SimplicialSetFin& source, const SimplicialSetFin& target, const SimplicialMap& m);

/// {"kind": "presheaf", "category": ..., "sections": {X: [...]}, "restrictions": {f: {y: x}}}
Presheaf presheaf_from_json(const Json& j, const DocContext& ctx = {});
Json presheaf_to_json(const Presheaf& f);

/// {"kind": "simplicial_presheaf", "category": ..., "values": {X: simpset}, "restrictions": {f: map}}
/// A presheaf document is accepted and embedded discretely; a simplicial set
/// document is read as a simplicial presheaf on the point.
SimplicialPresheaf simplicial_presheaf_from_json(const Json& j, const DocContext& ctx = {});
Json simplicial_presheaf_to_json(const SimplicialPresheaf& f);
SimplicialPresheafMap simplicial_presheaf_map_from_json(const Json& j, const SimplicialPresheaf& source,
                                                        const SimplicialPresheaf& target);
Json simplicial_presheaf_map_to_json(const SimplicialPresheaf& source, const SimplicialPresheaf& target,
                                     const SimplicialPresheafMap& m);

/// {"kind": "diagram", "index": ..., "base": optional category (default: the point),
///  "values": {i: simpset or simplicial presheaf}, "maps": {u: map}}; identity maps may be omitted.
SPDiagram diagram_from_json(const Json& j, const DocContext& ctx = {});

/// {"kind": "site", category fields or "category": ..., "covers": {X: [[f, ...], ...]}}
SiteData site_from_json(const Json& j, const DocContext& ctx = {});

/// {"kind": "thomason", "theta": {"index": ..., "sets": {i: [...]}, "functions": {u: {s: t}}},
///  "values": {"(i,s)": simpset}, "maps": {"(u,s)": map}}
struct ThomasonInput {
  SetFunctor theta;
  GrothendieckConstruction gr;
  SPDiagram e;
};
ThomasonInput thomason_from_json(const Json& j, const DocContext& ctx = {});

/// {"kind": "augmented", "site": ..., "object": X, "values": ..., "restrictions": ...,
///  "augmentation": {Z: map to the discrete rX}}; the simplicial presheaf lives on the site's category.
struct AugmentedInput {
  SiteData site;
  AugmentedObject object;
};
AugmentedInput augmented_from_json(const Json& j, const DocContext& ctx = {});

/// Loads a document of any kind and runs its full invariant sweep; returns
/// the problems found (empty when valid). Malformed input still throws.
std::vector<std::string> validate_document(const Json& j, const DocContext& ctx = {});

}  // namespace uht
