#pragma once

// Homotopy colimits of diagrams of simplicial presheaves (simplicial sets are
// presheaves on the point): simplicial replacement with its diagonal, the
// Bousfield–Kan coequalizer, and the Thomason comparison.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uht/fincat.hpp"
#include "uht/homology.hpp"
#include "uht/presheaf.hpp"

namespace uht {

struct SPDiagram {
  CatPtr index;
  CatPtr base;
  std::vector<SimplicialPresheaf> values;
  std::vector<SimplicialPresheafMap> maps;  // maps[u] : values[src u] -> values[dst u]

  std::vector<std::string> check() const;
};

/// A diagram of simplicial sets, stored as presheaves on the point.
SPDiagram sset_diagram(const CatPtr& index, const std::vector<SimplicialSetFin>& values,
                       const std::vector<SimplicialMap>& maps);
/// The constant diagram at a one-vertex simplicial set.
SPDiagram point_diagram(const CatPtr& index);
/// Evaluation of a presheaf-on-the-point at its only object.
const SimplicialSetFin& underlying(const SimplicialPresheaf& f);

/// An empty simplicial presheaf on `base`.
SimplicialPresheaf empty_simplicial(const CatPtr& base);

struct Replacement {
  SimplicialPresheaf result;  // the diagonal, one simplicial set per base object
  std::optional<TruncationTag> truncation;
  std::vector<Chain> chains;  // nondegenerate chains c_p -> ... -> c_0 of the index
  /// Per base object: the bisimplicial set, its diagonal and, per bisimplicial
  /// generator, the pair (chain index, generator of D(c_p) at that object).
  std::vector<BisimplicialSetFin> bi;
  std::vector<std::shared_ptr<const Diagonal>> diagonals;
  std::vector<std::vector<std::pair<int, int>>> bigens;
};

/// Level n is the coproduct of D(c_n) over chains c_n -> ... -> c_0; the
/// diagonal is returned. Without `max_degree` the index must be chain-finite.
Replacement simplicial_replacement(const SPDiagram& d, std::optional<int> max_degree = std::nullopt);

/// hocolim D -> T induced by a cocone with legs D(i) -> T.
SimplicialPresheafMap replacement_augmentation(const Replacement& r, const SPDiagram& d,
                                               const SimplicialPresheaf& target,
                                               const std::vector<SimplicialPresheafMap>& legs);

enum class Precofibrant { Auto, Off };

struct BKResult {
  SimplicialPresheaf result;
  bool replaced = false;  // values went through q first
};

/// Coequalizer of ⊔_{β→γ} D(β) ⊗ B(γ↓I)^op ⇉ ⊔_α D(α) ⊗ B(α↓I)^op, objectwise.
BKResult bk_hocolim(const SPDiagram& d, Precofibrant mode = Precofibrant::Auto);

/// The functor q applied to every value and map of a diagram.
SPDiagram q_diagram(const SPDiagram& d);

struct ThomasonVerdict {
  std::vector<std::string> objects;  // base objects
  std::vector<HomologySummary> grothendieck_side;
  std::vector<HomologySummary> iterated_side;
  int max_degree = 0;
  bool pass = false;
};

/// hocolim over Gr Θ of E against hocolim over I of the coproducts ⊔_σ E(i, σ).
ThomasonVerdict thomason_compare(const SetFunctor& theta, const GrothendieckConstruction& gr, const SPDiagram& e);

/// bk_hocolim of B <-f- A -g-> C.
SimplicialSetFin homotopy_pushout(const SimplicialSetFin& a, const SimplicialSetFin& b, const SimplicialSetFin& c,
                                  const SimplicialMap& f, const SimplicialMap& g);

/// Strict colimit of a diagram of simplicial presheaves (coproduct, then coequalizer).
struct SimplicialColimit {
  SimplicialPresheaf result;
  std::vector<SimplicialPresheafMap> legs;
  SimplicialCoproduct coproduct;
  PresheafQuotient quotient;
};
SimplicialColimit simplicial_colimit(const SPDiagram& d);
/// The map out of a colimit induced by a cocone; nullopt when the legs are
/// not compatible.
std::optional<SimplicialPresheafMap> colimit_factor(const SimplicialColimit& colim, const SimplicialPresheaf& target,
                                                    const std::vector<SimplicialPresheafMap>& legs);

/// The map out of a quotient induced by a map out of its source; nullopt
/// when the map does not respect the identifications.
std::optional<SimplicialPresheafMap> descend(const SimplicialPresheaf& source, const PresheafQuotient& q,
                                             const SimplicialPresheaf& target, const SimplicialPresheafMap& m);

/// Nerve map induced by a functor.
SimplicialMap nerve_map(const FunctorData& f, const SimplicialSetFin& source_nerve,
                        const SimplicialSetFin& target_nerve);

}  // namespace uht
