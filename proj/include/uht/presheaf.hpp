#pragma once

// Presheaves of finite sets and of finite simplicial sets on a finite
// category, with objectwise (co)limits and the category of elements.

#include <optional>
#include <string>
#include <vector>

#include "uht/fincat.hpp"
#include "uht/simpset.hpp"

namespace uht {

struct Presheaf {
  CatPtr base;
  std::vector<std::vector<std::string>> sections;  // per object
  /// restrict[f][y] for f: X -> Y and y in F(Y) is the index of F(f)(y) in F(X).
  std::vector<std::vector<int>> restrict;

  int size(int x) const { return static_cast<int>(sections[x].size()); }
  int total_sections() const;
  std::vector<std::string> check() const;
};

/// Componentwise functions F(X) -> G(X).
struct PresheafMap {
  std::vector<std::vector<int>> components;
  bool operator==(const PresheafMap&) const = default;
};

std::vector<std::string> check_presheaf_map(const Presheaf& f, const Presheaf& g, const PresheafMap& m);
bool is_presheaf_isomorphism(const Presheaf& f, const Presheaf& g, const PresheafMap& m);
PresheafMap identity_presheaf_map(const Presheaf& f);
PresheafMap compose(const PresheafMap& g, const PresheafMap& f);
/// All natural transformations F -> G, by backtracking over elements.
std::vector<PresheafMap> presheaf_homs(const Presheaf& f, const Presheaf& g, long long bound = max_hom_enumeration());

/// rX(Z) = C(Z, X); sections are named by morphism ids.
Presheaf yoneda(const CatPtr& c, int x);
Presheaf terminal_presheaf(const CatPtr& c);
Presheaf empty_presheaf(const CatPtr& c);
/// Constant presheaf with the given section names and identity restrictions.
Presheaf constant_presheaf(const CatPtr& c, const std::vector<std::string>& names);

/// A covariant diagram of presheaves indexed by a finite category.
struct PresheafDiagram {
  CatPtr index;
  std::vector<Presheaf> values;
  std::vector<PresheafMap> maps;  // maps[u] : values[src u] -> values[dst u]
  std::vector<std::string> check() const;
};

struct Cocone {
  Presheaf apex;
  std::vector<PresheafMap> legs;  // per index object, into the apex
};

struct Cone {
  Presheaf apex;
  std::vector<PresheafMap> legs;  // per index object, out of the apex
};

/// Objectwise colimit: disjoint union glued by union-find; every class is
/// named after its least member "i:s".
Cocone colimit(const PresheafDiagram& d);
/// Objectwise limit: compatible families.
Cone limit(const PresheafDiagram& d);
Cocone coproduct(const std::vector<Presheaf>& pieces);
Cone product(const std::vector<Presheaf>& pieces);
/// Pushout of B <-f- A -g-> C; legs are for (A, B, C).
Cocone pushout(const Presheaf& a, const Presheaf& b, const Presheaf& c, const PresheafMap& f, const PresheafMap& g);
/// Pullback of A -f-> C <-g- B; legs are for (A, B, C).
Cone pullback(const Presheaf& a, const Presheaf& b, const Presheaf& c, const PresheafMap& f, const PresheafMap& g);

/// The map out of a colimit induced by a cocone; nullopt when the cocone
/// legs disagree on identified sections.
std::optional<PresheafMap> colimit_factorization(const PresheafDiagram& d, const Cocone& colim,
                                                 const Presheaf& target, const std::vector<PresheafMap>& legs);

struct Elements {
  CatPtr category;                         // objects "(X,x)", morphisms "(f,y)"
  std::vector<std::pair<int, int>> pairs;  // object index -> (X, section index)
  PresheafDiagram diagram;                 // (X, x) |-> rX
};

Elements category_of_elements(const Presheaf& f);

struct ColimitVerdict {
  bool pass = false;
  bool structural = true;  // the evidence is a presheaf isomorphism, not a proxy
  int colimit_sections = 0;
  int presheaf_sections = 0;
  std::vector<std::string> problems;
};

/// Colimit of representables over the category of elements, compared with F
/// through the canonical map.
ColimitVerdict canonical_colim_verify(const Presheaf& f);

struct Representation {
  int object = -1;
  int element = -1;
  bool operator==(const Representation&) const = default;
};

/// (X, x) with C(-, X) -> F, u |-> F(u)(x) bijective; nullopt if none exists.
std::optional<Representation> representability_check(const Presheaf& f);
/// Components of the category of elements, each with its terminal element;
/// nullopt when some component has no terminal object.
std::optional<std::vector<Representation>> representable_decomposition(const Presheaf& f);

// ---------------------------------------------------------------------------
// Simplicial presheaves

struct SimplicialPresheaf {
  CatPtr base;
  std::vector<SimplicialSetFin> values;       // per object
  std::vector<SimplicialMap> restrictions;    // per morphism f: X -> Y, a map F(Y) -> F(X)

  /// Top nondegenerate dimension over all objects (-1 if empty everywhere).
  int dim() const;
  int total_generators() const;
  std::vector<std::string> check() const;
};

struct SimplicialPresheafMap {
  std::vector<SimplicialMap> components;
  bool operator==(const SimplicialPresheafMap&) const = default;
};

std::vector<std::string> check_simplicial_presheaf_map(const SimplicialPresheaf& f, const SimplicialPresheaf& g,
                                                       const SimplicialPresheafMap& m);
/// Natural and an isomorphism at every object.
bool is_simplicial_presheaf_isomorphism(const SimplicialPresheaf& f, const SimplicialPresheaf& g,
                                        const SimplicialPresheafMap& m);
SimplicialPresheafMap identity_simplicial_presheaf_map(const SimplicialPresheaf& f);
SimplicialPresheafMap compose(const SimplicialPresheaf& target, const SimplicialPresheafMap& g,
                              const SimplicialPresheafMap& f);

/// All maps F -> G of simplicial presheaves: objectwise hom_enumerate, then a
/// backtracking search over objects checking naturality. Throws
/// SizeBoundExceeded past `bound` candidate assignments.
std::vector<SimplicialPresheafMap> simplicial_presheaf_homs(const SimplicialPresheaf& f, const SimplicialPresheaf& g,
                                                           long long bound = max_hom_enumeration());

/// Level n as a presheaf of sets; sections are named by normal-form names.
Presheaf level_presheaf(const SimplicialPresheaf& f, int n);
/// The sub-presheaf of nondegenerate level-n simplices when it is closed
/// under restriction, nullopt otherwise.
std::optional<Presheaf> nondegenerate_presheaf(const SimplicialPresheaf& f, int n);

SimplicialPresheaf discrete_embed(const Presheaf& f);
SimplicialPresheafMap discrete_embed(const Presheaf& f, const Presheaf& g, const PresheafMap& m);
/// pi0 as a presheaf of sets.
Presheaf pi0_presheaf(const SimplicialPresheaf& f);
/// The simplicial presheaf constant at K.
SimplicialPresheaf constant_simplicial(const CatPtr& c, const SimplicialSetFin& k);

struct Tensor {
  SimplicialPresheaf result;
  std::vector<Product> products;  // per object, F(X) × K
};

/// Objectwise product F(X) × K.
Tensor tensor_simplicial(const SimplicialPresheaf& f, const SimplicialSetFin& k);

struct SimplicialCoproduct {
  SimplicialPresheaf result;
  std::vector<SimplicialPresheafMap> inclusions;
};

SimplicialCoproduct coproduct(const std::vector<const SimplicialPresheaf*>& pieces,
                              const std::vector<std::string>& labels);

struct PresheafQuotient {
  SimplicialPresheaf result;
  SimplicialPresheafMap projection;
};

/// Objectwise quotient by the smallest simplicial sub-presheaf equivalence
/// relation containing the given pairs (pairs[X] lists simplices of B(X)).
PresheafQuotient coequalize(const SimplicialPresheaf& b,
                            const std::vector<std::vector<std::pair<Simplex, Simplex>>>& pairs);

}  // namespace uht
