#pragma once

// Truncated cosimplicial objects in simplicial presheaves on a target base D,
// resolutions indexed by a finite category C, the coend realization
// Re(F) = Γ ⊗_C F, its right adjoint Sing, and exhaustive adjunction checks.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uht/fincat.hpp"
#include "uht/homology.hpp"
#include "uht/presheaf.hpp"

namespace uht {

struct CosimplicialObject {
  CatPtr base;  // D
  int m = 0;
  std::vector<SimplicialPresheaf> objects;  // Γ^0 .. Γ^m
  /// cofaces[n][i] : Γ^{n-1} -> Γ^n for 1 <= n <= m, 0 <= i <= n (cofaces[0] empty).
  std::vector<std::vector<SimplicialPresheafMap>> cofaces;
  /// codegeneracies[n][j] : Γ^{n+1} -> Γ^n for 0 <= n < m, 0 <= j <= n.
  std::vector<std::vector<SimplicialPresheafMap>> codegeneracies;

  /// Γ(θ) : Γ^k -> Γ^n for monotone θ: [k] -> [n], as a composite of
  /// codegeneracies followed by cofaces.
  SimplicialPresheafMap induced(const OpMap& theta, int n) const;
  /// Every structure map is a valid map, and every composite of two
  /// generating maps equals the map induced by the composite operator.
  std::vector<std::string> check() const;
};

/// [n] |-> rX ⊗ Δ^n on D = C, for n <= m.
CosimplicialObject standard_resolution(const CatPtr& c, int x, int m);

struct ResolutionData {
  CatPtr source;  // C
  CatPtr target;  // D
  int m = 0;
  std::vector<CosimplicialObject> gamma;  // per object of C
  /// naturality[f][n] : Γ(a)^n -> Γ(b)^n for f: a -> b.
  std::vector<std::vector<SimplicialPresheafMap>> naturality;
  std::vector<SimplicialPresheaf> constants;            // γX, per object of C
  std::vector<SimplicialPresheafMap> constant_maps;     // γ(f), per morphism
  std::vector<std::vector<SimplicialPresheafMap>> comparisons;  // per X, per n: Γ(X)^n -> γX

  /// Naturality squares against cofaces, codegeneracies and comparisons,
  /// functoriality in C, and (when `verdicts`) every comparison through
  /// objectwise_verdict.
  std::vector<std::string> check(bool verdicts = true) const;
};

ResolutionData standard_resolution_data(const CatPtr& c, int m);

struct LatchingReport {
  struct Degree {
    int n = 0;
    SimplicialPresheaf latching;  // colimit of Γ^k over the proper faces of [n]
    SimplicialPresheafMap map;    // into Γ^n
    bool injective = false;
    bool split = false;  // the complement is a levelwise coproduct of representables
    std::vector<std::vector<Representation>> complement;  // per simplicial level, when split
  };
  std::vector<Degree> degrees;
  bool sufficient_only = true;
  bool pass = false;
};

LatchingReport latching_report(const CosimplicialObject& x, std::optional<int> max_n = std::nullopt);

/// A coend presented as a quotient of a coproduct of pieces Γ(c)^{dim x},
/// one per object c and generator x of F(c).
struct Coend {
  SimplicialPresheaf result;
  SimplicialCoproduct coproduct;
  PresheafQuotient quotient;
  std::vector<std::pair<int, int>> pieces;  // (object, generator)
  std::map<std::pair<int, int>, int> piece_index;
};

/// X ⊗ K. Throws TruncationTooSmall when dim K exceeds X's bound.
Coend tensor_with(const CosimplicialObject& x, const SimplicialSetFin& k);
/// X ⊗ f for f: K -> L.
SimplicialPresheafMap tensor_with_map(const CosimplicialObject& x, const SimplicialSetFin& k, const Coend& xk,
                                      const SimplicialSetFin& l, const Coend& xl, const SimplicialMap& f);

/// Re(F) = Γ ⊗_C F on the target base. Throws TruncationTooSmall when
/// dim F exceeds the resolution's bound.
Coend coend_over_C(const ResolutionData& g, const SimplicialPresheaf& f);
/// Re(φ) for φ: F -> F'.
SimplicialPresheafMap coend_map(const ResolutionData& g, const SimplicialPresheaf& f, const Coend& ref,
                                const SimplicialPresheaf& f2, const Coend& ref2, const SimplicialPresheafMap& phi);

/// Re(rX) -> Γ(X)^0 induced by the pieces Γ(u)^0, checked to be an isomorphism.
struct RepresentableCheck {
  SimplicialPresheafMap map;
  bool isomorphism = false;
};
RepresentableCheck re_representable_check(const ResolutionData& g, int x);

struct SingResult {
  SimplicialPresheaf result;  // on C, skeleton through the resolution's bound
  TruncationTag truncation;
  /// Per object c of C and per level n: every map Γ(c)^n -> W.
  std::vector<std::vector<std::vector<SimplicialPresheafMap>>> homs;
  /// Per object c: generator index -> (level, position in homs[c][level]).
  std::vector<std::vector<std::pair<int, int>>> generators;
  /// Per object c and level: hom position -> normal-form simplex.
  std::vector<std::vector<std::vector<Simplex>>> simplices;

  /// The n-simplex of Sing(W)(c) given by a map Γ(c)^n -> W.
  Simplex simplex_of(int c, int n, const SimplicialPresheafMap& phi) const;
  /// The map Γ(c)^n -> W named by an n-simplex of Sing(W)(c).
  const SimplicialPresheafMap& hom_of(int c, const Simplex& s) const;

  std::vector<std::map<std::vector<Simplex>, int>> lookup_;  // per (c * (m + 1) + n)
  std::vector<std::map<Simplex, int>> reverse_;
  int m_ = 0;
};

/// Sing(W)(c)_n = maps Γ(c)^n -> W, for n <= m.
SingResult sing(const ResolutionData& g, const SimplicialPresheaf& w);
/// Sing(ρ) for ρ: W -> W', by postcomposition.
SimplicialPresheafMap sing_map(const ResolutionData& g, const SingResult& sw, const SingResult& sw2,
                               const SimplicialPresheaf& w2, const SimplicialPresheafMap& rho);

struct AdjunctionVerdict {
  long long lhs_count = 0;  // maps Re F -> W
  long long rhs_count = 0;  // maps F -> Sing W
  bool bijection = false;
  bool natural_in_w = false;
  bool natural_in_f = false;
  bool pass = false;
};

/// Enumerates both sides of hom(Re F, W) ≅ hom(F, Sing W), checks that the
/// adjunct is a bijection, and probes naturality with an endomorphism of W,
/// the map to the terminal object and the fold F ⊔ F -> F.
AdjunctionVerdict adjunction_check(const ResolutionData& g, const SimplicialPresheaf& f, const SimplicialPresheaf& w,
                                   long long bound = max_hom_enumeration());

/// The terminal simplicial presheaf (Δ^0 everywhere).
SimplicialPresheaf terminal_simplicial(const CatPtr& c);

}  // namespace uht
