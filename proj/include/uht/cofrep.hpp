#pragma once

// Cofibrant replacements of simplicial presheaves: the simplicial
// replacement Q̃ of the canonical diagram, its levelwise diagonal Q, the
// canonical homotopy colimit over simplices of F, free-degeneracy splittings,
// skeletal filtrations, cofibrancy certificates and the cotriple comparison.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "uht/fincat.hpp"
#include "uht/homology.hpp"
#include "uht/presheaf.hpp"

namespace uht {

/// Bisimplicial bookkeeping of Q at one object Z: a generator of bidegree
/// (m, n) is a nondegenerate chain X_m -> ... -> X_0, a morphism u: Z -> X_m
/// and a generator of F(X_0) of dimension n.
struct BarAtObject {
  struct Entry {
    int chain = -1;
    int u = -1;
    int gen = -1;
    auto operator<=>(const Entry&) const = default;
  };
  BisimplicialSetFin bi;
  std::shared_ptr<const Diagonal> diagonal;
  std::vector<Entry> bigens;
  std::map<Entry, int> lookup;
};

struct QResult {
  SimplicialPresheaf result;
  SimplicialPresheafMap augmentation;  // to the input
  std::optional<TruncationTag> truncation;
  std::vector<Chain> chains;  // backward orientation, non-identity morphisms
  std::map<Chain, int> chain_index;
  std::vector<BarAtObject> bar;  // per base object
};

/// Diagonal of the bisimplicial presheaf (m, n) |-> Q̃(F_n)_m, with the
/// augmentation to F. Without `max_degree` the base must be chain-finite.
QResult q(const SimplicialPresheaf& f, std::optional<int> max_degree = std::nullopt);
/// Q̃F: the same construction on the discrete simplicial presheaf of F.
QResult qtilde(const Presheaf& f, std::optional<int> max_degree = std::nullopt);
/// Q(phi) for phi: F -> G.
SimplicialPresheafMap q_map(const QResult& qf, const QResult& qg, const SimplicialPresheaf& g,
                            const SimplicialPresheafMap& phi);

struct FinalityCertificate {
  int checked = 0;  // objects (A, n, s) of the truncated comma category examined
  bool pass = true;
  std::vector<std::string> failures;
};

struct CanonicalQResult {
  SimplicialPresheaf result;
  SimplicialPresheafMap augmentation;
  TruncationTag truncation;
  CatPtr index;  // simplices (A, n, x) with x nondegenerate, injective operators
  FinalityCertificate finality;
};

/// Homotopy colimit of (A, n, x) |-> rA ⊗ Δ^n over the category of
/// nondegenerate simplices of F, truncated at d. Throws TruncationTooSmall
/// when d < dim F + 1.
CanonicalQResult canonical_q(const SimplicialPresheaf& f, int d, bool certify_finality = true);

struct DegeneracySplitting {
  int bound = 0;
  std::vector<Presheaf> nondegenerate;  // N_k for k = 0..bound
};

/// N_k = nondegenerate k-simplices, accepted when each is a sub-presheaf and
/// ⊔_{σ: [k] ->> [n]} N_n -> F_k is a natural bijection for k <= bound
/// (default dim F + 1).
std::optional<DegeneracySplitting> detect_splitting(const SimplicialPresheaf& f,
                                                    std::optional<int> bound = std::nullopt);

struct CofibrancyCertificate {
  DegeneracySplitting splitting;
  std::vector<std::vector<Representation>> decompositions;  // per level
  bool sufficient_only = true;
};

std::optional<CofibrancyCertificate> cofibrancy_certificate(const SimplicialPresheaf& f,
                                                            std::optional<int> bound = std::nullopt);

struct SkeletonPresheaf {
  SimplicialPresheaf result;
  SimplicialPresheafMap inclusion;
};

SkeletonPresheaf skeleton_presheaf(const SimplicialPresheaf& f, int n);

struct SkeletalStage {
  int n = 0;
  SimplicialPresheaf pushout;
  bool matches_skeleton = false;
};

struct SkeletalFiltration {
  std::vector<SkeletalStage> stages;
  bool colimit_matches = false;
};

/// sk_0 = N_0 and sk_n = sk_{n-1} ⊔_{N_n ⊗ ∂Δ^n} N_n ⊗ Δ^n, each compared
/// with the honest skeleton. Throws PushoutMismatch on disagreement.
SkeletalFiltration skeletal_filtration(const SimplicialPresheaf& f, const DegeneracySplitting& s);

/// (TU)^{n+1} F, where T is left Kan extension from the objects of C.
Presheaf cotriple_level(const Presheaf& f, int n);

struct CotripleVerdict {
  int n_max = 0;
  std::vector<bool> level_iso;       // per n
  std::vector<bool> faces_agree;     // per n
  std::vector<bool> degeneracies_agree;
  bool pass = false;
};

CotripleVerdict cotriple_compare(const Presheaf& f, int n_max);

}  // namespace uht
