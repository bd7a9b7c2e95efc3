#pragma once

// Finite simplicial sets in Eilenberg–Zilber normal form.
//
// A simplex is stored as a surjection sigma: [m] ->> [n] together with a
// nondegenerate generator x of dimension n, and denotes sigma^*(x). The
// degeneracy word s_{i1}...s_{ik} (i1 > ... > ik) of sigma is the set of
// positions j with sigma(j) == sigma(j+1). Simplicial operators are applied
// symbolically; levels are only materialized on request.

#include <cstdint>
#include <memory>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uht/common.hpp"

namespace uht {

/// A monotone map [k] -> [n], stored as its k+1 values.
using OpMap = std::vector<int>;

OpMap identity_op(int n);
/// delta_i : [n-1] -> [n], skipping i.
OpMap coface_op(int n, int i);
/// sigma_j : [n+1] -> [n], hitting j twice.
OpMap codegeneracy_op(int n, int j);
/// a∘b.
OpMap compose_ops(const OpMap& a, const OpMap& b);
bool is_surjective(const OpMap& theta, int n);
bool is_injective(const OpMap& theta);
/// theta = mono∘epi with epi: [k] ->> [r], mono: [r] -> [n].
std::pair<OpMap, OpMap> epi_mono(const OpMap& theta);

OpMap surjection_from_word(const std::vector<int>& word, int target_dim);
std::vector<int> word_of(const OpMap& surjection);
std::string word_string(const OpMap& surjection);

/// All surjections [m] ->> [n] and all monotone maps [m] -> [n], in a fixed
/// lexicographic order.
std::vector<OpMap> surjections(int m, int n);
std::vector<OpMap> monotone_maps(int m, int n);

struct Simplex {
  OpMap map;  // surjection onto [dim of gen]
  int gen = -1;

  int dim() const { return static_cast<int>(map.size()) - 1; }
  bool nondegenerate() const;
  auto operator<=>(const Simplex&) const = default;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const;
};

struct Generator {
  std::string id;
  int dim = 0;
  std::vector<Simplex> faces;  // faces[i] = d_i, each of dimension dim - 1
};

class SimplicialSetFin {
 public:
  SimplicialSetFin() = default;
  /// Faces refer to generators by index. Throws InvalidInput on duplicate
  /// ids or out-of-range references; use check() for the identities.
  explicit SimplicialSetFin(std::vector<Generator> gens);

  int num_generators() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int g) const { return gens_[g]; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<int> find(const std::string& id) const;
  /// Top nondegenerate dimension, -1 when empty.
  int dim() const;
  std::vector<int> generators_of_dim(int n) const;

  Simplex simplex(int g) const { return Simplex{identity_op(gens_[g].dim), g}; }
  /// theta^*(s) in normal form, for theta: [k] -> [s.dim()].
  Simplex apply(const OpMap& theta, const Simplex& s) const;
  Simplex face(int i, const Simplex& s) const;
  Simplex degeneracy(int j, const Simplex& s) const;

  /// Every simplex of level m (degenerate ones included), deterministic order.
  std::vector<Simplex> level(int m) const;
  std::size_t level_size(int m) const;

  /// Structural problems: face dimensions, normal form of stored faces and
  /// d_i d_j = d_{j-1} d_i on generators.
  std::vector<std::string> check() const;
  /// Exhaustive expansion check of all five simplicial identities on every
  /// simplex up to `max_level` (default: top dimension + 2).
  std::vector<std::string> check_identities(std::optional<int> max_level = std::nullopt) const;

  std::string name(const Simplex& s) const;

 private:
  std::vector<Generator> gens_;
  std::map<std::string, int> index_;
};

/// A map of finite simplicial sets, given by the image of each source generator.
struct SimplicialMap {
  std::vector<Simplex> images;
  bool operator==(const SimplicialMap&) const = default;
};

Simplex map_simplex(const SimplicialSetFin& target, const SimplicialMap& f, const Simplex& s);
std::vector<std::string> check_map(const SimplicialSetFin& source, const SimplicialSetFin& target,
                                   const SimplicialMap& f);
SimplicialMap identity_map(const SimplicialSetFin& k);
/// g∘f where g: mid -> target.
SimplicialMap compose(const SimplicialSetFin& target, const SimplicialMap& g, const SimplicialMap& f);
/// Injective on simplices: generators go to distinct generators.
bool is_monomorphism(const SimplicialMap& f);
bool is_isomorphism(const SimplicialSetFin& target, const SimplicialMap& f);

SimplicialSetFin standard_simplex(int n);
SimplicialSetFin boundary(int n);
/// The map Δ^n -> Δ^m induced by a monotone theta: [n] -> [m].
SimplicialMap delta_map(const OpMap& theta, int m);
/// A simplicial set with one vertex per name and nothing else.
SimplicialSetFin discrete(const std::vector<std::string>& names);
SimplicialSetFin skeleton(const SimplicialSetFin& k, int n);
/// Inclusion sk_n K -> K.
SimplicialMap skeleton_inclusion(const SimplicialSetFin& k, int n);

struct Coproduct {
  SimplicialSetFin set;
  std::vector<int> offsets;  // generator offset of each summand
  SimplicialMap inclusion(std::size_t summand, const SimplicialSetFin& piece) const;
};

/// Summand ids are prefixed "label:".
Coproduct coproduct(const std::vector<const SimplicialSetFin*>& pieces,
                    const std::vector<std::string>& labels);

struct BiSimplex {
  OpMap h;  // surjection onto [p]
  OpMap v;  // surjection onto [q]
  int gen = -1;
  auto operator<=>(const BiSimplex&) const = default;
};

struct BiGenerator {
  std::string id;
  int p = 0;
  int q = 0;
  std::vector<BiSimplex> hfaces;  // bidegree (p-1, q)
  std::vector<BiSimplex> vfaces;  // bidegree (p, q-1)
};

/// Finite bisimplicial set in normal form: every bisimplex is a pair of
/// degeneracy words applied to a generator nondegenerate in both directions.
class BisimplicialSetFin {
 public:
  BisimplicialSetFin() = default;
  explicit BisimplicialSetFin(std::vector<BiGenerator> gens);

  int num_generators() const { return static_cast<int>(gens_.size()); }
  const BiGenerator& generator(int g) const { return gens_[g]; }
  BiSimplex simplex(int g) const;
  BiSimplex apply(const OpMap& theta_h, const OpMap& theta_v, const BiSimplex& s) const;

  /// Bisimplicial identities on generators, horizontal/vertical commutation.
  std::vector<std::string> check() const;

 private:
  std::vector<BiGenerator> gens_;
};

/// The diagonal of a bisimplicial set, with the bookkeeping needed to push
/// bisimplices of bidegree (n, n) into it.
class Diagonal {
 public:
  /// Keeps diagonal simplices up to `max_dim` when given.
  Diagonal(const BisimplicialSetFin& b, std::optional<int> max_dim = std::nullopt);

  const SimplicialSetFin& set() const { return set_; }
  /// Normal form of a bisimplex of bidegree (n, n) as a diagonal simplex.
  Simplex normalize(const BiSimplex& s) const;
  /// The (bigen, h, v) triple a diagonal generator stands for.
  const BiSimplex& source(int g) const { return sources_[g]; }

 private:
  SimplicialSetFin set_;
  std::vector<BiSimplex> sources_;
  std::map<BiSimplex, int> index_;
};

/// Diagonal map induced by a bisimplicial map, given on generators.
SimplicialMap diagonal_map(const Diagonal& source, const Diagonal& target,
                           const BisimplicialSetFin& target_bi,
                           const std::function<BiSimplex(int)>& on_generators);

/// External product K ⊠ L; its diagonal is K × L.
BisimplicialSetFin external_product(const SimplicialSetFin& k, const SimplicialSetFin& l);

struct Product {
  SimplicialSetFin set;
  SimplicialMap first;
  SimplicialMap second;
  /// Normal form of the pair (a, b) of equal-dimension simplices.
  Simplex pair(const Simplex& a, const Simplex& b) const;

  BisimplicialSetFin bi;
  std::shared_ptr<const Diagonal> diagonal;
  int right_count = 0;  // generators of the second factor
};

Product product(const SimplicialSetFin& k, const SimplicialSetFin& l);
/// f × g : K × L -> K' × L'.
SimplicialMap product_map(const Product& source, const Product& target,
                          const SimplicialSetFin& k2, const SimplicialSetFin& l2,
                          const SimplicialMap& f, const SimplicialMap& g);

/// All simplicial maps K -> L, generators assigned in dimension order with
/// pruning on face compatibility. Throws SizeBoundExceeded when more than
/// `bound` candidate assignments would be tried.
std::vector<SimplicialMap> hom_enumerate(const SimplicialSetFin& k, const SimplicialSetFin& l,
                                         long long bound = max_hom_enumeration());

/// Backtracking search for an isomorphism K -> L.
std::optional<SimplicialMap> find_isomorphism(const SimplicialSetFin& k, const SimplicialSetFin& l);

struct Quotient {
  SimplicialSetFin set;
  SimplicialMap projection;
  std::vector<Simplex> representatives;  // one nondegenerate source simplex per quotient generator
};

/// The quotient of B by the smallest simplicial equivalence relation
/// identifying each given pair (pairs must have equal dimension). Computed
/// levelwise by union-find up to the top dimension of B; each class is
/// named after its least member.
Quotient coequalize(const SimplicialSetFin& b, const std::vector<std::pair<Simplex, Simplex>>& pairs);

}  // namespace uht
