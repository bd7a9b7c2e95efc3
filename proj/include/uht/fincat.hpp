#pragma once

// Finite categories stored as explicit composition tables, plus the
// constructions built on them: opposites, under-categories, Grothendieck
// constructions, nerves and chain-finiteness.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uht/common.hpp"
#include "uht/simpset.hpp"

namespace uht {

struct MorphismSpec {
  std::string id;
  std::string src;
  std::string dst;
};

/// Raw, unvalidated category data as it appears in a category document.
/// `compose` holds triples (g, f, g∘f). Identities may be left out; missing
/// ones are synthesized as "id_<obj>", and composites with identities are
/// always implied.
struct CategorySpec {
  std::vector<std::string> objects;
  std::vector<MorphismSpec> morphisms;
  std::vector<std::array<std::string, 3>> compose;
  std::map<std::string, std::string> identities;
};

/// Every axiom violation found in `spec`; empty when it describes a category.
std::vector<std::string> check_category(const CategorySpec& spec);

class FinCategory;
using CatPtr = std::shared_ptr<const FinCategory>;

class FinCategory {
 public:
  /// Throws InvariantViolation listing every problem from check_category.
  static CatPtr make(const CategorySpec& spec);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }

  const std::string& object(int x) const { return objects_[x]; }
  const std::string& morphism(int m) const { return morphisms_[m].id; }
  int src(int m) const { return src_[m]; }
  int dst(int m) const { return dst_[m]; }
  int identity(int x) const { return identity_[x]; }
  bool is_identity(int m) const { return identity_[src_[m]] == m; }

  /// g∘f, or -1 when dst(f) != src(g).
  int compose(int g, int f) const { return table_[g * num_morphisms() + f]; }

  std::optional<int> find_object(const std::string& id) const;
  std::optional<int> find_morphism(const std::string& id) const;
  int object_index(const std::string& id) const;    // throws InvalidInput
  int morphism_index(const std::string& id) const;  // throws InvalidInput

  /// Morphisms x -> y, ascending by id.
  const std::vector<int>& hom(int x, int y) const { return hom_[x * num_objects() + y]; }

  CategorySpec to_spec() const;

 private:
  FinCategory() = default;

  std::vector<std::string> objects_;
  std::vector<MorphismSpec> morphisms_;
  std::vector<int> src_, dst_, identity_, table_;
  std::vector<std::vector<int>> hom_;
  std::map<std::string, int> object_index_, morphism_index_;
};

// Fixture constructors used throughout tests and the shipped corpus.
CatPtr point_category();
/// a -f-> b
CatPtr arrow_category();
/// b <-f- a -g-> c
CatPtr span_category();
/// Poset on `objects` generated by `less` pairs (x, y) meaning x < y; the
/// transitive closure is taken. Non-identity morphisms are named "x<y".
CatPtr poset_category(const std::vector<std::string>& objects,
                      const std::vector<std::pair<std::string, std::string>>& less);
/// 0 < 1 < ... < n-1
CatPtr linear_category(int n);
CatPtr discrete_category(const std::vector<std::string>& objects);
/// One object with a non-identity idempotent e∘e = e.
CatPtr idempotent_category();

struct FunctorData {
  CatPtr source;
  CatPtr target;
  std::vector<int> on_objects;
  std::vector<int> on_morphisms;

  std::vector<std::string> check() const;
  bool operator==(const FunctorData& other) const;
};

FunctorData identity_functor(const CatPtr& c);
FunctorData compose_functors(const FunctorData& g, const FunctorData& f);

/// A covariant set-valued functor on `index`: finite sets per object and a
/// function per morphism.
struct SetFunctor {
  CatPtr index;
  std::vector<std::vector<std::string>> sets;
  std::vector<std::vector<int>> functions;  // functions[u][i] = index in sets[dst(u)]

  std::vector<std::string> check() const;
};

CatPtr opposite(const CatPtr& c);

struct UnderCategory {
  CatPtr category;
  FunctorData forget;
};

/// Objects are the morphisms alpha -> x; a morphism (f: alpha->x) -> (g: alpha->y)
/// is h: x -> y with h∘f = g, named "h@f".
UnderCategory under_category(const CatPtr& c, int alpha);

struct GrothendieckConstruction {
  CatPtr category;
  FunctorData projection;
  std::vector<std::pair<int, int>> pairs;  // object index -> (i, element index)
};

/// Objects (i, s) with s in theta(i), named "(i,s)"; morphisms (u, s) for u: i -> j.
GrothendieckConstruction grothendieck(const SetFunctor& theta);

struct ChainFiniteness {
  bool chain_finite = true;
  int max_length = 0;                 // valid when chain_finite
  std::vector<std::string> witness;   // non-identity cycle when not chain finite
};

ChainFiniteness chain_finiteness(const FinCategory& c);

struct Nerve {
  SimplicialSetFin set;
  std::optional<TruncationTag> truncation;
};

/// Nerve with k-simplices the composable chains x0 -> ... -> xk. Without a
/// degree bound the category must be chain-finite (NotChainFinite otherwise);
/// with one, only chains up to that length are kept and the cut is recorded.
Nerve nerve(const CatPtr& c, std::optional<int> max_degree = std::nullopt);

/// A chain of composable morphisms. With Orientation::Backward it reads
/// c_p -> ... -> c_0 as in simplicial replacement (morphisms[t-1] : objects[t]
/// -> objects[t-1]); with Orientation::Forward it reads x_0 -> ... -> x_k as in
/// the nerve (morphisms[t-1] : objects[t-1] -> objects[t]). Face i always
/// drops objects[i].
enum class Orientation { Forward, Backward };

struct Chain {
  std::vector<int> objects;
  std::vector<int> morphisms;

  int length() const { return static_cast<int>(morphisms.size()); }
  auto operator<=>(const Chain&) const = default;
};

/// Drops the i-th object of the chain (composing when 0 < i < length).
Chain chain_face(const FinCategory& c, const Chain& chain, int i, Orientation o);

/// Removes identity morphisms. Returns the reduced chain and the surjection
/// [length] -> [reduced length] on vertices that exhibits the input as a
/// degeneracy of the reduced chain.
std::pair<Chain, std::vector<int>> normalize_chain(const FinCategory& c, const Chain& chain);

/// All chains of non-identity morphisms of the given length (length 0: objects).
std::vector<Chain> nondegenerate_chains(const FinCategory& c, int length, Orientation o);

std::string chain_id(const FinCategory& c, const Chain& chain);

}  // namespace uht
