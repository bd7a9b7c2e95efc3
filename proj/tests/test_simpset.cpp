#include "doctest.h"
#include "uht/simpset.hpp"

using namespace uht;

namespace {

std::vector<int> cell_counts(const SimplicialSetFin& k) {
  std::vector<int> counts(k.dim() + 1, 0);
  for (const auto& g : k.generators()) ++counts[g.dim];
  return counts;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("monotone map helpers") {
  CHECK(coface_op(2, 1) == OpMap{0, 2});
  CHECK(codegeneracy_op(1, 0) == OpMap{0, 0, 1});
  CHECK(word_of(OpMap{0, 0, 1, 1}) == std::vector<int>{2, 0});
  CHECK(surjection_from_word({2, 0}, 1) == OpMap{0, 0, 1, 1});
  CHECK(surjections(3, 1).size() == 3);
  CHECK(monotone_maps(1, 1).size() == 3);
  auto [e, m] = epi_mono(OpMap{1, 1, 3});
  CHECK(e == OpMap{0, 0, 1});
  CHECK(m == OpMap{1, 3});
}

TEST_CASE("standard simplices have binomial cell counts") {
  for (int n = 0; n <= 4; ++n) {
    auto d = standard_simplex(n);
    auto counts = cell_counts(d);
    for (int k = 0; k <= n; ++k) CHECK(counts[k] == binomial(n + 1, k + 1));
    CHECK(d.check_identities().empty());
  }
  auto d2 = standard_simplex(2);
  CHECK(cell_counts(d2) == std::vector<int>{3, 3, 1});
  auto b2 = boundary(2);
  CHECK(cell_counts(b2) == std::vector<int>{3, 3});
  CHECK(b2.check_identities().empty());
}

TEST_CASE("normal form application matches hand computation") {
  auto d2 = standard_simplex(2);
  int top = *d2.find("012");
  Simplex s = d2.simplex(top);
  // d1 of the 2-cell is the edge 02
  CHECK(d2.name(d2.face(1, s)) == "02");
  // s0 d0 of 012 is s0(12)
  Simplex t = d2.degeneracy(0, d2.face(0, s));
  CHECK(d2.name(t) == "s0(12)");
  // d1 s0 (12) = 12
  CHECK(d2.name(d2.face(1, t)) == "12");
  CHECK(d2.name(d2.face(0, t)) == "12");
  CHECK(d2.name(d2.face(2, t)) == "s0(1)");
}

TEST_CASE("level sizes match enumeration") {
  auto d2 = standard_simplex(2);
  for (int m = 0; m <= 4; ++m) CHECK(d2.level(m).size() == d2.level_size(m));
  // level m of Δ2 is the set of monotone maps [m] -> [2]
  CHECK(d2.level(3).size() == monotone_maps(3, 2).size());
}

TEST_CASE("invalid face data is reported") {
  std::vector<Generator> gens{{"a", 0, {}}, {"b", 0, {}}, {"e", 1, {Simplex{{0}, 0}}}};
  SimplicialSetFin k(gens);
  CHECK_FALSE(k.check().empty());
  std::vector<Generator> dup{{"a", 0, {}}, {"a", 0, {}}};
  CHECK_THROWS_AS(SimplicialSetFin{dup}, InvalidInput);
}

TEST_CASE("products") {
  auto d0 = standard_simplex(0);
  auto d1 = standard_simplex(1);
  auto p = product(d1, d1);
  CHECK(cell_counts(p.set) == std::vector<int>{4, 5, 2});
  CHECK(p.set.check_identities().empty());
  CHECK(check_map(p.set, d1, p.first).empty());
  CHECK(check_map(p.set, d1, p.second).empty());

  auto unit = product(d0, d1);
  CHECK(find_isomorphism(unit.set, d1).has_value());

  auto b1 = boundary(1);
  auto pb = product(b1, b1);
  CHECK(cell_counts(pb.set) == std::vector<int>{4});

  // Δ1 × Δ2 has three nondegenerate 3-cells (shuffles)
  auto p12 = product(d1, standard_simplex(2));
  CHECK(cell_counts(p12.set) == std::vector<int>{6, 12, 10, 3});
  CHECK(p12.set.check_identities().empty());
}

TEST_CASE("product universal property on hom counts") {
  auto d1 = standard_simplex(1);
  auto b2 = boundary(2);
  auto p = product(d1, b2);
  // hom(Δ1, K × L) = hom(Δ1, K) × hom(Δ1, L)
  auto lhs = hom_enumerate(d1, p.set);
  auto a = hom_enumerate(d1, d1);
  auto b = hom_enumerate(d1, b2);
  CHECK(lhs.size() == a.size() * b.size());
  // commutativity up to isomorphism
  auto q = product(b2, d1);
  CHECK(find_isomorphism(p.set, q.set).has_value());
}

TEST_CASE("hom enumeration") {
  auto d0 = standard_simplex(0);
  auto d1 = standard_simplex(1);
  auto b2 = boundary(2);
  CHECK(hom_enumerate(d0, b2).size() == 3);
  CHECK(hom_enumerate(d1, d1).size() == 3);
  CHECK(hom_enumerate(b2, d0).size() == 1);
  // maps Δ1 -> Δ2 are monotone maps [1] -> [2]
  CHECK(hom_enumerate(d1, standard_simplex(2)).size() == monotone_maps(1, 2).size());
  for (const auto& f : hom_enumerate(b2, standard_simplex(2))) CHECK(check_map(b2, standard_simplex(2), f).empty());
  CHECK_THROWS_AS(hom_enumerate(standard_simplex(3), standard_simplex(3), 5), SizeBoundExceeded);
}

TEST_CASE("delta maps") {
  auto f = delta_map({0, 0}, 1);
  CHECK(check_map(standard_simplex(1), standard_simplex(1), f).empty());
  auto g = delta_map({0, 2}, 2);
  CHECK(is_monomorphism(g));
  CHECK(check_map(standard_simplex(1), standard_simplex(2), g).empty());
}

TEST_CASE("diagonal of a constant bisimplicial set") {
  auto k = boundary(2);
  auto d0 = standard_simplex(0);
  auto vert_const = external_product(k, d0);
  Diagonal dg(vert_const);
  CHECK(find_isomorphism(dg.set(), k).has_value());
  auto hor_const = external_product(d0, k);
  Diagonal dh(hor_const);
  CHECK(find_isomorphism(dh.set(), k).has_value());
  CHECK(vert_const.check().empty());
}

TEST_CASE("coequalize glues two vertices") {
  auto b1 = boundary(1);
  auto q = coequalize(b1, {{b1.simplex(0), b1.simplex(1)}});
  CHECK(q.set.num_generators() == 1);
  auto d1 = standard_simplex(1);
  auto circle = coequalize(d1, {{d1.simplex(0), d1.simplex(1)}});
  CHECK(cell_counts(circle.set) == std::vector<int>{1, 1});
  CHECK(circle.set.check_identities().empty());
  CHECK(check_map(d1, circle.set, circle.projection).empty());
  // collapsing an edge of Δ2 to a point leaves a 2-cell with a degenerate face
  auto d2 = standard_simplex(2);
  auto col = coequalize(d2, {{d2.simplex(*d2.find("01")), d2.degeneracy(0, d2.simplex(*d2.find("0")))}});
  CHECK(col.set.check_identities().empty());
  CHECK(cell_counts(col.set) == std::vector<int>{2, 2, 1});
}
