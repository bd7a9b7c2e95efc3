#include <set>

#include "doctest.h"
#include "uht/site.hpp"

using namespace uht;

namespace {

CatPtr circle_poset() {
  return poset_category({"A1", "A2", "A3", "I12", "I13", "I23", "S"},
                        {{"I12", "A1"}, {"I12", "A2"}, {"I13", "A1"}, {"I13", "A3"}, {"I23", "A2"}, {"I23", "A3"},
                         {"A1", "S"}, {"A2", "S"}, {"A3", "S"}});
}

CatPtr interval_poset() {
  return poset_category({"U1", "U2", "V", "X"}, {{"V", "U1"}, {"V", "U2"}, {"U1", "X"}, {"U2", "X"}});
}

SiteData with_cover(const CatPtr& c, const std::string& x, const std::vector<std::string>& family) {
  std::vector<std::vector<std::vector<std::string>>> covers(c->num_objects());
  covers[c->object_index(x)].push_back(family);
  return make_site(c, covers);
}

SiteData circle_site() { return with_cover(circle_poset(), "S", {"A1<S", "A2<S", "A3<S"}); }
SiteData interval_site() { return with_cover(interval_poset(), "X", {"U1<X", "U2<X"}); }

const std::vector<int>& listed_family(const SiteData& s, int x) {
  for (const auto& f : s.covers[x])
    if (!f.synthesized) return f.members;
  throw std::logic_error("no listed family");
}

std::multiset<std::string> represented(const CatPtr& c, const std::vector<Representation>& reps) {
  std::multiset<std::string> out;
  for (const auto& r : reps) out.insert(c->object(r.object));
  return out;
}

// meet in a poset given by its hom sets; empty when there is no lower bound
std::optional<int> meet(const FinCategory& c, const std::vector<int>& objs) {
  std::vector<int> lower;
  for (int z = 0; z < c.num_objects(); ++z) {
    bool below = true;
    for (int o : objs) below = below && !c.hom(z, o).empty();
    if (below) lower.push_back(z);
  }
  for (int z : lower) {
    bool greatest = true;
    for (int w : lower) greatest = greatest && !c.hom(w, z).empty();
    if (greatest) return z;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("sites synthesize identity families and validate axioms") {
  SiteData s = circle_site();
  int top = s.base->object_index("S");
  REQUIRE(s.covers[top].size() == 2);
  CHECK_FALSE(s.covers[top][0].synthesized);
  CHECK(s.covers[top][1].synthesized);
  for (int x = 0; x < s.base->num_objects(); ++x)
    if (x != top) CHECK(s.covers[x].size() == 1);
  CHECK(validate_site(s).pass());
  CHECK(validate_site(interval_site()).pass());

  SiteData lopsided = with_cover(interval_poset(), "X", {"U1<X"});
  SiteAxioms ax = validate_site(lopsided);
  CHECK_FALSE(ax.pullback_stable);
  CHECK_FALSE(ax.problems.empty());

  CHECK_THROWS_AS(with_cover(interval_poset(), "X", {"V<U1"}), InvalidInput);
}

TEST_CASE("the cover predicate") {
  SiteData s = interval_site();
  const CatPtr& c = s.base;
  int x = c->object_index("X"), u1 = c->object_index("U1"), u2 = c->object_index("U2");
  Presheaf rx = yoneda(c, x);
  CHECK(is_cover(rx, rx, identity_presheaf_map(rx), s).pass);

  Presheaf r1 = yoneda(c, u1), r2 = yoneda(c, u2);
  Cocone both = coproduct({r1, r2});
  std::vector<PresheafMap> legs;
  for (int u : {u1, u2}) {
    Presheaf ru = yoneda(c, u);
    PresheafMap m;
    for (int z = 0; z < c->num_objects(); ++z) {
      std::vector<int> comp;
      for (int v : c->hom(z, u)) {
        int w = c->compose(c->morphism_index(c->object(u) + "<X"), v);
        const auto& h = c->hom(z, x);
        comp.push_back(static_cast<int>(std::find(h.begin(), h.end(), w) - h.begin()));
      }
      m.components.push_back(comp);
    }
    legs.push_back(m);
  }
  PresheafDiagram pair{discrete_category({"0", "1"}), {r1, r2}, {identity_presheaf_map(r1), identity_presheaf_map(r2)}};
  auto to_x = colimit_factorization(pair, both, rx, legs);
  REQUIRE(to_x);
  CHECK(is_cover(both.apex, rx, *to_x, s).pass);

  CoverVerdict one = is_cover(r1, rx, legs[0], s);
  CHECK_FALSE(one.pass);
  // U2 only has its identity family, and U2 -> X does not factor through U1
  CHECK(one.witness_object == "U2");
  CHECK(one.witness_section == "U2<X");

  // stable under precomposition with an isomorphism
  CHECK(is_cover(both.apex, rx, compose(*to_x, identity_presheaf_map(both.apex)), s).pass);
}

TEST_CASE("Čech nerves") {
  SiteData s = interval_site();
  const CatPtr& c = s.base;
  int x = c->object_index("X");

  AugmentedObject single = cech_nerve(s, x, {c->identity(x)}, 3);
  CHECK_FALSE(single.truncation);
  SimplicialPresheaf rx = discrete_embed(yoneda(c, x));
  CHECK(is_simplicial_presheaf_isomorphism(single.u, rx, single.augmentation));

  AugmentedObject two = cech_nerve(s, x, listed_family(s, x), 3);
  CHECK(two.u.check().empty());
  CHECK(check_simplicial_presheaf_map(two.u, rx, two.augmentation).empty());
  REQUIRE(two.truncation);
  auto l1 = representable_decomposition(level_presheaf(two.u, 1));
  REQUIRE(l1);
  CHECK(represented(c, *l1) == std::multiset<std::string>{"V", "V", "U1", "U2"});

  SiteData cs = circle_site();
  const FinCategory& cc = *cs.base;
  int top = cc.object_index("S");
  const auto& fam = listed_family(cs, top);
  AugmentedObject circle = cech_nerve(cs, top, fam, 3);
  auto l2 = representable_decomposition(level_presheaf(circle.u, 2));
  REQUIRE(l2);
  std::multiset<std::string> expected;
  for (int a : fam)
    for (int b : fam)
      for (int d : fam)
        if (auto m = meet(cc, {cc.src(a), cc.src(b), cc.src(d)})) expected.insert(cc.object(*m));
  CHECK(represented(cs.base, *l2) == expected);
  CHECK(expected.size() == 21);
}

TEST_CASE("Čech nerves are hypercovers") {
  for (const SiteData& s : {interval_site(), circle_site()})
    for (int x = 0; x < s.base->num_objects(); ++x)
      for (const auto& fam : s.covers[x]) {
        AugmentedObject u = cech_nerve(s, x, fam.members, 3);
        HypercoverReport r = is_hypercover(u, s, 3);
        CHECK(r.pass);
        for (bool iso : r.matching_iso) CHECK(iso);
      }
  SiteData s = interval_site();
  int x = s.base->object_index("X");
  CHECK_THROWS_AS(is_hypercover(cech_nerve(s, x, listed_family(s, x), 2), s, 3), TruncationTooSmall);
}

TEST_CASE("hypercover counterexamples") {
  SiteData s = interval_site();
  const CatPtr& c = s.base;
  int x = c->object_index("X");
  // the union of rU1 and rU2 inside rX is not a coproduct of representables
  Presheaf uni{c, {}, {}};
  for (int z = 0; z < c->num_objects(); ++z)
    uni.sections.push_back(c->object(z) == "X" ? std::vector<std::string>{} : std::vector<std::string>{"*"});
  for (int f = 0; f < c->num_morphisms(); ++f)
    uni.restrict.push_back(c->object(c->dst(f)) == "X" ? std::vector<int>{} : std::vector<int>{0});
  REQUIRE(uni.check().empty());
  AugmentedObject bad{discrete_embed(uni), x, {}, {}};
  for (int z = 0; z < c->num_objects(); ++z) {
    SimplicialMap m;
    if (!uni.sections[z].empty()) m.images.push_back(Simplex{{0}, 0});
    bad.augmentation.components.push_back(m);
  }
  HypercoverReport r = is_hypercover(bad, s, 1);
  CHECK_FALSE(r.pass);
  REQUIRE(r.first_bad_level);
  CHECK(*r.first_bad_level == 0);

  // rX with extra loops over U1 and U2: the degree-1 matching map refines strictly
  SimplicialPresheaf loops{c, {}, {}};
  auto below = [&](int z, const char* u) { return !c->hom(z, c->object_index(u)).empty(); };
  for (int z = 0; z < c->num_objects(); ++z) {
    std::vector<Generator> g{{"w", 0, {}}};
    if (below(z, "U1")) g.push_back({"e1", 1, {Simplex{{0}, 0}, Simplex{{0}, 0}}});
    if (below(z, "U2")) g.push_back({"e2", 1, {Simplex{{0}, 0}, Simplex{{0}, 0}}});
    loops.values.emplace_back(g);
  }
  for (int f = 0; f < c->num_morphisms(); ++f) {
    const auto& src = loops.values[c->src(f)];
    SimplicialMap m;
    for (const auto& g : loops.values[c->dst(f)].generators()) m.images.push_back(src.simplex(*src.find(g.id)));
    loops.restrictions.push_back(m);
  }
  REQUIRE(loops.check().empty());
  AugmentedObject refine{loops, x, {}, TruncationTag{1, 0}};
  for (int z = 0; z < c->num_objects(); ++z) {
    SimplicialMap m;
    for (const auto& g : loops.values[z].generators()) m.images.push_back(Simplex{OpMap(g.dim + 1, 0), 0});
    refine.augmentation.components.push_back(m);
  }
  LevelMap m1 = relative_matching(refine, 1);
  CHECK_FALSE(is_presheaf_isomorphism(m1.source, m1.target, m1.map));
  HypercoverReport rr = is_hypercover(refine, s, 1);
  CHECK(rr.pass);
  CHECK_FALSE(rr.matching_iso[0]);
}

TEST_CASE("relations of finite sites") {
  CatPtr c = interval_poset();
  std::vector<std::vector<std::vector<std::string>>> ids;
  for (int x = 0; x < c->num_objects(); ++x) ids.push_back({{"id_" + c->object(x)}});
  auto trivial = relations(make_site(c, ids), 3);
  CHECK(trivial.size() == 4);
  for (const auto& r : trivial) {
    CHECK(r.objectwise.pass);
    CHECK(r.realized.pass);
  }

  auto circle = relations(circle_site(), 3);
  REQUIRE(circle.size() == 1);
  CHECK(circle[0].realized.source.to_string() == "H0=Z, H1=Z");
  CHECK_FALSE(circle[0].realized.pass);
  int top = circle_poset()->object_index("S");
  CHECK(circle[0].cech.u.values[top].num_generators() == 0);

  auto interval = relations(interval_site(), 3);
  REQUIRE(interval.size() == 1);
  CHECK(interval[0].realized.pass);
  // away from the covered object the relation is already an equivalence
  const auto& ov = interval[0].objectwise;
  for (std::size_t z = 0; z < ov.objects.size(); ++z) CHECK(ov.verdicts[z].pass == (ov.objects[z] != "X"));
}
