#include "doctest.h"
#include "uht/hocolim.hpp"
#include "uht/resolution.hpp"

using namespace uht;

namespace {

CatPtr poset3() { return poset_category({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

SimplicialMap by_ids(const SimplicialSetFin& k, const SimplicialSetFin& l,
                     const std::vector<std::pair<std::string, std::string>>& pairs) {
  SimplicialMap m;
  m.images.resize(k.num_generators());
  for (const auto& [a, b] : pairs) m.images[*k.find(a)] = l.simplex(*l.find(b));
  return m;
}

// Δ1 ∨ Δ1 with vertices 0, 1, 2
SimplicialSetFin horn() {
  return SimplicialSetFin({{"0", 0, {}},
                           {"1", 0, {}},
                           {"2", 0, {}},
                           {"01", 1, {Simplex{{0}, 1}, Simplex{{0}, 0}}},
                           {"12", 1, {Simplex{{0}, 2}, Simplex{{0}, 1}}}});
}

SimplicialPresheaf rep(const CatPtr& c, int x) { return discrete_embed(yoneda(c, x)); }

SimplicialPresheaf sum(const SimplicialPresheaf& a, const SimplicialPresheaf& b) {
  return coproduct(std::vector<const SimplicialPresheaf*>{&a, &b}, std::vector<std::string>{"0", "1"}).result;
}

bool objectwise_isomorphic(const SimplicialPresheaf& a, const SimplicialPresheaf& b) {
  if (a.values.size() != b.values.size()) return false;
  for (std::size_t z = 0; z < a.values.size(); ++z)
    if (!find_isomorphism(a.values[z], b.values[z])) return false;
  return true;
}

}  // namespace

TEST_CASE("standard resolutions satisfy the resolution invariants") {
  for (const auto& c : {point_category(), arrow_category(), span_category(), poset3()}) {
    ResolutionData r = standard_resolution_data(c, 2);
    CHECK(r.check().empty());
    for (int x = 0; x < c->num_objects(); ++x) CHECK(standard_resolution(c, x, 3).check().empty());
  }
}

TEST_CASE("standard resolution levels") {
  auto pt = standard_resolution(point_category(), 0, 3);
  for (int n = 0; n <= 3; ++n) CHECK(find_isomorphism(pt.objects[n].values[0], standard_simplex(n)));

  CatPtr arrow = arrow_category();
  int a = arrow->object_index("a"), b = arrow->object_index("b");
  auto gb = standard_resolution(arrow, b, 2);
  for (int n = 0; n <= 2; ++n) CHECK(find_isomorphism(gb.objects[n].values[a], standard_simplex(n)));
  auto ga = standard_resolution(arrow, a, 1);
  CHECK(ga.objects[1].values[b].num_generators() == 0);

  // induced maps agree with the generating maps and compose
  OpMap theta{0, 0, 2};
  OpMap sigma = codegeneracy_op(1, 0);
  OpMap delta = coface_op(2, 1);
  CHECK(compose_ops(delta, sigma) == theta);
  CHECK(gb.induced(theta, 2) == compose(gb.objects[2], gb.cofaces[2][1], gb.codegeneracies[1][0]));
}

TEST_CASE("a broken cosimplicial identity is reported") {
  auto x = standard_resolution(point_category(), 0, 2);
  std::swap(x.cofaces[2][0], x.cofaces[2][1]);
  CHECK_FALSE(x.check().empty());
}

TEST_CASE("latching objects of the standard resolution") {
  CatPtr arrow = arrow_category();
  int b = arrow->object_index("b");
  auto x = standard_resolution(arrow, b, 3);
  LatchingReport rep = latching_report(x);
  CHECK(rep.sufficient_only);
  CHECK(rep.pass);
  REQUIRE(rep.degrees.size() == 4);
  CHECK(rep.degrees[0].latching.total_generators() == 0);
  auto rb = yoneda(arrow, b);
  for (int n = 1; n <= 3; ++n) {
    const auto& d = rep.degrees[n];
    CHECK(d.injective);
    CHECK(d.split);
    // rX ⊗ ∂Δ^n, counted objectwise
    for (int z = 0; z < 2; ++z)
      CHECK(d.latching.values[z].num_generators() == rb.size(z) * boundary(n).num_generators());
  }
  // n = 1: two copies of Γ^0
  const auto& one = rep.degrees[1];
  auto two = sum(x.objects[0], x.objects[0]);
  CHECK(objectwise_isomorphic(one.latching, two));
}

TEST_CASE("tensoring a cosimplicial object with simplicial sets") {
  for (const auto& c : {point_category(), arrow_category()}) {
    auto x = standard_resolution(c, c->num_objects() - 1, 2);
    Coend t0 = tensor_with(x, standard_simplex(0));
    CHECK(objectwise_isomorphic(t0.result, x.objects[0]));
    Coend tb = tensor_with(x, boundary(1));
    CHECK(objectwise_isomorphic(tb.result, sum(x.objects[0], x.objects[0])));
  }
  auto pt = standard_resolution(point_category(), 0, 3);
  Coend t1 = tensor_with(pt, standard_simplex(1));
  CHECK(same_homology(t1.result.values[0], standard_simplex(1), 2));
  Coend t2 = tensor_with(pt, boundary(2));
  CHECK(homology(t2.result.values[0]).to_string() == "H0=Z, H1=Z");
  CHECK_THROWS_AS(tensor_with(standard_resolution(point_category(), 0, 1), standard_simplex(2)), TruncationTooSmall);
}

TEST_CASE("tensoring preserves the pushout square of the triangle boundary") {
  CatPtr arrow = arrow_category();
  auto x = standard_resolution(arrow, arrow->object_index("b"), 2);
  SimplicialSetFin e = boundary(1), i = standard_simplex(1), l = horn(), s = boundary(2);
  SimplicialMap e_to_i = by_ids(e, i, {{"0", "0"}, {"1", "1"}});
  SimplicialMap e_to_l = by_ids(e, l, {{"0", "0"}, {"1", "2"}});
  SimplicialMap i_to_s = by_ids(i, s, {{"0", "0"}, {"1", "2"}, {"01", "02"}});
  SimplicialMap l_to_s = by_ids(l, s, {{"0", "0"}, {"1", "1"}, {"2", "2"}, {"01", "01"}, {"12", "12"}});
  REQUIRE(check_map(i, s, i_to_s).empty());
  REQUIRE(check_map(l, s, l_to_s).empty());

  Coend te = tensor_with(x, e), ti = tensor_with(x, i), tl = tensor_with(x, l), ts = tensor_with(x, s);
  CatPtr span = span_category();  // b <-f- a -g-> c
  SPDiagram d{span, arrow, {}, {}};
  d.values.resize(3);
  d.maps.resize(span->num_morphisms());
  d.values[span->object_index("a")] = te.result;
  d.values[span->object_index("b")] = ti.result;
  d.values[span->object_index("c")] = tl.result;
  for (int o = 0; o < 3; ++o) d.maps[span->identity(o)] = identity_simplicial_presheaf_map(d.values[o]);
  d.maps[span->morphism_index("f")] = tensor_with_map(x, e, te, i, ti, e_to_i);
  d.maps[span->morphism_index("g")] = tensor_with_map(x, e, te, l, tl, e_to_l);
  REQUIRE(d.check().empty());
  SimplicialColimit colim = simplicial_colimit(d);

  std::vector<SimplicialPresheafMap> legs(3);
  legs[span->object_index("b")] = tensor_with_map(x, i, ti, s, ts, i_to_s);
  legs[span->object_index("c")] = tensor_with_map(x, l, tl, s, ts, l_to_s);
  legs[span->object_index("a")] = compose(ts.result, legs[span->object_index("b")], d.maps[span->morphism_index("f")]);
  auto factor = colimit_factor(colim, ts.result, legs);
  REQUIRE(factor);
  CHECK(is_simplicial_presheaf_isomorphism(colim.result, ts.result, *factor));
}

TEST_CASE("realization of representables is the degree-zero object") {
  for (const auto& c : {point_category(), arrow_category(), span_category(), poset3()}) {
    ResolutionData r = standard_resolution_data(c, 1);
    for (int x = 0; x < c->num_objects(); ++x) {
      RepresentableCheck rc = re_representable_check(r, x);
      CHECK(rc.isomorphism);
    }
  }
}

TEST_CASE("realization against the standard resolution recovers F") {
  ResolutionData pt = standard_resolution_data(point_category(), 3);
  for (const auto& k : {standard_simplex(0), standard_simplex(1), boundary(2), standard_simplex(2)}) {
    Coend re = coend_over_C(pt, constant_simplicial(point_category(), k));
    CHECK(same_homology(re.result.values[0], k, 2));
    CHECK(find_isomorphism(re.result.values[0], k));
  }
  CatPtr arrow = arrow_category();
  ResolutionData ra = standard_resolution_data(arrow, 2);
  SimplicialPresheaf f = sum(rep(arrow, 0), constant_simplicial(arrow, standard_simplex(1)));
  Coend re = coend_over_C(ra, f);
  CHECK(objectwise_isomorphic(re.result, f));

  Coend empty = coend_over_C(ra, empty_simplicial(arrow));
  CHECK(empty.result.total_generators() == 0);
  CHECK_THROWS_AS(coend_over_C(standard_resolution_data(arrow, 1), constant_simplicial(arrow, standard_simplex(2))),
                  TruncationTooSmall);
}

TEST_CASE("Sing of the standard resolution") {
  ResolutionData pt = standard_resolution_data(point_category(), 3);
  for (const auto& w : {standard_simplex(1), boundary(2), standard_simplex(2)}) {
    SingResult s = sing(pt, constant_simplicial(point_category(), w));
    CHECK(s.result.check().empty());
    CHECK(find_isomorphism(s.result.values[0], w));
  }
  // maps rc ⊗ Δ^n -> W are the n-simplices of W(c)
  CatPtr arrow = arrow_category();
  ResolutionData ra = standard_resolution_data(arrow, 2);
  SimplicialPresheaf w = sum(constant_simplicial(arrow, boundary(1)), rep(arrow, 1));
  SingResult s = sing(ra, w);
  CHECK(s.result.check().empty());
  for (int c = 0; c < 2; ++c)
    for (int n = 0; n <= 2; ++n) CHECK(s.homs[c][n].size() == w.values[c].level_size(n));
  SingResult t = sing(ra, terminal_simplicial(arrow));
  for (int c = 0; c < 2; ++c) CHECK(find_isomorphism(t.result.values[c], standard_simplex(0)));
}

TEST_CASE("the realization and singular functors are adjoint") {
  auto collapsing = [] {
    CatPtr arrow = arrow_category();
    int a = arrow->object_index("a"), b = arrow->object_index("b");
    SimplicialPresheaf f{arrow, std::vector<SimplicialSetFin>(2), {}};
    f.values[a] = standard_simplex(0);
    f.values[b] = standard_simplex(1);
    f.restrictions.resize(arrow->num_morphisms());
    f.restrictions[arrow->identity(a)] = identity_map(f.values[a]);
    f.restrictions[arrow->identity(b)] = identity_map(f.values[b]);
    SimplicialMap collapse;
    for (const auto& g : f.values[b].generators()) collapse.images.push_back(Simplex{OpMap(g.dim + 1, 0), 0});
    f.restrictions[arrow->morphism_index("f")] = collapse;
    return f;
  };
  for (const auto& c : {point_category(), arrow_category()}) {
    ResolutionData r = standard_resolution_data(c, 2);
    int x = c->num_objects() - 1;
    std::vector<SimplicialPresheaf> fs{rep(c, x), sum(rep(c, x), rep(c, 0)),
                                       c->num_objects() == 1 ? constant_simplicial(c, standard_simplex(1))
                                                             : collapsing()};
    std::vector<SimplicialPresheaf> ws{constant_simplicial(c, boundary(1)), constant_simplicial(c, standard_simplex(1))};
    for (const auto& f : fs)
      for (const auto& w : ws) {
        AdjunctionVerdict v = adjunction_check(r, f, w);
        CHECK(v.bijection);
        CHECK(v.natural_in_w);
        CHECK(v.natural_in_f);
        CHECK(v.pass);
        CHECK(v.lhs_count == static_cast<long long>(simplicial_presheaf_homs(f, w).size()));
      }
    AdjunctionVerdict term = adjunction_check(r, fs[0], terminal_simplicial(c));
    CHECK(term.pass);
    CHECK(term.lhs_count == 1);
    CHECK(term.rhs_count == 1);
    AdjunctionVerdict none = adjunction_check(r, empty_simplicial(c), ws[1]);
    CHECK(none.pass);
    CHECK(none.lhs_count == 1);
    CHECK(none.rhs_count == 1);
  }
}

TEST_CASE("adjunction enumeration honours the size bound") {
  ResolutionData r = standard_resolution_data(point_category(), 2);
  CHECK_THROWS_AS(adjunction_check(r, constant_simplicial(point_category(), standard_simplex(2)),
                                   constant_simplicial(point_category(), standard_simplex(2)), 3),
                  SizeBoundExceeded);
}
