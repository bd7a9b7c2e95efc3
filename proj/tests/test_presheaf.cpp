#include "doctest.h"
#include "uht/homology.hpp"
#include "uht/presheaf.hpp"

using namespace uht;

namespace {

Presheaf two_points(const CatPtr& c) { return constant_presheaf(c, {"p", "q"}); }

CatPtr poset3() { return poset_category({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

}  // namespace

TEST_CASE("yoneda") {
  auto pt = point_category();
  auto r = yoneda(pt, 0);
  CHECK(r.sections[0].size() == 1);
  auto arrow = arrow_category();
  auto rb = yoneda(arrow, arrow->object_index("b"));
  CHECK(rb.sections[arrow->object_index("a")] == std::vector<std::string>{"f"});
  CHECK(rb.sections[arrow->object_index("b")] == std::vector<std::string>{"id_b"});
  CHECK(rb.check().empty());
  auto p = poset3();
  auto rc = yoneda(p, p->object_index("c"));
  for (int x = 0; x < 3; ++x) CHECK(rc.size(x) == 1);
}

TEST_CASE("yoneda is fully faithful on fixtures") {
  for (auto c : {point_category(), arrow_category(), span_category(), poset3()})
    for (int x = 0; x < c->num_objects(); ++x)
      for (int y = 0; y < c->num_objects(); ++y)
        CHECK(presheaf_homs(yoneda(c, x), yoneda(c, y)).size() == c->hom(x, y).size());
}

TEST_CASE("colimits and limits") {
  auto arrow = arrow_category();
  int a = arrow->object_index("a"), b = arrow->object_index("b");
  auto ra = yoneda(arrow, a), rb = yoneda(arrow, b);
  auto rf = presheaf_homs(ra, rb);
  REQUIRE(rf.size() == 1);
  // pushout of rb <- ra -> rb: at a, f ~ f gives one section; at b, two
  auto po = pushout(ra, rb, rb, rf[0], rf[0]);
  CHECK(po.apex.size(a) == 1);
  CHECK(po.apex.size(b) == 2);
  CHECK(po.apex.check().empty());

  auto two = two_points(arrow);
  auto term = terminal_presheaf(arrow);
  auto to_t = presheaf_homs(two, term);
  auto rb_t = presheaf_homs(rb, term);
  auto pb = pullback(two, rb, term, to_t[0], rb_t[0]);
  for (int x = 0; x < 2; ++x) CHECK(pb.apex.size(x) == two.size(x) * rb.size(x));
  auto prod = product({two, rb});
  for (int x = 0; x < 2; ++x) CHECK(prod.apex.size(x) == pb.apex.size(x));

  // single object diagram
  auto single = coproduct({rb});
  CHECK(is_presheaf_isomorphism(rb, single.apex, single.legs[0]));
}

TEST_CASE("colimit universal property by exhaustive factorization") {
  auto span = span_category();
  int a = span->object_index("a");
  auto ra = yoneda(span, a);
  auto term = terminal_presheaf(span);
  auto two = two_points(span);
  auto f = presheaf_homs(ra, term)[0];
  auto co = pushout(ra, term, term, f, f);
  // cocones (g, h) on two with g∘f == h∘f correspond to maps out of the pushout
  int cocones = 0;
  for (const auto& g : presheaf_homs(term, two))
    for (const auto& h : presheaf_homs(term, two))
      if (compose(g, f) == compose(h, f)) ++cocones;
  CHECK(presheaf_homs(co.apex, two).size() == static_cast<std::size_t>(cocones));
}

TEST_CASE("category of elements") {
  auto pt = point_category();
  auto el = category_of_elements(two_points(pt));
  CHECK(el.category->num_objects() == 2);
  CHECK(el.category->num_morphisms() == 2);
  auto span = span_category();
  auto et = category_of_elements(terminal_presheaf(span));
  CHECK(et.category->num_objects() == span->num_objects());
  CHECK(et.category->num_morphisms() == span->num_morphisms());
  auto arrow = arrow_category();
  auto er = category_of_elements(yoneda(arrow, arrow->object_index("b")));
  // (b, id_b) is terminal
  int t = er.category->object_index("(b,id_b)");
  for (int o = 0; o < er.category->num_objects(); ++o) CHECK(er.category->hom(o, t).size() == 1);
}

TEST_CASE("canonical colimit identity") {
  for (auto c : {point_category(), arrow_category(), span_category(), poset3()}) {
    for (int x = 0; x < c->num_objects(); ++x) CHECK(canonical_colim_verify(yoneda(c, x)).pass);
    CHECK(canonical_colim_verify(terminal_presheaf(c)).pass);
    CHECK(canonical_colim_verify(empty_presheaf(c)).pass);
    CHECK(canonical_colim_verify(two_points(c)).pass);
  }
}

TEST_CASE("representability") {
  auto arrow = arrow_category();
  int b = arrow->object_index("b");
  auto rep = representability_check(yoneda(arrow, b));
  REQUIRE(rep.has_value());
  CHECK(rep->object == b);
  auto empty = representable_decomposition(empty_presheaf(arrow));
  REQUIRE(empty.has_value());
  CHECK(empty->empty());
  auto pt = point_category();
  auto dec = representable_decomposition(two_points(pt));
  REQUIRE(dec.has_value());
  CHECK(dec->size() == 2);
  CHECK_FALSE(representability_check(two_points(pt)).has_value());
  // the terminal presheaf on the span is connected without a terminal element
  CHECK_FALSE(representable_decomposition(terminal_presheaf(span_category())).has_value());
}

TEST_CASE("simplicial presheaves") {
  auto arrow = arrow_category();
  int a = arrow->object_index("a"), b = arrow->object_index("b");
  auto rb = yoneda(arrow, b);
  auto d = discrete_embed(rb);
  CHECK(d.check().empty());
  auto p0 = pi0_presheaf(d);
  for (int x = 0; x < 2; ++x) CHECK(p0.size(x) == rb.size(x));
  auto ra = yoneda(arrow, a);
  auto t = tensor_simplicial(discrete_embed(ra), standard_simplex(1));
  CHECK(t.result.check().empty());
  CHECK(find_isomorphism(t.result.values[a], standard_simplex(1)).has_value());
  CHECK(t.result.values[b].num_generators() == 0);
  auto unit = tensor_simplicial(d, standard_simplex(0));
  for (int x = 0; x < 2; ++x) CHECK(unit.result.values[x].num_generators() == d.values[x].num_generators());

  auto lvl = level_presheaf(t.result, 1);
  CHECK(lvl.check().empty());
  CHECK(lvl.size(a) == 3);

  // discrete_embed preserves coproducts
  auto co = coproduct({ra, rb});
  auto dra = discrete_embed(ra), drb = discrete_embed(rb);
  auto sco = coproduct(std::vector<const SimplicialPresheaf*>{&dra, &drb}, std::vector<std::string>{"0", "1"});
  auto dco = discrete_embed(co.apex);
  for (int x = 0; x < 2; ++x)
    CHECK(sco.result.values[x].num_generators() == dco.values[x].num_generators());

  auto id = identity_simplicial_presheaf_map(t.result);
  CHECK(objectwise_verdict(t.result, t.result, id).pass);
}

TEST_CASE("presheaf quotients glue compatibly") {
  auto arrow = arrow_category();
  int a = arrow->object_index("a"), b = arrow->object_index("b");
  auto t = tensor_simplicial(discrete_embed(yoneda(arrow, b)), standard_simplex(1));
  // glue the two endpoints of the interval at b; closure forces it at a too
  std::vector<std::vector<std::pair<Simplex, Simplex>>> pairs(2);
  const auto& vb = t.result.values[b];
  auto verts = vb.generators_of_dim(0);
  REQUIRE(verts.size() == 2);
  pairs[b].push_back({vb.simplex(verts[0]), vb.simplex(verts[1])});
  auto q = coequalize(t.result, pairs);
  CHECK(q.result.check().empty());
  CHECK(homology(q.result.values[a]).to_string() == "H0=Z, H1=Z");
  CHECK(homology(q.result.values[b]).to_string() == "H0=Z, H1=Z");
  CHECK(check_simplicial_presheaf_map(t.result, q.result, q.projection).empty());
}
