#include "doctest.h"
#include "uht/cofrep.hpp"
#include "uht/hocolim.hpp"

using namespace uht;

namespace {

CatPtr poset3() { return poset_category({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

SimplicialPresheaf over_point(const SimplicialSetFin& k) { return constant_simplicial(point_category(), k); }

std::vector<SimplicialSetFin> k_list() {
  return {standard_simplex(0), standard_simplex(1), standard_simplex(2), boundary(2),
          product(standard_simplex(1), standard_simplex(1)).set};
}

std::multiset<std::string> represented(const CatPtr& c, const std::vector<Representation>& reps) {
  std::multiset<std::string> out;
  for (const auto& r : reps) out.insert(c->object(r.object));
  return out;
}

// F(b) = Δ1, F(a) = Δ0 over the arrow: the restriction collapses the edge
SimplicialPresheaf collapsing() {
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
}

}  // namespace

TEST_CASE("qtilde worked example over the arrow") {
  CatPtr arrow = arrow_category();
  int a = arrow->object_index("a"), b = arrow->object_index("b");
  auto rb = yoneda(arrow, b);
  auto qt = qtilde(rb);
  CHECK(qt.result.check().empty());
  auto n0 = nondegenerate_presheaf(qt.result, 0);
  auto n1 = nondegenerate_presheaf(qt.result, 1);
  auto n2 = nondegenerate_presheaf(qt.result, 2);
  REQUIRE(n0);
  REQUIRE(n1);
  REQUIRE(n2);
  auto d0 = representable_decomposition(*n0);
  auto d1 = representable_decomposition(*n1);
  REQUIRE(d0);
  REQUIRE(d1);
  CHECK(represented(arrow, *d0) == std::multiset<std::string>{"a", "b"});
  CHECK(represented(arrow, *d1) == std::multiset<std::string>{"a"});
  CHECK(n2->total_sections() == 0);
  CHECK(n0->size(a) == 2);
  CHECK(n0->size(b) == 1);
  CHECK(objectwise_verdict(qt.result, discrete_embed(rb), qt.augmentation).pass);
}

TEST_CASE("qtilde of the point") {
  auto qt = qtilde(terminal_presheaf(point_category()));
  CHECK(find_isomorphism(qt.result.values[0], standard_simplex(0)).has_value());
}

TEST_CASE("qtilde augmentations on representables") {
  for (auto c : {point_category(), arrow_category(), span_category(), poset3()})
    for (int x = 0; x < c->num_objects(); ++x) {
      auto r = yoneda(c, x);
      auto qt = qtilde(r);
      CHECK(check_simplicial_presheaf_map(qt.result, discrete_embed(r), qt.augmentation).empty());
      CHECK(objectwise_verdict(qt.result, discrete_embed(r), qt.augmentation).pass);
      CHECK(cofibrancy_certificate(qt.result).has_value());
    }
}

TEST_CASE("q over the point gives K back") {
  for (const auto& k : k_list()) {
    auto f = over_point(k);
    auto qk = q(f);
    CHECK(qk.result.check().empty());
    CHECK(is_simplicial_presheaf_isomorphism(qk.result, f, qk.augmentation));
  }
}

TEST_CASE("q of a discrete presheaf is qtilde") {
  CatPtr arrow = arrow_category();
  auto rb = yoneda(arrow, arrow->object_index("b"));
  auto a = q(discrete_embed(rb));
  auto b = qtilde(rb);
  for (int x = 0; x < 2; ++x) CHECK(find_isomorphism(a.result.values[x], b.result.values[x]).has_value());
}

TEST_CASE("q on simplicial presheaves") {
  CatPtr arrow = arrow_category();
  auto rb = discrete_embed(yoneda(arrow, arrow->object_index("b")));
  for (const auto& f : {tensor_simplicial(rb, standard_simplex(1)).result, tensor_simplicial(rb, boundary(2)).result,
                        collapsing()}) {
    REQUIRE(f.check().empty());
    auto qf = q(f);
    CHECK(qf.result.check().empty());
    CHECK(check_simplicial_presheaf_map(qf.result, f, qf.augmentation).empty());
    CHECK(objectwise_verdict(qf.result, f, qf.augmentation).pass);
    CHECK(cofibrancy_certificate(qf.result).has_value());
  }
}

TEST_CASE("q is functorial") {
  CatPtr arrow = arrow_category();
  auto rb = discrete_embed(yoneda(arrow, arrow->object_index("b")));
  auto f = tensor_simplicial(rb, standard_simplex(1));
  auto g = tensor_simplicial(rb, standard_simplex(0));
  SimplicialPresheafMap proj;
  for (int x = 0; x < 2; ++x)
    proj.components.push_back(product_map(f.products[x], g.products[x], rb.values[x], standard_simplex(0),
                                          identity_map(rb.values[x]), SimplicialMap{{Simplex{{0}, 0}, Simplex{{0}, 0},
                                                                                     Simplex{{0, 0}, 0}}}));
  REQUIRE(check_simplicial_presheaf_map(f.result, g.result, proj).empty());
  auto qf = q(f.result), qg = q(g.result);
  auto qp = q_map(qf, qg, g.result, proj);
  CHECK(check_simplicial_presheaf_map(qf.result, qg.result, qp).empty());
  // augmentation is natural
  CHECK(compose(g.result, qg.augmentation, qp) == compose(g.result, proj, qf.augmentation));
}

TEST_CASE("canonical q") {
  auto pt = over_point(standard_simplex(0));
  auto c0 = canonical_q(pt, 2);
  CHECK(c0.finality.pass);
  CHECK(homology(c0.result.values[0]).to_string() == "H0=Z");

  auto interval = over_point(standard_simplex(1));
  auto c1 = canonical_q(interval, 3);
  CHECK(c1.truncation.exact_through == 2);
  CHECK(c1.finality.pass);
  CHECK(c1.result.values[0].num_generators() > standard_simplex(1).num_generators());
  auto v = objectwise_verdict(c1.result, interval, c1.augmentation, 2);
  CHECK(v.pass);

  CHECK_THROWS_AS(canonical_q(interval, 1), TruncationTooSmall);

  auto circle = over_point(boundary(2));
  auto c2 = canonical_q(circle, 3, false);
  CHECK(objectwise_verdict(c2.result, circle, c2.augmentation, 2).pass);
}

TEST_CASE("canonical q over the arrow") {
  CatPtr arrow = arrow_category();
  auto rb = discrete_embed(yoneda(arrow, arrow->object_index("b")));
  auto f = tensor_simplicial(rb, standard_simplex(1)).result;
  auto cq = canonical_q(f, 2);
  CHECK(cq.finality.pass);
  CHECK(check_simplicial_presheaf_map(cq.result, f, cq.augmentation).empty());
  CHECK(objectwise_verdict(cq.result, f, cq.augmentation, 1).pass);
}

TEST_CASE("splittings") {
  CatPtr arrow = arrow_category();
  auto rb = yoneda(arrow, arrow->object_index("b"));
  auto s = detect_splitting(discrete_embed(rb));
  REQUIRE(s);
  CHECK(s->nondegenerate[0].total_sections() == rb.total_sections());
  for (std::size_t k = 1; k < s->nondegenerate.size(); ++k) CHECK(s->nondegenerate[k].total_sections() == 0);
  CHECK_FALSE(detect_splitting(collapsing()).has_value());
  auto qt = qtilde(rb);
  auto sq = detect_splitting(qt.result);
  REQUIRE(sq);
  CHECK(sq->nondegenerate[1].total_sections() == 1);
}

TEST_CASE("cofibrancy certificates") {
  CatPtr arrow = arrow_category();
  for (int x = 0; x < 2; ++x)
    for (int n = 0; n <= 2; ++n) {
      auto t = tensor_simplicial(discrete_embed(yoneda(arrow, x)), standard_simplex(n)).result;
      auto cert = cofibrancy_certificate(t);
      REQUIRE(cert);
      for (const auto& level : cert->decompositions)
        for (const auto& r : level) CHECK(r.object == x);
    }
  CHECK_FALSE(cofibrancy_certificate(discrete_embed(terminal_presheaf(span_category()))).has_value());
}

TEST_CASE("skeletal filtrations") {
  CatPtr arrow = arrow_category();
  auto rb = yoneda(arrow, arrow->object_index("b"));
  auto d = discrete_embed(rb);
  auto f0 = skeletal_filtration(d, *detect_splitting(d));
  CHECK(f0.stages.size() == 1);
  CHECK(f0.colimit_matches);

  auto qt = qtilde(rb).result;
  auto f1 = skeletal_filtration(qt, *detect_splitting(qt));
  CHECK(f1.stages.size() == 2);
  CHECK(f1.colimit_matches);
  for (const auto& s : f1.stages) CHECK(s.matches_skeleton);

  auto tri = over_point(standard_simplex(2));
  auto f2 = skeletal_filtration(tri, *detect_splitting(tri));
  CHECK(f2.stages.size() == 3);
  for (const auto& s : f2.stages) CHECK(s.matches_skeleton);
  CHECK(f2.colimit_matches);
}

TEST_CASE("cotriple") {
  CatPtr arrow = arrow_category();
  auto rb = yoneda(arrow, arrow->object_index("b"));
  auto l0 = cotriple_level(rb, 0);
  auto qt = qtilde(rb);
  auto q0 = level_presheaf(qt.result, 0);
  for (int x = 0; x < 2; ++x) CHECK(l0.size(x) == q0.size(x));
  auto v = cotriple_compare(rb, 3);
  CHECK(v.pass);
  auto pt = point_category();
  auto three = constant_presheaf(pt, {"p", "q", "r"});
  for (int n = 0; n <= 4; ++n) CHECK(cotriple_level(three, n).size(0) == 3);
  CHECK(cotriple_compare(three, 4).pass);
  CHECK(cotriple_compare(terminal_presheaf(poset3()), 4).pass);
}

TEST_CASE("canonical q at d = 4 on the point fixtures") {
  for (const auto& k : k_list()) {
    auto f = over_point(k);
    auto cq = canonical_q(f, 4);
    CHECK(cq.finality.pass);
    CHECK(objectwise_verdict(cq.result, f, cq.augmentation, 3).pass);
  }
}
