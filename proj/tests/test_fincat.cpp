#include "doctest.h"
#include "uht/fincat.hpp"

using namespace uht;

TEST_CASE("fixture categories") {
  auto pt = point_category();
  CHECK(pt->num_objects() == 1);
  CHECK(pt->num_morphisms() == 1);
  auto arrow = arrow_category();
  CHECK(arrow->num_morphisms() == 3);
  CHECK(arrow->compose(arrow->morphism_index("f"), arrow->identity(0)) == arrow->morphism_index("f"));
  auto lin = linear_category(4);
  CHECK(lin->num_morphisms() == 10);
}

TEST_CASE("category validation names the offending data") {
  CategorySpec s;
  s.objects = {"a", "b", "c"};
  s.morphisms = {{"f", "a", "b"}, {"g", "b", "c"}};
  auto problems = check_category(s);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("g o f") != std::string::npos);
  CHECK_THROWS_AS(FinCategory::make(s), InvariantViolation);
  s.morphisms.push_back({"h", "a", "c"});
  s.compose.push_back({"g", "f", "h"});
  CHECK(check_category(s).empty());
  // non-associative table: a monoid {e1, e2} with bad composites
  CategorySpec m;
  m.objects = {"x"};
  m.morphisms = {{"e", "x", "x"}, {"u", "x", "x"}};
  m.compose = {{"e", "e", "e"}, {"u", "u", "id_x"}, {"e", "u", "e"}, {"u", "e", "u"}};
  bool assoc_reported = false;
  for (const auto& p : check_category(m))
    if (p.find("associativity") != std::string::npos) assoc_reported = true;
  CHECK(assoc_reported);
}

TEST_CASE("opposite") {
  auto pt = point_category();
  CHECK(opposite(pt)->to_spec().objects == pt->to_spec().objects);
  auto arrow = arrow_category();
  auto op = opposite(arrow);
  int f = op->morphism_index("f");
  CHECK(op->object(op->src(f)) == "b");
  CHECK(op->object(op->dst(f)) == "a");
  auto poset = poset_category({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  auto back = opposite(opposite(poset));
  auto s1 = back->to_spec(), s2 = poset->to_spec();
  CHECK(s1.objects == s2.objects);
  CHECK(s1.compose == s2.compose);
  for (int m = 0; m < poset->num_morphisms(); ++m) {
    CHECK(back->src(m) == poset->src(m));
    CHECK(back->dst(m) == poset->dst(m));
  }
}

TEST_CASE("under categories") {
  auto pt = point_category();
  CHECK(under_category(pt, 0).category->num_morphisms() == 1);
  auto arrow = arrow_category();
  auto u = under_category(arrow, arrow->object_index("a"));
  CHECK(u.category->num_objects() == 2);
  CHECK(u.category->num_morphisms() == 3);
  CHECK(u.forget.check().empty());
  auto span = span_category();
  auto us = under_category(span, span->object_index("a"));
  CHECK(us.category->num_objects() == 3);
  CHECK(us.category->num_morphisms() == 5);
  CHECK(us.forget.check().empty());
}

TEST_CASE("grothendieck construction") {
  auto arrow = arrow_category();
  SetFunctor theta{arrow, {{"x"}, {"y", "z"}}, {}};
  theta.functions.resize(arrow->num_morphisms());
  theta.functions[arrow->morphism_index("f")] = {0};
  theta.functions[arrow->identity(0)] = {0};
  theta.functions[arrow->identity(1)] = {0, 1};
  CHECK(theta.check().empty());
  auto gr = grothendieck(theta);
  CHECK(gr.category->num_objects() == 3);
  CHECK(gr.category->num_morphisms() == 4);
  CHECK(gr.projection.check().empty());

  // constant singleton: projection is an isomorphism
  auto span = span_category();
  SetFunctor one{span, std::vector<std::vector<std::string>>(3, {"*"}),
                 std::vector<std::vector<int>>(span->num_morphisms(), {0})};
  auto g1 = grothendieck(one);
  CHECK(g1.category->num_objects() == 3);
  CHECK(g1.category->num_morphisms() == span->num_morphisms());
  CHECK(g1.projection.check().empty());

  SetFunctor empty{span, std::vector<std::vector<std::string>>(3), std::vector<std::vector<int>>(span->num_morphisms())};
  CHECK(grothendieck(empty).category->num_objects() == 0);
}

TEST_CASE("chain finiteness") {
  auto pt = point_category();
  CHECK(chain_finiteness(*pt).chain_finite);
  CHECK(chain_finiteness(*pt).max_length == 0);
  auto idem = idempotent_category();
  auto cf = chain_finiteness(*idem);
  CHECK_FALSE(cf.chain_finite);
  CHECK(cf.witness == std::vector<std::string>{"e"});
  CHECK(chain_finiteness(*linear_category(4)).max_length == 3);
  CHECK_THROWS_AS(nerve(idem), NotChainFinite);
}

TEST_CASE("nerves") {
  auto pt = nerve(point_category());
  CHECK(pt.set.num_generators() == 1);
  CHECK_FALSE(pt.truncation.has_value());
  auto ar = nerve(arrow_category());
  CHECK(find_isomorphism(ar.set, standard_simplex(1)).has_value());
  auto lin = nerve(linear_category(3));
  CHECK(find_isomorphism(lin.set, standard_simplex(2)).has_value());
  CHECK(lin.set.check_identities().empty());

  auto idem = nerve(idempotent_category(), 3);
  REQUIRE(idem.truncation.has_value());
  CHECK(idem.truncation->exact_through == 2);
  CHECK(idem.set.check().empty());
  // chains e, (e,e), (e,e,e): one per degree
  CHECK(idem.set.num_generators() == 4);

  auto short_nerve = nerve(linear_category(4), 1);
  auto full = nerve(linear_category(4));
  for (const auto& g : short_nerve.set.generators()) {
    auto idx = full.set.find(g.id);
    REQUIRE(idx.has_value());
    CHECK(full.set.generator(*idx).faces.size() == g.faces.size());
  }
}
