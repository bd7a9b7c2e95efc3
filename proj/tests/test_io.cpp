#include <filesystem>

#include "doctest.h"
#include "uht/io.hpp"

using namespace uht;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = UHT_FIXTURES;

Json load(const fs::path& rel) { return read_json(kFixtures / rel); }
DocContext at(const fs::path& rel) { return {(kFixtures / rel).parent_path()}; }

}  // namespace

TEST_CASE("category documents round-trip") {
  for (const char* name : {"pt", "arrow", "span", "cospan", "chain3"}) {
    fs::path rel = fs::path("categories") / (std::string(name) + ".json");
    CatPtr c = category_from_json(load(rel), at(rel));
    Json again = category_to_json(*c);
    CatPtr d = category_from_json(again);
    CHECK(category_to_json(*d) == again);
    CHECK(d->num_morphisms() == c->num_morphisms());
  }
}

TEST_CASE("simplicial set documents round-trip") {
  for (const char* name : {"delta0", "delta1", "delta2", "boundary1", "boundary2", "square"}) {
    fs::path rel = fs::path("simplicial_sets") / (std::string(name) + ".json");
    SimplicialSetFin k = simpset_from_json(load(rel));
    CHECK(k.check_identities().empty());
    SimplicialSetFin l = simpset_from_json(simpset_to_json(k));
    CHECK(simpset_to_json(l) == simpset_to_json(k));
  }
  // string words and degenerate faces
  Json j = Json::parse(R"({"simplices": [{"id": "v", "dim": 0},
                                          {"id": "e", "dim": 1, "faces": [[[], "v"], [[], "v"]]},
                                          {"id": "t", "dim": 2, "faces": [["s0", "v"], [[], "e"], [[], "e"]]}]})");
  SimplicialSetFin k = simpset_from_json(j);
  CHECK(k.check().empty());
  CHECK(simpset_to_json(k)["simplices"][2]["faces"][0][0] == Json::array({0}));

  Json up = Json::parse(R"({"simplices": [{"id": "v", "dim": 0},
                                          {"id": "t", "dim": 2, "faces": [[[0, 1], "v"], [[1, 0], "v"], [[1, 0], "v"]]}]})");
  CHECK_THROWS_AS(simpset_from_json(up), InvalidInput);
  Json bad_face = Json::parse(R"({"simplices": [{"id": "v", "dim": 0}, {"id": "w", "dim": 0},
                                                {"id": "e", "dim": 1, "faces": [[[], "v"], [[], "x"]]}]})");
  CHECK_THROWS_AS(simpset_from_json(bad_face), InvalidInput);
  // d0 d1 != d0 d0 on a 2-simplex
  Json broken = Json::parse(R"({"simplices": [{"id": "a", "dim": 0}, {"id": "b", "dim": 0}, {"id": "c", "dim": 0},
      {"id": "ab", "dim": 1, "faces": [[[], "b"], [[], "a"]]}, {"id": "bc", "dim": 1, "faces": [[[], "c"], [[], "b"]]},
      {"id": "t", "dim": 2, "faces": [[[], "ab"], [[], "bc"], [[], "ab"]]}]})");
  CHECK_THROWS_AS(simpset_from_json(broken), InvariantViolation);
}

TEST_CASE("presheaf documents round-trip") {
  int n = 0;
  for (const auto& e : fs::directory_iterator(kFixtures / "presheaves")) {
    Presheaf f = presheaf_from_json(read_json(e.path()), {e.path().parent_path()});
    Presheaf g = presheaf_from_json(presheaf_to_json(f));
    CHECK(g.sections == f.sections);
    CHECK(g.restrict == f.restrict);
    SimplicialPresheaf d = discrete_embed(f);
    SimplicialPresheaf d2 = simplicial_presheaf_from_json(simplicial_presheaf_to_json(d));
    CHECK(simplicial_presheaf_to_json(d2) == simplicial_presheaf_to_json(d));
    ++n;
  }
  CHECK(n >= 12);
}

TEST_CASE("counterexample documents") {
  Json missing = load("bad/missing_composite.json");
  CHECK_THROWS_AS(category_from_json(missing), InvariantViolation);
  auto problems = validate_document(missing);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("1<2 o 0<1") != std::string::npos);

  CHECK_THROWS_AS(read_json(kFixtures / "bad/truncated.json"), InvalidInput);
  CHECK_THROWS_AS(read_json(kFixtures / "no_such_file.json"), InvalidInput);

  AugmentedInput in = augmented_from_json(load("bad/nonrepresentable_level.json"), at("bad/nonrepresentable_level.json"));
  HypercoverReport r = is_hypercover(in.object, in.site, 1);
  CHECK_FALSE(r.pass);
  REQUIRE(r.first_bad_level);
  CHECK(*r.first_bad_level == 0);

  // a restriction landing outside its target set
  Json p = load("presheaves/arrow_fold.json");
  p["restrictions"]["f"]["p"] = "nowhere";
  CHECK_THROWS_AS(presheaf_from_json(p, at("presheaves/arrow_fold.json")), InvalidInput);
  // functoriality: over chain3, restricting along 0<2 must agree with the composite
  Json q = load("presheaves/chain3_two.json");
  q["restrictions"]["0<2"]["x"] = "y";
  CHECK_THROWS_AS(presheaf_from_json(q, at("presheaves/chain3_two.json")), InvariantViolation);
  CHECK_FALSE(validate_document(q, at("presheaves/chain3_two.json")).empty());
}

TEST_CASE("every fixture outside bad/ validates") {
  int n = 0;
  for (const auto& e : fs::recursive_directory_iterator(kFixtures)) {
    if (e.path().extension() != ".json" || e.path().parent_path().filename() == "bad") continue;
    Json doc = read_json(e.path());
    CAPTURE(e.path().string());
    CHECK(validate_document(doc, {e.path().parent_path()}).empty());
    ++n;
  }
  CHECK(n > 30);
}

TEST_CASE("diagram and thomason documents") {
  SPDiagram s0 = diagram_from_json(load("span_s0.json"), at("span_s0.json"));
  CHECK(s0.check().empty());
  CHECK(underlying(s0.values[0]).num_generators() == 2);

  SPDiagram y = diagram_from_json(load("diagrams/yoneda_arrow.json"), at("diagrams/yoneda_arrow.json"));
  CHECK(y.base->num_objects() == 2);

  ThomasonInput t = thomason_from_json(load("thomason/arrow_x_yz.json"), at("thomason/arrow_x_yz.json"));
  CHECK(t.gr.category->num_objects() == 3);
  CHECK(t.e.values.size() == 3);

  Json d = load("span_s0.json");
  d["maps"].erase("g");
  CHECK_THROWS_AS(diagram_from_json(d, at("span_s0.json")), InvalidInput);
}
