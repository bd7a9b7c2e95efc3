#include "uht/io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace uht {

namespace {

template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed " + what + ": " + e.what());
  }
}

const Json& need(const Json& j, const std::string& key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(what + " needs a \"" + key + "\" field");
  return j.at(key);
}

/// Follows a string reference to a file next to the referring document.
Json resolve(const Json& j, const DocContext& ctx, DocContext& inner) {
  if (j.is_string()) {
    std::filesystem::path p = ctx.dir / j.get<std::string>();
    inner.dir = p.parent_path();
    return read_json(p);
  }
  inner = ctx;
  return j;
}

std::vector<int> word_from_json(const Json& j) {
  std::vector<int> w;
  if (j.is_string()) {
    // "s2s0" style
    std::string s = j.get<std::string>();
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] != 's') throw InvalidInput("bad degeneracy word '" + s + "'");
      std::size_t k = i + 1;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (k == i + 1) throw InvalidInput("bad degeneracy word '" + s + "'");
      w.push_back(std::stoi(s.substr(i + 1, k - i - 1)));
      i = k;
    }
  } else {
    for (const auto& v : j) w.push_back(v.get<int>());
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] >= w[i - 1]) throw InvalidInput("degeneracy words must be strictly decreasing");
  for (int v : w)
    if (v < 0) throw InvalidInput("degeneracy indices must be non-negative");
  return w;
}

CatPtr category_field(const Json& j, const DocContext& ctx) {
  if (j.contains("category")) return category_from_json(j.at("category"), ctx);
  return category_from_json(j, ctx);
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

std::string document_kind(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("a document must be a JSON object");
  if (doc.contains("kind")) return guarded("document", [&] { return doc.at("kind").get<std::string>(); });
  if (doc.contains("covers")) return "site";
  if (doc.contains("simplices")) return "simplicial_set";
  if (doc.contains("objects") && doc.contains("morphisms")) return "category";
  throw InvalidInput("cannot tell what kind of document this is");
}

// ---------------------------------------------------------------------------
// Categories

CategorySpec category_spec_from_json(const Json& j) {
  return guarded("category", [&] {
    CategorySpec spec;
    for (const auto& o : need(j, "objects", "category")) spec.objects.push_back(o.get<std::string>());
    for (const auto& m : need(j, "morphisms", "category"))
      spec.morphisms.push_back({need(m, "id", "morphism").get<std::string>(), need(m, "src", "morphism").get<std::string>(),
                                need(m, "dst", "morphism").get<std::string>()});
    if (j.contains("compose"))
      for (const auto& t : j.at("compose")) {
        if (!t.is_array() || t.size() != 3) throw InvalidInput("composition entries are [g, f, g∘f] triples");
        spec.compose.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
      }
    if (j.contains("identities"))
      for (const auto& [o, m] : j.at("identities").items()) spec.identities[o] = m.get<std::string>();
    return spec;
  });
}

CatPtr category_from_json(const Json& j, const DocContext& ctx) {
  DocContext inner;
  Json doc = resolve(j, ctx, inner);
  if (doc.contains("category") && !doc.contains("objects")) return category_from_json(doc.at("category"), inner);
  return FinCategory::make(category_spec_from_json(doc));
}

Json category_to_json(const FinCategory& c) {
  Json j;
  j["kind"] = "category";
  j["objects"] = Json::array();
  for (int o = 0; o < c.num_objects(); ++o) j["objects"].push_back(c.object(o));
  j["morphisms"] = Json::array();
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (!c.is_identity(m))
      j["morphisms"].push_back({{"id", c.morphism(m)}, {"src", c.object(c.src(m))}, {"dst", c.object(c.dst(m))}});
  j["compose"] = Json::array();
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f) {
      if (c.is_identity(g) || c.is_identity(f)) continue;
      int gf = c.compose(g, f);
      if (gf >= 0) j["compose"].push_back(Json::array({c.morphism(g), c.morphism(f), c.morphism(gf)}));
    }
  j["identities"] = Json::object();
  for (int o = 0; o < c.num_objects(); ++o) j["identities"][c.object(o)] = c.morphism(c.identity(o));
  return j;
}

// ---------------------------------------------------------------------------
// Simplicial sets

SimplicialSetFin simpset_from_json(const Json& j, const DocContext& ctx) {
  DocContext inner;
  Json doc = resolve(j, ctx, inner);
  return guarded("simplicial set", [&] {
    const Json& simplices = need(doc, "simplices", "simplicial set");
    std::map<std::string, std::pair<int, int>> index;  // id -> (position, dim)
    for (const auto& s : simplices) {
      std::string id = need(s, "id", "simplex").get<std::string>();
      int dim = need(s, "dim", "simplex").get<int>();
      if (dim < 0) throw InvalidInput("simplex '" + id + "' has negative dimension");
      if (!index.emplace(id, std::make_pair(static_cast<int>(index.size()), dim)).second)
        throw InvalidInput("duplicate simplex id '" + id + "'");
    }
    std::vector<Generator> gens;
    for (const auto& s : simplices) {
      Generator g{s.at("id").get<std::string>(), s.at("dim").get<int>(), {}};
      if (s.contains("faces"))
        for (const auto& f : s.at("faces")) {
          if (!f.is_array() || f.size() != 2) throw InvalidInput("faces are [word, target-id] pairs");
          std::vector<int> word = word_from_json(f[0]);
          std::string target = f[1].get<std::string>();
          auto it = index.find(target);
          if (it == index.end()) throw InvalidInput("face of '" + g.id + "' names unknown simplex '" + target + "'");
          int target_dim = it->second.second;
          for (int v : word)
            if (v >= target_dim + static_cast<int>(word.size()))
              throw InvalidInput("degeneracy index out of range in a face of '" + g.id + "'");
          g.faces.push_back(Simplex{surjection_from_word(word, target_dim), it->second.first});
        }
      if (static_cast<int>(g.faces.size()) != (g.dim == 0 ? 0 : g.dim + 1))
        throw InvalidInput("simplex '" + g.id + "' needs " + std::to_string(g.dim == 0 ? 0 : g.dim + 1) + " faces");
      gens.push_back(std::move(g));
    }
    SimplicialSetFin k(std::move(gens));
    auto problems = k.check();
    if (!problems.empty()) throw InvariantViolation(problems);
    return k;
  });
}

Json simplex_to_json(const SimplicialSetFin& k, const Simplex& s) {
  return Json::array({word_of(s.map), k.generator(s.gen).id});
}

Simplex simplex_from_json(const SimplicialSetFin& k, const Json& j) {
  return guarded("simplex", [&] {
    if (!j.is_array() || j.size() != 2) throw InvalidInput("simplices are [word, generator-id] pairs");
    std::vector<int> word = word_from_json(j[0]);
    std::string id = j[1].get<std::string>();
    auto g = k.find(id);
    if (!g) throw InvalidInput("unknown simplex '" + id + "'");
    int d = k.generator(*g).dim;
    for (int v : word)
      if (v >= d + static_cast<int>(word.size())) throw InvalidInput("degeneracy index out of range for '" + id + "'");
    return Simplex{surjection_from_word(word, d), *g};
  });
}

Json simpset_to_json(const SimplicialSetFin& k) {
  Json j;
  j["kind"] = "simplicial_set";
  j["simplices"] = Json::array();
  for (const auto& g : k.generators()) {
    Json s{{"id", g.id}, {"dim", g.dim}, {"faces", Json::array()}};
    for (const auto& f : g.faces) s["faces"].push_back(simplex_to_json(k, f));
    j["simplices"].push_back(std::move(s));
  }
  return j;
}

SimplicialMap simplicial_map_from_json(const Json& j, const SimplicialSetFin& source, const SimplicialSetFin& target) {
  return guarded("simplicial map", [&] {
    const Json& images = j.contains("images") ? j.at("images") : j;
    SimplicialMap m;
    for (const auto& g : source.generators()) {
      if (!images.contains(g.id)) throw InvalidInput("map does not give an image for '" + g.id + "'");
      m.images.push_back(simplex_from_json(target, images.at(g.id)));
    }
    return m;
  });
}

Json simplicial_map_to_json(const SimplicialSetFin& source, const SimplicialSetFin& target, const SimplicialMap& m) {
  Json images = Json::object();
  for (int g = 0; g < source.num_generators(); ++g)
    images[source.generator(g).id] = simplex_to_json(target, m.images[g]);
  return Json{{"images", images}};
}

// ---------------------------------------------------------------------------
// Presheaves

Presheaf presheaf_from_json(const Json& j, const DocContext& ctx) {
  DocContext inner;
  Json doc = resolve(j, ctx, inner);
  CatPtr c = category_field(doc, inner);
  return guarded("presheaf", [&] {
    Presheaf p{c, std::vector<std::vector<std::string>>(c->num_objects()), {}};
    const Json& sections = need(doc, "sections", "presheaf");
    for (const auto& [o, list] : sections.items()) {
      int x = c->object_index(o);
      for (const auto& s : list) p.sections[x].push_back(s.get<std::string>());
    }
    std::vector<std::map<std::string, int>> pos(c->num_objects());
    for (int x = 0; x < c->num_objects(); ++x)
      for (int i = 0; i < p.size(x); ++i)
        if (!pos[x].emplace(p.sections[x][i], i).second)
          throw InvalidInput("duplicate section '" + p.sections[x][i] + "' at " + c->object(x));
    const Json empty = Json::object();
    const Json& restr = doc.contains("restrictions") ? doc.at("restrictions") : empty;
    for (int f = 0; f < c->num_morphisms(); ++f) {
      int x = c->src(f), y = c->dst(f);
      std::vector<int> r;
      if (c->is_identity(f)) {
        for (int i = 0; i < p.size(y); ++i) r.push_back(i);
      } else {
        if (!restr.contains(c->morphism(f)) && p.size(y) > 0)
          throw InvalidInput("presheaf has no restriction table for '" + c->morphism(f) + "'");
        for (const auto& s : p.sections[y]) {
          const Json& table = restr.at(c->morphism(f));
          if (!table.contains(s)) throw InvalidInput("restriction along '" + c->morphism(f) + "' misses '" + s + "'");
          auto it = pos[x].find(table.at(s).get<std::string>());
          if (it == pos[x].end())
            throw InvalidInput("restriction along '" + c->morphism(f) + "' lands outside F(" + c->object(x) + ")");
          r.push_back(it->second);
        }
      }
      p.restrict.push_back(std::move(r));
    }
    auto problems = p.check();
    if (!problems.empty()) throw InvariantViolation(problems);
    return p;
  });
}

Json presheaf_to_json(const Presheaf& f) {
  const FinCategory& c = *f.base;
  Json j;
  j["kind"] = "presheaf";
  j["category"] = category_to_json(c);
  j["sections"] = Json::object();
  for (int x = 0; x < c.num_objects(); ++x) j["sections"][c.object(x)] = f.sections[x];
  j["restrictions"] = Json::object();
  for (int u = 0; u < c.num_morphisms(); ++u) {
    if (c.is_identity(u)) continue;
    Json t = Json::object();
    for (int i = 0; i < f.size(c.dst(u)); ++i) t[f.sections[c.dst(u)][i]] = f.sections[c.src(u)][f.restrict[u][i]];
    j["restrictions"][c.morphism(u)] = t;
  }
  return j;
}

namespace {

SimplicialPresheaf simplicial_presheaf_over(const Json& doc, const CatPtr& c, const DocContext& ctx) {
  if (document_kind(doc) == "presheaf") {
    Json copy = doc;
    if (!copy.contains("category") && !copy.contains("objects")) copy["category"] = category_to_json(*c);
    return discrete_embed(presheaf_from_json(copy, ctx));
  }
  return guarded("simplicial presheaf", [&] {
    SimplicialPresheaf f{c, std::vector<SimplicialSetFin>(c->num_objects()), {}};
    const Json& values = need(doc, "values", "simplicial presheaf");
    for (const auto& [o, v] : values.items()) f.values[c->object_index(o)] = simpset_from_json(v, ctx);
    const Json empty = Json::object();
    const Json& restr = doc.contains("restrictions") ? doc.at("restrictions") : empty;
    for (int u = 0; u < c->num_morphisms(); ++u) {
      const SimplicialSetFin& src = f.values[c->dst(u)];
      const SimplicialSetFin& dst = f.values[c->src(u)];
      if (c->is_identity(u)) {
        f.restrictions.push_back(identity_map(src));
      } else if (restr.contains(c->morphism(u))) {
        f.restrictions.push_back(simplicial_map_from_json(restr.at(c->morphism(u)), src, dst));
      } else if (src.num_generators() == 0) {
        f.restrictions.push_back(SimplicialMap{});
      } else {
        throw InvalidInput("simplicial presheaf has no restriction for '" + c->morphism(u) + "'");
      }
    }
    auto problems = f.check();
    if (!problems.empty()) throw InvariantViolation(problems);
    return f;
  });
}

SimplicialPresheafMap sp_map_over(const Json& j, const SimplicialPresheaf& source, const SimplicialPresheaf& target) {
  const FinCategory& c = *source.base;
  return guarded("simplicial presheaf map", [&] {
    SimplicialPresheafMap m;
    const Json& comps = j.contains("components") ? j.at("components") : j;
    for (int x = 0; x < c.num_objects(); ++x) {
      if (c.num_objects() == 1 && !comps.contains(c.object(x)))
        m.components.push_back(simplicial_map_from_json(comps, source.values[x], target.values[x]));
      else if (comps.contains(c.object(x)))
        m.components.push_back(simplicial_map_from_json(comps.at(c.object(x)), source.values[x], target.values[x]));
      else if (source.values[x].num_generators() == 0)
        m.components.push_back(SimplicialMap{});
      else
        throw InvalidInput("map has no component at '" + c.object(x) + "'");
    }
    auto problems = check_simplicial_presheaf_map(source, target, m);
    if (!problems.empty()) throw InvariantViolation(problems);
    return m;
  });
}

}  // namespace

SimplicialPresheaf simplicial_presheaf_from_json(const Json& j, const DocContext& ctx) {
  DocContext inner;
  Json doc = resolve(j, ctx, inner);
  if (document_kind(doc) == "simplicial_set") return constant_simplicial(point_category(), simpset_from_json(doc, inner));
  CatPtr c = category_field(doc, inner);
  return simplicial_presheaf_over(doc, c, inner);
}

Json simplicial_presheaf_to_json(const SimplicialPresheaf& f) {
  const FinCategory& c = *f.base;
  Json j;
  j["kind"] = "simplicial_presheaf";
  j["category"] = category_to_json(c);
  j["values"] = Json::object();
  for (int x = 0; x < c.num_objects(); ++x) j["values"][c.object(x)] = simpset_to_json(f.values[x]);
  j["restrictions"] = Json::object();
  for (int u = 0; u < c.num_morphisms(); ++u)
    if (!c.is_identity(u))
      j["restrictions"][c.morphism(u)] =
          simplicial_map_to_json(f.values[c.dst(u)], f.values[c.src(u)], f.restrictions[u]);
  return j;
}

SimplicialPresheafMap simplicial_presheaf_map_from_json(const Json& j, const SimplicialPresheaf& source,
                                                        const SimplicialPresheaf& target) {
  return sp_map_over(j, source, target);
}

Json simplicial_presheaf_map_to_json(const SimplicialPresheaf& source, const SimplicialPresheaf& target,
                                     const SimplicialPresheafMap& m) {
  const FinCategory& c = *source.base;
  Json comps = Json::object();
  for (int x = 0; x < c.num_objects(); ++x)
    comps[c.object(x)] = simplicial_map_to_json(source.values[x], target.values[x], m.components[x]);
  return Json{{"kind", "simplicial_presheaf_map"}, {"components", comps}};
}

// ---------------------------------------------------------------------------
// Diagrams, sites, Thomason inputs

SPDiagram diagram_from_json(const Json& j, const DocContext& ctx) {
  DocContext inner;
  Json doc = resolve(j, ctx, inner);
  CatPtr index = category_from_json(need(doc, "index", "diagram"), inner);
  CatPtr base = doc.contains("base") ? category_from_json(doc.at("base"), inner) : point_category();
  SPDiagram d{index, base, {}, {}};
  bool on_point = base->num_objects() == 1 && base->num_morphisms() == 1;
  return guarded("diagram", [&] {
    const Json& values = need(doc, "values", "diagram");
    for (int i = 0; i < index->num_objects(); ++i) {
      if (!values.contains(index->object(i))) throw InvalidInput("diagram has no value at '" + index->object(i) + "'");
      DocContext vctx;
      Json v = resolve(values.at(index->object(i)), inner, vctx);
      std::string kind = document_kind(v);
      if (kind == "simplicial_set")
        d.values.push_back(constant_simplicial(base, simpset_from_json(v, vctx)));
      else if (!on_point || kind == "simplicial_presheaf" || kind == "presheaf")
        d.values.push_back(simplicial_presheaf_over(v, base, vctx));
      else
        throw InvalidInput("diagram value at '" + index->object(i) + "' is a " + kind);
    }
    const Json empty = Json::object();
    const Json& maps = doc.contains("maps") ? doc.at("maps") : empty;
    for (int u = 0; u < index->num_morphisms(); ++u) {
      const auto& src = d.values[index->src(u)];
      const auto& dst = d.values[index->dst(u)];
      if (index->is_identity(u) && !maps.contains(index->morphism(u))) {
        d.maps.push_back(identity_simplicial_presheaf_map(src));
        continue;
      }
      if (!maps.contains(index->morphism(u))) throw InvalidInput("diagram has no map for '" + index->morphism(u) + "'");
      DocContext mctx;
      d.maps.push_back(sp_map_over(resolve(maps.at(index->morphism(u)), inner, mctx), src, dst));
    }
    auto problems = d.check();
    if (!problems.empty()) throw InvariantViolation(problems);
    return d;
  });
}

SiteData site_from_json(const Json& j, const DocContext& ctx) {
  DocContext inner;
  Json doc = resolve(j, ctx, inner);
  CatPtr c = category_field(doc, inner);
  return guarded("site", [&] {
    std::vector<std::vector<std::vector<std::string>>> covers(c->num_objects());
    for (const auto& [o, fams] : need(doc, "covers", "site").items()) {
      int x = c->object_index(o);
      for (const auto& fam : fams) {
        std::vector<std::string> ids;
        for (const auto& m : fam) ids.push_back(m.get<std::string>());
        covers[x].push_back(std::move(ids));
      }
    }
    return make_site(c, covers);
  });
}

ThomasonInput thomason_from_json(const Json& j, const DocContext& ctx) {
  DocContext inner;
  Json doc = resolve(j, ctx, inner);
  ThomasonInput in;
  const Json& theta = need(doc, "theta", "thomason input");
  CatPtr index = category_from_json(need(theta, "index", "theta"), inner);
  return guarded("thomason input", [&] {
    in.theta.index = index;
    in.theta.sets.assign(index->num_objects(), {});
    for (const auto& [o, list] : need(theta, "sets", "theta").items())
      for (const auto& s : list) in.theta.sets[index->object_index(o)].push_back(s.get<std::string>());
    const Json empty = Json::object();
    const Json& fns = theta.contains("functions") ? theta.at("functions") : empty;
    for (int u = 0; u < index->num_morphisms(); ++u) {
      const auto& from = in.theta.sets[index->src(u)];
      const auto& to = in.theta.sets[index->dst(u)];
      std::vector<int> f;
      for (std::size_t s = 0; s < from.size(); ++s) {
        if (index->is_identity(u)) {
          f.push_back(static_cast<int>(s));
          continue;
        }
        if (!fns.contains(index->morphism(u)) || !fns.at(index->morphism(u)).contains(from[s]))
          throw InvalidInput("theta(" + index->morphism(u) + ") misses '" + from[s] + "'");
        std::string t = fns.at(index->morphism(u)).at(from[s]).get<std::string>();
        auto it = std::find(to.begin(), to.end(), t);
        if (it == to.end()) throw InvalidInput("theta(" + index->morphism(u) + ") sends '" + from[s] + "' outside");
        f.push_back(static_cast<int>(it - to.begin()));
      }
      in.theta.functions.push_back(std::move(f));
    }
    auto problems = in.theta.check();
    if (!problems.empty()) throw InvariantViolation(problems);
    in.gr = grothendieck(in.theta);
    Json e{{"index", category_to_json(*in.gr.category)},
           {"values", need(doc, "values", "thomason input")},
           {"maps", doc.contains("maps") ? doc.at("maps") : Json::object()}};
    in.e = diagram_from_json(e, inner);
    return in;
  });
}

AugmentedInput augmented_from_json(const Json& j, const DocContext& ctx) {
  DocContext inner;
  Json doc = resolve(j, ctx, inner);
  AugmentedInput in;
  in.site = site_from_json(need(doc, "site", "augmented object"), inner);
  const CatPtr& c = in.site.base;
  in.object.object = guarded("augmented object", [&] { return c->object_index(need(doc, "object", "augmented object").get<std::string>()); });
  in.object.u = simplicial_presheaf_over(doc, c, inner);
  SimplicialPresheaf rx = discrete_embed(yoneda(c, in.object.object));
  in.object.augmentation = sp_map_over(need(doc, "augmentation", "augmented object"), in.object.u, rx);
  if (doc.contains("truncation"))
    guarded("augmented object", [&] {
      const Json& t = doc.at("truncation");
      in.object.truncation = TruncationTag{t.at("bound").get<int>(), t.at("exact_through").get<int>()};
      return 0;
    });
  return in;
}

std::vector<std::string> validate_document(const Json& j, const DocContext& ctx) {
  std::string kind = document_kind(j);
  try {
    if (kind == "category") {
      DocContext inner;
      Json doc = resolve(j, ctx, inner);
      return check_category(category_spec_from_json(doc));
    }
    if (kind == "simplicial_set") {
      SimplicialSetFin k = simpset_from_json(j, ctx);
      return k.check_identities();
    }
    if (kind == "presheaf") {
      presheaf_from_json(j, ctx);
      return {};
    }
    if (kind == "simplicial_presheaf") {
      simplicial_presheaf_from_json(j, ctx);
      return {};
    }
    if (kind == "diagram") {
      diagram_from_json(j, ctx);
      return {};
    }
    if (kind == "site") {
      SiteData s = site_from_json(j, ctx);
      if (j.value("validate_axioms", false)) return validate_site(s).problems;
      return {};
    }
    if (kind == "augmented") {
      augmented_from_json(j, ctx);
      return {};
    }
    if (kind == "thomason") {
      thomason_from_json(j, ctx);
      return {};
    }
  } catch (const InvariantViolation& e) {
    return e.problems();
  }
  throw InvalidInput("unknown document kind '" + kind + "'");
}

}  // namespace uht
