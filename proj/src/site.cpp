#include "uht/site.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace uht {

SiteData make_site(const CatPtr& base, const std::vector<std::vector<std::vector<std::string>>>& covers) {
  const FinCategory& c = *base;
  if (static_cast<int>(covers.size()) != c.num_objects())
    throw InvalidInput("site needs one list of covering families per object");
  SiteData site{base, std::vector<std::vector<CoveringFamily>>(c.num_objects())};
  for (int x = 0; x < c.num_objects(); ++x) {
    bool has_identity = false;
    for (const auto& fam : covers[x]) {
      CoveringFamily f;
      for (const auto& id : fam) {
        int u = c.morphism_index(id);
        if (c.dst(u) != x)
          throw InvalidInput("covering family member '" + id + "' does not land in '" + c.object(x) + "'");
        f.members.push_back(u);
      }
      std::sort(f.members.begin(), f.members.end());
      f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
      if (f.members == std::vector<int>{c.identity(x)}) has_identity = true;
      site.covers[x].push_back(std::move(f));
    }
    if (!has_identity) site.covers[x].push_back(CoveringFamily{{c.identity(x)}, true});
  }
  return site;
}

namespace {

/// Some covering family of x has every member factoring through a member of `family`.
bool refined_by_cover(const SiteData& site, int x, const std::vector<int>& family) {
  const FinCategory& c = *site.base;
  for (const auto& cover : site.covers[x]) {
    bool all = true;
    for (int v : cover.members) {
      bool through = false;
      for (int u : family)
        for (int w : c.hom(c.src(v), c.src(u)))
          if (c.compose(u, w) == v) through = true;
      if (!through) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// rY ×_{rX} rU for g: Y -> X and u: U -> X, with sections "a,b".
Presheaf fiber_product(const CatPtr& base, int g, int u) {
  const FinCategory& c = *base;
  int y = c.src(g), uo = c.src(u);
  Presheaf p{base, {}, {}};
  std::vector<std::map<std::pair<int, int>, int>> index(c.num_objects());
  for (int z = 0; z < c.num_objects(); ++z) {
    p.sections.emplace_back();
    for (int a : c.hom(z, y))
      for (int b : c.hom(z, uo))
        if (c.compose(g, a) == c.compose(u, b)) {
          index[z][{a, b}] = static_cast<int>(p.sections[z].size());
          p.sections[z].push_back(c.morphism(a) + "," + c.morphism(b));
        }
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    p.restrict.emplace_back();
    int s = c.src(f), t = c.dst(f);
    for (int a : c.hom(t, y))
      for (int b : c.hom(t, uo))
        if (c.compose(g, a) == c.compose(u, b)) p.restrict.back().push_back(index[s].at({c.compose(a, f), c.compose(b, f)}));
  }
  return p;
}

}  // namespace

SiteAxioms validate_site(const SiteData& site) {
  const FinCategory& c = *site.base;
  SiteAxioms ax;
  for (int x = 0; x < c.num_objects(); ++x) {
    bool id = false;
    for (const auto& f : site.covers[x]) {
      if (f.members == std::vector<int>{c.identity(x)}) id = true;
      for (int u : f.members)
        if (c.dst(u) != x) {
          ax.identity_families = false;
          ax.problems.push_back("member " + c.morphism(u) + " of a family of " + c.object(x) + " lands elsewhere");
        }
    }
    if (!id) {
      ax.identity_families = false;
      ax.problems.push_back("no identity family at " + c.object(x));
    }
  }
  for (int x = 0; x < c.num_objects(); ++x)
    for (std::size_t fi = 0; fi < site.covers[x].size(); ++fi) {
      const auto& fam = site.covers[x][fi].members;
      for (int g = 0; g < c.num_morphisms(); ++g) {
        if (c.dst(g) != x || c.is_identity(g)) continue;
        std::vector<int> pulled;
        bool representable = true;
        for (int u : fam) {
          Presheaf p = fiber_product(site.base, g, u);
          auto dec = representable_decomposition(p);
          if (!dec) {
            representable = false;
            break;
          }
          for (const auto& r : *dec) {
            const std::string& name = p.sections[r.object][r.element];
            pulled.push_back(c.morphism_index(name.substr(0, name.find(','))));
          }
        }
        if (representable && !refined_by_cover(site, c.src(g), pulled))
          ax.problems.push_back("pullback of family " + std::to_string(fi) + " of " + c.object(x) + " along " +
                                c.morphism(g) + " is not refined by a cover");
        ax.pullback_stable = ax.pullback_stable && (!representable || refined_by_cover(site, c.src(g), pulled));
      }
    }
  for (int x = 0; x < c.num_objects(); ++x)
    for (const auto& fam : site.covers[x]) {
      // every choice of one covering family per member
      std::vector<int> choice(fam.members.size(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == fam.members.size()) {
          std::vector<int> composite;
          for (std::size_t k = 0; k < fam.members.size(); ++k) {
            int u = fam.members[k];
            for (int v : site.covers[c.src(u)][choice[k]].members) composite.push_back(c.compose(u, v));
          }
          if (!refined_by_cover(site, x, composite)) {
            ax.local = false;
            ax.problems.push_back("a composite of covering families of " + c.object(x) + " is not refined by a cover");
          }
          return;
        }
        for (std::size_t k = 0; k < site.covers[c.src(fam.members[i])].size(); ++k) {
          choice[i] = static_cast<int>(k);
          rec(i + 1);
        }
      };
      rec(0);
    }
  return ax;
}

CoverVerdict is_cover(const Presheaf& e, const Presheaf& b, const PresheafMap& f, const SiteData& site) {
  const FinCategory& c = *site.base;
  (void)e;
  std::vector<std::vector<char>> image(c.num_objects());
  for (int z = 0; z < c.num_objects(); ++z) {
    image[z].assign(b.size(z), 0);
    for (int s : f.components[z]) image[z][s] = 1;
  }
  CoverVerdict v;
  for (int x = 0; x < c.num_objects(); ++x)
    for (int y = 0; y < b.size(x); ++y) {
      bool lifts = false;
      for (const auto& fam : site.covers[x]) {
        bool all = true;
        for (int u : fam.members)
          if (!image[c.src(u)][b.restrict[u][y]]) {
            all = false;
            break;
          }
        if (all) {
          lifts = true;
          break;
        }
      }
      if (!lifts) {
        v.witness_object = c.object(x);
        v.witness_section = b.sections[x][y];
        return v;
      }
    }
  v.pass = true;
  return v;
}

// ---------------------------------------------------------------------------
// Čech nerves

AugmentedObject cech_nerve(const SiteData& site, int x, const std::vector<int>& family, int levels) {
  const FinCategory& c = *site.base;
  if (levels < 0) throw InvalidInput("Čech nerve needs a non-negative level bound");
  for (int u : family)
    if (c.dst(u) != x) throw InvalidInput("family member " + c.morphism(u) + " does not land in " + c.object(x));
  int no = c.num_objects();
  AugmentedObject out;
  out.object = x;
  out.u.base = site.base;

  // Lifts at Z over w: pairs (member position, v) with u∘v = w.
  using Lift = std::pair<int, int>;
  using Key = std::pair<int, std::vector<Lift>>;  // (w, reduced tuple)
  std::vector<std::map<Key, int>> gen_index(no);
  std::vector<std::vector<Key>> gens(no);
  bool truncated = false;
  auto lift_name = [&](const Lift& l) { return c.morphism(l.second) + "@" + c.morphism(family[l.first]); };

  for (int z = 0; z < no; ++z) {
    const auto& hz = c.hom(z, x);
    for (std::size_t wi = 0; wi < hz.size(); ++wi) {
      std::vector<Lift> lifts;
      for (std::size_t a = 0; a < family.size(); ++a)
        for (int v : c.hom(z, c.src(family[a])))
          if (c.compose(family[a], v) == hz[wi]) lifts.push_back({static_cast<int>(a), v});
      if (lifts.size() >= 2) truncated = true;
      std::vector<Lift> tuple;
      std::function<void()> rec = [&]() {
        if (!tuple.empty()) {
          gen_index[z][{static_cast<int>(wi), tuple}] = static_cast<int>(gens[z].size());
          gens[z].push_back({static_cast<int>(wi), tuple});
        }
        if (static_cast<int>(tuple.size()) == levels + 1) return;
        for (const auto& l : lifts) {
          if (!tuple.empty() && tuple.back() == l) continue;
          tuple.push_back(l);
          rec();
          tuple.pop_back();
        }
      };
      rec();
    }
  }
  // Collapse consecutive repeats: the reduced tuple and the surjection onto it.
  auto normalize = [&](int z, int w, const std::vector<Lift>& t) {
    std::vector<Lift> red;
    OpMap sigma;
    for (const auto& l : t) {
      if (red.empty() || red.back() != l) red.push_back(l);
      sigma.push_back(static_cast<int>(red.size()) - 1);
    }
    return Simplex{sigma, gen_index[z].at({w, red})};
  };
  for (int z = 0; z < no; ++z) {
    std::vector<Generator> g;
    for (const auto& [w, t] : gens[z]) {
      Generator gen;
      for (std::size_t i = 0; i < t.size(); ++i) gen.id += (i ? "," : "") + lift_name(t[i]);
      gen.id = "(" + gen.id + ")";
      gen.dim = static_cast<int>(t.size()) - 1;
      for (std::size_t i = 0; i < t.size() && t.size() > 1; ++i) {
        std::vector<Lift> face(t);
        face.erase(face.begin() + i);
        gen.faces.push_back(normalize(z, w, face));
      }
      g.push_back(std::move(gen));
    }
    out.u.values.emplace_back(std::move(g));
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    int s = c.src(f), t = c.dst(f);
    const auto& hs = c.hom(s, x);
    SimplicialMap m;
    for (const auto& [w, tuple] : gens[t]) {
      int ww = c.compose(c.hom(t, x)[w], f);
      int wi = static_cast<int>(std::find(hs.begin(), hs.end(), ww) - hs.begin());
      std::vector<Lift> moved;
      for (const auto& [a, v] : tuple) moved.push_back({a, c.compose(v, f)});
      m.images.push_back(normalize(s, wi, moved));
    }
    out.u.restrictions.push_back(std::move(m));
  }
  for (int z = 0; z < no; ++z) {
    SimplicialMap aug;
    for (const auto& [w, t] : gens[z]) aug.images.push_back(Simplex{OpMap(t.size(), 0), w});
    out.augmentation.components.push_back(std::move(aug));
  }
  if (truncated) out.truncation = TruncationTag{levels, levels - 1};
  return out;
}

LevelMap augmentation_level0(const AugmentedObject& u) {
  const FinCategory& c = *u.u.base;
  LevelMap out;
  out.source = level_presheaf(u.u, 0);
  out.target = yoneda(u.u.base, u.object);
  for (int z = 0; z < c.num_objects(); ++z) {
    std::vector<int> comp;
    for (const auto& s : u.u.values[z].level(0)) comp.push_back(u.augmentation.components[z].images[s.gen].gen);
    out.map.components.push_back(std::move(comp));
  }
  return out;
}

LevelMap relative_matching(const AugmentedObject& u, int n) {
  if (n < 1) throw InvalidInput("matching objects start in degree 1");
  const FinCategory& c = *u.u.base;
  int no = c.num_objects();
  LevelMap out;
  out.source = level_presheaf(u.u, n);
  out.target.base = u.u.base;
  std::vector<std::vector<Simplex>> lower(no);
  std::vector<std::map<Simplex, int>> lower_index(no);
  std::vector<std::map<std::vector<int>, int>> tuple_index(no);
  std::vector<std::vector<std::vector<int>>> tuples(no);
  for (int z = 0; z < no; ++z) {
    const SimplicialSetFin& k = u.u.values[z];
    lower[z] = k.level(n - 1);
    for (std::size_t i = 0; i < lower[z].size(); ++i) lower_index[z][lower[z][i]] = static_cast<int>(i);
    std::vector<int> aug;
    for (const auto& s : lower[z]) aug.push_back(u.augmentation.components[z].images[s.gen].gen);
    std::vector<int> pick;
    std::function<void()> rec = [&]() {
      int j = static_cast<int>(pick.size());
      if (j == n + 1) {
        tuple_index[z][pick] = static_cast<int>(tuples[z].size());
        tuples[z].push_back(pick);
        return;
      }
      for (std::size_t cand = 0; cand < lower[z].size(); ++cand) {
        if (j > 0 && aug[cand] != aug[pick[0]]) continue;
        bool ok = true;
        for (int i = 0; i < j && ok && n >= 2; ++i)
          ok = k.face(i, lower[z][cand]) == k.face(j - 1, lower[z][pick[i]]);
        if (!ok) continue;
        pick.push_back(static_cast<int>(cand));
        rec();
        pick.pop_back();
      }
    };
    rec();
    out.target.sections.emplace_back();
    for (const auto& t : tuples[z]) {
      std::string name = "(";
      for (std::size_t i = 0; i < t.size(); ++i) name += (i ? "," : "") + k.name(lower[z][t[i]]);
      out.target.sections[z].push_back(name + ")");
    }
    std::vector<int> comp;
    for (const auto& s : k.level(n)) {
      std::vector<int> faces;
      for (int i = 0; i <= n; ++i) faces.push_back(lower_index[z].at(k.face(i, s)));
      comp.push_back(tuple_index[z].at(faces));
    }
    out.map.components.push_back(std::move(comp));
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    int s = c.src(f), t = c.dst(f);
    out.target.restrict.emplace_back();
    for (const auto& tup : tuples[t]) {
      std::vector<int> moved;
      for (int e : tup)
        moved.push_back(lower_index[s].at(map_simplex(u.u.values[s], u.u.restrictions[f], lower[t][e])));
      out.target.restrict.back().push_back(tuple_index[s].at(moved));
    }
  }
  return out;
}

HypercoverReport is_hypercover(const AugmentedObject& u, const SiteData& site, int bound) {
  if (u.truncation && bound > u.truncation->bound)
    throw TruncationTooSmall("hypercover check through degree " + std::to_string(bound) + " needs levels up to " +
                             std::to_string(bound) + ", the object stops at " + std::to_string(u.truncation->bound));
  HypercoverReport r;
  r.bound = bound;
  r.pass = true;
  for (int k = 0; k <= bound; ++k) {
    bool ok = representable_decomposition(level_presheaf(u.u, k)).has_value();
    r.representable_levels.push_back(ok);
    if (!ok && !r.first_bad_level) r.first_bad_level = k;
    r.pass = r.pass && ok;
  }
  LevelMap a = augmentation_level0(u);
  r.degree0 = is_cover(a.source, a.target, a.map, site);
  r.pass = r.pass && r.degree0.pass;
  for (int n = 1; n <= bound; ++n) {
    LevelMap m = relative_matching(u, n);
    r.matching.push_back(is_cover(m.source, m.target, m.map, site));
    r.matching_iso.push_back(is_presheaf_isomorphism(m.source, m.target, m.map));
    r.pass = r.pass && r.matching.back().pass;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Realization at the point and relations

PointRealization realize_at_point(const SimplicialPresheaf& f) {
  const FinCategory& c = *f.base;
  PointRealization out;
  std::vector<const SimplicialSetFin*> pieces;
  std::vector<std::string> labels;
  for (int o = 0; o < c.num_objects(); ++o) {
    pieces.push_back(&f.values[o]);
    labels.push_back(c.object(o));
  }
  out.coproduct = coproduct(pieces, labels);
  std::vector<SimplicialMap> inc;
  for (int o = 0; o < c.num_objects(); ++o) inc.push_back(out.coproduct.inclusion(o, f.values[o]));
  std::vector<std::pair<Simplex, Simplex>> pairs;
  for (int u = 0; u < c.num_morphisms(); ++u) {
    if (c.is_identity(u)) continue;
    int a = c.src(u), t = c.dst(u);
    for (int g = 0; g < f.values[t].num_generators(); ++g)
      pairs.push_back({inc[t].images[g], map_simplex(out.coproduct.set, inc[a], f.restrictions[u].images[g])});
  }
  out.quotient = coequalize(out.coproduct.set, pairs);
  out.set = out.quotient.set;
  return out;
}

SimplicialMap realize_at_point(const SimplicialPresheaf& f, const PointRealization& rf, const SimplicialPresheaf& g,
                               const PointRealization& rg, const SimplicialPresheafMap& phi) {
  const FinCategory& c = *f.base;
  SimplicialMap on_coproduct;
  for (int o = 0; o < c.num_objects(); ++o) {
    SimplicialMap inc = rg.coproduct.inclusion(o, g.values[o]);
    for (const auto& img : phi.components[o].images)
      on_coproduct.images.push_back(map_simplex(rg.set, rg.quotient.projection, map_simplex(rg.coproduct.set, inc, img)));
  }
  SimplicialMap out;
  for (const auto& rep : rf.quotient.representatives) out.images.push_back(map_simplex(rg.set, on_coproduct, rep));
  return out;
}

std::vector<Relation> relations(const SiteData& site, int levels) {
  const FinCategory& c = *site.base;
  std::vector<Relation> out;
  std::optional<int> degree;
  if (levels >= 1) degree = levels - 1;
  for (int x = 0; x < c.num_objects(); ++x)
    for (std::size_t fi = 0; fi < site.covers[x].size(); ++fi) {
      const auto& fam = site.covers[x][fi];
      if (fam.synthesized) continue;
      Relation r;
      r.object = x;
      r.family = static_cast<int>(fi);
      r.cech = cech_nerve(site, x, fam.members, levels);
      r.target = discrete_embed(yoneda(site.base, x));
      r.objectwise = objectwise_verdict(r.cech.u, r.target, r.cech.augmentation, degree);
      PointRealization rs = realize_at_point(r.cech.u);
      PointRealization rt = realize_at_point(r.target);
      SimplicialMap m = realize_at_point(r.cech.u, rs, r.target, rt, r.cech.augmentation);
      r.realized = equivalence_verdict(rs.set, rt.set, m, degree);
      out.push_back(std::move(r));
    }
  return out;
}

}  // namespace uht
