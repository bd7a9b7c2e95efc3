#include "uht/presheaf.hpp"
#include "uht/homology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace uht {

int Presheaf::total_sections() const {
  int n = 0;
  for (const auto& s : sections) n += static_cast<int>(s.size());
  return n;
}

std::vector<std::string> Presheaf::check() const {
  std::vector<std::string> problems;
  const FinCategory& c = *base;
  if (static_cast<int>(sections.size()) != c.num_objects() ||
      static_cast<int>(restrict.size()) != c.num_morphisms()) {
    problems.push_back("presheaf data does not match the base category");
    return problems;
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    std::set<std::string> seen(sections[x].begin(), sections[x].end());
    if (seen.size() != sections[x].size()) problems.push_back("duplicate section over '" + c.object(x) + "'");
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const auto& r = restrict[f];
    if (static_cast<int>(r.size()) != size(c.dst(f))) {
      problems.push_back("restriction along '" + c.morphism(f) + "' has the wrong domain");
      continue;
    }
    for (int v : r)
      if (v < 0 || v >= size(c.src(f)))
        problems.push_back("restriction along '" + c.morphism(f) + "' leaves F(" + c.object(c.src(f)) + ")");
  }
  if (!problems.empty()) return problems;
  for (int x = 0; x < c.num_objects(); ++x) {
    const auto& r = restrict[c.identity(x)];
    for (int i = 0; i < size(x); ++i)
      if (r[i] != i) {
        problems.push_back("F(id_" + c.object(x) + ") is not the identity");
        break;
      }
  }
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f) {
      int gf = c.compose(g, f);
      if (gf < 0) continue;
      for (int z = 0; z < size(c.dst(g)); ++z)
        if (restrict[gf][z] != restrict[f][restrict[g][z]]) {
          problems.push_back("F(" + c.morphism(g) + " o " + c.morphism(f) + ") != F(" + c.morphism(f) + ") o F(" +
                             c.morphism(g) + ")");
          break;
        }
    }
  return problems;
}

std::vector<std::string> check_presheaf_map(const Presheaf& f, const Presheaf& g, const PresheafMap& m) {
  std::vector<std::string> problems;
  const FinCategory& c = *f.base;
  if (static_cast<int>(m.components.size()) != c.num_objects()) {
    problems.push_back("presheaf map has the wrong number of components");
    return problems;
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    if (static_cast<int>(m.components[x].size()) != f.size(x)) {
      problems.push_back("component at '" + c.object(x) + "' has the wrong domain");
      continue;
    }
    for (int v : m.components[x])
      if (v < 0 || v >= g.size(x)) problems.push_back("component at '" + c.object(x) + "' leaves its codomain");
  }
  if (!problems.empty()) return problems;
  for (int u = 0; u < c.num_morphisms(); ++u) {
    int x = c.src(u), y = c.dst(u);
    for (int s = 0; s < f.size(y); ++s)
      if (m.components[x][f.restrict[u][s]] != g.restrict[u][m.components[y][s]]) {
        problems.push_back("naturality fails along '" + c.morphism(u) + "'");
        break;
      }
  }
  return problems;
}

bool is_presheaf_isomorphism(const Presheaf& f, const Presheaf& g, const PresheafMap& m) {
  if (!check_presheaf_map(f, g, m).empty()) return false;
  for (int x = 0; x < f.base->num_objects(); ++x) {
    if (f.size(x) != g.size(x)) return false;
    std::set<int> image(m.components[x].begin(), m.components[x].end());
    if (static_cast<int>(image.size()) != g.size(x)) return false;
  }
  return true;
}

PresheafMap identity_presheaf_map(const Presheaf& f) {
  PresheafMap m;
  for (int x = 0; x < f.base->num_objects(); ++x) {
    m.components.emplace_back(f.size(x));
    std::iota(m.components.back().begin(), m.components.back().end(), 0);
  }
  return m;
}

PresheafMap compose(const PresheafMap& g, const PresheafMap& f) {
  PresheafMap h;
  for (std::size_t x = 0; x < f.components.size(); ++x) {
    h.components.emplace_back();
    for (int v : f.components[x]) h.components.back().push_back(g.components[x][v]);
  }
  return h;
}

std::vector<PresheafMap> presheaf_homs(const Presheaf& f, const Presheaf& g, long long bound) {
  const FinCategory& c = *f.base;
  std::vector<std::pair<int, int>> elems;
  for (int x = 0; x < c.num_objects(); ++x)
    for (int s = 0; s < f.size(x); ++s) elems.push_back({x, s});
  PresheafMap cur;
  for (int x = 0; x < c.num_objects(); ++x) cur.components.emplace_back(f.size(x), -1);
  std::vector<PresheafMap> out;
  long long tried = 0;
  auto consistent = [&](int x, int s) {
    // every naturality square touching (x, s) whose other corner is assigned
    for (int u = 0; u < c.num_morphisms(); ++u) {
      if (c.dst(u) == x) {
        int lx = c.src(u);
        int down = cur.components[lx][f.restrict[u][s]];
        if (down >= 0 && down != g.restrict[u][cur.components[x][s]]) return false;
      }
      if (c.src(u) == x) {
        int y = c.dst(u);
        for (int t = 0; t < f.size(y); ++t)
          if (f.restrict[u][t] == s && cur.components[y][t] >= 0 &&
              g.restrict[u][cur.components[y][t]] != cur.components[x][s])
            return false;
      }
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == elems.size()) {
      out.push_back(cur);
      return;
    }
    auto [x, s] = elems[pos];
    for (int v = 0; v < g.size(x); ++v) {
      if (++tried > bound)
        throw SizeBoundExceeded("presheaf hom enumeration exceeded " + std::to_string(bound) + " candidates");
      cur.components[x][s] = v;
      if (consistent(x, s)) rec(pos + 1);
      cur.components[x][s] = -1;
    }
  };
  rec(0);
  return out;
}

Presheaf yoneda(const CatPtr& c, int x) {
  Presheaf p{c, {}, {}};
  std::vector<std::map<int, int>> position(c->num_objects());
  for (int z = 0; z < c->num_objects(); ++z) {
    p.sections.emplace_back();
    for (int u : c->hom(z, x)) {
      position[z][u] = static_cast<int>(p.sections[z].size());
      p.sections[z].push_back(c->morphism(u));
    }
  }
  for (int f = 0; f < c->num_morphisms(); ++f) {
    p.restrict.emplace_back();
    for (int u : c->hom(c->dst(f), x)) p.restrict.back().push_back(position[c->src(f)].at(c->compose(u, f)));
  }
  return p;
}

Presheaf constant_presheaf(const CatPtr& c, const std::vector<std::string>& names) {
  Presheaf p{c, std::vector<std::vector<std::string>>(c->num_objects(), names), {}};
  std::vector<int> id(names.size());
  std::iota(id.begin(), id.end(), 0);
  p.restrict.assign(c->num_morphisms(), id);
  return p;
}

Presheaf terminal_presheaf(const CatPtr& c) { return constant_presheaf(c, {"*"}); }
Presheaf empty_presheaf(const CatPtr& c) { return constant_presheaf(c, {}); }

// ---------------------------------------------------------------------------
// Limits and colimits

std::vector<std::string> PresheafDiagram::check() const {
  std::vector<std::string> problems;
  if (static_cast<int>(values.size()) != index->num_objects() ||
      static_cast<int>(maps.size()) != index->num_morphisms()) {
    problems.push_back("diagram data does not match its index category");
    return problems;
  }
  for (const auto& v : values)
    for (auto& p : v.check()) problems.push_back(p);
  for (int u = 0; u < index->num_morphisms(); ++u)
    for (auto& p : check_presheaf_map(values[index->src(u)], values[index->dst(u)], maps[u]))
      problems.push_back("map '" + index->morphism(u) + "': " + p);
  if (!problems.empty()) return problems;
  for (int i = 0; i < index->num_objects(); ++i)
    if (!(maps[index->identity(i)] == identity_presheaf_map(values[i])))
      problems.push_back("diagram does not preserve the identity of '" + index->object(i) + "'");
  for (int v = 0; v < index->num_morphisms(); ++v)
    for (int u = 0; u < index->num_morphisms(); ++u) {
      int vu = index->compose(v, u);
      if (vu >= 0 && !(compose(maps[v], maps[u]) == maps[vu]))
        problems.push_back("diagram does not preserve " + index->morphism(v) + " o " + index->morphism(u));
    }
  return problems;
}

Cocone colimit(const PresheafDiagram& d) {
  const CatPtr& c = d.values.empty() ? nullptr : d.values.front().base;
  Cocone out;
  CatPtr base = c;
  if (!base) throw InvalidInput("colimit of an empty diagram needs a base category");
  int ni = d.index->num_objects();
  out.apex.base = base;
  out.legs.resize(ni);
  // class index of each (i, s) per base object
  std::vector<std::vector<std::vector<int>>> cls(base->num_objects(), std::vector<std::vector<int>>(ni));
  for (int x = 0; x < base->num_objects(); ++x) {
    std::vector<int> offset(ni + 1, 0);
    for (int i = 0; i < ni; ++i) offset[i + 1] = offset[i] + d.values[i].size(x);
    std::vector<int> parent(offset[ni]);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (int u = 0; u < d.index->num_morphisms(); ++u) {
      int i = d.index->src(u), j = d.index->dst(u);
      for (int s = 0; s < d.values[i].size(x); ++s) {
        int a = find(offset[i] + s), b = find(offset[j] + d.maps[u].components[x][s]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    auto label = [&](int e) {
      int i = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), e) - offset.begin()) - 1;
      return d.index->object(i) + ":" + d.values[i].sections[x][e - offset[i]];
    };
    std::map<int, std::string> least;
    for (int e = 0; e < offset[ni]; ++e) {
      int r = find(e);
      std::string l = label(e);
      auto it = least.find(r);
      if (it == least.end() || l < it->second) least[r] = l;
    }
    std::vector<std::pair<std::string, int>> order;
    for (const auto& [r, l] : least) order.push_back({l, r});
    std::sort(order.begin(), order.end());
    std::map<int, int> index_of;
    out.apex.sections.emplace_back();
    for (const auto& [l, r] : order) {
      index_of[r] = static_cast<int>(out.apex.sections[x].size());
      out.apex.sections[x].push_back(l);
    }
    for (int i = 0; i < ni; ++i)
      for (int s = 0; s < d.values[i].size(x); ++s) cls[x][i].push_back(index_of.at(find(offset[i] + s)));
  }
  for (int i = 0; i < ni; ++i) {
    out.legs[i].components.resize(base->num_objects());
    for (int x = 0; x < base->num_objects(); ++x) out.legs[i].components[x] = cls[x][i];
  }
  out.apex.restrict.resize(base->num_morphisms());
  for (int f = 0; f < base->num_morphisms(); ++f) {
    int x = base->src(f), y = base->dst(f);
    auto& r = out.apex.restrict[f];
    r.assign(out.apex.size(y), -1);
    for (int i = 0; i < ni; ++i)
      for (int s = 0; s < d.values[i].size(y); ++s) r[cls[y][i][s]] = cls[x][i][d.values[i].restrict[f][s]];
  }
  return out;
}

Cone limit(const PresheafDiagram& d) {
  CatPtr base = d.values.empty() ? nullptr : d.values.front().base;
  if (!base) throw InvalidInput("limit of an empty diagram needs a base category");
  int ni = d.index->num_objects();
  Cone out;
  out.apex.base = base;
  std::vector<std::vector<std::vector<int>>> families(base->num_objects());
  std::vector<std::map<std::vector<int>, int>> family_index(base->num_objects());
  for (int x = 0; x < base->num_objects(); ++x) {
    std::vector<int> cur(ni, -1);
    std::function<void(int)> rec = [&](int i) {
      if (i == ni) {
        family_index[x][cur] = static_cast<int>(families[x].size());
        families[x].push_back(cur);
        return;
      }
      for (int s = 0; s < d.values[i].size(x); ++s) {
        cur[i] = s;
        bool ok = true;
        for (int u = 0; u < d.index->num_morphisms() && ok; ++u) {
          int a = d.index->src(u), b = d.index->dst(u);
          if (a > i || b > i) continue;
          if (d.maps[u].components[x][cur[a]] != cur[b]) ok = false;
        }
        if (ok) rec(i + 1);
      }
      cur[i] = -1;
    };
    rec(0);
    out.apex.sections.emplace_back();
    for (const auto& fam : families[x]) {
      std::vector<std::string> parts;
      for (int i = 0; i < ni; ++i) parts.push_back(d.values[i].sections[x][fam[i]]);
      out.apex.sections[x].push_back("(" + join(parts, ",") + ")");
    }
  }
  out.apex.restrict.resize(base->num_morphisms());
  for (int f = 0; f < base->num_morphisms(); ++f) {
    int x = base->src(f), y = base->dst(f);
    for (const auto& fam : families[y]) {
      std::vector<int> down(ni);
      for (int i = 0; i < ni; ++i) down[i] = d.values[i].restrict[f][fam[i]];
      out.apex.restrict[f].push_back(family_index[x].at(down));
    }
  }
  out.legs.resize(ni);
  for (int i = 0; i < ni; ++i)
    for (int x = 0; x < base->num_objects(); ++x) {
      out.legs[i].components.emplace_back();
      for (const auto& fam : families[x]) out.legs[i].components.back().push_back(fam[i]);
    }
  return out;
}

namespace {

PresheafDiagram discrete_diagram(const std::vector<Presheaf>& pieces) {
  std::vector<std::string> names;
  int width = static_cast<int>(std::to_string(pieces.size()).size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::string n = std::to_string(i);
    names.push_back(std::string(width - n.size(), '0') + n);
  }
  PresheafDiagram d{discrete_category(names), pieces, {}};
  for (const auto& p : pieces) d.maps.push_back(identity_presheaf_map(p));
  return d;
}

}  // namespace

Cocone coproduct(const std::vector<Presheaf>& pieces) { return colimit(discrete_diagram(pieces)); }
Cone product(const std::vector<Presheaf>& pieces) { return limit(discrete_diagram(pieces)); }

Cocone pushout(const Presheaf& a, const Presheaf& b, const Presheaf& c, const PresheafMap& f,
               const PresheafMap& g) {
  CatPtr span = span_category();  // b <-f- a -g-> c
  PresheafDiagram d{span, {a, b, c}, std::vector<PresheafMap>(span->num_morphisms())};
  d.maps[span->morphism_index("f")] = f;
  d.maps[span->morphism_index("g")] = g;
  for (int x = 0; x < 3; ++x) d.maps[span->identity(x)] = identity_presheaf_map(d.values[x]);
  return colimit(d);
}

Cone pullback(const Presheaf& a, const Presheaf& b, const Presheaf& c, const PresheafMap& f, const PresheafMap& g) {
  CatPtr cospan = poset_category({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  PresheafDiagram d{cospan, {a, b, c}, std::vector<PresheafMap>(cospan->num_morphisms())};
  d.maps[cospan->morphism_index("a<c")] = f;
  d.maps[cospan->morphism_index("b<c")] = g;
  for (int x = 0; x < 3; ++x) d.maps[cospan->identity(x)] = identity_presheaf_map(d.values[x]);
  return limit(d);
}

std::optional<PresheafMap> colimit_factorization(const PresheafDiagram& d, const Cocone& colim,
                                                 const Presheaf& target, const std::vector<PresheafMap>& legs) {
  const FinCategory& base = *colim.apex.base;
  PresheafMap m;
  for (int x = 0; x < base.num_objects(); ++x) {
    std::vector<int> comp(colim.apex.size(x), -1);
    for (int i = 0; i < d.index->num_objects(); ++i)
      for (int s = 0; s < d.values[i].size(x); ++s) {
        int k = colim.legs[i].components[x][s];
        int v = legs[i].components[x][s];
        if (comp[k] >= 0 && comp[k] != v) return std::nullopt;
        comp[k] = v;
      }
    m.components.push_back(std::move(comp));
  }
  if (!check_presheaf_map(colim.apex, target, m).empty()) return std::nullopt;
  return m;
}

// ---------------------------------------------------------------------------
// Category of elements, representability

Elements category_of_elements(const Presheaf& f) {
  const CatPtr& c = f.base;
  CategorySpec s;
  auto oname = [&](int x, int e) { return "(" + c->object(x) + "," + f.sections[x][e] + ")"; };
  auto mname = [&](int u, int e) { return "(" + c->morphism(u) + "," + f.sections[c->dst(u)][e] + ")"; };
  for (int x = 0; x < c->num_objects(); ++x)
    for (int e = 0; e < f.size(x); ++e) {
      s.objects.push_back(oname(x, e));
      s.identities[oname(x, e)] = mname(c->identity(x), e);
    }
  for (int u = 0; u < c->num_morphisms(); ++u)
    for (int e = 0; e < f.size(c->dst(u)); ++e)
      s.morphisms.push_back({mname(u, e), oname(c->src(u), f.restrict[u][e]), oname(c->dst(u), e)});
  // (v, z) o (u, y) with y = F(v)(z) is (v o u, z)
  for (int v = 0; v < c->num_morphisms(); ++v)
    for (int u = 0; u < c->num_morphisms(); ++u) {
      int vu = c->compose(v, u);
      if (vu < 0) continue;
      for (int z = 0; z < f.size(c->dst(v)); ++z)
        s.compose.push_back({mname(v, z), mname(u, f.restrict[v][z]), mname(vu, z)});
    }
  Elements el;
  el.category = FinCategory::make(s);
  const FinCategory& e = *el.category;
  el.pairs.resize(e.num_objects());
  for (int x = 0; x < c->num_objects(); ++x)
    for (int i = 0; i < f.size(x); ++i) el.pairs[e.object_index(oname(x, i))] = {x, i};
  std::vector<Presheaf> reps;
  for (int x = 0; x < c->num_objects(); ++x) reps.push_back(yoneda(c, x));
  el.diagram.index = el.category;
  for (int o = 0; o < e.num_objects(); ++o) el.diagram.values.push_back(reps[el.pairs[o].first]);
  el.diagram.maps.resize(e.num_morphisms());
  for (int u = 0; u < c->num_morphisms(); ++u) {
    int x = c->src(u), y = c->dst(u);
    // r(u): rX -> rY, w |-> u o w
    PresheafMap pm;
    for (int z = 0; z < c->num_objects(); ++z) {
      pm.components.emplace_back();
      const auto& hz = c->hom(z, y);
      for (int w : c->hom(z, x)) {
        int uw = c->compose(u, w);
        pm.components.back().push_back(static_cast<int>(std::find(hz.begin(), hz.end(), uw) - hz.begin()));
      }
    }
    for (int z = 0; z < f.size(y); ++z) el.diagram.maps[e.morphism_index(mname(u, z))] = pm;
  }
  return el;
}

ColimitVerdict canonical_colim_verify(const Presheaf& f) {
  ColimitVerdict v;
  v.presheaf_sections = f.total_sections();
  if (f.total_sections() == 0) {
    v.pass = true;
    return v;
  }
  Elements el = category_of_elements(f);
  Cocone colim = colimit(el.diagram);
  v.colimit_sections = colim.apex.total_sections();
  const FinCategory& c = *f.base;
  std::vector<PresheafMap> legs;
  for (const auto& [x, e] : el.pairs) {
    PresheafMap m;
    for (int z = 0; z < c.num_objects(); ++z) {
      m.components.emplace_back();
      for (int u : c.hom(z, x)) m.components.back().push_back(f.restrict[u][e]);
    }
    legs.push_back(std::move(m));
  }
  auto comparison = colimit_factorization(el.diagram, colim, f, legs);
  if (!comparison) {
    v.problems.push_back("the canonical cocone does not factor through the colimit");
    return v;
  }
  if (!is_presheaf_isomorphism(colim.apex, f, *comparison)) {
    v.problems.push_back("the comparison map colim rX -> F is not an isomorphism");
    return v;
  }
  v.pass = true;
  return v;
}

namespace {

bool represents(const Presheaf& f, int x, int e) {
  const FinCategory& c = *f.base;
  for (int z = 0; z < c.num_objects(); ++z) {
    const auto& h = c.hom(z, x);
    if (static_cast<int>(h.size()) != f.size(z)) return false;
    std::set<int> image;
    for (int u : h) image.insert(f.restrict[u][e]);
    if (static_cast<int>(image.size()) != f.size(z)) return false;
  }
  return true;
}

}  // namespace

std::optional<Representation> representability_check(const Presheaf& f) {
  for (int x = 0; x < f.base->num_objects(); ++x)
    for (int e = 0; e < f.size(x); ++e)
      if (represents(f, x, e)) return Representation{x, e};
  return std::nullopt;
}

std::optional<std::vector<Representation>> representable_decomposition(const Presheaf& f) {
  const FinCategory& c = *f.base;
  // elements as (x, e) flattened
  std::vector<int> offset(c.num_objects() + 1, 0);
  for (int x = 0; x < c.num_objects(); ++x) offset[x + 1] = offset[x] + f.size(x);
  std::vector<int> parent(offset.back());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (int u = 0; u < c.num_morphisms(); ++u)
    for (int e = 0; e < f.size(c.dst(u)); ++e) {
      int a = find(offset[c.dst(u)] + e), b = find(offset[c.src(u)] + f.restrict[u][e]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, std::vector<std::pair<int, int>>> comps;
  for (int x = 0; x < c.num_objects(); ++x)
    for (int e = 0; e < f.size(x); ++e) comps[find(offset[x] + e)].push_back({x, e});
  std::vector<Representation> out;
  for (const auto& [root, members] : comps) {
    std::optional<Representation> term;
    for (const auto& [x, e] : members) {
      // (x, e) is terminal in its component iff every element (z, w) of the
      // component has exactly one u: z -> x with F(u)(e) = w.
      bool ok = true;
      for (const auto& [z, w] : members) {
        int count = 0;
        for (int u : c.hom(z, x))
          if (f.restrict[u][e] == w) ++count;
        if (count != 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        term = Representation{x, e};
        break;
      }
    }
    if (!term) return std::nullopt;
    out.push_back(*term);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simplicial presheaves

int SimplicialPresheaf::dim() const {
  int d = -1;
  for (const auto& v : values) d = std::max(d, v.dim());
  return d;
}

int SimplicialPresheaf::total_generators() const {
  int n = 0;
  for (const auto& v : values) n += v.num_generators();
  return n;
}

std::vector<std::string> SimplicialPresheaf::check() const {
  std::vector<std::string> problems;
  const FinCategory& c = *base;
  if (static_cast<int>(values.size()) != c.num_objects() ||
      static_cast<int>(restrictions.size()) != c.num_morphisms()) {
    problems.push_back("simplicial presheaf data does not match the base category");
    return problems;
  }
  for (int x = 0; x < c.num_objects(); ++x)
    for (auto& p : values[x].check_identities()) problems.push_back("F(" + c.object(x) + "): " + p);
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (auto& p : check_map(values[c.dst(f)], values[c.src(f)], restrictions[f]))
      problems.push_back("restriction along '" + c.morphism(f) + "': " + p);
  if (!problems.empty()) return problems;
  for (int x = 0; x < c.num_objects(); ++x)
    if (!(restrictions[c.identity(x)] == identity_map(values[x])))
      problems.push_back("F(id_" + c.object(x) + ") is not the identity");
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f) {
      int gf = c.compose(g, f);
      if (gf < 0) continue;
      if (!(compose(values[c.src(f)], restrictions[f], restrictions[g]) == restrictions[gf]))
        problems.push_back("F(" + c.morphism(g) + " o " + c.morphism(f) + ") != F(" + c.morphism(f) + ") o F(" +
                           c.morphism(g) + ")");
    }
  return problems;
}

std::vector<std::string> check_simplicial_presheaf_map(const SimplicialPresheaf& f, const SimplicialPresheaf& g,
                                                       const SimplicialPresheafMap& m) {
  std::vector<std::string> problems;
  const FinCategory& c = *f.base;
  if (static_cast<int>(m.components.size()) != c.num_objects()) {
    problems.push_back("simplicial presheaf map has the wrong number of components");
    return problems;
  }
  for (int x = 0; x < c.num_objects(); ++x)
    for (auto& p : check_map(f.values[x], g.values[x], m.components[x]))
      problems.push_back("component at '" + c.object(x) + "': " + p);
  if (!problems.empty()) return problems;
  for (int u = 0; u < c.num_morphisms(); ++u) {
    int x = c.src(u), y = c.dst(u);
    auto lhs = compose(g.values[x], m.components[x], f.restrictions[u]);
    auto rhs = compose(g.values[x], g.restrictions[u], m.components[y]);
    if (!(lhs == rhs)) problems.push_back("naturality fails along '" + c.morphism(u) + "'");
  }
  return problems;
}

bool is_simplicial_presheaf_isomorphism(const SimplicialPresheaf& f, const SimplicialPresheaf& g,
                                        const SimplicialPresheafMap& m) {
  if (!check_simplicial_presheaf_map(f, g, m).empty()) return false;
  for (int x = 0; x < f.base->num_objects(); ++x)
    if (!is_isomorphism(g.values[x], m.components[x])) return false;
  return true;
}

SimplicialPresheafMap identity_simplicial_presheaf_map(const SimplicialPresheaf& f) {
  SimplicialPresheafMap m;
  for (const auto& v : f.values) m.components.push_back(identity_map(v));
  return m;
}

SimplicialPresheafMap compose(const SimplicialPresheaf& target, const SimplicialPresheafMap& g,
                              const SimplicialPresheafMap& f) {
  SimplicialPresheafMap h;
  for (std::size_t x = 0; x < f.components.size(); ++x)
    h.components.push_back(compose(target.values[x], g.components[x], f.components[x]));
  return h;
}

std::vector<SimplicialPresheafMap> simplicial_presheaf_homs(const SimplicialPresheaf& f, const SimplicialPresheaf& g,
                                                           long long bound) {
  const FinCategory& c = *f.base;
  int no = c.num_objects();
  std::vector<std::vector<SimplicialMap>> local;
  for (int x = 0; x < no; ++x) local.push_back(hom_enumerate(f.values[x], g.values[x], bound));
  std::vector<SimplicialPresheafMap> out;
  std::vector<int> choice(no, -1);
  long long tried = 0;
  auto natural_so_far = [&](int upto) {
    for (int u = 0; u < c.num_morphisms(); ++u) {
      int x = c.src(u), y = c.dst(u);
      if (x > upto || y > upto || c.is_identity(u)) continue;
      if (x != upto && y != upto) continue;
      const SimplicialMap& mx = local[x][choice[x]];
      const SimplicialMap& my = local[y][choice[y]];
      if (!(compose(g.values[x], mx, f.restrictions[u]) == compose(g.values[x], g.restrictions[u], my))) return false;
    }
    return true;
  };
  std::function<void(int)> rec = [&](int x) {
    if (x == no) {
      SimplicialPresheafMap m;
      for (int y = 0; y < no; ++y) m.components.push_back(local[y][choice[y]]);
      out.push_back(std::move(m));
      return;
    }
    for (std::size_t i = 0; i < local[x].size(); ++i) {
      if (++tried > bound) throw SizeBoundExceeded("simplicial presheaf hom enumeration exceeded " + std::to_string(bound));
      choice[x] = static_cast<int>(i);
      if (natural_so_far(x)) rec(x + 1);
    }
    choice[x] = -1;
  };
  rec(0);
  return out;
}

Presheaf level_presheaf(const SimplicialPresheaf& f, int n) {
  const FinCategory& c = *f.base;
  Presheaf p{f.base, {}, {}};
  std::vector<std::unordered_map<Simplex, int, SimplexHash>> index(c.num_objects());
  std::vector<std::vector<Simplex>> levels(c.num_objects());
  for (int x = 0; x < c.num_objects(); ++x) {
    levels[x] = f.values[x].level(n);
    p.sections.emplace_back();
    for (std::size_t i = 0; i < levels[x].size(); ++i) {
      index[x][levels[x][i]] = static_cast<int>(i);
      p.sections[x].push_back(f.values[x].name(levels[x][i]));
    }
  }
  for (int u = 0; u < c.num_morphisms(); ++u) {
    p.restrict.emplace_back();
    for (const auto& s : levels[c.dst(u)])
      p.restrict.back().push_back(index[c.src(u)].at(map_simplex(f.values[c.src(u)], f.restrictions[u], s)));
  }
  return p;
}

std::optional<Presheaf> nondegenerate_presheaf(const SimplicialPresheaf& f, int n) {
  const FinCategory& c = *f.base;
  Presheaf p{f.base, {}, {}};
  std::vector<std::map<int, int>> pos(c.num_objects());
  for (int x = 0; x < c.num_objects(); ++x) {
    p.sections.emplace_back();
    for (int g : f.values[x].generators_of_dim(n)) {
      pos[x][g] = static_cast<int>(p.sections[x].size());
      p.sections[x].push_back(f.values[x].generator(g).id);
    }
  }
  for (int u = 0; u < c.num_morphisms(); ++u) {
    p.restrict.emplace_back();
    for (int g : f.values[c.dst(u)].generators_of_dim(n)) {
      const Simplex& img = f.restrictions[u].images[g];
      if (!img.nondegenerate()) return std::nullopt;
      p.restrict.back().push_back(pos[c.src(u)].at(img.gen));
    }
  }
  return p;
}

SimplicialPresheaf discrete_embed(const Presheaf& f) {
  SimplicialPresheaf s{f.base, {}, {}};
  for (const auto& sec : f.sections) s.values.push_back(discrete(sec));
  for (const auto& r : f.restrict) {
    SimplicialMap m;
    for (int v : r) m.images.push_back(Simplex{{0}, v});
    s.restrictions.push_back(std::move(m));
  }
  return s;
}

SimplicialPresheafMap discrete_embed(const Presheaf& f, const Presheaf& g, const PresheafMap& m) {
  (void)f;
  (void)g;
  SimplicialPresheafMap out;
  for (const auto& comp : m.components) {
    SimplicialMap sm;
    for (int v : comp) sm.images.push_back(Simplex{{0}, v});
    out.components.push_back(std::move(sm));
  }
  return out;
}

Presheaf pi0_presheaf(const SimplicialPresheaf& f) {
  const FinCategory& c = *f.base;
  Presheaf p{f.base, {}, {}};
  std::vector<std::map<int, int>> comp_of(c.num_objects());
  for (int x = 0; x < c.num_objects(); ++x) {
    p.sections.emplace_back();
    auto comps = pi0(f.values[x]);
    for (std::size_t k = 0; k < comps.size(); ++k) {
      p.sections[x].push_back(f.values[x].generator(comps[k].front()).id);
      for (int v : comps[k]) comp_of[x][v] = static_cast<int>(k);
    }
  }
  for (int u = 0; u < c.num_morphisms(); ++u) {
    p.restrict.emplace_back();
    int x = c.src(u), y = c.dst(u);
    for (const auto& comp : pi0(f.values[y]))
      p.restrict.back().push_back(comp_of[x].at(f.restrictions[u].images[comp.front()].gen));
  }
  return p;
}

SimplicialPresheaf constant_simplicial(const CatPtr& c, const SimplicialSetFin& k) {
  SimplicialPresheaf s{c, std::vector<SimplicialSetFin>(c->num_objects(), k), {}};
  s.restrictions.assign(c->num_morphisms(), identity_map(k));
  return s;
}

Tensor tensor_simplicial(const SimplicialPresheaf& f, const SimplicialSetFin& k) {
  const FinCategory& c = *f.base;
  Tensor t;
  t.result.base = f.base;
  for (int x = 0; x < c.num_objects(); ++x) {
    t.products.push_back(product(f.values[x], k));
    t.result.values.push_back(t.products.back().set);
  }
  SimplicialMap idk = identity_map(k);
  for (int u = 0; u < c.num_morphisms(); ++u) {
    int x = c.src(u), y = c.dst(u);
    t.result.restrictions.push_back(
        product_map(t.products[y], t.products[x], f.values[x], k, f.restrictions[u], idk));
  }
  return t;
}

SimplicialCoproduct coproduct(const std::vector<const SimplicialPresheaf*>& pieces,
                              const std::vector<std::string>& labels) {
  if (pieces.empty()) throw InvalidInput("coproduct of no simplicial presheaves needs a base");
  const CatPtr& base = pieces.front()->base;
  const FinCategory& c = *base;
  SimplicialCoproduct out;
  out.result.base = base;
  std::vector<Coproduct> per_object;
  for (int x = 0; x < c.num_objects(); ++x) {
    std::vector<const SimplicialSetFin*> sets;
    for (const auto* p : pieces) sets.push_back(&p->values[x]);
    per_object.push_back(uht::coproduct(sets, labels));
    out.result.values.push_back(per_object.back().set);
  }
  for (int u = 0; u < c.num_morphisms(); ++u) {
    int x = c.src(u), y = c.dst(u);
    SimplicialMap m;
    for (std::size_t p = 0; p < pieces.size(); ++p)
      for (const auto& img : pieces[p]->restrictions[u].images)
        m.images.push_back(Simplex{img.map, img.gen + per_object[x].offsets[p]});
    (void)y;
    out.result.restrictions.push_back(std::move(m));
  }
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    SimplicialPresheafMap inc;
    for (int x = 0; x < c.num_objects(); ++x) inc.components.push_back(per_object[x].inclusion(p, pieces[p]->values[x]));
    out.inclusions.push_back(std::move(inc));
  }
  return out;
}

PresheafQuotient coequalize(const SimplicialPresheaf& b,
                            const std::vector<std::vector<std::pair<Simplex, Simplex>>>& pairs) {
  const FinCategory& c = *b.base;
  int no = c.num_objects();
  std::vector<std::set<std::pair<Simplex, Simplex>>> closed(no);
  std::vector<std::pair<int, std::pair<Simplex, Simplex>>> work;
  auto add = [&](int x, Simplex a, Simplex s) {
    if (a == s) return;
    if (s < a) std::swap(a, s);
    if (closed[x].insert({a, s}).second) work.push_back({x, {a, s}});
  };
  for (int x = 0; x < no; ++x)
    for (const auto& [a, s] : pairs[x]) add(x, a, s);
  while (!work.empty()) {
    auto [y, pr] = work.back();
    work.pop_back();
    for (int u = 0; u < c.num_morphisms(); ++u) {
      if (c.dst(u) != y || c.is_identity(u)) continue;
      int x = c.src(u);
      add(x, map_simplex(b.values[x], b.restrictions[u], pr.first),
          map_simplex(b.values[x], b.restrictions[u], pr.second));
    }
  }
  PresheafQuotient out;
  out.result.base = b.base;
  std::vector<Quotient> qs;
  for (int x = 0; x < no; ++x) {
    qs.push_back(uht::coequalize(b.values[x], std::vector(closed[x].begin(), closed[x].end())));
    out.result.values.push_back(qs.back().set);
    out.projection.components.push_back(qs.back().projection);
  }
  for (int u = 0; u < c.num_morphisms(); ++u) {
    int x = c.src(u), y = c.dst(u);
    SimplicialMap m;
    for (const auto& rep : qs[y].representatives)
      m.images.push_back(
          map_simplex(qs[x].set, qs[x].projection, map_simplex(b.values[x], b.restrictions[u], rep)));
    out.result.restrictions.push_back(std::move(m));
  }
  return out;
}

}  // namespace uht
