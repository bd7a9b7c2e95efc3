#include "uht/resolution.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "uht/hocolim.hpp"

namespace uht {

namespace {

std::vector<Simplex> flatten(const SimplicialPresheafMap& m) {
  std::vector<Simplex> out;
  for (const auto& c : m.components) out.insert(out.end(), c.images.begin(), c.images.end());
  return out;
}

SimplicialPresheafMap empty_map(std::size_t objects) {
  SimplicialPresheafMap m;
  m.components.resize(objects);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cosimplicial objects

SimplicialPresheafMap CosimplicialObject::induced(const OpMap& theta, int n) const {
  int k = static_cast<int>(theta.size()) - 1;
  if (k > m || n > m)
    throw TruncationTooSmall("cosimplicial operator [" + std::to_string(k) + "] -> [" + std::to_string(n) +
                             "] exceeds bound " + std::to_string(m));
  for (int j = 0; j < k; ++j)
    if (theta[j] == theta[j + 1]) {
      OpMap rest(theta);
      rest.erase(rest.begin() + j + 1);
      return compose(objects[n], induced(rest, n), codegeneracies[k - 1][j]);
    }
  if (k == n) return identity_simplicial_presheaf_map(objects[n]);
  int i = 0;
  while (i < static_cast<int>(theta.size()) && theta[i] == i) ++i;
  OpMap lower(theta);
  for (int& v : lower)
    if (v > i) --v;
  return compose(objects[n], cofaces[n][i], induced(lower, n - 1));
}

std::vector<std::string> CosimplicialObject::check() const {
  std::vector<std::string> problems;
  if (static_cast<int>(objects.size()) != m + 1 || static_cast<int>(cofaces.size()) != m + 1 ||
      static_cast<int>(codegeneracies.size()) != m) {
    problems.push_back("cosimplicial object does not have levels 0.." + std::to_string(m));
    return problems;
  }
  for (int n = 0; n <= m; ++n)
    for (auto& p : objects[n].check()) problems.push_back("level " + std::to_string(n) + ": " + p);
  if (!problems.empty()) return problems;

  struct Gen {
    OpMap op;
    int src, dst;
    const SimplicialPresheafMap* map;
    std::string name;
  };
  std::vector<Gen> gens;
  for (int n = 1; n <= m; ++n) {
    if (static_cast<int>(cofaces[n].size()) != n + 1) {
      problems.push_back("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " cofaces");
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      std::string name = "d^" + std::to_string(i) + ":" + std::to_string(n - 1) + "->" + std::to_string(n);
      for (auto& p : check_simplicial_presheaf_map(objects[n - 1], objects[n], cofaces[n][i]))
        problems.push_back(name + ": " + p);
      gens.push_back({coface_op(n, i), n - 1, n, &cofaces[n][i], name});
    }
  }
  for (int n = 0; n < m; ++n) {
    if (static_cast<int>(codegeneracies[n].size()) != n + 1) {
      problems.push_back("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " codegeneracies");
      continue;
    }
    for (int j = 0; j <= n; ++j) {
      std::string name = "s^" + std::to_string(j) + ":" + std::to_string(n + 1) + "->" + std::to_string(n);
      for (auto& p : check_simplicial_presheaf_map(objects[n + 1], objects[n], codegeneracies[n][j]))
        problems.push_back(name + ": " + p);
      gens.push_back({codegeneracy_op(n, j), n + 1, n, &codegeneracies[n][j], name});
    }
  }
  if (!problems.empty()) return problems;
  for (const auto& a : gens)
    for (const auto& b : gens) {
      if (a.dst != b.src) continue;
      SimplicialPresheafMap lhs = compose(objects[b.dst], *b.map, *a.map);
      if (!(lhs == induced(compose_ops(b.op, a.op), b.dst)))
        problems.push_back(b.name + " o " + a.name + " violates the cosimplicial identities");
    }
  return problems;
}

namespace {

struct StandardLevels {
  Presheaf rx;
  SimplicialPresheaf drx;
  std::vector<Tensor> tensors;
  std::vector<SimplicialSetFin> simplices;
};

StandardLevels standard_levels(const CatPtr& c, int x, int m) {
  StandardLevels s;
  s.rx = yoneda(c, x);
  s.drx = discrete_embed(s.rx);
  for (int n = 0; n <= m; ++n) {
    s.simplices.push_back(standard_simplex(n));
    s.tensors.push_back(tensor_simplicial(s.drx, s.simplices.back()));
  }
  return s;
}

CosimplicialObject standard_from_levels(const CatPtr& c, const StandardLevels& s, int m) {
  if (m < 0) throw InvalidInput("truncation bound must be non-negative");
  CosimplicialObject out;
  out.base = c;
  out.m = m;
  int no = c->num_objects();
  for (int n = 0; n <= m; ++n) out.objects.push_back(s.tensors[n].result);
  auto level_map = [&](int from, int to, const OpMap& theta) {
    SimplicialPresheafMap map;
    SimplicialMap dm = delta_map(theta, to);
    for (int z = 0; z < no; ++z)
      map.components.push_back(product_map(s.tensors[from].products[z], s.tensors[to].products[z], s.drx.values[z],
                                           s.simplices[to], identity_map(s.drx.values[z]), dm));
    return map;
  };
  out.cofaces.resize(m + 1);
  for (int n = 1; n <= m; ++n)
    for (int i = 0; i <= n; ++i) out.cofaces[n].push_back(level_map(n - 1, n, coface_op(n, i)));
  out.codegeneracies.resize(m);
  for (int n = 0; n < m; ++n)
    for (int j = 0; j <= n; ++j) out.codegeneracies[n].push_back(level_map(n + 1, n, codegeneracy_op(n, j)));
  return out;
}

}  // namespace

CosimplicialObject standard_resolution(const CatPtr& c, int x, int m) {
  if (m < 0) throw InvalidInput("truncation bound must be non-negative");
  return standard_from_levels(c, standard_levels(c, x, m), m);
}

// ---------------------------------------------------------------------------
// Resolutions

ResolutionData standard_resolution_data(const CatPtr& c, int m) {
  if (m < 0) throw InvalidInput("truncation bound must be non-negative");
  const FinCategory& cat = *c;
  int no = cat.num_objects();
  ResolutionData r;
  r.source = c;
  r.target = c;
  r.m = m;
  std::vector<StandardLevels> levels;
  for (int x = 0; x < no; ++x) {
    levels.push_back(standard_levels(c, x, m));
    r.gamma.push_back(standard_from_levels(c, levels.back(), m));
    r.constants.push_back(levels.back().drx);
    std::vector<SimplicialPresheafMap> comps;
    for (int n = 0; n <= m; ++n) {
      SimplicialPresheafMap p;
      for (int z = 0; z < no; ++z) p.components.push_back(levels[x].tensors[n].products[z].first);
      comps.push_back(std::move(p));
    }
    r.comparisons.push_back(std::move(comps));
  }
  for (int f = 0; f < cat.num_morphisms(); ++f) {
    int a = cat.src(f), b = cat.dst(f);
    PresheafMap rf;
    for (int z = 0; z < no; ++z) {
      std::vector<int> comp;
      const auto& hb = cat.hom(z, b);
      for (int u : cat.hom(z, a)) {
        int fu = cat.compose(f, u);
        comp.push_back(static_cast<int>(std::find(hb.begin(), hb.end(), fu) - hb.begin()));
      }
      rf.components.push_back(std::move(comp));
    }
    r.constant_maps.push_back(discrete_embed(levels[a].rx, levels[b].rx, rf));
    std::vector<SimplicialPresheafMap> nat;
    for (int n = 0; n <= m; ++n) {
      SimplicialPresheafMap map;
      SimplicialMap id = identity_map(levels[a].simplices[n]);
      for (int z = 0; z < no; ++z)
        map.components.push_back(product_map(levels[a].tensors[n].products[z], levels[b].tensors[n].products[z],
                                             levels[b].drx.values[z], levels[b].simplices[n],
                                             r.constant_maps[f].components[z], id));
      nat.push_back(std::move(map));
    }
    r.naturality.push_back(std::move(nat));
  }
  return r;
}

std::vector<std::string> ResolutionData::check(bool verdicts) const {
  std::vector<std::string> problems;
  const FinCategory& c = *source;
  int no = c.num_objects();
  if (static_cast<int>(gamma.size()) != no || static_cast<int>(naturality.size()) != c.num_morphisms() ||
      static_cast<int>(constants.size()) != no || static_cast<int>(constant_maps.size()) != c.num_morphisms() ||
      static_cast<int>(comparisons.size()) != no) {
    problems.push_back("resolution data does not match the source category");
    return problems;
  }
  for (int x = 0; x < no; ++x) {
    if (gamma[x].m != m) problems.push_back("Γ(" + c.object(x) + ") has the wrong truncation bound");
    for (auto& p : gamma[x].check()) problems.push_back("Γ(" + c.object(x) + "): " + p);
    for (auto& p : constants[x].check()) problems.push_back("γ(" + c.object(x) + "): " + p);
  }
  if (!problems.empty()) return problems;

  for (int f = 0; f < c.num_morphisms(); ++f) {
    int a = c.src(f), b = c.dst(f);
    std::string fn = c.morphism(f);
    for (auto& p : check_simplicial_presheaf_map(constants[a], constants[b], constant_maps[f]))
      problems.push_back("γ(" + fn + "): " + p);
    for (int n = 0; n <= m; ++n)
      for (auto& p : check_simplicial_presheaf_map(gamma[a].objects[n], gamma[b].objects[n], naturality[f][n]))
        problems.push_back("Γ(" + fn + ")^" + std::to_string(n) + ": " + p);
  }
  if (!problems.empty()) return problems;

  for (int f = 0; f < c.num_morphisms(); ++f) {
    int a = c.src(f), b = c.dst(f);
    std::string fn = c.morphism(f);
    const auto& ga = gamma[a];
    const auto& gb = gamma[b];
    for (int n = 1; n <= m; ++n)
      for (int i = 0; i <= n; ++i)
        if (!(compose(gb.objects[n], naturality[f][n], ga.cofaces[n][i]) ==
              compose(gb.objects[n], gb.cofaces[n][i], naturality[f][n - 1])))
          problems.push_back("Γ(" + fn + ") does not commute with d^" + std::to_string(i) + " at level " +
                             std::to_string(n));
    for (int n = 0; n < m; ++n)
      for (int j = 0; j <= n; ++j)
        if (!(compose(gb.objects[n], naturality[f][n], ga.codegeneracies[n][j]) ==
              compose(gb.objects[n], gb.codegeneracies[n][j], naturality[f][n + 1])))
          problems.push_back("Γ(" + fn + ") does not commute with s^" + std::to_string(j) + " at level " +
                             std::to_string(n));
    for (int n = 0; n <= m; ++n)
      if (!(compose(constants[b], comparisons[b][n], naturality[f][n]) ==
            compose(constants[b], constant_maps[f], comparisons[a][n])))
        problems.push_back("comparison square for " + fn + " fails at level " + std::to_string(n));
  }
  for (int x = 0; x < no; ++x) {
    int id = c.identity(x);
    for (int n = 0; n <= m; ++n)
      if (!(naturality[id][n] == identity_simplicial_presheaf_map(gamma[x].objects[n])))
        problems.push_back("Γ(id_" + c.object(x) + ")^" + std::to_string(n) + " is not the identity");
  }
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f) {
      int gf = c.compose(g, f);
      if (gf < 0) continue;
      for (int n = 0; n <= m; ++n)
        if (!(compose(gamma[c.dst(g)].objects[n], naturality[g][n], naturality[f][n]) == naturality[gf][n]))
          problems.push_back("Γ(" + c.morphism(g) + " o " + c.morphism(f) + ") != Γ(" + c.morphism(g) + ") o Γ(" +
                             c.morphism(f) + ") at level " + std::to_string(n));
    }
  for (int x = 0; x < no; ++x) {
    if (static_cast<int>(comparisons[x].size()) != m + 1) {
      problems.push_back("Γ(" + c.object(x) + ") needs one comparison per level");
      continue;
    }
    for (int n = 0; n <= m; ++n)
      for (auto& p : check_simplicial_presheaf_map(gamma[x].objects[n], constants[x], comparisons[x][n]))
        problems.push_back("comparison " + c.object(x) + "^" + std::to_string(n) + ": " + p);
    for (int n = 1; n <= m; ++n)
      for (int i = 0; i <= n; ++i)
        if (!(compose(constants[x], comparisons[x][n], gamma[x].cofaces[n][i]) == comparisons[x][n - 1]))
          problems.push_back("comparison for " + c.object(x) + " is not compatible with d^" + std::to_string(i));
  }
  if (!problems.empty() || !verdicts) return problems;
  for (int x = 0; x < no; ++x)
    for (int n = 0; n <= m; ++n)
      if (!objectwise_verdict(gamma[x].objects[n], constants[x], comparisons[x][n]).pass)
        problems.push_back("Γ(" + c.object(x) + ")^" + std::to_string(n) + " -> γ(" + c.object(x) +
                           ") fails the weak-equivalence proxy");
  return problems;
}

// ---------------------------------------------------------------------------
// Latching objects

LatchingReport latching_report(const CosimplicialObject& x, std::optional<int> max_n) {
  int top = max_n.value_or(x.m);
  if (top > x.m) throw TruncationTooSmall("latching report above the truncation bound");
  const FinCategory& d = *x.base;
  int nd = d.num_objects();
  LatchingReport report;
  report.pass = true;
  for (int n = 0; n <= top; ++n) {
    LatchingReport::Degree deg;
    deg.n = n;
    const SimplicialPresheaf& target = x.objects[n];
    if (n == 0) {
      deg.latching = empty_simplicial(x.base);
      deg.map = empty_map(nd);
    } else {
      // Proper nonempty subsets of [n], ordered by inclusion.
      std::vector<std::vector<int>> faces;
      for (int mask = 1; mask < (1 << (n + 1)) - 1; ++mask) {
        std::vector<int> s;
        for (int v = 0; v <= n; ++v)
          if (mask & (1 << v)) s.push_back(v);
        faces.push_back(std::move(s));
      }
      auto face_name = [](const std::vector<int>& s) {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
        return out + "}";
      };
      auto position_op = [](const std::vector<int>& s, const std::vector<int>& t) {
        OpMap op;
        for (int v : s) op.push_back(static_cast<int>(std::find(t.begin(), t.end(), v) - t.begin()));
        return op;
      };
      std::vector<std::string> names;
      std::vector<std::pair<std::string, std::string>> less;
      for (const auto& s : faces) names.push_back(face_name(s));
      for (const auto& s : faces)
        for (const auto& t : faces)
          if (s.size() < t.size() && std::includes(t.begin(), t.end(), s.begin(), s.end()))
            less.push_back({face_name(s), face_name(t)});
      CatPtr poset = poset_category(names, less);
      std::vector<const std::vector<int>*> face_of(poset->num_objects());
      for (const auto& s : faces) face_of[poset->object_index(face_name(s))] = &s;
      SPDiagram diagram{poset, x.base, {}, {}};
      for (int o = 0; o < poset->num_objects(); ++o)
        diagram.values.push_back(x.objects[face_of[o]->size() - 1]);
      for (int u = 0; u < poset->num_morphisms(); ++u) {
        const auto& s = *face_of[poset->src(u)];
        const auto& t = *face_of[poset->dst(u)];
        diagram.maps.push_back(x.induced(position_op(s, t), static_cast<int>(t.size()) - 1));
      }
      SimplicialColimit colim = simplicial_colimit(diagram);
      std::vector<SimplicialPresheafMap> legs;
      std::vector<int> all(n + 1);
      for (int v = 0; v <= n; ++v) all[v] = v;
      for (int o = 0; o < poset->num_objects(); ++o) legs.push_back(x.induced(position_op(*face_of[o], all), n));
      auto factor = colimit_factor(colim, target, legs);
      if (!factor) throw InvariantViolation({"latching legs at level " + std::to_string(n) + " are not a cocone"});
      deg.latching = colim.result;
      deg.map = *factor;
    }
    deg.injective = std::all_of(deg.map.components.begin(), deg.map.components.end(),
                                [](const SimplicialMap& c) { return is_monomorphism(c); });
    deg.split = deg.injective;
    if (deg.injective) {
      for (int k = 0; k <= std::max(0, target.dim()) && deg.split; ++k) {
        Presheaf level = level_presheaf(target, k);
        std::vector<std::set<std::string>> hit(nd);
        for (int z = 0; z < nd; ++z)
          for (const auto& s : deg.latching.values[z].level(k))
            hit[z].insert(target.values[z].name(map_simplex(target.values[z], deg.map.components[z], s)));
        Presheaf comp{x.base, {}, {}};
        std::vector<std::vector<int>> keep(nd);  // level index -> complement index
        for (int z = 0; z < nd; ++z) {
          comp.sections.emplace_back();
          keep[z].assign(level.sections[z].size(), -1);
          for (std::size_t i = 0; i < level.sections[z].size(); ++i)
            if (!hit[z].count(level.sections[z][i])) {
              keep[z][i] = static_cast<int>(comp.sections[z].size());
              comp.sections[z].push_back(level.sections[z][i]);
            }
        }
        for (int f = 0; f < d.num_morphisms() && deg.split; ++f) {
          int a = d.src(f), b = d.dst(f);
          comp.restrict.emplace_back();
          for (std::size_t i = 0; i < level.sections[b].size(); ++i) {
            if (keep[b][i] < 0) continue;
            int r = keep[a][level.restrict[f][i]];
            if (r < 0) deg.split = false;
            comp.restrict.back().push_back(r);
          }
        }
        if (!deg.split) break;
        auto dec = representable_decomposition(comp);
        if (!dec) deg.split = false;
        else deg.complement.push_back(std::move(*dec));
      }
    }
    if (!deg.split) deg.complement.clear();
    report.pass = report.pass && deg.injective && deg.split;
    report.degrees.push_back(std::move(deg));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Coends

namespace {

/// Index category C, a cosimplicial object per object of C and its
/// naturality maps: enough to present Γ ⊗_C F.
struct CoendShape {
  const FinCategory* c;
  CatPtr target;
  int m;
  std::function<const CosimplicialObject&(int)> gamma;
  std::function<const SimplicialPresheafMap&(int, int)> nat;  // (f, n)
};

class CoendBuilder {
 public:
  CoendBuilder(const CoendShape& shape, const SimplicialPresheaf& f, Coend& out)
      : shape_(shape), f_(f), out_(out) {}

  void build(const std::function<std::string(int, int)>& label) {
    const FinCategory& c = *shape_.c;
    std::vector<const SimplicialPresheaf*> values;
    std::vector<std::string> labels;
    for (int o = 0; o < c.num_objects(); ++o)
      for (int g = 0; g < f_.values[o].num_generators(); ++g) {
        int n = f_.values[o].generator(g).dim;
        if (n > shape_.m)
          throw TruncationTooSmall("a " + std::to_string(n) + "-simplex needs resolution levels above " +
                                   std::to_string(shape_.m));
        out_.piece_index[{o, g}] = static_cast<int>(out_.pieces.size());
        out_.pieces.push_back({o, g});
        values.push_back(&shape_.gamma(o).objects[n]);
        labels.push_back(label(o, g));
      }
    int nd = shape_.target->num_objects();
    if (values.empty()) {
      out_.coproduct.result = empty_simplicial(shape_.target);
      out_.quotient.result = out_.coproduct.result;
      out_.quotient.projection = empty_map(nd);
      out_.result = out_.coproduct.result;
      return;
    }
    out_.coproduct = coproduct(values, labels);
    std::vector<std::vector<std::pair<Simplex, Simplex>>> pairs(nd);
    for (std::size_t p = 0; p < out_.pieces.size(); ++p) {
      auto [o, g] = out_.pieces[p];
      const SimplicialSetFin& fo = f_.values[o];
      int n = fo.generator(g).dim;
      const CosimplicialObject& go = shape_.gamma(o);
      for (int i = 0; i <= n && n > 0; ++i) {
        Simplex y = fo.face(i, fo.simplex(g));
        for (int w = 0; w < nd; ++w) {
          const SimplicialSetFin& lower = go.objects[n - 1].values[w];
          for (int b = 0; b < lower.num_generators(); ++b) {
            Simplex bs = lower.simplex(b);
            Simplex lhs = include(p, w, map_simplex(go.objects[n].values[w], go.cofaces[n][i].components[w], bs));
            pairs[w].push_back({lhs, element(o, y, w, bs)});
          }
        }
      }
    }
    for (int u = 0; u < c.num_morphisms(); ++u) {
      if (c.is_identity(u)) continue;
      int a = c.src(u), o = c.dst(u);
      const CosimplicialObject& ga = shape_.gamma(a);
      const CosimplicialObject& go = shape_.gamma(o);
      for (int g = 0; g < f_.values[o].num_generators(); ++g) {
        int n = f_.values[o].generator(g).dim;
        const Simplex& s = f_.restrictions[u].images[g];
        int p = out_.piece_index.at({o, g});
        const SimplicialPresheafMap& nat = shape_.nat(u, n);
        for (int w = 0; w < nd; ++w) {
          const SimplicialSetFin& src = ga.objects[n].values[w];
          for (int b = 0; b < src.num_generators(); ++b) {
            Simplex bs = src.simplex(b);
            Simplex lhs = include(p, w, map_simplex(go.objects[n].values[w], nat.components[w], bs));
            pairs[w].push_back({lhs, element(a, s, w, bs)});
          }
        }
      }
    }
    out_.quotient = coequalize(out_.coproduct.result, pairs);
    out_.result = out_.quotient.result;
  }

  /// The class of (s, b) in the coproduct, for s a simplex of F(o) and b a
  /// simplex of Γ(o)^{dim s} at w.
  Simplex element(int o, const Simplex& s, int w, const Simplex& b) {
    int r = f_.values[o].generator(s.gen).dim;
    const SimplicialPresheafMap& sigma = induced(o, s.map, r);
    Simplex moved = map_simplex(shape_.gamma(o).objects[r].values[w], sigma.components[w], b);
    return include(out_.piece_index.at({o, s.gen}), w, moved);
  }

  Simplex include(int piece, int w, const Simplex& b) const {
    return map_simplex(out_.coproduct.result.values[w], out_.coproduct.inclusions[piece].components[w], b);
  }

  const SimplicialPresheafMap& induced(int o, const OpMap& theta, int r) {
    auto key = std::make_pair(o, theta);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, shape_.gamma(o).induced(theta, r)).first;
    return it->second;
  }

 private:
  const CoendShape& shape_;
  const SimplicialPresheaf& f_;
  Coend& out_;
  std::map<std::pair<int, OpMap>, SimplicialPresheafMap> cache_;
};

/// The map out of a coend given, per piece, a map Γ(o)^{dim x} -> target.
std::optional<SimplicialPresheafMap> map_out(const Coend& e, const SimplicialPresheaf& target,
                                             const std::function<SimplicialPresheafMap(std::size_t)>& piece_map) {
  std::size_t nd = target.values.size();
  if (e.pieces.empty()) return empty_map(nd);
  SimplicialPresheafMap from_co = empty_map(nd);
  for (std::size_t p = 0; p < e.pieces.size(); ++p) {
    SimplicialPresheafMap h = piece_map(p);
    for (std::size_t w = 0; w < nd; ++w)
      for (const auto& img : h.components[w].images) from_co.components[w].images.push_back(img);
  }
  return descend(e.coproduct.result, e.quotient, target, from_co);
}

SimplicialPresheafMap map_between(const CoendShape& shape, const SimplicialPresheaf& f, const Coend& ef,
                                  const SimplicialPresheaf& f2, const Coend& ef2, const SimplicialPresheafMap& phi) {
  Coend scratch = ef2;
  CoendBuilder b2(shape, f2, scratch);
  const SimplicialPresheaf& target = ef2.result;
  auto out = map_out(ef, target, [&](std::size_t p) {
    auto [o, g] = ef.pieces[p];
    int n = f.values[o].generator(g).dim;
    const SimplicialPresheaf& piece = shape.gamma(o).objects[n];
    const Simplex& image = phi.components[o].images[g];
    SimplicialPresheafMap h;
    for (std::size_t w = 0; w < piece.values.size(); ++w) {
      SimplicialMap hw;
      for (int b = 0; b < piece.values[w].num_generators(); ++b) {
        Simplex s = b2.element(o, image, static_cast<int>(w), piece.values[w].simplex(b));
        hw.images.push_back(map_simplex(target.values[w], ef2.quotient.projection.components[w], s));
      }
      h.components.push_back(std::move(hw));
    }
    return h;
  });
  if (!out) throw InvariantViolation({"induced map does not respect the coend relations"});
  return *out;
}

CoendShape shape_of(const ResolutionData& g) {
  return CoendShape{g.source.get(), g.target, g.m, [&g](int o) -> const CosimplicialObject& { return g.gamma[o]; },
                    [&g](int f, int n) -> const SimplicialPresheafMap& { return g.naturality[f][n]; }};
}

struct PointShape {
  CatPtr pt = point_category();
  SimplicialPresheafMap unused;
  CoendShape shape(const CosimplicialObject& x) {
    return CoendShape{pt.get(), x.base, x.m, [&x](int) -> const CosimplicialObject& { return x; },
                      [this](int, int) -> const SimplicialPresheafMap& {
                        throw InvariantViolation({"the point has no non-identity morphisms"});
                        return unused;
                      }};
  }
};

SimplicialPresheaf on_point(const CatPtr& pt, const SimplicialSetFin& k) { return constant_simplicial(pt, k); }

}  // namespace

Coend tensor_with(const CosimplicialObject& x, const SimplicialSetFin& k) {
  if (k.dim() > x.m)
    throw TruncationTooSmall("K has dimension " + std::to_string(k.dim()) + " but the cosimplicial object stops at " +
                             std::to_string(x.m));
  PointShape ps;
  CoendShape shape = ps.shape(x);
  SimplicialPresheaf kk = on_point(ps.pt, k);
  Coend out;
  CoendBuilder(shape, kk, out).build([&](int, int g) { return k.generator(g).id; });
  return out;
}

SimplicialPresheafMap tensor_with_map(const CosimplicialObject& x, const SimplicialSetFin& k, const Coend& xk,
                                      const SimplicialSetFin& l, const Coend& xl, const SimplicialMap& f) {
  PointShape ps;
  CoendShape shape = ps.shape(x);
  return map_between(shape, on_point(ps.pt, k), xk, on_point(ps.pt, l), xl, SimplicialPresheafMap{{f}});
}

Coend coend_over_C(const ResolutionData& g, const SimplicialPresheaf& f) {
  if (f.base->num_objects() != g.source->num_objects() || f.base->num_morphisms() != g.source->num_morphisms())
    throw InvalidInput("presheaf does not live over the resolution's source category");
  if (f.dim() > g.m)
    throw TruncationTooSmall("F has dimension " + std::to_string(f.dim()) + " but the resolution stops at " +
                             std::to_string(g.m));
  CoendShape shape = shape_of(g);
  Coend out;
  const FinCategory& c = *g.source;
  CoendBuilder(shape, f, out).build(
      [&](int o, int x) { return c.object(o) + ":" + f.values[o].generator(x).id; });
  return out;
}

SimplicialPresheafMap coend_map(const ResolutionData& g, const SimplicialPresheaf& f, const Coend& ref,
                                const SimplicialPresheaf& f2, const Coend& ref2, const SimplicialPresheafMap& phi) {
  CoendShape shape = shape_of(g);
  return map_between(shape, f, ref, f2, ref2, phi);
}

RepresentableCheck re_representable_check(const ResolutionData& g, int x) {
  const FinCategory& c = *g.source;
  Presheaf rx = yoneda(g.source, x);
  SimplicialPresheaf f = discrete_embed(rx);
  Coend re = coend_over_C(g, f);
  const SimplicialPresheaf& target = g.gamma[x].objects[0];
  auto m = map_out(re, target, [&](std::size_t p) {
    auto [o, s] = re.pieces[p];
    return g.naturality[c.morphism_index(rx.sections[o][s])][0];
  });
  RepresentableCheck out;
  if (!m) return out;
  out.map = *m;
  out.isomorphism = is_simplicial_presheaf_isomorphism(re.result, target, out.map);
  return out;
}

// ---------------------------------------------------------------------------
// Sing

Simplex SingResult::simplex_of(int c, int n, const SimplicialPresheafMap& phi) const {
  const auto& table = lookup_[c * (m_ + 1) + n];
  auto it = table.find(flatten(phi));
  if (it == table.end()) throw InvariantViolation({"map is not a simplex of Sing"});
  return simplices[c][n][it->second];
}

const SimplicialPresheafMap& SingResult::hom_of(int c, const Simplex& s) const {
  int n = s.dim();
  const auto& table = reverse_[c * (m_ + 1) + n];
  return homs[c][n][table.at(s)];
}

namespace {

int table_at(const SingResult& s, int o, int n, const SimplicialPresheafMap& phi) {
  return s.lookup_[o * (s.m_ + 1) + n].at(flatten(phi));
}

}  // namespace

SingResult sing(const ResolutionData& g, const SimplicialPresheaf& w) {
  const FinCategory& c = *g.source;
  int no = c.num_objects();
  int m = g.m;
  SingResult out;
  out.m_ = m;
  out.truncation = TruncationTag{m, m - 1};
  out.result.base = g.source;
  out.lookup_.resize(static_cast<std::size_t>(no) * (m + 1));
  out.reverse_.resize(out.lookup_.size());
  out.homs.resize(no);
  out.generators.resize(no);
  out.simplices.resize(no);
  for (int o = 0; o < no; ++o) {
    const CosimplicialObject& go = g.gamma[o];
    std::vector<Generator> gens;
    for (int n = 0; n <= m; ++n) {
      out.homs[o].push_back(simplicial_presheaf_homs(go.objects[n], w));
      auto& table = out.lookup_[o * (m + 1) + n];
      const auto& level = out.homs[o][n];
      for (std::size_t i = 0; i < level.size(); ++i) table[flatten(level[i])] = static_cast<int>(i);
      out.simplices[o].emplace_back(level.size());
      int count = 0;
      for (std::size_t i = 0; i < level.size(); ++i) {
        const SimplicialPresheafMap& phi = level[i];
        std::optional<Simplex> normal;
        for (int j = 0; j < n && !normal; ++j) {
          SimplicialPresheafMap face = compose(w, phi, go.cofaces[n][j]);
          if (compose(w, face, go.codegeneracies[n - 1][j]) == phi) {
            const Simplex& lower = out.simplices[o][n - 1][table_at(out, o, n - 1, face)];
            normal = Simplex{compose_ops(lower.map, codegeneracy_op(n - 1, j)), lower.gen};
          }
        }
        if (!normal) {
          Generator gen{std::to_string(n) + "." + std::to_string(count++), n, {}};
          for (int j = 0; j <= n && n > 0; ++j) {
            SimplicialPresheafMap face = compose(w, phi, go.cofaces[n][j]);
            gen.faces.push_back(out.simplices[o][n - 1][table_at(out, o, n - 1, face)]);
          }
          normal = Simplex{identity_op(n), static_cast<int>(gens.size())};
          out.generators[o].push_back({n, static_cast<int>(i)});
          gens.push_back(std::move(gen));
        }
        out.simplices[o][n][i] = *normal;
        out.reverse_[o * (m + 1) + n][*normal] = static_cast<int>(i);
      }
    }
    out.result.values.emplace_back(std::move(gens));
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    int a = c.src(f), b = c.dst(f);
    SimplicialMap r;
    for (auto [n, i] : out.generators[b])
      r.images.push_back(out.simplex_of(a, n, compose(w, out.homs[b][n][i], g.naturality[f][n])));
    out.result.restrictions.push_back(std::move(r));
  }
  return out;
}

SimplicialPresheafMap sing_map(const ResolutionData& g, const SingResult& sw, const SingResult& sw2,
                               const SimplicialPresheaf& w2, const SimplicialPresheafMap& rho) {
  SimplicialPresheafMap out;
  for (int o = 0; o < g.source->num_objects(); ++o) {
    SimplicialMap m;
    for (auto [n, i] : sw.generators[o]) m.images.push_back(sw2.simplex_of(o, n, compose(w2, rho, sw.homs[o][n][i])));
    out.components.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The adjunction

SimplicialPresheaf terminal_simplicial(const CatPtr& c) { return constant_simplicial(c, standard_simplex(0)); }

namespace {

std::optional<SimplicialPresheafMap> adjunct(const ResolutionData& g, const SimplicialPresheaf& f, const Coend& re,
                                             const SingResult& sw, const SimplicialPresheaf& w,
                                             const SimplicialPresheafMap& psi) {
  std::map<std::pair<int, OpMap>, SimplicialPresheafMap> cache;
  return map_out(re, w, [&](std::size_t p) {
    auto [o, x] = re.pieces[p];
    const Simplex& s = psi.components[o].images[x];
    Simplex top{identity_op(sw.result.values[o].generator(s.gen).dim), s.gen};
    const SimplicialPresheafMap& h = sw.hom_of(o, top);
    int n = f.values[o].generator(x).dim;
    if (s.map == identity_op(n)) return h;
    return compose(w, h, g.gamma[o].induced(s.map, top.dim()));
  });
}

SimplicialPresheafMap to_terminal(const SimplicialPresheaf& w) {
  SimplicialPresheafMap m;
  for (const auto& v : w.values) {
    SimplicialMap c;
    for (const auto& gen : v.generators()) c.images.push_back(Simplex{OpMap(gen.dim + 1, 0), 0});
    m.components.push_back(std::move(c));
  }
  return m;
}

}  // namespace

AdjunctionVerdict adjunction_check(const ResolutionData& g, const SimplicialPresheaf& f, const SimplicialPresheaf& w,
                                   long long bound) {
  AdjunctionVerdict v;
  Coend re = coend_over_C(g, f);
  SingResult sw = sing(g, w);
  std::vector<SimplicialPresheafMap> lhs = simplicial_presheaf_homs(re.result, w, bound);
  std::vector<SimplicialPresheafMap> rhs = simplicial_presheaf_homs(f, sw.result, bound);
  v.lhs_count = static_cast<long long>(lhs.size());
  v.rhs_count = static_cast<long long>(rhs.size());

  std::map<std::vector<Simplex>, int> lhs_index;
  for (std::size_t i = 0; i < lhs.size(); ++i) lhs_index[flatten(lhs[i])] = static_cast<int>(i);
  std::vector<char> hit(lhs.size(), 0);
  std::vector<SimplicialPresheafMap> adjuncts;
  bool ok = true;
  for (const auto& psi : rhs) {
    auto a = adjunct(g, f, re, sw, w, psi);
    if (!a) {
      ok = false;
      break;
    }
    auto it = lhs_index.find(flatten(*a));
    if (it == lhs_index.end() || hit[it->second]) {
      ok = false;
      break;
    }
    hit[it->second] = 1;
    adjuncts.push_back(std::move(*a));
  }
  v.bijection = ok && lhs.size() == rhs.size();
  if (!v.bijection) return v;

  auto natural_along = [&](const SimplicialPresheaf& w2, const SingResult& sw2, const SimplicialPresheafMap& rho) {
    SimplicialPresheafMap srho = sing_map(g, sw, sw2, w2, rho);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      auto a2 = adjunct(g, f, re, sw2, w2, compose(sw2.result, srho, rhs[i]));
      if (!a2 || !(*a2 == compose(w2, rho, adjuncts[i]))) return false;
    }
    return true;
  };
  SimplicialPresheaf term = terminal_simplicial(g.target);
  SingResult sterm = sing(g, term);
  v.natural_in_w = natural_along(term, sterm, to_terminal(w));
  if (v.natural_in_w) {
    SimplicialPresheafMap id = identity_simplicial_presheaf_map(w);
    for (const auto& e : simplicial_presheaf_homs(w, w, bound))
      if (!(e == id)) {
        v.natural_in_w = natural_along(w, sw, e);
        break;
      }
  }

  SimplicialCoproduct ff = coproduct(std::vector<const SimplicialPresheaf*>{&f, &f}, std::vector<std::string>{"0", "1"});
  SimplicialPresheafMap fold;
  for (const auto& val : f.values) {
    SimplicialMap c;
    for (int rep = 0; rep < 2; ++rep)
      for (int x = 0; x < val.num_generators(); ++x) c.images.push_back(val.simplex(x));
    fold.components.push_back(std::move(c));
  }
  Coend re2 = coend_over_C(g, ff.result);
  SimplicialPresheafMap refold = coend_map(g, ff.result, re2, f, re, fold);
  v.natural_in_f = true;
  for (std::size_t i = 0; i < rhs.size() && v.natural_in_f; ++i) {
    auto a2 = adjunct(g, ff.result, re2, sw, w, compose(sw.result, rhs[i], fold));
    v.natural_in_f = a2 && *a2 == compose(w, adjuncts[i], refold);
  }
  v.pass = v.bijection && v.natural_in_w && v.natural_in_f;
  return v;
}

}  // namespace uht
