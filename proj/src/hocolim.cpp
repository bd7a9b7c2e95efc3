#include "uht/hocolim.hpp"

#include <algorithm>
#include <map>

#include "uht/cofrep.hpp"

namespace uht {

std::vector<std::string> SPDiagram::check() const {
  std::vector<std::string> problems;
  const FinCategory& c = *index;
  if (static_cast<int>(values.size()) != c.num_objects() || static_cast<int>(maps.size()) != c.num_morphisms()) {
    problems.push_back("diagram data does not match the index category");
    return problems;
  }
  for (int i = 0; i < c.num_objects(); ++i) {
    if (values[i].base != base && values[i].base->num_objects() != base->num_objects())
      problems.push_back("value at '" + c.object(i) + "' lives over another base");
    for (auto& p : values[i].check()) problems.push_back("D(" + c.object(i) + "): " + p);
  }
  if (!problems.empty()) return problems;
  for (int u = 0; u < c.num_morphisms(); ++u)
    for (auto& p : check_simplicial_presheaf_map(values[c.src(u)], values[c.dst(u)], maps[u]))
      problems.push_back("D(" + c.morphism(u) + "): " + p);
  if (!problems.empty()) return problems;
  for (int i = 0; i < c.num_objects(); ++i)
    if (!(maps[c.identity(i)] == identity_simplicial_presheaf_map(values[i])))
      problems.push_back("D(id_" + c.object(i) + ") is not the identity");
  for (int v = 0; v < c.num_morphisms(); ++v)
    for (int u = 0; u < c.num_morphisms(); ++u) {
      int vu = c.compose(v, u);
      if (vu < 0) continue;
      if (!(compose(values[c.dst(v)], maps[v], maps[u]) == maps[vu]))
        problems.push_back("D(" + c.morphism(v) + " o " + c.morphism(u) + ") != D(" + c.morphism(v) + ") o D(" +
                           c.morphism(u) + ")");
    }
  return problems;
}

SPDiagram sset_diagram(const CatPtr& index, const std::vector<SimplicialSetFin>& values,
                       const std::vector<SimplicialMap>& maps) {
  SPDiagram d{index, point_category(), {}, {}};
  for (const auto& v : values) d.values.push_back(constant_simplicial(d.base, v));
  for (const auto& m : maps) d.maps.push_back(SimplicialPresheafMap{{m}});
  return d;
}

SPDiagram point_diagram(const CatPtr& index) {
  SimplicialSetFin pt = standard_simplex(0);
  std::vector<SimplicialSetFin> values(index->num_objects(), pt);
  std::vector<SimplicialMap> maps(index->num_morphisms(), identity_map(pt));
  return sset_diagram(index, values, maps);
}

const SimplicialSetFin& underlying(const SimplicialPresheaf& f) {
  if (f.values.size() != 1) throw InvalidInput("expected a simplicial set (presheaf on the point)");
  return f.values.front();
}

SimplicialPresheaf empty_simplicial(const CatPtr& base) {
  SimplicialPresheaf e{base, std::vector<SimplicialSetFin>(base->num_objects()), {}};
  e.restrictions.assign(base->num_morphisms(), SimplicialMap{});
  return e;
}

// ---------------------------------------------------------------------------
// Simplicial replacement

Replacement simplicial_replacement(const SPDiagram& d, std::optional<int> max_degree) {
  const FinCategory& ic = *d.index;
  const FinCategory& bc = *d.base;
  ChainFiniteness cf = chain_finiteness(ic);
  Replacement r;
  int top_len;
  if (!max_degree) {
    if (!cf.chain_finite)
      throw NotChainFinite("index category is not chain-finite (cycle " + join(cf.witness, ", ") + ")");
    top_len = cf.max_length;
  } else {
    top_len = cf.chain_finite ? std::min(cf.max_length, *max_degree) : *max_degree;
  }
  std::map<Chain, int> chain_index;
  for (int k = 0; k <= top_len; ++k)
    for (auto& ch : nondegenerate_chains(ic, k, Orientation::Backward)) {
      chain_index.emplace(ch, static_cast<int>(r.chains.size()));
      r.chains.push_back(std::move(ch));
    }

  int top_dim = 0;
  std::vector<std::map<std::pair<int, int>, int>> lookup(bc.num_objects());
  for (int z = 0; z < bc.num_objects(); ++z) {
    r.bigens.emplace_back();
    for (std::size_t ch = 0; ch < r.chains.size(); ++ch) {
      const auto& k = d.values[r.chains[ch].objects.back()].values[z];
      for (int g = 0; g < k.num_generators(); ++g) {
        lookup[z][{static_cast<int>(ch), g}] = static_cast<int>(r.bigens[z].size());
        r.bigens[z].push_back({static_cast<int>(ch), g});
        top_dim = std::max(top_dim, r.chains[ch].length() + k.generator(g).dim);
      }
    }
  }
  if (max_degree && (top_dim > *max_degree || !cf.chain_finite || cf.max_length > *max_degree))
    r.truncation = TruncationTag::at(*max_degree);

  r.result.base = d.base;
  for (int z = 0; z < bc.num_objects(); ++z) {
    std::vector<BiGenerator> gens;
    for (const auto& [ch, g] : r.bigens[z]) {
      const Chain& chain = r.chains[ch];
      int p = chain.length();
      int cp = chain.objects.back();
      const SimplicialSetFin& k = d.values[cp].values[z];
      const Generator& gen = k.generator(g);
      BiGenerator b{chain_id(ic, chain) + "/" + gen.id, p, gen.dim, {}, {}};
      for (int i = 0; i <= p && p > 0; ++i) {
        Chain face = chain_face(ic, chain, i, Orientation::Backward);
        Simplex y = k.simplex(g);
        if (i == p) {
          int u = chain.morphisms[p - 1];
          y = d.maps[u].components[z].images[g];
        }
        auto [red, surj] = normalize_chain(ic, face);
        b.hfaces.push_back(BiSimplex{surj, y.map, lookup[z].at({chain_index.at(red), y.gen})});
      }
      for (int j = 0; j <= gen.dim && gen.dim > 0; ++j) {
        Simplex y = k.face(j, k.simplex(g));
        b.vfaces.push_back(BiSimplex{identity_op(p), y.map, lookup[z].at({ch, y.gen})});
      }
      gens.push_back(std::move(b));
    }
    r.bi.emplace_back(std::move(gens));
    r.diagonals.push_back(std::make_shared<const Diagonal>(r.bi.back(), max_degree));
    r.result.values.push_back(r.diagonals.back()->set());
  }
  for (int f = 0; f < bc.num_morphisms(); ++f) {
    int z = bc.src(f), w = bc.dst(f);
    r.result.restrictions.push_back(
        diagonal_map(*r.diagonals[w], *r.diagonals[z], r.bi[z], [&](int bg) {
          auto [ch, g] = r.bigens[w][bg];
          int cp = r.chains[ch].objects.back();
          const Simplex& y = d.values[cp].restrictions[f].images[g];
          return BiSimplex{identity_op(r.chains[ch].length()), y.map, lookup[z].at({ch, y.gen})};
        }));
  }
  return r;
}

SimplicialPresheafMap replacement_augmentation(const Replacement& r, const SPDiagram& d,
                                               const SimplicialPresheaf& target,
                                               const std::vector<SimplicialPresheafMap>& legs) {
  (void)d;
  SimplicialPresheafMap m;
  for (std::size_t z = 0; z < r.diagonals.size(); ++z) {
    SimplicialMap f;
    const Diagonal& diag = *r.diagonals[z];
    for (int x = 0; x < diag.set().num_generators(); ++x) {
      const BiSimplex& s = diag.source(x);
      auto [ch, g] = r.bigens[z][s.gen];
      int cp = r.chains[ch].objects.back();
      f.images.push_back(target.values[z].apply(s.v, legs[cp].components[z].images[g]));
    }
    m.components.push_back(std::move(f));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Strict colimits and maps out of quotients

std::optional<SimplicialPresheafMap> descend(const SimplicialPresheaf& source, const PresheafQuotient& q,
                                             const SimplicialPresheaf& target, const SimplicialPresheafMap& m) {
  SimplicialPresheafMap out;
  for (std::size_t z = 0; z < source.values.size(); ++z) {
    const SimplicialMap& proj = q.projection.components[z];
    SimplicialMap f;
    f.images.assign(q.result.values[z].num_generators(), Simplex{});
    std::vector<char> seen(q.result.values[z].num_generators(), 0);
    for (int s = 0; s < source.values[z].num_generators(); ++s) {
      const Simplex& img = proj.images[s];
      if (img.nondegenerate() && !seen[img.gen]) {
        seen[img.gen] = 1;
        f.images[img.gen] = m.components[z].images[s];
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return std::nullopt;
    if (!(compose(target.values[z], f, proj) == m.components[z])) return std::nullopt;
    out.components.push_back(std::move(f));
  }
  return out;
}

SimplicialColimit simplicial_colimit(const SPDiagram& d) {
  const FinCategory& ic = *d.index;
  SimplicialColimit out;
  if (ic.num_objects() == 0) {
    out.result = empty_simplicial(d.base);
    return out;
  }
  std::vector<const SimplicialPresheaf*> pieces;
  std::vector<std::string> labels;
  for (int i = 0; i < ic.num_objects(); ++i) {
    pieces.push_back(&d.values[i]);
    labels.push_back(ic.object(i));
  }
  SimplicialCoproduct co = coproduct(pieces, labels);
  std::vector<std::vector<std::pair<Simplex, Simplex>>> pairs(d.base->num_objects());
  for (int u = 0; u < ic.num_morphisms(); ++u) {
    if (ic.is_identity(u)) continue;
    int a = ic.src(u), b = ic.dst(u);
    for (int z = 0; z < d.base->num_objects(); ++z)
      for (int g = 0; g < d.values[a].values[z].num_generators(); ++g) {
        Simplex left = co.inclusions[a].components[z].images[g];
        Simplex right = map_simplex(co.result.values[z], co.inclusions[b].components[z],
                                    d.maps[u].components[z].images[g]);
        pairs[z].push_back({left, right});
      }
  }
  PresheafQuotient q = coequalize(co.result, pairs);
  out.result = q.result;
  for (int i = 0; i < ic.num_objects(); ++i) out.legs.push_back(compose(q.result, q.projection, co.inclusions[i]));
  out.coproduct = std::move(co);
  out.quotient = std::move(q);
  return out;
}

std::optional<SimplicialPresheafMap> colimit_factor(const SimplicialColimit& colim, const SimplicialPresheaf& target,
                                                    const std::vector<SimplicialPresheafMap>& legs) {
  if (legs.empty()) {
    SimplicialPresheafMap m;
    m.components.resize(target.values.size());
    return m;
  }
  SimplicialPresheafMap from_co;
  for (std::size_t z = 0; z < target.values.size(); ++z) {
    SimplicialMap m;
    for (const auto& leg : legs)
      for (const auto& img : leg.components[z].images) m.images.push_back(img);
    from_co.components.push_back(std::move(m));
  }
  return descend(colim.coproduct.result, colim.quotient, target, from_co);
}

// ---------------------------------------------------------------------------
// Bousfield–Kan

SimplicialMap nerve_map(const FunctorData& f, const SimplicialSetFin& source_nerve,
                        const SimplicialSetFin& target_nerve) {
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  std::map<std::string, Chain> chains;
  int top = source_nerve.dim();
  for (int k = 0; k <= top; ++k)
    for (auto& ch : nondegenerate_chains(s, k, Orientation::Forward)) chains.emplace(chain_id(s, ch), ch);
  SimplicialMap m;
  for (const auto& g : source_nerve.generators()) {
    const Chain& ch = chains.at(g.id);
    Chain img;
    for (int o : ch.objects) img.objects.push_back(f.on_objects[o]);
    for (int u : ch.morphisms) img.morphisms.push_back(f.on_morphisms[u]);
    auto [red, surj] = normalize_chain(t, img);
    auto gen = target_nerve.find(chain_id(t, red));
    if (!gen) throw Error("nerve map: chain '" + chain_id(t, red) + "' missing from the target nerve");
    m.images.push_back(Simplex{surj, *gen});
  }
  return m;
}

SPDiagram q_diagram(const SPDiagram& d) {
  SPDiagram out{d.index, d.base, {}, {}};
  std::vector<QResult> qs;
  for (const auto& v : d.values) {
    qs.push_back(q(v));
    out.values.push_back(qs.back().result);
  }
  for (int u = 0; u < d.index->num_morphisms(); ++u)
    out.maps.push_back(q_map(qs[d.index->src(u)], qs[d.index->dst(u)], d.values[d.index->dst(u)], d.maps[u]));
  return out;
}

namespace {

// u^* : (γ↓I) -> (β↓I), (h: γ -> x) |-> h∘u.
FunctorData restrict_under(const CatPtr& ic, int u, const UnderCategory& ug, const UnderCategory& ub) {
  FunctorData f{ug.category, ub.category, {}, {}};
  const FinCategory& c = *ic;
  for (int o = 0; o < ug.category->num_objects(); ++o) {
    int h = c.morphism_index(ug.category->object(o));
    f.on_objects.push_back(ub.category->object_index(c.morphism(c.compose(h, u))));
  }
  for (int m = 0; m < ug.category->num_morphisms(); ++m) {
    const std::string& id = ug.category->morphism(m);
    auto at = id.find('@');
    int k = c.morphism_index(id.substr(0, at));
    int h = c.morphism_index(id.substr(at + 1));
    f.on_morphisms.push_back(ub.category->morphism_index(c.morphism(k) + "@" + c.morphism(c.compose(h, u))));
  }
  return f;
}

}  // namespace

BKResult bk_hocolim(const SPDiagram& input, Precofibrant mode) {
  BKResult out;
  bool trivial_base = input.base->num_morphisms() == 1;
  out.replaced = mode == Precofibrant::Auto && !trivial_base;
  SPDiagram d = out.replaced ? q_diagram(input) : input;
  const CatPtr& ic = d.index;
  int ni = ic->num_objects();
  if (ni == 0) {
    out.result = empty_simplicial(d.base);
    return out;
  }
  std::vector<UnderCategory> unders;
  std::vector<SimplicialSetFin> nerves;
  for (int a = 0; a < ni; ++a) {
    unders.push_back(under_category(ic, a));
    nerves.push_back(nerve(opposite(unders.back().category)).set);
  }
  std::vector<Tensor> tensors;
  for (int a = 0; a < ni; ++a) tensors.push_back(tensor_simplicial(d.values[a], nerves[a]));
  std::vector<const SimplicialPresheaf*> pieces;
  std::vector<std::string> labels;
  for (int a = 0; a < ni; ++a) {
    pieces.push_back(&tensors[a].result);
    labels.push_back(ic->object(a));
  }
  SimplicialCoproduct co = coproduct(pieces, labels);
  int nz = d.base->num_objects();
  std::vector<std::vector<std::pair<Simplex, Simplex>>> pairs(nz);
  for (int u = 0; u < ic->num_morphisms(); ++u) {
    if (ic->is_identity(u)) continue;
    int b = ic->src(u), g = ic->dst(u);
    FunctorData fu = restrict_under(ic, u, unders[g], unders[b]);
    // the functor on opposites acts by the same data
    FunctorData fop{opposite(fu.source), opposite(fu.target), fu.on_objects, fu.on_morphisms};
    SimplicialMap nu = nerve_map(fop, nerves[g], nerves[b]);
    SimplicialMap id_nerve = identity_map(nerves[g]);
    for (int z = 0; z < nz; ++z) {
      const SimplicialSetFin& db = d.values[b].values[z];
      Product src = product(db, nerves[g]);
      SimplicialMap left = product_map(src, tensors[g].products[z], d.values[g].values[z], nerves[g],
                                       d.maps[u].components[z], id_nerve);
      SimplicialMap right =
          product_map(src, tensors[b].products[z], db, nerves[b], identity_map(db), nu);
      for (int x = 0; x < src.set.num_generators(); ++x) {
        Simplex l = map_simplex(co.result.values[z], co.inclusions[g].components[z], left.images[x]);
        Simplex r = map_simplex(co.result.values[z], co.inclusions[b].components[z], right.images[x]);
        pairs[z].push_back({l, r});
      }
    }
  }
  out.result = coequalize(co.result, pairs).result;
  return out;
}

// ---------------------------------------------------------------------------
// Thomason

ThomasonVerdict thomason_compare(const SetFunctor& theta, const GrothendieckConstruction& gr, const SPDiagram& e) {
  const FinCategory& ic = *theta.index;
  const FinCategory& gc = *gr.category;
  SPDiagram iter{theta.index, e.base, {}, {}};
  std::vector<std::vector<int>> members(ic.num_objects());
  for (int x = 0; x < gc.num_objects(); ++x) members[gr.pairs[x].first].push_back(x);
  std::vector<SimplicialCoproduct> coprods(ic.num_objects());
  for (int i = 0; i < ic.num_objects(); ++i) {
    std::sort(members[i].begin(), members[i].end(),
              [&](int x, int y) { return gr.pairs[x].second < gr.pairs[y].second; });
    if (members[i].empty()) {
      iter.values.push_back(empty_simplicial(e.base));
      continue;
    }
    std::vector<const SimplicialPresheaf*> pieces;
    std::vector<std::string> labels;
    for (int x : members[i]) {
      pieces.push_back(&e.values[x]);
      labels.push_back(theta.sets[i][gr.pairs[x].second]);
    }
    coprods[i] = coproduct(pieces, labels);
    iter.values.push_back(coprods[i].result);
  }
  for (int u = 0; u < ic.num_morphisms(); ++u) {
    int i = ic.src(u), j = ic.dst(u);
    SimplicialPresheafMap m;
    for (int z = 0; z < e.base->num_objects(); ++z) {
      SimplicialMap f;
      for (int x : members[i]) {
        int s = gr.pairs[x].second;
        int gu = gc.morphism_index("(" + ic.morphism(u) + "," + theta.sets[i][s] + ")");
        int tgt = gc.dst(gu);
        int slot = static_cast<int>(std::find(members[j].begin(), members[j].end(), tgt) - members[j].begin());
        for (const auto& img : e.maps[gu].components[z].images)
          f.images.push_back(map_simplex(iter.values[j].values[z], coprods[j].inclusions[slot].components[z], img));
      }
      m.components.push_back(std::move(f));
    }
    iter.maps.push_back(std::move(m));
  }
  Replacement lhs = simplicial_replacement(e);
  Replacement rhs = simplicial_replacement(iter);
  ThomasonVerdict v;
  v.pass = true;
  for (int z = 0; z < e.base->num_objects(); ++z) {
    int top = std::max({lhs.result.values[z].dim(), rhs.result.values[z].dim(), 0});
    v.max_degree = std::max(v.max_degree, top);
    v.objects.push_back(e.base->object(z));
    v.grothendieck_side.push_back(homology(lhs.result.values[z], top));
    v.iterated_side.push_back(homology(rhs.result.values[z], top));
    v.pass = v.pass && v.grothendieck_side.back().agrees_through(v.iterated_side.back(), top);
  }
  return v;
}

SimplicialSetFin homotopy_pushout(const SimplicialSetFin& a, const SimplicialSetFin& b, const SimplicialSetFin& c,
                                  const SimplicialMap& f, const SimplicialMap& g) {
  CatPtr span = span_category();
  std::vector<SimplicialSetFin> values(3);
  values[span->object_index("a")] = a;
  values[span->object_index("b")] = b;
  values[span->object_index("c")] = c;
  std::vector<SimplicialMap> maps(span->num_morphisms());
  for (int o = 0; o < 3; ++o) maps[span->identity(o)] = identity_map(values[o]);
  maps[span->morphism_index("f")] = f;
  maps[span->morphism_index("g")] = g;
  return underlying(bk_hocolim(sset_diagram(span, values, maps), Precofibrant::Off).result);
}

}  // namespace uht
