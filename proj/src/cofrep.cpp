#include "uht/cofrep.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "uht/hocolim.hpp"

namespace uht {

namespace {

// The composite X_m -> X_0 of a backward chain.
int chain_composite(const FinCategory& c, const Chain& ch) {
  int comp = c.identity(ch.objects.front());
  for (int t = 0; t < ch.length(); ++t) comp = c.compose(comp, ch.morphisms[t]);
  return comp;
}

OpMap constant_op(int k) { return OpMap(static_cast<std::size_t>(k) + 1, 0); }

// Vertices of a generator of a standard simplex, read off its vertex ids.
OpMap simplex_vertices(const SimplicialSetFin& delta, int gen) {
  OpMap theta;
  Simplex s = delta.simplex(gen);
  for (int t = 0; t <= s.dim(); ++t) theta.push_back(std::stoi(delta.generator(delta.apply({t}, s).gen).id));
  return theta;
}

}  // namespace

// ---------------------------------------------------------------------------
// Q and Q̃

QResult q(const SimplicialPresheaf& f, std::optional<int> max_degree) {
  const FinCategory& c = *f.base;
  ChainFiniteness cf = chain_finiteness(c);
  int top_len;
  if (!max_degree) {
    if (!cf.chain_finite)
      throw NotChainFinite("base category is not chain-finite (cycle " + join(cf.witness, ", ") + ")");
    top_len = cf.max_length;
  } else {
    top_len = cf.chain_finite ? std::min(cf.max_length, *max_degree) : *max_degree;
  }
  QResult r;
  for (int k = 0; k <= top_len; ++k)
    for (auto& ch : nondegenerate_chains(c, k, Orientation::Backward)) {
      r.chain_index.emplace(ch, static_cast<int>(r.chains.size()));
      r.chains.push_back(std::move(ch));
    }
  int top_dim = 0;
  r.bar.resize(c.num_objects());
  for (int z = 0; z < c.num_objects(); ++z) {
    BarAtObject& bar = r.bar[z];
    for (std::size_t ch = 0; ch < r.chains.size(); ++ch) {
      const Chain& chain = r.chains[ch];
      const SimplicialSetFin& k = f.values[chain.objects.front()];
      for (int u : c.hom(z, chain.objects.back()))
        for (int g = 0; g < k.num_generators(); ++g) {
          BarAtObject::Entry e{static_cast<int>(ch), u, g};
          bar.lookup[e] = static_cast<int>(bar.bigens.size());
          bar.bigens.push_back(e);
          top_dim = std::max(top_dim, chain.length() + k.generator(g).dim);
        }
    }
  }
  if (max_degree && (top_dim > *max_degree || !cf.chain_finite || cf.max_length > *max_degree))
    r.truncation = TruncationTag::at(*max_degree);

  r.result.base = f.base;
  for (int z = 0; z < c.num_objects(); ++z) {
    BarAtObject& bar = r.bar[z];
    std::vector<BiGenerator> gens;
    for (const auto& e : bar.bigens) {
      const Chain& chain = r.chains[e.chain];
      int m = chain.length();
      int x0 = chain.objects.front();
      const SimplicialSetFin& k = f.values[x0];
      const Generator& gen = k.generator(e.gen);
      BiGenerator b{chain_id(c, chain) + ":" + c.morphism(e.u) + ":" + gen.id, m, gen.dim, {}, {}};
      for (int i = 0; i <= m && m > 0; ++i) {
        Chain face = chain_face(c, chain, i, Orientation::Backward);
        Simplex y = k.simplex(e.gen);
        int u = e.u;
        if (i == 0) y = f.restrictions[chain.morphisms[0]].images[e.gen];
        if (i == m) u = c.compose(chain.morphisms[m - 1], e.u);
        auto [red, surj] = normalize_chain(c, face);
        b.hfaces.push_back(BiSimplex{surj, y.map, bar.lookup.at({r.chain_index.at(red), u, y.gen})});
      }
      for (int j = 0; j <= gen.dim && gen.dim > 0; ++j) {
        Simplex y = k.face(j, k.simplex(e.gen));
        b.vfaces.push_back(BiSimplex{identity_op(m), y.map, bar.lookup.at({e.chain, e.u, y.gen})});
      }
      gens.push_back(std::move(b));
    }
    bar.bi = BisimplicialSetFin(std::move(gens));
    bar.diagonal = std::make_shared<const Diagonal>(bar.bi, max_degree);
    r.result.values.push_back(bar.diagonal->set());
  }
  for (int u = 0; u < c.num_morphisms(); ++u) {
    int z = c.src(u), w = c.dst(u);
    r.result.restrictions.push_back(diagonal_map(*r.bar[w].diagonal, *r.bar[z].diagonal, r.bar[z].bi, [&](int bg) {
      const auto& e = r.bar[w].bigens[bg];
      const Generator& gen = f.values[r.chains[e.chain].objects.front()].generator(e.gen);
      return BiSimplex{identity_op(r.chains[e.chain].length()), identity_op(gen.dim),
                       r.bar[z].lookup.at({e.chain, c.compose(e.u, u), e.gen})};
    }));
  }
  for (int z = 0; z < c.num_objects(); ++z) {
    SimplicialMap m;
    const Diagonal& diag = *r.bar[z].diagonal;
    for (int x = 0; x < diag.set().num_generators(); ++x) {
      const BiSimplex& s = diag.source(x);
      const auto& e = r.bar[z].bigens[s.gen];
      int to_z = c.compose(chain_composite(c, r.chains[e.chain]), e.u);
      m.images.push_back(f.values[z].apply(s.v, f.restrictions[to_z].images[e.gen]));
    }
    r.augmentation.components.push_back(std::move(m));
  }
  return r;
}

QResult qtilde(const Presheaf& f, std::optional<int> max_degree) { return q(discrete_embed(f), max_degree); }

SimplicialPresheafMap q_map(const QResult& qf, const QResult& qg, const SimplicialPresheaf& g,
                            const SimplicialPresheafMap& phi) {
  SimplicialPresheafMap out;
  for (std::size_t z = 0; z < qf.bar.size(); ++z) {
    const BarAtObject& src = qf.bar[z];
    const BarAtObject& tgt = qg.bar[z];
    out.components.push_back(diagonal_map(*src.diagonal, *tgt.diagonal, tgt.bi, [&](int bg) {
      const auto& e = src.bigens[bg];
      const Chain& chain = qf.chains[e.chain];
      const Simplex& y = phi.components[chain.objects.front()].images[e.gen];
      (void)g;
      return BiSimplex{identity_op(chain.length()), y.map, tgt.lookup.at({qg.chain_index.at(chain), e.u, y.gen})};
    }));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The canonical homotopy colimit

namespace {

struct SimplexIndex {
  CatPtr category;
  struct Obj {
    int a, n, gen;
  };
  std::vector<Obj> objects;
  struct Mor {
    int src, dst, g;
    OpMap theta;
  };
  std::vector<Mor> morphisms;  // indexed like the category's morphisms
  std::vector<std::vector<int>> nondeg;  // per base object: generator -> object index or -1
};

SimplexIndex simplex_index(const SimplicialPresheaf& f) {
  const FinCategory& c = *f.base;
  SimplexIndex j;
  j.nondeg.resize(c.num_objects());
  CategorySpec spec;
  std::vector<std::string> oname;
  for (int a = 0; a < c.num_objects(); ++a) {
    const auto& k = f.values[a];
    j.nondeg[a].assign(k.num_generators(), -1);
    for (int g = 0; g < k.num_generators(); ++g) {
      j.nondeg[a][g] = static_cast<int>(j.objects.size());
      j.objects.push_back({a, k.generator(g).dim, g});
      oname.push_back(c.object(a) + ":" + k.generator(g).id);
      spec.objects.push_back(oname.back());
    }
  }
  std::map<std::tuple<int, int, int, OpMap>, std::string> mname;
  std::vector<std::tuple<int, int, int, OpMap>> mors;
  for (int s = 0; s < static_cast<int>(j.objects.size()); ++s)
    for (int t = 0; t < static_cast<int>(j.objects.size()); ++t) {
      const auto& os = j.objects[s];
      const auto& ot = j.objects[t];
      if (os.n > ot.n) continue;
      for (int g : c.hom(os.a, ot.a)) {
        Simplex pulled = f.restrictions[g].images[ot.gen];
        for (const auto& theta : monotone_maps(os.n, ot.n)) {
          if (!is_injective(theta)) continue;
          if (f.values[os.a].apply(theta, pulled) != f.values[os.a].simplex(os.gen)) continue;
          std::string id = "(" + c.morphism(g) + ",";
          for (int v : theta) id += std::to_string(v);
          id += "):" + oname[s] + ">" + oname[t];
          mname[{s, t, g, theta}] = id;
          mors.push_back({s, t, g, theta});
          spec.morphisms.push_back({id, oname[s], oname[t]});
          if (s == t && c.is_identity(g)) spec.identities[oname[s]] = id;
        }
      }
    }
  for (const auto& [s1, t1, g1, th1] : mors)
    for (const auto& [s2, t2, g2, th2] : mors) {
      if (s2 != t1) continue;
      auto key = std::make_tuple(s1, t2, c.compose(g2, g1), compose_ops(th2, th1));
      spec.compose.push_back({mname.at({s2, t2, g2, th2}), mname.at({s1, t1, g1, th1}), mname.at(key)});
    }
  j.category = FinCategory::make(spec);
  // the category sorts its objects by name; follow its order
  std::vector<int> perm(j.objects.size());
  std::vector<SimplexIndex::Obj> sorted(j.objects.size());
  for (std::size_t o = 0; o < j.objects.size(); ++o) {
    perm[o] = j.category->object_index(oname[o]);
    sorted[perm[o]] = j.objects[o];
    j.nondeg[j.objects[o].a][j.objects[o].gen] = perm[o];
  }
  j.objects = std::move(sorted);
  j.morphisms.resize(j.category->num_morphisms());
  for (const auto& [s, t, g, theta] : mors)
    j.morphisms[j.category->morphism_index(mname.at({s, t, g, theta}))] = {perm[s], perm[t], g, theta};
  return j;
}

// Contractibility (homology proxy) of (A, n, s)↓J for every simplex s of F up to level d.
FinalityCertificate certify_finality(const SimplicialPresheaf& f, const SimplexIndex& j, int d) {
  const FinCategory& c = *f.base;
  const FinCategory& jc = *j.category;
  FinalityCertificate cert;
  for (int a = 0; a < c.num_objects(); ++a)
    for (int n = 0; n <= d; ++n)
      for (const Simplex& s : f.values[a].level(n)) {
        ++cert.checked;
        struct CommaObj {
          int g;
          OpMap theta;
          int obj;
        };
        std::vector<CommaObj> objs;
        for (int t = 0; t < static_cast<int>(j.objects.size()); ++t) {
          const auto& ot = j.objects[t];
          for (int g : c.hom(a, ot.a)) {
            Simplex pulled = f.restrictions[g].images[ot.gen];
            for (const auto& theta : monotone_maps(n, ot.n))
              if (f.values[a].apply(theta, pulled) == s) objs.push_back({g, theta, t});
          }
        }
        CategorySpec spec;
        for (std::size_t o = 0; o < objs.size(); ++o) spec.objects.push_back("o" + std::to_string(o));
        std::map<std::pair<std::pair<int, int>, int>, std::string> mid;
        std::vector<std::tuple<int, int, int>> mors;
        for (std::size_t p = 0; p < objs.size(); ++p)
          for (std::size_t r = 0; r < objs.size(); ++r)
            for (int m : jc.hom(objs[p].obj, objs[r].obj)) {
              const auto& jm = j.morphisms[m];
              if (c.compose(jm.g, objs[p].g) != objs[r].g) continue;
              if (compose_ops(jm.theta, objs[p].theta) != objs[r].theta) continue;
              std::string id = "m" + std::to_string(mors.size());
              mid[{{static_cast<int>(p), static_cast<int>(r)}, m}] = id;
              mors.push_back({static_cast<int>(p), static_cast<int>(r), m});
              spec.morphisms.push_back({id, spec.objects[p], spec.objects[r]});
              if (p == r && jc.is_identity(m)) spec.identities[spec.objects[p]] = id;
            }
        for (const auto& [p1, r1, m1] : mors)
          for (const auto& [p2, r2, m2] : mors)
            if (p2 == r1)
              spec.compose.push_back({mid.at({{p2, r2}, m2}), mid.at({{p1, r1}, m1}),
                                      mid.at({{p1, r2}, jc.compose(m2, m1)})});
        bool ok = !objs.empty();
        if (ok) {
          CatPtr comma = FinCategory::make(spec);
          HomologySummary h = homology(nerve(comma).set);
          ok = h.to_string() == "H0=Z";
        }
        if (!ok) {
          cert.pass = false;
          if (cert.failures.size() < 8)
            cert.failures.push_back("(" + c.object(a) + ", " + f.values[a].name(s) + ")");
        }
      }
  return cert;
}

}  // namespace

CanonicalQResult canonical_q(const SimplicialPresheaf& f, int d, bool certify) {
  const FinCategory& c = *f.base;
  int top = f.dim();
  if (d < top + 1)
    throw TruncationTooSmall("truncation " + std::to_string(d) + " is below dim F + 1 = " + std::to_string(top + 1));
  SimplexIndex j = simplex_index(f);
  CanonicalQResult out;
  out.index = j.category;
  out.truncation = TruncationTag::at(d);

  std::vector<SimplicialSetFin> deltas;
  for (int n = 0; n <= std::max(top, 0); ++n) deltas.push_back(standard_simplex(n));
  std::vector<SimplicialPresheaf> reps;
  for (int a = 0; a < c.num_objects(); ++a) reps.push_back(discrete_embed(yoneda(f.base, a)));

  SPDiagram diag{j.category, f.base, {}, {}};
  std::vector<Tensor> tensors;
  for (const auto& o : j.objects) {
    tensors.push_back(tensor_simplicial(reps[o.a], deltas[o.n]));
    diag.values.push_back(tensors.back().result);
  }
  for (const auto& m : j.morphisms) {
    const auto& os = j.objects[m.src];
    const auto& ot = j.objects[m.dst];
    SimplicialMap dm = delta_map(m.theta, ot.n);
    SimplicialPresheafMap pm;
    for (int z = 0; z < c.num_objects(); ++z) {
      SimplicialMap rg;
      const auto& hb = c.hom(z, ot.a);
      for (int u : c.hom(z, os.a)) {
        int gu = c.compose(m.g, u);
        rg.images.push_back(Simplex{{0}, static_cast<int>(std::find(hb.begin(), hb.end(), gu) - hb.begin())});
      }
      pm.components.push_back(product_map(tensors[m.src].products[z], tensors[m.dst].products[z],
                                          reps[ot.a].values[z], deltas[ot.n], rg, dm));
    }
    diag.maps.push_back(std::move(pm));
  }
  std::vector<SimplicialPresheafMap> legs;
  for (std::size_t o = 0; o < j.objects.size(); ++o) {
    const auto& obj = j.objects[o];
    int right = deltas[obj.n].num_generators();
    SimplicialPresheafMap leg;
    for (int z = 0; z < c.num_objects(); ++z) {
      SimplicialMap m;
      const auto& hz = c.hom(z, obj.a);
      const Product& p = tensors[o].products[z];
      for (int x = 0; x < p.set.num_generators(); ++x) {
        const BiSimplex& s = p.diagonal->source(x);
        int u = hz[s.gen / right];
        OpMap theta = simplex_vertices(deltas[obj.n], s.gen % right);
        Simplex pulled = f.restrictions[u].images[obj.gen];
        m.images.push_back(f.values[z].apply(s.v, f.values[z].apply(theta, pulled)));
      }
      leg.components.push_back(std::move(m));
    }
    legs.push_back(std::move(leg));
  }
  Replacement r = simplicial_replacement(diag, d);
  out.result = r.result;
  out.augmentation = replacement_augmentation(r, diag, f, legs);
  if (certify) out.finality = certify_finality(f, j, d);
  return out;
}

// ---------------------------------------------------------------------------
// Splittings and certificates

std::optional<DegeneracySplitting> detect_splitting(const SimplicialPresheaf& f, std::optional<int> bound) {
  const FinCategory& c = *f.base;
  DegeneracySplitting s;
  s.bound = bound ? *bound : f.dim() + 1;
  for (int k = 0; k <= s.bound; ++k) {
    auto nk = nondegenerate_presheaf(f, k);
    if (!nk) return std::nullopt;
    s.nondegenerate.push_back(std::move(*nk));
  }
  for (int k = 0; k <= s.bound; ++k) {
    // ⊔_{σ: [k] ->> [n]} N_n and its comparison map to F_k
    Presheaf split{f.base, {}, {}};
    std::vector<std::vector<std::pair<OpMap, int>>> members(c.num_objects());
    std::vector<std::map<std::pair<OpMap, int>, int>> pos(c.num_objects());
    PresheafMap cmp;
    for (int z = 0; z < c.num_objects(); ++z) {
      split.sections.emplace_back();
      auto level = f.values[z].level(k);
      std::map<Simplex, int> at;
      for (std::size_t i = 0; i < level.size(); ++i) at[level[i]] = static_cast<int>(i);
      cmp.components.emplace_back();
      for (int n = 0; n <= k; ++n) {
        auto gens = f.values[z].generators_of_dim(n);
        for (const auto& sigma : surjections(k, n))
          for (std::size_t x = 0; x < gens.size(); ++x) {
            pos[z][{sigma, gens[x]}] = static_cast<int>(members[z].size());
            members[z].push_back({sigma, gens[x]});
            split.sections[z].push_back(word_string(sigma) + "(" + f.values[z].generator(gens[x]).id + ")");
            cmp.components[z].push_back(at.at(Simplex{sigma, gens[x]}));
          }
      }
    }
    for (int u = 0; u < c.num_morphisms(); ++u) {
      split.restrict.emplace_back();
      for (const auto& [sigma, g] : members[c.dst(u)])
        split.restrict.back().push_back(pos[c.src(u)].at({sigma, f.restrictions[u].images[g].gen}));
    }
    if (!is_presheaf_isomorphism(split, level_presheaf(f, k), cmp)) return std::nullopt;
  }
  return s;
}

std::optional<CofibrancyCertificate> cofibrancy_certificate(const SimplicialPresheaf& f, std::optional<int> bound) {
  auto s = detect_splitting(f, bound);
  if (!s) return std::nullopt;
  CofibrancyCertificate cert;
  for (const auto& nk : s->nondegenerate) {
    auto dec = representable_decomposition(nk);
    if (!dec) return std::nullopt;
    cert.decompositions.push_back(std::move(*dec));
  }
  cert.splitting = std::move(*s);
  return cert;
}

SkeletonPresheaf skeleton_presheaf(const SimplicialPresheaf& f, int n) {
  const FinCategory& c = *f.base;
  SkeletonPresheaf out;
  out.result.base = f.base;
  std::vector<std::vector<int>> inverse(c.num_objects());
  for (int z = 0; z < c.num_objects(); ++z) {
    out.result.values.push_back(skeleton(f.values[z], n));
    out.inclusion.components.push_back(skeleton_inclusion(f.values[z], n));
    inverse[z].assign(f.values[z].num_generators(), -1);
    const auto& imgs = out.inclusion.components[z].images;
    for (std::size_t g = 0; g < imgs.size(); ++g) inverse[z][imgs[g].gen] = static_cast<int>(g);
  }
  for (int u = 0; u < c.num_morphisms(); ++u) {
    int z = c.src(u), w = c.dst(u);
    SimplicialMap m;
    for (const auto& incl : out.inclusion.components[w].images) {
      Simplex img = map_simplex(f.values[z], f.restrictions[u], incl);
      m.images.push_back(Simplex{img.map, inverse[z][img.gen]});
    }
    out.result.restrictions.push_back(std::move(m));
  }
  return out;
}

SkeletalFiltration skeletal_filtration(const SimplicialPresheaf& f, const DegeneracySplitting& s) {
  const FinCategory& c = *f.base;
  SkeletalFiltration out;
  int top = std::max(f.dim(), 0);
  if (s.bound < top) throw PushoutMismatch("splitting bound is below the dimension of F");
  std::vector<std::vector<int>> gens_of(c.num_objects());

  // sk_0 = N_0
  {
    SimplicialPresheaf n0 = discrete_embed(s.nondegenerate[0]);
    SkeletonPresheaf sk = skeleton_presheaf(f, 0);
    SimplicialPresheafMap cmp;
    for (int z = 0; z < c.num_objects(); ++z) {
      SimplicialMap m;
      auto verts = f.values[z].generators_of_dim(0);
      for (int v : verts) {
        auto it = std::find_if(sk.inclusion.components[z].images.begin(), sk.inclusion.components[z].images.end(),
                               [&](const Simplex& x) { return x.gen == v; });
        m.images.push_back(Simplex{{0}, static_cast<int>(it - sk.inclusion.components[z].images.begin())});
      }
      cmp.components.push_back(std::move(m));
    }
    bool ok = is_simplicial_presheaf_isomorphism(n0, sk.result, cmp);
    out.stages.push_back({0, n0, ok});
    if (!ok) throw PushoutMismatch("sk_0 differs from N_0");
  }
  for (int n = 1; n <= top; ++n) {
    SkeletonPresheaf prev = skeleton_presheaf(f, n - 1);
    SkeletonPresheaf cur = skeleton_presheaf(f, n);
    SimplicialPresheaf nn = discrete_embed(s.nondegenerate[n]);
    SimplicialSetFin delta = standard_simplex(n);
    SimplicialSetFin bdry = boundary(n);
    Tensor cell = tensor_simplicial(nn, delta);
    Tensor rim = tensor_simplicial(nn, bdry);
    SimplicialMap bincl;
    for (const auto& g : bdry.generators()) bincl.images.push_back(delta.simplex(*delta.find(g.id)));

    std::vector<std::vector<int>> inv_prev(c.num_objects()), inv_cur(c.num_objects());
    for (int z = 0; z < c.num_objects(); ++z) {
      inv_prev[z].assign(f.values[z].num_generators(), -1);
      inv_cur[z].assign(f.values[z].num_generators(), -1);
      const auto& pi = prev.inclusion.components[z].images;
      const auto& ci = cur.inclusion.components[z].images;
      for (std::size_t g = 0; g < pi.size(); ++g) inv_prev[z][pi[g].gen] = static_cast<int>(g);
      for (std::size_t g = 0; g < ci.size(); ++g) inv_cur[z][ci[g].gen] = static_cast<int>(g);
    }
    // θ^*(x) for a generator of N_n ⊗ K with K ⊂ Δ^n
    auto realize = [&](int z, const Product& p, const SimplicialSetFin& k, int x) {
      const BiSimplex& src = p.diagonal->source(x);
      int right = p.right_count;
      int cellgen = f.values[z].generators_of_dim(n)[src.gen / right];
      OpMap theta = simplex_vertices(delta, *delta.find(k.generator(src.gen % right).id));
      return f.values[z].apply(src.v, f.values[z].apply(theta, f.values[z].simplex(cellgen)));
    };
    SimplicialCoproduct co = coproduct(std::vector<const SimplicialPresheaf*>{&prev.result, &cell.result}, std::vector<std::string>{"sk", "cell"});
    std::vector<std::vector<std::pair<Simplex, Simplex>>> pairs(c.num_objects());
    for (int z = 0; z < c.num_objects(); ++z) {
      const Product& rp = rim.products[z];
      SimplicialMap to_cell =
          product_map(rp, cell.products[z], nn.values[z], delta, identity_map(nn.values[z]), bincl);
      for (int x = 0; x < rp.set.num_generators(); ++x) {
        Simplex img = realize(z, rp, bdry, x);
        Simplex attached{img.map, inv_prev[z][img.gen]};
        if (attached.gen < 0) throw PushoutMismatch("attaching map leaves the (n-1)-skeleton");
        pairs[z].push_back({map_simplex(co.result.values[z], co.inclusions[0].components[z], attached),
                            map_simplex(co.result.values[z], co.inclusions[1].components[z], to_cell.images[x])});
      }
    }
    PresheafQuotient po = coequalize(co.result, pairs);
    // comparison pushout -> sk_n F
    SimplicialPresheafMap from_co;
    for (int z = 0; z < c.num_objects(); ++z) {
      SimplicialMap m;
      for (const auto& incl : prev.inclusion.components[z].images)
        m.images.push_back(Simplex{incl.map, inv_cur[z][incl.gen]});
      const Product& cp = cell.products[z];
      for (int x = 0; x < cp.set.num_generators(); ++x) {
        Simplex img = realize(z, cp, delta, x);
        m.images.push_back(Simplex{img.map, inv_cur[z][img.gen]});
      }
      from_co.components.push_back(std::move(m));
    }
    auto cmp = descend(co.result, po, cur.result, from_co);
    bool ok = cmp && is_simplicial_presheaf_isomorphism(po.result, cur.result, *cmp);
    out.stages.push_back({n, po.result, ok});
    if (!ok) throw PushoutMismatch("pushout at stage " + std::to_string(n) + " differs from the honest skeleton");
  }
  // the last stage against F itself
  SkeletonPresheaf full = skeleton_presheaf(f, top);
  out.colimit_matches = is_simplicial_presheaf_isomorphism(full.result, f, full.inclusion);
  return out;
}

// ---------------------------------------------------------------------------
// Cotriple

namespace {

struct Layer {
  Presheaf p;
  std::vector<std::vector<std::pair<int, int>>> elems;  // per object: (u, element of the inner presheaf)
  std::vector<std::map<std::pair<int, int>, int>> index;
};

// TU G: at X, pairs (u: X -> Y, g in G(Y)).
Layer tu(const Presheaf& g) {
  const FinCategory& c = *g.base;
  Layer l;
  l.p.base = g.base;
  l.elems.resize(c.num_objects());
  l.index.resize(c.num_objects());
  for (int x = 0; x < c.num_objects(); ++x) {
    l.p.sections.emplace_back();
    for (int y = 0; y < c.num_objects(); ++y)
      for (int u : c.hom(x, y))
        for (int e = 0; e < g.size(y); ++e) {
          l.index[x][{u, e}] = static_cast<int>(l.elems[x].size());
          l.elems[x].push_back({u, e});
          l.p.sections[x].push_back("(" + c.morphism(u) + "," + g.sections[y][e] + ")");
        }
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    int xs = c.src(f), xd = c.dst(f);
    l.p.restrict.emplace_back();
    for (const auto& [u, e] : l.elems[xd]) l.p.restrict.back().push_back(l.index[xs].at({c.compose(u, f), e}));
  }
  return l;
}

// TU(φ) for φ : G -> H, with src = TU G and tgt = TU H.
PresheafMap tu_map(const Layer& src, const Layer& tgt, const PresheafMap& phi, const FinCategory& c) {
  PresheafMap m;
  for (int x = 0; x < c.num_objects(); ++x) {
    m.components.emplace_back();
    for (const auto& [u, e] : src.elems[x]) m.components[x].push_back(tgt.index[x].at({u, phi.components[c.dst(u)][e]}));
  }
  return m;
}

}  // namespace

Presheaf cotriple_level(const Presheaf& f, int n) {
  Layer l = tu(f);
  for (int k = 1; k <= n; ++k) l = tu(l.p);
  return l.p;
}

CotripleVerdict cotriple_compare(const Presheaf& f, int n_max) {
  const FinCategory& c = *f.base;
  CotripleVerdict v;
  v.n_max = n_max;
  // levels 0..n_max+1 so that degeneracies out of n_max can be checked too
  int levels = n_max + 1;
  std::vector<Layer> L;
  L.push_back(tu(f));
  for (int k = 1; k <= levels; ++k) L.push_back(tu(L.back().p));
  auto layer_presheaf = [&](int k) -> const Presheaf& { return k < 0 ? f : L[k].p; };

  ChainFiniteness cf = chain_finiteness(c);
  QResult qt = qtilde(f, cf.chain_finite ? std::nullopt : std::optional<int>(levels));

  // β_k : L_k -> (Q̃F)_k as simplices, and the level indices
  std::vector<std::vector<std::map<Simplex, int>>> level_index(levels + 1);
  std::vector<std::vector<std::vector<Simplex>>> beta(levels + 1);
  for (int k = 0; k <= levels; ++k) {
    level_index[k].resize(c.num_objects());
    beta[k].resize(c.num_objects());
    for (int x = 0; x < c.num_objects(); ++x) {
      auto lv = qt.result.values[x].level(k);
      for (std::size_t i = 0; i < lv.size(); ++i) level_index[k][x][lv[i]] = static_cast<int>(i);
      for (int e = 0; e < L[k].p.size(x); ++e) {
        Chain chain;
        std::vector<int> us;
        int obj = x, el = e;
        for (int t = k; t >= 0; --t) {
          auto [u, inner] = L[t].elems[obj][el];
          us.push_back(u);
          obj = c.dst(u);
          el = inner;
        }
        // us = u_k, ..., u_0 and el is a section of F(Y_0)
        int uk = us.front();
        chain.objects.push_back(obj);
        for (int t = 1; t <= k; ++t) {
          int m = us[k - t + 1];  // u_{t-1} : Y_t -> Y_{t-1}
          chain.morphisms.push_back(m);
          chain.objects.push_back(c.src(m));
        }
        auto [red, surj] = normalize_chain(c, chain);
        const BarAtObject& bar = qt.bar[x];
        int bg = bar.lookup.at({qt.chain_index.at(red), uk, el});
        beta[k][x].push_back(bar.diagonal->normalize(BiSimplex{surj, constant_op(k), bg}));
      }
    }
  }
  auto beta_index = [&](int k, int x, int e) { return level_index[k][x].at(beta[k][x][e]); };

  v.pass = true;
  for (int k = 0; k <= n_max; ++k) {
    PresheafMap b;
    for (int x = 0; x < c.num_objects(); ++x) {
      b.components.emplace_back();
      for (int e = 0; e < L[k].p.size(x); ++e) b.components[x].push_back(beta_index(k, x, e));
    }
    bool iso = is_presheaf_isomorphism(L[k].p, level_presheaf(qt.result, k), b);
    v.level_iso.push_back(iso);

    bool faces = true;
    for (int i = 0; i <= k && k > 0; ++i) {
      // d_i = (TU)^{k-i} ε (TU)^i
      PresheafMap eps;
      for (int x = 0; x < c.num_objects(); ++x) {
        eps.components.emplace_back();
        for (const auto& [u, e] : L[i].elems[x]) eps.components[x].push_back(layer_presheaf(i - 1).restrict[u][e]);
      }
      PresheafMap d = eps;
      for (int t = i + 1; t <= k; ++t) d = tu_map(L[t], L[t - 1], d, c);
      for (int x = 0; x < c.num_objects() && faces; ++x)
        for (int e = 0; e < L[k].p.size(x); ++e)
          if (qt.result.values[x].face(i, beta[k][x][e]) != beta[k - 1][x][d.components[x][e]]) {
            faces = false;
            break;
          }
    }
    v.faces_agree.push_back(faces);

    bool degs = true;
    for (int i = 0; i <= k; ++i) {
      // s_i = (TU)^{k-i} δ (TU)^i, δ inserting an identity
      PresheafMap delta;
      for (int x = 0; x < c.num_objects(); ++x) {
        delta.components.emplace_back();
        for (const auto& [u, e] : L[i].elems[x])
          delta.components[x].push_back(L[i + 1].index[x].at({u, L[i].index[c.dst(u)].at({c.identity(c.dst(u)), e})}));
      }
      PresheafMap s = delta;
      for (int t = i + 1; t <= k; ++t) s = tu_map(L[t], L[t + 1], s, c);
      for (int x = 0; x < c.num_objects() && degs; ++x)
        for (int e = 0; e < L[k].p.size(x); ++e)
          if (qt.result.values[x].degeneracy(i, beta[k][x][e]) != beta[k + 1][x][s.components[x][e]]) {
            degs = false;
            break;
          }
    }
    v.degeneracies_agree.push_back(degs);
    v.pass = v.pass && iso && faces && degs;
  }
  return v;
}

}  // namespace uht
