#include "uht/fincat.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace uht {

namespace {

struct Normalized {
  std::vector<std::string> objects;
  std::vector<MorphismSpec> morphisms;
  std::map<std::string, int> obj_index, mor_index;
  std::vector<int> src, dst, identity, table;
  std::vector<std::string> problems;
};

Normalized normalize(const CategorySpec& spec) {
  Normalized n;
  auto& problems = n.problems;
  n.objects = spec.objects;
  std::sort(n.objects.begin(), n.objects.end());
  for (std::size_t i = 0; i < n.objects.size(); ++i) {
    if (n.objects[i].empty()) problems.push_back("empty object id");
    if (!n.obj_index.emplace(n.objects[i], static_cast<int>(i)).second)
      problems.push_back("duplicate object '" + n.objects[i] + "'");
  }
  for (const auto& [obj, id] : spec.identities)
    if (!n.obj_index.count(obj)) problems.push_back("identity declared for unknown object '" + obj + "'");

  std::vector<MorphismSpec> mors = spec.morphisms;
  std::set<std::string> seen;
  for (const auto& m : mors) seen.insert(m.id);
  for (const auto& obj : n.objects) {
    auto it = spec.identities.find(obj);
    std::string id = it == spec.identities.end() ? "id_" + obj : it->second;
    if (!seen.count(id)) {
      mors.push_back(MorphismSpec{id, obj, obj});
      seen.insert(id);
    }
  }
  std::sort(mors.begin(), mors.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  n.morphisms = mors;
  for (std::size_t i = 0; i < mors.size(); ++i) {
    if (mors[i].id.empty()) problems.push_back("empty morphism id");
    if (!n.mor_index.emplace(mors[i].id, static_cast<int>(i)).second)
      problems.push_back("duplicate morphism '" + mors[i].id + "'");
    auto s = n.obj_index.find(mors[i].src);
    auto d = n.obj_index.find(mors[i].dst);
    if (s == n.obj_index.end() || d == n.obj_index.end()) {
      problems.push_back("morphism '" + mors[i].id + "' has unknown endpoint");
      n.src.push_back(-1);
      n.dst.push_back(-1);
    } else {
      n.src.push_back(s->second);
      n.dst.push_back(d->second);
    }
  }
  if (!problems.empty()) return n;

  int nm = static_cast<int>(mors.size());
  n.identity.assign(n.objects.size(), -1);
  for (std::size_t x = 0; x < n.objects.size(); ++x) {
    auto it = spec.identities.find(n.objects[x]);
    std::string id = it == spec.identities.end() ? "id_" + n.objects[x] : it->second;
    int m = n.mor_index.at(id);
    if (n.src[m] != static_cast<int>(x) || n.dst[m] != static_cast<int>(x)) {
      problems.push_back("identity '" + id + "' of '" + n.objects[x] + "' is not an endomorphism of it");
      continue;
    }
    n.identity[x] = m;
  }
  if (!problems.empty()) return n;

  n.table.assign(static_cast<std::size_t>(nm) * nm, -1);
  auto at = [&](int g, int f) -> int& { return n.table[static_cast<std::size_t>(g) * nm + f]; };
  for (int f = 0; f < nm; ++f) {
    at(n.identity[n.dst[f]], f) = f;
    at(f, n.identity[n.src[f]]) = f;
  }
  for (const auto& [gs, fs, gfs] : spec.compose) {
    auto g = n.mor_index.find(gs), f = n.mor_index.find(fs), gf = n.mor_index.find(gfs);
    std::string label = gs + " o " + fs + " = " + gfs;
    if (g == n.mor_index.end() || f == n.mor_index.end() || gf == n.mor_index.end()) {
      problems.push_back("composition entry " + label + " names an unknown morphism");
      continue;
    }
    int gi = g->second, fi = f->second, gfi = gf->second;
    if (n.dst[fi] != n.src[gi]) {
      problems.push_back("composition entry " + label + " is not composable");
      continue;
    }
    if (n.src[gfi] != n.src[fi] || n.dst[gfi] != n.dst[gi]) {
      problems.push_back("composite in " + label + " has the wrong source or target");
      continue;
    }
    int& slot = at(gi, fi);
    if (slot >= 0 && slot != gfi)
      problems.push_back("conflicting composites for " + gs + " o " + fs + ": '" + mors[slot].id +
                         "' and '" + gfs + "'");
    else
      slot = gfi;
  }
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (n.dst[f] == n.src[g] && at(g, f) < 0)
        problems.push_back("composition is not total: " + mors[g].id + " o " + mors[f].id + " missing");
  if (!problems.empty()) return n;
  for (int h = 0; h < nm; ++h)
    for (int g = 0; g < nm; ++g) {
      if (n.dst[g] != n.src[h]) continue;
      int hg = at(h, g);
      for (int f = 0; f < nm; ++f) {
        if (n.dst[f] != n.src[g]) continue;
        if (at(h, at(g, f)) != at(hg, f))
          problems.push_back("associativity fails for (" + mors[h].id + ", " + mors[g].id + ", " +
                             mors[f].id + ")");
      }
    }
  return n;
}

CategorySpec spec_from(const std::vector<std::string>& objects, const std::vector<MorphismSpec>& mors,
                       const std::vector<std::array<std::string, 3>>& compose) {
  CategorySpec s;
  s.objects = objects;
  s.morphisms = mors;
  s.compose = compose;
  return s;
}

}  // namespace

std::vector<std::string> check_category(const CategorySpec& spec) { return normalize(spec).problems; }

CatPtr FinCategory::make(const CategorySpec& spec) {
  Normalized n = normalize(spec);
  if (!n.problems.empty()) throw InvariantViolation(n.problems);
  auto c = std::shared_ptr<FinCategory>(new FinCategory());
  c->objects_ = std::move(n.objects);
  c->morphisms_ = std::move(n.morphisms);
  c->src_ = std::move(n.src);
  c->dst_ = std::move(n.dst);
  c->identity_ = std::move(n.identity);
  c->table_ = std::move(n.table);
  c->object_index_ = std::move(n.obj_index);
  c->morphism_index_ = std::move(n.mor_index);
  int no = c->num_objects();
  c->hom_.assign(static_cast<std::size_t>(no) * no, {});
  for (int m = 0; m < c->num_morphisms(); ++m) c->hom_[c->src_[m] * no + c->dst_[m]].push_back(m);
  return c;
}

std::optional<int> FinCategory::find_object(const std::string& id) const {
  auto it = object_index_.find(id);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FinCategory::find_morphism(const std::string& id) const {
  auto it = morphism_index_.find(id);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

int FinCategory::object_index(const std::string& id) const {
  if (auto x = find_object(id)) return *x;
  throw InvalidInput("unknown object '" + id + "'");
}

int FinCategory::morphism_index(const std::string& id) const {
  if (auto m = find_morphism(id)) return *m;
  throw InvalidInput("unknown morphism '" + id + "'");
}

CategorySpec FinCategory::to_spec() const {
  CategorySpec s;
  s.objects = objects_;
  s.morphisms = morphisms_;
  for (int x = 0; x < num_objects(); ++x) s.identities[objects_[x]] = morphism(identity_[x]);
  for (int g = 0; g < num_morphisms(); ++g)
    for (int f = 0; f < num_morphisms(); ++f) {
      if (is_identity(g) || is_identity(f)) continue;
      int gf = compose(g, f);
      if (gf >= 0) s.compose.push_back({morphism(g), morphism(f), morphism(gf)});
    }
  return s;
}

// ---------------------------------------------------------------------------
// Fixtures

CatPtr point_category() { return FinCategory::make(spec_from({"pt"}, {}, {})); }

CatPtr arrow_category() { return FinCategory::make(spec_from({"a", "b"}, {{"f", "a", "b"}}, {})); }

CatPtr span_category() {
  return FinCategory::make(spec_from({"a", "b", "c"}, {{"f", "a", "b"}, {"g", "a", "c"}}, {}));
}

CatPtr poset_category(const std::vector<std::string>& objects,
                      const std::vector<std::pair<std::string, std::string>>& less) {
  std::set<std::pair<std::string, std::string>> rel(less.begin(), less.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : std::vector(rel.begin(), rel.end()))
      for (const auto& [c, d] : std::vector(rel.begin(), rel.end()))
        if (b == c && rel.insert({a, d}).second) changed = true;
  }
  std::vector<MorphismSpec> mors;
  for (const auto& [a, b] : rel) {
    if (a == b) throw InvalidInput("poset relation is not antisymmetric at '" + a + "'");
    mors.push_back({a + "<" + b, a, b});
  }
  std::vector<std::array<std::string, 3>> comp;
  for (const auto& [a, b] : rel)
    for (const auto& [c, d] : rel)
      if (b == c) comp.push_back({c + "<" + d, a + "<" + b, a + "<" + d});
  return FinCategory::make(spec_from(objects, mors, comp));
}

CatPtr linear_category(int n) {
  std::vector<std::string> objs;
  std::vector<std::pair<std::string, std::string>> less;
  for (int i = 0; i < n; ++i) {
    objs.push_back(std::to_string(i));
    if (i > 0) less.push_back({std::to_string(i - 1), std::to_string(i)});
  }
  return poset_category(objs, less);
}

CatPtr discrete_category(const std::vector<std::string>& objects) {
  return FinCategory::make(spec_from(objects, {}, {}));
}

CatPtr idempotent_category() {
  return FinCategory::make(spec_from({"x"}, {{"e", "x", "x"}}, {{"e", "e", "e"}}));
}

// ---------------------------------------------------------------------------
// Functors

std::vector<std::string> FunctorData::check() const {
  std::vector<std::string> problems;
  if (static_cast<int>(on_objects.size()) != source->num_objects() ||
      static_cast<int>(on_morphisms.size()) != source->num_morphisms()) {
    problems.push_back("functor data has the wrong size");
    return problems;
  }
  for (int m = 0; m < source->num_morphisms(); ++m) {
    int fm = on_morphisms[m];
    if (fm < 0 || fm >= target->num_morphisms() || target->src(fm) != on_objects[source->src(m)] ||
        target->dst(fm) != on_objects[source->dst(m)])
      problems.push_back("functor does not respect source/target of '" + source->morphism(m) + "'");
  }
  if (!problems.empty()) return problems;
  for (int x = 0; x < source->num_objects(); ++x)
    if (on_morphisms[source->identity(x)] != target->identity(on_objects[x]))
      problems.push_back("functor does not preserve the identity of '" + source->object(x) + "'");
  for (int g = 0; g < source->num_morphisms(); ++g)
    for (int f = 0; f < source->num_morphisms(); ++f) {
      int gf = source->compose(g, f);
      if (gf >= 0 && on_morphisms[gf] != target->compose(on_morphisms[g], on_morphisms[f]))
        problems.push_back("functor does not preserve " + source->morphism(g) + " o " + source->morphism(f));
    }
  return problems;
}

bool FunctorData::operator==(const FunctorData& other) const {
  return source == other.source && target == other.target && on_objects == other.on_objects &&
         on_morphisms == other.on_morphisms;
}

FunctorData identity_functor(const CatPtr& c) {
  FunctorData f{c, c, {}, {}};
  for (int x = 0; x < c->num_objects(); ++x) f.on_objects.push_back(x);
  for (int m = 0; m < c->num_morphisms(); ++m) f.on_morphisms.push_back(m);
  return f;
}

FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
  FunctorData h{f.source, g.target, {}, {}};
  for (int x : f.on_objects) h.on_objects.push_back(g.on_objects[x]);
  for (int m : f.on_morphisms) h.on_morphisms.push_back(g.on_morphisms[m]);
  return h;
}

std::vector<std::string> SetFunctor::check() const {
  std::vector<std::string> problems;
  if (static_cast<int>(sets.size()) != index->num_objects() ||
      static_cast<int>(functions.size()) != index->num_morphisms()) {
    problems.push_back("set functor data has the wrong size");
    return problems;
  }
  for (int u = 0; u < index->num_morphisms(); ++u) {
    const auto& fn = functions[u];
    if (fn.size() != sets[index->src(u)].size()) {
      problems.push_back("function for '" + index->morphism(u) + "' has the wrong domain");
      continue;
    }
    for (int v : fn)
      if (v < 0 || v >= static_cast<int>(sets[index->dst(u)].size()))
        problems.push_back("function for '" + index->morphism(u) + "' leaves its codomain");
  }
  if (!problems.empty()) return problems;
  for (int x = 0; x < index->num_objects(); ++x) {
    const auto& fn = functions[index->identity(x)];
    for (std::size_t i = 0; i < fn.size(); ++i)
      if (fn[i] != static_cast<int>(i))
        problems.push_back("identity of '" + index->object(x) + "' does not act as the identity");
  }
  for (int g = 0; g < index->num_morphisms(); ++g)
    for (int f = 0; f < index->num_morphisms(); ++f) {
      int gf = index->compose(g, f);
      if (gf < 0) continue;
      for (std::size_t i = 0; i < functions[f].size(); ++i)
        if (functions[g][functions[f][i]] != functions[gf][i])
          problems.push_back("set functor is not functorial on " + index->morphism(g) + " o " +
                             index->morphism(f));
    }
  return problems;
}

// ---------------------------------------------------------------------------
// Constructions

CatPtr opposite(const CatPtr& c) {
  CategorySpec s = c->to_spec();
  for (auto& m : s.morphisms) std::swap(m.src, m.dst);
  for (auto& t : s.compose) std::swap(t[0], t[1]);
  return FinCategory::make(s);
}

UnderCategory under_category(const CatPtr& c, int alpha) {
  CategorySpec s;
  std::vector<int> objs;  // morphisms out of alpha
  for (int m = 0; m < c->num_morphisms(); ++m)
    if (c->src(m) == alpha) {
      objs.push_back(m);
      s.objects.push_back(c->morphism(m));
    }
  struct Mor {
    int h, f, g;
  };
  std::vector<Mor> mors;
  auto name = [&](int h, int f) { return c->morphism(h) + "@" + c->morphism(f); };
  for (int f : objs)
    for (int g : objs)
      for (int h : c->hom(c->dst(f), c->dst(g)))
        if (c->compose(h, f) == g) {
          mors.push_back({h, f, g});
          s.morphisms.push_back({name(h, f), c->morphism(f), c->morphism(g)});
        }
  for (int f : objs) s.identities[c->morphism(f)] = name(c->identity(c->dst(f)), f);
  for (const auto& a : mors)
    for (const auto& b : mors)
      if (b.f == a.g) s.compose.push_back({name(b.h, b.f), name(a.h, a.f), name(c->compose(b.h, a.h), a.f)});
  UnderCategory out;
  out.category = FinCategory::make(s);
  out.forget = FunctorData{out.category, c, {}, {}};
  for (int x = 0; x < out.category->num_objects(); ++x)
    out.forget.on_objects.push_back(c->dst(c->morphism_index(out.category->object(x))));
  out.forget.on_morphisms.resize(out.category->num_morphisms());
  for (const auto& a : mors) out.forget.on_morphisms[out.category->morphism_index(name(a.h, a.f))] = a.h;
  return out;
}

GrothendieckConstruction grothendieck(const SetFunctor& theta) {
  const CatPtr& c = theta.index;
  CategorySpec s;
  auto oname = [&](int i, int e) { return "(" + c->object(i) + "," + theta.sets[i][e] + ")"; };
  auto mname = [&](int u, int e) { return "(" + c->morphism(u) + "," + theta.sets[c->src(u)][e] + ")"; };
  for (int i = 0; i < c->num_objects(); ++i)
    for (std::size_t e = 0; e < theta.sets[i].size(); ++e) {
      s.objects.push_back(oname(i, static_cast<int>(e)));
      s.identities[oname(i, static_cast<int>(e))] = mname(c->identity(i), static_cast<int>(e));
    }
  for (int u = 0; u < c->num_morphisms(); ++u)
    for (std::size_t e = 0; e < theta.sets[c->src(u)].size(); ++e)
      s.morphisms.push_back({mname(u, static_cast<int>(e)), oname(c->src(u), static_cast<int>(e)),
                             oname(c->dst(u), theta.functions[u][e])});
  for (int v = 0; v < c->num_morphisms(); ++v)
    for (int u = 0; u < c->num_morphisms(); ++u) {
      int vu = c->compose(v, u);
      if (vu < 0) continue;
      for (std::size_t e = 0; e < theta.sets[c->src(u)].size(); ++e)
        s.compose.push_back({mname(v, theta.functions[u][e]), mname(u, static_cast<int>(e)),
                             mname(vu, static_cast<int>(e))});
    }
  GrothendieckConstruction out;
  out.category = FinCategory::make(s);
  out.projection = FunctorData{out.category, c, {}, {}};
  out.pairs.resize(out.category->num_objects());
  out.projection.on_objects.resize(out.category->num_objects());
  out.projection.on_morphisms.resize(out.category->num_morphisms());
  for (int i = 0; i < c->num_objects(); ++i)
    for (std::size_t e = 0; e < theta.sets[i].size(); ++e) {
      int x = out.category->object_index(oname(i, static_cast<int>(e)));
      out.pairs[x] = {i, static_cast<int>(e)};
      out.projection.on_objects[x] = i;
    }
  for (int u = 0; u < c->num_morphisms(); ++u)
    for (std::size_t e = 0; e < theta.sets[c->src(u)].size(); ++e)
      out.projection.on_morphisms[out.category->morphism_index(mname(u, static_cast<int>(e)))] = u;
  return out;
}

ChainFiniteness chain_finiteness(const FinCategory& c) {
  int n = c.num_objects();
  // edge x -> y whenever a non-identity morphism x -> y exists
  std::vector<std::vector<int>> out_edges(n);
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (!c.is_identity(m)) out_edges[c.src(m)].push_back(m);
  std::vector<int> state(n, 0), longest(n, 0);
  std::vector<int> stack_mor;
  ChainFiniteness result;
  std::function<bool(int)> dfs = [&](int x) -> bool {
    state[x] = 1;
    for (int m : out_edges[x]) {
      int y = c.dst(m);
      stack_mor.push_back(m);
      if (state[y] == 1) {
        // cycle: trace back through the stack to y
        std::vector<std::string> cyc;
        for (auto it = stack_mor.rbegin(); it != stack_mor.rend(); ++it) {
          cyc.push_back(c.morphism(*it));
          if (c.src(*it) == y) break;
        }
        std::reverse(cyc.begin(), cyc.end());
        result.witness = cyc;
        return true;
      }
      if (state[y] == 0 && dfs(y)) return true;
      longest[x] = std::max(longest[x], longest[y] + 1);
      stack_mor.pop_back();
    }
    state[x] = 2;
    return false;
  };
  for (int x = 0; x < n; ++x)
    if (state[x] == 0 && dfs(x)) {
      result.chain_finite = false;
      return result;
    }
  for (int x = 0; x < n; ++x) result.max_length = std::max(result.max_length, longest[x]);
  return result;
}

Chain chain_face(const FinCategory& c, const Chain& chain, int i, Orientation o) {
  Chain out;
  int len = chain.length();
  for (int t = 0; t <= len; ++t)
    if (t != i) out.objects.push_back(chain.objects[t]);
  for (int t = 0; t < len; ++t) {
    if (i == 0 && t == 0) continue;
    if (i == len && t == len - 1) continue;
    if (i > 0 && i < len && t == i - 1) {
      int a = chain.morphisms[i - 1], b = chain.morphisms[i];
      out.morphisms.push_back(o == Orientation::Forward ? c.compose(b, a) : c.compose(a, b));
      ++t;
      continue;
    }
    out.morphisms.push_back(chain.morphisms[t]);
  }
  return out;
}

std::pair<Chain, std::vector<int>> normalize_chain(const FinCategory& c, const Chain& chain) {
  Chain out;
  std::vector<int> surj{0};
  out.objects.push_back(chain.objects[0]);
  for (int t = 1; t <= chain.length(); ++t) {
    int m = chain.morphisms[t - 1];
    if (c.is_identity(m)) {
      surj.push_back(surj.back());
    } else {
      surj.push_back(surj.back() + 1);
      out.objects.push_back(chain.objects[t]);
      out.morphisms.push_back(m);
    }
  }
  return {out, surj};
}

std::vector<Chain> nondegenerate_chains(const FinCategory& c, int length, Orientation o) {
  std::vector<Chain> out;
  Chain cur;
  std::function<void()> rec = [&]() {
    if (cur.length() == length) {
      out.push_back(cur);
      return;
    }
    int last = cur.objects.back();
    for (int m = 0; m < c.num_morphisms(); ++m) {
      if (c.is_identity(m)) continue;
      if (o == Orientation::Forward ? c.src(m) != last : c.dst(m) != last) continue;
      cur.morphisms.push_back(m);
      cur.objects.push_back(o == Orientation::Forward ? c.dst(m) : c.src(m));
      rec();
      cur.morphisms.pop_back();
      cur.objects.pop_back();
    }
  };
  for (int x = 0; x < c.num_objects(); ++x) {
    cur.objects = {x};
    cur.morphisms.clear();
    rec();
  }
  return out;
}

std::string chain_id(const FinCategory& c, const Chain& chain) {
  if (chain.length() == 0) return c.object(chain.objects[0]);
  std::vector<std::string> parts;
  for (int m : chain.morphisms) parts.push_back(c.morphism(m));
  return join(parts, "|");
}

Nerve nerve(const CatPtr& c, std::optional<int> max_degree) {
  ChainFiniteness cf = chain_finiteness(*c);
  int top;
  Nerve result;
  if (!max_degree) {
    if (!cf.chain_finite)
      throw NotChainFinite("category is not chain-finite (non-identity cycle " + join(cf.witness, ", ") + ")");
    top = cf.max_length;
  } else {
    top = *max_degree;
    if (!cf.chain_finite || cf.max_length > top) result.truncation = TruncationTag::at(top);
    if (cf.chain_finite) top = std::min(top, cf.max_length);
  }
  std::vector<Chain> all;
  std::map<Chain, int> index;
  for (int k = 0; k <= top; ++k)
    for (auto& ch : nondegenerate_chains(*c, k, Orientation::Forward)) {
      index.emplace(ch, static_cast<int>(all.size()));
      all.push_back(std::move(ch));
    }
  std::vector<Generator> gens;
  for (const auto& ch : all) {
    Generator g{chain_id(*c, ch), ch.length(), {}};
    for (int i = 0; i <= ch.length() && ch.length() > 0; ++i) {
      auto [red, surj] = normalize_chain(*c, chain_face(*c, ch, i, Orientation::Forward));
      g.faces.push_back(Simplex{surj, index.at(red)});
    }
    gens.push_back(std::move(g));
  }
  result.set = SimplicialSetFin(std::move(gens));
  return result;
}

}  // namespace uht
