#include "uht/simpset.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace uht {

// ---------------------------------------------------------------------------
// Monotone maps

OpMap identity_op(int n) {
  OpMap m(n + 1);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

OpMap coface_op(int n, int i) {
  OpMap m;
  m.reserve(n);
  for (int t = 0; t <= n; ++t)
    if (t != i) m.push_back(t);
  return m;
}

OpMap codegeneracy_op(int n, int j) {
  OpMap m;
  m.reserve(n + 2);
  for (int t = 0; t <= n + 1; ++t) m.push_back(t <= j ? t : t - 1);
  return m;
}

OpMap compose_ops(const OpMap& a, const OpMap& b) {
  OpMap c(b.size());
  for (std::size_t t = 0; t < b.size(); ++t) c[t] = a[b[t]];
  return c;
}

bool is_surjective(const OpMap& theta, int n) {
  if (theta.empty()) return n < 0;
  if (theta.front() != 0 || theta.back() != n) return false;
  for (std::size_t t = 1; t < theta.size(); ++t) {
    int step = theta[t] - theta[t - 1];
    if (step != 0 && step != 1) return false;
  }
  return true;
}

bool is_injective(const OpMap& theta) {
  for (std::size_t t = 1; t < theta.size(); ++t)
    if (theta[t] <= theta[t - 1]) return false;
  return true;
}

std::pair<OpMap, OpMap> epi_mono(const OpMap& theta) {
  OpMap epi(theta.size()), mono;
  for (std::size_t t = 0; t < theta.size(); ++t) {
    if (mono.empty() || mono.back() != theta[t]) mono.push_back(theta[t]);
    epi[t] = static_cast<int>(mono.size()) - 1;
  }
  return {epi, mono};
}

OpMap surjection_from_word(const std::vector<int>& word, int target_dim) {
  int m = target_dim + static_cast<int>(word.size());
  std::set<int> repeats(word.begin(), word.end());
  OpMap s(m + 1);
  s[0] = 0;
  for (int j = 0; j < m; ++j) s[j + 1] = s[j] + (repeats.count(j) ? 0 : 1);
  return s;
}

std::vector<int> word_of(const OpMap& surjection) {
  std::vector<int> w;
  for (int j = static_cast<int>(surjection.size()) - 2; j >= 0; --j)
    if (surjection[j] == surjection[j + 1]) w.push_back(j);
  return w;
}

std::string word_string(const OpMap& surjection) {
  std::string out;
  for (int j : word_of(surjection)) out += "s" + std::to_string(j);
  return out;
}

namespace {

std::vector<int> repeat_positions(const OpMap& s) {
  std::vector<int> r;
  for (std::size_t j = 0; j + 1 < s.size(); ++j)
    if (s[j] == s[j + 1]) r.push_back(static_cast<int>(j));
  return r;
}

void combinations(int n, int k, int start, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<OpMap> surjections(int m, int n) {
  std::vector<OpMap> out;
  if (n > m || n < 0) return out;
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  combinations(m, m - n, 0, cur, subsets);
  for (const auto& rep : subsets) {
    std::vector<int> word(rep.rbegin(), rep.rend());
    out.push_back(surjection_from_word(word, n));
  }
  return out;
}

std::vector<OpMap> monotone_maps(int m, int n) {
  std::vector<OpMap> out;
  OpMap cur;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(cur.size()) == m + 1) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

bool Simplex::nondegenerate() const {
  for (std::size_t t = 0; t < map.size(); ++t)
    if (map[t] != static_cast<int>(t)) return false;
  return true;
}

std::size_t SimplexHash::operator()(const Simplex& s) const {
  std::size_t h = std::hash<int>()(s.gen) * 1000003u;
  for (int v : s.map) h = h * 31u + static_cast<std::size_t>(v);
  return h;
}

// ---------------------------------------------------------------------------
// SimplicialSetFin

SimplicialSetFin::SimplicialSetFin(std::vector<Generator> gens) : gens_(std::move(gens)) {
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (!index_.emplace(gens_[g].id, static_cast<int>(g)).second)
      throw InvalidInput("duplicate simplex id '" + gens_[g].id + "'");
    for (const auto& f : gens_[g].faces)
      if (f.gen < 0 || f.gen >= static_cast<int>(gens_.size()))
        throw InvalidInput("face of '" + gens_[g].id + "' refers to an unknown simplex");
  }
}

std::optional<int> SimplicialSetFin::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int SimplicialSetFin::dim() const {
  int d = -1;
  for (const auto& g : gens_) d = std::max(d, g.dim);
  return d;
}

std::vector<int> SimplicialSetFin::generators_of_dim(int n) const {
  std::vector<int> out;
  for (int g = 0; g < num_generators(); ++g)
    if (gens_[g].dim == n) out.push_back(g);
  return out;
}

Simplex SimplicialSetFin::apply(const OpMap& theta, const Simplex& s) const {
  OpMap c = compose_ops(s.map, theta);
  int g = s.gen;
  for (;;) {
    const Generator& gen = gens_[g];
    std::vector<char> hit(gen.dim + 1, 0);
    for (int v : c) hit[v] = 1;
    int j = 0;
    while (j <= gen.dim && hit[j]) ++j;
    if (j > gen.dim) return Simplex{std::move(c), g};
    for (int& v : c)
      if (v > j) --v;
    const Simplex& f = gen.faces[j];
    c = compose_ops(f.map, c);
    g = f.gen;
  }
}

Simplex SimplicialSetFin::face(int i, const Simplex& s) const {
  return apply(coface_op(s.dim(), i), s);
}

Simplex SimplicialSetFin::degeneracy(int j, const Simplex& s) const {
  return Simplex{compose_ops(s.map, codegeneracy_op(s.dim(), j)), s.gen};
}

std::vector<Simplex> SimplicialSetFin::level(int m) const {
  std::vector<Simplex> out;
  std::map<int, std::vector<OpMap>> surj;
  for (int g = 0; g < num_generators(); ++g) {
    int n = gens_[g].dim;
    if (n > m) continue;
    auto it = surj.find(n);
    if (it == surj.end()) it = surj.emplace(n, surjections(m, n)).first;
    for (const auto& s : it->second) out.push_back(Simplex{s, g});
  }
  return out;
}

std::size_t SimplicialSetFin::level_size(int m) const {
  auto binom = [](int n, int k) {
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
  };
  std::size_t total = 0;
  for (const auto& g : gens_)
    if (g.dim <= m) total += binom(m, m - g.dim);
  return total;
}

std::vector<std::string> SimplicialSetFin::check() const {
  std::vector<std::string> problems;
  for (const auto& g : gens_) {
    std::size_t expected = g.dim == 0 ? 0 : static_cast<std::size_t>(g.dim) + 1;
    if (g.dim < 0) problems.push_back("simplex '" + g.id + "' has negative dimension");
    if (g.faces.size() != expected) {
      problems.push_back("simplex '" + g.id + "' has " + std::to_string(g.faces.size()) +
                         " faces, expected " + std::to_string(expected));
      continue;
    }
    for (std::size_t i = 0; i < g.faces.size(); ++i) {
      const Simplex& f = g.faces[i];
      if (f.dim() != g.dim - 1 || !is_surjective(f.map, gens_[f.gen].dim))
        problems.push_back("face d" + std::to_string(i) + " of '" + g.id +
                           "' is not in normal form of dimension " + std::to_string(g.dim - 1));
    }
  }
  if (!problems.empty()) return problems;
  for (int x = 0; x < num_generators(); ++x) {
    const Generator& g = gens_[x];
    for (int j = 1; j <= g.dim; ++j)
      for (int i = 0; i < j; ++i) {
        if (g.dim < 2) continue;
        Simplex a = face(i, g.faces[j]);
        Simplex b = face(j - 1, g.faces[i]);
        if (a != b)
          problems.push_back("identity d" + std::to_string(i) + "d" + std::to_string(j) + " = d" +
                             std::to_string(j - 1) + "d" + std::to_string(i) + " fails on '" + g.id +
                             "': " + name(a) + " vs " + name(b));
      }
  }
  return problems;
}

std::vector<std::string> SimplicialSetFin::check_identities(std::optional<int> max_level) const {
  std::vector<std::string> problems = check();
  if (!problems.empty()) return problems;
  int top = max_level.value_or(dim() + 2);
  auto fail = [&](const std::string& what, const Simplex& s) {
    problems.push_back(what + " fails on " + name(s));
  };
  for (int m = 0; m <= top; ++m) {
    for (const Simplex& s : level(m)) {
      for (int j = 1; j <= m && m >= 2; ++j)
        for (int i = 0; i < j; ++i)
          if (face(i, face(j, s)) != face(j - 1, face(i, s))) fail("d_i d_j = d_{j-1} d_i", s);
      for (int j = 0; j <= m; ++j) {
        Simplex sj = degeneracy(j, s);
        for (int i = 0; i <= m + 1; ++i) {
          Simplex lhs = face(i, sj);
          if (i == j || i == j + 1) {
            if (lhs != s) fail("d_j s_j = id", s);
          } else if (i < j) {
            if (lhs != degeneracy(j - 1, face(i, s))) fail("d_i s_j = s_{j-1} d_i", s);
          } else {
            if (lhs != degeneracy(j, face(i - 1, s))) fail("d_i s_j = s_j d_{i-1}", s);
          }
        }
        for (int i = 0; i <= j; ++i)
          if (degeneracy(i, sj) != degeneracy(j + 1, degeneracy(i, s))) fail("s_i s_j = s_{j+1} s_i", s);
      }
    }
  }
  return problems;
}

std::string SimplicialSetFin::name(const Simplex& s) const {
  if (s.gen < 0 || s.gen >= num_generators()) return "<invalid>";
  if (s.nondegenerate()) return gens_[s.gen].id;
  return word_string(s.map) + "(" + gens_[s.gen].id + ")";
}

// ---------------------------------------------------------------------------
// Maps

Simplex map_simplex(const SimplicialSetFin& target, const SimplicialMap& f, const Simplex& s) {
  return target.apply(s.map, f.images[s.gen]);
}

std::vector<std::string> check_map(const SimplicialSetFin& source, const SimplicialSetFin& target,
                                   const SimplicialMap& f) {
  std::vector<std::string> problems;
  if (static_cast<int>(f.images.size()) != source.num_generators()) {
    problems.push_back("map has " + std::to_string(f.images.size()) + " images for " +
                       std::to_string(source.num_generators()) + " generators");
    return problems;
  }
  for (int x = 0; x < source.num_generators(); ++x) {
    const Simplex& img = f.images[x];
    const Generator& g = source.generator(x);
    if (img.gen < 0 || img.gen >= target.num_generators() || img.dim() != g.dim ||
        !is_surjective(img.map, target.generator(img.gen).dim)) {
      problems.push_back("image of '" + g.id + "' is not a simplex of dimension " + std::to_string(g.dim));
      continue;
    }
  }
  if (!problems.empty()) return problems;
  for (int x = 0; x < source.num_generators(); ++x) {
    const Generator& g = source.generator(x);
    for (int i = 0; i < static_cast<int>(g.faces.size()); ++i) {
      Simplex lhs = map_simplex(target, f, g.faces[i]);
      Simplex rhs = target.face(i, f.images[x]);
      if (lhs != rhs)
        problems.push_back("map does not commute with d" + std::to_string(i) + " on '" + g.id + "'");
    }
  }
  return problems;
}

SimplicialMap identity_map(const SimplicialSetFin& k) {
  SimplicialMap f;
  for (int g = 0; g < k.num_generators(); ++g) f.images.push_back(k.simplex(g));
  return f;
}

SimplicialMap compose(const SimplicialSetFin& target, const SimplicialMap& g, const SimplicialMap& f) {
  SimplicialMap h;
  h.images.reserve(f.images.size());
  for (const auto& s : f.images) h.images.push_back(map_simplex(target, g, s));
  return h;
}

bool is_monomorphism(const SimplicialMap& f) {
  std::set<int> seen;
  for (const auto& s : f.images)
    if (!s.nondegenerate() || !seen.insert(s.gen).second) return false;
  return true;
}

bool is_isomorphism(const SimplicialSetFin& target, const SimplicialMap& f) {
  return is_monomorphism(f) && static_cast<int>(f.images.size()) == target.num_generators();
}

// ---------------------------------------------------------------------------
// Standard constructions

namespace {

struct SimplexFaces {
  std::vector<std::vector<int>> subsets;
  std::map<std::vector<int>, int> index;
};

SimplexFaces simplex_subsets(int n, bool include_top) {
  SimplexFaces out;
  for (int k = 0; k <= n; ++k) {
    if (k == n && !include_top) break;
    std::vector<std::vector<int>> subs;
    std::vector<int> cur;
    combinations(n + 1, k + 1, 0, cur, subs);
    for (auto& s : subs) {
      out.index.emplace(s, static_cast<int>(out.subsets.size()));
      out.subsets.push_back(std::move(s));
    }
  }
  return out;
}

std::string vertex_list_id(const std::vector<int>& vs, int n) {
  std::string id;
  for (std::size_t t = 0; t < vs.size(); ++t) {
    if (t > 0 && n >= 10) id += ",";
    id += std::to_string(vs[t]);
  }
  return id;
}

SimplicialSetFin simplex_like(int n, bool include_top) {
  SimplexFaces sf = simplex_subsets(n, include_top);
  std::vector<Generator> gens;
  for (const auto& s : sf.subsets) {
    Generator g{vertex_list_id(s, n), static_cast<int>(s.size()) - 1, {}};
    if (g.dim > 0)
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f = s;
        f.erase(f.begin() + static_cast<long>(i));
        g.faces.push_back(Simplex{identity_op(g.dim - 1), sf.index.at(f)});
      }
    gens.push_back(std::move(g));
  }
  return SimplicialSetFin(std::move(gens));
}

}  // namespace

SimplicialSetFin standard_simplex(int n) { return simplex_like(n, true); }

SimplicialSetFin boundary(int n) {
  if (n < 1) throw InvalidInput("boundary of a simplex needs n >= 1");
  return simplex_like(n, false);
}

SimplicialMap delta_map(const OpMap& theta, int m) {
  int n = static_cast<int>(theta.size()) - 1;
  SimplexFaces src = simplex_subsets(n, true);
  SimplexFaces tgt = simplex_subsets(m, true);
  SimplicialMap f;
  for (const auto& s : src.subsets) {
    std::vector<int> image;
    for (int v : s) image.push_back(theta[v]);
    auto [epi, mono] = epi_mono(image);
    f.images.push_back(Simplex{epi, tgt.index.at(mono)});
  }
  return f;
}

SimplicialSetFin discrete(const std::vector<std::string>& names) {
  std::vector<Generator> gens;
  for (const auto& n : names) gens.push_back(Generator{n, 0, {}});
  return SimplicialSetFin(std::move(gens));
}

SimplicialSetFin skeleton(const SimplicialSetFin& k, int n) {
  std::vector<int> remap(k.num_generators(), -1);
  std::vector<Generator> gens;
  for (int g = 0; g < k.num_generators(); ++g)
    if (k.generator(g).dim <= n) {
      remap[g] = static_cast<int>(gens.size());
      gens.push_back(k.generator(g));
    }
  for (auto& g : gens)
    for (auto& f : g.faces) f.gen = remap[f.gen];
  return SimplicialSetFin(std::move(gens));
}

SimplicialMap skeleton_inclusion(const SimplicialSetFin& k, int n) {
  SimplicialMap f;
  for (int g = 0; g < k.num_generators(); ++g)
    if (k.generator(g).dim <= n) f.images.push_back(k.simplex(g));
  return f;
}

SimplicialMap Coproduct::inclusion(std::size_t summand, const SimplicialSetFin& piece) const {
  SimplicialMap f;
  for (int g = 0; g < piece.num_generators(); ++g)
    f.images.push_back(Simplex{identity_op(piece.generator(g).dim), offsets[summand] + g});
  return f;
}

Coproduct coproduct(const std::vector<const SimplicialSetFin*>& pieces,
                    const std::vector<std::string>& labels) {
  Coproduct out;
  std::vector<Generator> gens;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    int off = static_cast<int>(gens.size());
    out.offsets.push_back(off);
    for (const auto& g : pieces[p]->generators()) {
      Generator h = g;
      h.id = labels[p] + ":" + g.id;
      for (auto& f : h.faces) f.gen += off;
      gens.push_back(std::move(h));
    }
  }
  out.set = SimplicialSetFin(std::move(gens));
  return out;
}

// ---------------------------------------------------------------------------
// Bisimplicial sets and diagonals

BisimplicialSetFin::BisimplicialSetFin(std::vector<BiGenerator> gens) : gens_(std::move(gens)) {}

BiSimplex BisimplicialSetFin::simplex(int g) const {
  return BiSimplex{identity_op(gens_[g].p), identity_op(gens_[g].q), g};
}

namespace {

int first_missing(const OpMap& c, int n) {
  std::vector<char> hit(n + 1, 0);
  for (int v : c) hit[v] = 1;
  for (int j = 0; j <= n; ++j)
    if (!hit[j]) return j;
  return -1;
}

void drop_value(OpMap& c, int j) {
  for (int& v : c)
    if (v > j) --v;
}

}  // namespace

BiSimplex BisimplicialSetFin::apply(const OpMap& theta_h, const OpMap& theta_v, const BiSimplex& s) const {
  OpMap ch = compose_ops(s.h, theta_h);
  OpMap cv = compose_ops(s.v, theta_v);
  int g = s.gen;
  for (;;) {
    const BiGenerator& gen = gens_[g];
    int j = first_missing(ch, gen.p);
    if (j >= 0) {
      drop_value(ch, j);
      const BiSimplex& f = gen.hfaces[j];
      ch = compose_ops(f.h, ch);
      cv = compose_ops(f.v, cv);
      g = f.gen;
      continue;
    }
    j = first_missing(cv, gen.q);
    if (j >= 0) {
      drop_value(cv, j);
      const BiSimplex& f = gen.vfaces[j];
      ch = compose_ops(f.h, ch);
      cv = compose_ops(f.v, cv);
      g = f.gen;
      continue;
    }
    return BiSimplex{std::move(ch), std::move(cv), g};
  }
}

std::vector<std::string> BisimplicialSetFin::check() const {
  std::vector<std::string> problems;
  for (const auto& g : gens_) {
    std::size_t eh = g.p == 0 ? 0 : static_cast<std::size_t>(g.p) + 1;
    std::size_t ev = g.q == 0 ? 0 : static_cast<std::size_t>(g.q) + 1;
    if (g.hfaces.size() != eh || g.vfaces.size() != ev) {
      problems.push_back("bisimplex '" + g.id + "' has the wrong number of faces");
      continue;
    }
    for (const auto& f : g.hfaces)
      if (f.gen < 0 || static_cast<int>(f.h.size()) != g.p || static_cast<int>(f.v.size()) != g.q + 1 ||
          !is_surjective(f.h, gens_[f.gen].p) || !is_surjective(f.v, gens_[f.gen].q))
        problems.push_back("horizontal face of '" + g.id + "' is malformed");
    for (const auto& f : g.vfaces)
      if (f.gen < 0 || static_cast<int>(f.h.size()) != g.p + 1 || static_cast<int>(f.v.size()) != g.q ||
          !is_surjective(f.h, gens_[f.gen].p) || !is_surjective(f.v, gens_[f.gen].q))
        problems.push_back("vertical face of '" + g.id + "' is malformed");
  }
  if (!problems.empty()) return problems;
  for (int x = 0; x < num_generators(); ++x) {
    const BiGenerator& g = gens_[x];
    BiSimplex s = simplex(x);
    auto hface = [&](int i, const BiSimplex& b) {
      int p = static_cast<int>(b.h.size()) - 1, q = static_cast<int>(b.v.size()) - 1;
      return apply(coface_op(p, i), identity_op(q), b);
    };
    auto vface = [&](int i, const BiSimplex& b) {
      int p = static_cast<int>(b.h.size()) - 1, q = static_cast<int>(b.v.size()) - 1;
      return apply(identity_op(p), coface_op(q, i), b);
    };
    for (int j = 1; j <= g.p && g.p >= 2; ++j)
      for (int i = 0; i < j; ++i)
        if (hface(i, hface(j, s)) != hface(j - 1, hface(i, s)))
          problems.push_back("horizontal face identity fails on '" + g.id + "'");
    for (int j = 1; j <= g.q && g.q >= 2; ++j)
      for (int i = 0; i < j; ++i)
        if (vface(i, vface(j, s)) != vface(j - 1, vface(i, s)))
          problems.push_back("vertical face identity fails on '" + g.id + "'");
    for (int i = 0; i <= g.p && g.p >= 1; ++i)
      for (int j = 0; j <= g.q && g.q >= 1; ++j)
        if (hface(i, vface(j, s)) != vface(j, hface(i, s)))
          problems.push_back("horizontal and vertical faces do not commute on '" + g.id + "'");
  }
  return problems;
}

Diagonal::Diagonal(const BisimplicialSetFin& b, std::optional<int> max_dim) {
  int top = 0;
  for (int g = 0; g < b.num_generators(); ++g)
    top = std::max(top, b.generator(g).p + b.generator(g).q);
  if (max_dim) top = std::min(top, *max_dim);
  std::vector<Generator> gens;
  for (int n = 0; n <= top; ++n) {
    for (int g = 0; g < b.num_generators(); ++g) {
      const BiGenerator& bg = b.generator(g);
      if (n < std::max(bg.p, bg.q) || n > bg.p + bg.q) continue;
      auto hs = surjections(n, bg.p);
      auto vs = surjections(n, bg.q);
      for (const auto& sh : hs) {
        auto rh = repeat_positions(sh);
        for (const auto& sv : vs) {
          auto rv = repeat_positions(sv);
          bool disjoint = true;
          for (int r : rh)
            if (std::binary_search(rv.begin(), rv.end(), r)) disjoint = false;
          if (!disjoint) continue;
          BiSimplex src{sh, sv, g};
          std::string id = bg.id;
          if (n != bg.p || n != bg.q) id += "[" + word_string(sh) + ";" + word_string(sv) + "]";
          index_.emplace(src, static_cast<int>(gens.size()));
          sources_.push_back(src);
          gens.push_back(Generator{id, n, {}});
        }
      }
    }
  }
  for (std::size_t x = 0; x < gens.size(); ++x) {
    int n = gens[x].dim;
    if (n == 0) continue;
    for (int i = 0; i <= n; ++i) {
      OpMap d = coface_op(n, i);
      gens[x].faces.push_back(normalize(b.apply(d, d, sources_[x])));
    }
  }
  set_ = SimplicialSetFin(std::move(gens));
}

Simplex Diagonal::normalize(const BiSimplex& s) const {
  auto rh = repeat_positions(s.h);
  auto rv = repeat_positions(s.v);
  std::vector<int> common;
  std::set_intersection(rh.begin(), rh.end(), rv.begin(), rv.end(), std::back_inserter(common));
  int k = static_cast<int>(s.h.size()) - 1;
  OpMap pi(k + 1);
  pi[0] = 0;
  for (int t = 0; t < k; ++t)
    pi[t + 1] = pi[t] + (std::binary_search(common.begin(), common.end(), t) ? 0 : 1);
  int r = pi[k];
  OpMap h0(r + 1), v0(r + 1);
  for (int t = 0; t <= k; ++t) {
    h0[pi[t]] = s.h[t];
    v0[pi[t]] = s.v[t];
  }
  auto it = index_.find(BiSimplex{h0, v0, s.gen});
  if (it == index_.end()) throw Error("bisimplex outside the computed diagonal (truncation too small)");
  return Simplex{pi, it->second};
}

SimplicialMap diagonal_map(const Diagonal& source, const Diagonal& target,
                           const BisimplicialSetFin& target_bi,
                           const std::function<BiSimplex(int)>& on_generators) {
  SimplicialMap f;
  for (int x = 0; x < source.set().num_generators(); ++x) {
    const BiSimplex& src = source.source(x);
    BiSimplex img = on_generators(src.gen);
    f.images.push_back(target.normalize(target_bi.apply(src.h, src.v, img)));
  }
  return f;
}

BisimplicialSetFin external_product(const SimplicialSetFin& k, const SimplicialSetFin& l) {
  std::vector<BiGenerator> gens;
  int nl = l.num_generators();
  for (int x = 0; x < k.num_generators(); ++x)
    for (int y = 0; y < nl; ++y) {
      const Generator& gx = k.generator(x);
      const Generator& gy = l.generator(y);
      BiGenerator b{"(" + gx.id + "," + gy.id + ")", gx.dim, gy.dim, {}, {}};
      for (const auto& f : gx.faces) b.hfaces.push_back(BiSimplex{f.map, identity_op(gy.dim), f.gen * nl + y});
      for (const auto& f : gy.faces) b.vfaces.push_back(BiSimplex{identity_op(gx.dim), f.map, x * nl + f.gen});
      gens.push_back(std::move(b));
    }
  return BisimplicialSetFin(std::move(gens));
}

Simplex Product::pair(const Simplex& a, const Simplex& b) const {
  int nl = bi.num_generators() == 0 ? 1 : right_count;
  return diagonal->normalize(BiSimplex{a.map, b.map, a.gen * nl + b.gen});
}

Product product(const SimplicialSetFin& k, const SimplicialSetFin& l) {
  Product p;
  p.right_count = l.num_generators();
  p.bi = external_product(k, l);
  p.diagonal = std::make_shared<const Diagonal>(p.bi);
  p.set = p.diagonal->set();
  int nl = l.num_generators();
  for (int x = 0; x < p.set.num_generators(); ++x) {
    const BiSimplex& s = p.diagonal->source(x);
    p.first.images.push_back(Simplex{s.h, s.gen / nl});
    p.second.images.push_back(Simplex{s.v, s.gen % nl});
  }
  return p;
}

SimplicialMap product_map(const Product& source, const Product& target,
                          const SimplicialSetFin& k2, const SimplicialSetFin& l2,
                          const SimplicialMap& f, const SimplicialMap& g) {
  SimplicialMap h;
  int nl = source.right_count;
  for (int x = 0; x < source.set.num_generators(); ++x) {
    const BiSimplex& s = source.diagonal->source(x);
    Simplex a = k2.apply(s.h, f.images[s.gen / nl]);
    Simplex b = l2.apply(s.v, g.images[s.gen % nl]);
    h.images.push_back(target.pair(a, b));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Hom enumeration and isomorphism search

namespace {

struct HomSearch {
  const SimplicialSetFin& k;
  const SimplicialSetFin& l;
  long long bound;
  bool iso_only;
  bool stop_at_first;
  std::vector<int> order;
  std::vector<std::vector<Simplex>> candidates;  // per dimension
  SimplicialMap current;
  std::vector<char> used;
  long long tried = 0;
  std::vector<SimplicialMap> found;

  HomSearch(const SimplicialSetFin& k_, const SimplicialSetFin& l_, long long bound_, bool iso)
      : k(k_), l(l_), bound(bound_), iso_only(iso), stop_at_first(iso) {
    order.resize(k.num_generators());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return k.generator(a).dim < k.generator(b).dim; });
    int top = k.dim();
    candidates.resize(std::max(top + 1, 0));
    for (int n = 0; n <= top; ++n) {
      if (iso_only) {
        for (int g : l.generators_of_dim(n)) candidates[n].push_back(l.simplex(g));
      } else {
        candidates[n] = l.level(n);
      }
    }
    current.images.resize(k.num_generators());
    used.assign(l.num_generators(), 0);
  }

  bool fits(int x, const Simplex& c) const {
    const Generator& g = k.generator(x);
    for (int i = 0; i < static_cast<int>(g.faces.size()); ++i)
      if (map_simplex(l, current, g.faces[i]) != l.face(i, c)) return false;
    return true;
  }

  bool run(std::size_t pos) {
    if (pos == order.size()) {
      found.push_back(current);
      return stop_at_first;
    }
    int x = order[pos];
    for (const Simplex& c : candidates[k.generator(x).dim]) {
      if (++tried > bound)
        throw SizeBoundExceeded("hom enumeration exceeded " + std::to_string(bound) +
                                " candidate assignments (UHT_MAX_HOM_ENUM)");
      if (iso_only && used[c.gen]) continue;
      if (!fits(x, c)) continue;
      current.images[x] = c;
      if (iso_only) used[c.gen] = 1;
      bool done = run(pos + 1);
      if (iso_only) used[c.gen] = 0;
      if (done) return true;
    }
    return false;
  }
};

}  // namespace

std::vector<SimplicialMap> hom_enumerate(const SimplicialSetFin& k, const SimplicialSetFin& l, long long bound) {
  HomSearch search(k, l, bound, false);
  search.run(0);
  return std::move(search.found);
}

std::optional<SimplicialMap> find_isomorphism(const SimplicialSetFin& k, const SimplicialSetFin& l) {
  if (k.num_generators() != l.num_generators()) return std::nullopt;
  int top = std::max(k.dim(), l.dim());
  for (int n = 0; n <= top; ++n)
    if (k.generators_of_dim(n).size() != l.generators_of_dim(n).size()) return std::nullopt;
  HomSearch search(k, l, std::numeric_limits<long long>::max(), true);
  search.run(0);
  if (search.found.empty()) return std::nullopt;
  return search.found.front();
}

// ---------------------------------------------------------------------------
// Quotients

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Quotient coequalize(const SimplicialSetFin& b, const std::vector<std::pair<Simplex, Simplex>>& pairs) {
  int top = b.dim();
  Quotient q;
  if (top < 0) {
    q.set = SimplicialSetFin(std::vector<Generator>{});
    return q;
  }
  std::vector<std::vector<Simplex>> levels(top + 1);
  std::vector<std::unordered_map<Simplex, int, SimplexHash>> index(top + 1);
  std::vector<UnionFind> uf;
  for (int m = 0; m <= top; ++m) {
    levels[m] = b.level(m);
    for (std::size_t i = 0; i < levels[m].size(); ++i) index[m].emplace(levels[m][i], static_cast<int>(i));
    uf.emplace_back(levels[m].size());
  }
  std::map<std::pair<int, int>, std::vector<OpMap>> ops;
  for (const auto& [a, c] : pairs) {
    if (a.dim() != c.dim()) throw Error("coequalize: identified simplices differ in dimension");
    int k = a.dim();
    for (int m = 0; m <= top; ++m) {
      auto it = ops.find({m, k});
      if (it == ops.end()) it = ops.emplace(std::make_pair(m, k), monotone_maps(m, k)).first;
      for (const auto& theta : it->second) {
        int x = index[m].at(b.apply(theta, a));
        int y = index[m].at(b.apply(theta, c));
        uf[m].unite(x, y);
      }
    }
  }
  // Classes, their degeneracy status and least nondegenerate member.
  std::vector<std::vector<int>> cls(top + 1);
  std::vector<std::map<int, int>> class_id(top + 1);   // root -> class index
  std::vector<std::vector<char>> degenerate(top + 1);
  std::vector<std::vector<int>> least(top + 1);        // least member (by id) per class
  for (int m = 0; m <= top; ++m) {
    cls[m].resize(levels[m].size());
    for (std::size_t i = 0; i < levels[m].size(); ++i) {
      int r = uf[m].find(static_cast<int>(i));
      auto [it, fresh] = class_id[m].emplace(r, static_cast<int>(degenerate[m].size()));
      if (fresh) {
        degenerate[m].push_back(0);
        least[m].push_back(-1);
      }
      int c = it->second;
      cls[m][i] = c;
      const Simplex& s = levels[m][i];
      if (!s.nondegenerate()) {
        degenerate[m][c] = 1;
      } else if (least[m][c] < 0 || b.generator(s.gen).id < b.generator(levels[m][least[m][c]].gen).id) {
        least[m][c] = static_cast<int>(i);
      }
    }
  }
  // Generators: nondegenerate classes, ordered by level then least member id.
  std::vector<std::vector<int>> gen_of(top + 1);
  std::vector<Generator> gens;
  std::vector<std::pair<int, int>> gen_class;
  for (int m = 0; m <= top; ++m) {
    gen_of[m].assign(degenerate[m].size(), -1);
    std::vector<int> nd;
    for (std::size_t c = 0; c < degenerate[m].size(); ++c)
      if (!degenerate[m][c]) nd.push_back(static_cast<int>(c));
    std::sort(nd.begin(), nd.end(), [&](int a, int c) {
      return b.generator(levels[m][least[m][a]].gen).id < b.generator(levels[m][least[m][c]].gen).id;
    });
    for (int c : nd) {
      gen_of[m][c] = static_cast<int>(gens.size());
      gens.push_back(Generator{b.generator(levels[m][least[m][c]].gen).id, m, {}});
      gen_class.emplace_back(m, c);
      q.representatives.push_back(levels[m][least[m][c]]);
    }
  }
  std::vector<std::map<int, Simplex>> memo(top + 1);
  std::function<Simplex(int, int)> normal = [&](int m, int c) -> Simplex {
    if (!degenerate[m][c]) return Simplex{identity_op(m), gen_of[m][c]};
    auto it = memo[m].find(c);
    if (it != memo[m].end()) return it->second;
    // any degenerate member s = s_j d_j s
    const Simplex* member = nullptr;
    for (std::size_t i = 0; i < levels[m].size(); ++i)
      if (cls[m][i] == c && !levels[m][i].nondegenerate()) {
        member = &levels[m][i];
        break;
      }
    int j = word_of(member->map).front();
    Simplex below = b.face(j, *member);
    Simplex nf = normal(m - 1, cls[m - 1][index[m - 1].at(below)]);
    Simplex out{compose_ops(nf.map, codegeneracy_op(m - 1, j)), nf.gen};
    memo[m].emplace(c, out);
    return out;
  };
  auto class_of = [&](const Simplex& s) { return cls[s.dim()][index[s.dim()].at(s)]; };
  for (std::size_t x = 0; x < gens.size(); ++x) {
    auto [m, c] = gen_class[x];
    if (m == 0) continue;
    const Simplex& rep = q.representatives[x];
    for (int i = 0; i <= m; ++i) {
      Simplex f = b.face(i, rep);
      gens[x].faces.push_back(normal(m - 1, class_of(f)));
    }
  }
  for (int g = 0; g < b.num_generators(); ++g) {
    Simplex s = b.simplex(g);
    q.projection.images.push_back(normal(s.dim(), class_of(s)));
  }
  q.set = SimplicialSetFin(std::move(gens));
  return q;
}

}  // namespace uht
