#include "uht/homology.hpp"
#include "uht/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace uht {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](const Int& x) { return x == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw Error("matrix dimensions do not match");
  Matrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.cols; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

Int determinant(const Matrix& m) {
  if (m.rows != m.cols) throw Error("determinant of a non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  Matrix a = m;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Dense Smith reduction in place; U and V are updated when given.
std::vector<Int> reduce_dense(Matrix& a, Matrix* u, Matrix* v) {
  int r = a.rows, c = a.cols;
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c; ++k) std::swap(a.at(i, k), a.at(j, k));
    if (u)
      for (int k = 0; k < r; ++k) std::swap(u->at(i, k), u->at(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r; ++k) std::swap(a.at(k, i), a.at(k, j));
    if (v)
      for (int k = 0; k < c; ++k) std::swap(v->at(k, i), v->at(k, j));
  };
  auto add_row = [&](int dst, int src, const Int& q) {  // row dst += q * row src
    for (int k = 0; k < c; ++k)
      if (a.at(src, k) != 0) a.at(dst, k) += q * a.at(src, k);
    if (u)
      for (int k = 0; k < r; ++k)
        if (u->at(src, k) != 0) u->at(dst, k) += q * u->at(src, k);
  };
  auto add_col = [&](int dst, int src, const Int& q) {  // col dst += q * col src
    for (int k = 0; k < r; ++k)
      if (a.at(k, src) != 0) a.at(k, dst) += q * a.at(k, src);
    if (v)
      for (int k = 0; k < c; ++k)
        if (v->at(k, src) != 0) v->at(k, dst) += q * v->at(k, src);
  };
  std::vector<Int> diag;
  int t = 0;
  while (t < std::min(r, c)) {
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (a.at(i, j) != 0 && (pi < 0 || abs_int(a.at(i, j)) < best)) {
          best = abs_int(a.at(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < r; ++i)
        if (a.at(i, t) != 0) {
          Int q = a.at(i, t) / a.at(t, t);
          add_row(i, t, -q);
          if (a.at(i, t) != 0) clean = false;
        }
      for (int j = t + 1; j < c; ++j)
        if (a.at(t, j) != 0) {
          Int q = a.at(t, j) / a.at(t, t);
          add_col(j, t, -q);
          if (a.at(t, j) != 0) clean = false;
        }
      if (!clean) {
        int bi = t, bj = t;
        Int b = abs_int(a.at(t, t));
        for (int i = t + 1; i < r; ++i)
          if (a.at(i, t) != 0 && abs_int(a.at(i, t)) < b) {
            b = abs_int(a.at(i, t));
            bi = i;
            bj = t;
          }
        for (int j = t + 1; j < c; ++j)
          if (a.at(t, j) != 0 && abs_int(a.at(t, j)) < b) {
            b = abs_int(a.at(t, j));
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < r && bad < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (a.at(i, j) % a.at(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(t, bad, 1);
    }
    if (a.at(t, t) < 0) {
      for (int k = 0; k < c; ++k) a.at(t, k) = -a.at(t, k);
      if (u)
        for (int k = 0; k < r; ++k) u->at(t, k) = -u->at(t, k);
    }
    diag.push_back(a.at(t, t));
    ++t;
  }
  return diag;
}

}  // namespace

SmithResult smith_normal_form(const Matrix& m) {
  SmithResult res;
  res.d = m;
  res.u = Matrix::identity(m.rows);
  res.v = Matrix::identity(m.cols);
  res.diagonal = reduce_dense(res.d, &res.u, &res.v);
  if (!(res.u * m * res.v == res.d)) throw Error("Smith normal form postcondition U*M*V = D failed");
  return res;
}

std::vector<Int> invariant_factors(int rows, int cols,
                                   const std::vector<std::vector<std::pair<int, long long>>>& columns) {
  // Sparse rows keyed by column, plus column -> rows incidence.
  std::vector<std::map<int, Int>> row(rows);
  std::vector<std::set<int>> col(cols);
  for (int j = 0; j < cols; ++j)
    for (const auto& [i, x] : columns[j])
      if (x != 0) {
        row[i][j] += x;
        col[j].insert(i);
      }
  for (int i = 0; i < rows; ++i)
    for (auto it = row[i].begin(); it != row[i].end();)
      if (it->second == 0) {
        col[it->first].erase(i);
        it = row[i].erase(it);
      } else {
        ++it;
      }
  std::vector<Int> diag;
  std::vector<char> alive(rows, 1);
  std::set<std::pair<std::size_t, int>> queue;  // (nnz, row)
  for (int i = 0; i < rows; ++i)
    if (!row[i].empty()) queue.insert({row[i].size(), i});
  std::set<int> parked;  // rows with no unit entry when last examined
  auto requeue = [&](int i, std::size_t old) {
    queue.erase({old, i});
    parked.erase(i);
    if (!row[i].empty()) queue.insert({row[i].size(), i});
  };
  while (!queue.empty()) {
    auto [nnz, p] = *queue.begin();
    queue.erase(queue.begin());
    int pc = -1;
    std::size_t best = 0;
    for (const auto& [j, x] : row[p])
      if ((x == 1 || x == -1) && (pc < 0 || col[j].size() < best)) {
        pc = j;
        best = col[j].size();
      }
    if (pc < 0) {
      parked.insert(p);
      continue;
    }
    Int pv = row[p].at(pc);
    std::vector<int> others(col[pc].begin(), col[pc].end());
    for (int i : others) {
      if (i == p) continue;
      std::size_t old = row[i].size();
      Int q = row[i].at(pc) * pv;  // pv = ±1, so q = entry / pv
      for (const auto& [j, x] : row[p]) {
        Int& e = row[i][j];
        if (e == 0) col[j].insert(i);
        e -= q * x;
        if (e == 0) {
          row[i].erase(j);
          col[j].erase(i);
        }
      }
      requeue(i, old);
    }
    for (const auto& [j, x] : row[p]) col[j].erase(p);
    row[p].clear();
    alive[p] = 0;
    diag.push_back(1);
  }
  // Dense reduction of the remainder.
  std::vector<int> rs, cs;
  std::map<int, int> cmap;
  for (int i = 0; i < rows; ++i)
    if (!row[i].empty()) rs.push_back(i);
  for (int i : rs)
    for (const auto& [j, x] : row[i])
      if (!cmap.count(j)) cmap[j] = 0;
  for (auto& [j, idx] : cmap) {
    idx = static_cast<int>(cs.size());
    cs.push_back(j);
  }
  if (!rs.empty()) {
    Matrix rest(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
    for (std::size_t a = 0; a < rs.size(); ++a)
      for (const auto& [j, x] : row[rs[a]]) rest.at(static_cast<int>(a), cmap.at(j)) = x;
    for (auto& d : reduce_dense(rest, nullptr, nullptr)) diag.push_back(d);
  }
  // reduce_dense already orders its own factors; units from elimination come first.
  std::sort(diag.begin(), diag.end());
  return diag;
}

// ---------------------------------------------------------------------------

ChainComplexZ chain_complex(const SimplicialSetFin& k) {
  ChainComplexZ c;
  int top = k.dim();
  c.basis.resize(std::max(top + 1, 0));
  std::vector<int> position(k.num_generators(), -1);
  for (int g = 0; g < k.num_generators(); ++g) {
    int d = k.generator(g).dim;
    position[g] = static_cast<int>(c.basis[d].size());
    c.basis[d].push_back(g);
  }
  c.boundary.resize(c.basis.size());
  for (int d = 1; d <= top; ++d) {
    auto& cols = c.boundary[d];
    cols.resize(c.basis[d].size());
    for (std::size_t t = 0; t < c.basis[d].size(); ++t) {
      const Generator& g = k.generator(c.basis[d][t]);
      std::map<int, long long> entries;
      for (int i = 0; i <= d; ++i) {
        const Simplex& f = g.faces[i];
        if (!f.nondegenerate()) continue;
        entries[position[f.gen]] += (i % 2 == 0) ? 1 : -1;
      }
      for (const auto& [row, x] : entries)
        if (x != 0) cols[t].push_back({row, x});
    }
  }
  return c;
}

Matrix ChainComplexZ::dense_boundary(int k) const {
  Matrix m(rank(k - 1), rank(k));
  if (k <= 0 || k >= static_cast<int>(boundary.size())) return m;
  for (int j = 0; j < rank(k); ++j)
    for (const auto& [i, x] : boundary[k][j]) m.at(i, j) = x;
  return m;
}

bool ChainComplexZ::boundary_squares_to_zero() const {
  for (int k = 2; k < static_cast<int>(boundary.size()); ++k)
    for (const auto& column : boundary[k]) {
      std::map<int, Int> acc;
      for (const auto& [mid, x] : column)
        for (const auto& [low, y] : boundary[k - 1][mid]) acc[low] += Int(x) * y;
      for (const auto& [low, v] : acc)
        if (v != 0) return false;
    }
  return true;
}

DegreeHomology HomologySummary::at(int k) const {
  if (k < 0 || k >= static_cast<int>(degrees.size())) return {};
  return degrees[k];
}

std::string HomologySummary::to_string() const {
  std::vector<std::string> parts;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const auto& d = degrees[k];
    if (d.betti == 0 && d.torsion.empty()) continue;
    std::vector<std::string> terms;
    if (d.betti == 1) terms.push_back("Z");
    if (d.betti > 1) terms.push_back("Z^" + std::to_string(d.betti));
    for (const auto& t : d.torsion) terms.push_back("Z/" + t.str());
    parts.push_back("H" + std::to_string(k) + "=" + join(terms, "+"));
  }
  if (parts.empty()) return "0";
  return join(parts, ", ");
}

bool HomologySummary::agrees_through(const HomologySummary& other, int max_degree) const {
  for (int k = 0; k <= max_degree; ++k)
    if (!(at(k) == other.at(k))) return false;
  return true;
}

HomologySummary homology_of_complex(const ChainComplexZ& c, int max_degree) {
  HomologySummary s;
  std::vector<std::vector<Int>> factors(max_degree + 2);
  for (int k = 1; k <= max_degree + 1; ++k)
    if (k < static_cast<int>(c.boundary.size()))
      factors[k] = invariant_factors(c.rank(k - 1), c.rank(k), c.boundary[k]);
  for (int k = 0; k <= max_degree; ++k) {
    DegreeHomology d;
    long long rk_out = static_cast<long long>(factors[k].size());
    long long rk_in = static_cast<long long>(factors[k + 1].size());
    d.betti = c.rank(k) - rk_out - rk_in;
    for (const auto& x : factors[k + 1])
      if (x > 1) d.torsion.push_back(x);
    s.degrees.push_back(std::move(d));
  }
  return s;
}

HomologySummary homology(const SimplicialSetFin& k, std::optional<int> max_degree) {
  int top = max_degree.value_or(std::max(k.dim(), 0));
  return homology_of_complex(chain_complex(k), top);
}

std::vector<std::vector<int>> pi0(const SimplicialSetFin& k) {
  std::vector<int> verts = k.generators_of_dim(0);
  std::vector<int> parent(k.num_generators());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (int e : k.generators_of_dim(1)) {
    int a = find(k.generator(e).faces[0].gen), b = find(k.generator(e).faces[1].gen);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::vector<int>> comps;
  for (int v : verts) comps[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, vs] : comps) out.push_back(std::move(vs));
  return out;
}

namespace {

// Mapping cone of the induced chain map: Cone_k = B_k ⊕ A_{k-1}.
ChainComplexZ mapping_cone(const ChainComplexZ& a, const ChainComplexZ& b, const SimplicialMap& f, int top) {
  std::map<int, int> b_position;
  for (const auto& basis : b.basis)
    for (std::size_t t = 0; t < basis.size(); ++t) b_position[basis[t]] = static_cast<int>(t);
  ChainComplexZ cone;
  cone.basis.resize(top + 1);
  cone.boundary.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    int nb = b.rank(k), na = a.rank(k - 1);
    for (int t = 0; t < nb + na; ++t) cone.basis[k].push_back(t);
    if (k == 0) continue;
    int nb_low = b.rank(k - 1);
    auto& cols = cone.boundary[k];
    cols.resize(nb + na);
    for (int t = 0; t < nb; ++t)
      if (k < static_cast<int>(b.boundary.size())) cols[t] = b.boundary[k][t];
    for (int t = 0; t < na; ++t) {
      auto& col = cols[nb + t];
      // f(a) in B_{k-1}
      const Simplex& img = f.images[a.basis[k - 1][t]];
      if (img.nondegenerate()) col.push_back({b_position.at(img.gen), 1});
      // -∂a in A_{k-2}
      if (k - 1 >= 1 && k - 1 < static_cast<int>(a.boundary.size()))
        for (const auto& [i, x] : a.boundary[k - 1][t]) col.push_back({nb_low + i, -x});
    }
  }
  return cone;
}

}  // namespace

EquivalenceVerdict equivalence_verdict(const SimplicialSetFin& source, const SimplicialSetFin& target,
                                       const SimplicialMap& f, std::optional<int> max_degree) {
  EquivalenceVerdict v;
  v.max_degree = max_degree.value_or(std::max({source.dim(), target.dim(), 0}));
  int n = v.max_degree;
  auto ca = chain_complex(source);
  auto cb = chain_complex(target);
  v.source = homology_of_complex(ca, n);
  v.target = homology_of_complex(cb, n);

  auto ca_comp = pi0(source);
  auto cb_comp = pi0(target);
  std::map<int, int> comp_of;
  for (std::size_t c = 0; c < cb_comp.size(); ++c)
    for (int x : cb_comp[c]) comp_of[x] = static_cast<int>(c);
  std::set<int> hit;
  bool injective = true;
  for (const auto& comp : ca_comp) {
    int c = comp_of.at(f.images[comp.front()].gen);
    if (!hit.insert(c).second) injective = false;
  }
  v.pi0_bijective = injective && hit.size() == cb_comp.size();

  auto cone = mapping_cone(ca, cb, f, n + 1);
  HomologySummary hc = homology_of_complex(cone, n);
  bool ok = true;
  for (int k = 0; k <= n; ++k) {
    if (!ok) {
      v.degree_iso.push_back(std::nullopt);
      continue;
    }
    // With lower degrees iso, H_k(cone) is the cokernel of f_*; a surjection
    // between isomorphic finitely generated groups is an isomorphism.
    bool iso = hc.at(k) == DegreeHomology{} && v.source.at(k) == v.target.at(k);
    v.degree_iso.push_back(iso);
    ok = iso;
  }
  v.pass = v.pi0_bijective && ok;
  return v;
}

ObjectwiseVerdict objectwise_verdict(const SimplicialPresheaf& source, const SimplicialPresheaf& target,
                                     const SimplicialPresheafMap& phi, std::optional<int> max_degree) {
  ObjectwiseVerdict out;
  out.pass = true;
  for (int x = 0; x < source.base->num_objects(); ++x) {
    out.objects.push_back(source.base->object(x));
    out.verdicts.push_back(equivalence_verdict(source.values[x], target.values[x], phi.components[x], max_degree));
    out.pass = out.pass && out.verdicts.back().pass;
  }
  return out;
}

bool same_homology(const SimplicialSetFin& a, const SimplicialSetFin& b, int max_degree) {
  return homology(a, max_degree).agrees_through(homology(b, max_degree), max_degree);
}

}  // namespace uht
