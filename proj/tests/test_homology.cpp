#include "doctest.h"
#include "uht/homology.hpp"

#include <random>

using namespace uht;

namespace {

DegreeHomology free_rank(long long r) { return DegreeHomology{r, {}}; }

// Independent oracle: rank over Q by fraction-free Gaussian elimination.
long long rational_rank(Matrix m) {
  long long rank = 0;
  int r = m.rows, c = m.cols, row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int piv = -1;
    for (int i = row; i < r; ++i)
      if (m.at(i, col) != 0) piv = i;
    if (piv < 0) continue;
    for (int j = 0; j < c; ++j) std::swap(m.at(row, j), m.at(piv, j));
    for (int i = row + 1; i < r; ++i) {
      Int a = m.at(row, col), b = m.at(i, col);
      for (int j = 0; j < c; ++j) m.at(i, j) = m.at(i, j) * a - m.at(row, j) * b;
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto id = smith_normal_form(Matrix::identity(3));
  CHECK(id.diagonal == std::vector<Int>{1, 1, 1});
  auto two = smith_normal_form(Matrix::from_rows({{2}}));
  CHECK(two.diagonal == std::vector<Int>{2});
  auto m = Matrix::from_rows({{2, 4}, {6, 8}});
  auto s = smith_normal_form(m);
  CHECK(s.diagonal == std::vector<Int>{2, 4});
  CHECK(abs(determinant(m)) == 8);
  CHECK(abs(determinant(s.u)) == 1);
  CHECK(abs(determinant(s.v)) == 1);
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    int r = dim(rng), c = dim(rng);
    Matrix m(r, c);
    for (auto& x : m.data) x = entry(rng);
    auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    for (std::size_t i = 1; i < s.diagonal.size(); ++i) CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);
    CHECK(static_cast<long long>(s.diagonal.size()) == rational_rank(m));
    // the sparse path agrees with the dense one
    std::vector<std::vector<std::pair<int, long long>>> cols(c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i)
        if (m.at(i, j) != 0) cols[j].push_back({i, static_cast<long long>(m.at(i, j))});
    CHECK(invariant_factors(r, c, cols) == s.diagonal);
    if (r == c) {
      Int prod = 1;
      for (const auto& d : s.diagonal) prod *= d;
      if (static_cast<int>(s.diagonal.size()) < r) prod = 0;
      CHECK(prod == abs(determinant(m)));
    }
  }
}

TEST_CASE("big entries stay exact") {
  Matrix m = Matrix::from_rows({{1000000007, 998244353}, {1000000009, 998244359}});
  m.at(0, 0) *= Int("1000000000000000000000");
  auto s = smith_normal_form(m);
  CHECK(s.u * m * s.v == s.d);
}

TEST_CASE("chain complexes") {
  auto c0 = chain_complex(standard_simplex(0));
  CHECK(c0.rank(0) == 1);
  auto b2 = boundary(2);
  auto c = chain_complex(b2);
  Matrix d1 = c.dense_boundary(1);
  // each edge "ij" has boundary j - i
  for (int e = 0; e < 3; ++e) {
    int nonzero = 0, sum = 0;
    for (int v = 0; v < 3; ++v)
      if (d1.at(v, e) != 0) {
        ++nonzero;
        sum += static_cast<int>(d1.at(v, e));
      }
    CHECK(nonzero == 2);
    CHECK(sum == 0);
  }
  CHECK(rational_rank(d1) == 2);
  CHECK(chain_complex(product(standard_simplex(1), standard_simplex(1)).set).boundary_squares_to_zero());
  CHECK(chain_complex(product(standard_simplex(2), boundary(2)).set).boundary_squares_to_zero());
}

TEST_CASE("homology of basic spaces") {
  for (int n = 0; n <= 4; ++n) {
    auto h = homology(standard_simplex(n));
    CHECK(h.at(0) == free_rank(1));
    for (int k = 1; k <= n; ++k) CHECK(h.at(k) == free_rank(0));
  }
  for (int n = 2; n <= 4; ++n) {
    auto h = homology(boundary(n));
    CHECK(h.at(0) == free_rank(1));
    CHECK(h.at(n - 1) == free_rank(1));
  }
  CHECK(homology(boundary(2)).to_string() == "H0=Z, H1=Z");
  CHECK(pi0(boundary(1)).size() == 2);
  auto torus = product(boundary(2), boundary(2));
  auto ht = homology(torus.set);
  CHECK(ht.at(1) == free_rank(2));
  CHECK(ht.at(2) == free_rank(1));
}

TEST_CASE("projective plane has torsion") {
  // one vertex, one edge a, one 2-cell with faces (a, s0 v, a)
  std::vector<Generator> g{{"v", 0, {}},
                           {"a", 1, {Simplex{{0}, 0}, Simplex{{0}, 0}}},
                           {"U", 2, {Simplex{{0, 1}, 1}, Simplex{{0, 0}, 0}, Simplex{{0, 1}, 1}}}};
  SimplicialSetFin rp2(g);
  REQUIRE(rp2.check_identities().empty());
  auto h = homology(rp2);
  CHECK(h.at(0) == free_rank(1));
  CHECK(h.at(1) == DegreeHomology{0, {Int(2)}});
  CHECK(h.at(2) == free_rank(0));
  CHECK(h.to_string() == "H0=Z, H1=Z/2");
}

TEST_CASE("homology of a disjoint union is the direct sum") {
  auto a = boundary(2), b = boundary(3);
  auto u = coproduct({&a, &b}, {"a", "b"});
  auto ha = homology(a, 3), hb = homology(b, 3), hu = homology(u.set, 3);
  for (int k = 0; k <= 3; ++k) CHECK(hu.at(k).betti == ha.at(k).betti + hb.at(k).betti);
}

TEST_CASE("equivalence verdicts") {
  auto d1 = standard_simplex(1);
  auto d0 = standard_simplex(0);
  auto id = equivalence_verdict(d1, d1, identity_map(d1));
  CHECK(id.pass);
  SimplicialMap collapse{{d0.simplex(0), d0.simplex(0), Simplex{{0, 0}, 0}}};
  REQUIRE(check_map(d1, d0, collapse).empty());
  CHECK(equivalence_verdict(d1, d0, collapse).pass);

  auto b2 = boundary(2), d2 = standard_simplex(2);
  SimplicialMap incl;
  for (const auto& g : b2.generators()) incl.images.push_back(d2.simplex(*d2.find(g.id)));
  REQUIRE(check_map(b2, d2, incl).empty());
  auto v = equivalence_verdict(b2, d2, incl, 2);
  CHECK_FALSE(v.pass);
  CHECK(v.pi0_bijective);
  CHECK(v.degree_iso[0] == std::optional<bool>(true));
  CHECK(v.degree_iso[1] == std::optional<bool>(false));
  CHECK_FALSE(v.degree_iso[2].has_value());

  // a map between circles of degree 2 has matching summaries but is not iso
  auto circle = boundary(2);
  std::vector<Generator> g{{"v", 0, {}}, {"e", 1, {Simplex{{0}, 0}, Simplex{{0}, 0}}}};
  SimplicialSetFin loop(g);
  SimplicialMap wrap{{loop.simplex(0), loop.simplex(0), loop.simplex(0), loop.simplex(1), loop.simplex(1),
                      Simplex{{0, 0}, 0}}};
  REQUIRE(check_map(circle, loop, wrap).empty());
  auto w = equivalence_verdict(circle, loop, wrap);
  CHECK(w.source.at(1) == w.target.at(1));
  CHECK(w.degree_iso[1] == std::optional<bool>(false));
  CHECK_FALSE(w.pass);
}
