#pragma once

// Integral homology of finite simplicial sets through normalized chains and
// Smith normal form, and the pi0 + homology proxy for weak equivalences.

#include <optional>
#include <string>
#include <vector>

#include "uht/common.hpp"
#include "uht/simpset.hpp"

namespace uht {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> data;  // row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows);

  Int& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  bool is_zero() const;
  bool operator==(const Matrix&) const = default;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Int determinant(const Matrix& m);  // Bareiss, square matrices only

struct SmithResult {
  Matrix d;
  Matrix u;  // rows x rows
  Matrix v;  // cols x cols
  std::vector<Int> diagonal;  // nonzero invariant factors, each dividing the next
};

/// U·M·V = D. The product is recomputed and compared before returning.
SmithResult smith_normal_form(const Matrix& m);

/// Nonzero invariant factors only, by sparse unit-pivot elimination followed
/// by dense reduction of whatever is left.
std::vector<Int> invariant_factors(int rows, int cols,
                                   const std::vector<std::vector<std::pair<int, long long>>>& columns);

struct ChainComplexZ {
  std::vector<std::vector<int>> basis;  // generator indices per degree
  /// boundary[k] : C_k -> C_{k-1}, stored by column (one entry list per basis element of C_k).
  std::vector<std::vector<std::vector<std::pair<int, long long>>>> boundary;

  int rank(int k) const { return k >= 0 && k < static_cast<int>(basis.size()) ? static_cast<int>(basis[k].size()) : 0; }
  Matrix dense_boundary(int k) const;
  /// ∂∘∂ = 0, checked by exact sparse multiplication.
  bool boundary_squares_to_zero() const;
};

ChainComplexZ chain_complex(const SimplicialSetFin& k);

struct DegreeHomology {
  long long betti = 0;
  std::vector<Int> torsion;
  bool operator==(const DegreeHomology&) const = default;
};

struct HomologySummary {
  std::vector<DegreeHomology> degrees;

  bool operator==(const HomologySummary&) const = default;
  /// Degrees above the stored range count as zero.
  DegreeHomology at(int k) const;
  /// "H0=Z, H1=Z^2+Z/2" style rendering; zero groups are omitted.
  std::string to_string() const;
  bool agrees_through(const HomologySummary& other, int max_degree) const;
};

/// Homology in degrees 0..max_degree (default: the top dimension of k).
HomologySummary homology(const SimplicialSetFin& k, std::optional<int> max_degree = std::nullopt);
HomologySummary homology_of_complex(const ChainComplexZ& c, int max_degree);

/// Connected components as lists of vertex generators, ordered by least vertex.
std::vector<std::vector<int>> pi0(const SimplicialSetFin& k);

inline constexpr const char* kProxyDisclaimer =
    "weak-equivalence proxy: pi0 bijection plus induced integral homology isomorphisms; "
    "a necessary condition only";

struct EquivalenceVerdict {
  bool pi0_bijective = false;
  int max_degree = 0;
  /// One entry per degree 0..max_degree. A degree is only decided once every
  /// lower degree passed; later entries stay empty after the first failure.
  std::vector<std::optional<bool>> degree_iso;
  HomologySummary source;
  HomologySummary target;
  bool pass = false;
  std::string disclaimer = kProxyDisclaimer;
};

EquivalenceVerdict equivalence_verdict(const SimplicialSetFin& source, const SimplicialSetFin& target,
                                       const SimplicialMap& f, std::optional<int> max_degree = std::nullopt);

struct SimplicialPresheaf;
struct SimplicialPresheafMap;

struct ObjectwiseVerdict {
  std::vector<std::string> objects;
  std::vector<EquivalenceVerdict> verdicts;  // one per object of the base
  bool pass = false;
};

/// equivalence_verdict at every object of the base category.
ObjectwiseVerdict objectwise_verdict(const SimplicialPresheaf& source, const SimplicialPresheaf& target,
                                     const SimplicialPresheafMap& phi, std::optional<int> max_degree = std::nullopt);

/// Homology-only comparison (no map available): summaries agree through max_degree.
bool same_homology(const SimplicialSetFin& a, const SimplicialSetFin& b, int max_degree);

}  // namespace uht
