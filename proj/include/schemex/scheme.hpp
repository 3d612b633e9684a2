#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace schemex {

using RelIndex = std::uint16_t;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class SchemeErrc {
  IndexOutOfRange,
  ClassCountZero,
  DiagonalNotZero,
  NotSymmetric,
  MissingRelation,
  NotConstant,
  PermMovesZero,
  InvalidPermutation,
};

const char* to_string(SchemeErrc e);

/// Raised when a relation matrix violates one of the association-scheme
/// axioms. The message names the axiom and carries a witness.
class SchemeError : public std::runtime_error {
 public:
  SchemeError(SchemeErrc code, const std::string& what);
  SchemeErrc code() const noexcept { return code_; }

 private:
  SchemeErrc code_;
};

/// Dense n x n table of relation indices in 0..d.
///
/// The constructor only checks that every entry is in range; the scheme
/// axioms are checked by build_scheme().
class RelationMatrix {
 public:
  RelationMatrix(std::size_t n, std::size_t d, std::vector<RelIndex> entries);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  RelIndex operator()(std::size_t x, std::size_t y) const { return rel_[x * n_ + y]; }
  std::span<const RelIndex> row(std::size_t x) const { return {rel_.data() + x * n_, n_}; }
  std::span<const RelIndex> entries() const noexcept { return rel_; }

  friend bool operator==(const RelationMatrix&, const RelationMatrix&) = default;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<RelIndex> rel_;
};

/// Intersection numbers p^k_{ij} of a scheme, stored as exact integers.
class IntersectionTensor {
 public:
  IntersectionTensor() = default;
  IntersectionTensor(std::size_t d, std::vector<std::int64_t> values);

  std::size_t d() const noexcept { return d_; }
  /// p^k_{ij}
  std::int64_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return p_[(k * (d_ + 1) + i) * (d_ + 1) + j];
  }
  /// k_i = p^0_{ii}
  std::int64_t valency(std::size_t i) const { return (*this)(i, i, 0); }
  std::vector<std::int64_t> valencies() const;

  /// (d+1) x (d+1) matrix with entry (j, k) = p^k_{ij}. Rows of the first
  /// eigenmatrix are its right eigenvectors.
  IntMatrix intersection_matrix(std::size_t i) const;

  friend bool operator==(const IntersectionTensor&, const IntersectionTensor&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<std::int64_t> p_;
};

struct BuildOptions {
  /// Check axiom (4) on one representative pair per class only. Unsound on
  /// invalid input: a non-constant count elsewhere goes unnoticed.
  bool fast = false;
  /// Worker threads for the O(n^3) validation; 0 or 1 runs inline.
  unsigned threads = 1;
};

class AssociationScheme;

AssociationScheme build_scheme(RelationMatrix rm, const BuildOptions& opts = {});

/// A validated symmetric association scheme. Immutable.
class AssociationScheme {
 public:
  std::size_t n() const noexcept { return rel_.n(); }
  std::size_t d() const noexcept { return rel_.d(); }
  const RelationMatrix& relations() const noexcept { return rel_; }
  const IntersectionTensor& intersection_numbers() const noexcept { return tensor_; }
  std::int64_t valency(std::size_t i) const { return tensor_.valency(i); }

  /// 0/1 indicator matrix A_i.
  const IntMatrix& adjacency(std::size_t i) const { return adjacency_[i]; }

  /// Some pair (x, y) in relation i, with x = 0.
  std::pair<std::size_t, std::size_t> representative(std::size_t i) const {
    return {0, representative_[i]};
  }

 private:
  AssociationScheme(RelationMatrix rel, IntersectionTensor tensor);

  friend AssociationScheme build_scheme(RelationMatrix, const BuildOptions&);
  friend AssociationScheme reorder_relations(const AssociationScheme&,
                                             std::span<const std::size_t>);

  RelationMatrix rel_;
  IntersectionTensor tensor_;
  std::vector<IntMatrix> adjacency_;
  std::vector<std::size_t> representative_;
};

inline const IntersectionTensor& intersection_numbers(const AssociationScheme& s) {
  return s.intersection_numbers();
}

/// Relabels relation i as perm[i]. perm has d+1 entries and must fix 0.
AssociationScheme reorder_relations(const AssociationScheme& s, std::span<const std::size_t> perm);

}  // namespace schemex
