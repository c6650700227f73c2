// Exact rational matrix kernel: rank and nullspace via fraction-free
// (Bareiss) elimination over the integers with a rational back-substitution.
//
// Every produced basis vector is re-checked against the input matrix after
// elimination, so a returned Basis is a certified nullspace basis, not a
// hoped-for one.

#pragma once

#include <cstddef>
#include <vector>

#include "nlps/numeric.hpp"

namespace nlps {

// Dense row-major matrix of exact rationals. Entries are kept in lowest
// terms with positive denominator (mpq_class canonical form).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}

  static RationalMatrix from_rows(std::vector<std::vector<Rat>> rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rat& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rat& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  void append_row(const std::vector<Rat>& row);

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

// Nullspace basis in canonical form: each vector is scaled to integer
// entries with content 1 (gcd of entries is 1) and positive first nonzero
// entry. Vectors are ordered by ascending free-column index, so the basis
// of a given matrix is deterministic.
struct Basis {
  std::size_t length = 0;                 // length of each vector
  std::vector<std::vector<Int>> vectors;  // linearly independent

  std::size_t dimension() const { return vectors.size(); }
};

// Scale an integer vector in place to content 1 with positive first nonzero
// entry. A zero vector is left untouched.
void canonicalize_integer_vector(std::vector<Int>& v);

// Exact nullspace {x : m.x = 0}. An empty basis means full column rank;
// a matrix with zero rows yields the standard basis of Q^cols.
// Requires cols >= 1.
Basis nullspace(const RationalMatrix& m);

// Row rank of m. rank(m) + nullspace(m).dimension() == m.cols().
std::size_t rank(const RationalMatrix& m);

// m.v over exact rationals; lets callers re-verify basis membership
// themselves.
std::vector<Rat> multiply(const RationalMatrix& m, const std::vector<Int>& v);

}  // namespace nlps
