#include "nlps/exact_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace nlps {

RationalMatrix RationalMatrix::from_rows(std::vector<std::vector<Rat>> rows) {
  RationalMatrix m;
  if (rows.empty()) return m;
  m.rows_ = rows.size();
  m.cols_ = rows.front().size();
  m.entries_.reserve(m.rows_ * m.cols_);
  for (auto& row : rows) {
    if (row.size() != m.cols_) throw std::invalid_argument("RationalMatrix: ragged rows");
    for (auto& e : row) m.entries_.push_back(std::move(e));
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void RationalMatrix::append_row(const std::vector<Rat>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("RationalMatrix: row width mismatch");
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

void canonicalize_integer_vector(std::vector<Int>& v) {
  Int content = 0;
  for (const Int& x : v) {
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    if (content == 1) break;
  }
  if (content == 0) return;
  int lead = 0;
  for (const Int& x : v) {
    if (x != 0) {
      lead = sign(x);
      break;
    }
  }
  if (lead < 0) content = -content;
  if (content == 1) return;
  for (Int& x : v) {
    Int q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    x = std::move(q);
  }
}

namespace {

// Row-scaled integer copy of m: each row is multiplied by the lcm of its
// denominators and reduced by its content. Row scaling by nonzero rationals
// does not change the nullspace.
std::vector<std::vector<Int>> integerized_rows(const RationalMatrix& m) {
  std::vector<std::vector<Int>> rows(m.rows(), std::vector<Int>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Int scale = 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m.at(r, c).get_den().get_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rat e = m.at(r, c) * scale;
      rows[r][c] = e.get_num();  // denominator is 1 by construction
    }
    canonicalize_integer_vector(rows[r]);
  }
  return rows;
}

struct Elimination {
  std::vector<std::vector<Int>> rows;  // upper-trapezoidal after forward pass
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> pivot_rows;  // pivot_rows[k] hosts pivot_cols[k]
};

// Fraction-free forward elimination (Bareiss). Pivot choice: first row with
// a nonzero entry in the current column; no magnitude pivoting is needed in
// exact arithmetic.
Elimination bareiss_forward(const RationalMatrix& m) {
  Elimination el;
  el.rows = integerized_rows(m);
  const std::size_t nrows = el.rows.size();
  const std::size_t ncols = m.cols();

  Int prev_pivot = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    std::size_t p = row;
    while (p < nrows && el.rows[p][col] == 0) ++p;
    if (p == nrows) continue;
    if (p != row) std::swap(el.rows[p], el.rows[row]);

    const Int pivot = el.rows[row][col];
    for (std::size_t i = row + 1; i < nrows; ++i) {
      const Int factor = el.rows[i][col];
      for (std::size_t j = col; j < ncols; ++j) {
        Int t = pivot * el.rows[i][j] - factor * el.rows[row][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev_pivot.get_mpz_t());
        el.rows[i][j] = std::move(t);
      }
    }
    el.pivot_cols.push_back(col);
    el.pivot_rows.push_back(row);
    prev_pivot = pivot;
    ++row;
  }
  return el;
}

}  // namespace

Basis nullspace(const RationalMatrix& m) {
  if (m.cols() == 0) throw std::invalid_argument("nullspace: matrix must have at least one column");

  const Elimination el = bareiss_forward(m);
  const std::size_t ncols = m.cols();
  const std::size_t nrank = el.pivot_cols.size();

  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t c : el.pivot_cols) is_pivot[c] = true;

  Basis basis;
  basis.length = ncols;
  for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
    if (is_pivot[free_col]) continue;

    // Solve the triangular system with x[free_col] = 1 and all other free
    // variables 0, walking pivots bottom-up.
    std::vector<Rat> x(ncols, Rat(0));
    x[free_col] = 1;
    for (std::size_t k = nrank; k-- > 0;) {
      const std::size_t prow = el.pivot_rows[k];
      const std::size_t pcol = el.pivot_cols[k];
      Rat acc = 0;
      for (std::size_t j = pcol + 1; j < ncols; ++j) {
        if (x[j] != 0 && el.rows[prow][j] != 0) acc += Rat(el.rows[prow][j]) * x[j];
      }
      x[pcol] = -acc / Rat(el.rows[prow][pcol]);
    }

    Int denom_lcm = 1;
    for (const Rat& e : x)
      mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), e.get_den().get_mpz_t());
    std::vector<Int> v(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
      Rat e = x[j] * denom_lcm;
      v[j] = e.get_num();
    }
    canonicalize_integer_vector(v);
    basis.vectors.push_back(std::move(v));
  }

  // Certify: every basis vector must satisfy m.v = 0 exactly.
  for (const auto& v : basis.vectors) {
    for (const Rat& e : multiply(m, v)) {
      if (e != 0) throw std::logic_error("nullspace: produced vector fails m.v = 0");
    }
  }
  return basis;
}

std::size_t rank(const RationalMatrix& m) {
  if (m.cols() == 0) return 0;
  return bareiss_forward(m).pivot_cols.size();
}

std::vector<Rat> multiply(const RationalMatrix& m, const std::vector<Int>& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("multiply: vector length mismatch");
  std::vector<Rat> out(m.rows(), Rat(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rat acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.at(r, c) != 0 && v[c] != 0) acc += m.at(r, c) * Rat(v[c]);
    }
    out[r] = std::move(acc);
  }
  return out;
}

}  // namespace nlps
