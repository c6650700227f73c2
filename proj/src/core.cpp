#include "nlps/core.hpp"

#include <set>
#include <stdexcept>

namespace nlps {

void validate_ket(const Ket& k) {
  if (k.dim == 0) throw std::invalid_argument("Ket: dimension must be positive");
  if (k.coeffs.size() != k.dim)
    throw std::invalid_argument("Ket: expected " + std::to_string(k.dim) + " coefficients, got " +
                                std::to_string(k.coeffs.size()));
  for (const Int& c : k.coeffs)
    if (c != 0) return;
  throw std::invalid_argument("Ket: all coefficients are zero");
}

void validate_shape(const SystemShape& shape) {
  if (shape.parties() < 3)
    throw std::invalid_argument("SystemShape: at least three parties required");
  for (std::size_t d : shape.dims)
    if (d < 2) throw std::invalid_argument("SystemShape: every local dimension must be >= 2");
}

void validate_state_set(const StateSet& set) {
  validate_shape(set.shape);
  std::set<std::string> labels;
  for (const ProductState& s : set.states) {
    if (s.locals.size() != set.shape.parties())
      throw std::invalid_argument("StateSet: state '" + s.label + "' has " +
                                  std::to_string(s.locals.size()) + " parties, shape has " +
                                  std::to_string(set.shape.parties()));
    for (std::size_t p = 0; p < s.locals.size(); ++p) {
      validate_ket(s.locals[p]);
      if (s.locals[p].dim != set.shape.dims[p])
        throw std::invalid_argument("StateSet: state '" + s.label + "' party " +
                                    party_name(p, set.shape.parties()) + " has dimension " +
                                    std::to_string(s.locals[p].dim) + ", shape requires " +
                                    std::to_string(set.shape.dims[p]));
    }
    if (!labels.insert(s.label).second)
      throw std::invalid_argument("StateSet: duplicate label '" + s.label + "'");
  }
}

Ket ket_from_terms(std::size_t dim, const std::vector<std::pair<std::size_t, Int>>& terms) {
  if (dim == 0) throw std::invalid_argument("ket_from_terms: dimension must be positive");
  Ket k{dim, std::vector<Int>(dim, Int(0))};
  for (const auto& [index, coeff] : terms) {
    if (index >= dim)
      throw std::invalid_argument("ket_from_terms: index " + std::to_string(index) +
                                  " out of range for dimension " + std::to_string(dim));
    k.coeffs[index] += coeff;
  }
  validate_ket(k);  // rejects an all-zero result
  return k;
}

Ket basis_ket(std::size_t d, std::size_t i) { return ket_from_terms(d, {{i, Int(1)}}); }

Ket diff_ket(std::size_t d, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("diff_ket: indices must differ");
  return ket_from_terms(d, {{i, Int(1)}, {j, Int(-1)}});
}

Ket uniform_ket(std::size_t d) {
  if (d == 0) throw std::invalid_argument("uniform_ket: dimension must be positive");
  return Ket{d, std::vector<Int>(d, Int(1))};
}

Int inner(const Ket& u, const Ket& v) {
  if (u.dim != v.dim)
    throw std::invalid_argument("inner: dimension mismatch (" + std::to_string(u.dim) + " vs " +
                                std::to_string(v.dim) + ")");
  Int acc = 0;
  for (std::size_t i = 0; i < u.dim; ++i) acc += u.coeffs[i] * v.coeffs[i];
  return acc;
}

Int product_overlap(const ProductState& s, const ProductState& t,
                    std::optional<std::size_t> skip) {
  if (s.locals.size() != t.locals.size())
    throw std::invalid_argument("product_overlap: party count mismatch");
  if (skip && *skip >= s.locals.size())
    throw std::invalid_argument("product_overlap: skip party out of range");
  Int acc = 1;
  for (std::size_t p = 0; p < s.locals.size(); ++p) {
    if (skip && *skip == p) continue;
    acc *= inner(s.locals[p], t.locals[p]);
    if (acc == 0) break;
  }
  return acc;
}

std::string party_name(std::size_t party, std::size_t n_parties) {
  if (n_parties == 3) {
    static const char* abc[] = {"A", "B", "C"};
    if (party < 3) return abc[party];
  }
  return std::to_string(party + 1);
}

}  // namespace nlps
