// Exact representation of multipartite product states over computational
// bases, and the integer inner products everything downstream is built on.
//
// States are stored unnormalized: |0-i> is the coefficient vector with 1 at
// position 0 and -1 at position i. Every construction in this library uses
// only coefficients in {-1, 0, 1}, so orthogonality questions reduce to
// integer arithmetic with no radicals and no tolerances.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlps/numeric.hpp"

namespace nlps {

// Unnormalized local state: integer amplitudes over {|0>,...,|dim-1>}.
// Invariant: coeffs has exactly dim entries and at least one is nonzero.
struct Ket {
  std::size_t dim = 0;
  std::vector<Int> coeffs;
};

// One local ket per party, plus a human-readable label such as "phi_3".
struct ProductState {
  std::string label;
  std::vector<Ket> locals;
};

// Dimensions (d_1,...,d_n) of the joint system. At least three parties,
// every local dimension at least 2.
struct SystemShape {
  std::vector<std::size_t> dims;

  std::size_t parties() const { return dims.size(); }
  bool operator==(const SystemShape&) const = default;
};

// A labeled family of product states on a common shape; the object every
// construction produces and the verifier consumes.
// Invariant: all states conform to shape and labels are unique.
struct StateSet {
  SystemShape shape;
  std::vector<ProductState> states;
  std::string provenance = "user";

  std::size_t size() const { return states.size(); }
};

// Validation helpers. Each throws std::invalid_argument on violation.
void validate_ket(const Ket& k);
void validate_shape(const SystemShape& shape);
void validate_state_set(const StateSet& set);

// Sparse ket constructor: zeros everywhere except the given terms; repeated
// indices sum. Throws on an out-of-range index or an all-zero result.
Ket ket_from_terms(std::size_t dim, const std::vector<std::pair<std::size_t, Int>>& terms);

// |i> in dimension d.
Ket basis_ket(std::size_t d, std::size_t i);

// |i-j> in dimension d (coefficient +1 at i, -1 at j), i != j.
Ket diff_ket(std::size_t d, std::size_t i, std::size_t j);

// |0+...+(d-1)>: all coefficients 1.
Ket uniform_ket(std::size_t d);

// <u|v> up to positive normalization. All coefficients are real integers,
// so conjugation is the identity and the result is an exact integer; it is
// zero exactly when the normalized states are orthogonal.
Int inner(const Ket& u, const Ket& v);

// Product over parties p != skip of inner(s.locals[p], t.locals[p]); with
// skip absent this is the full unnormalized overlap <s|t>. The skip form is
// the "bystander" factor multiplying each party's measurement constraint.
Int product_overlap(const ProductState& s, const ProductState& t,
                    std::optional<std::size_t> skip = std::nullopt);

// Party display name: "A", "B", "C" for tripartite systems, "1".."n"
// otherwise (party is a 0-based index).
std::string party_name(std::size_t party, std::size_t n_parties);

}  // namespace nlps
