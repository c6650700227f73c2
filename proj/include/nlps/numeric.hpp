// Exact scalar types shared by the whole library.
//
// All state coefficients are arbitrary-precision integers and all matrix
// entries are arbitrary-precision rationals, so every orthogonality check
// and every constraint system is evaluated with zero rounding error.

#pragma once

#include <gmpxx.h>

#include <string>

namespace nlps {

using Int = mpz_class;  // arbitrary-precision integer
using Rat = mpq_class;  // arbitrary-precision rational, kept in lowest terms

inline int sign(const Int& x) { return sgn(x); }
inline int sign(const Rat& x) { return sgn(x); }

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace nlps
