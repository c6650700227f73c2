// Mechanization of the first-round measurement argument: for a chosen party,
// collect every orthogonality-preservation constraint on the measurement
// operator H = M†M, solve the resulting homogeneous systems exactly, and
// decide whether the solution space is spanned by the identity alone.
//
// H is parametrized as S + iA with S real symmetric (d(d+1)/2 unknowns) and
// A real antisymmetric (d(d-1)/2 unknowns). All kets here are real, so each
// constraint c.<u|H|v> = 0 splits into one row on S and one row on A, and
// the whole computation stays in exact rational arithmetic.
//
// "Trivial" means proportional to the identity. A Nontrivial verdict never
// claims the set is LOCC-distinguishable, only that this proof technique
// does not certify it; positive-semidefiniteness of the witness is neither
// imposed nor claimed.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nlps/core.hpp"
#include "nlps/exact_linalg.hpp"

namespace nlps {

// Index of unknown S_pq (p <= q) in the symmetric parameter vector.
std::size_t sym_index(std::size_t d, std::size_t p, std::size_t q);
// Index of unknown A_pq (p < q) in the antisymmetric parameter vector.
std::size_t asym_index(std::size_t d, std::size_t p, std::size_t q);

// Constraint rows on one party's measurement operator. Each row comes from
// an ordered state pair (a, b), a < b, whose bystander overlap product over
// the other parties is nonzero: one symmetric and one antisymmetric row per
// such pair, minus rows that are identically zero. Rows are canonically
// scaled (integer, content 1, positive leading entry); duplicates are kept
// here and collapsed only at elimination time.
struct ConstraintSystem {
  std::size_t party = 0;
  std::size_t dim = 0;
  RationalMatrix sym;   // rows over the d(d+1)/2 entries of S
  RationalMatrix asym;  // rows over the d(d-1)/2 entries of A

  std::size_t total_rows() const { return sym.rows() + asym.rows(); }
};

// Exact Hermitian operator H = S + iA with S symmetric and A antisymmetric,
// both integer-entried (canonical basis scaling).
struct HermitianOp {
  std::size_t dim = 0;
  std::vector<std::vector<Int>> sym;   // d x d, sym[p][q] == sym[q][p]
  std::vector<std::vector<Int>> asym;  // d x d, asym[p][q] == -asym[q][p]
};

bool is_identity_multiple(const HermitianOp& op);

// Basis of the space of Hermitian operators satisfying every constraint.
// Elements from the symmetric system come first, then the iA elements from
// the antisymmetric system; the order is deterministic.
struct HermitianBasis {
  std::size_t dim = 0;
  std::vector<HermitianOp> ops;

  std::size_t dimension() const { return ops.size(); }
};

enum class Verdict { Trivial, Nontrivial };

struct TrivialityVerdict {
  std::size_t party = 0;
  std::size_t local_dim = 0;
  std::size_t constraint_rows = 0;
  std::size_t solution_dim = 0;  // >= 1 for any pairwise-orthogonal set
  Verdict verdict = Verdict::Nontrivial;
  std::optional<HermitianOp> witness;  // present iff Nontrivial; not a multiple of identity
};

struct OrthogonalityViolation {
  std::size_t first = 0;   // indices into StateSet::states
  std::size_t second = 0;
  std::string first_label;
  std::string second_label;
  Int overlap;
};

struct OrthogonalityReport {
  std::vector<OrthogonalityViolation> violations;

  bool ok() const { return violations.empty(); }
};

enum class Conclusion { CertifiedFirstRoundTrivial, OrthogonalityFailed, NontrivialMeasurementExists };

std::string to_string(Verdict v);
std::string to_string(Conclusion c);

// Full verification record for one set. When orthogonality fails the
// per-party verdicts are skipped (the identity no longer solves the
// constraint systems, so "trivial" loses its meaning) and the conclusion is
// OrthogonalityFailed.
struct Certificate {
  std::string provenance;
  SystemShape shape;
  std::size_t cardinality = 0;
  OrthogonalityReport orthogonality;
  std::vector<TrivialityVerdict> verdicts;  // one per party when orthogonal
  Conclusion conclusion = Conclusion::OrthogonalityFailed;

  // Wall clock per stage, milliseconds.
  long long orthogonality_ms = 0;
  std::vector<long long> party_ms;
  long long total_ms = 0;
};

// Lists every unordered pair with nonzero overlap; empty means pairwise
// orthogonal.
OrthogonalityReport check_orthogonality(const StateSet& set);

// Builds the constraint rows for the given party.
ConstraintSystem constraint_system(const StateSet& set, std::size_t party);

// Exact solution space of the party's constraints, as Hermitian operators.
// For a pairwise-orthogonal set the identity is always in the span, so the
// dimension is at least 1.
HermitianBasis solution_space(const StateSet& set, std::size_t party);

// Trivial iff the solution space is one-dimensional (hence, for orthogonal
// sets, spanned by the identity). Otherwise Nontrivial with a witness basis
// element that is not proportional to the identity.
TrivialityVerdict check_first_round_triviality(const StateSet& set, std::size_t party);

// Runs the orthogonality check and then, if it passes, the per-party
// triviality checks (concurrently when parallelism > 1; 0 means one worker
// per available execution unit). The conclusion asserts exactly that no
// party can begin with a nontrivial orthogonality-preserving measurement.
Certificate certify_nonlocal(const StateSet& set, unsigned parallelism = 0);

}  // namespace nlps
