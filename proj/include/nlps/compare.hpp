// Cardinality formulas for the constructed families and for the prior
// constructions they improve on, plus the tabulation used by the CLI.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nlps {

// |theorem1_set(n1,n2,n3)| = 2(n2+n3-1)-n1. Requires 3 <= n1 <= n2 <= n3.
long long cardinality_ours_tripartite(std::size_t n1, std::size_t n2, std::size_t n3);

// Prior tripartite result: 2(n1+n3)-3 states. Same bounds.
long long cardinality_prior_tripartite(std::size_t n1, std::size_t n2, std::size_t n3);

// True iff 2*n2 < 3*n1 - 1 (integer form of n2 < (3/2)n1 - 1/2), the
// condition under which our tripartite count beats the prior one for every
// n3 >= n2. Requires 3 <= n1 <= n2.
bool advantage_condition(std::size_t n1, std::size_t n2);

struct MultipartiteCounts {
  long long ours = 0;   // residue formula: (n/3), ((n+2)/3) or ((n+1)/3) times (3d-2)
  long long prior = 0;  // n(2d-3)+1
};

// Uniform-dimension multipartite counts for n > 6 parties of dimension
// d >= 3; ours equals |compose_multipartite| on n copies of d.
MultipartiteCounts cardinality_multipartite_uniform(std::size_t n, std::size_t d);

struct TripartiteParams {
  std::size_t n1 = 0, n2 = 0, n3 = 0;
};
struct MultipartiteParams {
  std::size_t n = 0, d = 0;
};
using CompareParams = std::variant<TripartiteParams, MultipartiteParams>;

// One table row. For an invalid tuple `error` is set and the numeric fields
// are meaningless.
struct ComparisonRow {
  std::string params;       // "3x4x5" or "9x3"
  long long ours = 0;
  long long prior = 0;
  std::string prior_label;  // which reference formula produced `prior`
  long long advantage = 0;  // prior - ours
  std::optional<std::string> error;
};

// One row per tuple, in input order; per-tuple bound violations are
// reported in the row rather than thrown.
std::vector<ComparisonRow> comparison_table(std::span<const CompareParams> grid);

}  // namespace nlps
