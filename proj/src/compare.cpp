#include "nlps/compare.hpp"

#include <stdexcept>

namespace nlps {

namespace {

void require_tripartite_bounds(std::size_t n1, std::size_t n2, std::size_t n3) {
  if (n1 < 3 || n1 > n2 || n2 > n3)
    throw std::invalid_argument("tripartite cardinality: requires 3 <= n1 <= n2 <= n3");
}

long long ll(std::size_t x) { return static_cast<long long>(x); }

}  // namespace

long long cardinality_ours_tripartite(std::size_t n1, std::size_t n2, std::size_t n3) {
  require_tripartite_bounds(n1, n2, n3);
  return 2 * (ll(n2) + ll(n3) - 1) - ll(n1);
}

long long cardinality_prior_tripartite(std::size_t n1, std::size_t n2, std::size_t n3) {
  require_tripartite_bounds(n1, n2, n3);
  return 2 * (ll(n1) + ll(n3)) - 3;
}

bool advantage_condition(std::size_t n1, std::size_t n2) {
  if (n1 < 3 || n1 > n2)
    throw std::invalid_argument("advantage_condition: requires 3 <= n1 <= n2");
  return 2 * ll(n2) < 3 * ll(n1) - 1;
}

MultipartiteCounts cardinality_multipartite_uniform(std::size_t n, std::size_t d) {
  if (n <= 6) throw std::invalid_argument("multipartite cardinality: requires n > 6");
  if (d < 3) throw std::invalid_argument("multipartite cardinality: requires d >= 3");
  const long long per_block = 3 * ll(d) - 2;
  long long blocks = 0;
  switch (n % 3) {
    case 0: blocks = ll(n) / 3; break;
    case 1: blocks = (ll(n) + 2) / 3; break;
    default: blocks = (ll(n) + 1) / 3; break;
  }
  return MultipartiteCounts{blocks * per_block, ll(n) * (2 * ll(d) - 3) + 1};
}

std::vector<ComparisonRow> comparison_table(std::span<const CompareParams> grid) {
  std::vector<ComparisonRow> rows;
  rows.reserve(grid.size());
  for (const CompareParams& params : grid) {
    ComparisonRow row;
    try {
      if (const auto* t = std::get_if<TripartiteParams>(&params)) {
        row.params = std::to_string(t->n1) + "x" + std::to_string(t->n2) + "x" +
                     std::to_string(t->n3);
        row.prior_label = "2(n1+n3)-3";
        row.ours = cardinality_ours_tripartite(t->n1, t->n2, t->n3);
        row.prior = cardinality_prior_tripartite(t->n1, t->n2, t->n3);
      } else {
        const auto& m = std::get<MultipartiteParams>(params);
        row.params = std::to_string(m.n) + "x" + std::to_string(m.d);
        row.prior_label = "n(2d-3)+1";
        const MultipartiteCounts counts = cardinality_multipartite_uniform(m.n, m.d);
        row.ours = counts.ours;
        row.prior = counts.prior;
      }
      row.advantage = row.prior - row.ours;
    } catch (const std::invalid_argument& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nlps
