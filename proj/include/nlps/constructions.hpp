// Builders for every nonlocal product-state family in this library:
//
//   lemma1_set(d)            3d-2 states on (d, d, d)
//   lemma2_set(d)            3d+4 states on (d, d+1, d+2)
//   theorem1_set(n1,n2,n3)   2(n2+n3-1)-n1 states on (n1, n2, n3)
//   compose_multipartite     block-recursive n-partite families, n > 6
//
// Each tripartite set is pairwise orthogonal by construction; the
// multipartite composer additionally re-verifies orthogonality of the
// assembled set before returning it.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "nlps/core.hpp"

namespace nlps {

// Padding pair for one block of the multipartite composition: one |a> and
// one |b> ket per party of the block's padding group (a triple for interior
// blocks, a pair or a single party for the final block when n is not a
// multiple of 3). Invariant: the product of per-party overlaps <a_p|b_p>
// over the group is zero.
struct StopperPair {
  std::vector<Ket> a;
  std::vector<Ket> b;
};

// One block of the multipartite layout.
//   host_parties  the three 0-based parties carrying the tripartite set
//                 when this block is active
//   group_parties the padding positions owned by this block (equal to
//                 host_parties for interior blocks; {n-1} or {n-2, n-1}
//                 for the final block of the n = 1, 2 (mod 3) families)
// When block j is active, parties in block (j-1 mod #blocks)'s group are
// padded with that group's |a> kets and every other non-host party with its
// own group's |b> ket.
struct Block {
  std::size_t id = 0;  // 1-based index t of the block's first host party
  std::array<std::size_t, 3> host_parties{};
  std::vector<std::size_t> group_parties;
};

struct BlockLayout {
  std::size_t n = 0;
  int residue = 0;  // n mod 3
  std::vector<Block> blocks;
};

// The 3d-2 states of the (d, d, d) family, d >= 3: three cyclic families
// |0-i>|0>|i>, |i>|0-i>|0>, |0>|i>|0-i> for i = 1..d-1 plus the uniform
// stopper |0+...+(d-1)> on all three parties. Labels phi_1..phi_{3d-2}.
StateSet lemma1_set(std::size_t d);

// The 3d+4 states of the (d, d+1, d+2) family, d >= 3: the three cyclic
// families above, six extra states reaching the higher basis levels of
// parties B and C, and the uniform stopper.
StateSet lemma2_set(std::size_t d);

// The 2(n2+n3-1)-n1 states of the general tripartite family,
// 3 <= n1 <= n2 <= n3. Index ranges i = 1..n1-1, j = n1..n2-1,
// k = n2..n3-1; degenerate ranges (n1 = n2 and/or n2 = n3) produce empty
// j/k families. Labels phi_1..phi_N are gapless.
StateSet theorem1_set(std::size_t n1, std::size_t n2, std::size_t n3);

// Block layout for the n-partite composition, n > 6, dims.size() == n,
// all dims >= 3. Interior blocks sit at parties (t, t+1, t+2) for
// t = 1, 4, ...; when n is not a multiple of 3 a final block on parties
// (1, 2, n) or (1, n-1, n) completes the cover.
BlockLayout block_schedule(std::size_t n, const SystemShape& dims);

// Default padding pair for a group: |0> on every party for a, |1> for b.
// Orthogonal party-wise, so every cross-block overlap vanishes.
std::vector<StopperPair> default_stoppers(const BlockLayout& layout, const SystemShape& dims);

// The full multipartite family: each block hosts a tripartite nonlocal set
// (theorem1_set on the block's dimensions, parties sorted ascending for
// construction and permuted back), embedded with the padding pattern of the
// layout. The result is re-verified for pairwise orthogonality; a violation
// (possible only with user-supplied stoppers) throws std::invalid_argument.
StateSet compose_multipartite(const SystemShape& dims,
                              std::optional<std::vector<StopperPair>> stoppers = std::nullopt);

}  // namespace nlps
