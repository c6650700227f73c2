#include "nlps/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nlps {

namespace {

std::string phi(std::size_t index) { return "phi_" + std::to_string(index); }

// Collects states by 1-based label index and checks the indices come out
// gapless, which pins the subscript arithmetic of each family.
class IndexedSet {
 public:
  explicit IndexedSet(std::size_t count) : slots_(count) {}

  void put(std::size_t index, std::vector<Ket> locals) {
    if (index == 0 || index > slots_.size())
      throw std::logic_error("construction: label index " + std::to_string(index) +
                             " outside 1.." + std::to_string(slots_.size()));
    if (!slots_[index - 1].empty())
      throw std::logic_error("construction: label index " + std::to_string(index) +
                             " assigned twice");
    slots_[index - 1] = std::move(locals);
  }

  std::vector<ProductState> take() {
    std::vector<ProductState> states;
    states.reserve(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if (slots_[i].empty())
        throw std::logic_error("construction: label index " + std::to_string(i + 1) +
                               " never assigned");
      states.push_back(ProductState{phi(i + 1), std::move(slots_[i])});
    }
    return states;
  }

 private:
  std::vector<std::vector<Ket>> slots_;
};

// m = 1 when x-1 is even, m = 2 when x-1 is odd. The alternation keeps the
// |m> marker off the {x-1, x} support of the neighbouring |(x-1)-x> kets.
std::size_t parity_marker(std::size_t x) { return (x - 1) % 2 == 0 ? 1 : 2; }

}  // namespace

StateSet lemma1_set(std::size_t d) {
  if (d < 3) throw std::invalid_argument("lemma1_set: requires d >= 3");

  IndexedSet out(3 * d - 2);
  for (std::size_t i = 1; i <= d - 1; ++i) {
    out.put(i, {diff_ket(d, 0, i), basis_ket(d, 0), basis_ket(d, i)});
    out.put(i + (d - 1), {basis_ket(d, i), diff_ket(d, 0, i), basis_ket(d, 0)});
    out.put(i + 2 * (d - 1), {basis_ket(d, 0), basis_ket(d, i), diff_ket(d, 0, i)});
  }
  out.put(3 * (d - 1) + 1, {uniform_ket(d), uniform_ket(d), uniform_ket(d)});

  StateSet set{SystemShape{{d, d, d}}, out.take(), "lemma1(d=" + std::to_string(d) + ")"};
  validate_state_set(set);
  return set;
}

StateSet lemma2_set(std::size_t d) {
  if (d < 3) throw std::invalid_argument("lemma2_set: requires d >= 3");
  const std::size_t dA = d, dB = d + 1, dC = d + 2;

  IndexedSet out(3 * d + 4);
  for (std::size_t i = 1; i <= d - 1; ++i) {
    out.put(i, {diff_ket(dA, 0, i), basis_ket(dB, 0), basis_ket(dC, i)});
    out.put(i + (d - 1), {basis_ket(dA, i), diff_ket(dB, 0, i), basis_ket(dC, 0)});
    out.put(i + 2 * (d - 1), {basis_ket(dA, 0), basis_ket(dB, i), diff_ket(dC, 0, i)});
  }
  const std::size_t base = 3 * (d - 1);
  out.put(base + 1, {diff_ket(dA, 0, 1), basis_ket(dB, 0), basis_ket(dC, d)});
  out.put(base + 2, {diff_ket(dA, 0, 1), basis_ket(dB, d), basis_ket(dC, 0)});
  out.put(base + 3, {basis_ket(dA, d - 2), basis_ket(dB, d - 2), diff_ket(dC, d - 1, d)});
  out.put(base + 4, {basis_ket(dA, d - 2), diff_ket(dB, d - 1, d), basis_ket(dC, d - 2)});
  out.put(base + 5, {diff_ket(dA, 0, 1), basis_ket(dB, 0), basis_ket(dC, d + 1)});
  out.put(base + 6, {basis_ket(dA, d - 1), basis_ket(dB, d - 1), diff_ket(dC, d, d + 1)});
  out.put(base + 7, {uniform_ket(dA), uniform_ket(dB), uniform_ket(dC)});

  StateSet set{SystemShape{{dA, dB, dC}}, out.take(), "lemma2(d=" + std::to_string(d) + ")"};
  validate_state_set(set);
  return set;
}

StateSet theorem1_set(std::size_t n1, std::size_t n2, std::size_t n3) {
  if (n1 < 3) throw std::invalid_argument("theorem1_set: requires n1 >= 3");
  if (!(n1 <= n2 && n2 <= n3))
    throw std::invalid_argument("theorem1_set: requires n1 <= n2 <= n3");

  const std::size_t count = 2 * (n2 + n3 - 1) - n1;
  IndexedSet out(count);

  for (std::size_t i = 1; i <= n1 - 1; ++i) {
    out.put(i, {diff_ket(n1, 0, i), basis_ket(n2, 0), basis_ket(n3, i)});
    out.put(i + (n1 - 1), {basis_ket(n1, i), diff_ket(n2, 0, i), basis_ket(n3, 0)});
    out.put(i + 2 * (n1 - 1), {basis_ket(n1, 0), basis_ket(n2, i), diff_ket(n3, 0, i)});
  }
  for (std::size_t j = n1; j + 1 <= n2; ++j) {
    const std::size_t m = parity_marker(j);
    out.put(j + 2 * (n1 - 1), {diff_ket(n1, 0, 1), basis_ket(n2, 0), basis_ket(n3, j)});
    out.put(j + 2 * (n1 - 1) + (n2 - n1),
            {diff_ket(n1, 0, 1), basis_ket(n2, j), basis_ket(n3, 0)});
    out.put(j + 2 * (n1 - 1) + 2 * (n2 - n1),
            {basis_ket(n1, 0), basis_ket(n2, m), diff_ket(n3, j - 1, j)});
    out.put(j + 2 * (n1 - 1) + 3 * (n2 - n1),
            {basis_ket(n1, 0), diff_ket(n2, j - 1, j), basis_ket(n3, m)});
  }
  for (std::size_t k = n2; k + 1 <= n3; ++k) {
    const std::size_t m = parity_marker(k);
    out.put(k + 2 * (n1 - 1) + 3 * (n2 - n1),
            {diff_ket(n1, 0, 1), basis_ket(n2, 0), basis_ket(n3, k)});
    out.put(k - n1 + 2 * n2 + n3 - 2,
            {basis_ket(n1, 0), basis_ket(n2, m), diff_ket(n3, k - 1, k)});
  }
  out.put(count, {uniform_ket(n1), uniform_ket(n2), uniform_ket(n3)});

  StateSet set{SystemShape{{n1, n2, n3}}, out.take(),
               "theorem1(n1=" + std::to_string(n1) + ",n2=" + std::to_string(n2) +
                   ",n3=" + std::to_string(n3) + ")"};
  validate_state_set(set);
  return set;
}

BlockLayout block_schedule(std::size_t n, const SystemShape& dims) {
  if (n == 3)
    throw std::invalid_argument(
        "block_schedule: n = 3 has no block layout; use theorem1_set directly");
  if (n <= 6)
    throw std::invalid_argument("block_schedule: no construction for n in {4, 5, 6}; requires n > 6");
  if (dims.parties() != n)
    throw std::invalid_argument("block_schedule: dims must list exactly n dimensions");
  for (std::size_t d : dims.dims)
    if (d < 3)
      throw std::invalid_argument("block_schedule: every local dimension must be >= 3");

  BlockLayout layout;
  layout.n = n;
  layout.residue = static_cast<int>(n % 3);

  const std::size_t last_interior = n - 2 - static_cast<std::size_t>(layout.residue);
  for (std::size_t t = 1; t <= last_interior; t += 3) {
    Block b;
    b.id = t;
    b.host_parties = {t - 1, t, t + 1};
    b.group_parties = {t - 1, t, t + 1};
    layout.blocks.push_back(std::move(b));
  }
  if (layout.residue == 1) {
    // Final tripartite set on parties (1, 2, n); its own padding position is
    // party n alone.
    Block b;
    b.id = n;
    b.host_parties = {0, 1, n - 1};
    b.group_parties = {n - 1};
    layout.blocks.push_back(std::move(b));
  } else if (layout.residue == 2) {
    // Final tripartite set on parties (1, n-1, n); padding pair (n-1, n).
    Block b;
    b.id = n - 1;
    b.host_parties = {0, n - 2, n - 1};
    b.group_parties = {n - 2, n - 1};
    layout.blocks.push_back(std::move(b));
  }
  return layout;
}

std::vector<StopperPair> default_stoppers(const BlockLayout& layout, const SystemShape& dims) {
  std::vector<StopperPair> stoppers;
  stoppers.reserve(layout.blocks.size());
  for (const Block& block : layout.blocks) {
    StopperPair pair;
    for (std::size_t p : block.group_parties) {
      pair.a.push_back(basis_ket(dims.dims[p], 0));
      pair.b.push_back(basis_ket(dims.dims[p], 1));
    }
    stoppers.push_back(std::move(pair));
  }
  return stoppers;
}

namespace {

void validate_stoppers(const BlockLayout& layout, const SystemShape& dims,
                       const std::vector<StopperPair>& stoppers) {
  if (stoppers.size() != layout.blocks.size())
    throw std::invalid_argument("compose_multipartite: expected one stopper pair per block (" +
                                std::to_string(layout.blocks.size()) + "), got " +
                                std::to_string(stoppers.size()));
  for (std::size_t j = 0; j < stoppers.size(); ++j) {
    const Block& block = layout.blocks[j];
    const StopperPair& sp = stoppers[j];
    if (sp.a.size() != block.group_parties.size() || sp.b.size() != block.group_parties.size())
      throw std::invalid_argument("compose_multipartite: stopper pair for block " +
                                  std::to_string(j + 1) + " must have " +
                                  std::to_string(block.group_parties.size()) + " kets per side");
    Int prod = 1;
    for (std::size_t g = 0; g < block.group_parties.size(); ++g) {
      const std::size_t p = block.group_parties[g];
      validate_ket(sp.a[g]);
      validate_ket(sp.b[g]);
      if (sp.a[g].dim != dims.dims[p] || sp.b[g].dim != dims.dims[p])
        throw std::invalid_argument("compose_multipartite: stopper ket dimension mismatch on party " +
                                    std::to_string(p + 1));
      prod *= inner(sp.a[g], sp.b[g]);
    }
    if (prod != 0)
      throw std::invalid_argument("compose_multipartite: stopper pair for block " +
                                  std::to_string(j + 1) +
                                  " violates its orthogonality requirement");
  }
}

}  // namespace

StateSet compose_multipartite(const SystemShape& dims,
                              std::optional<std::vector<StopperPair>> stoppers) {
  const std::size_t n = dims.parties();
  const BlockLayout layout = block_schedule(n, dims);
  const std::vector<StopperPair> pads = stoppers ? std::move(*stoppers)
                                                 : default_stoppers(layout, dims);
  validate_stoppers(layout, dims, pads);

  const std::size_t nblocks = layout.blocks.size();
  std::vector<std::size_t> group_of(n), pos_in_group(n);
  for (std::size_t j = 0; j < nblocks; ++j) {
    const auto& group = layout.blocks[j].group_parties;
    for (std::size_t g = 0; g < group.size(); ++g) {
      group_of[group[g]] = j;
      pos_in_group[group[g]] = g;
    }
  }

  std::vector<ProductState> states;
  for (std::size_t j = 0; j < nblocks; ++j) {
    const Block& block = layout.blocks[j];
    const std::size_t a_group = (j + nblocks - 1) % nblocks;

    // theorem1_set wants ascending dimensions; sort the host parties for
    // construction and hand each ket back to its original party.
    std::array<std::size_t, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return dims.dims[block.host_parties[x]] < dims.dims[block.host_parties[y]];
    });
    const StateSet tri = theorem1_set(dims.dims[block.host_parties[order[0]]],
                                      dims.dims[block.host_parties[order[1]]],
                                      dims.dims[block.host_parties[order[2]]]);

    for (const ProductState& s : tri.states) {
      std::vector<Ket> locals(n);
      for (std::size_t i = 0; i < 3; ++i) locals[block.host_parties[order[i]]] = s.locals[i];
      for (std::size_t p = 0; p < n; ++p) {
        if (p == block.host_parties[0] || p == block.host_parties[1] ||
            p == block.host_parties[2])
          continue;
        const std::size_t g = group_of[p];
        const StopperPair& sp = pads[g];
        locals[p] = (g == a_group) ? sp.a[pos_in_group[p]] : sp.b[pos_in_group[p]];
      }
      states.push_back(ProductState{phi(states.size() + 1), std::move(locals)});
    }
  }

  std::string prov = "multipartite(dims=";
  for (std::size_t p = 0; p < n; ++p)
    prov += (p ? "," : "") + std::to_string(dims.dims[p]);
  prov += ")";

  StateSet set{dims, std::move(states), std::move(prov)};
  validate_state_set(set);

  // The guarantee is checked, not assumed: a bad (user-supplied) stopper
  // choice shows up here as a non-orthogonal pair.
  for (std::size_t x = 0; x < set.states.size(); ++x) {
    for (std::size_t y = x + 1; y < set.states.size(); ++y) {
      if (product_overlap(set.states[x], set.states[y]) != 0)
        throw std::invalid_argument("compose_multipartite: composed set is not orthogonal (" +
                                    set.states[x].label + ", " + set.states[y].label +
                                    "); check the supplied stopper pairs");
    }
  }
  return set;
}

}  // namespace nlps
