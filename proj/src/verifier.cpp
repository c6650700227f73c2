#include "nlps/verifier.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

namespace nlps {

std::size_t sym_index(std::size_t d, std::size_t p, std::size_t q) {
  if (p > q || q >= d) throw std::invalid_argument("sym_index: need p <= q < d");
  return p * d - p * (p - 1) / 2 + (q - p);
}

std::size_t asym_index(std::size_t d, std::size_t p, std::size_t q) {
  if (p >= q || q >= d) throw std::invalid_argument("asym_index: need p < q < d");
  return p * (d - 1) - p * (p - 1) / 2 + (q - p - 1);
}

bool is_identity_multiple(const HermitianOp& op) {
  const Int& lead = op.sym[0][0];
  if (lead == 0) return false;
  for (std::size_t p = 0; p < op.dim; ++p) {
    for (std::size_t q = 0; q < op.dim; ++q) {
      if (op.asym[p][q] != 0) return false;
      if (p == q ? op.sym[p][q] != lead : op.sym[p][q] != 0) return false;
    }
  }
  return true;
}

std::string to_string(Verdict v) { return v == Verdict::Trivial ? "Trivial" : "Nontrivial"; }

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::CertifiedFirstRoundTrivial: return "CertifiedFirstRoundTrivial";
    case Conclusion::OrthogonalityFailed: return "OrthogonalityFailed";
    case Conclusion::NontrivialMeasurementExists: return "NontrivialMeasurementExists";
  }
  return "?";
}

OrthogonalityReport check_orthogonality(const StateSet& set) {
  if (set.states.empty()) throw std::invalid_argument("check_orthogonality: empty set");
  OrthogonalityReport report;
  for (std::size_t a = 0; a < set.states.size(); ++a) {
    for (std::size_t b = a + 1; b < set.states.size(); ++b) {
      Int overlap = product_overlap(set.states[a], set.states[b]);
      if (overlap != 0)
        report.violations.push_back(
            {a, b, set.states[a].label, set.states[b].label, std::move(overlap)});
    }
  }
  return report;
}

namespace {

// Canonicalize a row and append it unless it is identically zero.
void push_row(std::vector<Int> row, RationalMatrix& out) {
  canonicalize_integer_vector(row);
  bool nonzero = false;
  for (const Int& e : row)
    if (e != 0) { nonzero = true; break; }
  if (!nonzero) return;
  std::vector<Rat> rrow;
  rrow.reserve(row.size());
  for (const Int& e : row) rrow.emplace_back(e);
  out.append_row(rrow);
}

// Collapses duplicate rows before elimination. Rows are already in
// canonical scale, so exact equality is the right comparison; the nullspace
// is unchanged.
RationalMatrix dedup_rows(const RationalMatrix& m) {
  RationalMatrix out(0, m.cols());
  std::set<std::vector<Rat>> seen;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Rat> row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m.at(r, c);
    if (seen.insert(row).second) out.append_row(row);
  }
  return out;
}

}  // namespace

ConstraintSystem constraint_system(const StateSet& set, std::size_t party) {
  if (party >= set.shape.parties())
    throw std::invalid_argument("constraint_system: party index out of range");

  const std::size_t d = set.shape.dims[party];
  ConstraintSystem cs;
  cs.party = party;
  cs.dim = d;
  cs.sym = RationalMatrix(0, d * (d + 1) / 2);
  cs.asym = RationalMatrix(0, d * (d - 1) / 2);

  for (std::size_t a = 0; a < set.states.size(); ++a) {
    for (std::size_t b = a + 1; b < set.states.size(); ++b) {
      const Int c = product_overlap(set.states[a], set.states[b], party);
      if (c == 0) continue;
      const auto& u = set.states[a].locals[party].coeffs;
      const auto& v = set.states[b].locals[party].coeffs;

      // Real part of c.<u|H|v>: constrains S only (kets are real).
      std::vector<Int> srow(d * (d + 1) / 2, Int(0));
      for (std::size_t p = 0; p < d; ++p) {
        srow[sym_index(d, p, p)] = c * u[p] * v[p];
        for (std::size_t q = p + 1; q < d; ++q)
          srow[sym_index(d, p, q)] = c * (u[p] * v[q] + u[q] * v[p]);
      }
      push_row(std::move(srow), cs.sym);

      // Imaginary part: constrains A only.
      if (d >= 2) {
        std::vector<Int> arow(d * (d - 1) / 2, Int(0));
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = p + 1; q < d; ++q)
            arow[asym_index(d, p, q)] = c * (u[p] * v[q] - u[q] * v[p]);
        push_row(std::move(arow), cs.asym);
      }
    }
  }
  return cs;
}

namespace {

HermitianOp op_from_sym_vector(std::size_t d, const std::vector<Int>& vec) {
  HermitianOp op{d, std::vector<std::vector<Int>>(d, std::vector<Int>(d, Int(0))),
                 std::vector<std::vector<Int>>(d, std::vector<Int>(d, Int(0)))};
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p; q < d; ++q) {
      op.sym[p][q] = vec[sym_index(d, p, q)];
      op.sym[q][p] = op.sym[p][q];
    }
  return op;
}

HermitianOp op_from_asym_vector(std::size_t d, const std::vector<Int>& vec) {
  HermitianOp op{d, std::vector<std::vector<Int>>(d, std::vector<Int>(d, Int(0))),
                 std::vector<std::vector<Int>>(d, std::vector<Int>(d, Int(0)))};
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) {
      op.asym[p][q] = vec[asym_index(d, p, q)];
      op.asym[q][p] = -op.asym[p][q];
    }
  return op;
}

HermitianBasis basis_from_constraints(const ConstraintSystem& cs) {
  HermitianBasis basis;
  basis.dim = cs.dim;
  for (const auto& vec : nullspace(dedup_rows(cs.sym)).vectors)
    basis.ops.push_back(op_from_sym_vector(cs.dim, vec));
  if (cs.dim >= 2) {
    for (const auto& vec : nullspace(dedup_rows(cs.asym)).vectors)
      basis.ops.push_back(op_from_asym_vector(cs.dim, vec));
  }
  return basis;
}

}  // namespace

HermitianBasis solution_space(const StateSet& set, std::size_t party) {
  return basis_from_constraints(constraint_system(set, party));
}

TrivialityVerdict check_first_round_triviality(const StateSet& set, std::size_t party) {
  const ConstraintSystem cs = constraint_system(set, party);
  HermitianBasis basis = basis_from_constraints(cs);

  TrivialityVerdict tv;
  tv.party = party;
  tv.local_dim = cs.dim;
  tv.constraint_rows = cs.total_rows();
  tv.solution_dim = basis.dimension();
  tv.verdict = tv.solution_dim == 1 ? Verdict::Trivial : Verdict::Nontrivial;
  if (tv.verdict == Verdict::Nontrivial) {
    for (auto& op : basis.ops) {
      if (!is_identity_multiple(op)) {
        tv.witness = std::move(op);
        break;
      }
    }
  }
  return tv;
}

Certificate certify_nonlocal(const StateSet& set, unsigned parallelism) {
  validate_state_set(set);
  if (set.states.empty()) throw std::invalid_argument("certify_nonlocal: empty set");

  using clock = std::chrono::steady_clock;
  const auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
  };
  const auto start = clock::now();

  Certificate cert;
  cert.provenance = set.provenance;
  cert.shape = set.shape;
  cert.cardinality = set.states.size();

  cert.orthogonality = check_orthogonality(set);
  cert.orthogonality_ms = ms_since(start);

  if (!cert.orthogonality.ok()) {
    cert.conclusion = Conclusion::OrthogonalityFailed;
    cert.total_ms = ms_since(start);
    return cert;
  }

  const std::size_t n = set.shape.parties();
  cert.verdicts.resize(n);
  cert.party_ms.assign(n, 0);

  unsigned workers = parallelism == 0 ? std::thread::hardware_concurrency() : parallelism;
  if (workers == 0) workers = 1;
  if (workers > n) workers = static_cast<unsigned>(n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t p = next.fetch_add(1);
      if (p >= n) return;
      try {
        const auto t0 = clock::now();
        cert.verdicts[p] = check_first_round_triviality(set, p);
        cert.party_ms[p] = ms_since(t0);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  bool all_trivial = true;
  for (const auto& tv : cert.verdicts)
    if (tv.verdict != Verdict::Trivial) all_trivial = false;
  cert.conclusion = all_trivial ? Conclusion::CertifiedFirstRoundTrivial
                                : Conclusion::NontrivialMeasurementExists;
  cert.total_ms = ms_since(start);
  return cert;
}

}  // namespace nlps
