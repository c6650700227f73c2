// On-disk document formats and report rendering.
//
// Both documents are UTF-8 JSON with format_version "1" and integer payloads
// only (no floats). State coefficients and overlap/witness integers must fit
// in 64 bits on the wire; serialization throws std::domain_error otherwise.
//
//   StateSetDocument    { format_version, dims, provenance, states:
//                         [{label, parties: [[[index, coeff], ...], ...]}] }
//   CertificateDocument { format_version, provenance, dims, cardinality,
//                         orthogonal, violations, parties, conclusion,
//                         timing? }
//
// parse(serialize(set)) reproduces a StateSet exactly: labels, order and
// coefficients. Certificate parsing re-validates that the conclusion field
// is consistent with the orthogonality flag and the per-party verdicts.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlps/compare.hpp"
#include "nlps/core.hpp"
#include "nlps/verifier.hpp"

namespace nlps {

// Malformed document; the message carries the offending location.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

std::string serialize_state_set(const StateSet& set);
StateSet parse_state_set(const std::string& text);

// with_timing=false omits the wall-clock block so repeated runs on the same
// input are byte-identical.
std::string serialize_certificate(const Certificate& cert, bool with_timing = true);

struct ParsedViolationPair {
  std::string first;
  std::string second;
  Int overlap;
};

struct ParsedPartyReport {
  std::size_t party = 0;
  std::string name;
  std::size_t local_dim = 0;
  std::size_t constraint_rows = 0;
  std::size_t solution_dim = 0;
  std::string verdict;  // "Trivial" or "Nontrivial"
  std::optional<HermitianOp> witness;
};

struct ParsedCertificate {
  std::string provenance;
  std::vector<std::size_t> dims;
  std::size_t cardinality = 0;
  bool orthogonal = false;
  std::vector<ParsedViolationPair> violations;
  std::vector<ParsedPartyReport> parties;
  std::string conclusion;
};

ParsedCertificate parse_certificate(const std::string& text);

// Human-readable certificate summary.
std::string render_certificate_text(const Certificate& cert);

// Comparison tables. CSV header: params,ours,prior,prior_label,advantage
std::string render_table_text(const std::vector<ComparisonRow>& rows);
std::string render_table_csv(const std::vector<ComparisonRow>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nlps
