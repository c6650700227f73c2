#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nlps/constructions.hpp"
#include "nlps/io.hpp"
#include "nlps/verifier.hpp"

using namespace nlps;

namespace {

StateSet random_set(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> parties_pick(3, 5);
  std::uniform_int_distribution<std::size_t> dim_pick(2, 5);
  std::uniform_int_distribution<std::size_t> count_pick(1, 6);
  std::uniform_int_distribution<long> coeff_pick(-1000, 1000);

  StateSet set;
  const std::size_t parties = parties_pick(rng);
  for (std::size_t p = 0; p < parties; ++p) set.shape.dims.push_back(dim_pick(rng));
  set.provenance = "user";

  const std::size_t count = count_pick(rng);
  for (std::size_t s = 0; s < count; ++s) {
    ProductState state;
    state.label = "state_" + std::to_string(s + 1);
    for (std::size_t p = 0; p < parties; ++p) {
      Ket k{set.shape.dims[p], std::vector<Int>(set.shape.dims[p], Int(0))};
      bool nonzero = false;
      while (!nonzero) {
        for (auto& c : k.coeffs) {
          c = Int(coeff_pick(rng));
          if (c != 0) nonzero = true;
        }
      }
      state.locals.push_back(std::move(k));
    }
    set.states.push_back(std::move(state));
  }
  return set;
}

bool sets_equal(const StateSet& a, const StateSet& b) {
  if (a.shape != b.shape || a.provenance != b.provenance || a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a.states[s].label != b.states[s].label) return false;
    for (std::size_t p = 0; p < a.shape.parties(); ++p)
      if (a.states[s].locals[p].coeffs != b.states[s].locals[p].coeffs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("state set serialization round-trips 200 randomized documents") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 200; ++trial) {
    const StateSet set = random_set(rng);
    const StateSet back = parse_state_set(serialize_state_set(set));
    CHECK(sets_equal(set, back));
  }
}

TEST_CASE("construction sets round-trip exactly") {
  for (const StateSet& set :
       {lemma1_set(4), lemma2_set(3), theorem1_set(3, 4, 5),
        compose_multipartite(SystemShape{std::vector<std::size_t>(7, 3)})}) {
    const StateSet back = parse_state_set(serialize_state_set(set));
    CHECK(sets_equal(set, back));
  }
}

TEST_CASE("serialization is deterministic") {
  const StateSet set = lemma2_set(3);
  CHECK(serialize_state_set(set) == serialize_state_set(set));
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parse_state_set("not json"), ParseError);
  CHECK_THROWS_WITH_AS(parse_state_set("{}"), doctest::Contains("format_version"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_state_set(R"({"format_version":"2","dims":[2,2,2],"states":[]})"),
      doctest::Contains("format_version"), ParseError);

  // Basis index out of range is located precisely.
  const std::string bad_index = R"({
    "format_version": "1", "dims": [2, 2, 2],
    "states": [{"label": "s", "parties": [[[0, 1]], [[0, 1]], [[2, 1]]]}]
  })";
  CHECK_THROWS_WITH_AS(parse_state_set(bad_index), doctest::Contains("states[0].parties[2]"),
                       ParseError);

  // Duplicate labels violate the StateSet invariant.
  const std::string dup = R"({
    "format_version": "1", "dims": [2, 2, 2],
    "states": [
      {"label": "s", "parties": [[[0, 1]], [[0, 1]], [[0, 1]]]},
      {"label": "s", "parties": [[[1, 1]], [[1, 1]], [[1, 1]]]}
    ]
  })";
  CHECK_THROWS_WITH_AS(parse_state_set(dup), doctest::Contains("duplicate label"), ParseError);

  // All-zero ket.
  const std::string zero = R"({
    "format_version": "1", "dims": [2, 2, 2],
    "states": [{"label": "s", "parties": [[[0, 1], [0, -1]], [[0, 1]], [[0, 1]]]}]
  })";
  CHECK_THROWS_AS(parse_state_set(zero), ParseError);

  // Wrong party count.
  const std::string missing_party = R"({
    "format_version": "1", "dims": [2, 2, 2],
    "states": [{"label": "s", "parties": [[[0, 1]], [[0, 1]]]}]
  })";
  CHECK_THROWS_WITH_AS(parse_state_set(missing_party), doctest::Contains("parties"), ParseError);
}

TEST_CASE("parse rejects shapes outside the supported range") {
  const std::string two_parties = R"({
    "format_version": "1", "dims": [2, 2],
    "states": [{"label": "s", "parties": [[[0, 1]], [[0, 1]]]}]
  })";
  CHECK_THROWS_WITH_AS(parse_state_set(two_parties), doctest::Contains("three parties"),
                       ParseError);

  const std::string dim_one = R"({
    "format_version": "1", "dims": [1, 2, 2],
    "states": [{"label": "s", "parties": [[[0, 1]], [[0, 1]], [[0, 1]]]}]
  })";
  CHECK_THROWS_WITH_AS(parse_state_set(dim_one), doctest::Contains(">= 2"), ParseError);
}

TEST_CASE("certificate serialization and re-validating parse") {
  const Certificate cert = certify_nonlocal(lemma1_set(3));
  const std::string doc = serialize_certificate(cert);
  const ParsedCertificate parsed = parse_certificate(doc);
  CHECK(parsed.conclusion == "CertifiedFirstRoundTrivial");
  CHECK(parsed.cardinality == 7);
  CHECK(parsed.orthogonal);
  REQUIRE(parsed.parties.size() == 3);
  for (const auto& p : parsed.parties) {
    CHECK(p.verdict == "Trivial");
    CHECK(p.solution_dim == 1);
    CHECK_FALSE(p.witness.has_value());
  }
}

TEST_CASE("machine output is byte-identical without timing") {
  const StateSet set = lemma1_set(3);
  const std::string a = serialize_certificate(certify_nonlocal(set), false);
  const std::string b = serialize_certificate(certify_nonlocal(set), false);
  CHECK(a == b);
  CHECK(a.find("timing") == std::string::npos);
}

TEST_CASE("witness operators serialize as rational pairs and parse back") {
  StateSet single{SystemShape{{2, 2, 2}},
                  {ProductState{"s", {basis_ket(2, 0), basis_ket(2, 0), basis_ket(2, 0)}}},
                  "single"};
  const Certificate cert = certify_nonlocal(single);
  CHECK(cert.conclusion == Conclusion::NontrivialMeasurementExists);
  const ParsedCertificate parsed = parse_certificate(serialize_certificate(cert));
  bool witness_seen = false;
  for (const auto& p : parsed.parties) {
    if (!p.witness) continue;
    witness_seen = true;
    CHECK(p.witness->dim == 2);
    CHECK_FALSE(is_identity_multiple(*p.witness));
  }
  CHECK(witness_seen);
}

TEST_CASE("certificate parse rejects an inconsistent conclusion") {
  const Certificate cert = certify_nonlocal(lemma1_set(3));
  std::string doc = serialize_certificate(cert);
  const auto pos = doc.find("CertifiedFirstRoundTrivial");
  REQUIRE(pos != std::string::npos);
  doc.replace(pos, std::string("CertifiedFirstRoundTrivial").size(),
              "NontrivialMeasurementExists");
  CHECK_THROWS_WITH_AS(parse_certificate(doc), doctest::Contains("inconsistent"), ParseError);
}

TEST_CASE("certificate of a non-orthogonal set round-trips violations") {
  StateSet broken = lemma1_set(3);
  broken.states.push_back(broken.states.front());
  broken.states.back().label = "phi_dup";
  const Certificate cert = certify_nonlocal(broken);
  const ParsedCertificate parsed = parse_certificate(serialize_certificate(cert));
  CHECK(parsed.conclusion == "OrthogonalityFailed");
  CHECK_FALSE(parsed.orthogonal);
  REQUIRE(parsed.violations.size() == 1);
  CHECK(parsed.violations[0].first == "phi_1");
  CHECK(parsed.violations[0].second == "phi_dup");
  CHECK(parsed.violations[0].overlap == 2);
}

TEST_CASE("comparison tables render as text and CSV") {
  std::vector<CompareParams> grid = {MultipartiteParams{9, 3}};
  const auto rows = comparison_table(grid);
  CHECK(render_table_csv(rows) == "params,ours,prior,prior_label,advantage\n9x3,21,28,n(2d-3)+1,7\n");
  const std::string text = render_table_text(rows);
  CHECK(text.find("9x3") != std::string::npos);
  CHECK(text.find("21") != std::string::npos);

  const std::vector<ComparisonRow> none;
  CHECK(render_table_csv(none) == "params,ours,prior,prior_label,advantage\n");
}

TEST_CASE("oversized coefficients are rejected at serialization time") {
  StateSet set{SystemShape{{2, 2, 2}},
               {ProductState{"big", {basis_ket(2, 0), basis_ket(2, 0), basis_ket(2, 0)}}},
               "user"};
  set.states[0].locals[0].coeffs[0] = Int("123456789123456789123456789");
  CHECK_THROWS_AS(serialize_state_set(set), std::domain_error);
}
