#include "nlps/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace nlps {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormatVersion = "1";

int64_t wire_int(const Int& x, const std::string& what) {
  if (!x.fits_slong_p())
    throw std::domain_error(what + " does not fit the document's 64-bit integer range");
  return static_cast<int64_t>(x.get_si());
}

Int parse_int(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) {
    const uint64_t u = j.get<uint64_t>();
    if (u > static_cast<uint64_t>(std::numeric_limits<int64_t>::max()))
      throw ParseError(where + ": integer out of range");
    return Int(static_cast<long>(u));
  }
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return Int(static_cast<long>(j.get<int64_t>()));
}

std::size_t parse_size(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<int64_t>() >= 0))
    throw ParseError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

void check_version(const json& j, const std::string& where) {
  const json& v = field(j, "format_version", where);
  if (!v.is_string() || v.get<std::string>() != kFormatVersion)
    throw ParseError(where + ": unsupported format_version (expected \"1\")");
}

json witness_to_json(const HermitianOp& op) {
  json re = json::array(), im = json::array();
  for (std::size_t p = 0; p < op.dim; ++p) {
    json re_row = json::array(), im_row = json::array();
    for (std::size_t q = 0; q < op.dim; ++q) {
      re_row.push_back({wire_int(op.sym[p][q], "witness entry"), 1});
      im_row.push_back({wire_int(op.asym[p][q], "witness entry"), 1});
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

// Reads a dense matrix of [numerator, denominator] pairs and clears
// denominators: the witness is only meaningful up to positive scale.
std::vector<std::vector<Rat>> parse_rational_matrix(const json& j, std::size_t d,
                                                    const std::string& where) {
  if (!j.is_array() || j.size() != d) throw ParseError(where + ": expected " +
                                                       std::to_string(d) + " rows");
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d));
  for (std::size_t p = 0; p < d; ++p) {
    if (!j[p].is_array() || j[p].size() != d)
      throw ParseError(where + ": row " + std::to_string(p) + " must have " + std::to_string(d) +
                       " entries");
    for (std::size_t q = 0; q < d; ++q) {
      const json& e = j[p][q];
      if (!e.is_array() || e.size() != 2)
        throw ParseError(where + ": entry must be a [numerator, denominator] pair");
      const Int num = parse_int(e[0], where);
      const Int den = parse_int(e[1], where);
      if (den == 0) throw ParseError(where + ": zero denominator");
      m[p][q] = Rat(num) / Rat(den);
    }
  }
  return m;
}

HermitianOp parse_witness(const json& j, std::size_t d, const std::string& where) {
  const auto re = parse_rational_matrix(field(j, "re", where), d, where + ".re");
  const auto im = parse_rational_matrix(field(j, "im", where), d, where + ".im");

  Int scale = 1;
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), re[p][q].get_den().get_mpz_t());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), im[p][q].get_den().get_mpz_t());
    }

  HermitianOp op{d, std::vector<std::vector<Int>>(d, std::vector<Int>(d)),
                 std::vector<std::vector<Int>>(d, std::vector<Int>(d))};
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      op.sym[p][q] = Rat(re[p][q] * scale).get_num();
      op.asym[p][q] = Rat(im[p][q] * scale).get_num();
    }
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      if (op.sym[p][q] != op.sym[q][p] || op.asym[p][q] != -op.asym[q][p])
        throw ParseError(where + ": witness is not Hermitian");
    }
  return op;
}

}  // namespace

std::string serialize_state_set(const StateSet& set) {
  validate_state_set(set);
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["dims"] = set.shape.dims;
  doc["provenance"] = set.provenance;
  json states = json::array();
  for (const ProductState& s : set.states) {
    json parties = json::array();
    for (const Ket& k : s.locals) {
      json terms = json::array();
      for (std::size_t i = 0; i < k.dim; ++i) {
        if (k.coeffs[i] != 0)
          terms.push_back({i, wire_int(k.coeffs[i], "coefficient of '" + s.label + "'")});
      }
      parties.push_back(std::move(terms));
    }
    states.push_back(json{{"label", s.label}, {"parties", std::move(parties)}});
  }
  doc["states"] = std::move(states);
  return doc.dump(2) + "\n";
}

StateSet parse_state_set(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("state set document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("state set document: top level must be an object");
  check_version(doc, "state set document");

  StateSet set;
  const json& dims = field(doc, "dims", "state set document");
  if (!dims.is_array()) throw ParseError("dims: expected an array");
  for (std::size_t p = 0; p < dims.size(); ++p)
    set.shape.dims.push_back(parse_size(dims[p], "dims[" + std::to_string(p) + "]"));

  if (auto it = doc.find("provenance"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("provenance: expected a string");
    set.provenance = it->get<std::string>();
  }

  const json& states = field(doc, "states", "state set document");
  if (!states.is_array()) throw ParseError("states: expected an array");
  for (std::size_t s = 0; s < states.size(); ++s) {
    const std::string where = "states[" + std::to_string(s) + "]";
    const json& js = states[s];
    if (!js.is_object()) throw ParseError(where + ": expected an object");
    ProductState state;
    const json& label = field(js, "label", where);
    if (!label.is_string()) throw ParseError(where + ".label: expected a string");
    state.label = label.get<std::string>();

    const json& parties = field(js, "parties", where);
    if (!parties.is_array() || parties.size() != set.shape.parties())
      throw ParseError(where + ".parties: expected " + std::to_string(set.shape.parties()) +
                       " party kets");
    for (std::size_t p = 0; p < parties.size(); ++p) {
      const std::string pwhere = where + ".parties[" + std::to_string(p) + "]";
      const json& jk = parties[p];
      if (!jk.is_array()) throw ParseError(pwhere + ": expected an array of [index, coeff] pairs");
      std::vector<std::pair<std::size_t, Int>> terms;
      for (const json& jt : jk) {
        if (!jt.is_array() || jt.size() != 2)
          throw ParseError(pwhere + ": each term must be an [index, coeff] pair");
        const std::size_t index = parse_size(jt[0], pwhere + " index");
        if (index >= set.shape.dims[p])
          throw ParseError(pwhere + ": basis index " + std::to_string(index) +
                           " out of range for dimension " + std::to_string(set.shape.dims[p]));
        terms.emplace_back(index, parse_int(jt[1], pwhere + " coefficient"));
      }
      try {
        state.locals.push_back(ket_from_terms(set.shape.dims[p], terms));
      } catch (const std::invalid_argument& e) {
        throw ParseError(pwhere + ": " + e.what());
      }
    }
    set.states.push_back(std::move(state));
  }

  try {
    validate_state_set(set);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("state set document: ") + e.what());
  }
  return set;
}

std::string serialize_certificate(const Certificate& cert, bool with_timing) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["provenance"] = cert.provenance;
  doc["dims"] = cert.shape.dims;
  doc["cardinality"] = cert.cardinality;
  doc["orthogonal"] = cert.orthogonality.ok();
  json violations = json::array();
  for (const auto& v : cert.orthogonality.violations) {
    violations.push_back(json{{"first", v.first_label},
                              {"second", v.second_label},
                              {"overlap", wire_int(v.overlap, "overlap")}});
  }
  doc["violations"] = std::move(violations);

  json parties = json::array();
  for (const auto& tv : cert.verdicts) {
    json p;
    p["party"] = tv.party;
    p["name"] = party_name(tv.party, cert.shape.parties());
    p["local_dim"] = tv.local_dim;
    p["constraint_rows"] = tv.constraint_rows;
    p["solution_dim"] = tv.solution_dim;
    p["verdict"] = to_string(tv.verdict);
    if (tv.witness) p["witness"] = witness_to_json(*tv.witness);
    parties.push_back(std::move(p));
  }
  doc["parties"] = std::move(parties);
  doc["conclusion"] = to_string(cert.conclusion);

  if (with_timing) {
    doc["timing"] = json{{"orthogonality_ms", cert.orthogonality_ms},
                         {"party_ms", cert.party_ms},
                         {"total_ms", cert.total_ms}};
  }
  return doc.dump(2) + "\n";
}

ParsedCertificate parse_certificate(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("certificate document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("certificate document: top level must be an object");
  check_version(doc, "certificate document");

  ParsedCertificate cert;
  const json& prov = field(doc, "provenance", "certificate document");
  if (!prov.is_string()) throw ParseError("provenance: expected a string");
  cert.provenance = prov.get<std::string>();

  const json& dims = field(doc, "dims", "certificate document");
  if (!dims.is_array()) throw ParseError("dims: expected an array");
  for (std::size_t p = 0; p < dims.size(); ++p)
    cert.dims.push_back(parse_size(dims[p], "dims[" + std::to_string(p) + "]"));

  cert.cardinality = parse_size(field(doc, "cardinality", "certificate document"), "cardinality");
  const json& orth = field(doc, "orthogonal", "certificate document");
  if (!orth.is_boolean()) throw ParseError("orthogonal: expected a boolean");
  cert.orthogonal = orth.get<bool>();

  const json& violations = field(doc, "violations", "certificate document");
  if (!violations.is_array()) throw ParseError("violations: expected an array");
  for (const json& jv : violations) {
    ParsedViolationPair v;
    v.first = field(jv, "first", "violation").get<std::string>();
    v.second = field(jv, "second", "violation").get<std::string>();
    v.overlap = parse_int(field(jv, "overlap", "violation"), "violation overlap");
    cert.violations.push_back(std::move(v));
  }
  if (cert.orthogonal != cert.violations.empty())
    throw ParseError("certificate document: orthogonal flag contradicts the violation list");

  const json& parties = field(doc, "parties", "certificate document");
  if (!parties.is_array()) throw ParseError("parties: expected an array");
  for (std::size_t i = 0; i < parties.size(); ++i) {
    const std::string where = "parties[" + std::to_string(i) + "]";
    const json& jp = parties[i];
    ParsedPartyReport report;
    report.party = parse_size(field(jp, "party", where), where + ".party");
    report.name = field(jp, "name", where).get<std::string>();
    report.local_dim = parse_size(field(jp, "local_dim", where), where + ".local_dim");
    report.constraint_rows =
        parse_size(field(jp, "constraint_rows", where), where + ".constraint_rows");
    report.solution_dim = parse_size(field(jp, "solution_dim", where), where + ".solution_dim");
    report.verdict = field(jp, "verdict", where).get<std::string>();
    if (report.verdict != "Trivial" && report.verdict != "Nontrivial")
      throw ParseError(where + ".verdict: expected Trivial or Nontrivial");
    if ((report.verdict == "Trivial") != (report.solution_dim == 1))
      throw ParseError(where + ": verdict contradicts solution_dim");
    if (auto it = jp.find("witness"); it != jp.end())
      report.witness = parse_witness(*it, report.local_dim, where + ".witness");
    cert.parties.push_back(std::move(report));
  }

  const json& conclusion = field(doc, "conclusion", "certificate document");
  if (!conclusion.is_string()) throw ParseError("conclusion: expected a string");
  cert.conclusion = conclusion.get<std::string>();

  bool all_trivial = !cert.parties.empty();
  for (const auto& p : cert.parties)
    if (p.verdict != "Trivial") all_trivial = false;

  std::string expected;
  if (!cert.orthogonal)
    expected = "OrthogonalityFailed";
  else if (all_trivial)
    expected = "CertifiedFirstRoundTrivial";
  else
    expected = "NontrivialMeasurementExists";
  if (cert.conclusion != expected)
    throw ParseError("certificate document: conclusion '" + cert.conclusion +
                     "' is inconsistent with its contents (expected '" + expected + "')");
  return cert;
}

std::string render_certificate_text(const Certificate& cert) {
  std::ostringstream out;
  out << "set: " << cert.provenance << "\n";
  out << "shape: (";
  for (std::size_t p = 0; p < cert.shape.parties(); ++p)
    out << (p ? ", " : "") << cert.shape.dims[p];
  out << ")\n";
  out << "states: " << cert.cardinality << "\n";
  out << "orthogonal: " << (cert.orthogonality.ok() ? "yes" : "no") << "\n";
  for (const auto& v : cert.orthogonality.violations)
    out << "  violation: <" << v.first_label << "|" << v.second_label
        << "> = " << to_string(v.overlap) << "\n";
  for (const auto& tv : cert.verdicts) {
    out << "party " << party_name(tv.party, cert.shape.parties()) << ": dim " << tv.local_dim
        << ", " << tv.constraint_rows << " constraint rows, solution dimension "
        << tv.solution_dim << " -> " << to_string(tv.verdict) << "\n";
    if (tv.witness) {
      out << "  witness (re | im):\n";
      for (std::size_t p = 0; p < tv.witness->dim; ++p) {
        out << "   ";
        for (std::size_t q = 0; q < tv.witness->dim; ++q)
          out << " " << to_string(tv.witness->sym[p][q]);
        out << "  |";
        for (std::size_t q = 0; q < tv.witness->dim; ++q)
          out << " " << to_string(tv.witness->asym[p][q]);
        out << "\n";
      }
    }
  }
  out << "conclusion: " << to_string(cert.conclusion) << "\n";
  return out.str();
}

std::string render_table_text(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "params        ours   prior  advantage  prior formula\n";
  for (const auto& row : rows) {
    if (row.error) {
      out << row.params << "  error: " << *row.error << "\n";
      continue;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-12s %6lld %7lld %10lld  %s", row.params.c_str(), row.ours,
                  row.prior, row.advantage, row.prior_label.c_str());
    out << buf << "\n";
  }
  return out.str();
}

std::string render_table_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "params,ours,prior,prior_label,advantage\n";
  for (const auto& row : rows) {
    if (row.error) {
      out << row.params << ",error,error," << row.prior_label << ",error\n";
    } else {
      out << row.params << "," << row.ours << "," << row.prior << "," << row.prior_label << ","
          << row.advantage << "\n";
    }
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing file: " + path);
}

}  // namespace nlps
