#include "hopfcoh/io.hpp"

#include <fstream>
#include <sstream>

#include "hopfcoh/error.hpp"

namespace hopfcoh {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  fail(ErrorKind::Schema, (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    schema(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string sub(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }
std::string sub(const std::string& path, const char* key) { return path + "/" + key; }

void expect_array(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  if (j.size() != n) schema(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
}

GroupTable table_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of index rows");
  GroupTable t;
  for (std::size_t i = 0; i < j.size(); ++i) {
    expect_array(j[i], j.size(), sub(path, i));
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < j.size(); ++c) row.push_back(size_from_json(j[i][c], sub(sub(path, i), c)));
    t.push_back(std::move(row));
  }
  try {
    validate_group_table(t);
  } catch (const Error& e) {
    schema(path, e.what());
  }
  return t;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

Json ring_to_json(const RingSpec& k) {
  Json j;
  switch (k.kind()) {
    case RingKind::Integers: j["kind"] = "integers"; break;
    case RingKind::Rationals: j["kind"] = "rationals"; break;
    case RingKind::PrimeField: j["kind"] = "prime_field"; break;
    case RingKind::IntegersMod: j["kind"] = "integers_mod"; break;
  }
  j["modulus"] = k.modulus().get_str();
  return j;
}

RingSpec ring_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return RingSpec::parse(j.get<std::string>());
    const Json& kind = field(j, "kind", path);
    if (!kind.is_string()) schema(sub(path, "kind"), "expected a string");
    const std::string kname = kind.get<std::string>();
    mpz_class mod = 0;
    if (auto it = j.find("modulus"); it != j.end()) {
      if (it->is_string())
        mod = mpz_class(it->get<std::string>());
      else if (it->is_number_integer())
        mod = static_cast<long>(it->get<long long>());
      else
        schema(sub(path, "modulus"), "expected an integer");
    }
    if (kname == "integers" || kname == "Z") return RingSpec::integers();
    if (kname == "rationals" || kname == "Q") return RingSpec::rationals();
    if (kname == "prime_field" || kname == "F") return RingSpec::prime_field(mod);
    if (kname == "integers_mod" || kname == "Z/n") return RingSpec::integers_mod(mod);
    schema(sub(path, "kind"), "unknown ring kind '" + kname + "'");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    schema(path, e.what());
  } catch (const std::invalid_argument&) {
    schema(sub(path, "modulus"), "not an integer");
  }
}

std::string scalar_to_string(const mpq_class& x) { return x.get_str(); }

mpq_class scalar_from_json(const Json& j, const RingSpec& k, const std::string& path) {
  mpq_class x;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || x.set_str(s, 10) != 0) schema(path, "not an exact number: '" + s + "'");
    if (x.get_den() == 0) schema(path, "zero denominator");
    x.canonicalize();
  } else if (j.is_number_integer()) {
    x = static_cast<long>(j.get<long long>());
  } else {
    schema(path, "expected a string holding an integer or fraction");
  }
  if (k.is_integral() && x.get_den() != 1) {
    // Fractions are admitted over F_p and Z/n when the denominator is a unit.
    try {
      return k.canonical(x);
    } catch (const Error&) {
      schema(path, "fraction " + x.get_str() + " is not defined over " + k.name());
    }
  }
  return k.canonical(x);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const RingSpec& k, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of rows");
  const std::size_t r = j.size();
  const std::size_t c = r ? (j[0].is_array() ? j[0].size() : 0) : 0;
  Matrix m(k, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    expect_array(j[i], c, sub(path, i));
    for (std::size_t t = 0; t < c; ++t) m.set(i, t, scalar_from_json(j[i][t], k, sub(sub(path, i), t)));
  }
  return m;
}

Json vector_to_json(std::span<const mpq_class> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(scalar_to_string(x));
  return a;
}

std::vector<mpq_class> vector_from_json(const Json& j, const RingSpec& k, std::size_t n,
                                        const std::string& path) {
  expect_array(j, n, path);
  std::vector<mpq_class> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(scalar_from_json(j[i], k, sub(path, i)));
  return v;
}

Json hopf_to_json(const HopfAlgebraData& h) {
  const std::size_t d = h.rank();
  Json j;
  j["schema"] = "hopf-v1";
  j["ring"] = ring_to_json(h.ring());
  j["rank"] = d;
  j["basis"] = h.basis();
  Json mul = Json::array();
  for (std::size_t a = 0; a < d; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < d; ++b) row.push_back(vector_to_json(h.mul().col(a * d + b)));
    mul.push_back(std::move(row));
  }
  j["mul"] = std::move(mul);
  j["unit"] = vector_to_json(h.unit().col(0));
  Json comul = Json::array();
  for (std::size_t c = 0; c < d; ++c) {
    Matrix m(h.ring(), d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) m.set(a, b, h.comul().at(a * d + b, c));
    comul.push_back(matrix_to_json(m));
  }
  j["comul"] = std::move(comul);
  j["counit"] = vector_to_json(h.counit().row_span(0));
  j["antipode"] = matrix_to_json(h.antipode());
  return j;
}

HopfAlgebraData hopf_from_json(const Json& j, const std::string& path) {
  if (auto it = j.find("schema"); it != j.end() && *it != "hopf-v1")
    schema(sub(path, "schema"), "unsupported schema, expected hopf-v1");
  RingSpec k = ring_from_json(field(j, "ring", path), sub(path, "ring"));
  const std::size_t d = size_from_json(field(j, "rank", path), sub(path, "rank"));
  std::vector<std::string> basis;
  if (auto it = j.find("basis"); it != j.end()) {
    expect_array(*it, d, sub(path, "basis"));
    for (std::size_t i = 0; i < d; ++i) {
      if (!(*it)[i].is_string()) schema(sub(sub(path, "basis"), i), "expected a string");
      basis.push_back((*it)[i].get<std::string>());
    }
  } else {
    basis = default_basis(d);
  }
  const Json& jm = field(j, "mul", path);
  expect_array(jm, d, sub(path, "mul"));
  Matrix mul(k, d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    expect_array(jm[a], d, sub(sub(path, "mul"), a));
    for (std::size_t b = 0; b < d; ++b) {
      auto v = vector_from_json(jm[a][b], k, d, sub(sub(sub(path, "mul"), a), b));
      for (std::size_t c = 0; c < d; ++c) mul.set(c, a * d + b, v[c]);
    }
  }
  auto unit = vector_from_json(field(j, "unit", path), k, d, sub(path, "unit"));
  const Json& jc = field(j, "comul", path);
  expect_array(jc, d, sub(path, "comul"));
  Matrix comul(k, d * d, d);
  for (std::size_t c = 0; c < d; ++c) {
    const std::string p = sub(sub(path, "comul"), c);
    expect_array(jc[c], d, p);
    Matrix m = matrix_from_json(jc[c], k, p);
    if (m.cols() != d) schema(p, "expected a " + std::to_string(d) + " x " + std::to_string(d) + " matrix");
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) comul.set(a * d + b, c, m.at(a, b));
  }
  auto counit = vector_from_json(field(j, "counit", path), k, d, sub(path, "counit"));
  const Json& js = field(j, "antipode", path);
  expect_array(js, d, sub(path, "antipode"));
  Matrix s = matrix_from_json(js, k, sub(path, "antipode"));
  if (s.cols() != d) schema(sub(path, "antipode"), "expected a square matrix");
  try {
    return HopfAlgebraData::make(k, std::move(basis), std::move(mul), Matrix::column(k, unit), std::move(comul),
                                 Matrix::row(k, counit), std::move(s));
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Schema, path + ": " + e.what());
  }
}

GroupSchemeData group_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) return group_from_ref(j.get<std::string>());
  if (!j.is_object()) schema(path, "expected a group reference or object");
  if (!j.contains("constructor")) return {hopf_from_json(j, path), "file", "hopf-v1"};
  const Json& c = j["constructor"];
  if (!c.is_string()) schema(sub(path, "constructor"), "expected a string");
  const std::string name = c.get<std::string>();
  auto ring = [&] { return ring_from_json(field(j, "ring", path), sub(path, "ring")); };
  if (name == "constant")
    return constant_group_scheme(table_from_json(field(j, "table", path), sub(path, "table")), ring());
  if (name == "group-algebra")
    return {group_algebra(table_from_json(field(j, "table", path), sub(path, "table")), ring()), "group-algebra",
            "group-algebra"};
  if (name == "mu") return mu_n(size_from_json(field(j, "n", path), sub(path, "n")), ring());
  if (name == "alpha") {
    const std::size_t p = size_from_json(field(j, "p", path), sub(path, "p"));
    const std::size_t r = size_from_json(field(j, "r", path), sub(path, "r"));
    return alpha_pr(mpz_class(static_cast<unsigned long>(p)), r, ring());
  }
  if (name == "product") {
    const Json& f = field(j, "factors", path);
    expect_array(f, 2, sub(path, "factors"));
    return product(group_from_json(f[0], sub(sub(path, "factors"), std::size_t{0})),
                   group_from_json(f[1], sub(sub(path, "factors"), 1)));
  }
  if (name == "subgroup") {
    GroupSchemeData g = group_from_json(field(j, "of", path), sub(path, "of"));
    Matrix ideal = matrix_from_json(field(j, "ideal", path), g.hopf.ring(), sub(path, "ideal"));
    if (ideal.rows() != g.hopf.rank())
      schema(sub(path, "ideal"), "generators are columns of length " + std::to_string(g.hopf.rank()));
    return subgroup_from_ideal(g, ideal).sub;
  }
  schema(sub(path, "constructor"), "unknown constructor '" + name + "'");
}

GroupSchemeData group_from_ref(const std::string& ref) {
  if (starts_with(ref, "builtin:")) {
    const std::string body = ref.substr(8);
    const auto at = body.rfind('@');
    if (at == std::string::npos) fail(ErrorKind::Usage, "expected builtin:<name>@<ring>, got '" + ref + "'");
    return builtin_group(body.substr(0, at), RingSpec::parse(body.substr(at + 1)));
  }
  return group_from_json(read_json_file(ref), "");
}

Json comodule_to_json(const ComoduleData& v, const Json& over_ref) {
  Json j;
  j["over"] = over_ref.is_null() ? hopf_to_json(v.over) : over_ref;
  j["rank"] = v.rank;
  j["coaction"] = matrix_to_json(v.coaction);
  return j;
}

ComoduleData comodule_from_json(const Json& j, const std::string& path) {
  const Json& over = field(j, "over", path);
  HopfAlgebraData h = group_from_json(over, sub(path, "over")).hopf;
  const std::size_t m = size_from_json(field(j, "rank", path), sub(path, "rank"));
  const Json& jc = field(j, "coaction", path);
  expect_array(jc, m * h.rank(), sub(path, "coaction"));
  Matrix co = matrix_from_json(jc, h.ring(), sub(path, "coaction"));
  if (co.cols() != m) schema(sub(path, "coaction"), "expected " + std::to_string(m) + " columns");
  try {
    return make_comodule(h, std::move(co));
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

ComoduleData module_from_ref(const std::string& ref, const HopfAlgebraData& over) {
  std::string name = ref;
  const bool builtin = starts_with(name, "builtin:");
  if (builtin) name = name.substr(8);
  if (auto at = name.rfind('@'); at != std::string::npos) {
    if (RingSpec::parse(name.substr(at + 1)) != over.ring())
      fail(ErrorKind::Usage, "module ring " + name.substr(at + 1) + " differs from the group's " + over.ring().name());
    name = name.substr(0, at);
  }
  if (name == "regular") return regular_representation(over);
  if (name == "regular-left") return regular_representation(over, Side::Left);
  if (name == "trivial") return trivial_comodule(over, 1);
  if (starts_with(name, "trivial:")) {
    std::size_t m = 0;
    std::istringstream in(name.substr(8));
    if (!(in >> m) || !in.eof()) fail(ErrorKind::Usage, "trivial:<rank> expected, got '" + ref + "'");
    return trivial_comodule(over, m);
  }
  if (name == "sign") {
    auto s = sign_character(over);
    if (!s) fail(ErrorKind::Usage, "this group scheme has no sign character");
    return character_comodule(over, *s);
  }
  if (builtin) fail(ErrorKind::Usage, "unknown built-in module '" + ref + "'");
  ComoduleData v = comodule_from_json(read_json_file(ref), "");
  if (!(v.over == over)) fail(ErrorKind::Usage, "module '" + ref + "' is over a different Hopf algebra");
  return v;
}

Json presentation_to_json(const ModulePresentation& p) {
  Json j;
  j["free_rank"] = p.free_rank;
  Json f = Json::array();
  for (const auto& x : p.invariant_factors) f.push_back(x.get_str());
  j["invariant_factors"] = std::move(f);
  j["text"] = p.to_string();
  return j;
}

Json report_to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks()) {
    Json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    if (c.witness) e["witness"] = *c.witness;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  Json j;
  j["passed"] = r.passed();
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace hopfcoh
