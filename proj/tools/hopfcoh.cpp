// Command-line front end. Exit codes: 0 ok, 1 usage or input error, 2 a
// verification or theorem check failed.
#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "hopfcoh/cohomology.hpp"
#include "hopfcoh/error.hpp"
#include "hopfcoh/integrals.hpp"
#include "hopfcoh/io.hpp"
#include "hopfcoh/suites.hpp"

using namespace hopfcoh;

namespace {

struct VerificationFailed {
  Json record;
};

enum class Format { Json, Table };

// Plain-text rendering: nested keys as dotted paths, short arrays of scalars inline.
void render(std::ostream& os, const Json& j, const std::string& prefix) {
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const Json& a) {
    if (!a.is_array()) return false;
    for (const auto& v : a)
      if (v.is_object()) return false;
    return true;
  };
  auto inline_text = [&](auto&& self, const Json& v) -> std::string {
    if (!v.is_array()) return scalar(v);
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + self(self, v[i]);
    return s + "]";
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(os, v, prefix.empty() ? k : prefix + "." + k);
  } else if (flat(j)) {
    os << prefix << ": " << inline_text(inline_text, j) << "\n";
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) render(os, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    os << prefix << ": " << scalar(j) << "\n";
  }
}

void emit(const Json& j, Format f) {
  if (f == Format::Json)
    std::cout << j.dump(2) << "\n";
  else
    render(std::cout, j, "");
}

Json columns_to_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) a.push_back(vector_to_json(m.col(c)));
  return a;
}

bool is_builtin(const std::string& ref) { return ref.rfind("builtin:", 0) == 0; }

// A module reference whose "@ring" suffix names a quotient of the group's
// ring (Z/n, F_p over Z) is resolved over the base-changed Hopf algebra.
ComoduleData resolve_module(const std::string& ref, const HopfAlgebraData& h) {
  const auto at = ref.rfind('@');
  if (at != std::string::npos && ref.find(".json") == std::string::npos) {
    RingSpec k = RingSpec::parse(ref.substr(at + 1));
    if (k != h.ring()) return module_from_ref(ref, base_change(h, k));
  }
  return module_from_ref(ref, h);
}

Json comodule_with_ref(const ComoduleData& v, const std::string& group_ref) {
  return comodule_to_json(v, is_builtin(group_ref) && v.over.ring() == group_from_ref(group_ref).hopf.ring()
                                 ? Json(group_ref)
                                 : Json(nullptr));
}

SubgroupData resolve_subgroup(const std::string& which, const GroupSchemeData& g) {
  if (which == "trivial") return trivial_subgroup(g);
  if (which == "whole") return whole_subgroup(g);
  Json j = read_json_file(which);
  const Json& gens = j.is_object() && j.contains("ideal") ? j["ideal"] : j;
  return subgroup_from_ideal(g, matrix_from_json(gens, g.hopf.ring(), "/ideal"));
}

void fail_on(const VerificationReport& r, Json out) {
  if (!r.passed()) throw VerificationFailed{std::move(out)};
}

std::vector<mpq_class> parse_row(const std::string& text, const RingSpec& k) {
  std::vector<mpq_class> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(scalar_from_json(Json(tok), k, "/phi"));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology and integrals of finite flat group schemes"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name = "json";
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--format", format_name, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", seed, "seed for randomized checks");

  std::string input, group_ref, module_ref = "trivial", subgroup_spec = "trivial", phi_text, algebra, route;
  std::size_t max_degree = kDefaultMaxDegree, dmax = 6;
  std::vector<std::string> modules;
  bool summary = false;

  auto* verify = app.add_subcommand("verify", "check the axioms of a Hopf algebra or comodule");
  verify->add_option("input", input, "builtin:<name>@<ring> or a JSON file")->required();
  auto* build = app.add_subcommand("build", "construct a group scheme and print it as hopf-v1");
  build->add_option("input", input, "builtin:<name>@<ring> or a constructor JSON file")->required();

  auto* coh = app.add_subcommand("cohomology", "H^0 .. H^N of a comodule");
  coh->add_option("--group", group_ref)->required();
  coh->add_option("--module", module_ref);
  coh->add_option("--max-degree", max_degree);
  coh->add_flag("--summary", summary, "omit representatives");

  auto* cup = app.add_subcommand("cup", "products of cohomology generators");
  cup->add_option("--group", group_ref)->required();
  cup->add_option("--max-degree", max_degree);
  cup->add_option("--algebra", algebra, "trivial or regular: ring structure with these coefficients")
      ->check(CLI::IsMember({"trivial", "regular"}));
  cup->add_option("--route", route)->check(CLI::IsMember({"cross", "yoneda"}));

  auto* induce_cmd = app.add_subcommand("induce", "induce a comodule from a subgroup");
  auto* restrict_cmd = app.add_subcommand("restrict", "restrict a comodule to a subgroup");
  for (auto* c : {induce_cmd, restrict_cmd}) {
    c->add_option("--group", group_ref)->required();
    c->add_option("--subgroup", subgroup_spec, "trivial, whole, or a JSON file of ideal generators");
    c->add_option("--module", module_ref);
  }

  auto* integrals_cmd = app.add_subcommand("integrals", "left integrals and dual coinvariants");
  auto* frobenius_cmd = app.add_subcommand("frobenius", "Frobenius isomorphism and norm");
  auto* trace_cmd = app.add_subcommand("trace", "trace form of k[G]");
  for (auto* c : {integrals_cmd, frobenius_cmd, trace_cmd}) c->add_option("--group", group_ref)->required();

  auto* torsion_cmd = app.add_subcommand("bounded-torsion", "certify rank(k[G]) kills H^i, i > 0");
  torsion_cmd->add_option("--group", group_ref)->required();
  torsion_cmd->add_option("--max-degree", max_degree);
  torsion_cmd->add_option("--module", modules, "repeatable; default trivial, regular, sign");

  auto* pr_cmd = app.add_subcommand("power-reductivity", "least d with (S^d M)^G onto S^d k");
  pr_cmd->add_option("--group", group_ref)->required();
  pr_cmd->add_option("--module", module_ref)->required();
  pr_cmd->add_option("--phi", phi_text, "comma-separated row M -> k")->required();
  pr_cmd->add_option("--dmax", dmax);

  auto* suite_cmd = app.add_subcommand("suite", "run a bundled verification suite");
  suite_cmd->add_option("name", input)->required()->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const Format fmt = format_name == "json" ? Format::Json : Format::Table;

  try {
    Json out;
    if (*verify) {
      Json j = is_builtin(input) ? Json(input) : read_json_file(input);
      if (j.is_object() && j.contains("coaction")) {
        ComoduleData v = comodule_from_json(j);
        auto r = verify_comodule(v);
        out = {{"object", "comodule"}, {"report", report_to_json(r)}};
        fail_on(r, out);
      } else {
        GroupSchemeData g = group_from_json(j);
        auto r = verify_hopf(g.hopf);
        out = {{"object", "hopf"}, {"rank", g.hopf.rank()}, {"report", report_to_json(r)}};
        fail_on(r, out);
      }
    } else if (*build) {
      out = hopf_to_json(group_from_ref(input).hopf);
    } else if (*coh) {
      auto g = group_from_ref(group_ref);
      auto m = resolve_module(module_ref, g.hopf);
      Cohomology c(m, max_degree);
      Json degrees = Json::array();
      for (std::size_t n = 0; n <= max_degree; ++n) {
        Json e = presentation_to_json(c.presentation(n));
        e = Json{{"degree", n}, {"free_rank", e["free_rank"]}, {"invariant_factors", e["invariant_factors"]},
                 {"text", e["text"]}};
        if (!summary) e["representatives"] = columns_to_json(c.group(n).representatives());
        degrees.push_back(std::move(e));
      }
      out = {{"group", group_ref}, {"module", module_ref}, {"ring", m.over.ring().name()},
             {"cochains", "normalized"}, {"degrees", std::move(degrees)}};
    } else if (*cup) {
      auto g = group_from_ref(group_ref);
      if (!algebra.empty()) {
        GAlgebraData a = algebra == "trivial" ? trivial_galgebra(g.hopf) : regular_galgebra(g.hopf);
        std::optional<CohomologyRing::Route> r;
        if (route == "cross") r = CohomologyRing::Route::CrossProduct;
        if (route == "yoneda") r = CohomologyRing::Route::Yoneda;
        auto ring = algebra_cohomology_ring(a, max_degree, r);
        Json degrees = Json::array();
        for (std::size_t n = 0; n <= max_degree; ++n) {
          Json gens = Json::array();
          for (const auto& x : ring.generators[n]) gens.push_back(vector_to_json(x));
          Json rels = Json::array();
          for (const auto& x : ring.relations[n]) rels.push_back(vector_to_json(x));
          Json monos = Json::array();
          for (const auto& x : ring.monomials[n]) monos.push_back(x);
          degrees.push_back({{"degree", n},
                             {"group", ring.groups[n].to_string()},
                             {"generators", gens},
                             {"monomials", monos},
                             {"relations", rels}});
        }
        out = {{"group", group_ref},
               {"algebra", algebra},
               {"route", ring.route == CohomologyRing::Route::CrossProduct ? "cross" : "yoneda"},
               {"product_ranks", ring.product_ranks},
               {"degrees", degrees},
               {"report", report_to_json(ring.report)}};
        fail_on(ring.report, out);
      } else {
        Cohomology c(trivial_comodule(g.hopf, 1), max_degree);
        Json products = Json::array();
        for (std::size_t n = 0; n <= max_degree; ++n)
          for (std::size_t i = 0; i < c.group(n).representatives().cols(); ++i)
            for (std::size_t m = 0; n + m <= max_degree; ++m)
              for (std::size_t j = 0; j < c.group(m).representatives().cols(); ++j) {
                auto p = cup_product(c, c.generator(n, i), c.generator(m, j));
                products.push_back({{"x", {n, i}}, {"y", {m, j}}, {"product", vector_to_json(p.coordinates)}});
              }
        Json groups = Json::array();
        for (std::size_t n = 0; n <= max_degree; ++n) groups.push_back(c.presentation(n).to_string());
        out = {{"group", group_ref}, {"groups", groups}, {"products", products}};
      }
    } else if (*induce_cmd || *restrict_cmd) {
      auto g = group_from_ref(group_ref);
      auto sub = resolve_subgroup(subgroup_spec, g);
      if (*induce_cmd) {
        auto w = module_from_ref(module_ref, sub.sub.hopf);
        out = comodule_with_ref(induce(w, sub), group_ref);
      } else {
        auto v = module_from_ref(module_ref, g.hopf);
        out = comodule_to_json(restrict(v, sub));
      }
    } else if (*integrals_cmd) {
      auto h = group_from_ref(group_ref).hopf;
      out = {{"group", group_ref},
             {"left_integrals", columns_to_json(left_integrals(h.algebra()))},
             {"left_integrals_of_dual", columns_to_json(left_integrals(dual_hopf(h).algebra()))},
             {"dual_coinvariants", columns_to_json(dual_coinvariants(h))}};
    } else if (*frobenius_cmd) {
      auto fr = frobenius_isomorphism(group_from_ref(group_ref).hopf);
      out = {{"group", group_ref},
             {"psi", vector_to_json(fr.psi)},
             {"phi", matrix_to_json(fr.phi)},
             {"norm", vector_to_json(fr.norm)},
             {"report", report_to_json(fr.report)}};
    } else if (*trace_cmd) {
      auto tr = trace_map(group_from_ref(group_ref).hopf);
      out = {{"group", group_ref}, {"trace", vector_to_json(tr.trace.row_span(0))}, {"report", report_to_json(tr.report)}};
    } else if (*torsion_cmd) {
      auto h = group_from_ref(group_ref).hopf;
      if (modules.empty()) {
        modules = {"trivial", "regular"};
        if (sign_character(h)) modules.push_back("sign");
      }
      std::vector<std::pair<std::string, ComoduleData>> family;
      for (const auto& m : modules) family.push_back({m, resolve_module(m, h)});
      TorsionCertificate cert;
      try {
        cert = bounded_torsion_certificate(h, family, max_degree);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TheoremViolation) throw;
        throw VerificationFailed{{{"group", group_ref}, {"error", "theorem-violation"}, {"message", e.what()}}};
      }
      Json evidence = Json::array();
      for (const auto& ev : cert.evidence) {
        Json groups = Json::array();
        for (std::size_t i = 0; i < ev.groups.size(); ++i) {
          Json p = presentation_to_json(ev.groups[i]);
          p["degree"] = i + 1;
          groups.push_back(std::move(p));
        }
        evidence.push_back({{"module", ev.module}, {"annihilated", ev.annihilated}, {"groups", groups}});
      }
      out = {{"group", group_ref},
             {"n", cert.exponent.get_str()},
             {"justification", cert.justification},
             {"max_degree", max_degree},
             {"evidence", evidence},
             {"passed", cert.passed()}};
    } else if (*pr_cmd) {
      auto h = group_from_ref(group_ref).hopf;
      auto m = resolve_module(module_ref, h);
      auto row = parse_row(phi_text, m.over.ring());
      auto w = power_reductivity_witness(m, Matrix::row(m.over.ring(), row), dmax);
      Json images = Json::array();
      for (const auto& v : w.images) images.push_back(vector_to_json(v));
      out = {{"group", group_ref}, {"module", module_ref}, {"dmax", dmax},
             {"degree", w.degree ? Json(*w.degree) : Json(nullptr)}, {"images", images},
             {"conclusive", w.degree.has_value()}};
    } else if (*suite_cmd) {
      auto res = run_suite(input, seed);
      Json items = Json::array();
      for (const auto& it : res.items) {
        Json e{{"name", it.name}, {"passed", it.passed}};
        if (!it.passed) e["detail"] = it.detail;
        items.push_back(std::move(e));
      }
      out = {{"suite", res.name}, {"seed", seed}, {"passed", res.passed()}, {"items", items}};
      if (!res.passed()) throw VerificationFailed{out};
    }
    emit(out, fmt);
    return 0;
  } catch (const VerificationFailed& v) {
    emit(v.record, fmt);
    return 2;
  } catch (const Error& e) {
    Json rec{{"error", error_kind_name(e.kind())}, {"message", e.what()}};
    std::cerr << rec.dump() << "\n";
    switch (e.kind()) {
      case ErrorKind::TheoremViolation:
      case ErrorKind::InternalConsistency:
      case ErrorKind::HopfIdealViolation:
      case ErrorKind::ContainmentViolation:
        emit(rec, fmt);
        return 2;
      default:
        return 1;
    }
  }
}
