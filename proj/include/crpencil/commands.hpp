#pragma once

// Subcommand implementations. Each returns a JSON report and an exit code:
// 0 pass, 2 failed mathematical check, 1 input error (thrown as InputError).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "crpencil/bounds.hpp"
#include "crpencil/examples.hpp"
#include "crpencil/io.hpp"
#include "crpencil/latin.hpp"
#include "crpencil/resonance.hpp"

#ifndef CRPENCIL_VERSION
#define CRPENCIL_VERSION "0.0.0"
#endif

namespace crpencil {

struct AnalysisConfig {
  std::uint64_t seed = 1;
  int samples = 16;
  long sample_bound = kDefaultSampleBound;
  int degree_cap = kDefaultDegreeCap;
  bool symbolic = false;
  int trials = kDefaultMaximalityTrials;
  std::size_t search_cap = kDefaultSearchCap;

  void validate() const {
    if (samples < 1) throw InputError("--samples must be positive");
    if (sample_bound < 1) throw InputError("--sample-bound must be positive");
    if (degree_cap < 1) throw InputError("--degree-cap must be positive");
    if (trials < 1) throw InputError("--trials must be positive");
  }
};

struct CommandResult {
  json report;
  int exit_code = 0;
  std::vector<std::string> lines;  // text summary

  std::string text() const {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
  }
};

namespace detail {

inline json config_json(const AnalysisConfig& c) {
  return {{"samples", c.samples},       {"sample_bound", c.sample_bound}, {"degree_cap", c.degree_cap},
          {"symbolic", c.symbolic},     {"maximality_trials", c.trials},  {"search_cap", c.search_cap}};
}

inline CommandResult start(const std::string& command, const AnalysisConfig& c) {
  CommandResult r;
  r.report = {{"tool", "crpencil"},   {"version", CRPENCIL_VERSION},      {"command", command},
              {"seed", c.seed},       {"config", config_json(c)},         {"certificates", json::object()}};
  r.lines.push_back("crpencil " + command);
  return r;
}

inline void finish(CommandResult& r, bool ok) {
  r.exit_code = ok ? 0 : 2;
  r.report["status"] = ok ? "pass" : "fail";
  r.lines.push_back(std::string("status: ") + (ok ? "pass" : "fail"));
}

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline json params_json(const PencilParam& p) { return json::array({to_json(p.first), to_json(p.second)}); }

inline json members_json(const std::vector<int>& m) { return m; }

inline json gauss_json(const GaussVerdict& g) {
  json o = {{"verdict", GaussVerdict::name(g.kind)}, {"samples_evaluated", g.samples}, {"sample_bound", g.bound},
            {"seed", g.seed},                        {"degree_of_D_at_most", g.degree_bound}};
  if (g.witness) o["witness"] = to_json(*g.witness);
  if (g.value) o["D_at_witness"] = to_json(*g.value);
  if (g.kind == GaussVerdict::DegenerateLikely) {
    std::ostringstream os;
    os.precision(6);
    os << g.failure_bound;
    o["failure_probability_bound"] = os.str();
  }
  return o;
}

inline json cr_bound_json(const CRBoundReport& b) {
  json o = {{"n", b.n},         {"d", b.d},         {"k", b.k},
            {"excess", b.excess}, {"lhs", b.lhs},   {"rhs", b.rhs},
            {"holds", b.holds}, {"max_k_any_d", b.max_k_any_d}};
  o["max_k_for_d"] = b.max_k_for_d ? json(*b.max_k_for_d) : json(nullptr);
  o["min_d_for_k"] = b.min_d_for_k ? json(*b.min_d_for_k) : json(nullptr);
  return o;
}

inline json candidate_json(const OSDegree2& os, const ResonanceCandidate& c, const MaximalityResult& mx,
                           const DimensionBoundReport& db) {
  json basis = json::array();
  for (const auto& v : c.basis) basis.push_back(to_json(v));
  json clauses = json::array();
  for (const auto& cl : db.clauses)
    clauses.push_back({{"clause", cl.text}, {"applies", cl.applies}, {"satisfied", cl.satisfied}});
  json o = {{"provenance", c.provenance},
            {"dim", c.dim()},
            {"projective_dim", db.projective_dim},
            {"basis", basis},
            {"independent", c.independent},
            {"isotropic", c.isotropic},
            {"resonant", c.resonant},
            {"coordinate_sums_vanish", c.sums_vanish},
            {"maximal", mx.maximal},
            {"maximality_kernel_dims", mx.kernel_dims},
            {"support", db.support},
            {"support_rank", db.support_rank},
            {"clauses", clauses},
            {"counterexample_alarm", db.alarm}};
  if (!c.flat_members.empty()) o["flat"] = c.flat_members;
  (void)os;
  return o;
}

inline bool candidate_ok(const ResonanceCandidate& c, const MaximalityResult& mx, const DimensionBoundReport& db) {
  return c.independent && c.isotropic && c.resonant && c.sums_vanish && mx.maximal && !db.alarm;
}

inline json steps_json(const MixedBoundReport& r) {
  json a = json::array();
  for (const auto& s : r.steps)
    a.push_back({{"step", s.name},
                 {"lhs", to_string(s.lhs)},
                 {"relation", s.relation},
                 {"rhs", to_string(s.rhs)},
                 {"applicable", s.applicable},
                 {"holds", s.holds}});
  return a;
}

}  // namespace detail

inline CommandResult cmd_check_multinet(const std::string& path, const AnalysisConfig& cfg) {
  cfg.validate();
  const Arrangement arr = arrangement_from_json(read_json_file(path));
  if (!arr.has_classes() || arr.num_classes() < 2) throw InputError("check-multinet needs class labels with k >= 2");
  CommandResult r = detail::start("check-multinet", cfg);
  const MultinetReport rep = multinet_check(arr);
  json flats_j = json::array(), viol = json::array();
  for (const auto& fb : rep.base_flats)
    flats_j.push_back({{"members", fb.flat.members}, {"class_sums", fb.class_sums}, {"balanced", fb.balanced}});
  for (int v : rep.violations) viol.push_back(flats_j[v]);
  json res = {{"hyperplanes", arr.size()},
              {"k", rep.k},
              {"class_degrees", rep.class_degrees},
              {"degrees_balanced", rep.degrees_balanced},
              {"base_flats", flats_j},
              {"is_net", rep.is_net},
              {"passes", rep.passes}};
  r.report["certificates"]["violations"] = viol;
  r.lines.push_back("hyperplanes: " + std::to_string(arr.size()) + ", classes: " + std::to_string(rep.k));
  r.lines.push_back("class degrees balanced: " + detail::yes(rep.degrees_balanced));
  r.lines.push_back("base-locus flats: " + std::to_string(rep.base_flats.size()) +
                    ", violations: " + std::to_string(rep.violations.size()));
  r.lines.push_back("multinet: " + detail::yes(rep.passes) + ", net: " + detail::yes(rep.is_net));
  bool ok = rep.passes;

  if (arr.nvars > 3) {
    auto sec = generic_plane_section(arr, cfg.seed);
    json s = {{"seed", cfg.seed}, {"found", sec.has_value()}};
    if (sec) {
      const bool sec_pass = multinet_check(*sec).passes;
      s["passes"] = sec_pass;
      s["agrees"] = sec_pass == rep.passes;
      ok = ok && sec_pass == rep.passes;
      r.lines.push_back("plane-section cross-check agrees: " + detail::yes(sec_pass == rep.passes));
    }
    res["plane_section"] = s;
  }

  if (rep.k == 3 && rep.is_net) {
    const LatinSquare sq = latin_square(arr);
    json iso = json::object();
    std::vector<GroupSpec> groups{{GroupSpec::Cyclic, sq.order}};
    if (sq.order % 2 == 0) groups.push_back({GroupSpec::Dihedral, sq.order / 2});
    for (const auto& g : groups) iso[g.name()] = isotopy_to_group_table(sq, g);
    res["latin_square"] = {{"order", sq.order},       {"cells", to_json(sq)},
                           {"text", sq.to_text()},    {"latin", sq.is_latin()},
                           {"commutative", sq.is_commutative()}, {"isotopic_to", iso}};
    ok = ok && sq.is_latin();
    r.lines.push_back("Latin square of order " + std::to_string(sq.order) + ":");
    std::istringstream rows(sq.to_text());
    for (std::string line; std::getline(rows, line);) r.lines.push_back("  " + line);
    for (auto it = iso.begin(); it != iso.end(); ++it)
      r.lines.push_back("isotopic to " + it.key() + ": " + detail::yes(it.value().get<bool>()));
  }
  r.report["result"] = res;
  detail::finish(r, ok);
  return r;
}

inline CommandResult cmd_analyze_pencil(const std::string& path, const AnalysisConfig& cfg) {
  cfg.validate();
  const PencilInput in = pencil_from_json(read_json_file(path), cfg.degree_cap);
  CommandResult r = detail::start("analyze-pencil", cfg);
  json res, cert = json::object();
  CRFiberSet crs;
  try {
    crs = CRFiberSet::certify(in.pencil, in.extra, cfg.degree_cap);
  } catch (const PencilError& e) {
    res["certification_error"] = e.what();
    r.report["result"] = res;
    r.lines.push_back(std::string("fiber certification failed: ") + e.what());
    detail::finish(r, false);
    return r;
  }
  json params = json::array();
  for (const auto& p : crs.params) params.push_back(detail::params_json(p));
  cert["membership_parameters"] = params;
  const int n = crs.pencil.n();
  res["n"] = n;
  res["pencil_degree"] = crs.pencil.d;
  res["k"] = crs.k();
  res["excess"] = crs.excess();
  res["hyperplanes"] = crs.arrangement().size();
  r.lines.push_back("n = " + std::to_string(n) + ", d = " + std::to_string(crs.pencil.d) +
                    ", k = " + std::to_string(crs.k()));

  FoliationForm w;
  try {
    w = omega_reduced(crs, cfg.degree_cap);
  } catch (const DivisionFailed& e) {
    res["polynomial_form"] = {{"polynomial", false}, {"error", e.what()}};
    r.report["result"] = res;
    r.report["certificates"] = cert;
    r.lines.push_back(std::string("reduced form is not polynomial: ") + e.what());
    detail::finish(r, false);
    return r;
  }
  json divs = json::array();
  for (const auto& d : w.divisions) divs.push_back(d.label);
  res["polynomial_form"] = {{"polynomial", true}, {"divisions", divs}};
  cert["omega"] = to_json(w.omega);
  res["foliation_degree"] = w.degree;
  r.lines.push_back("foliation degree: " + std::to_string(w.degree));
  bool ok = true;

  const bool euler = euler_contract(w.omega).is_zero();
  const bool integrable = is_integrable(w.omega);
  res["axioms"] = {{"euler_contraction_zero", euler}, {"integrable", integrable}};
  ok = ok && euler && integrable;
  r.lines.push_back("i_R omega = 0: " + detail::yes(euler) + ", omega ^ d omega = 0: " + detail::yes(integrable));

  json pi = {{"checked", w.independence_constant.has_value() || crs.k() >= 3}, {"holds", w.generator_independence}};
  if (w.independence_constant) pi["constant"] = to_json(*w.independence_constant);
  res["generator_independence"] = pi;
  ok = ok && w.generator_independence;

  const Arrangement arr = crs.arrangement();
  json not_inv = json::array();
  for (std::size_t i = 0; i < arr.size(); ++i)
    if (!invariant_hyperplane(w.omega, arr.hyperplanes[i])) not_inv.push_back(i);
  res["hyperplane_invariance"] = {{"all_invariant", not_inv.empty()}, {"failures", not_inv}};
  ok = ok && not_inv.empty();
  r.lines.push_back("every fiber hyperplane invariant: " + detail::yes(not_inv.empty()));

  const JacobianReport jac = jacobian_and_divisibility(w.omega, crs.Q(), cfg.degree_cap);
  json piv = {{"computed", jac.computed}, {"exponent", jac.exponent}};
  if (!jac.computed) piv["notice"] = jac.notice;
  if (jac.computed) {
    piv["D_zero"] = jac.d_zero;
    if (!jac.d_zero) {
      piv["D_degree"] = jac.D->degree();
      piv["D_terms"] = jac.D->size();
      piv["Q_power_divides_D"] = *jac.divisible;
      if (jac.cofactor) {
        piv["cofactor_degree"] = jac.cofactor->degree();
        cert["cofactor"] = to_json(*jac.cofactor);
      }
      ok = ok && *jac.divisible;
      r.lines.push_back("Q^" + std::to_string(jac.exponent) + " divides D: " + detail::yes(*jac.divisible));
    } else {
      r.lines.push_back("symbolic D = 0");
    }
  } else {
    r.lines.push_back(jac.notice);
  }
  res["jacobian_divisibility"] = piv;

  const std::optional<MultiPoly> sym = cfg.symbolic && jac.computed ? jac.D : std::nullopt;
  const GaussVerdict g = gauss_dominant(w.omega, cfg.samples, cfg.seed, cfg.sample_bound, sym);
  res["gauss_map"] = detail::gauss_json(g);
  if (g.witness) cert["dominance_witness"] = {{"point", to_json(*g.witness)}, {"D_value", to_json(*g.value)}};
  r.lines.push_back(std::string("Gauss map: ") + GaussVerdict::name(g.kind));

  if (g.kind == GaussVerdict::Dominant && n >= 2) {
    const auto ic = invariant_count_bound(w, arr.hyperplanes, g);
    res["invariant_bound"] = {{"count", ic.count},      {"bound", to_string(ic.bound)}, {"holds", ic.holds},
                              {"attained", ic.attained}, {"degree", ic.degree}};
    ok = ok && ic.holds;
    r.lines.push_back("invariant hyperplanes: " + std::to_string(ic.count) + " <= " + to_string(ic.bound) +
                      (ic.attained ? " (attained)" : ""));
    const auto cb = cr_bound_check(n, crs.pencil.d, crs.k(), crs.excess());
    res["cr_bound"] = detail::cr_bound_json(cb);
    ok = ok && cb.holds;
    r.lines.push_back("CR fiber bound holds: " + detail::yes(cb.holds));
  }
  r.report["result"] = res;
  r.report["certificates"] = cert;
  detail::finish(r, ok);
  return r;
}

inline CommandResult cmd_resonance(const std::string& arr_path, const std::string& pencil_path, bool local,
                                   const AnalysisConfig& cfg) {
  cfg.validate();
  if (arr_path.empty() && pencil_path.empty()) throw InputError("resonance needs an arrangement file or --from-pencil");
  std::optional<CRFiberSet> crs;
  std::optional<std::string> cert_error;
  std::optional<PencilInput> pin;
  if (!pencil_path.empty()) pin = pencil_from_json(read_json_file(pencil_path), cfg.degree_cap);
  CommandResult r = detail::start("resonance", cfg);
  if (pin) {
    try {
      crs = CRFiberSet::certify(pin->pencil, pin->extra, cfg.degree_cap);
    } catch (const PencilError& e) {
      cert_error = e.what();
    }
  }
  Arrangement arr;
  if (!arr_path.empty()) {
    arr = arrangement_from_json(read_json_file(arr_path));
  } else if (crs) {
    arr = crs->arrangement();
  } else {
    r.report["result"] = {{"certification_error", *cert_error}};
    r.lines.push_back("fiber certification failed: " + *cert_error);
    detail::finish(r, false);
    return r;
  }
  if (arr.size() < 2) throw InputError("resonance needs at least two hyperplanes");
  const OSDegree2 os = build_os2(arr);
  json res = {{"hyperplanes", os.m},
              {"A2_dim", os.a2_dim},
              {"A2_dim_lattice_formula", os.lattice_dim},
              {"relation_rows", os.relation_rows},
              {"rank2_flats", os.rank2_flats.size()}};
  bool ok = os.a2_dim == os.lattice_dim;
  r.lines.push_back("hyperplanes: " + std::to_string(os.m) + ", dim A^2 = " + std::to_string(os.a2_dim) +
                    " (lattice formula " + std::to_string(os.lattice_dim) + ")");

  if (local || pencil_path.empty()) {
    json comps = json::array();
    bool all = true;
    for (const auto& c : local_components(os)) {
      const auto mx = component_maximality(os, c, cfg.trials, cfg.seed);
      const auto db = dimension_bound_check(arr, c);
      comps.push_back(detail::candidate_json(os, c, mx, db));
      all = all && detail::candidate_ok(c, mx, db);
    }
    res["local_components"] = comps;
    ok = ok && all;
    r.lines.push_back("local components: " + std::to_string(comps.size()) + ", all certified: " + detail::yes(all));
  }
  if (!pencil_path.empty()) {
    if (!crs) {
      res["certification_error"] = *cert_error;
      ok = false;
      r.lines.push_back("fiber certification failed: " + *cert_error);
    } else if (crs->k() < 3) {
      throw InputError("pencil component needs at least three completely reducible fibers");
    } else {
      try {
        const auto c = pencil_component(os, *crs);
        const auto mx = component_maximality(os, c, cfg.trials, cfg.seed);
        const auto db = dimension_bound_check(arr, c);
        const auto fc = fiber_count_identity(*crs, c);
        json pj = detail::candidate_json(os, c, mx, db);
        pj["fiber_count_identity"] = {{"k", fc.k}, {"dim", fc.dim}, {"holds", fc.holds}};
        res["pencil_component"] = pj;
        const bool good = detail::candidate_ok(c, mx, db) && fc.holds;
        ok = ok && good;
        r.lines.push_back("pencil component: dim " + std::to_string(c.dim()) + ", support rank " +
                          std::to_string(db.support_rank) + ", certified: " + detail::yes(good));
        r.lines.push_back("k = dim + 1: " + detail::yes(fc.holds));
      } catch (const ResonanceError& e) {
        throw InputError(e.what());
      }
    }
  }
  r.report["result"] = res;
  detail::finish(r, ok);
  return r;
}

// F, G = class-0 and class-1 products; the remaining classes must be members.
struct SearchCertification {
  bool pencil_backed = false;
  std::vector<PencilParam> params;  // projectively normalized, one per class >= 2
  std::string error;
};

inline SearchCertification certify_structure(const Arrangement& arr, const MultinetStructure& s, int k, int cap) {
  SearchCertification c;
  std::vector<FactoredFiber> fibs(k, FactoredFiber(arr.nvars, arr.order));
  for (std::size_t i = 0; i < arr.size(); ++i) fibs[s.classes[i]].add_linear(arr.hyperplanes[i].normal, s.mults[i]);
  try {
    const Pencil p(fibs[0], fibs[1], cap);
    for (int j = 2; j < k; ++j) {
      auto ab = detect_member(p, fibs[j], cap);
      if (!ab) {
        c.error = "class " + std::to_string(j) + " product is not a member";
        return c;
      }
      const CycloElem lead = ab->first.is_zero() ? ab->second : ab->first;
      c.params.push_back({ab->first / lead, ab->second / lead});
    }
  } catch (const std::exception& e) {
    c.error = e.what();
    return c;
  }
  c.pencil_backed = true;
  return c;
}

inline CommandResult cmd_search(const std::string& path, int k, int max_mult, const AnalysisConfig& cfg) {
  cfg.validate();
  if (k < 3) throw InputError("--k must be at least 3");
  if (max_mult < 1) throw InputError("--max-mult must be positive");
  Arrangement arr = arrangement_from_json(read_json_file(path));
  for (auto& h : arr.hyperplanes) {
    h.cls.reset();
    h.mult = 1;
  }
  std::vector<MultinetStructure> hits;
  try {
    hits = search_multinets(arr, k, max_mult, cfg.search_cap);
  } catch (const SearchCapExceeded& e) {
    throw InputError(e.what());
  }
  CommandResult r = detail::start("search", cfg);
  json hj = json::array();
  bool ok = true;
  int backed = 0;
  for (const auto& s : hits) {
    const bool round_trip = multinet_check(s.apply(arr)).passes;
    const auto c = certify_structure(arr, s, k, cfg.degree_cap);
    json params = json::array();
    for (const auto& p : c.params) params.push_back(detail::params_json(p));
    json h = {{"classes", s.classes}, {"mults", s.mults}, {"round_trip", round_trip},
              {"pencil_backed", c.pencil_backed}, {"membership_parameters", params}};
    if (!c.error.empty()) h["certification_note"] = c.error;
    hj.push_back(h);
    ok = ok && round_trip;
    backed += c.pencil_backed;
  }
  r.report["result"] = {{"k", k}, {"max_mult", max_mult}, {"hyperplanes", arr.size()}, {"hits", hj},
                        {"pencil_backed_hits", backed}};
  r.lines.push_back("hits: " + std::to_string(hits.size()) + ", pencil-backed: " + std::to_string(backed));
  for (const auto& h : hj) r.lines.push_back("  classes " + h["classes"].dump() + " mults " + h["mults"].dump());
  detail::finish(r, ok);
  return r;
}

struct ExampleParams {
  std::optional<int> d, m, n;
  std::vector<Rational> lambda;
};

inline ExampleBundle make_example(const std::string& name, const ExampleParams& p) {
  try {
    if (name == "hesse") return hesse();
    if (name == "fermat") return fermat(p.m.value_or(3));
    if (name == "gdd4") return gdd4(p.d.value_or(2));
    if (name == "logarithmic") {
      const int n = p.n.value_or(p.lambda.empty() ? 2 : static_cast<int>(p.lambda.size()) - 1);
      return logarithmic(n, p.lambda);
    }
  } catch (const ExampleError& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown example " + name + " (expected hesse, fermat, gdd4, logarithmic)");
}

inline std::string example_stem(const ExampleBundle& b) {
  if (b.name == "fermat") return "fermat_m" + b.params.at("m");
  if (b.name == "gdd4") return "gdd4_d" + b.params.at("d");
  if (b.name == "logarithmic") return "logarithmic_n" + b.params.at("n");
  return b.name;
}

inline void write_json_file(const std::filesystem::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

inline CommandResult cmd_examples(const std::string& name, const ExampleParams& params, const std::string& outdir) {
  const ExampleBundle b = make_example(name, params);
  AnalysisConfig cfg;
  CommandResult r = detail::start("examples", cfg);
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw InputError("cannot create " + outdir + ": " + ec.message());
  const std::string stem = example_stem(b);
  json files = json::array();
  const auto arr_path = std::filesystem::path(outdir) / (stem + ".arrangement.json");
  write_json_file(arr_path, to_json(b.arrangement));
  files.push_back(arr_path.string());
  if (b.fibers) {
    std::vector<FactoredFiber> extra(b.fibers->fibers.begin() + 2, b.fibers->fibers.end());
    const auto pen_path = std::filesystem::path(outdir) / (stem + ".pencil.json");
    write_json_file(pen_path, pencil_json(b.fibers->pencil, extra));
    files.push_back(pen_path.string());
  }
  if (b.form) {
    json lambda = json::array();
    for (const auto& l : b.lambda) lambda.push_back(to_string(l));
    const auto form_path = std::filesystem::path(outdir) / (stem + ".form.json");
    write_json_file(form_path, {{"field", field_json(1)},
                                {"nvars", b.form->omega.nvars()},
                                {"lambda", lambda},
                                {"omega", to_json(b.form->omega)},
                                {"foliation_degree", b.form->degree}});
    files.push_back(form_path.string());
  }
  r.report.erase("seed");
  r.report.erase("config");
  r.report["result"] = {{"example", b.name}, {"params", b.params}, {"files", files},
                        {"hyperplanes", b.arrangement.size()}, {"k", b.fibers ? b.fibers->k() : 0}};
  for (const auto& f : files) r.lines.push_back("wrote " + f.get<std::string>());
  detail::finish(r, true);
  return r;
}

inline MixedDegrees mixed_degrees(const Pencil& p, const FactoredFiber& third) {
  MixedDegrees g;
  g.n = p.n();
  for (const auto& f : third.linear) {
    g.u_tilde += f.exp;
    g.u += 1;
  }
  for (const auto& f : third.nonreduced) {
    g.v_tilde += f.exp * f.poly.degree();
    g.v += f.poly.degree();
  }
  g.q_tilde = 2 * p.d;
  g.q = static_cast<int>(p.F.linear.size() + p.G.linear.size());
  return g;
}

inline CommandResult cmd_mixed(const std::string& path, const AnalysisConfig& cfg) {
  cfg.validate();
  const PencilInput in = pencil_from_json(read_json_file(path), cfg.degree_cap);
  if (in.extra.size() != 1) throw InputError("mixed needs exactly one extra fiber (the mixed third fiber)");
  if (!in.pencil.F.is_completely_reducible() || !in.pencil.G.is_completely_reducible())
    throw InputError("mixed needs completely reducible generators F and G");
  const FactoredFiber& third = in.extra[0];
  CommandResult r = detail::start("mixed", cfg);
  json res, cert = json::object();
  bool ok = true;

  LocalDegreeReport ld;
  try {
    ld = local_degree_check(in.pencil, third, cfg.degree_cap);
  } catch (const PencilError& e) {
    res["membership_error"] = e.what();
    r.report["result"] = res;
    r.lines.push_back(std::string("third fiber not certified: ") + e.what());
    detail::finish(r, false);
    return r;
  }
  json lj = {{"applicable", ld.applicable}};
  if (!ld.applicable) {
    lj["reason"] = ld.reason;
    res["local_degree_check"] = lj;
    r.report["result"] = res;
    r.lines.push_back("local degree check inapplicable: " + ld.reason);
    detail::finish(r, false);
    return r;
  }
  cert["membership_parameters"] = detail::params_json(*ld.membership);
  json fl = json::array();
  for (const auto& e : ld.flats)
    fl.push_back({{"members", e.members}, {"codim", e.codim}, {"F_sum", e.f_sum}, {"G_sum", e.g_sum}});
  lj["base_flats"] = fl;
  lj["violations"] = ld.violations;
  lj["balanced"] = ld.balanced;
  res["local_degree_check"] = lj;
  ok = ok && ld.balanced;
  r.lines.push_back("base-locus flats: " + std::to_string(ld.flats.size()) + ", balanced: " + detail::yes(ld.balanced));

  try {
    const FoliationForm w = mixed_fiber_omega(in.pencil, third, cfg.degree_cap);
    json divs = json::array();
    for (const auto& d : w.divisions) divs.push_back(d.label);
    const bool euler = euler_contract(w.omega).is_zero();
    const bool integrable = is_integrable(w.omega);
    res["omega"] = {{"polynomial", true},
                    {"divisions", divs},
                    {"foliation_degree", w.degree},
                    {"generator_independence", w.generator_independence},
                    {"axioms", {{"euler_contraction_zero", euler}, {"integrable", integrable}}}};
    cert["omega"] = to_json(w.omega);
    ok = ok && euler && integrable && w.generator_independence;
    r.lines.push_back("foliation degree: " + std::to_string(w.degree));
    const GaussVerdict g = gauss_dominant(w.omega, cfg.samples, cfg.seed, cfg.sample_bound);
    res["gauss_map"] = detail::gauss_json(g);
    if (g.witness) cert["dominance_witness"] = {{"point", to_json(*g.witness)}, {"D_value", to_json(*g.value)}};
    r.lines.push_back(std::string("Gauss map: ") + GaussVerdict::name(g.kind));
  } catch (const DivisionFailed& e) {
    res["omega"] = {{"polynomial", false}, {"error", e.what()}};
    ok = false;
    r.lines.push_back(std::string("division failed: ") + e.what());
  }

  const MixedDegrees deg = mixed_degrees(in.pencil, third);
  const MixedBoundReport mb = mixed_bound_check(deg);
  res["mixed_bound"] = {{"degrees",
                         {{"n", deg.n},
                          {"U_tilde", deg.u_tilde},
                          {"U", deg.u},
                          {"V_tilde", deg.v_tilde},
                          {"V", deg.v},
                          {"Q_tilde", deg.q_tilde},
                          {"Q", deg.q}}},
                        {"steps", detail::steps_json(mb)},
                        {"chain_holds", mb.chain_holds},
                        {"n_less_than_7", mb.n_lt_7}};
  r.lines.push_back("inequality chain holds: " + detail::yes(mb.chain_holds) + ", n < 7: " + detail::yes(mb.n_lt_7));
  res["assumptions"] = json::array({"non-reduced factors of the third fiber are irreducible (not verified)"});
  r.report["result"] = res;
  r.report["certificates"] = cert;
  detail::finish(r, ok);
  return r;
}

}  // namespace crpencil
