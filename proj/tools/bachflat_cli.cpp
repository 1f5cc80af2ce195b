// Command-line surface over the library: profile construction, global
// classification, weight solving, curvature verification, moduli atlas,
// geometry probes, identity suites, and batch sweeps.
//
// Exit codes: 0 success, 1 a checked identity failed, 2 usage error,
// 3 domain error (singular locus, degenerate polytope, bad interval).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bachflat/classifier.hpp"
#include "bachflat/conesolver.hpp"
#include "bachflat/convexity.hpp"
#include "bachflat/curvlab.hpp"
#include "bachflat/geoprobe.hpp"
#include "bachflat/identities.hpp"
#include "bachflat/poly.hpp"
#include "bachflat/profile.hpp"
#include "bachflat/rational.hpp"
#include "bachflat/roots.hpp"

using json = nlohmann::ordered_json;
using namespace bachflat;

namespace {

constexpr const char* kSchemaVersion = "1.0";

struct Lcg {
  unsigned long long s;
  explicit Lcg(unsigned long long seed) : s(seed) {}
  long next(long lo, long hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((s >> 33) %
                                  static_cast<unsigned long long>(hi - lo + 1));
  }
};

json report(const std::string& command) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r["inputs"] = json::object();
  r["outputs"] = json::object();
  r["notes"] = json::array();
  return r;
}

void emit(const json& r) { std::cout << r.dump(2) << "\n"; }

// exact rational plus a rounded decimal shadow for headline quantities
void put_rat(json& o, const std::string& key, const Rat& v,
             bool shadow = false) {
  o[key] = v.to_string();
  if (shadow) o[key + "_decimal"] = v.to_decimal(12);
}

json rat_list(const std::vector<Rat>& vs) {
  json a = json::array();
  for (const Rat& v : vs) a.push_back(v.to_string());
  return a;
}

// roots serialize as an exact value or a refined enclosure, either way with
// a decimal shadow; refinement width is fixed so output is byte-stable
json root_json(const IsolatedRoot& root) {
  json o;
  o["multiplicity"] = root.multiplicity;
  IsolatedRoot copy = root;
  if (copy.exact) {
    put_rat(o, "value", copy.value(), true);
  } else {
    copy.refine(Rat(1, 1000000000000L));
    o["enclosure"] = {{"lo", copy.lo.to_string()}, {"hi", copy.hi.to_string()}};
    o["value_decimal"] = copy.midpoint().to_decimal(12);
  }
  return o;
}

json box_json(const RatBox& b) {
  json o;
  o["lo"] = b.lo.to_string();
  o["hi"] = b.hi.to_string();
  o["exact"] = b.exact();
  o["midpoint_decimal"] = b.midpoint().to_decimal(12);
  return o;
}

json profile_json(const Profile& pr) {
  json o;
  o["m"] = pr.m;
  put_rat(o, "a", pr.a);
  put_rat(o, "q0", pr.q0);
  put_rat(o, "q1", pr.q1);
  o["q2"] = "0";
  put_rat(o, "q3", pr.q3);
  put_rat(o, "q4", pr.q4);
  o["p_coefficients_ascending"] = rat_list(pr.p_poly().coeffs());
  put_rat(o, "scal_at_zero_section", pr.s_at_a(), true);
  put_rat(o, "y", pr.y());
  o["ends_smoothly"] = pr.ends_smoothly();
  o["bach_flat"] = is_bach_flat(pr);
  if (is_bach_flat(pr)) {
    put_rat(o, "einstein_scalar", einstein_constant(pr), true);
  }
  return o;
}

Rat parse_rat_arg(const std::string& name, const std::string& text) {
  try {
    return Rat::parse(text);
  } catch (const std::exception& e) {
    throw CLI::ValidationError(name, e.what());
  }
}

struct Grid {
  Rat lo, hi;
  int n = 1;

  Rat at(int i) const {
    if (n <= 1) return lo;
    return lo + (hi - lo) * Rat(i, n - 1);
  }
};

// quote a CSV field when it holds a comma or quote
std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Grid parse_grid(const std::string& name, const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw CLI::ValidationError(name, "expected lo:hi:n");
  }
  Grid g;
  g.lo = parse_rat_arg(name, text.substr(0, c1));
  g.hi = parse_rat_arg(name, text.substr(c1 + 1, c2 - c1 - 1));
  try {
    g.n = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError(name, "grid count must be an integer");
  }
  if (g.n < 1) throw CLI::ValidationError(name, "grid count must be >= 1");
  return g;
}

// interior sample points with p(r) != 0, reproducible from the seed
std::vector<Point4> sample_points(const Profile& pr, int n,
                                  unsigned long long seed) {
  Lcg rng(seed);
  const Poly p = pr.p_poly();
  std::vector<Point4> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Rat t(rng.next(1, 79), 80);
    const Rat r = pr.a * (Rat(1) + Rat(4) * t);
    if (p.eval(r).is_zero()) continue;
    const Rat split(rng.next(1, 9), 10);
    pts.push_back(Point4{r * split, r * (Rat(1) - split)});
  }
  return pts;
}

std::string weight_status_name(WeightStatus s) {
  switch (s) {
    case WeightStatus::NoSolution:
      return "no-solution";
    case WeightStatus::DoubleWeight:
      return "double-weight";
    case WeightStatus::TwoWeights:
      return "two-weights";
    case WeightStatus::SingleLinear:
      return "single-linear";
    case WeightStatus::PlusOnly:
      return "plus-only";
  }
  return "unknown";
}

std::string scal_verdict_name(ScalVerdict v) {
  switch (v) {
    case ScalVerdict::NowhereVanishing:
      return "nowhere-vanishing";
    case ScalVerdict::ConstantScal:
      return "constant-scal";
    case ScalVerdict::VanishesInside:
      return "vanishes-inside";
  }
  return "unknown";
}

json admissibility_json(const Admissibility& ad) {
  json o;
  o["verdict"] = scal_verdict_name(ad.verdict);
  o["admissible"] = ad.verdict != ScalVerdict::VanishesInside;
  if (ad.r1) put_rat(o, "r1", *ad.r1);
  if (ad.r2) put_rat(o, "r2", *ad.r2);
  if (ad.d) put_rat(o, "d", *ad.d);
  o["sign_N1"] = ad.sign_N1;
  o["sign_N2"] = ad.sign_N2;
  o["sign_D"] = ad.sign_D;
  return o;
}

json certificate_json(const PositivityCertificate& c, const Rat& lo,
                      const Rat& hi) {
  json o;
  o["positive"] = c.positive;
  o["method"] = c.method;
  o["interval"] = {{"lo", lo.to_string()}, {"hi", hi.to_string()}};
  o["interior_roots"] = c.interior_roots;
  if (c.witness) {
    put_rat(o, "witness", *c.witness);
    put_rat(o, "witness_value", c.witness_value);
  }
  if (c.violation) o["violation"] = root_json(*c.violation);
  return o;
}

int cmd_construct(int m, const std::string& a_s, const std::string& s_s) {
  const Rat a = parse_rat_arg("--a", a_s);
  const Rat s = parse_rat_arg("--s", s_s);
  json r = report("construct");
  r["inputs"] = {{"m", m}, {"a", a.to_string()}, {"s", s.to_string()}};
  const Profile pr = profile_from_local(m, a, s);
  r["outputs"]["profile"] = profile_json(pr);
  r["notes"].push_back(
      "one-ended family: q determined by (m, a, scal at the zero section), "
      "Bach-flat by construction");
  emit(r);
  return 0;
}

int cmd_construct_cone(int m, const std::string& a_s, const std::string& x_s,
                       const std::string& w_s) {
  const Rat a = parse_rat_arg("--a", a_s);
  const Rat x = parse_rat_arg("--x", x_s);
  const Rat w = parse_rat_arg("--weight", w_s);
  json r = report("construct-cone");
  r["inputs"] = {{"m", m},
                 {"a", a.to_string()},
                 {"x", x.to_string()},
                 {"weight", w.to_string()}};
  const ConeProfile cp = profile_from_cone(m, a, x, w);
  r["outputs"]["profile"] = profile_json(cp.base);
  json& c = r["outputs"]["compactification"];
  put_rat(c, "b", cp.b);
  put_rat(c, "x", cp.x);
  put_rat(c, "weight", cp.weight, true);
  put_rat(c, "angle_over_2pi", cp.angle_over_2pi(), true);
  put_rat(c, "bach_residual", cp.bach_residual());
  r["notes"].push_back(
      "two-ended profile closing at r = b = a x with cone angle 2 pi / weight "
      "along the divisor at infinity");
  emit(r);
  return 0;
}

json classification_json(const Profile& pr) {
  const Classification cl = classify(pr);
  json o;
  o["kind"] = to_string(cl.kind);
  o["p_degree"] = cl.p_degree;
  json roots = json::array();
  for (const IsolatedRoot& root : cl.roots_above_a) {
    roots.push_back(root_json(root));
  }
  o["roots_above_a"] = roots;
  if (cl.b) {
    o["b"] = box_json(*cl.b);
    o["multiplicity"] = cl.multiplicity;
  }
  if (cl.weight) {
    o["weight"] = box_json(*cl.weight);
    if (cl.weight_exact) put_rat(o, "weight_exact", *cl.weight_exact, true);
    if (cl.angle_over_2pi) o["angle_over_2pi"] = box_json(*cl.angle_over_2pi);
  }

  // positivity of p over the metric's radial domain; for unbounded domains a
  // bounded witness interval backs the already root-free classification
  Rat hi;
  if (cl.b) {
    hi = cl.b->lo;
  } else {
    hi = pr.a + Rat(10);
  }
  if (hi > pr.a) {
    const PositivityCertificate cert = certify_positive(pr, hi);
    o["positivity"] = certificate_json(cert, pr.a, hi);
  }
  return o;
}

int cmd_classify(int m, const std::string& a_s, const std::string& s_s,
                 const std::string& profile_file) {
  json r = report("classify");
  Profile pr;
  if (!profile_file.empty()) {
    std::ifstream in(profile_file);
    if (!in) throw DomainError("cannot read profile file " + profile_file);
    json doc = json::parse(in);
    const json& p =
        doc.contains("outputs") ? doc["outputs"]["profile"] : doc["profile"];
    pr.m = p.at("m").get<int>();
    pr.a = Rat::parse(p.at("a").get<std::string>());
    pr.q0 = Rat::parse(p.at("q0").get<std::string>());
    pr.q1 = Rat::parse(p.at("q1").get<std::string>());
    pr.q3 = Rat::parse(p.at("q3").get<std::string>());
    pr.q4 = Rat::parse(p.at("q4").get<std::string>());
    r["inputs"] = {{"profile_file", profile_file}};
  } else {
    const Rat a = parse_rat_arg("--a", a_s);
    const Rat s = parse_rat_arg("--s", s_s);
    pr = profile_from_local(m, a, s);
    r["inputs"] = {{"m", m}, {"a", a.to_string()}, {"s", s.to_string()}};
  }
  r["outputs"]["profile"] = profile_json(pr);
  r["outputs"]["classification"] = classification_json(pr);
  r["notes"].push_back(
      "global kind decided by deg p and the roots of p above a; convexity of "
      "the potential holds exactly where p > 0");
  emit(r);
  return 0;
}

int cmd_cone_solve(int m, const std::string& x_s) {
  const Rat x = parse_rat_arg("--x", x_s);
  json r = report("cone-solve");
  r["inputs"] = {{"m", m}, {"x", x.to_string()}};
  const ConeQuadratic cq = cone_quadratic(m, x);
  json& o = r["outputs"];
  put_rat(o, "A", cq.A);
  put_rat(o, "B", cq.B);
  put_rat(o, "C", cq.C);
  put_rat(o, "disc", cq.disc, true);
  o["status"] = weight_status_name(cq.status);
  if (cq.status == WeightStatus::NoSolution) {
    o["verdict"] = "nonexistence";
  }
  auto weight_entry = [&](const char* key,
                          const std::optional<IsolatedRoot>& root) {
    if (!root) return;
    json w = root_json(*root);
    IsolatedRoot copy = *root;
    const Admissibility ad = admissibility(m, x, copy);
    w["admissibility"] = admissibility_json(ad);
    o[key] = w;
  };
  weight_entry("p_plus", cq.p_plus);
  weight_entry("p_minus", cq.p_minus);
  r["notes"].push_back(
      "weights solve A p^2 + B p + C = 0; a weight is admissible when scal "
      "keeps one sign on [a, b]");
  emit(r);
  return 0;
}

int cmd_verify(int m, const std::string& a_s, const std::string& s_s,
               int points, unsigned long long seed) {
  const Rat a = parse_rat_arg("--a", a_s);
  const Rat s = parse_rat_arg("--s", s_s);
  if (points < 1) throw CLI::ValidationError("--points", "need at least 1");
  json r = report("verify");
  r["inputs"] = {{"m", m},
                 {"a", a.to_string()},
                 {"s", s.to_string()},
                 {"points", points},
                 {"seed", seed}};
  const Profile pr = profile_from_local(m, a, s);
  const std::vector<Point4> pts = sample_points(pr, points, seed);

  bool all_ok = true;
  json checks = json::array();
  auto add_check = [&](const std::string& name, bool pass,
                       const std::string& detail) {
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    all_ok = all_ok && pass;
  };

  bool abreu = true, affine = true, riemann = true, jinv = true, weyl = true,
       bach = true, frame = true;
  for (const Point4& pt : pts) {
    const CurvatureReport rep = curvature_at(pr, pt);
    abreu = abreu && rep.scal == rep.abreu_scal;
    affine = affine && rep.scal == pr.scal_at(rep.r);
    riemann = riemann && rep.riemann_symmetries_hold;
    jinv = jinv && rep.ricci_j_invariant;
    const Poly expect = Poly::from_roots(
        {rep.scal / Rat(6), -rep.scal / Rat(12), -rep.scal / Rat(12)});
    weyl = weyl && rep.weyl_plus_charpoly == expect;
    bach = bach && rep.bach_max_entry.is_zero() && rep.bach_flat;
    const DiagonalFrame df = diagonal_frame_check(pr, pt);
    frame = frame && df.off_diagonal_max.is_zero() &&
            df.dr_kappa_inner.is_zero();
  }
  add_check("abreu-scalar-curvature", abreu,
            "fourth-order divergence of the inverse Hessian equals the jet "
            "pipeline scalar curvature");
  add_check("scalar-curvature-affine", affine, "scal = 2 q3 + q4 r exactly");
  add_check("riemann-symmetries", riemann,
            "pair symmetry, antisymmetry, first Bianchi");
  add_check("ricci-complex-invariance", jinv,
            "Ricci commutes with the complex structure");
  add_check("selfdual-weyl-spectrum", weyl,
            "charpoly of W+ is (t - s/6)(t + s/12)^2");
  add_check("bach-tensor-vanishes", bach,
            "extremal shortcut B = (s Ric0 + 2 Hess0 s)/12 is exactly zero");
  add_check("diagonal-frame", frame,
            "the radial coframe diagonalizes g with coefficients r/(2p), "
            "1/(2 r x1 x2), 2p/r, 2 r x1 x2");

  bool lap = true;
  for (const Point4& pt : pts) {
    for (int k = 1; k <= 3; ++k) {
      Poly gamma = Poly::x();
      for (int j = 1; j < k; ++j) gamma *= Poly::x();
      lap = lap && laplacian_check(pr, gamma, pt).residual.is_zero();
    }
    if (!pr.scal_at(pt.r()).is_zero()) {
      lap = lap && laplacian_check_inv_scal(pr, pt).residual.is_zero();
    }
  }
  add_check("laplacian-closed-form", lap,
            "rotation-invariant Laplacian matches "
            "-2[(2 - q'/r) g' + (r - q/r) g'']");

  const ConstancyReport cr = derdzinski_scalar_identity(pr, pts);
  add_check("scalar-conformal-identity",
            cr.max_deviation.is_zero() && cr.equals_einstein_scalar,
            "s^3 + 6 s (trace Laplacian s) - 12 |ds|^2 is constant and equals "
            "the Einstein scalar");
  json& out = r["outputs"];
  put_rat(out, "S", cr.einstein_scalar, true);
  put_rat(out, "lambda", cr.einstein_scalar / Rat(4), true);

  const VanishingLocus vl = vanishing_locus(pr);
  if (vl.kind == VanishKind::IdenticallyZero) {
    r["notes"].push_back(
        "scal vanishes identically: the conformal Einstein residual has no "
        "rescaled metric to test");
  } else {
    std::vector<Point4> good;
    for (const Point4& pt : pts) {
      if (!pr.scal_at(pt.r()).is_zero()) good.push_back(pt);
    }
    const EinsteinResidualReport er = conformal_einstein_residual(pr, good);
    add_check("einstein-residual", er.max_residual.is_zero(),
              "Ric of scal^-2 g equals (S/4) scal^-2 g at every sample");
  }

  out["points"] = static_cast<int>(pts.size());
  out["checks"] = checks;
  out["all_pass"] = all_ok;
  emit(r);
  return all_ok ? 0 : 1;
}

int cmd_atlas(int m, const std::string& grid_s) {
  const Grid g = parse_grid("--y-grid", grid_s);
  std::cout << "m,y,index,label,space,type,einstein_scalar_sign,on_boundary,"
               "y2_equals_kahler_einstein\n";
  for (int i = 0; i < g.n; ++i) {
    const Rat y = g.at(i);
    const AtlasRegion reg = atlas_region(m, y);
    std::cout << m << ',' << y.to_string() << ',' << reg.index << ','
              << csv_field(reg.label) << ',' << to_string(reg.space) << ','
              << to_string(reg.type) << ','
              << to_string(reg.einstein_scalar_sign) << ','
              << (reg.on_boundary ? 1 : 0) << ','
              << (reg.y2_equals_kahler_einstein ? 1 : 0) << "\n";
  }
  return 0;
}

int cmd_probe(int m, const std::string& a_s, const std::string& s_s,
              bool growth, bool length, bool vol, bool conformal,
              const std::string& rlo_s, const std::string& rhi_s, int samples,
              bool csv) {
  const Rat a = parse_rat_arg("--a", a_s);
  const Rat s = parse_rat_arg("--s", s_s);
  const int picked = (growth ? 1 : 0) + (length ? 1 : 0) + (vol ? 1 : 0);
  if (picked != 1) {
    throw CLI::ValidationError(
        "probe", "pick exactly one of --growth, --length, --volume");
  }
  const Profile pr = profile_from_local(m, a, s);
  json r = report("probe");
  r["inputs"] = {{"m", m},
                 {"a", a.to_string()},
                 {"s", s.to_string()},
                 {"conformal", conformal}};

  if (growth) {
    const GrowthEstimate est = growth_exponent(pr, conformal, samples);
    if (csv) {
      std::cout << growth_csv(est);
      return 0;
    }
    r["inputs"]["samples"] = samples;
    json& o = r["outputs"];
    o["model"] = growth_model_name(est.model);
    o["value"] = est.value;
    o["fit_residual"] = est.fit_residual;
    o["samples"] = static_cast<int>(est.table.size());
    r["notes"].push_back(
        "model class decided exactly from deg p, root multiplicity, and scal "
        "zeros; only the exponent or rate is fitted");
    emit(r);
    return 0;
  }

  if (length) {
    if (rlo_s.empty()) {
      throw CLI::ValidationError("--r-lo", "required with --length");
    }
    const Rat rlo = parse_rat_arg("--r-lo", rlo_s);
    std::optional<Rat> rhi;
    if (!rhi_s.empty()) rhi = parse_rat_arg("--r-hi", rhi_s);
    r["inputs"]["r_lo"] = rlo.to_string();
    r["inputs"]["r_hi"] = rhi ? json(rhi->to_string()) : json("infinity");
    const RayLength rl = ray_length(pr, rlo, rhi, conformal);
    json& o = r["outputs"];
    o["finite"] = rl.finite();
    if (rl.finite()) {
      o["value"] = *rl.value;
      o["error_bound"] = rl.error_bound;
    } else {
      o["divergence_exponent"] = rl.divergence_exponent->to_string();
    }
    emit(r);
    return 0;
  }

  if (rhi_s.empty()) {
    throw CLI::ValidationError("--r-hi", "required with --volume");
  }
  const Rat rhi = parse_rat_arg("--r-hi", rhi_s);
  r["inputs"]["r_hi"] = rhi.to_string();
  const VolumeResult v = volume(pr, rhi, conformal);
  json& o = r["outputs"];
  o["value"] = v.value;
  o["error_bound"] = v.error_bound;
  if (v.over_two_pi_sq) put_rat(o, "over_two_pi_sq", *v.over_two_pi_sq);
  emit(r);
  return 0;
}

int cmd_identities(const std::string& suite) {
  std::vector<IdentitySuite> suites;
  if (suite == "coneDisc") {
    suites.push_back(suite_cone_disc());
  } else if (suite == "interiorQuadratic") {
    suites.push_back(suite_interior_quadratic());
  } else if (suite == "atlasCubics") {
    suites.push_back(suite_atlas_cubics());
  } else if (suite == "sFormulas") {
    suites.push_back(suite_s_formulas());
  } else if (suite == "all") {
    suites = all_identity_suites();
  } else {
    throw CLI::ValidationError(
        "--suite",
        "expected coneDisc, interiorQuadratic, atlasCubics, sFormulas, all");
  }
  json r = report("identities");
  r["inputs"] = {{"suite", suite}};
  bool all_ok = true;
  json out = json::array();
  for (const IdentitySuite& st : suites) {
    json so;
    so["suite"] = st.name;
    so["passed"] = st.passed();
    all_ok = all_ok && st.passed();
    json cs = json::array();
    for (const IdentityCheck& c : st.checks) {
      cs.push_back({{"name", c.name},
                    {"expected", c.expected},
                    {"holds", c.holds},
                    {"ok", c.ok()},
                    {"detail", c.detail}});
    }
    so["checks"] = cs;
    out.push_back(so);
  }
  r["outputs"]["suites"] = out;
  r["outputs"]["all_pass"] = all_ok;
  emit(r);
  return all_ok ? 0 : 1;
}

int cmd_sweep(const std::string& spec_file) {
  std::ifstream in(spec_file);
  if (!in) throw DomainError("cannot read sweep spec " + spec_file);
  const json spec = json::parse(in);
  const std::string command = spec.at("command").get<std::string>();
  std::vector<int> ms;
  for (const auto& v : spec.at("m")) ms.push_back(v.get<int>());

  auto grid_from = [&](const char* key) {
    const json& gj = spec.at(key);
    Grid g;
    g.lo = Rat::parse(gj.at("lo").get<std::string>());
    g.hi = Rat::parse(gj.at("hi").get<std::string>());
    g.n = gj.at("n").get<int>();
    if (g.n < 1) throw DomainError("sweep grid count must be >= 1");
    return g;
  };

  if (command == "cone-solve") {
    const Grid g = grid_from("x");
    std::cout << "m,x,disc,status,p_minus,p_plus,admissible_minus,"
                 "admissible_plus\n";
    for (int m : ms) {
      for (int i = 0; i < g.n; ++i) {
        const Rat x = g.at(i);
        const ConeQuadratic cq = cone_quadratic(m, x);
        auto wtext = [&](const std::optional<IsolatedRoot>& root)
            -> std::string {
          if (!root) return "";
          IsolatedRoot c = *root;
          if (c.exact) return c.value().to_string();
          c.refine(Rat(1, 1000000000000L));
          return c.midpoint().to_decimal(12);
        };
        auto adm = [&](const std::optional<IsolatedRoot>& root) -> std::string {
          if (!root) return "";
          IsolatedRoot c = *root;
          const Admissibility ad = admissibility(m, x, c);
          return ad.verdict != ScalVerdict::VanishesInside ? "1" : "0";
        };
        std::cout << m << ',' << x.to_string() << ',' << cq.disc.to_string()
                  << ',' << weight_status_name(cq.status) << ','
                  << wtext(cq.p_minus) << ',' << wtext(cq.p_plus) << ','
                  << adm(cq.p_minus) << ',' << adm(cq.p_plus) << "\n";
      }
    }
    return 0;
  }

  if (command == "atlas") {
    const Grid g = grid_from("y");
    std::cout << "m,y,index,label,space,type,einstein_scalar_sign,"
                 "on_boundary,y2_equals_kahler_einstein\n";
    for (int m : ms) {
      for (int i = 0; i < g.n; ++i) {
        const Rat y = g.at(i);
        const AtlasRegion reg = atlas_region(m, y);
        std::cout << m << ',' << y.to_string() << ',' << reg.index << ','
                  << csv_field(reg.label) << ',' << to_string(reg.space) << ','
                  << to_string(reg.type) << ','
                  << to_string(reg.einstein_scalar_sign) << ','
                  << (reg.on_boundary ? 1 : 0) << ','
                  << (reg.y2_equals_kahler_einstein ? 1 : 0) << "\n";
      }
    }
    return 0;
  }

  if (command == "classify") {
    const Rat a = Rat::parse(spec.at("a").get<std::string>());
    const Grid g = grid_from("s");
    std::cout << "m,a,s,y,kind,p_degree,b,multiplicity,weight\n";
    for (int m : ms) {
      for (int i = 0; i < g.n; ++i) {
        const Rat s = g.at(i);
        const Profile pr = profile_from_local(m, a, s);
        const Classification cl = classify(pr);
        std::string btext, wtext;
        if (cl.b) btext = cl.b->midpoint().to_decimal(12);
        if (cl.weight_exact) {
          wtext = cl.weight_exact->to_string();
        } else if (cl.weight) {
          wtext = cl.weight->midpoint().to_decimal(12);
        }
        std::cout << m << ',' << a.to_string() << ',' << s.to_string() << ','
                  << pr.y().to_string() << ',' << to_string(cl.kind) << ','
                  << cl.p_degree << ',' << btext << ',' << cl.multiplicity
                  << ',' << wtext << "\n";
      }
    }
    return 0;
  }

  throw DomainError("unknown sweep command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact constructor and verifier for the Bach-flat Kahler metric "
      "families on line bundles over the sphere and their compactifications"};
  app.require_subcommand(1);

  int m = 1;
  std::string a_s = "1", s_s = "0", x_s = "2", w_s = "1";
  std::string profile_file, grid_s, rlo_s, rhi_s, suite = "all", spec_file;
  int points = 10, samples = 30;
  unsigned long long seed = 0;
  bool growth = false, length = false, vol = false, conformal = false,
       csv = false;

  CLI::App* c_construct =
      app.add_subcommand("construct", "Build a one-ended profile");
  c_construct->add_option("--m", m, "bundle degree")->required();
  c_construct->add_option("--a", a_s, "zero-section area")->required();
  c_construct->add_option("--s", s_s, "scal at the zero section")->required();

  CLI::App* c_cone = app.add_subcommand(
      "construct-cone", "Build a two-ended profile with a cone angle");
  c_cone->add_option("--m", m)->required();
  c_cone->add_option("--a", a_s)->required();
  c_cone->add_option("--x", x_s, "divisor ratio b/a")->required();
  c_cone->add_option("--weight", w_s, "boundary weight")->required();

  CLI::App* c_classify = app.add_subcommand(
      "classify", "Classify global behavior and certify convexity");
  c_classify->add_option("--m", m);
  c_classify->add_option("--a", a_s);
  c_classify->add_option("--s", s_s);
  c_classify->add_option("--profile", profile_file,
                         "profile JSON from construct");

  CLI::App* c_solve = app.add_subcommand(
      "cone-solve", "Solve the weight equation at divisor ratio x");
  c_solve->add_option("--m", m)->required();
  c_solve->add_option("--x", x_s)->required();

  CLI::App* c_verify = app.add_subcommand(
      "verify", "Run the exact curvature identity suite at random points");
  c_verify->add_option("--m", m)->required();
  c_verify->add_option("--a", a_s)->required();
  c_verify->add_option("--s", s_s)->required();
  c_verify->add_option("--points", points, "number of sample points");
  c_verify->add_option("--seed", seed, "sampling seed");

  CLI::App* c_atlas = app.add_subcommand(
      "atlas", "Tabulate moduli regions over a y grid (CSV)");
  c_atlas->add_option("--m", m)->required();
  c_atlas->add_option("--y-grid", grid_s, "lo:hi:n")->required();

  CLI::App* c_probe =
      app.add_subcommand("probe", "Radial geometry probes (length, volume, "
                                  "volume growth)");
  c_probe->add_option("--m", m)->required();
  c_probe->add_option("--a", a_s)->required();
  c_probe->add_option("--s", s_s)->required();
  c_probe->add_flag("--growth", growth, "fit the volume growth law");
  c_probe->add_flag("--length", length, "radial ray length");
  c_probe->add_flag("--volume", vol, "sublevel volume");
  c_probe->add_flag("--conformal", conformal, "probe scal^-2 g instead of g");
  c_probe->add_option("--r-lo", rlo_s, "ray start");
  c_probe->add_option("--r-hi", rhi_s, "ray end or volume cutoff");
  c_probe->add_option("--samples", samples, "growth fit sample count");
  c_probe->add_flag("--csv", csv, "emit the growth table as CSV");

  CLI::App* c_id = app.add_subcommand(
      "identities", "Run an exact identity suite");
  c_id->add_option("--suite", suite,
                   "coneDisc | interiorQuadratic | atlasCubics | sFormulas | "
                   "all");

  CLI::App* c_sweep =
      app.add_subcommand("sweep", "Batch CSV over a parameter grid");
  c_sweep->add_option("--spec", spec_file, "JSON sweep description")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_construct->parsed()) return cmd_construct(m, a_s, s_s);
    if (c_cone->parsed()) return cmd_construct_cone(m, a_s, x_s, w_s);
    if (c_classify->parsed()) return cmd_classify(m, a_s, s_s, profile_file);
    if (c_solve->parsed()) return cmd_cone_solve(m, x_s);
    if (c_verify->parsed()) return cmd_verify(m, a_s, s_s, points, seed);
    if (c_atlas->parsed()) return cmd_atlas(m, grid_s);
    if (c_probe->parsed()) {
      return cmd_probe(m, a_s, s_s, growth, length, vol, conformal, rlo_s,
                       rhi_s, samples, csv);
    }
    if (c_id->parsed()) return cmd_identities(suite);
    if (c_sweep->parsed()) return cmd_sweep(spec_file);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const DefectError& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
