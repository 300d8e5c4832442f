#pragma once

#include <cmath>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clifftwist/analysis.hpp"
#include "clifftwist/catalog.hpp"

namespace clifftwist {

using json = nlohmann::ordered_json;

// Values are rounded to 9 decimals with -0 normalized away so that reports
// serialize identically across platforms and seeds.
inline double round9(double v) {
  double r = std::round(v * 1e9) / 1e9;
  return r == 0.0 ? 0.0 : r;
}

inline double round_residual(double v) { return v < 1e-10 ? 0.0 : round9(v); }

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct ReportOrbit {
  std::vector<cplx> rep_char;  // character values of the orbit representative
  int orbit_size = 0;
  int stab_order = 0;
  bool trivial = false;
  int class_order = 1;
  long modulus = 1;
  std::vector<int> twisted_dims;
};

struct ReportRow {
  int irr_g = 0;
  int orbit = 0;
  int twisted = 0;
  int dim = 0;
};

struct DecompositionReport {
  std::string group;
  std::string normal;
  int group_order = 0;
  int normal_order = 0;
  std::vector<ReportOrbit> orbits;
  std::vector<ReportRow> correspondence;
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline json report_to_json(const DecompositionReport& r) {
  json j;
  j["group"] = r.group;
  j["normal"] = r.normal;
  j["group_order"] = r.group_order;
  j["normal_order"] = r.normal_order;
  j["orbits"] = json::array();
  for (const ReportOrbit& o : r.orbits) {
    json jo;
    jo["rep_char"] = json::array();
    for (const cplx& v : o.rep_char)
      jo["rep_char"].push_back({round9(v.real()), round9(v.imag())});
    jo["orbit_size"] = o.orbit_size;
    jo["stab_order"] = o.stab_order;
    jo["obstruction"] = {{"trivial", o.trivial}, {"class_order", o.class_order}, {"N", o.modulus}};
    jo["twisted_dims"] = o.twisted_dims;
    j["orbits"].push_back(std::move(jo));
  }
  j["correspondence"] = json::array();
  for (const ReportRow& row : r.correspondence)
    j["correspondence"].push_back({{"irrG_index", row.irr_g},
                                   {"orbit_index", row.orbit},
                                   {"twisted_index", row.twisted},
                                   {"dim", row.dim}});
  j["checks"] = json::array();
  for (const CheckResult& c : r.checks)
    j["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"residual", round_residual(c.residual)}});
  return j;
}

inline DecompositionReport report_from_json(const json& j) {
  DecompositionReport r;
  try {
    r.group = j.at("group").get<std::string>();
    r.normal = j.at("normal").get<std::string>();
    r.group_order = j.at("group_order").get<int>();
    r.normal_order = j.at("normal_order").get<int>();
    for (const json& jo : j.at("orbits")) {
      ReportOrbit o;
      for (const json& v : jo.at("rep_char"))
        o.rep_char.push_back(cplx(v.at(0).get<double>(), v.at(1).get<double>()));
      o.orbit_size = jo.at("orbit_size").get<int>();
      o.stab_order = jo.at("stab_order").get<int>();
      o.trivial = jo.at("obstruction").at("trivial").get<bool>();
      o.class_order = jo.at("obstruction").at("class_order").get<int>();
      o.modulus = jo.at("obstruction").at("N").get<long>();
      o.twisted_dims = jo.at("twisted_dims").get<std::vector<int>>();
      r.orbits.push_back(std::move(o));
    }
    for (const json& jr : j.at("correspondence"))
      r.correspondence.push_back({jr.at("irrG_index").get<int>(), jr.at("orbit_index").get<int>(),
                                  jr.at("twisted_index").get<int>(), jr.at("dim").get<int>()});
    for (const json& jc : j.at("checks"))
      r.checks.push_back({jc.at("name").get<std::string>(), jc.at("pass").get<bool>(),
                          jc.at("residual").get<double>()});
  } catch (const json::exception& e) {
    fail(errc::bad_input, std::string("malformed report: ") + e.what());
  }
  return r;
}

// Counting checks runnable on the report alone, no recomputation.
inline void counting_checks(const DecompositionReport& r, std::vector<CheckResult>& out) {
  long long sum = 0;
  for (const ReportRow& row : r.correspondence) sum += 1LL * row.dim * row.dim;
  out.push_back({"dimension_sum", sum == r.group_order,
                 static_cast<double>(std::llabs(sum - r.group_order))});
  long long chars = 0;
  for (const ReportOrbit& o : r.orbits) chars += o.orbit_size;
  bool partition = true;
  double worst = 0;
  for (const ReportOrbit& o : r.orbits) {
    long long lhs = 1LL * o.orbit_size * o.stab_order;
    if (lhs != r.group_order) partition = false;
    worst = std::max(worst, static_cast<double>(std::llabs(lhs - r.group_order)));
    long long twist = 0;
    for (int d : o.twisted_dims) twist += 1LL * d * d;
    long long q = o.stab_order / std::max(1, r.normal_order);
    if (twist != q) partition = false;
    worst = std::max(worst, static_cast<double>(std::llabs(twist - q)));
  }
  out.push_back({"orbit_counts", partition, worst});
  std::vector<std::vector<int>> hit(r.orbits.size());
  for (std::size_t o = 0; o < r.orbits.size(); ++o)
    hit[o].assign(r.orbits[o].twisted_dims.size(), 0);
  bool bij = true;
  for (const ReportRow& row : r.correspondence) {
    if (row.orbit < 0 || row.orbit >= static_cast<int>(hit.size()) || row.twisted < 0 ||
        row.twisted >= static_cast<int>(hit[row.orbit].size())) {
      bij = false;
      break;
    }
    hit[row.orbit][row.twisted] += 1;
  }
  if (bij)
    for (const std::vector<int>& h : hit)
      for (int v : h)
        if (v != 1) bij = false;
  out.push_back({"correspondence_bijective", bij, bij ? 0.0 : 1.0});
}

// Designated labels come from the catalog; "trivial" and "full" are always
// accepted and mean A = 1 and A = G.
inline std::vector<int> resolve_normal_gens(const CatalogEntry& e, const std::string& label) {
  for (const CatalogEntry::Normal& n : e.normals)
    if (n.label == label) return n.gens;
  if (label == "trivial") return {};
  if (label == "full") {
    std::vector<int> all;
    for (int x = 1; x < e.pg.table.n; ++x) all.push_back(x);
    return all;
  }
  fail(errc::bad_input, "no designated normal labelled " + label + " for " + e.name);
}

// Builds the full report for any group table and normal subgroup generators.
inline DecompositionReport build_report_for(const std::string& gname, const std::string& label,
                                            const GroupTable& g, const std::vector<int>& normalGens,
                                            std::uint64_t seed, const Tolerances& tol = {}) {
  AnalyzeOptions opt;
  opt.seed = seed;
  opt.tol = tol;
  GroupAnalysis ga = analyze_group(g, normalGens, opt);
  PointDecomposition pd = decompose_at_point(ga, derive_seed(seed, 0x9E07ULL, 0), tol);

  DecompositionReport r;
  r.group = gname;
  r.normal = label;
  r.group_order = ga.qd.parent.n;
  r.normal_order = ga.qd.normal.sub.n;
  for (std::size_t o = 0; o < ga.orbits.size(); ++o) {
    const OrbitAnalysis& oa = ga.orbits[o];
    ReportOrbit ro;
    ro.rep_char = ga.irrA.chars[ga.act.orbit_reps[o]].values;
    ro.orbit_size = static_cast<int>(ga.act.orbits[o].size());
    ro.stab_order = oa.ctx.stab.sub.n;
    ro.trivial = oa.trivial_class();
    ro.class_order = oa.cls_order;
    ro.modulus = oa.oc.modulus;
    ro.twisted_dims = twisted_dims(oa.twisted);
    r.orbits.push_back(std::move(ro));
  }
  for (const CorrespondenceRow& row : pd.rows)
    r.correspondence.push_back(
        {row.irr_g, row.orbit, row.twisted, ga.irrG.chars[row.irr_g].dim});

  r.checks.push_back({"pair_count",
                      r.correspondence.size() == ga.irrG.chars.size(),
                      static_cast<double>(r.correspondence.size() > ga.irrG.chars.size()
                                              ? r.correspondence.size() - ga.irrG.chars.size()
                                              : ga.irrG.chars.size() - r.correspondence.size())});
  counting_checks(r, r.checks);

  // round trip: induce each twisted point model back up and compare characters
  double worst = 0;
  bool ok = true;
  try {
    for (const CorrespondenceRow& row : pd.rows) {
      UnitaryRep ind = induced_model(ga, row.orbit, row.twisted, tol);
      const Character& ch = ga.irrG.chars[row.irr_g];
      for (int c = 0; c < ga.irrG.classes.nclasses; ++c)
        worst = std::max(worst,
                         std::abs(ind.mats[ga.irrG.classes.reps[c]].trace() - ch.values[c]));
    }
    ok = worst <= 1e-8;
  } catch (const Error&) {
    ok = false;
    worst = 1.0;
  }
  r.checks.push_back({"induct_back_roundtrip", ok, worst});
  return r;
}

inline DecompositionReport build_report(const std::string& gname, const std::string& label,
                                        std::uint64_t seed, const Tolerances& tol = {}) {
  const CatalogEntry& e = catalog_entry(gname);
  return build_report_for(gname, label, e.pg.table, resolve_normal_gens(e, label), seed, tol);
}

// Recomputes the report from the catalog and compares every structural field.
// Never throws: failures come back as named checks.
inline std::vector<CheckResult> verify_report(const DecompositionReport& given,
                                              std::uint64_t seed, const Tolerances& tol = {}) {
  std::vector<CheckResult> out;
  out.push_back({"report_checks_pass", given.all_pass(), given.all_pass() ? 0.0 : 1.0});
  counting_checks(given, out);
  DecompositionReport fresh;
  try {
    fresh = build_report(given.group, given.normal, seed, tol);
  } catch (const Error& e) {
    out.push_back({std::string("rebuild (") + e.what() + ")", false, 1.0});
    return out;
  } catch (const std::exception& e) {
    out.push_back({std::string("rebuild (") + e.what() + ")", false, 1.0});
    return out;
  }
  for (const CheckResult& c : fresh.checks) out.push_back(c);

  int mism = 0;
  if (given.group_order != fresh.group_order || given.normal_order != fresh.normal_order) ++mism;
  if (given.orbits.size() != fresh.orbits.size()) {
    ++mism;
  } else {
    for (std::size_t o = 0; o < given.orbits.size(); ++o) {
      const ReportOrbit &a = given.orbits[o], &b = fresh.orbits[o];
      if (a.orbit_size != b.orbit_size || a.stab_order != b.stab_order || a.trivial != b.trivial ||
          a.class_order != b.class_order || a.modulus != b.modulus ||
          a.twisted_dims != b.twisted_dims)
        ++mism;
    }
  }
  out.push_back({"structure_matches_recomputation", mism == 0, static_cast<double>(mism)});

  double chdist = 0;
  bool chok = given.orbits.size() == fresh.orbits.size();
  if (chok)
    for (std::size_t o = 0; o < given.orbits.size(); ++o) {
      if (given.orbits[o].rep_char.size() != fresh.orbits[o].rep_char.size()) {
        chok = false;
        break;
      }
      for (std::size_t c = 0; c < given.orbits[o].rep_char.size(); ++c)
        chdist = std::max(chdist,
                          std::abs(given.orbits[o].rep_char[c] - fresh.orbits[o].rep_char[c]));
    }
  chok = chok && chdist <= 1e-6;
  out.push_back({"orbit_characters_match", chok, chdist});

  std::vector<ReportRow> a = given.correspondence, b = fresh.correspondence;
  auto lt = [](const ReportRow& x, const ReportRow& y) {
    return std::tie(x.irr_g, x.orbit, x.twisted, x.dim) < std::tie(y.irr_g, y.orbit, y.twisted, y.dim);
  };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  bool same = a.size() == b.size();
  if (same)
    for (std::size_t i = 0; i < a.size(); ++i)
      same = same && !lt(a[i], b[i]) && !lt(b[i], a[i]);
  out.push_back({"correspondence_matches_recomputation", same, same ? 0.0 : 1.0});
  return out;
}

}  // namespace clifftwist
