#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "clifftwist/report_json.hpp"

namespace clifftwist {
namespace cli_detail {

struct Target {
  std::string name;
  std::string normal_label = "custom";
  GroupTable table;
  std::vector<int> normal_gens;
  bool has_normal = false;
};

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_input, "parse error in " + path + ": " + e.what());
  }
}

inline Target target_from_spec(const json& j, int maxOrder) {
  Target t;
  try {
    t.name = j.at("name").get<std::string>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "permutation") {
      std::vector<Perm> gens;
      for (const json& jp : j.at("generators")) gens.push_back(jp.get<Perm>());
      t.table = group_from_permutations(t.name, gens, maxOrder).table;
    } else if (kind == "table") {
      std::vector<int> mul;
      const json& rows = j.at("table");
      for (const json& row : rows)
        for (const json& v : row) mul.push_back(v.get<int>());
      t.table = make_group_table(t.name, static_cast<int>(rows.size()), std::move(mul));
    } else {
      fail(errc::bad_input, "kind must be permutation or table");
    }
    if (j.contains("normal")) {
      t.normal_gens = j.at("normal").get<std::vector<int>>();
      t.has_normal = true;
      t.normal_label = j.value("normal_label", "custom");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_input, std::string("malformed group spec: ") + e.what());
  }
  return t;
}

inline Target resolve_target(const std::string& groupArg, const std::string& normalLabel,
                             int maxOrder) {
  if (std::ifstream probe(groupArg); probe.good()) {
    Target t = target_from_spec(load_json_file(groupArg), maxOrder);
    if (!normalLabel.empty()) {
      if (normalLabel == "trivial") {
        t.normal_gens.clear();
      } else if (normalLabel == "full") {
        t.normal_gens.clear();
        for (int x = 1; x < t.table.n; ++x) t.normal_gens.push_back(x);
      } else {
        fail(errc::bad_input, "spec files only accept --normal trivial|full overrides");
      }
      t.has_normal = true;
      t.normal_label = normalLabel;
    }
    return t;
  }
  const CatalogEntry& e = catalog_entry(groupArg);
  Target t;
  t.name = e.name;
  t.table = e.pg.table;
  if (!normalLabel.empty()) {
    t.normal_gens = resolve_normal_gens(e, normalLabel);
    t.normal_label = normalLabel;
    t.has_normal = true;
  }
  return t;
}

inline std::string fmt_c(const cplx& v) {
  double re = round9(v.real()), im = round9(v.imag());
  std::ostringstream o;
  if (im == 0) {
    o << re;
  } else {
    if (re != 0) o << re;
    o << (im < 0 ? "-" : "+") << std::abs(im) << "i";
  }
  return o.str();
}

inline json chartable_json(const GroupTable& g, const IrrTable& t) {
  json j;
  j["group"] = g.name;
  j["order"] = g.n;
  j["classes"] = json::array();
  for (int c = 0; c < t.classes.nclasses; ++c)
    j["classes"].push_back({{"rep", t.classes.reps[c]}, {"size", t.classes.sizes[c]}});
  j["chars"] = json::array();
  for (const Character& ch : t.chars) {
    json jc;
    jc["dim"] = ch.dim;
    jc["values"] = json::array();
    for (const cplx& v : ch.values) jc["values"].push_back({round9(v.real()), round9(v.imag())});
    j["chars"].push_back(std::move(jc));
  }
  return j;
}

inline std::string chartable_text(const GroupTable& g, const IrrTable& t) {
  std::ostringstream o;
  o << "group " << g.name << " of order " << g.n << ", " << t.classes.nclasses << " classes\n";
  o << "class sizes:";
  for (int c = 0; c < t.classes.nclasses; ++c) o << " " << t.classes.sizes[c];
  o << "\nclass reps: ";
  for (int c = 0; c < t.classes.nclasses; ++c)
    o << (c ? " " : "") << t.classes.reps[c];
  o << "\n";
  for (std::size_t i = 0; i < t.chars.size(); ++i) {
    o << "chi" << i << " (dim " << t.chars[i].dim << "):";
    for (const cplx& v : t.chars[i].values) o << " " << fmt_c(v);
    o << "\n";
  }
  return o.str();
}

inline std::string orbit_lines(const DecompositionReport& r) {
  std::ostringstream o;
  o << "group " << r.group << " (order " << r.group_order << "), normal " << r.normal
    << " (order " << r.normal_order << ")\n";
  for (std::size_t i = 0; i < r.orbits.size(); ++i) {
    const ReportOrbit& ro = r.orbits[i];
    o << "orbit " << i << ": size " << ro.orbit_size << ", stab " << ro.stab_order << ", N "
      << ro.modulus << ", class " << (ro.trivial ? "trivial" : "nontrivial") << " (order "
      << ro.class_order << "), twisted dims [";
    for (std::size_t k = 0; k < ro.twisted_dims.size(); ++k)
      o << (k ? " " : "") << ro.twisted_dims[k];
    o << "]\n";
  }
  o << "ranks [";
  for (std::size_t i = 0; i < r.orbits.size(); ++i)
    o << (i ? ", " : "") << r.orbits[i].twisted_dims.size();
  o << "]\n";
  return o.str();
}

inline std::string check_lines(const std::vector<CheckResult>& checks) {
  std::ostringstream o;
  for (const CheckResult& c : checks)
    o << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL") << " (residual "
      << round_residual(c.residual) << ")\n";
  return o.str();
}

inline std::string decompose_text(const DecompositionReport& r) {
  std::ostringstream o;
  o << orbit_lines(r);
  for (const ReportRow& row : r.correspondence)
    o << "irrG " << row.irr_g << " (dim " << row.dim << ") -> orbit " << row.orbit << ", twisted "
      << row.twisted << "\n";
  o << check_lines(r.checks);
  return o.str();
}

struct VerifyOutcome {
  std::string target;
  std::vector<CheckResult> checks;
};

inline VerifyOutcome verify_one_file(const std::string& path, std::uint64_t seed,
                                     const Tolerances& tol, int maxOrder) {
  VerifyOutcome out;
  out.target = path;
  json j;
  try {
    j = load_json_file(path);
  } catch (const Error& e) {
    out.checks.push_back({std::string("load (") + e.what() + ")", false, 1.0});
    return out;
  }
  if (j.contains("orbits")) {
    try {
      DecompositionReport rep = report_from_json(j);
      out.checks = verify_report(rep, seed, tol);
    } catch (const Error& e) {
      out.checks.push_back({std::string("parse_report (") + e.what() + ")", false, 1.0});
    }
    return out;
  }
  try {
    Target t = target_from_spec(j, maxOrder);
    require(t.has_normal, errc::bad_input, "spec has no normal subgroup");
    DecompositionReport rep =
        build_report_for(t.name, t.normal_label, t.table, t.normal_gens, seed, tol);
    out.checks = rep.checks;
  } catch (const Error& e) {
    out.checks.push_back({std::string("spec_build (") + e.what() + ")", false, 1.0});
  }
  return out;
}

inline std::vector<VerifyOutcome> verify_catalog(std::uint64_t seed, const Tolerances& tol) {
  std::vector<VerifyOutcome> all;
  for (const CatalogEntry& e : shipped_catalog())
    for (const CatalogEntry::Normal& n : e.normals) {
      VerifyOutcome out;
      out.target = e.name + ":" + n.label;
      try {
        DecompositionReport rep = build_report(e.name, n.label, seed, tol);
        out.checks = rep.checks;
      } catch (const Error& ex) {
        out.checks.push_back({std::string("build (") + ex.what() + ")", false, 1.0});
      }
      all.push_back(std::move(out));
    }
  return all;
}

}  // namespace cli_detail

inline int run_cli(int argc, char** argv) {
  using namespace cli_detail;
  CLI::App app{"clifftwist: twisted equivariant decomposition over finite groups"};
  app.fallthrough();
  app.require_subcommand(1);

  long long seedArg = -1;
  double tolArg = 0, snapArg = 0;
  std::string format = "text", outPath;
  int maxOrder = 2000;
  app.add_option("--seed", seedArg, "rng seed; falls back to CLIFFTWIST_SEED, then 0")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tol", tolArg, "representation tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--snap-tol", snapArg, "root-of-unity snap tolerance override")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", outPath, "write output to a file instead of stdout");
  app.add_option("--max-order", maxOrder, "cap on generated group order")
      ->check(CLI::PositiveNumber);

  std::string groupArg, normalLabel;
  std::vector<std::string> files;
  CLI::App* scCat = app.add_subcommand("catalog", "list shipped groups and designated normals");
  CLI::App* scChar = app.add_subcommand("chartable", "character table of a group");
  scChar->add_option("group", groupArg, "catalog name or group spec json path")->required();
  CLI::App* scObs = app.add_subcommand("obstruction", "per-orbit obstruction summary");
  scObs->add_option("group", groupArg, "catalog name or group spec json path")->required();
  scObs->add_option("--normal", normalLabel, "designated normal subgroup label");
  CLI::App* scDec = app.add_subcommand("decompose", "full decomposition report with checks");
  scDec->add_option("group", groupArg, "catalog name or group spec json path")->required();
  scDec->add_option("--normal", normalLabel, "designated normal subgroup label");
  CLI::App* scVer =
      app.add_subcommand("verify", "verify report/spec json files, or the whole catalog");
  scVer->add_option("files", files, "report or group spec json files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::uint64_t seed = 0;
  if (seedArg >= 0) {
    seed = static_cast<std::uint64_t>(seedArg);
  } else if (const char* env = std::getenv("CLIFFTWIST_SEED")) {
    seed = std::strtoull(env, nullptr, 10);
  }
  Tolerances tol;
  if (tolArg > 0) {
    tol.rep = tolArg;
    tol.chr = tolArg * 10;
  }
  if (snapArg > 0) tol.snap = snapArg;

  std::ostringstream buf;
  int code = 0;
  try {
    if (scCat->parsed()) {
      if (format == "json") {
        json j = json::array();
        for (const CatalogEntry& e : shipped_catalog()) {
          json je;
          je["name"] = e.name;
          je["order"] = e.pg.table.n;
          je["normals"] = json::array();
          for (const CatalogEntry::Normal& n : e.normals) je["normals"].push_back(n.label);
          j.push_back(std::move(je));
        }
        buf << j.dump(2) << "\n";
      } else {
        for (const CatalogEntry& e : shipped_catalog()) {
          buf << e.name << " (order " << e.pg.table.n << "): normals";
          for (const CatalogEntry::Normal& n : e.normals) buf << " " << n.label;
          buf << "\n";
        }
      }
    } else if (scChar->parsed()) {
      Target t = resolve_target(groupArg, "", maxOrder);
      IrrTable tab = character_table(t.table, derive_seed(seed, 0xC4A7ULL, 0), tol);
      if (format == "json")
        buf << chartable_json(t.table, tab).dump(2) << "\n";
      else
        buf << chartable_text(t.table, tab);
    } else if (scObs->parsed() || scDec->parsed()) {
      Target t = resolve_target(groupArg, normalLabel, maxOrder);
      require(t.has_normal, errc::bad_input, "a normal subgroup is required (use --normal)");
      DecompositionReport rep =
          build_report_for(t.name, t.normal_label, t.table, t.normal_gens, seed, tol);
      if (scObs->parsed()) {
        if (format == "json") {
          json j = report_to_json(rep);
          j.erase("correspondence");
          j.erase("checks");
          buf << j.dump(2) << "\n";
        } else {
          buf << orbit_lines(rep);
        }
      } else {
        if (format == "json")
          buf << report_to_json(rep).dump(2) << "\n";
        else
          buf << decompose_text(rep);
        code = rep.all_pass() ? 0 : 1;
      }
    } else if (scVer->parsed()) {
      std::vector<VerifyOutcome> all;
      if (files.empty()) {
        all = verify_catalog(seed, tol);
      } else {
        for (const std::string& f : files) all.push_back(verify_one_file(f, seed, tol, maxOrder));
      }
      bool pass = true;
      for (const VerifyOutcome& v : all)
        for (const CheckResult& c : v.checks) pass = pass && c.pass;
      if (format == "json") {
        json j = json::array();
        for (const VerifyOutcome& v : all) {
          json jv;
          jv["target"] = v.target;
          jv["checks"] = json::array();
          for (const CheckResult& c : v.checks)
            jv["checks"].push_back({{"name", c.name},
                                    {"pass", c.pass},
                                    {"residual", round_residual(c.residual)}});
          j.push_back(std::move(jv));
        }
        buf << j.dump(2) << "\n";
      } else {
        for (const VerifyOutcome& v : all) {
          buf << v.target << "\n";
          buf << check_lines(v.checks);
        }
        buf << (pass ? "all checks passed\n" : "FAILURES present\n");
      }
      code = pass ? 0 : 1;
    }
  } catch (const Error& e) {
    if (format == "json") {
      json j;
      j["error"] = e.what();
      std::cerr << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }

  if (!outPath.empty()) {
    std::ofstream f(outPath);
    if (!f) {
      std::cerr << "error: cannot write " << outPath << "\n";
      return 2;
    }
    f << buf.str();
  } else {
    std::cout << buf.str();
  }
  return code;
}

}  // namespace clifftwist
