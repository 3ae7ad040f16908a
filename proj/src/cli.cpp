#include "holoconv/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "holoconv/json_io.hpp"

namespace holoconv {

namespace {

struct CommonOpts {
  std::string mapping_file;
  double alpha = 0.0;
  std::uint64_t seed = 1;  // fixed default: no wall-clock entropy
  std::size_t samples = 100000;
  double radius_cap = 0.999;
  int refine_steps = 200;
  double tol = 1e-10;
  int restarts = 32;
  bool serial = false;
  std::string out;
  std::string csv;
};

SearchConfig search_cfg(const CommonOpts& o) {
  SearchConfig cfg;
  cfg.samples = o.samples;
  cfg.refine_steps = o.refine_steps;
  cfg.seed = o.seed;
  cfg.radius_cap = o.radius_cap;
  cfg.tol = o.tol;
  cfg.exec = o.serial ? Exec::Serial : Exec::Parallel;
  return cfg;
}

NormConfig norm_cfg(const CommonOpts& o) {
  NormConfig cfg;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.exec = o.serial ? Exec::Serial : Exec::Parallel;
  return cfg;
}

json cfg_to_json(const SearchConfig& cfg) {
  return json{{"samples", cfg.samples},       {"refine_steps", cfg.refine_steps},
              {"seed", cfg.seed},             {"radius_cap", cfg.radius_cap},
              {"tol", cfg.tol}};
}

void emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (!out.empty()) write_text_atomic(text, out);
  std::cout << text;
}

void add_search_flags(CLI::App* cmd, CommonOpts& o, bool with_refine = true) {
  cmd->add_option("--seed", o.seed, "RNG seed (fixed default for reproducibility)");
  cmd->add_option("--samples", o.samples, "number of sampled points/pairs");
  cmd->add_option("--radius-cap", o.radius_cap, "largest sampled ||z||")
      ->check(CLI::Range(1e-6, 1.0 - 1e-9));
  if (with_refine)
    cmd->add_option("--refine-steps", o.refine_steps, "local descent step budget");
  cmd->add_option("--tol", o.tol, "violation tolerance");
  cmd->add_flag("--serial", o.serial, "disable the OpenMP path");
}

int cmd_check_convex(const CommonOpts& o) {
  const Mapping f = load_mapping_file(o.mapping_file);
  const SearchConfig cfg = search_cfg(o);
  const SearchOutcome out = find_witness(f, OrderParam(o.alpha), cfg);
  json rep{{"command", "check-convex"},
           {"mapping", o.mapping_file},
           {"alpha", o.alpha},
           {"config", cfg_to_json(cfg)}};
  rep.update(search_outcome_to_json(out));
  emit(rep, o.out);
  return out.witness ? 2 : 0;
}

int cmd_check_starlike(const CommonOpts& o) {
  const Mapping f = load_mapping_file(o.mapping_file);
  const SearchConfig cfg = search_cfg(o);
  const StarlikeSearchOutcome out = find_starlike_witness(f, OrderParam(o.alpha), cfg);
  json rep{{"command", "check-starlike"},
           {"mapping", o.mapping_file},
           {"alpha", o.alpha},
           {"config", cfg_to_json(cfg)}};
  rep.update(starlike_outcome_to_json(out));
  emit(rep, o.out);
  return out.witness ? 2 : 0;
}

int cmd_certify(const CommonOpts& o, double c, bool has_c) {
  const Mapping f = load_mapping_file(o.mapping_file);
  const auto* poly = std::get_if<PolynomialMapping>(&f);
  if (poly == nullptr)
    throw SpecError("certify: coefficient certificates need a polynomial mapping");
  const OrderParam alpha(o.alpha);
  const NormConfig ncfg = norm_cfg(o);
  json rep{{"command", "certify"},
           {"mapping", o.mapping_file},
           {"alpha", o.alpha},
           {"convex", certificate_to_json(coeff_certificate_convex(*poly, alpha, ncfg))},
           {"starlike",
            certificate_to_json(coeff_certificate_starlike(*poly, alpha, ncfg))},
           {"convex_class",
            certificate_to_json(coeff_class_convex(*poly, alpha, ncfg))}};
  if (has_c) {
    SearchConfig cfg = search_cfg(o);
    rep["near_identity"] =
        certificate_to_json(near_identity_certificate(f, alpha, c, cfg));
  }
  emit(rep, o.out);
  return 0;
}

int cmd_constants(const CommonOpts& o) {
  const OrderParam alpha(o.alpha);
  const double beta = starlike_order_of_convex(alpha.alpha);
  json table = json::array();
  for (int i = 1; i <= 9; ++i) {
    const double r = 0.1 * i;
    const GrowthBounds b = growth_bounds(beta, r);
    table.push_back(json{{"r", r}, {"lower", b.lower}, {"upper", b.upper}});
  }
  emit(json{{"command", "constants"},
            {"alpha", alpha.alpha},
            {"A_alpha", starlike_coeff_bound(alpha.alpha)},
            {"beta", beta},
            {"covering_constant", covering_radius(beta)},
            {"growth_table", std::move(table)}},
       o.out);
  return 0;
}

int cmd_phi_build(const CommonOpts& o) {
  std::ifstream in(o.mapping_file);
  if (!in) throw SpecError("cannot open \"" + o.mapping_file + "\"");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SpecError(o.mapping_file + ": " + std::string(e.what()));
  }
  // Same layout as the phi mapping spec, minus the type tag.
  j["type"] = "phi";
  const Mapping f = mapping_from_json(j);
  emit(mapping_to_json(f), o.out);
  return 0;
}

int cmd_alexander(const CommonOpts& o) {
  const Mapping f = load_mapping_file(o.mapping_file);
  const auto* poly = std::get_if<PolynomialMapping>(&f);
  if (poly == nullptr)
    throw SpecError("alexander: transform is defined for polynomial mappings");
  emit(mapping_to_json(alexander_transform(*poly)), o.out);
  return 0;
}

int cmd_growth(const CommonOpts& o) {
  const Mapping f = load_mapping_file(o.mapping_file);
  SearchConfig cfg = search_cfg(o);
  const GrowthReport rep = growth_check(f, OrderParam(o.alpha), cfg, !o.csv.empty());
  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << "norm_z,norm_fz,lower,upper\n";
    char line[160];
    for (const GrowthRow& row : rep.rows) {
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", row.norm_z,
                    row.norm_fz, row.lower, row.upper);
      csv << line;
    }
    write_text_atomic(csv.str(), o.csv);
  }
  json out{{"command", "growth"},
           {"mapping", o.mapping_file},
           {"alpha", o.alpha},
           {"config", cfg_to_json(cfg)}};
  out.update(growth_report_to_json(rep));
  emit(out, o.out);
  return rep.violations > 0 ? 2 : 0;
}

int cmd_seeded_witness(const CommonOpts& o, const std::string& point_file) {
  const Mapping f = load_mapping_file(o.mapping_file);
  std::ifstream in(point_file);
  if (!in) throw SpecError("cannot open seed point \"" + point_file + "\"");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SpecError(point_file + ": " + std::string(e.what()));
  }
  if (!j.contains("z") || !j.contains("x"))
    throw SpecError(point_file + ": seed point needs fields \"z\" and \"x\"");
  const CVector z = vector_from_json(j.at("z"), "/z");
  const CVector x = vector_from_json(j.at("x"), "/x");
  const SearchConfig cfg = search_cfg(o);
  const SearchOutcome out = seeded_witness(f, OrderParam(o.alpha), z, x, cfg);
  json rep{{"command", "seeded-witness"},
           {"mapping", o.mapping_file},
           {"alpha", o.alpha},
           {"config", cfg_to_json(cfg)}};
  rep.update(search_outcome_to_json(out));
  emit(rep, o.out);
  return out.witness ? 2 : 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "Convexity/starlikeness verification and witness search for holomorphic "
      "mappings on the unit ball of C^n"};
  app.require_subcommand(1);

  CommonOpts o;
  double c_bound = 0.0;
  std::string point_file;

  auto* check_convex = app.add_subcommand(
      "check-convex", "search for a violation of the order-alpha convexity "
                      "condition (exit 2 when a witness is found)");
  check_convex->add_option("mapping", o.mapping_file, "mapping spec JSON")->required();
  check_convex->add_option("--alpha", o.alpha, "order parameter in [0,1)")->required();
  check_convex->add_option("--out", o.out, "write the JSON report here");
  add_search_flags(check_convex, o);

  auto* check_starlike = app.add_subcommand(
      "check-starlike", "search for a violation of the order-alpha starlikeness "
                        "condition (exit 2 when a witness is found)");
  check_starlike->add_option("mapping", o.mapping_file, "mapping spec JSON")->required();
  check_starlike->add_option("--alpha", o.alpha, "order parameter in [0,1)")->required();
  check_starlike->add_option("--out", o.out, "write the JSON report here");
  add_search_flags(check_starlike, o);

  auto* certify = app.add_subcommand(
      "certify", "coefficient certificates for a polynomial mapping, plus the "
                 "sampled near-identity certificate when --c is given");
  certify->add_option("mapping", o.mapping_file, "mapping spec JSON")->required();
  certify->add_option("--alpha", o.alpha, "order parameter in [0,1)")->required();
  auto* c_opt = certify->add_option("--c", c_bound, "bound for ||Df(z)-I|| <= c < 1");
  certify->add_option("--restarts", o.restarts, "norm-estimator restarts");
  certify->add_option("--out", o.out, "write the JSON report here");
  add_search_flags(certify, o, false);

  auto* constants = app.add_subcommand(
      "constants", "A(alpha), beta(alpha), covering constant and growth table");
  constants->add_option("--alpha", o.alpha, "order parameter in [0,1)")->required();
  constants->add_option("--out", o.out, "write the JSON report here");

  auto* phi_build = app.add_subcommand(
      "phi-build", "materialize a phi mapping spec from orthonormal directions "
                   "and named disk functions ({\"u\": [...], \"g\": [...]})");
  phi_build->add_option("input", o.mapping_file, "input JSON")->required();
  phi_build->add_option("--out", o.out, "write the mapping spec here");

  auto* alexander = app.add_subcommand(
      "alexander", "write the transformed mapping g(z) = Df(z)(z), term-wise "
                   "A_k -> k A_k");
  alexander->add_option("mapping", o.mapping_file, "mapping spec JSON")->required();
  alexander->add_option("--out", o.out, "write the mapping spec here");

  auto* growth = app.add_subcommand(
      "growth", "sample the growth bounds with beta = beta(alpha); --csv dumps "
                "rows norm_z,norm_fz,lower,upper (exit 2 on violations)");
  growth->add_option("mapping", o.mapping_file, "mapping spec JSON")->required();
  growth->add_option("--alpha", o.alpha, "order parameter in [0,1)")->required();
  growth->add_option("--csv", o.csv, "write sampled rows as CSV here");
  growth->add_option("--out", o.out, "write the JSON report here");
  add_search_flags(growth, o, false);

  auto* seeded = app.add_subcommand(
      "seeded-witness", "evaluate and locally refine a caller-supplied "
                        "admissible pair ({\"z\": [...], \"x\": [...]})");
  seeded->add_option("mapping", o.mapping_file, "mapping spec JSON")->required();
  seeded->add_option("--alpha", o.alpha, "order parameter in [0,1)")->required();
  seeded->add_option("--point", point_file, "seed pair JSON")->required();
  seeded->add_option("--out", o.out, "write the JSON report here");
  add_search_flags(seeded, o);

  // growth samples a bounded region; a smaller default keeps CSVs manageable
  growth->parse_complete_callback([&] {
    if (growth->count("--samples") == 0) o.samples = 10000;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(check_convex)) return cmd_check_convex(o);
    if (app.got_subcommand(check_starlike)) return cmd_check_starlike(o);
    if (app.got_subcommand(certify)) return cmd_certify(o, c_bound, c_opt->count() > 0);
    if (app.got_subcommand(constants)) return cmd_constants(o);
    if (app.got_subcommand(phi_build)) return cmd_phi_build(o);
    if (app.got_subcommand(alexander)) return cmd_alexander(o);
    if (app.got_subcommand(growth)) return cmd_growth(o);
    if (app.got_subcommand(seeded)) return cmd_seeded_witness(o, point_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace holoconv
