// Command-line front end: every experiment as a subcommand with reproducible
// JSON/CSV output. Exit codes: 0 success, 2 usage error, 3 precondition
// violation, 4 budget exceeded. Errors are reported as structured JSON on
// stderr. Commands that write files also write a <output>.manifest.json
// recording the command line and input/output digests; identical invocations
// produce byte-identical primary outputs.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "manifest.hpp"
#include "northcott/selftest.hpp"

namespace {

using northcott::io::json;

std::vector<std::string> g_argv;
int g_exit = 0;

// Exact rendering for a quantity when it lies in the supported exact algebra.
std::optional<std::string> quantity_exact_string(const northcott::Quantity& q) {
  if (q.is_exact() && q.den_is_one()) {
    if (auto r = q.num().as_rational()) return r->get_str();
    if (auto l = q.num().as_loglinear()) return northcott::io::ll_to_string(*l);
  }
  return std::nullopt;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

northcott::io::RunManifest start_manifest() {
  northcott::io::RunManifest m;
  m.command = g_argv;
  return m;
}

// --- tower -----------------------------------------------------------------

struct TowerBuildOpts {
  std::string c_expr;
  unsigned long n = 1;
  std::string weight = "const:1";
  unsigned long levels = 1;
  bool d1_above_n = false;
  std::string out = "spec.json";
};

void run_tower_build(const TowerBuildOpts& o) {
  Timer timer;
  auto manifest = start_manifest();
  northcott::LogLinear c = northcott::io::parse_log_expr(o.c_expr);
  northcott::Weight w = northcott::io::parse_weight_arg(o.weight);
  northcott::TowerSpec spec = northcott::build_tower(c, o.n, w, o.levels, o.d1_above_n);
  northcott::io::write_json(o.out, northcott::io::tower_spec_to_json(spec));
  manifest.add_output(o.out);
  manifest.wall_time_s = timer.seconds();
  manifest.write(o.out);
  std::string ds;
  for (const auto& lvl : spec.levels) {
    if (!ds.empty()) ds += ", ";
    ds += lvl.d.get_str();
  }
  std::printf("wrote %s (%zu levels, d = %s)\n", o.out.c_str(), spec.levels.size(),
              ds.c_str());
}

void run_tower_verify(const std::string& spec_file) {
  northcott::TowerSpec spec = northcott::io::load_tower_spec(spec_file);
  std::vector<std::string> failures;
  for (unsigned long i = 1; i <= spec.levels.size(); ++i) {
    northcott::LevelCheck chk = northcott::verify_level(spec, i);
    std::string bad;
    auto note = [&](bool ok, const char* name) {
      if (!ok) bad += std::string(bad.empty() ? "" : ",") + name;
    };
    note(chk.degree_floor, "degree_floor");
    note(chk.base_threshold, "base_threshold");
    note(chk.threshold_gap, "threshold_gap");
    note(chk.prime_window, "prime_window");
    note(chk.companion_window, "companion_window");
    note(chk.decay_proxy, "decay_proxy");
    if (chk.all()) {
      std::printf("level %lu: ok (d=%s, p=%s, q=%s)\n", i,
                  spec.levels[i - 1].d.get_str().c_str(),
                  spec.levels[i - 1].p.get_str().c_str(),
                  spec.levels[i - 1].q.get_str().c_str());
    } else {
      std::printf("level %lu: FAIL (%s)\n", i, bad.c_str());
      failures.push_back("level " + std::to_string(i) + ": " + bad);
    }
  }
  if (!failures.empty()) {
    northcott::fail(northcott::ErrorCode::N0Violation,
                    "verification failed at " + failures.front());
  }
  std::printf("verified %zu levels\n", spec.levels.size());
}

// --- northcott -------------------------------------------------------------

struct BracketOpts {
  std::string spec_file;
  unsigned long levels = 0;
  std::string out = "table.csv";
};

void run_bracket(const BracketOpts& o) {
  Timer timer;
  auto manifest = start_manifest();
  manifest.add_input(o.spec_file);
  northcott::TowerSpec spec = northcott::io::load_tower_spec(o.spec_file);
  northcott::NorBracket br = northcott::northcott_bracket(spec, o.levels);
  northcott::io::write_text(o.out, northcott::io::bracket_to_csv(spec, br));
  manifest.add_output(o.out);
  manifest.wall_time_s = timer.seconds();
  manifest.write(o.out);
  std::printf("wrote %s (%zu levels); estimate [%s, %s]\n", o.out.c_str(), br.levels.size(),
              northcott::io::format12(br.lower_estimate.approx()).c_str(),
              northcott::io::format12(br.upper_estimate.approx()).c_str());
}

struct EnumerateOpts {
  unsigned long deg = 1;
  std::string bound;
  std::string out;
};

void run_enumerate(const EnumerateOpts& o) {
  Timer timer;
  auto manifest = start_manifest();
  northcott::Quantity bound = northcott::io::parse_bound_expr(o.bound);
  northcott::EnumerationResult res = northcott::enumerate_bounded(o.deg, bound);
  json j = northcott::io::enumeration_to_json(o.deg, bound, res);
  if (o.out.empty()) {
    std::printf("%s\n", j.dump(2).c_str());
    return;
  }
  northcott::io::write_json(o.out, j);
  manifest.add_output(o.out);
  manifest.wall_time_s = timer.seconds();
  manifest.write(o.out);
  std::printf("wrote %s (total %lu)\n", o.out.c_str(), res.total);
}

struct FamilyOpts {
  std::string samples_file;
  std::string kase = "infinite";
  std::string out;
};

void run_weight_from_family(const FamilyOpts& o) {
  Timer timer;
  auto manifest = start_manifest();
  manifest.add_input(o.samples_file);
  std::vector<northcott::FamilySample> samples =
      northcott::io::family_samples_from_json(northcott::io::load_json(o.samples_file));
  northcott::FamilyCase kase;
  if (o.kase == "infinite") {
    kase = northcott::FamilyCase::NorInfinite;
  } else if (o.kase == "zero") {
    kase = northcott::FamilyCase::NorZero;
  } else {
    northcott::fail(northcott::ErrorCode::InvalidInput, "case must be infinite or zero");
  }
  northcott::FamilyWeightReport rep = northcott::weight_from_family(samples, kase);
  json j = northcott::io::family_report_to_json(rep);
  if (o.out.empty()) {
    std::printf("%s\n", j.dump(2).c_str());
    return;
  }
  northcott::io::write_json(o.out, j);
  manifest.add_output(o.out);
  manifest.wall_time_s = timer.seconds();
  manifest.write(o.out);
  std::printf("wrote %s (weight %s)\n", o.out.c_str(), rep.weight.to_string().c_str());
}

// --- group -----------------------------------------------------------------

struct CensusOpts {
  std::string d_arg;
  std::string out;
};

std::string census_counts_line(const northcott::SubgroupCensus& c) {
  auto count_of = [&](unsigned long order) {
    auto it = c.counts.find(order);
    return it == c.counts.end() ? 0ul : it->second;
  };
  return "counts {" + std::to_string(c.d) + ":" + std::to_string(count_of(c.d)) + ", " +
         std::to_string(c.d - 1) + ":" + std::to_string(count_of(c.d - 1)) + "}";
}

void run_census(const CensusOpts& o) {
  Timer timer;
  auto manifest = start_manifest();
  std::vector<unsigned long> ds;
  auto dots = o.d_arg.find("..");
  if (dots == std::string::npos) {
    ds.push_back(std::stoul(o.d_arg));
  } else {
    unsigned long lo = std::stoul(o.d_arg.substr(0, dots));
    unsigned long hi = std::stoul(o.d_arg.substr(dots + 2));
    if (lo > hi) northcott::fail(northcott::ErrorCode::InvalidInput, "empty range");
    for (unsigned long d = lo; d <= hi; ++d) {
      // Keep only the supported arguments: odd primes.
      if (d < 3 || d % 2 == 0) continue;
      bool prime = true;
      for (unsigned long f = 3; f * f <= d; f += 2) {
        if (d % f == 0) prime = false;
      }
      if (prime) ds.push_back(d);
    }
    if (ds.empty()) {
      northcott::fail(northcott::ErrorCode::InvalidInput, "no odd primes in range");
    }
  }
  json all = json::array();
  bool single = dots == std::string::npos;
  for (unsigned long d : ds) {
    northcott::SubgroupCensus c = northcott::subgroup_census(d);
    if (single) {
      std::printf("%s\n", census_counts_line(c).c_str());
    } else {
      std::printf("d=%lu: %s\n", d, census_counts_line(c).c_str());
    }
    all.push_back(northcott::io::census_to_json(c));
  }
  if (!o.out.empty()) {
    northcott::io::write_json(o.out, all);
    manifest.add_output(o.out);
    manifest.wall_time_s = timer.seconds();
    manifest.write(o.out);
    std::printf("wrote %s\n", o.out.c_str());
  }
}

// --- height ----------------------------------------------------------------

struct HeightOpts {
  std::string radical;
  std::string weight = "const:1";
};

void run_height_eval(const HeightOpts& o) {
  northcott::RadicalMonomial a = northcott::io::parse_radical_literal(o.radical);
  northcott::Weight w = northcott::io::parse_weight_arg(o.weight);
  northcott::Quantity hw = northcott::weighted_height(a, w);
  if (auto exact = quantity_exact_string(hw)) {
    std::printf("%s ≈ %.4f\n", exact->c_str(), hw.approx());
  } else {
    std::printf("≈ %.4f\n", hw.approx());
  }
}

// --- matrix ----------------------------------------------------------------

struct SpectralOpts {
  std::string file;
  std::string weight;
  std::string out;
};

void run_matrix_spectral(const SpectralOpts& o) {
  Timer timer;
  auto manifest = start_manifest();
  manifest.add_input(o.file);
  northcott::StructuredMatrix A =
      northcott::io::matrix_from_json(northcott::io::load_json(o.file));
  json j;
  j["spectral_height"] = northcott::io::ll_to_json(northcott::spectral_height(A));
  if (!o.weight.empty()) {
    northcott::Weight w = northcott::io::parse_weight_arg(o.weight);
    northcott::WeightedSpectralBracket b = northcott::weighted_spectral_height(A, w);
    j["weight"] = northcott::io::weight_to_json(w);
    json deg;
    deg["lower"] = b.degrees.lower;
    deg["upper"] = b.degrees.upper;
    j["degrees"] = std::move(deg);
    json br;
    br["lower"] = northcott::io::quantity_to_json(b.lower);
    br["upper"] = northcott::io::quantity_to_json(b.upper);
    br["collapsed"] = b.collapsed;
    j["bracket"] = std::move(br);
  }
  if (o.out.empty()) {
    std::printf("%s\n", j.dump(2).c_str());
    return;
  }
  northcott::io::write_json(o.out, j);
  manifest.add_output(o.out);
  manifest.wall_time_s = timer.seconds();
  manifest.write(o.out);
  std::printf("wrote %s\n", o.out.c_str());
}

struct LevelCheckOpts {
  std::string spec_file;
  unsigned long n = 2;
  unsigned long levels = 0;
  std::string out = "report.json";
};

void run_opnorth_check(const LevelCheckOpts& o) {
  Timer timer;
  auto manifest = start_manifest();
  manifest.add_input(o.spec_file);
  northcott::TowerSpec spec = northcott::io::load_tower_spec(o.spec_file);
  northcott::OpNorthReport rep = northcott::prop_opnorth_check(spec, o.n, o.levels);
  northcott::io::write_json(o.out, northcott::io::opnorth_report_to_json(rep));
  manifest.add_output(o.out);
  manifest.wall_time_s = timer.seconds();
  manifest.write(o.out);
  std::size_t match = 0, above = 0;
  for (const auto& lvl : rep.levels) {
    match += lvl.matches_closed_form ? 1 : 0;
    above += lvl.above_half_floor ? 1 : 0;
  }
  std::printf("wrote %s (%zu levels; closed-form matches %zu/%zu; above half floor %zu/%zu)\n",
              o.out.c_str(), rep.levels.size(), match, rep.levels.size(), above,
              rep.levels.size());
}

void run_prop_spectral_check(const LevelCheckOpts& o) {
  Timer timer;
  auto manifest = start_manifest();
  manifest.add_input(o.spec_file);
  northcott::TowerSpec spec = northcott::io::load_tower_spec(o.spec_file);
  northcott::PropSpectralReport rep = northcott::prop_spectral_check(spec, o.n, o.levels);
  northcott::io::write_json(o.out, northcott::io::spectral_report_to_json(rep));
  manifest.add_output(o.out);
  manifest.wall_time_s = timer.seconds();
  manifest.write(o.out);
  std::size_t within = 0, equal = 0;
  for (const auto& lvl : rep.levels) {
    within += lvl.upper_within ? 1 : 0;
    equal += lvl.equality ? 1 : 0;
  }
  std::printf("wrote %s (%zu levels; upper within %zu/%zu; equality %zu/%zu)\n", o.out.c_str(),
              rep.levels.size(), within, rep.levels.size(), equal, rep.levels.size());
}

// --- selftest --------------------------------------------------------------

struct SelftestOpts {
  bool quick = false;
  unsigned long criterion = 0;  // 0 = all
};

void run_selftest(const SelftestOpts& o) {
  std::vector<northcott::CheckResult> results;
  if (o.criterion != 0) {
    results.push_back(northcott::run_check(static_cast<int>(o.criterion)));
  } else {
    results = northcott::run_checks(o.quick);
  }
  bool all_pass = true;
  for (const northcott::CheckResult& res : results) {
    std::printf("criterion %d: %s  %s  (%.2f s)%s%s\n", res.id,
                res.pass ? "PASS" : "FAIL", res.name.c_str(), res.seconds,
                res.detail.empty() ? "" : "  -- ", res.detail.c_str());
    all_pass = all_pass && res.pass;
  }
  if (!all_pass) g_exit = 1;
}

}  // namespace

int main(int argc, char** argv) {
  g_argv.assign(argv, argv + argc);
  CLI::App app{"Exact weighted heights, radical towers, and matrix height experiments"};
  app.set_version_flag("--version", northcott::io::kToolVersion);
  app.require_subcommand(1);

  // tower
  CLI::App* tower = app.add_subcommand("tower", "Build or verify radical tower specs");
  tower->require_subcommand(1);
  TowerBuildOpts tb;
  CLI::App* tower_build = tower->add_subcommand("build", "Construct a tower specification");
  tower_build->add_option("--c", tb.c_expr, "Target constant, e.g. \"log(2)\"")->required();
  tower_build->add_option("--n", tb.n, "Root index applied to every witness");
  tower_build->add_option("--weight", tb.weight, "Weight descriptor, e.g. const:1 or gamma:1/2");
  tower_build->add_option("--levels", tb.levels, "Number of levels")->required();
  tower_build->add_flag("--d1-above-n", tb.d1_above_n, "Force the first degree above n");
  tower_build->add_option("--out", tb.out, "Output spec path (default spec.json)");
  tower_build->callback([&]() { run_tower_build(tb); });

  std::string verify_file;
  CLI::App* tower_verify = tower->add_subcommand("verify", "Re-derive every level inequality");
  tower_verify->add_option("spec", verify_file, "Tower spec JSON")->required();
  tower_verify->callback([&]() { run_tower_verify(verify_file); });

  // height
  CLI::App* height = app.add_subcommand("height", "Evaluate weighted heights");
  height->require_subcommand(1);
  HeightOpts ho;
  CLI::App* height_eval = height->add_subcommand("eval", "Weighted height of a radical");
  height_eval->add_option("--radical", ho.radical, "Radical literal, e.g. 5/7^1/2")->required();
  height_eval->add_option("--weight", ho.weight, "Weight descriptor (default const:1)");
  height_eval->callback([&]() { run_height_eval(ho); });

  // northcott
  CLI::App* nc = app.add_subcommand("northcott", "Bracket estimates and enumeration");
  nc->require_subcommand(1);
  BracketOpts bo;
  CLI::App* nc_bracket = nc->add_subcommand("bracket", "Per-level threshold bracket table");
  nc_bracket->add_option("spec", bo.spec_file, "Tower spec JSON")->required();
  nc_bracket->add_option("--levels", bo.levels, "Use only the first k levels (0 = all)");
  nc_bracket->add_option("--out", bo.out, "Output CSV path (default table.csv)");
  nc_bracket->callback([&]() { run_bracket(bo); });

  EnumerateOpts eo;
  CLI::App* nc_enum = nc->add_subcommand("enumerate", "All elements of bounded weighted height");
  nc_enum->add_option("--deg", eo.deg, "Degree cap (1..4)")->required();
  nc_enum->add_option("--bound", eo.bound, "Height bound, e.g. 0.2 or \"log(2) + 1e-6\"")
      ->required();
  nc_enum->add_option("--out", eo.out, "Output JSON path (default: print to stdout)");
  nc_enum->callback([&]() { run_enumerate(eo); });

  FamilyOpts fo;
  CLI::App* nc_family = nc->add_subcommand("weight-from-family",
                                           "Staircase weight from degree/height samples");
  nc_family->add_option("--samples", fo.samples_file, "Samples JSON")->required();
  nc_family->add_option("--case", fo.kase, "infinite or zero");
  nc_family->add_option("--out", fo.out, "Output JSON path (default: print to stdout)");
  nc_family->callback([&]() { run_weight_from_family(fo); });

  // group
  CLI::App* group = app.add_subcommand("group", "Brute-force subgroup census");
  group->require_subcommand(1);
  CensusOpts co;
  CLI::App* census = group->add_subcommand("census", "Subgroup counts for odd prime d");
  census->add_option("--d", co.d_arg, "Odd prime, or a range like 3..31")->required();
  census->add_option("--out", co.out, "Output JSON path");
  census->callback([&]() { run_census(co); });

  // matrix
  CLI::App* matrix = app.add_subcommand("matrix", "Spectral and operator heights");
  matrix->require_subcommand(1);
  SpectralOpts so;
  CLI::App* m_spectral = matrix->add_subcommand("spectral", "Spectral height of a matrix");
  m_spectral->add_option("--file", so.file, "Matrix JSON")->required();
  m_spectral->add_option("--weight", so.weight, "Weight descriptor (optional)");
  m_spectral->add_option("--out", so.out, "Output JSON path (default: print to stdout)");
  m_spectral->callback([&]() { run_matrix_spectral(so); });

  LevelCheckOpts oo;
  CLI::App* m_opnorth = matrix->add_subcommand("opnorth-check",
                                               "Diagonal operator heights along a tower");
  m_opnorth->add_option("spec", oo.spec_file, "Tower spec JSON")->required();
  m_opnorth->add_option("--n", oo.n, "Matrix size")->required();
  m_opnorth->add_option("--levels", oo.levels, "Use only the first k levels (0 = all)");
  m_opnorth->add_option("--out", oo.out, "Output JSON path (default report.json)");
  m_opnorth->callback([&]() { run_opnorth_check(oo); });

  LevelCheckOpts po;
  CLI::App* m_prop = matrix->add_subcommand("prop-spectral-check",
                                            "Companion-block spectral brackets along a tower");
  m_prop->add_option("spec", po.spec_file, "Tower spec JSON")->required();
  m_prop->add_option("--n", po.n, "Block size")->required();
  m_prop->add_option("--levels", po.levels, "Use only the first k levels (0 = all)");
  m_prop->add_option("--out", po.out, "Output JSON path (default report.json)");
  m_prop->callback([&]() { run_prop_spectral_check(po); });

  // selftest
  SelftestOpts sto;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in verification suite");
  CLI::Option* q_flag = selftest->add_flag("--quick", sto.quick, "Only criteria 1, 4, 6");
  selftest->add_option("--criterion", sto.criterion, "Run a single criterion (1..9)")
      ->excludes(q_flag);
  selftest->callback([&]() { run_selftest(sto); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const northcott::Error& e) {
    json err;
    err["error"]["code"] = northcott::error_name(e.code());
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return e.is_budget() ? 4 : 3;
  } catch (const std::exception& e) {
    json err;
    err["error"]["code"] = "internal";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 3;
  }
  return g_exit;
}
