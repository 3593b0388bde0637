// modal-ent: command line front end for the modalent library.
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "modalent/classification.hpp"
#include "modalent/errors.hpp"
#include "modalent/general_max_ent.hpp"
#include "modalent/invariants.hpp"
#include "modalent/io.hpp"
#include "modalent/json_format.hpp"
#include "modalent/slocc_mc.hpp"
#include "modalent/symmetry.hpp"

namespace {

using namespace modalent;

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// temp file in the target directory, then rename, so readers never see a partial file
void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out << text;
    out.close();
    if (!out) throw UsageError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw UsageError("cannot rename onto '" + path + "'");
  }
}

StateVector load_state(const std::string& path) { return parse_state(read_text(path)); }

std::string json_text(const Json& j) { return dump_json(j) + "\n"; }

// "a..b" or a single integer
std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("bad range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  return {to_int(std::string_view(text).substr(0, dots)), to_int(std::string_view(text).substr(dots + 2))};
}

struct Io {
  std::string in = "-";
  std::string out = "-";
  std::string format = "json";
};

void add_io(CLI::App* cmd, Io& io, bool with_input, const std::string& default_format) {
  io.format = default_format;
  if (with_input) cmd->add_option("--in", io.in, "state JSON file, - for stdin")->capture_default_str();
  cmd->add_option("--out", io.out, "output file, - for stdout")->capture_default_str();
  cmd->add_option("--format", io.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

void json_only(const Io& io, const char* name) {
  if (io.format != "json") throw UsageError(std::string(name) + " only writes json");
}

int cmd_invariants(const Io& io) {
  const auto report = invariant_report(load_state(io.in));
  if (io.format == "csv")
    write_text(io.out, invariant_csv_header() + "\n" + invariant_csv_row(report) + "\n");
  else
    write_text(io.out, json_text(to_json(report)));
  return 0;
}

int cmd_classify(const Io& io, double tol) {
  json_only(io, "classify");
  const auto state = load_state(io.in);
  const auto profile = bell_profile(state, tol);
  const auto report = invariant_report(state);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["profile"] = to_json(profile);
  j["summary"] = describe(profile);
  j["monotone1"] = report.monotone1;
  j["monotone2"] = report.monotone2;
  j["maximally_entangled"] = is_maximally_entangled(state);
  j["max_entanglement_deviation"] = max_entanglement_deviation(state);
  write_text(io.out, json_text(j));
  return 0;
}

int cmd_canonical(const Io& io) {
  json_only(io, "canonical");
  write_text(io.out, json_text(to_json(canonical_form(load_state(io.in)))));
  return 0;
}

int cmd_family(const Io& io, const std::string& name, const std::vector<double>& params, bool alias) {
  json_only(io, "family");
  write_text(io.out, save_state(family(name, params), alias));
  return 0;
}

int cmd_verify(const Io& io, const std::string& name, const std::vector<std::string>& raw, double tol) {
  json_only(io, "verify-stabilizer");
  std::map<std::string, double> params;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("parameter '" + kv + "' is not key=value");
    double v = 0.0;
    const char* first = kv.data() + eq + 1;
    const char* last = kv.data() + kv.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw UsageError("parameter '" + kv + "' has no numeric value");
    params[kv.substr(0, eq)] = v;
  }
  const auto element = stabilizer(name, params);
  const auto check = verify_stabilizes(element, load_state(io.in), tol);
  Json j = to_json(check);
  j["name"] = name;
  j["declared_prefactor"] = complex_to_json(element.declared_prefactor);
  write_text(io.out, json_text(j));
  return check.stabilizes ? 0 : kExitVerify;
}

int cmd_scan(const Io& io, const std::string& n_range, const std::string& p_range, std::uint64_t cap) {
  const auto [n_lo, n_hi] = parse_range(n_range);
  const auto [p_lo, p_hi] = parse_range(p_range);
  const auto rows = existence_scan(n_lo, n_hi, p_lo, p_hi, cap);
  if (io.format == "csv") {
    std::string text = scan_csv_header() + "\n";
    for (const auto& r : rows) text += scan_csv_row(r) + "\n";
    write_text(io.out, text);
  } else {
    Json a = Json::array();
    for (const auto& r : rows)
      a.push_back({{"n", r.n}, {"m", r.m}, {"p", r.p}, {"feasible", r.feasible}, {"constructed", r.constructed},
                   {"max_entangled_verified", r.verified}});
    write_text(io.out, json_text(Json{{"schema_version", kSchemaVersion}, {"rows", a}}));
  }
  return 0;
}

struct McArgs {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double strength = 0.5;
  std::string state;
  bool random = false;
  std::string summary;
};

int cmd_mc(const Io& io, const McArgs& a) {
  if (!(a.strength > 0.0 && a.strength < 1.0)) throw UsageError("--strength must be in (0,1)");
  MonteCarloConfig cfg;
  cfg.master_seed = a.seed;
  cfg.trials = a.trials;
  cfg.strength = a.strength;
  if (!a.state.empty()) cfg.fixed_state = load_state(a.state);
  const auto s = run_monotonicity_trials(cfg);
  const std::string summary = json_text(to_json(s));
  if (io.format == "csv") {
    std::string text = trial_csv_header() + "\n";
    for (std::size_t i = 0; i < s.records.size(); ++i) text += trial_csv_row(s.records[i], i) + "\n";
    write_text(io.out, text);
    if (a.summary.empty())
      std::cerr << summary;
    else
      write_text(a.summary, summary);
  } else {
    write_text(io.out, summary);
    if (!a.summary.empty()) write_text(a.summary, summary);
  }
  return s.failures == 0 ? 0 : kExitVerify;
}

int cmd_chsh(const Io& io, const std::vector<std::string>& pairs) {
  json_only(io, "chsh");
  const auto state = load_state(io.in);
  Json a = Json::array();
  for (const auto& name : pairs) {
    const ModePair pair = parse_mode_pair(name);
    const auto proj = pair_projection(state, pair);
    Json row;
    row["pair"] = std::string(to_string(pair));
    row["weight"] = proj.weight;
    row["chsh"] = proj.state ? Json(chsh_value(*proj.state)) : Json(nullptr);
    row["concurrence"] = proj.state ? Json(concurrence(*proj.state)) : Json(nullptr);
    a.push_back(row);
  }
  write_text(io.out, json_text(Json{{"schema_version", kSchemaVersion}, {"pairs", a}}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mode-entanglement invariants, classification and checks for few-mode spin systems"};
  app.require_subcommand(1);

  Io inv_io, cls_io, can_io, fam_io, ver_io, scan_io, mc_io, chsh_io;
  double cls_tol = kBellTol, ver_tol = 1e-9;
  std::string fam_name, ver_name, n_range = "1..8", p_range = "0..3";
  std::vector<double> fam_params;
  std::vector<std::string> ver_params, chsh_pairs = {"AB", "BC", "AC"};
  bool fam_alias = false;
  std::uint64_t cap = kDimensionCap;
  McArgs mc;

  auto* inv = app.add_subcommand("invariants", "polynomial and unitary invariants of a (3,2,1) state");
  add_io(inv, inv_io, true, "json");

  auto* cls = app.add_subcommand("classify", "Bell-locality profile and entanglement summary");
  add_io(cls, cls_io, true, "json");
  cls->add_option("--tol", cls_tol, "minor tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  auto* can = app.add_subcommand("canonical", "local-unitary normal form");
  add_io(can, can_io, true, "json");

  auto* fam = app.add_subcommand("family", "write a named state");
  add_io(fam, fam_io, false, "json");
  fam->add_option("--name", fam_name, "family name")->required()->check(CLI::IsMember([] {
    std::vector<std::string> v;
    for (auto n : family_names()) v.emplace_back(n);
    return v;
  }()));
  fam->add_option("--params", fam_params, "comma separated parameters")->delimiter(',')->allow_extra_args(false);
  fam->add_flag("--alias", fam_alias, "write occupations as ud0-style strings");

  auto* ver = app.add_subcommand("verify-stabilizer", "check that a named stabilizer element fixes a state");
  add_io(ver, ver_io, true, "json");
  ver->add_option("--name", ver_name, "stabilizer name")->required();
  ver->add_option("--param", ver_params, "key=value, repeatable");
  ver->add_option("--tol", ver_tol, "phase tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  auto* scan = app.add_subcommand("theorem3-scan", "feasibility and construction scan over (n, m, p)");
  scan->alias("feasibility-scan");
  add_io(scan, scan_io, false, "csv");
  scan->add_option("--n", n_range, "mode range a..b")->capture_default_str();
  scan->add_option("--p", p_range, "spin numerator range a..b")->capture_default_str();
  scan->add_option("--cap", cap, "largest basis to verify")->capture_default_str();

  auto* mcc = app.add_subcommand("monotone-mc", "random two-outcome instrument trials");
  add_io(mcc, mc_io, false, "csv");
  mcc->add_option("--trials", mc.trials, "number of trials")->capture_default_str();
  mcc->add_option("--seed", mc.seed, "master seed")->capture_default_str();
  mcc->add_option("--strength", mc.strength, "instrument strength in (0,1)")->capture_default_str();
  auto* st = mcc->add_option("--state", mc.state, "fixed state file");
  mcc->add_flag("--random", mc.random, "fresh random state per trial (default)")->excludes(st);
  mcc->add_option("--summary", mc.summary, "summary JSON file (stderr when csv and omitted)");

  auto* chsh = app.add_subcommand("chsh", "CHSH value of each pair projection");
  add_io(chsh, chsh_io, true, "json");
  chsh->add_option("--pair", chsh_pairs, "AB, BC or AC; repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*inv) return cmd_invariants(inv_io);
    if (*cls) return cmd_classify(cls_io, cls_tol);
    if (*can) return cmd_canonical(can_io);
    if (*fam) return cmd_family(fam_io, fam_name, fam_params, fam_alias);
    if (*ver) return cmd_verify(ver_io, ver_name, ver_params, ver_tol);
    if (*scan) return cmd_scan(scan_io, n_range, p_range, cap);
    if (*mcc) return cmd_mc(mc_io, mc);
    if (*chsh) return cmd_chsh(chsh_io, chsh_pairs);
  } catch (const modalent::Error& e) {
    std::cerr << "modal-ent: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "modal-ent: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "modal-ent: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
