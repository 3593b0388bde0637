#include <sstream>

#include "modalent/io.hpp"
#include "modalent/json_format.hpp"

namespace modalent {

namespace {

std::string b(bool x) { return x ? "true" : "false"; }

std::string join(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    first = false;
    out += c;
  }
  return out;
}

std::string f(double x) { return format_double(x); }

}  // namespace

Json to_json(const InvariantReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["I_AB"] = complex_to_json(r.i_ab);
  j["I_BC"] = complex_to_json(r.i_bc);
  j["I_AC"] = complex_to_json(r.i_ac);
  j["I1"] = complex_to_json(r.i1);
  j["I2"] = complex_to_json(r.i2);
  j["abs_I1"] = std::abs(r.i1);
  j["abs_I2"] = std::abs(r.i2);
  j["monotone1"] = r.monotone1;
  j["monotone2"] = r.monotone2;
  j["I_A_BC"] = r.i_a_bc;
  j["I_B_AC"] = r.i_b_ac;
  j["I_C_AB"] = r.i_c_ab;
  j["W"] = Json::array({Json::array({complex_to_json(r.w(0, 0)), complex_to_json(r.w(0, 1))}),
                        Json::array({complex_to_json(r.w(1, 0)), complex_to_json(r.w(1, 1))})});
  return j;
}

std::string invariant_csv_header() {
  return "schema_version,I_AB_re,I_AB_im,I_BC_re,I_BC_im,I_AC_re,I_AC_im,I1_re,I1_im,I2_re,I2_im,"
         "monotone1,monotone2,I_A_BC,I_B_AC,I_C_AB";
}

std::string invariant_csv_row(const InvariantReport& r) {
  return join({std::to_string(kSchemaVersion), f(r.i_ab.real()), f(r.i_ab.imag()), f(r.i_bc.real()),
               f(r.i_bc.imag()), f(r.i_ac.real()), f(r.i_ac.imag()), f(r.i1.real()), f(r.i1.imag()),
               f(r.i2.real()), f(r.i2.imag()), f(r.monotone1), f(r.monotone2), f(r.i_a_bc), f(r.i_b_ac),
               f(r.i_c_ab)});
}

Json to_json(const BellProfile& p) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["pair_nonlocal"] = {{"AB", p.pair_nonlocal[0]}, {"BC", p.pair_nonlocal[1]}, {"AC", p.pair_nonlocal[2]}};
  j["bipartition_nonlocal"] = {
      {"A|BC", p.bipartition_nonlocal[0]}, {"B|AC", p.bipartition_nonlocal[1]}, {"C|AB", p.bipartition_nonlocal[2]}};
  j["tri_local"] = p.tri_local;
  return j;
}

Json to_json(const CanonicalParams& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["r"] = Json::array();
  for (double x : c.r) j["r"].push_back(x);
  j["phi"] = c.phi;
  j["phi_prime"] = c.phi_prime;
  j["theta"] = c.theta;
  j["residual"] = c.residual;
  j["reducing_kind"] = std::string(to_string(c.reducing.kind()));
  j["reducing"] = element_to_json(c.reducing);
  return j;
}

Json to_json(const StabilizerCheck& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["stabilizes"] = c.stabilizes;
  j["phase"] = c.phase ? complex_to_json(*c.phase) : Json(nullptr);
  j["net_phase"] = c.phase ? complex_to_json(c.net_phase) : Json(nullptr);
  j["residual"] = c.residual;
  return j;
}

Json to_json(const TrialRecord& r) {
  Json j;
  j["seed"] = r.seed;
  j["mode"] = r.mode;
  j["p"] = {r.p[0], r.p[1]};
  j["monotone1_before"] = r.monotone1_before;
  j["monotone2_before"] = r.monotone2_before;
  j["monotone1_after"] = {r.monotone1_after[0], r.monotone1_after[1]};
  j["monotone2_after"] = {r.monotone2_after[0], r.monotone2_after[1]};
  j["included"] = {r.included[0], r.included[1]};
  j["margin"] = r.margin;
  return j;
}

Json to_json(const MonteCarloSummary& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["max_margin"] = s.max_margin;
  j["trials"] = s.trials;
  j["failures"] = s.failures;
  Json bad = Json::array();
  for (const auto& r : s.records)
    if (r.margin > kMarginTol) bad.push_back(to_json(r));
  j["violations"] = bad;
  return j;
}

std::string trial_csv_header() {
  return "schema_version,index,seed,mode,p0,p1,monotone1_before,monotone2_before,monotone1_after0,"
         "monotone1_after1,monotone2_after0,monotone2_after1,included0,included1,margin";
}

std::string trial_csv_row(const TrialRecord& r, std::size_t index) {
  return join({std::to_string(kSchemaVersion), std::to_string(index), std::to_string(r.seed), std::to_string(r.mode), f(r.p[0]),
               f(r.p[1]), f(r.monotone1_before), f(r.monotone2_before), f(r.monotone1_after[0]),
               f(r.monotone1_after[1]), f(r.monotone2_after[0]), f(r.monotone2_after[1]), b(r.included[0]),
               b(r.included[1]), f(r.margin)});
}

std::string scan_csv_header() { return "schema_version,n,m,p,feasible,constructed,max_entangled_verified"; }

std::string scan_csv_row(const ScanRow& r) {
  return join({std::to_string(kSchemaVersion), std::to_string(r.n), std::to_string(r.m), std::to_string(r.p),
               b(r.feasible), b(r.constructed), b(r.verified)});
}

}  // namespace modalent
