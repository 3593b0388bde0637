#include <cmath>
#include <set>

#include "modalent/errors.hpp"
#include "modalent/io.hpp"
#include "modalent/json_format.hpp"

namespace modalent {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::parse_error, what); }

int read_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) fail(std::string("shape.") + key + " must be an integer");
  const auto v = j[key].get<long long>();
  if (v < 0 || v > 100000) fail(std::string("shape.") + key + " out of range");
  return static_cast<int>(v);
}

double read_number(const nlohmann::json& rec, const char* key, const std::string& where, bool required) {
  if (!rec.contains(key)) {
    if (required) fail(where + ": missing \"" + key + "\"");
    return 0.0;
  }
  if (!rec[key].is_number()) fail(where + ": \"" + key + "\" must be a number");
  const double v = rec[key].get<double>();
  if (!std::isfinite(v)) fail(where + ": \"" + key + "\" is not finite");
  return v;
}

}  // namespace

StateVector state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("state must be a JSON object");
  if (!j.contains("shape") || !j["shape"].is_object()) fail("missing \"shape\" object");
  const auto& sh = j["shape"];
  std::optional<SystemShape> shape;
  try {
    shape.emplace(read_int(sh, "modes"), read_int(sh, "particles"), read_int(sh, "spin_numerator"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse_error) throw;
    fail(std::string("bad shape: ") + e.what());
  }
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) fail("missing \"amplitudes\" array");
  StateVector out(*shape);
  std::set<OccupationSequence> seen;
  std::size_t index = 0;
  for (const auto& rec : j["amplitudes"]) {
    const std::string where = "amplitude record " + std::to_string(index);
    if (!rec.is_object() || !rec.contains("occ")) fail(where + ": expected an object with \"occ\"");
    OccupationSequence seq;
    const auto& occ = rec["occ"];
    if (occ.is_string()) {
      if (shape->spin_numerator() != 1) fail(where + ": alias form needs spin_numerator 1");
      try {
        seq = OccupationSequence::from_alias(occ.get<std::string>());
      } catch (const Error& e) {
        fail(where + ": " + e.what());
      }
    } else if (occ.is_array()) {
      std::vector<std::uint8_t> syms;
      for (const auto& s : occ) {
        if (!s.is_number_integer()) fail(where + ": occ entries must be integers");
        const auto v = s.get<long long>();
        if (v < 0 || v > 255) fail(where + ": occ entry out of range");
        syms.push_back(static_cast<std::uint8_t>(v));
      }
      seq = OccupationSequence(std::move(syms));
    } else {
      fail(where + ": occ must be a list or an alias string");
    }
    if (!admissible(seq, *shape)) fail(where + ": sequence " + seq.describe() + " not admissible for " + shape->describe());
    if (!seen.insert(seq).second) fail(where + ": duplicate sequence " + seq.describe());
    const double re = read_number(rec, "re", where, true);
    const double im = read_number(rec, "im", where, false);
    out.set(seq, Complex(re, im));
    ++index;
  }
  return out;
}

StateVector parse_state(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return state_from_json(j);
}

Json state_to_json(const StateVector& state, bool alias) {
  const auto& sh = state.shape();
  if (alias && sh.spin_numerator() != 1) throw Error(ErrorKind::invalid_argument, "alias form needs p = 1");
  Json j;
  j["shape"] = {{"modes", sh.modes()}, {"particles", sh.particles()}, {"spin_numerator", sh.spin_numerator()}};
  Json amps = Json::array();
  for (const auto& [seq, a] : state.amplitudes()) {
    Json rec;
    if (alias) {
      rec["occ"] = seq.alias();
    } else {
      Json occ = Json::array();
      for (auto s : seq.symbols()) occ.push_back(static_cast<int>(s));
      rec["occ"] = occ;
    }
    rec["re"] = a.real();
    rec["im"] = a.imag();
    amps.push_back(rec);
  }
  j["amplitudes"] = amps;
  return j;
}

std::string save_state(const StateVector& state, bool alias) { return dump_json(state_to_json(state, alias)) + "\n"; }

Json complex_to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("complex value must be an object");
  return Complex(read_number(j, "re", "complex", true), read_number(j, "im", "complex", false));
}

Json operator_to_json(const LocalOperator& op) {
  Json rows = Json::array();
  for (int i = 0; i < op.dim(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < op.dim(); ++k) row.push_back(complex_to_json(op(i, k)));
    rows.push_back(row);
  }
  return Json{{"dim", op.dim()}, {"rows", rows}};
}

LocalOperator operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer()) fail("operator needs integer \"dim\"");
  const auto d = j["dim"].get<long long>();
  if (d < 2 || d > 256) fail("operator dim out of range");
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].size() != static_cast<std::size_t>(d))
    fail("operator needs dim rows");
  Matrix m(d, d);
  for (long long i = 0; i < d; ++i) {
    const auto& row = j["rows"][static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) fail("operator row " + std::to_string(i));
    for (long long k = 0; k < d; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return LocalOperator(std::move(m));
}

Json element_to_json(const GroupElement& g) {
  Json a = Json::array();
  for (const auto& f : g.factors()) a.push_back(operator_to_json(f));
  return a;
}

GroupElement element_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) fail("group element must be a non-empty array of operators");
  std::vector<LocalOperator> f;
  for (const auto& op : j) f.push_back(operator_from_json(op));
  return GroupElement(std::move(f));
}

}  // namespace modalent
