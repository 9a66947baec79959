#include "qsatom/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace qsatom {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": must be finite");
  return v;
}

double required_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  return number(obj.at(key), where + "." + key);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

// A list of numbers, or {"min", "max", "n"} for an inclusive uniform grid.
std::vector<double> axis(const json& j, const std::string& where) {
  std::vector<double> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
    }
  } else if (j.is_object()) {
    reject_unknown(j, {"min", "max", "n"}, where);
    const double lo = required_number(j, "min", where);
    const double hi = required_number(j, "max", where);
    if (!j.contains("n") || !j.at("n").is_number_integer()) {
      throw ConfigError(where + ": \"n\" must be an integer");
    }
    const long n = j.at("n").get<long>();
    if (n < 1) throw ConfigError(where + ": \"n\" must be >= 1");
    if (n > 1 && !(hi > lo)) throw ConfigError(where + ": need max > min");
    for (long i = 0; i < n; ++i) {
      out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    }
  } else {
    throw ConfigError(where + ": expected a list or {min, max, n}");
  }
  if (out.empty()) throw ConfigError(where + ": must be non-empty");
  return out;
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"mode", "scalars", "phase_shifts", "eta2", "ztilde", "gammatilde", "x_grid",
                  "mollow_reference", "fault_injection", "description"},
                 "config");

  RunConfig cfg;
  const bool has_scalars = j.contains("scalars");
  const bool has_table = j.contains("phase_shifts");
  if (has_scalars == has_table) {
    throw ConfigError("config: exactly one of \"scalars\" or \"phase_shifts\" is required");
  }
  cfg.mode = has_scalars ? ModelMode::scalars : ModelMode::phase_shifts;
  if (j.contains("mode")) {
    const json& m = j.at("mode");
    const std::string expected = has_scalars ? "scalars" : "phase_shifts";
    if (!m.is_string() || m.get<std::string>() != expected) {
      throw ConfigError("config.mode: must be \"" + expected + "\" to match the parameter block");
    }
  }

  try {
    if (has_scalars) {
      const json& s = j.at("scalars");
      if (!s.is_object()) throw ConfigError("config.scalars: expected an object");
      reject_unknown(s,
                     {"delta0_plus", "delta0_minus", "norm2_pg_plus", "norm2_pg_minus",
                      "norm2_pdg", "eps_r"},
                     "config.scalars");
      const std::string w = "config.scalars";
      cfg.scalars = make_scattering_scalars(
          required_number(s, "delta0_plus", w), required_number(s, "delta0_minus", w),
          required_number(s, "norm2_pg_plus", w), required_number(s, "norm2_pg_minus", w),
          required_number(s, "norm2_pdg", w), required_number(s, "eps_r", w));
    } else {
      const json& t = j.at("phase_shifts");
      if (!t.is_object()) throw ConfigError("config.phase_shifts: expected an object");
      reject_unknown(t, {"delta_plus", "delta_minus"}, "config.phase_shifts");
      auto list = [&](const char* key) {
        const std::string w = std::string("config.phase_shifts.") + key;
        if (!t.contains(key) || !t.at(key).is_array()) throw ConfigError(w + ": expected a list");
        return axis(t.at(key), w);
      };
      cfg.table.emplace(list("delta_plus"), list("delta_minus"));
      cfg.scalars = scalars_from_phase_shifts(*cfg.table);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (!j.contains("eta2")) throw ConfigError("config: missing \"eta2\"");
  if (!j.contains("ztilde")) throw ConfigError("config: missing \"ztilde\"");
  cfg.eta2 = axis(j.at("eta2"), "config.eta2");
  for (double e : cfg.eta2) {
    if (e < 0.0) throw ConfigError("config.eta2: values must be >= 0");
  }
  cfg.ztilde = axis(j.at("ztilde"), "config.ztilde");
  if (j.contains("gammatilde")) {
    cfg.gammatilde = number(j.at("gammatilde"), "config.gammatilde");
    if (cfg.gammatilde < 0.0) throw ConfigError("config.gammatilde: must be >= 0");
  }
  if (j.contains("x_grid")) cfg.x_grid = axis(j.at("x_grid"), "config.x_grid");
  if (j.contains("mollow_reference")) {
    if (!j.at("mollow_reference").is_boolean()) {
      throw ConfigError("config.mollow_reference: expected true or false");
    }
    cfg.mollow_reference = j.at("mollow_reference").get<bool>();
  }
  if (j.contains("fault_injection")) {
    const json& f = j.at("fault_injection");
    if (!f.is_string()) throw ConfigError("config.fault_injection: expected a string");
    cfg.fault_injection = f.get<std::string>();
    if (!cfg.fault_injection.empty() && cfg.fault_injection != fault_bprime_sign) {
      throw ConfigError("config.fault_injection: unknown fault \"" + cfg.fault_injection + "\"");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: invalid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

RunConfig default_verify_config() {
  RunConfig cfg;
  cfg.scalars = make_scattering_scalars(-0.03, 0.13, 0.005, 0.005, 0.02, -0.001);
  cfg.eta2 = {28.0};
  cfg.ztilde = {3.0};
  cfg.gammatilde = 0.6;
  return cfg;
}

}  // namespace qsatom
