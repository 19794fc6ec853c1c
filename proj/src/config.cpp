#include "omm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "omm/figures.hpp"
#include "omm/response.hpp"

namespace omm {

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void require_object(const ConfigDocument& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown(const ConfigDocument& j, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + "." + key + ": unknown key");
  }
}

double number(const ConfigDocument& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": not finite");
  return v;
}

int integer(const ConfigDocument& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

std::string text(const ConfigDocument& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const ConfigDocument& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

/// {"name": ..., "values": [...]} or {"name": ..., "from": a, "to": b, "count": n}.
SweepAxis axis(const ConfigDocument& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j, where, {"name", "values", "from", "to", "count"});
  if (!j.contains("name")) throw ConfigError(where + ".name: missing");
  SweepAxis a;
  a.name = text(j["name"], where + ".name");
  if (j.contains("values")) {
    if (j.contains("from") || j.contains("to") || j.contains("count")) {
      throw ConfigError(where + ": give either values or from/to/count");
    }
    a.values = numbers(j["values"], where + ".values");
  } else {
    for (const char* k : {"from", "to", "count"}) {
      if (!j.contains(k)) throw ConfigError(where + "." + k + ": missing");
    }
    const int n = integer(j["count"], where + ".count");
    if (n < 1) throw ConfigError(where + ".count: must be >= 1");
    a.values = linspace(number(j["from"], where + ".from"), number(j["to"], where + ".to"), n);
  }
  return a;
}

}  // namespace

ConfigDocument parse_config(std::string_view body, const std::string& origin) {
  try {
    auto doc = ConfigDocument::parse(body);
    require_object(doc, origin);
    return doc;
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports "[json.exception...] parse error at line L, column C: ..."
    std::string msg = e.what();
    if (auto pos = msg.find(": ", msg.find("column")); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ConfigError(origin + ": " + line_col(body, e.byte > 0 ? e.byte - 1 : 0) + ": " + msg);
  }
}

ConfigDocument load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

void apply_override(ConfigDocument& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("--set " + std::string(assignment) + ": expected key=value");
  }
  std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  const bool section = key == "params" || key == "physical" || key == "sweep" || key == "coupling";
  if (key.find('.') == std::string::npos && !section) key = "params." + key;

  ConfigDocument value;
  try {
    value = ConfigDocument::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    value = raw;
  }

  ConfigDocument* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("--set " + key + ": empty path component");
    if (!node->is_object()) throw ConfigError("--set " + key + ": '" + part + "' is not inside an object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = ConfigDocument::object();
    start = dot + 1;
  }
}

RunConfig interpret(const ConfigDocument& doc) {
  require_object(doc, "config");
  reject_unknown(doc, "config", {"params", "physical", "sweep", "coupling"});
  RunConfig cfg;
  cfg.effective = doc;

  std::optional<double> dc, dm, gcb, gmb;
  if (doc.contains("params")) {
    const auto& j = doc["params"];
    require_object(j, "params");
    for (const auto& [key, val] : j.items()) {
      const std::string where = "params." + key;
      if (key == "delta_c") dc = number(val, where);
      else if (key == "delta_m") dm = number(val, where);
      else if (key == "G_cb") gcb = number(val, where);
      else if (key == "G_mb") gmb = number(val, where);
      else if (double* f = field(cfg.params, key)) *f = number(val, where);
      else throw ConfigError(where + ": unknown key");
    }
  }

  if (doc.contains("physical")) {
    const auto& j = doc["physical"];
    require_object(j, "physical");
    reject_unknown(j, "physical", {"gamma0", "B0", "rho", "volume", "power_L", "omega_L", "hbar"});
    PhysicalDrive d;
    auto get = [&](const char* k, double& out) {
      if (j.contains(k)) out = number(j[k], std::string("physical.") + k);
    };
    get("gamma0", d.gamma0);
    get("B0", d.B0);
    get("rho", d.rho);
    get("volume", d.volume);
    get("power_L", d.power_L);
    get("omega_L", d.omega_L);
    get("hbar", d.hbar);
    if (!(cfg.params.omega_b > 0)) throw ConfigError("params.omega_b: must be positive");
    const double unit = cfg.params.omega_b;
    try {
      cfg.params = to_normalized(normalize_drive(d, cfg.params));
    } catch (const InvalidInput& e) {
      throw ConfigError(std::string("physical: ") + e.what());
    }
    cfg.physical = true;
    // Effective quantities are in the same physical frequency unit as params.
    for (auto* v : {&dc, &dm, &gcb, &gmb}) {
      if (*v) **v /= unit;
    }
  }

  try {
    validate(cfg.params);
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  cfg.has_effective = dc || dm || gcb || gmb;
  cfg.delta_c = dc.value_or(cfg.params.delta_c0);
  cfg.delta_m = dm.value_or(cfg.params.delta_m0);
  cfg.G_cb = gcb.value_or(0.0);
  cfg.G_mb = gmb.value_or(0.0);

  ConfigDocument sw = doc.contains("sweep") ? doc["sweep"] : ConfigDocument::object();
  require_object(sw, "sweep");
  reject_unknown(sw, "sweep",
                 {"mode", "delta_min", "delta_max", "points", "workers", "axis1", "axis2",
                  "quantities", "prominence", "asymmetry_window"});
  if (sw.contains("mode")) {
    try {
      cfg.mode = sweep_mode_from_string(text(sw["mode"], "sweep.mode"));
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ConfigError(std::string("sweep.mode: ") + e.what());
    }
  }
  if (sw.contains("delta_min")) cfg.delta_min = number(sw["delta_min"], "sweep.delta_min");
  if (sw.contains("delta_max")) cfg.delta_max = number(sw["delta_max"], "sweep.delta_max");
  if (sw.contains("points")) cfg.points = integer(sw["points"], "sweep.points");
  if (sw.contains("workers")) cfg.workers = integer(sw["workers"], "sweep.workers");
  if (!(cfg.delta_max > cfg.delta_min)) throw ConfigError("sweep.delta_max: must exceed delta_min");
  if (cfg.points < 2) throw ConfigError("sweep.points: need at least 2");
  if (cfg.workers < 1) throw ConfigError("sweep.workers: must be >= 1");

  if (sw.contains("axis1")) {
    SweepSpec s;
    s.base = cfg.params;
    s.base.delta_c0 = cfg.mode == SweepMode::fixed_effective ? cfg.delta_c : cfg.params.delta_c0;
    s.base.delta_m0 = cfg.mode == SweepMode::fixed_effective ? cfg.delta_m : cfg.params.delta_m0;
    s.G_cb = cfg.G_cb;
    s.G_mb = cfg.G_mb;
    s.mode = cfg.mode;
    s.axis1 = axis(sw["axis1"], "sweep.axis1");
    if (sw.contains("axis2") && !sw["axis2"].is_null()) s.axis2 = axis(sw["axis2"], "sweep.axis2");
    s.delta_grid = delta_grid(cfg);
    if (sw.contains("quantities")) {
      const auto& q = sw["quantities"];
      if (!q.is_array() || q.empty()) throw ConfigError("sweep.quantities: expected a non-empty array");
      s.quantities.clear();
      for (std::size_t i = 0; i < q.size(); ++i) {
        const auto where = "sweep.quantities[" + std::to_string(i) + "]";
        try {
          s.quantities.push_back(quantity_from_string(text(q[i], where)));
        } catch (const ConfigError&) {
          throw;
        } catch (const InvalidInput& e) {
          throw ConfigError(where + ": " + e.what());
        }
      }
    }
    if (sw.contains("prominence")) s.features.prominence = number(sw["prominence"], "sweep.prominence");
    if (sw.contains("asymmetry_window")) {
      s.features.asymmetry_window = number(sw["asymmetry_window"], "sweep.asymmetry_window");
    }
    try {
      validate(s);
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
    cfg.sweep = std::move(s);
  } else if (sw.contains("axis2")) {
    throw ConfigError("sweep.axis2: given without axis1");
  }

  if (doc.contains("coupling")) {
    const auto& j = doc["coupling"];
    require_object(j, "coupling");
    reject_unknown(j, "coupling",
                   {"B1", "B2", "M_s", "gamma", "volume", "d_zpm", "mode_file", "sidecar", "analytic",
                    "n", "lengths"});
    CouplingConfig c;
    auto get = [&](const char* k, double& out) {
      if (j.contains(k)) out = number(j[k], std::string("coupling.") + k);
    };
    get("B1", c.material.B1);
    get("B2", c.material.B2);
    get("M_s", c.material.M_s);
    get("gamma", c.material.gamma);
    get("d_zpm", c.material.d_zpm);
    if (j.contains("mode_file")) c.mode_file = text(j["mode_file"], "coupling.mode_file");
    c.sidecar = j.contains("sidecar") ? text(j["sidecar"], "coupling.sidecar") : c.mode_file + ".json";
    if (j.contains("analytic")) c.analytic = text(j["analytic"], "coupling.analytic");
    if (j.contains("n")) {
      const int n = integer(j["n"], "coupling.n");
      if (n < 2) throw ConfigError("coupling.n: need at least 2 nodes");
      c.n = static_cast<std::size_t>(n);
    }
    if (j.contains("lengths")) {
      const auto v = numbers(j["lengths"], "coupling.lengths");
      if (v.size() != 3) throw ConfigError("coupling.lengths: expected three lengths");
      for (double l : v) {
        if (!(l > 0)) throw ConfigError("coupling.lengths: must be positive");
      }
      c.lengths = {v[0], v[1], v[2]};
    }
    if (c.mode_file.empty() == c.analytic.empty()) {
      throw ConfigError("coupling: give exactly one of mode_file or analytic");
    }
    if (!c.analytic.empty() && c.analytic != "uniform-gradient" && c.analytic != "trace-free" &&
        c.analytic != "sine") {
      throw ConfigError("coupling.analytic: expected uniform-gradient, trace-free or sine");
    }
    c.material.volume = j.contains("volume") ? number(j["volume"], "coupling.volume") : 0.0;
    cfg.coupling = std::move(c);
  }
  return cfg;
}

WorkingPoint working_point(const RunConfig& cfg) {
  if (cfg.mode == SweepMode::fixed_effective) {
    return fixed_effective(cfg.params, cfg.delta_c, cfg.delta_m, cfg.G_cb, cfg.G_mb);
  }
  return fixed_bare(cfg.params);
}

std::vector<double> delta_grid(const RunConfig& cfg) {
  return uniform_grid(cfg.delta_min, cfg.delta_max, cfg.points);
}

}  // namespace omm
