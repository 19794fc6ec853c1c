#include "omm/sweep.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "omm/csv.hpp"
#include "omm/errors.hpp"
#include "omm/parallel.hpp"

namespace omm {

using ojson = nlohmann::ordered_json;

std::string_view to_string(SweepMode m) {
  return m == SweepMode::fixed_effective ? "fixed-effective" : "fixed-bare";
}

SweepMode sweep_mode_from_string(std::string_view name) {
  if (name == "fixed-effective") return SweepMode::fixed_effective;
  if (name == "fixed-bare") return SweepMode::fixed_bare;
  throw InvalidInput("unknown sweep mode '" + std::string(name) +
                     "' (expected fixed-effective or fixed-bare)");
}

namespace {

bool is_effective_name(std::string_view n) {
  return n == "delta_c" || n == "delta_m" || n == "G_cb" || n == "G_mb";
}

void validate_axis(const SweepAxis& axis, SweepMode mode) {
  const bool known = is_effective_name(axis.name) || get_field(SystemParams{}, axis.name);
  if (!known) throw InvalidInput("sweep: unknown axis parameter '" + axis.name + "'");
  if (mode == SweepMode::fixed_bare && is_effective_name(axis.name)) {
    throw InvalidInput("sweep: axis '" + axis.name + "' is an effective quantity; use fixed-effective mode");
  }
  if (axis.values.empty()) throw InvalidInput("sweep: axis '" + axis.name + "' has no values");
  for (double v : axis.values) {
    if (!std::isfinite(v)) throw InvalidInput("sweep: axis '" + axis.name + "' has a non-finite value");
  }
}

struct CellInputs {
  SystemParams params;
  double G_cb, G_mb;
};

void apply(CellInputs& in, const std::string& name, double v) {
  if (name == "delta_c") in.params.delta_c0 = v;
  else if (name == "delta_m") in.params.delta_m0 = v;
  else if (name == "G_cb") in.G_cb = v;
  else if (name == "G_mb") in.G_mb = v;
  else *field(in.params, name) = v;
}

ojson params_json(const SystemParams& p) {
  ojson j = ojson::object();
  SystemParams copy = p;
  for (auto name : kParamNames) j[std::string(name)] = *field(copy, name);
  return j;
}

SystemParams params_from(const ojson& j) {
  SystemParams p;
  for (auto name : kParamNames) *field(p, name) = j.at(std::string(name)).get<double>();
  return p;
}

double number_or_nan(const ojson& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

ojson features_json(const FeatureSet& f) {
  auto list = [](const std::vector<Extremum>& xs) {
    ojson a = ojson::array();
    for (const auto& e : xs) a.push_back(ojson::array({e.delta, e.value, e.prominence}));
    return a;
  };
  ojson j;
  j["peaks"] = list(f.peaks);
  j["dips"] = list(f.dips);
  j["peak_count"] = f.peak_count;
  j["asymmetry"] = f.asymmetry;
  return j;
}

FeatureSet features_from(const ojson& j) {
  auto list = [](const ojson& a) {
    std::vector<Extremum> xs;
    for (const auto& e : a) xs.push_back({e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
    return xs;
  };
  FeatureSet f;
  f.peaks = list(j.at("peaks"));
  f.dips = list(j.at("dips"));
  f.peak_count = j.at("peak_count").get<int>();
  f.asymmetry = j.at("asymmetry").get<double>();
  return f;
}

ojson spec_json(const SweepSpec& s) {
  ojson j;
  j["mode"] = std::string(to_string(s.mode));
  j["base"] = params_json(s.base);
  j["G_cb"] = s.G_cb;
  j["G_mb"] = s.G_mb;
  j["axis1"] = {{"name", s.axis1.name}, {"values", s.axis1.values}};
  if (s.axis2) j["axis2"] = {{"name", s.axis2->name}, {"values", s.axis2->values}};
  else j["axis2"] = nullptr;
  j["delta_grid"] = s.delta_grid;
  ojson qs = ojson::array();
  for (auto q : s.quantities) qs.push_back(std::string(to_string(q)));
  j["quantities"] = qs;
  j["prominence"] = s.features.prominence;
  j["asymmetry_window"] = s.features.asymmetry_window;
  return j;
}

SweepSpec spec_from(const ojson& j) {
  SweepSpec s;
  s.mode = sweep_mode_from_string(j.at("mode").get<std::string>());
  s.base = params_from(j.at("base"));
  s.G_cb = j.at("G_cb").get<double>();
  s.G_mb = j.at("G_mb").get<double>();
  s.axis1 = {j.at("axis1").at("name").get<std::string>(),
             j.at("axis1").at("values").get<std::vector<double>>()};
  if (!j.at("axis2").is_null()) {
    s.axis2 = SweepAxis{j.at("axis2").at("name").get<std::string>(),
                        j.at("axis2").at("values").get<std::vector<double>>()};
  }
  s.delta_grid = j.at("delta_grid").get<std::vector<double>>();
  s.quantities.clear();
  for (const auto& q : j.at("quantities")) s.quantities.push_back(quantity_from_string(q.get<std::string>()));
  s.features.prominence = j.at("prominence").get<double>();
  s.features.asymmetry_window = j.at("asymmetry_window").get<double>();
  return s;
}

}  // namespace

void validate(const SweepSpec& spec) {
  validate(spec.base);
  validate_axis(spec.axis1, spec.mode);
  if (spec.axis2) validate_axis(*spec.axis2, spec.mode);
  if (spec.delta_grid.empty()) throw InvalidInput("sweep: delta grid is empty");
  for (std::size_t i = 0; i < spec.delta_grid.size(); ++i) {
    if (!std::isfinite(spec.delta_grid[i])) throw InvalidInput("sweep: delta grid has a non-finite value");
    if (i > 0 && !(spec.delta_grid[i] > spec.delta_grid[i - 1])) {
      throw InvalidInput("sweep: delta grid must be strictly increasing");
    }
  }
}

WorkingPoint cell_working_point(const SweepSpec& spec, double v1, std::optional<double> v2) {
  CellInputs in{spec.base, spec.G_cb, spec.G_mb};
  apply(in, spec.axis1.name, v1);
  if (spec.axis2 && v2) apply(in, spec.axis2->name, *v2);
  if (spec.mode == SweepMode::fixed_effective) {
    return fixed_effective(in.params, in.params.delta_c0, in.params.delta_m0, in.G_cb, in.G_mb);
  }
  return fixed_bare(in.params);
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  validate(spec);
  SweepResult result;
  result.spec = spec;
  result.engine_version = std::string(kEngineVersion);
  const std::size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;
  result.cells.resize(spec.axis1.values.size() * n2);

  parallel_for(result.cells.size(), workers, [&](std::size_t idx) {
    SweepCell& cell = result.cells[idx];
    cell.axis1 = spec.axis1.values[idx / n2];
    if (spec.axis2) cell.axis2 = spec.axis2->values[idx % n2];
    try {
      const auto wp = cell_working_point(spec, cell.axis1, cell.axis2);
      cell.spectrum = spectrum(wp, spec.delta_grid);
      if (spec.delta_grid.size() >= 5) {
        for (auto q : spec.quantities) cell.features.push_back(detect_features(cell.spectrum, q, spec.features));
      }
    } catch (const Error& e) {
      cell.excluded = true;
      cell.error = e.what();
      cell.spectrum.clear();
      cell.features.clear();
    }
  });
  return result;
}

std::string export_csv(const SweepResult& r, std::optional<Quantity> only) {
  std::ostringstream out;
  out << "axis1,axis2,delta,quantity,value\n";
  for (const auto& cell : r.cells) {
    const std::string a1 = format_double(cell.axis1);
    const std::string a2 = cell.axis2 ? format_double(*cell.axis2) : "";
    for (auto q : r.spec.quantities) {
      if (only && *only != q) continue;
      for (std::size_t i = 0; i < r.spec.delta_grid.size(); ++i) {
        const double v = cell.excluded ? std::nan("") : value_of(cell.spectrum[i], q);
        out << a1 << ',' << a2 << ',' << format_double(r.spec.delta_grid[i]) << ',' << to_string(q)
            << ',' << format_double(v) << '\n';
      }
    }
  }
  return out.str();
}

std::string export_json(const SweepResult& r) {
  ojson j;
  j["engine_version"] = r.engine_version;
  j["spec"] = spec_json(r.spec);
  ojson cells = ojson::array();
  for (const auto& cell : r.cells) {
    ojson c;
    c["axis1"] = cell.axis1;
    if (cell.axis2) c["axis2"] = *cell.axis2;
    else c["axis2"] = nullptr;
    c["excluded"] = cell.excluded;
    c["error"] = cell.error;
    ojson series = ojson::object();
    for (auto q : r.spec.quantities) {
      ojson v = ojson::array();
      for (const auto& p : cell.spectrum) v.push_back(value_of(p, q));
      series[std::string(to_string(q))] = v;
    }
    c["values"] = series;
    ojson feats = ojson::object();
    for (std::size_t k = 0; k < cell.features.size(); ++k) {
      feats[std::string(to_string(r.spec.quantities[k]))] = features_json(cell.features[k]);
    }
    c["features"] = feats;
    cells.push_back(c);
  }
  j["cells"] = cells;
  return j.dump(1) + "\n";
}

SweepResult parse_sweep_json(const std::string& text) {
  SweepResult r;
  try {
    const auto j = ojson::parse(text);
    r.engine_version = j.at("engine_version").get<std::string>();
    r.spec = spec_from(j.at("spec"));
    for (const auto& c : j.at("cells")) {
      SweepCell cell;
      cell.axis1 = c.at("axis1").get<double>();
      if (!c.at("axis2").is_null()) cell.axis2 = c.at("axis2").get<double>();
      cell.excluded = c.at("excluded").get<bool>();
      cell.error = c.at("error").get<std::string>();
      if (!cell.excluded) {
        cell.spectrum.resize(r.spec.delta_grid.size());
        for (std::size_t i = 0; i < cell.spectrum.size(); ++i) cell.spectrum[i].delta = r.spec.delta_grid[i];
        for (auto q : r.spec.quantities) {
          const auto& v = c.at("values").at(std::string(to_string(q)));
          for (std::size_t i = 0; i < cell.spectrum.size(); ++i) {
            const double x = number_or_nan(v.at(i));
            auto& p = cell.spectrum[i];
            if (q == Quantity::lambda) p.lambda = x;
            else if (q == Quantity::lambda_tilde) p.lambda_tilde = x;
            else p.fwm = x;
          }
        }
        for (auto& p : cell.spectrum) p.eps_T = {p.lambda, p.lambda_tilde};
      }
      for (auto q : r.spec.quantities) {
        const auto& f = c.at("features");
        const auto key = std::string(to_string(q));
        if (f.contains(key)) cell.features.push_back(features_from(f.at(key)));
      }
      r.cells.push_back(std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("sweep json: ") + e.what());
  }
  return r;
}

std::string export_features_json(const SweepResult& r) {
  ojson cells = ojson::array();
  for (const auto& cell : r.cells) {
    ojson c;
    c["axis1"] = cell.axis1;
    if (cell.axis2) c["axis2"] = *cell.axis2;
    else c["axis2"] = nullptr;
    c["excluded"] = cell.excluded;
    if (cell.excluded) c["error"] = cell.error;
    for (std::size_t k = 0; k < cell.features.size(); ++k) {
      c[std::string(to_string(r.spec.quantities[k]))] = features_json(cell.features[k]);
    }
    cells.push_back(c);
  }
  ojson j;
  j["axis1"] = r.spec.axis1.name;
  j["axis2"] = r.spec.axis2 ? ojson(r.spec.axis2->name) : ojson(nullptr);
  j["cells"] = cells;
  return j.dump(1) + "\n";
}

}  // namespace omm
