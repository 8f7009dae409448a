#include "qdiss/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qdiss {

using nlohmann::json;

void validate(const ExperimentConfig& cfg) {
  if (cfg.ising.n_sites < 1) throw ConfigError("config: ising.N must be >= 1");
  if (!(cfg.tau > 0.0)) throw ConfigError("config: tau must be positive");
  if (!(cfg.dt > 0.0)) throw ConfigError("config: dt must be positive");
  if (cfg.n_t < 2 || cfg.n_t % 2 != 0)
    throw ConfigError("config: n_t must be a positive even integer");
  if (cfg.shots < 2) throw ConfigError("config: shots must be >= 2");
  if (cfg.trotter_substeps < 1)
    throw ConfigError("config: trotter_substeps must be >= 1");
  if (cfg.filter) validate(*cfg.filter);
  if (cfg.grid && (cfg.grid->m_s < 0 || !(cfg.grid->delta_s > 0.0)))
    throw ConfigError("config: grid requires m_s >= 0 and delta_s > 0");
  if (cfg.noise) validate(*cfg.noise);
}

ExperimentConfig resolve_config(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentConfig out = cfg;
  if (!out.filter || !out.grid) {
    const Operator h = build_tfim(out.ising);
    SpectrumSummary spec = spectrum_summary(h, 1e-12);
    spec = spectrum_summary(h, default_degeneracy_tol(spec.ground_energy));
    if (!out.filter) out.filter = default_params(spec);
    if (!out.grid) out.grid = default_grid(*out.filter);
  }
  validate(out);
  return out;
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::channel_exact: return "channel_exact";
    case Backend::circuit_noiseless: return "circuit_noiseless";
    case Backend::circuit_noisy: return "circuit_noisy";
  }
  return "unknown";
}

Backend backend_from_name(const std::string& name) {
  if (name == "channel_exact") return Backend::channel_exact;
  if (name == "circuit_noiseless") return Backend::circuit_noiseless;
  if (name == "circuit_noisy") return Backend::circuit_noisy;
  throw ConfigError("config: unknown backend '" + name + "'");
}

namespace {

double get_num(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number())
    throw ConfigError(std::string("config: missing or non-numeric field '") + field + "'");
  return j[field].get<double>();
}

int get_int(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw ConfigError(std::string("config: missing or non-integer field '") + field + "'");
  return j[field].get<int>();
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  if (!j.contains("ising") || !j["ising"].is_object())
    throw ConfigError("config: missing object field 'ising'");
  cfg.ising.n_sites = get_int(j["ising"], "N");
  cfg.ising.exchange = get_num(j["ising"], "J");
  cfg.ising.transverse = get_num(j["ising"], "Bx");
  if (j.contains("tau")) cfg.tau = get_num(j, "tau");
  if (j.contains("dt")) cfg.dt = get_num(j, "dt");
  if (j.contains("n_t")) cfg.n_t = get_int(j, "n_t");
  if (j.contains("shots")) cfg.shots = get_int(j, "shots");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("config: 'seed' must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("trotter_substeps")) cfg.trotter_substeps = get_int(j, "trotter_substeps");
  if (j.contains("backend")) {
    if (!j["backend"].is_string()) throw ConfigError("config: 'backend' must be a string");
    cfg.backend = backend_from_name(j["backend"].get<std::string>());
  }
  if (j.contains("jump")) {
    const std::string mode = j["jump"].get<std::string>();
    if (mode == "oft") cfg.jump = JumpMode::oft;
    else if (mode == "spectral") cfg.jump = JumpMode::spectral;
    else throw ConfigError("config: 'jump' must be \"oft\" or \"spectral\"");
  }
  if (j.contains("filter") && !j["filter"].is_null()) {
    if (j["filter"].is_string()) {
      if (j["filter"].get<std::string>() != "auto")
        throw ConfigError("config: 'filter' must be \"auto\" or an object");
    } else {
      const json& f = j["filter"];
      FilterParams p;
      p.edge_low = get_num(f, "a");
      p.edge_high = get_num(f, "b");
      p.beta = get_num(f, "beta");
      if (f.contains("mode")) {
        const std::string mode = f["mode"].get<std::string>();
        if (mode == "fermi_dirac") p.mode = FilterMode::fermi_dirac;
        else if (mode == "rectangular") p.mode = FilterMode::rectangular;
        else throw ConfigError("config: filter.mode must be fermi_dirac or rectangular");
      }
      cfg.filter = p;
    }
  }
  if (j.contains("grid") && !j["grid"].is_null()) {
    if (j["grid"].is_string()) {
      if (j["grid"].get<std::string>() != "auto")
        throw ConfigError("config: 'grid' must be \"auto\" or an object");
    } else {
      const json& g = j["grid"];
      TimeGrid grid;
      grid.m_s = get_int(g, "M_s");
      if (g.contains("Delta_s")) grid.delta_s = get_num(g, "Delta_s");
      else if (g.contains("S_s")) grid.delta_s = get_num(g, "S_s") / grid.m_s;
      else throw ConfigError("config: grid needs 'Delta_s' or 'S_s'");
      cfg.grid = grid;
    }
  }
  if (j.contains("noise") && !j["noise"].is_null()) {
    NoiseModel n;
    n.p2q = get_num(j["noise"], "p2q");
    n.p_spam = j["noise"].contains("p_spam") ? get_num(j["noise"], "p_spam") : 0.0;
    cfg.noise = n;
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["ising"] = {{"N", cfg.ising.n_sites}, {"J", cfg.ising.exchange}, {"Bx", cfg.ising.transverse}};
  j["tau"] = cfg.tau;
  j["dt"] = cfg.dt;
  j["n_t"] = cfg.n_t;
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  j["trotter_substeps"] = cfg.trotter_substeps;
  j["backend"] = backend_name(cfg.backend);
  j["jump"] = cfg.jump == JumpMode::oft ? "oft" : "spectral";
  if (cfg.filter) {
    j["filter"] = {{"a", cfg.filter->edge_low},
                   {"b", cfg.filter->edge_high},
                   {"beta", cfg.filter->beta},
                   {"mode", cfg.filter->mode == FilterMode::fermi_dirac ? "fermi_dirac"
                                                                        : "rectangular"}};
  } else {
    j["filter"] = "auto";
  }
  if (cfg.grid) {
    j["grid"] = {{"M_s", cfg.grid->m_s}, {"Delta_s", cfg.grid->delta_s}};
  } else {
    j["grid"] = "auto";
  }
  if (cfg.noise) {
    j["noise"] = {{"p2q", cfg.noise->p2q}, {"p_spam", cfg.noise->p_spam}};
  } else {
    j["noise"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace qdiss
