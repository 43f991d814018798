#include "majoranon/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "majoranon/errors.hpp"
#include "majoranon/presets.hpp"

namespace majoranon::cli {
namespace {

std::string where(std::size_t line) {
  return line > 0 ? "line " + std::to_string(line) : "command line";
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

bool known_key(const std::string& key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double parse_real(const Setting& s) {
  double v = 0.0;
  const char* begin = s.value.data();
  const char* end = begin + s.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.value.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(s.key, s.line, "expected a finite number, got '" + s.value + "'");
  }
  return v;
}

std::size_t parse_count(const Setting& s) {
  unsigned long long v = 0;
  const char* begin = s.value.data();
  const char* end = begin + s.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.value.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(s.key, s.line, "expected a non-negative integer, got '" + s.value + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_real_list(const Setting& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s.value)) out.push_back(parse_real({s.key, item, s.line}));
  if (out.empty()) throw ConfigError(s.key, s.line, "expected a comma-separated list of numbers");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0.0 || (i > 0 && !(out[i] > out[i - 1]))) {
      throw ConfigError(s.key, s.line, "samples must be >= 0 and strictly increasing");
    }
  }
  return out;
}

template <class Enum>
Enum parse_choice(const Setting& s, const std::vector<std::pair<std::string, Enum>>& choices) {
  for (const auto& [name, value] : choices) {
    if (s.value == name) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : choices) allowed += (allowed.empty() ? "" : ", ") + name;
  throw ConfigError(s.key, s.line, "unknown value '" + s.value + "' (expected one of: " + allowed + ")");
}

OutputSet parse_outputs(const Setting& s) {
  OutputSet out;
  const auto items = split_list(s.value);
  if (items.empty()) throw ConfigError(s.key, s.line, "expected at least one output");
  for (const auto& item : items) {
    if (item == "pseudo_energy") out.pseudo_energy = true;
    else if (item == "intensities") out.intensities = true;
    else if (item == "map") out.map = true;
    else if (item == "centroid_width") out.centroid_width = true;
    else throw ConfigError(s.key, s.line, "unknown output '" + item + "'");
  }
  return out;
}

void require(bool ok, const Setting& s, const std::string& message) {
  if (!ok) throw ConfigError(s.key, s.line, message);
}

const std::vector<std::pair<std::string, EvolverKind>>& evolver_choices() {
  static const std::vector<std::pair<std::string, EvolverKind>> choices{
      {"dirac_plus", EvolverKind::dirac_plus},
      {"dirac_minus", EvolverKind::dirac_minus},
      {"majorana_composed", EvolverKind::majorana_composed},
      {"majorana_reference", EvolverKind::majorana_reference},
  };
  return choices;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::string key, std::size_t line, const std::string& message)
    : std::runtime_error(key + " (" + where(line) + "): " + message), key_(std::move(key)), line_(line) {}

ConfigError::ConfigError(std::string key, const std::string& origin, const std::string& message)
    : std::runtime_error(key + " (" + origin + "): " + message), key_(std::move(key)), line_(0) {}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "preset",    "model",     "evolver",  "cells",          "kappa",          "mu",
      "sigma",     "n0",        "p0",       "zeta_max",       "zeta_step",      "zeta_list",
      "z_max_mm",  "z_step_mm", "measure",  "outputs",        "colormap",       "reference_step",
      "lattice_method", "coupler_theta", "encoding",
  };
  return keys;
}

std::vector<Setting> parse_config_text(const std::string& text) {
  std::vector<Setting> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      throw ConfigError(content, line, "sections are not supported; the config is a flat key = value list");
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(content, line, "expected key = value");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ConfigError(key, line, "empty key");
    if (key.find('.') != std::string::npos) {
      throw ConfigError(key, line, "nested keys are not supported");
    }
    if (!known_key(key)) throw ConfigError(key, line, "unknown key");
    for (const auto& earlier : out) {
      if (earlier.key == key) {
        throw ConfigError(key, line, "duplicate key (first set on " + where(earlier.line) + ")");
      }
    }
    out.push_back({key, value, line});
  }
  return out;
}

std::vector<Setting> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw IoError("error while reading config file " + path.string());
  return parse_config_text(text.str());
}

ExperimentConfig resolve_config(const std::vector<Setting>& file_settings,
                                const std::vector<Setting>& flag_settings, std::ostream& notices) {
  std::map<std::string, Setting> merged;
  for (const auto& s : file_settings) {
    if (!known_key(s.key)) throw ConfigError(s.key, s.line, "unknown key");
    merged[s.key] = s;
  }
  for (const auto& s : flag_settings) {
    if (!known_key(s.key)) throw ConfigError(s.key, s.line, "unknown key");
    const auto it = merged.find(s.key);
    if (it != merged.end() && it->second.value != s.value) {
      notices << "notice: " << s.key << " = " << s.value << " from the command line overrides "
              << it->second.value << " from the config file (" << where(it->second.line) << ")\n";
    }
    merged[s.key] = s;
  }
  auto find = [&](const std::string& key) -> const Setting* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };

  ExperimentConfig cfg;
  const Setting* preset_setting = find("preset");
  if (!preset_setting) throw ConfigError("preset", "missing", "missing required key (lowmass, highmass or custom)");
  cfg.preset = parse_choice<PresetKind>(*preset_setting, {{"lowmass", PresetKind::lowmass},
                                                          {"highmass", PresetKind::highmass},
                                                          {"custom", PresetKind::custom}});

  const ExperimentPreset* preset = nullptr;
  if (cfg.preset != PresetKind::custom) {
    preset = find_preset(to_string(cfg.preset));
    cfg.cells = preset->n_cells;
    cfg.kappa_per_mm = preset->kappa_per_mm;
    cfg.mu = preset->mu;
    cfg.sigma = preset->sigma_cells;
    cfg.n0 = preset->n0_cells;
    cfg.p0 = preset->p0;
    cfg.measure = preset->measurement_zetas;
  } else {
    for (const char* key : {"cells", "kappa", "mu", "sigma", "n0", "p0"}) {
      if (!find(key)) throw ConfigError(key, "missing", "required when preset = custom");
    }
  }

  auto override_real = [&](const char* key, double& field) {
    const Setting* s = find(key);
    if (!s) return;
    const double v = parse_real(*s);
    if (preset && v != field) {
      notices << "notice: " << key << " = " << s->value << " overrides preset " << preset->name
              << " value " << format_number(field) << "\n";
    }
    field = v;
  };

  if (const Setting* s = find("cells")) {
    const std::size_t v = parse_count(*s);
    require(v >= 2, *s, "needs at least 2 cells");
    if (preset && v != cfg.cells) {
      notices << "notice: cells = " << v << " overrides preset " << preset->name << " value "
              << cfg.cells << "\n";
      if (!find("n0")) {
        cfg.n0 = centred_n0(v);
        notices << "notice: n0 recentred to " << format_number(cfg.n0) << " for " << v << " cells\n";
      }
    }
    cfg.cells = v;
  }
  override_real("kappa", cfg.kappa_per_mm);
  override_real("mu", cfg.mu);
  override_real("sigma", cfg.sigma);
  override_real("n0", cfg.n0);
  override_real("p0", cfg.p0);

  if (const Setting* s = find("kappa")) require(cfg.kappa_per_mm > 0.0, *s, "must be > 0");
  if (const Setting* s = find("mu")) require(cfg.mu >= 0.0, *s, "must be >= 0");
  if (const Setting* s = find("sigma")) require(cfg.sigma > 0.0, *s, "must be > 0");

  if (const Setting* s = find("measure")) {
    const auto v = parse_real_list(*s);
    if (preset && v != cfg.measure) {
      notices << "notice: measure = " << s->value << " overrides preset " << preset->name << " samples\n";
    }
    cfg.measure = v;
  }

  // Model and evolver.
  if (const Setting* s = find("model")) {
    cfg.model = parse_choice<Model>(
        *s, {{"spinor", Model::spinor}, {"lattice", Model::lattice}, {"device", Model::device}});
  }
  cfg.evolver = cfg.model == Model::lattice ? EvolverKind::dirac_plus : EvolverKind::majorana_composed;
  if (const Setting* s = find("evolver")) {
    cfg.evolver = parse_choice(*s, evolver_choices());
    if (cfg.model == Model::lattice) {
      require(cfg.evolver == EvolverKind::dirac_plus || cfg.evolver == EvolverKind::dirac_minus, *s,
              "the lattice model simulates a Dirac equation: use dirac_plus (AB) or dirac_minus (BA)");
    }
    if (cfg.model == Model::device) {
      require(cfg.evolver == EvolverKind::majorana_composed, *s,
              "the device model realises the composed Majoranon evolution: use majorana_composed");
    }
  }

  // Sampling.
  const bool has_range = find("zeta_max") || find("zeta_step");
  const bool has_list = find("zeta_list") != nullptr;
  const bool has_mm = find("z_max_mm") || find("z_step_mm");
  if (int(has_range) + int(has_list) + int(has_mm) > 1) {
    const char* key = has_list ? "zeta_list" : "z_max_mm";
    const Setting* s = find(key) ? find(key) : find("z_step_mm");
    throw ConfigError(s->key, s->line,
                      "choose one sampling form: zeta_max/zeta_step, zeta_list or z_max_mm/z_step_mm");
  }
  if (has_list) {
    cfg.zetas = parse_real_list(*find("zeta_list"));
  } else if (has_mm) {
    double z_max = kDefaultZetaMax / cfg.kappa_per_mm;
    double z_step = kDefaultZetaStep / cfg.kappa_per_mm;
    if (const Setting* s = find("z_max_mm")) {
      z_max = parse_real(*s);
      require(z_max >= 0.0, *s, "must be >= 0");
    }
    if (const Setting* s = find("z_step_mm")) {
      z_step = parse_real(*s);
      require(z_step > 0.0, *s, "must be > 0");
    }
    for (double z : sample_range(z_max, z_step)) cfg.zetas.push_back(z * cfg.kappa_per_mm);
  } else {
    double zeta_max = kDefaultZetaMax;
    double zeta_step = kDefaultZetaStep;
    if (const Setting* s = find("zeta_max")) {
      zeta_max = parse_real(*s);
      require(zeta_max >= 0.0, *s, "must be >= 0");
    }
    if (const Setting* s = find("zeta_step")) {
      zeta_step = parse_real(*s);
      require(zeta_step > 0.0, *s, "must be > 0");
    }
    cfg.zetas = sample_range(zeta_max, zeta_step);
  }

  cfg.outputs.pseudo_energy = true;
  if (const Setting* s = find("outputs")) cfg.outputs = parse_outputs(*s);
  if (cfg.outputs.intensities && cfg.measure.empty()) {
    const Setting* s = find("outputs");
    throw ConfigError("measure", s ? s->line : 0, "the intensities output needs measure samples");
  }

  if (const Setting* s = find("colormap")) {
    cfg.colormap = parse_choice<Colormap>(*s, {{"gray", Colormap::gray}, {"viridis", Colormap::viridis}});
  }
  if (const Setting* s = find("reference_step")) {
    cfg.reference_step = parse_real(*s);
    require(cfg.reference_step > 0.0, *s, "must be > 0");
  }
  if (const Setting* s = find("lattice_method")) {
    cfg.lattice_method =
        parse_choice<LatticeMethod>(*s, {{"eigen", LatticeMethod::eigen}, {"rk4", LatticeMethod::rk4}});
  }
  if (const Setting* s = find("coupler_theta")) cfg.coupler_theta = parse_real(*s);
  if (const Setting* s = find("encoding")) {
    cfg.encoding = parse_choice<EncodingStage>(
        *s, {{"segmented", EncodingStage::segmented}, {"ideal", EncodingStage::ideal}});
  }
  if (cfg.model == Model::device && cfg.encoding == EncodingStage::segmented && cfg.p0 != 0.0) {
    const Setting* s = find("p0");
    throw ConfigError("p0", s ? s->line : 0,
                      "segmented encoding only realises pi/2 phase steps; use p0 = 0 or encoding = ideal");
  }
  return cfg;
}

std::string to_string(PresetKind p) {
  switch (p) {
    case PresetKind::lowmass: return "lowmass";
    case PresetKind::highmass: return "highmass";
    case PresetKind::custom: break;
  }
  return "custom";
}

std::string to_string(Model m) {
  switch (m) {
    case Model::spinor: return "spinor";
    case Model::lattice: return "lattice";
    case Model::device: break;
  }
  return "device";
}

std::string to_string(EvolverKind e) {
  for (const auto& [name, value] : evolver_choices()) {
    if (value == e) return name;
  }
  return e == EvolverKind::lattice_plus ? "lattice_plus" : "lattice_minus";
}

}  // namespace majoranon::cli
