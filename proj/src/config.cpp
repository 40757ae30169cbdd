#include "chiralchain/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace chiralchain {

MoleculeSpec RunConfig::base_molecule() const {
  MoleculeSpec m;
  m.A_mhz = molecule_a_mhz;
  m.B_mhz = molecule_b_mhz;
  m.C_mhz = molecule_c_mhz;
  m.d_a = dipole_a;
  m.d_b = dipole_b;
  m.d_c = std::abs(dipole_c);
  m.handedness = Handedness::L;
  return m;
}

EnantiomerPair RunConfig::enantiomer_pair() const {
  return EnantiomerPair::make(pair, base_molecule());
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

} // namespace

std::vector<double> RunConfig::x_grid() const { return linspace(x_min, x_max, x_steps); }
std::vector<double> RunConfig::phase_x_grid() const {
  return linspace(phase_x_min, phase_x_max, phase_x_steps);
}
std::vector<double> RunConfig::phase_r_grid() const {
  return linspace(phase_r_min, phase_r_max, phase_r_steps);
}

void RunConfig::validate() const {
  const auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config: key '" + key + "': " + why);
  };
  if (!(molecule_a_mhz > molecule_b_mhz && molecule_b_mhz > molecule_c_mhz))
    fail("molecule.A", "rotational constants must satisfy A > B > C");
  if (j_max < 2) fail("j_max", "must be >= 2");
  if (x_steps < 1) fail("x.steps", "must be >= 1");
  if (x_min < 0.0) fail("x.min", "must be >= 0");
  if (x_max < x_min) fail("x.max", "must be >= x.min");
  if (m_list.empty()) fail("stark.m_list", "must be non-empty");
  for (int m : m_list)
    if (std::abs(m) > j_max) fail("stark.m_list", "|m| must not exceed j_max");
  if (r_list_nm.empty()) fail("r.list", "must be non-empty");
  for (double r : r_list_nm)
    if (r <= 0.0) fail("r.list", "separations must be positive");
  if (phase_x_min <= 0.0) fail("phase.x_min", "must be > 0 (ratios undefined at x = 0)");
  if (phase_x_max < phase_x_min) fail("phase.x_max", "must be >= phase.x_min");
  if (phase_x_steps < 2) fail("phase.x_steps", "must be >= 2");
  if (phase_r_min <= 0.0) fail("phase.r_min", "must be > 0");
  if (phase_r_max < phase_r_min) fail("phase.r_max", "must be >= phase.r_min");
  if (phase_r_steps < 2) fail("phase.r_steps", "must be >= 2");
  if (chain_n < 2) fail("chain.n", "must be >= 2");
  if (chain_method != "ed" && chain_method != "free_fermion")
    fail("chain.method", "must be 'ed' or 'free_fermion'");
  if (chain_method == "ed" && chain_n > ed_cap)
    fail("chain.n", "exceeds the dense-ED cap of " + std::to_string(ed_cap) +
                        " sites (raise chain.ed_cap or use chain.method = free_fermion)");
  if (chain_method == "free_fermion" && chain_jz_ghz != 0.0)
    fail("chain.jz_ghz", "the free-fermion path is exact only at J_z = 0");
  if (spacing_nm <= 0.0) fail("chain.spacing_nm", "must be positive");
  if (q_steps < 2) fail("chain.q_steps", "must be >= 2");
  if (droplet_mu_debye <= 0.0) fail("droplet.mu", "must be positive");
  if (droplet_spacing_nm <= 0.0) fail("droplet.r", "must be positive");
  if (droplet_radius_nm <= 0.0) fail("droplet.R", "must be positive");
  if (droplet_charge_e < 0.0) fail("droplet.q", "must be >= 0");
  if (workers < 1) fail("workers", "must be >= 1");
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': not a number: '" + value + "'");
  }
  if (used != value.size())
    throw ConfigError("config: key '" + key + "': trailing characters in '" + value + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  const int i = static_cast<int>(std::lround(d));
  if (d != static_cast<double>(i))
    throw ConfigError("config: key '" + key + "': expected an integer, got '" + value + "'");
  return i;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string cur;
  for (char ch : value) {
    if (ch == ',') {
      items.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  items.push_back(cur);
  return items;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

} // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  using Handler = std::function<void(RunConfig&, const std::string&, const std::string&)>;
  static const std::map<std::string, Handler> handlers = {
      {"molecule.A", [](RunConfig& c, const std::string& k, const std::string& v) { c.molecule_a_mhz = parse_double(k, v); }},
      {"molecule.B", [](RunConfig& c, const std::string& k, const std::string& v) { c.molecule_b_mhz = parse_double(k, v); }},
      {"molecule.C", [](RunConfig& c, const std::string& k, const std::string& v) { c.molecule_c_mhz = parse_double(k, v); }},
      {"molecule.d_a", [](RunConfig& c, const std::string& k, const std::string& v) { c.dipole_a = parse_double(k, v); }},
      {"molecule.d_b", [](RunConfig& c, const std::string& k, const std::string& v) { c.dipole_b = parse_double(k, v); }},
      {"molecule.d_c", [](RunConfig& c, const std::string& k, const std::string& v) { c.dipole_c = parse_double(k, v); }},
      {"pair", [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "LL") c.pair = PairConfiguration::LL;
         else if (v == "LR") c.pair = PairConfiguration::LR;
         else if (v == "RL") c.pair = PairConfiguration::RL;
         else if (v == "RR") c.pair = PairConfiguration::RR;
         else throw ConfigError("config: key '" + k + "': expected LL, LR, RL or RR");
       }},
      {"j_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.j_max = parse_int(k, v); }},
      {"x.min", [](RunConfig& c, const std::string& k, const std::string& v) { c.x_min = parse_double(k, v); }},
      {"x.max", [](RunConfig& c, const std::string& k, const std::string& v) { c.x_max = parse_double(k, v); }},
      {"x.steps", [](RunConfig& c, const std::string& k, const std::string& v) { c.x_steps = parse_int(k, v); }},
      {"stark.m_list", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.m_list.clear();
         for (const auto& item : split_list(v)) c.m_list.push_back(parse_int(k, item));
       }},
      {"r.list", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.r_list_nm.clear();
         for (const auto& item : split_list(v)) c.r_list_nm.push_back(parse_double(k, item));
       }},
      {"phase.x_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.phase_x_min = parse_double(k, v); }},
      {"phase.x_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.phase_x_max = parse_double(k, v); }},
      {"phase.x_steps", [](RunConfig& c, const std::string& k, const std::string& v) { c.phase_x_steps = parse_int(k, v); }},
      {"phase.r_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.phase_r_min = parse_double(k, v); }},
      {"phase.r_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.phase_r_max = parse_double(k, v); }},
      {"phase.r_steps", [](RunConfig& c, const std::string& k, const std::string& v) { c.phase_r_steps = parse_int(k, v); }},
      {"chain.n", [](RunConfig& c, const std::string& k, const std::string& v) { c.chain_n = parse_int(k, v); }},
      {"chain.method", [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v != "ed" && v != "free_fermion")
           throw ConfigError("config: key '" + k + "': expected 'ed' or 'free_fermion'");
         c.chain_method = v;
       }},
      {"chain.jxy_ghz", [](RunConfig& c, const std::string& k, const std::string& v) { c.chain_jxy_ghz = parse_double(k, v); }},
      {"chain.d_ghz", [](RunConfig& c, const std::string& k, const std::string& v) { c.chain_d_ghz = parse_double(k, v); }},
      {"chain.jz_ghz", [](RunConfig& c, const std::string& k, const std::string& v) { c.chain_jz_ghz = parse_double(k, v); }},
      {"chain.h_ghz", [](RunConfig& c, const std::string& k, const std::string& v) { c.chain_h_ghz = parse_double(k, v); }},
      {"chain.ed_cap", [](RunConfig& c, const std::string& k, const std::string& v) { c.ed_cap = parse_int(k, v); }},
      {"chain.spacing_nm", [](RunConfig& c, const std::string& k, const std::string& v) { c.spacing_nm = parse_double(k, v); }},
      {"chain.q_steps", [](RunConfig& c, const std::string& k, const std::string& v) { c.q_steps = parse_int(k, v); }},
      {"droplet.mu", [](RunConfig& c, const std::string& k, const std::string& v) { c.droplet_mu_debye = parse_double(k, v); }},
      {"droplet.r", [](RunConfig& c, const std::string& k, const std::string& v) { c.droplet_spacing_nm = parse_double(k, v); }},
      {"droplet.R", [](RunConfig& c, const std::string& k, const std::string& v) { c.droplet_radius_nm = parse_double(k, v); }},
      {"droplet.q", [](RunConfig& c, const std::string& k, const std::string& v) { c.droplet_charge_e = parse_double(k, v); }},
      {"out_dir", [](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
      {"workers", [](RunConfig& c, const std::string& k, const std::string& v) { c.workers = parse_int(k, v); }},
  };

  const auto it = handlers.find(key);
  if (it == handlers.end()) throw ConfigError("config: unknown key '" + key + "'");
  it->second(cfg, key, value);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: line " + std::to_string(lineno) + ": empty key");
    apply_config_entry(cfg, key, value);
  }
  return cfg;
}

} // namespace chiralchain
