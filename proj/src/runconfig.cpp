#include "surfbath/runconfig.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "surfbath/errors.hpp"

namespace surfbath {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw config_error(path.empty() ? msg : path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& require_object(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object");
  return node;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(join(path, it.key()), "unknown key");
  }
}

double get_double(const json& obj, const std::string& path, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& path, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(join(path, key), "expected a boolean");
  return v.get<bool>();
}

void parse_lattice(const json& node, RunConfig& cfg) {
  const std::string path = "lattice";
  require_object(node, path);
  check_keys(node, path, {"n", "m", "spacing"});
  cfg.lattice.n = get_int(node, path, "n", cfg.lattice.n);
  cfg.lattice.m = get_int(node, path, "m", cfg.lattice.m);
  cfg.lattice.spacing = get_double(node, path, "spacing", cfg.lattice.spacing);
  if (cfg.lattice.n < 1 || cfg.lattice.m < 1)
    fail(path, "n and m must be >= 1");
  if (!(cfg.lattice.spacing > 0)) fail(path, "spacing must be positive");
}

void parse_model(const json& node, RunConfig& cfg) {
  const std::string path = "model";
  require_object(node, path);
  check_keys(node, path, {"nn", "bath"});
  const bool has_nn = node.contains("nn");
  const bool has_bath = node.contains("bath");
  if (has_nn == has_bath)
    fail(path, "exactly one of \"nn\" or \"bath\" is required");
  if (has_nn) {
    const json& nn = require_object(node.at("nn"), "model.nn");
    check_keys(nn, "model.nn", {"re_j", "im_j"});
    cfg.model.use_bath = false;
    cfg.model.j_nn = {get_double(nn, "model.nn", "re_j", -1.0),
                      get_double(nn, "model.nn", "im_j", 0.0)};
    if (cfg.model.j_nn == std::complex<double>{})
      fail("model.nn", "coupling must be nonzero");
  } else {
    const json& bath = require_object(node.at("bath"), "model.bath");
    check_keys(bath, "model.bath", {"s", "delta", "v", "omega0", "cutoff"});
    cfg.model.use_bath = true;
    cfg.model.bath.s = get_double(bath, "model.bath", "s", 0.0);
    cfg.model.bath.delta = get_double(bath, "model.bath", "delta", 1.0);
    cfg.model.bath.v = get_double(bath, "model.bath", "v", 1.0);
    cfg.model.bath.omega0 = get_double(bath, "model.bath", "omega0", 1.0);
    cfg.model.bath.cutoff = get_double(bath, "model.bath", "cutoff", 0.0);
    try {
      validate(cfg.model.bath);
    } catch (const std::exception& e) {
      fail("model.bath", e.what());
    }
  }
}

void parse_sweep(const json& node, RunConfig& cfg) {
  const std::string path = "sweep";
  require_object(node, path);
  check_keys(node, path, {"beta_min", "beta_max", "points"});
  cfg.sweep.beta_min = get_double(node, path, "beta_min", cfg.sweep.beta_min);
  cfg.sweep.beta_max = get_double(node, path, "beta_max", cfg.sweep.beta_max);
  cfg.sweep.points = get_int(node, path, "points", cfg.sweep.points);
  if (cfg.sweep.beta_min < 0) fail(path, "beta_min must be >= 0");
  if (cfg.sweep.beta_max < cfg.sweep.beta_min)
    fail(path, "beta_max must be >= beta_min");
  if (cfg.sweep.points < 1) fail(path, "points must be >= 1");
}

void parse_cam(const json& node, RunConfig& cfg) {
  const std::string path = "cam";
  require_object(node, path);
  check_keys(node, path, {"sizes", "connected"});
  if (node.contains("sizes")) {
    const json& sizes = node.at("sizes");
    if (!sizes.is_array() || sizes.empty())
      fail("cam.sizes", "expected a non-empty array of integers");
    cfg.cam.sizes.clear();
    for (const json& v : sizes) {
      if (!v.is_number_integer() || v.get<int>() < 1)
        fail("cam.sizes", "cluster sizes must be integers >= 1");
      cfg.cam.sizes.push_back(v.get<int>());
    }
  }
  cfg.cam.connected = get_bool(node, path, "connected", cfg.cam.connected);
}

void parse_grid(const json& node, const std::string& path, GridConfig& grid,
                const char* lo_key, const char* hi_key) {
  require_object(node, path);
  check_keys(node, path, {lo_key, hi_key, "points"});
  grid.lo = get_double(node, path, lo_key, grid.lo);
  grid.hi = get_double(node, path, hi_key, grid.hi);
  grid.points = get_int(node, path, "points", grid.points);
  if (grid.hi < grid.lo) fail(path, "grid upper bound below lower bound");
  if (grid.points < 1) fail(path, "points must be >= 1");
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(source + ": " + e.what());
  }

  RunConfig cfg;
  cfg.source = source;
  require_object(root, "");
  check_keys(root, "",
             {"lattice", "model", "sweep", "cam", "correlators", "pmap"});
  for (auto it = root.begin(); it != root.end(); ++it)
    cfg.sections.insert(it.key());

  if (root.contains("lattice")) parse_lattice(root.at("lattice"), cfg);
  if (root.contains("model")) parse_model(root.at("model"), cfg);
  if (root.contains("sweep")) parse_sweep(root.at("sweep"), cfg);
  if (root.contains("cam")) parse_cam(root.at("cam"), cfg);
  if (root.contains("correlators")) {
    parse_grid(root.at("correlators"), "correlators", cfg.correlators,
               "d_min", "d_max");
    if (!(cfg.correlators.lo > 0))
      fail("correlators", "d_min must be positive");
  }
  if (root.contains("pmap")) {
    parse_grid(root.at("pmap"), "pmap", cfg.pmap, "beta_min", "beta_max");
    if (cfg.pmap.lo < 0) fail("pmap", "beta_min must be >= 0");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open configuration file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

void require_sections(const RunConfig& cfg,
                      const std::set<std::string>& consumed) {
  for (const std::string& section : cfg.sections)
    if (!consumed.count(section))
      throw config_error("section \"" + section +
                         "\" is not used by this subcommand");
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw precondition_error("grid needs at least one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < points; ++i)
    grid.push_back(i == points - 1
                       ? hi
                       : lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(points - 1));
  return grid;
}

}  // namespace surfbath
