// kerrsq: squeezing spectra and photon statistics of Kerr-modulated pulses.
//
//   kerrsq fig1 --out results/fig1 --format csv,json,plotscript --workers 8
//   kerrsq mandel --psi0 2 --phi 0.1
//   kerrsq bandwidth --config run.json --set pulse.t=2.5
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid configuration, 3 compute-domain error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kerrsq/config.hpp"
#include "kerrsq/emit.hpp"
#include "kerrsq/sweep.hpp"

namespace {

using nlohmann::json;

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

struct Options {
  std::string config_path;
  std::string out;
  std::string formats;
  unsigned workers = 1;
  bool strict = false;
  std::optional<double> tau_r, psi0, gamma, n_bar0, tau_p, t, omega0, phase, phi, T_over_tau_p;
  std::optional<int> sign;
  std::vector<std::string> sets;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw kerrsq::ConfigError("--config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json& at_path(json& doc, const std::string& dotted) {
  json* node = &doc;
  std::stringstream parts(dotted);
  std::string key;
  while (std::getline(parts, key, '.')) {
    if (key.empty()) throw kerrsq::ConfigError("--set", "empty path component in '" + dotted + "'");
    if (!node->is_object()) *node = json::object();
    node = &(*node)[key];
  }
  return *node;
}

void apply_set(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw kerrsq::ConfigError("--set", "expected key.path=value");
  const std::string value = assignment.substr(eq + 1);
  json parsed = json::parse(value, nullptr, false);
  at_path(doc, assignment.substr(0, eq)) = parsed.is_discarded() ? json(value) : parsed;
}

json build_document(const std::string& mode, const Options& o) {
  json doc = o.config_path.empty() ? json::object() : kerrsq::parse_json_document(read_file(o.config_path));
  if (!doc.is_object()) throw kerrsq::ConfigError("", "config document must be an object");
  doc["mode"] = mode;
  const auto put = [&](const char* path, const auto& value) {
    if (value) at_path(doc, path) = *value;
  };
  put("kernel.tau_r", o.tau_r);
  put("pulse.psi0", o.psi0);
  put("pulse.gamma", o.gamma);
  put("pulse.n_bar0", o.n_bar0);
  put("pulse.tau_p", o.tau_p);
  put("pulse.t", o.t);
  if (o.omega0) {
    at_path(doc, "pulse.phase") = {{"policy", "optimal"}, {"omega0", *o.omega0}};
  } else if (o.phase) {
    at_path(doc, "pulse.phase") = {{"policy", "constant"}, {"value", *o.phase}};
  }
  put("dispersion.s", o.sign);
  put("dispersion.T_over_tau_p", o.T_over_tau_p);
  put("dispersion.phi", o.phi);
  for (const auto& s : o.sets) apply_set(doc, s);
  if (!o.out.empty()) at_path(doc, "output.prefix") = o.out;
  if (!o.formats.empty()) {
    json list = json::array();
    std::stringstream parts(o.formats);
    std::string item;
    while (std::getline(parts, item, ','))
      if (!item.empty()) list.push_back(item);
    at_path(doc, "output.formats") = list;
  }
  return doc;
}

int execute(const std::string& mode, const Options& o) {
  try {
    const auto config = kerrsq::parse_config_document(build_document(mode, o), kerrsq::ParseOptions{o.strict});
    const auto envelope = kerrsq::run(config, o.workers);
    for (const auto& path : kerrsq::emit(envelope, config.output.prefix, config.output.formats))
      std::cout << "wrote " << path.string() << '\n';
    for (const auto& note : envelope.flags.notes) std::cerr << "warning: " << note << '\n';
    std::cout << "content_hash " << envelope.content_hash << '\n';
    return 0;
  } catch (const kerrsq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const kerrsq::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const kerrsq::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezing spectra and photon statistics of ultrashort pulses in a relaxing Kerr medium"};
  app.require_subcommand(1);

  Options options;
  std::string selected;
  const std::vector<std::pair<std::string, std::string>> modes{
      {"spectrum", "S(Omega) of one pulse at time t"},
      {"bandwidth", "reduced-frequency bands where S is below shot noise"},
      {"mandel", "Mandel Q(0,z) and <N_T> at one dispersion phase"},
      {"fig1", "S(Omega; psi0) surface at t = 0, optimal phase at omega0"},
      {"fig2", "Q(0,z) surface over psi0 and dispersion phase phi"},
  };
  for (const auto& [name, help] : modes) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", options.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", options.out, "output path prefix");
    sub->add_option("--format", options.formats, "comma-separated subset of csv,json,plotscript");
    sub->add_option("--workers", options.workers, "threads for surface evaluation")->check(CLI::Range(1u, 1024u));
    sub->add_flag("--strict", options.strict, "reject unknown config fields");
    sub->add_option("--tau-r", options.tau_r, "relaxation time");
    sub->add_option("--psi0", options.psi0, "peak nonlinear phase");
    sub->add_option("--gamma", options.gamma, "nonlinear coupling");
    sub->add_option("--n-bar0", options.n_bar0, "peak photon number density");
    sub->add_option("--tau-p", options.tau_p, "pulse duration");
    sub->add_option("--t", options.t, "observation time within the pulse");
    sub->add_option("--omega0", options.omega0, "reduced frequency for the optimal phase");
    sub->add_option("--phase", options.phase, "constant initial phase (radians)");
    sub->add_option("--phi", options.phi, "dispersion phase z/D (mandel)");
    sub->add_option("--s", options.sign, "dispersion sign: 1 for k2 < 0, -1 for k2 > 0");
    sub->add_option("--T-over-tau-p", options.T_over_tau_p, "counting window relative to tau_p");
    sub->add_option("--set", options.sets, "override any config field, e.g. grid.psi0.count=101");
    sub->callback([&selected, name = name] { selected = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }
  return execute(selected, options);
}
