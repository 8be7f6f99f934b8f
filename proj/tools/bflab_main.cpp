// bflab: command-line front end for the experiment registry.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "bflab/commands.hpp"
#include "bflab/common.hpp"
#include "bflab/config.hpp"

namespace {

using bflab::ConfigError;
using bflab::ExperimentConfig;
namespace cli = bflab::cli;

struct Common {
  std::string seed, format, output, config;
  bool timing = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "RNG seed (default 1)");
  app->add_option("--format", c.format, "csv or json");
  app->add_option("--output", c.output, "write the report here instead of stdout");
  app->add_option("--config", c.config, "key = value file; explicit flags win");
  app->add_flag("--timing", c.timing, "include wall time in the report");
}

// Config file entries first, then explicit flags on top.
ExperimentConfig assemble(const std::string& command, const Common& c,
                          const std::map<std::string, std::string>& flags) {
  ExperimentConfig cfg;
  cfg.command = command;
  std::map<std::string, std::string> file;
  if (!c.config.empty()) file = bflab::read_config_file(c.config);
  auto take = [&](const std::string& key, std::string& dst) {
    auto it = file.find(key);
    if (it != file.end()) {
      dst = it->second;
      file.erase(it);
    }
  };
  std::string seed, fmt, out, timing, cmd;
  take("command", cmd);
  take("seed", seed);
  take("format", fmt);
  take("output", out);
  take("timing", timing);
  if (!cmd.empty() && command.empty()) cfg.command = cmd;
  if (!c.seed.empty()) seed = c.seed;
  if (!c.format.empty()) fmt = c.format;
  if (!c.output.empty()) out = c.output;
  if (!seed.empty()) cfg.seed = bflab::parse_seed(seed);
  cfg.format = fmt;
  cfg.output = out;
  cfg.timing = c.timing || timing == "true" || timing == "1";
  cfg.params = file;
  for (const auto& [k, v] : flags) cfg.params[k] = v;
  return cfg;
}

int execute(ExperimentConfig cfg) {
  if (cfg.command.empty()) throw ConfigError("missing field 'command'");
  const auto t0 = std::chrono::steady_clock::now();
  auto rep = cli::run(cfg);
  if (cfg.timing)
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = cli::render(rep, cfg);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw ConfigError("field 'output': cannot open '" + cfg.output + "'");
    f << text;
  }
  return rep.failed() ? cli::kCheckFailed : cli::kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bellman function and Beurling-Ahlfors experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bflab::report::kVersion));

  Common common;
  std::map<std::string, std::string> flags;
  std::string selected;
  // Storage for option values; one slot per (command, key).
  std::map<std::string, std::string> slots;

  std::map<std::string, CLI::App*> groups;
  for (const auto& spec : cli::registry()) {
    if (spec.group == "suite") continue;
    CLI::App*& g = groups[spec.group];
    if (!g) {
      g = app.add_subcommand(spec.group, spec.group + " experiments");
      g->require_subcommand(1);
    }
    CLI::App* leaf = g->add_subcommand(spec.name, spec.help);
    add_common(leaf, common);
    for (const auto& p : spec.params) {
      const std::string slot = spec.full_name() + "/" + p.key;
      std::string help = p.help;
      if (!p.default_value.empty()) help += " (default " + p.default_value + ")";
      leaf->add_option("--" + p.key, slots[slot], help);
    }
    const std::string full = spec.full_name();
    leaf->callback([&, full, leaf] {
      selected = full;
      for (const auto& p : cli::find(full)->params)
        if (leaf->count("--" + p.key) > 0) flags[p.key] = slots[full + "/" + p.key];
    });
  }

  CLI::App* suite = app.add_subcommand("suite", "acceptance battery");
  std::string scale = "fast", skip, workers;
  bool repro = false;
  suite->add_option("scale", scale, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  suite->add_option("--skip", skip, "comma separated modules or criteria (c6)");
  suite->add_option("--workers", workers, "worker threads");
  suite->add_flag("--repro", repro, "rerun to check reproducibility");
  add_common(suite, common);
  suite->callback([&] {
    selected = "suite run";
    flags["scale"] = scale;
    if (!skip.empty()) flags["skip"] = skip;
    if (!workers.empty()) flags["workers"] = workers;
    if (repro) flags["repro"] = "true";
  });

  CLI::App* run = app.add_subcommand("run", "run the experiment named by a config file");
  add_common(run, common);
  run->callback([&] { selected = ""; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kPass : cli::kUsage;
  }

  try {
    if (app.got_subcommand(run) && common.config.empty()) throw ConfigError("run: --config is required");
    return execute(assemble(selected, common, flags));
  } catch (const ConfigError& e) {
    std::cerr << "bflab: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const bflab::DomainError& e) {
    std::cerr << "bflab: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "bflab: numeric failure: " << e.what() << "\n";
    return cli::kNumeric;
  }
}
