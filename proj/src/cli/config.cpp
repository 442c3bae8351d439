#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "crystallize/cli.hpp"
#include "crystallize/ensemble.hpp"

namespace crystallize::cli {

std::string to_string(Command c) {
  switch (c) {
    case Command::sample: return "sample";
    case Command::roots: return "roots";
    case Command::fraction: return "fraction";
    case Command::paircorr: return "paircorr";
    case Command::spacing: return "spacing";
    case Command::vp_table: return "vp-table";
    case Command::demo_triple_zero: return "demo-triple-zero";
    case Command::figure: return "figure";
  }
  return "?";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::empirical: return "empirical";
    case Mode::analytic: return "analytic";
    case Mode::asymptotic: return "asymptotic";
    case Mode::all: return "all";
  }
  return "?";
}

namespace {

template <typename T>
T parse_number(const std::string& flag, const std::string& text) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      value = static_cast<T>(std::stod(text, &used));
      if (used != text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("invalid value for --" + flag + ": '" + text + "'");
    }
  } else {
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ConfigError("invalid value for --" + flag + ": '" + text + "'");
  }
  return value;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

struct OptionSpec {
  std::string name;  // flag without dashes; also the config-file key
  std::string help;
  Setter set;
};

template <typename T>
Setter number_setter(std::string flag, T RunConfig::*field) {
  return [flag, field](RunConfig& c, const std::string& v) { c.*field = parse_number<T>(flag, v); };
}

const std::vector<OptionSpec>& option_table() {
  static const std::vector<OptionSpec> table = {
      {"N", "polynomial degree (1..4096)", number_setter("N", &RunConfig::N)},
      {"p", "derivative order (0..500)", number_setter("p", &RunConfig::p)},
      {"realizations", "ensemble size M (1..1e7)", number_setter("realizations", &RunConfig::realizations)},
      {"seed", "master seed (64-bit)", number_setter("seed", &RunConfig::seed)},
      {"bin-width", "histogram bin width in rescaled units", number_setter("bin-width", &RunConfig::bin_width)},
      {"x-max", "largest separation (rescaled units)", number_setter("x-max", &RunConfig::x_max)},
      {"x-step", "grid step for analytic curves", number_setter("x-step", &RunConfig::x_step)},
      {"threads", "worker threads (default: CRYSTALLIZE_THREADS or 1)", number_setter("threads", &RunConfig::threads)},
      {"which", "figure number (1, 2 or 3)", number_setter("which", &RunConfig::which)},
      {"p-max", "largest p in vp-table", number_setter("p-max", &RunConfig::p_max)},
      {"a", "imaginary part of the displaced zero pair", number_setter("a", &RunConfig::a)},
      {"oversample", "grid oversampling for the sampled root finder (>= 4)", number_setter("oversample", &RunConfig::oversample)},
      {"index", "realization index", number_setter("index", &RunConfig::index)},
      {"mode", "empirical | analytic | asymptotic | all",
       [](RunConfig& c, const std::string& v) {
         if (v == "empirical") c.mode = Mode::empirical;
         else if (v == "analytic") c.mode = Mode::analytic;
         else if (v == "asymptotic") c.mode = Mode::asymptotic;
         else if (v == "all") c.mode = Mode::all;
         else throw ConfigError("invalid value for --mode: '" + v + "'");
       }},
      {"method", "root finder: sampled | companion | both",
       [](RunConfig& c, const std::string& v) {
         if (v != "sampled" && v != "companion" && v != "both") throw ConfigError("invalid value for --method: '" + v + "'");
         c.method = v;
       }},
      {"out", "output directory", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
      {"input", "polynomial JSON file for 'roots'", [](RunConfig& c, const std::string& v) { c.input = v; }},
  };
  return table;
}

struct CommandSpec {
  Command command;
  const char* name;
  const char* help;
  std::vector<std::string> required;
};

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> table = {
      {Command::sample, "sample", "write one realization as polynomial JSON", {"N"}},
      {Command::roots, "roots", "real (and complex) zeros of one polynomial", {}},
      {Command::fraction, "fraction", "fraction of real zeros: Kac-Rice and/or Monte Carlo", {"N"}},
      {Command::paircorr, "paircorr", "pair correlation of real zeros", {}},
      {Command::spacing, "spacing", "nearest-neighbor spacing distribution", {}},
      {Command::vp_table, "vp-table", "real-zero fractions by derivative order", {}},
      {Command::demo_triple_zero, "demo-triple-zero", "displaced zero pair and the zeros of the derivative", {}},
      {Command::figure, "figure", "reproduce a figure (CSV + SVG)", {"which"}},
  };
  return table;
}

std::string json_scalar_to_string(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, r.ptr);
  }
  throw ConfigError("config key '" + key + "' must be a number or string");
}

}  // namespace

void RunConfig::validate() const {
  auto bad = [](const std::string& flag, const std::string& expected) {
    throw ConfigError("invalid value for --" + flag + " (expected " + expected + ")");
  };
  if (N < 1 || N > 4096) bad("N", "1..4096");
  if (p < 0 || p > 500) bad("p", "0..500");
  if (realizations < 1 || realizations > 10'000'000) bad("realizations", "1..10000000");
  if (!(bin_width > 0.0)) bad("bin-width", "> 0");
  if (!(x_max > 0.0)) bad("x-max", "> 0");
  if (!(x_step > 0.0) || x_step > x_max) bad("x-step", "0 < x-step <= x-max");
  if (threads < 1 || threads > 1024) bad("threads", "1..1024");
  if (which < 1 || which > 3) bad("which", "1, 2 or 3");
  if (p_max < 0 || p_max > 500) bad("p-max", "0..500");
  if (!(a > 0.0)) bad("a", "> 0");
  if (oversample < 4) bad("oversample", ">= 4");
  if (index < 0 || index >= realizations) bad("index", "0 <= index < realizations");
  if (out_dir.empty()) bad("out", "a directory path");
  if (command == Command::paircorr && (mode == Mode::empirical || mode == Mode::all)) {
    if (x_max > N) bad("x-max", "<= N for empirical pair correlation");
    if (bin_width >= x_max) bad("bin-width", "< x-max");
  }
  if ((command == Command::paircorr || command == Command::spacing) && mode == Mode::asymptotic && p < 1) {
    bad("p", ">= 1 for asymptotic curves");
  }
}

nlohmann::json RunConfig::to_json() const {
  return {{"command", to_string(command)}, {"N", N}, {"p", p}, {"realizations", realizations},
          {"seed", seed}, {"bin-width", bin_width}, {"x-max", x_max}, {"x-step", x_step},
          {"mode", to_string(mode)}, {"out", out_dir}, {"threads", threads}, {"which", which},
          {"p-max", p_max}, {"a", a}, {"oversample", oversample}, {"method", method},
          {"input", input}, {"index", index}};
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv) {
  CLI::App app{"Random trigonometric polynomials: real zeros under repeated differentiation", "crystallize"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const auto& options = option_table();
  std::vector<std::string> raw(options.size());
  std::string config_path;
  struct Registered {
    CLI::App* sub;
    std::vector<CLI::Option*> opts;
    CLI::Option* config;
  };
  std::vector<Registered> registered;
  const nlohmann::json defaults = RunConfig{}.to_json();
  for (const auto& cmd : command_table()) {
    Registered r;
    r.sub = app.add_subcommand(cmd.name, cmd.help);
    for (std::size_t i = 0; i < options.size(); ++i) {
      std::string names = "--" + options[i].name;
      if (options[i].name == "realizations") names += ",-M";
      if (options[i].name == "x-max") names += ",--max-range";
      auto* opt = r.sub->add_option(names, raw[i], options[i].help);
      const auto& def = defaults.at(options[i].name);
      opt->type_name(def.is_number_integer() ? "INT" : def.is_number() ? "NUM" : "TEXT");
      if (options[i].name != "threads" && def != "") opt->default_str(json_scalar_to_string(options[i].name, def));
      r.opts.push_back(opt);
    }
    r.config = r.sub->add_option("--config", config_path, "JSON file with default flag values");
    registered.push_back(r);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string(e.what()) + "\n" + app.help());
  }

  RunConfig cfg;
  cfg.threads = default_thread_count();
  const Registered* chosen = nullptr;
  for (std::size_t c = 0; c < registered.size(); ++c) {
    if (registered[c].sub->parsed()) {
      chosen = &registered[c];
      cfg.command = command_table()[c].command;
    }
  }
  if (!chosen) throw ConfigError("a command is required\n" + app.help());

  std::vector<bool> given(options.size(), false);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read --config file '" + config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("--config file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ConfigError("--config file must hold a JSON object");
    // a manifest from an earlier run can be replayed as it is
    if (j.contains("config") && j.contains("version")) j = j["config"];
    for (const auto& [key, value] : j.items()) {
      if (key == "command") {
        if (value != to_string(cfg.command)) throw ConfigError("--config file was written for '" + value.dump() + "'");
        continue;
      }
      auto it = std::find_if(options.begin(), options.end(), [&](const OptionSpec& o) { return o.name == key; });
      if (it == options.end()) throw ConfigError("unknown config key '" + key + "'");
      it->set(cfg, json_scalar_to_string(key, value));
      given[static_cast<std::size_t>(it - options.begin())] = true;
    }
  }
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (chosen->opts[i]->count() > 0) {
      options[i].set(cfg, raw[i]);
      given[i] = true;
    }
  }
  const auto& cmd = command_table()[static_cast<std::size_t>(chosen - registered.data())];
  for (const auto& req : cmd.required) {
    auto it = std::find_if(options.begin(), options.end(), [&](const OptionSpec& o) { return o.name == req; });
    if (!given[static_cast<std::size_t>(it - options.begin())]) {
      throw ConfigError("missing required flag --" + req + " for '" + cmd.name + "'\n" + chosen->sub->help());
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace crystallize::cli
