// ctxlab: command-line front end for the simulators.
//
//   ctxlab spce     --config run.json [--seed S] [--out DIR] [--format csv|json] [--workers W]
//   ctxlab coins    --config coins.json ...
//   ctxlab purity   [--config purity.json] [--input series.jsonl ...] [--alpha A] ...
//   ctxlab bertrand [--config b.json] [--machines M1,M3] [--n N] ...
//   ctxlab qkd      --config qkd.json ...
//   ctxlab replay   path/to/manifest.json [--out DIR]

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctxlab/cli.hpp"

namespace cli = ctxlab::cli;
using nlohmann::json;

namespace {

struct Args {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::string out_dir;
  std::string format = "csv";
  unsigned workers = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> machines;
  std::optional<std::uint64_t> n;
};

void add_common(CLI::App* sub, Args& args, bool config_required) {
  auto* config = sub->add_option("--config,-c", args.config_path, "JSON config file");
  if (config_required) config->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", args.seed, "master seed (overrides the config)");
  sub->add_option("--out,-o", args.out_dir, "output directory");
  sub->add_option("--format", args.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--workers,-j", args.workers, "worker threads (0 = all cores); never changes outputs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctxlab: contextual-probability simulators"};
  app.require_subcommand(1);
  Args args;
  std::map<std::string, CLI::App*> subs;
  subs["spce"] = app.add_subcommand("spce", "spin polarization correlation runs and CHSH");
  subs["coins"] = app.add_subcommand("coins", "coin devices, urns and boxes");
  subs["purity"] = app.add_subcommand("purity", "pure-vs-mixed ensemble verdict");
  subs["bertrand"] = app.add_subcommand("bertrand", "random-chord machines");
  subs["qkd"] = app.add_subcommand("qkd", "key generation and eavesdropping test");
  for (auto& [name, sub] : subs) add_common(sub, args, name == "spce" || name == "coins" || name == "qkd");
  subs["purity"]->add_option("--input,-i", args.inputs, "TimeSeries JSONL file(s)")->check(CLI::ExistingFile);
  subs["purity"]->add_option("--alpha", args.alpha, "family-wise significance level");
  subs["bertrand"]->add_option("--machines", args.machines, "machines to run (M1 M2 M3)")->delimiter(',');
  subs["bertrand"]->add_option("--n", args.n, "trials per machine");

  auto* replay = app.add_subcommand("replay", "re-run a manifest and compare output digests");
  std::string manifest_path;
  replay->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required()->check(CLI::ExistingFile);
  replay->add_option("--out,-o", args.out_dir, "output directory (default: <manifest dir>/replay)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfigError;
  }

  if (replay->parsed()) {
    const std::filesystem::path manifest(manifest_path);
    const std::filesystem::path out =
        args.out_dir.empty() ? manifest.parent_path() / "replay" : std::filesystem::path(args.out_dir);
    return cli::replay(manifest, out, std::cout, std::cerr);
  }

  std::string command;
  for (auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }

  json config = json::object();
  try {
    if (!args.config_path.empty()) config = cli::load_config(args.config_path);
    if (!config.is_object()) throw cli::ConfigError("config root must be a JSON object");
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kExitConfigError;
  }
  if (!args.machines.empty()) config["machines"] = args.machines;
  if (args.n) config["N"] = *args.n;

  cli::CommonOptions options;
  options.seed = args.seed;
  options.alpha = args.alpha;
  options.format = args.format == "json" ? cli::TableFormat::json : cli::TableFormat::csv;
  options.workers = args.workers;
  options.inputs = args.inputs;
  const std::filesystem::path out =
      args.out_dir.empty() ? cli::default_output_dir(command) : std::filesystem::path(args.out_dir);
  return cli::run_command(command, config, options, out, std::cout, std::cerr);
}
