#include <cmath>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "config_reader.hpp"
#include "ctxlab/bertrand.hpp"
#include "ctxlab/cli.hpp"
#include "ctxlab/coin_lab.hpp"
#include "ctxlab/purity.hpp"
#include "ctxlab/qkd.hpp"
#include "ctxlab/spce.hpp"
#include "ctxlab/statistics.hpp"
#include "ctxlab/time_series.hpp"

namespace ctxlab::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Tables: one header plus rows of pre-rendered cells, emitted as CSV or as a
// JSON array of objects.

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  std::string render(TableFormat format) const {
    if (format == TableFormat::json) {
      json out = json::array();
      for (const auto& row : rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
        out.push_back(std::move(obj));
      }
      return out.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ",";
        const json& v = row[c];
        if (v.is_null()) continue;
        out += v.is_string() ? v.get<std::string>() : v.dump();
      }
      out += "\n";
    }
    return out;
  }
};

std::string table_name(const std::string& stem, TableFormat format) {
  return stem + (format == TableFormat::json ? ".json" : ".csv");
}

json with_seed(const json& config, std::uint64_t seed) {
  json effective = config.is_null() ? json::object() : config;
  effective["seed"] = seed;
  return effective;
}

std::string vec3(const Direction& d) { return fmt::format("[{},{},{}]", d.x(), d.y(), d.z()); }

// ---------------------------------------------------------------------------
// spce

struct NamedSetting {
  std::string name;
  Direction direction;
};

}  // namespace

CommandResult cmd_spce(const json& config, const CommonOptions& options) {
  ConfigReader cfg(config, "config");
  const std::uint64_t seed = cfg.seed(options.seed);
  ConfigReader settings = cfg.child("settings");
  std::vector<NamedSetting> a_side{{"A", settings.direction("A")}};
  std::vector<NamedSetting> b_side{{"B", settings.direction("B")}};
  if (settings.has("A_prime")) a_side.push_back({"A_prime", settings.direction("A_prime")});
  if (settings.has("B_prime")) b_side.push_back({"B_prime", settings.direction("B_prime")});
  settings.finish();
  const double eps_a = cfg.number("epsilon_A", 0.0, 0.0, 2.0);
  const double eps_b = cfg.number("epsilon_B", 0.0, 0.0, 2.0);
  const std::size_t n = cfg.count("N", std::nullopt, 1);
  const bool freeze = cfg.flag("freeze_microscopic", false);
  const bool write_records = cfg.flag("records", true);
  cfg.finish();

  std::string runs_jsonl;
  Table table{{"setting_pair", "r", "stderr", "N"}, {}};
  json correlators = json::object();
  std::vector<double> r_values, r_errors;

  for (std::size_t i = 0; i < a_side.size(); ++i) {
    for (std::size_t j = 0; j < b_side.size(); ++j) {
      const auto& x = a_side[i];
      const auto& y = b_side[j];
      const std::uint64_t run_seed = derive_seed(seed, 2 * i + j);
      const spce::Polarizer pol_a(x.direction, eps_a), pol_b(y.direction, eps_b);
      const auto run = spce::run_experiment(pol_a, pol_b, n, run_seed, {freeze, options.workers});
      const double r = spce::empirical_correlator(run);
      const double se = spce::correlator_stderr(run);
      const std::string pair = x.name + "," + y.name;

      json header = {{"type", "header"},
                     {"pair", pair},
                     {"axes", {{x.name, direction_json(x.direction)}, {y.name, direction_json(y.direction)}}},
                     {"epsilons", {{"A", eps_a}, {"B", eps_b}}},
                     {"N", n},
                     {"seed", run_seed},
                     {"freeze_microscopic", freeze},
                     {"low_n", run.statistically_weak()},
                     {"records", write_records}};
      runs_jsonl += header.dump() + "\n";
      if (write_records) {
        fmt::memory_buffer buf;
        for (const auto& rec : run.records) {
          fmt::format_to(std::back_inserter(buf), "{{\"a\":{},\"b\":{},\"s1\":{},\"s2\":{}}}\n", vec3(rec.a),
                         vec3(rec.b), rec.s1, rec.s2);
        }
        runs_jsonl.append(buf.data(), buf.size());
      }
      table.rows.push_back({pair, r, se, n});
      correlators[pair] = {{"r", r}, {"stderr", se}};
      r_values.push_back(r);
      r_errors.push_back(se);
    }
  }

  const bool complete = r_values.size() == 4;
  json report = {{"N", n},
                 {"seed", seed},
                 {"epsilon_A", eps_a},
                 {"epsilon_B", eps_b},
                 {"complete", complete},
                 {"low_n", n < spce::kWeakRunThreshold},
                 {"correlators", correlators},
                 {"S", nullptr},
                 {"S_stderr", nullptr},
                 {"sigma_above_2", nullptr}};
  std::string summary = fmt::format("spce: {} setting pair(s), N = {}", r_values.size(), n);
  if (complete) {
    const double s = spce::chsh(r_values[0], r_values[1], r_values[2], r_values[3]);
    double var = 0.0;
    for (double e : r_errors) var += e * e;
    const double s_err = std::sqrt(var);
    report["S"] = s;
    report["S_stderr"] = s_err;
    report["sigma_above_2"] = s_err > 0.0 ? json((s - 2.0) / s_err) : json(nullptr);
    summary += fmt::format(", S = {:.4f} +- {:.4f}", s, s_err);
  }

  CommandResult result;
  result.files = {{"runs.jsonl", std::move(runs_jsonl)},
                  {table_name("correlators", options.format), table.render(options.format)},
                  {"chsh.json", report.dump(2) + "\n"}};
  result.effective_config = with_seed(config, seed);
  result.summary = summary;
  return result;
}

// ---------------------------------------------------------------------------
// coins

namespace {

constexpr std::uint64_t kRemovalTag = 0x52454D4F5645;  // "REMOVE"

struct CountMoments {
  double mean = 0.0;
  double variance = 0.0;
  double fraction_b = 0.0;
  std::size_t total_b = 0;
  std::size_t total = 0;
};

CountMoments moments(const std::vector<std::size_t>& counts, std::size_t n) {
  CountMoments m;
  for (std::size_t c : counts) {
    m.mean += static_cast<double>(c);
    m.total_b += c;
  }
  m.mean /= static_cast<double>(counts.size());
  double ss = 0.0;
  for (std::size_t c : counts) ss += (static_cast<double>(c) - m.mean) * (static_cast<double>(c) - m.mean);
  m.variance = counts.size() > 1 ? ss / static_cast<double>(counts.size() - 1) : 0.0;
  m.total = counts.size() * n;
  m.fraction_b = static_cast<double>(m.total_b) / static_cast<double>(m.total);
  return m;
}

coins::UrnState read_urn(ConfigReader& cfg, coins::UrnState fallback) {
  if (!cfg.has("urn")) {
    cfg.child("urn");
    return fallback;
  }
  ConfigReader urn = cfg.child("urn");
  coins::UrnState u{urn.count("blue", std::nullopt, 0), urn.count("red", std::nullopt, 0)};
  urn.finish();
  if (u.total() == 0) throw ConfigError(cfg.where("urn") + ": urn must hold at least one coin");
  return u;
}

struct CoinExperiment {
  std::string id;                 // E1 .. E6
  coins::DeviceKind device{};     // E1-E3
  CoinFace initial_face = CoinFace::B;
  coins::UrnState urn;            // after removal for E5/E6
  bool with_replacement = false;  // E4

  TimeSeries run(std::size_t n, RngStream& rng) const {
    if (id == "E1" || id == "E2" || id == "E3") return coins::run_device(device, initial_face, n, rng);
    if (id == "E4") return coins::draw_urn(urn, n, with_replacement, rng).series;
    return coins::run_box_experiment(id == "E5" ? coins::BoxKind::mixed_E5 : coins::BoxKind::pure_E6, urn, n, rng);
  }

  /// Expected mean and variance of the count of B in n trials.
  std::pair<double, double> expected_count(std::size_t n) const {
    const double nn = static_cast<double>(n);
    if (id == "E1") return {complement(initial_face) == CoinFace::B ? nn : 0.0, 0.0};
    if (id == "E2") return {nn / 2.0, n % 2 ? 0.25 : 0.0};
    if (id == "E3" || id == "E6") return {nn / 2.0, nn / 4.0};
    const double p = urn.blue_fraction();
    if (id == "E4" && !with_replacement) {
      const double total = static_cast<double>(urn.total());
      const double fpc = urn.total() > 1 ? (total - nn) / (total - 1.0) : 0.0;
      return {nn * p, nn * p * (1.0 - p) * fpc};
    }
    return {nn * p, nn * p * (1.0 - p)};
  }
};

void check_runnable(const CoinExperiment& e, std::size_t n) {
  if (e.id == "E4" && !e.with_replacement && n > e.urn.total()) {
    throw ConfigError(fmt::format("config.n: {} draws without replacement exceed the urn's {} coins", n, e.urn.total()));
  }
  if ((e.id == "E5" || e.id == "E6") && e.urn.total() == 0) {
    throw ConfigError("config.remove: no coins left in the box");
  }
}

}  // namespace

CommandResult cmd_coins(const json& config, const CommonOptions& options) {
  ConfigReader cfg(config, "config");
  const std::uint64_t seed = cfg.seed(options.seed);
  const std::string experiment = cfg.choice("experiment", {"E1", "E2", "E3", "E4", "E5", "E6", "E5_vs_E6"}, std::nullopt);
  const std::size_t n = cfg.count("n", std::nullopt, 1);
  const std::size_t runs = cfg.count("runs", 1, 1);
  const std::size_t series_runs = std::min<std::size_t>(cfg.count("series_runs", 1, 0), runs);
  const CoinFace face = cfg.choice("initial_face", {"B", "R"}, "B") == "B" ? CoinFace::B : CoinFace::R;
  const bool box = experiment == "E5" || experiment == "E6" || experiment == "E5_vs_E6";
  const coins::UrnState urn = read_urn(cfg, box ? coins::UrnState{50, 50} : coins::UrnState{51, 51});
  const bool with_replacement = cfg.flag("with_replacement", false);
  const std::uint64_t remove = cfg.count("remove", 0, 0);
  cfg.finish();
  if (remove > 0 && !box) throw ConfigError("config.remove: only the E5/E6 boxes can be perturbed");
  if (remove > urn.total()) throw ConfigError(fmt::format("config.remove: cannot remove {} of {} coins", remove, urn.total()));

  std::vector<std::string> ids;
  if (experiment == "E5_vs_E6") {
    ids = {"E5", "E6"};
  } else {
    ids = {experiment};
  }

  CommandResult result;
  Table table{{"row", "runs", "n", "mean_B", "var_B", "fraction_B", "expected_mean_B", "expected_var_B", "urn", "z", "p"},
              {}};
  std::vector<CountMoments> all_moments;
  for (std::size_t e = 0; e < ids.size(); ++e) {
    CoinExperiment exp;
    exp.id = ids[e];
    exp.initial_face = face;
    exp.urn = urn;
    exp.with_replacement = with_replacement;
    if (exp.id == "E1") exp.device = coins::DeviceKind::D1_flip;
    if (exp.id == "E2") exp.device = coins::DeviceKind::D2_alternating;
    if (exp.id == "E3") exp.device = coins::DeviceKind::D3_bernoulli;
    const std::uint64_t exp_seed = ids.size() > 1 ? derive_seed(seed, e) : seed;
    if (remove > 0) {
      RngStream removal = substream(derive_seed(exp_seed, kRemovalTag), 0);
      exp.urn = coins::remove_coins(urn, remove, removal);
    }
    check_runnable(exp, n);

    std::vector<std::size_t> counts(runs);
    std::string series_jsonl;
    for (std::size_t r = 0; r < runs; ++r) {
      RngStream rng = substream(exp_seed, r);
      const TimeSeries ts = exp.run(n, rng);
      counts[r] = ts.count(CoinFace::B);
      if (r < series_runs) {
        series_jsonl += to_jsonl(ts, json{{"experiment", exp.id}, {"run", r}, {"n", n}, {"seed", exp_seed}});
      }
    }
    const CountMoments m = moments(counts, n);
    const auto [exp_mean, exp_var] = exp.expected_count(n);
    const std::string urn_str = box || exp.id == "E4" ? fmt::format("{}/{}", exp.urn.n_blue, exp.urn.n_red) : "";
    table.rows.push_back({exp.id, runs, n, m.mean, m.variance, m.fraction_b, exp_mean, exp_var, urn_str, nullptr, nullptr});
    all_moments.push_back(m);
    result.files.push_back({ids.size() > 1 ? "series_" + exp.id + ".jsonl" : "series.jsonl", std::move(series_jsonl)});
  }

  std::string summary = fmt::format("coins {}: fraction_B = {:.5f}", experiment, all_moments.front().fraction_b);
  if (all_moments.size() == 2) {
    const auto& a = all_moments[0];
    const auto& b = all_moments[1];
    const double pooled = static_cast<double>(a.total_b + b.total_b) / static_cast<double>(a.total + b.total);
    const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / a.total + 1.0 / b.total));
    const double z = se > 0.0 ? (a.fraction_b - b.fraction_b) / se : 0.0;
    const double p = stats::normal_two_sided(z);
    table.rows.push_back({"E5_vs_E6", runs, n, nullptr, nullptr, a.fraction_b - b.fraction_b, nullptr, nullptr, "", z, p});
    summary += fmt::format(" vs {:.5f}, z = {:.3f}", b.fraction_b, z);
  }
  result.files.push_back({table_name("summary", options.format), table.render(options.format)});
  result.effective_config = with_seed(config, seed);
  result.summary = summary;
  return result;
}

// ---------------------------------------------------------------------------
// purity

namespace {

purity::Reduction read_procedure(const json& item, const std::string& where) {
  if (!item.is_object() || item.size() != 1) {
    throw ConfigError(where + ": expected an object with exactly one of thin, every_kth, prefix");
  }
  const auto& [name, value] = *item.items().begin();
  try {
    if (name == "thin" && value.is_number()) {
      const double q = value.get<double>();
      if (q > 0.0 && q <= 1.0) return purity::Thin{q};
    } else if (name == "every_kth" && value.is_number_integer()) {
      const auto k = value.get<std::int64_t>();
      if (k >= 1) return purity::EveryKth{static_cast<std::size_t>(k)};
    } else if (name == "prefix" && value.is_number()) {
      const double f = value.get<double>();
      if (f > 0.0 && f <= 1.0) return purity::Prefix{f};
    }
  } catch (const json::exception&) {
  }
  throw ConfigError(fmt::format("{}: invalid reduction {}={} (thin/prefix in (0,1], every_kth >= 1)", where, name,
                                value.dump()));
}

}  // namespace

CommandResult cmd_purity(const json& config, const CommonOptions& options) {
  ConfigReader cfg(config, "config");
  const std::uint64_t seed = cfg.seed(options.seed);
  const double alpha_cfg = cfg.number("alpha", 0.05, 0.0, 1.0);
  const double alpha = options.alpha.value_or(alpha_cfg);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha: must lie strictly between 0 and 1");

  std::vector<purity::Reduction> procedures;
  if (cfg.has("procedures")) {
    const json& list = cfg.raw("procedures");
    if (!list.is_array()) throw ConfigError("config.procedures: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      procedures.push_back(read_procedure(list[i], fmt::format("config.procedures[{}]", i)));
    }
  } else {
    procedures.push_back(purity::Thin{0.5});
  }
  purity::VerdictConfig vc;
  vc.seed = derive_seed(seed, 0x505552);
  vc.subensemble_count = cfg.count("subensembles", 5, 0);
  vc.subensemble_fraction = cfg.number("subensemble_fraction", 0.5, 1e-9, 1.0);
  vc.power_floor = cfg.count("power_floor", 1000, 0);

  std::vector<purity::Sample> samples;
  std::vector<std::string> sources;
  for (const auto& path : options.inputs) {
    for (auto& ts : read_jsonl_file(path)) {
      samples.push_back({std::move(ts), purity::SampleLabel{samples.size(), std::nullopt, std::nullopt}});
      sources.push_back(path);
    }
  }

  if (cfg.has("families")) {
    const json& families = cfg.raw("families");
    if (!families.is_array()) throw ConfigError("config.families: expected an array");
    std::uint64_t stream = 0;
    for (std::size_t f = 0; f < families.size(); ++f) {
      ConfigReader fam(families[f], fmt::format("config.families[{}]", f));
      const std::string experiment = fam.choice("experiment", {"D3", "E4", "E5", "E6"}, std::nullopt);
      const std::size_t count = fam.count("count", std::nullopt, 1);
      const std::size_t n = fam.count("n", std::nullopt, 1);
      coins::UrnState urn = read_urn(fam, coins::UrnState{50, 50});
      const std::uint64_t remove = fam.count("remove", 0, 0);
      const bool with_replacement = fam.flag("with_replacement", false);
      fam.finish();
      if (remove > urn.total()) throw ConfigError(fam.where("remove") + ": more coins than the urn holds");
      if (remove > 0) {
        RngStream removal = substream(derive_seed(seed, kRemovalTag + f), 0);
        urn = coins::remove_coins(urn, remove, removal);
      }
      if (experiment == "E4" && !with_replacement && n > urn.total()) {
        throw ConfigError(fam.where("n") + ": more draws than coins without replacement");
      }
      if ((experiment == "E5" || experiment == "E6") && urn.total() == 0) {
        throw ConfigError(fam.where("remove") + ": no coins left in the box");
      }
      for (std::size_t k = 0; k < count; ++k) {
        RngStream rng = substream(seed, stream++);
        TimeSeries ts;
        if (experiment == "D3") {
          ts = coins::run_device(coins::DeviceKind::D3_bernoulli, CoinFace::B, n, rng);
        } else if (experiment == "E4") {
          ts = coins::draw_urn(urn, n, with_replacement, rng).series;
        } else {
          ts = coins::run_box_experiment(experiment == "E5" ? coins::BoxKind::mixed_E5 : coins::BoxKind::pure_E6,
                                         urn, n, rng);
        }
        samples.push_back({std::move(ts), purity::SampleLabel{samples.size(), std::nullopt, std::nullopt}});
        sources.push_back(fmt::format("families[{}]", f));
      }
    }
  }
  cfg.finish();
  if (samples.size() < 2) throw ConfigError("purity needs at least two base samples (inputs and/or config.families)");

  const purity::PurityVerdict verdict = purity::purity_verdict(samples, procedures, alpha, vc);
  json out = purity::to_json(verdict);
  out["alpha"] = alpha;
  out["samples"] = samples.size();
  json procs = json::array();
  for (const auto& p : procedures) procs.push_back(purity::to_string(p));
  out["procedures"] = procs;

  CommandResult result;
  result.files = {{"verdict.json", out.dump(2) + "\n"}};
  json effective = with_seed(config, seed);
  effective["alpha"] = alpha;
  result.effective_config = effective;
  result.exit_code = verdict.verdict == purity::Verdict::pure    ? kExitOk
                     : verdict.verdict == purity::Verdict::mixed ? kExitMixed
                                                                 : kExitInconclusive;
  result.summary = fmt::format("purity: verdict {} over {} samples (min adjusted homogeneity p = {:.3g})",
                               purity::to_string(verdict.verdict), samples.size(), verdict.min_homogeneity_adjusted_p);
  return result;
}

// ---------------------------------------------------------------------------
// bertrand

CommandResult cmd_bertrand(const json& config, const CommonOptions& options) {
  ConfigReader cfg(config, "config");
  const std::uint64_t seed = cfg.seed(options.seed);
  const std::size_t n = cfg.count("N", std::nullopt, 1);
  std::vector<bertrand::Machine> machines;
  if (cfg.has("machines")) {
    const json& list = cfg.raw("machines");
    if (!list.is_array() || list.empty()) throw ConfigError("config.machines: expected a non-empty array");
    for (const auto& m : list) {
      try {
        machines.push_back(bertrand::machine_from_string(m.is_string() ? m.get<std::string>() : m.dump()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config.machines: ") + e.what());
      }
    }
  } else {
    machines = {bertrand::Machine::M1, bertrand::Machine::M2, bertrand::Machine::M3};
  }
  cfg.finish();

  Table table{{"machine", "N", "p_hat", "stderr", "seed", "flag"}, {}};
  std::string summary = "bertrand:";
  for (const auto m : machines) {
    const std::uint64_t machine_seed = derive_seed(seed, static_cast<std::uint64_t>(m));
    const auto est = bertrand::estimate_probability(m, n, machine_seed, options.workers);
    std::string flag;
    if (n < 100) flag = "low_n";
    if (est.std_error == 0.0) flag += flag.empty() ? "stderr_degenerate" : ";stderr_degenerate";
    table.rows.push_back({bertrand::to_string(m), n, est.p_hat, est.std_error, machine_seed, flag});
    summary += fmt::format(" {} = {:.5f}", bertrand::to_string(m), est.p_hat);
  }
  CommandResult result;
  result.files = {{table_name("bertrand", options.format), table.render(options.format)}};
  result.effective_config = with_seed(config, seed);
  result.summary = summary;
  return result;
}

// ---------------------------------------------------------------------------
// qkd

CommandResult cmd_qkd(const json& config, const CommonOptions& options) {
  constexpr std::uint64_t kKeyTag = 100, kTestTag = 200;
  ConfigReader cfg(config, "config");
  const std::uint64_t seed = cfg.seed(options.seed);
  const Direction axis = cfg.direction("axis", 0.0);
  const std::size_t n = cfg.count("n", std::nullopt, 1);
  const double eps_a = cfg.number("epsilon_A", 0.0, 0.0, 2.0);
  const double eps_b = cfg.number("epsilon_B", 0.0, 0.0, 2.0);
  const bool adversary = cfg.flag("adversary", false);
  std::optional<spce::SettingQuad> test_settings;
  std::size_t n_test = 0;
  if (cfg.has("test")) {
    ConfigReader test = cfg.child("test");
    n_test = test.count("N", std::nullopt, 1);
    ConfigReader s = test.child("settings");
    test_settings = spce::SettingQuad{s.direction("A", 0.0), s.direction("A_prime", 90.0), s.direction("B", 45.0),
                                      s.direction("B_prime", 135.0)};
    s.finish();
    test.finish();
  } else {
    cfg.child("test");
  }
  cfg.finish();
  if (adversary && !test_settings) throw ConfigError("config.adversary: requires a config.test block");

  const qkd::KeyPair keys = qkd::generate_keys(axis, n, eps_a, eps_b, derive_seed(seed, kKeyTag), options.workers);
  const double mismatch = qkd::mismatch_rate(keys);
  json report = {{"n", n},
                 {"epsilon_A", eps_a},
                 {"epsilon_B", eps_b},
                 {"mismatch", mismatch},
                 {"mismatch_stderr", std::sqrt(mismatch * (1.0 - mismatch) / static_cast<double>(n))},
                 {"expected_mismatch", (1.0 - (1.0 - eps_a / 2.0) * (1.0 - eps_b / 2.0)) / 2.0},
                 {"chsh", nullptr}};
  std::string summary = fmt::format("qkd: mismatch = {:.5f} over {} bits", mismatch, n);
  if (test_settings) {
    const auto channel = adversary ? qkd::Channel::intercept_resend : qkd::Channel::contextual;
    const auto test = qkd::ekert_test_statistic(*test_settings, n_test, eps_a, eps_b, derive_seed(seed, kTestTag),
                                                channel, options.workers);
    report["chsh"] = {{"channel", adversary ? "intercept_resend" : "contextual"},
                      {"N_test", n_test},
                      {"S", test.s},
                      {"S_le_2", test.s <= 2.0},
                      {"correlators",
                       {{"A,B", test.correlators.ab},
                        {"A,B_prime", test.correlators.ab_prime},
                        {"A_prime,B", test.correlators.a_prime_b},
                        {"A_prime,B_prime", test.correlators.a_prime_b_prime}}}};
    summary += fmt::format(", S = {:.4f} ({})", test.s, adversary ? "intercept-resend" : "contextual");
  }

  CommandResult result;
  result.files = {{"keys.json", qkd::to_json(keys).dump(2) + "\n"}, {"qkd_report.json", report.dump(2) + "\n"}};
  result.effective_config = with_seed(config, seed);
  result.summary = summary;
  return result;
}

CommandResult execute(const std::string& command, const json& config, const CommonOptions& options) {
  if (command == "spce") return cmd_spce(config, options);
  if (command == "coins") return cmd_coins(config, options);
  if (command == "purity") return cmd_purity(config, options);
  if (command == "bertrand") return cmd_bertrand(config, options);
  if (command == "qkd") return cmd_qkd(config, options);
  throw ConfigError("unknown command '" + command + "' (expected spce, coins, purity, bertrand or qkd)");
}

}  // namespace ctxlab::cli
