// Command-line front end: generates instances and scenario sets, builds and
// solves the SAA / moment / Wasserstein models, evaluates decisions out of
// sample, sweeps the Wasserstein radius, and estimates reliability. Outputs
// are JSON (structured objects) and CSV (tables, plot data).
//
// Exit codes: 0 ok, 2 configuration error, 3 solver error, 4 I/O error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hras/errors.hpp"
#include "hras/evaluation.hpp"
#include "hras/json_io.hpp"
#include "hras/model_moment.hpp"
#include "hras/model_saa.hpp"
#include "hras/model_wasserstein.hpp"
#include "hras/scenario_gen.hpp"
#include "hras/solve.hpp"

namespace {

using namespace hras;

// Lets --config accept a flat or nested JSON object next to the default
// TOML-style reader; nested objects address subcommand sections.
class ConfigJson : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    input >> j;
    std::vector<CLI::ConfigItem> items;
    walk(j, {}, items);
    return items;
  }

 private:
  static void walk(const nlohmann::json& j, std::vector<std::string> parents,
                   std::vector<CLI::ConfigItem>& items) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object()) {
        auto deeper = parents;
        deeper.push_back(it.key());
        walk(it.value(), deeper, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it.value().is_array()) {
        for (const auto& e : it.value()) item.inputs.push_back(scalar(e));
      } else {
        item.inputs.push_back(scalar(it.value()));
      }
      items.push_back(std::move(item));
    }
  }

  static std::string scalar(const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
};

struct CommonOpts {
  std::string outDir = ".";
  double gap = 0.02;
  double timeLimit = 0.0;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.outDir, "output directory");
  cmd->add_option("--gap", c.gap, "relative MIP gap tolerance");
  cmd->add_option("--time-limit", c.timeLimit, "solve time limit in seconds (0 = none)");
  cmd->add_option("--workers", c.workers, "worker threads for independent tasks");
}

struct CostOpts {
  int preset = 1;  // 1 = (2,1,20), 2 = (1,5,7.5)
  double cw = -1, cu = -1, co = -1;
  double lambda = 0.5;
};

void add_costs(CLI::App* cmd, CostOpts& c) {
  cmd->add_option("--preset", c.preset, "cost preset: 1 = (2,1,20), 2 = (1,5,7.5)")
      ->check(CLI::Range(1, 2));
  cmd->add_option("--cw", c.cw, "waiting cost per minute (overrides preset)");
  cmd->add_option("--cu", c.cu, "idling cost per minute (overrides preset)");
  cmd->add_option("--co", c.co, "overtime cost per minute (overrides preset)");
  cmd->add_option("--lambda", c.lambda, "travel cost per minute");
}

void apply_costs(const CostOpts& c, GenConfig& g) {
  g.waitCost = c.preset == 1 ? 2.0 : 1.0;
  g.idleCost = c.preset == 1 ? 1.0 : 5.0;
  g.overtimeCost = c.preset == 1 ? 20.0 : 7.5;
  if (c.cw >= 0) g.waitCost = c.cw;
  if (c.cu >= 0) g.idleCost = c.cu;
  if (c.co >= 0) g.overtimeCost = c.co;
  g.lambda = c.lambda;
}

OosSet parse_oos(const std::string& s) {
  if (s == "set1") return OosSet::Set1;
  if (s == "set2") return OosSet::Set2;
  if (s == "set3") return OosSet::Set3;
  if (s == "set4") return OosSet::Set4;
  if (s == "set5") return OosSet::Set5;
  throw ConfigError("unknown out-of-sample set: " + s);
}

std::string path_join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

GenConfig replication_config(const GenConfig& base, int rep) {
  GenConfig g = base;
  SplitMix64 s = substream(base.seed, 99, static_cast<std::uint64_t>(rep), 0);
  g.seed = s();
  return g;
}

// gen: instance + latent means + scenario files
int cmd_gen(const GenConfig& gencfg, int R, const CommonOpts& common) {
  ensure_dir(common.outDir);
  const GeneratedInstance gi = gen_instance(gencfg);
  const std::vector<Scenario> scenarios = gen_scenarios(gi.inst, gi.latentMu, R, gencfg);
  write_text_file(path_join(common.outDir, "instance.json"),
                  instance_to_json(gi.inst).dump(2) + "\n");
  write_text_file(path_join(common.outDir, "latent_mu.json"),
                  nlohmann::json(gi.latentMu).dump(2) + "\n");
  write_text_file(path_join(common.outDir, "scenarios.csv"), scenarios_to_csv(scenarios));
  write_text_file(path_join(common.outDir, "scenarios.json"),
                  scenarios_to_json(scenarios).dump(2) + "\n");
  std::cout << "wrote instance.json, latent_mu.json, scenarios.{csv,json} to "
            << common.outDir << "\n";
  return 0;
}

int cmd_solve(const std::string& model, const std::string& instancePath,
              const std::string& scenariosPath, double epsilon, bool sbc,
              const CommonOpts& common) {
  ensure_dir(common.outDir);
  const Instance inst =
      instance_from_json(nlohmann::json::parse(read_text_file(instancePath)));
  const std::vector<std::string> problems = validate_instance(inst);
  if (!problems.empty()) throw ConfigError("invalid instance: " + problems.front());
  std::vector<Scenario> scenarios;
  if (!scenariosPath.empty()) {
    const std::string text = read_text_file(scenariosPath);
    scenarios = scenariosPath.size() > 4 &&
                        scenariosPath.substr(scenariosPath.size() - 4) == ".csv"
                    ? scenarios_from_csv(text, inst.N)
                    : scenarios_from_json(nlohmann::json::parse(text));
  }

  SolveOptions sopts;
  sopts.gap = common.gap;
  sopts.timeLimitSeconds = common.timeLimit;
  sopts.lpOutPath = path_join(common.outDir, "model.lp");

  LinearModel* m = nullptr;
  FirstStageVars fs;
  SaaModel saa;
  MdhrasModel md;
  WdhrasModel wd;
  if (model == "saa") {
    if (scenarios.empty()) throw ConfigError("saa needs --scenarios");
    SaaModelSpec spec;
    spec.instance = &inst;
    spec.scenarios = scenarios;
    spec.symmetryBreaking = sbc;
    saa = build_saa(spec);
    for (const std::string& w : saa.warnings) std::cerr << "warning: " << w << "\n";
    m = &saa.model;
    fs = saa.fs;
  } else if (model == "mdhras") {
    MomentAmbiguity amb;
    if (inst.serviceMean && inst.travelMean) {
      amb.serviceMean = *inst.serviceMean;
      amb.travelMean = *inst.travelMean;
    } else if (!scenarios.empty()) {
      amb = ambiguity_from_samples(inst, scenarios);
    } else {
      throw ConfigError("mdhras needs means in the instance or --scenarios");
    }
    MdhrasOptions mo;
    mo.symmetryBreaking = sbc;
    md = build_mdhras(inst, amb, mo);
    m = &md.model;
    fs = md.fs;
  } else if (model == "wdhras") {
    if (scenarios.empty()) throw ConfigError("wdhras needs --scenarios");
    if (epsilon < 0) throw ConfigError("wdhras needs --epsilon >= 0");
    WassersteinAmbiguity amb;
    amb.samples = scenarios;
    amb.radius = epsilon;
    WdhrasOptions wo;
    wo.symmetryBreaking = sbc;
    wd = build_wdhras(inst, amb, wo);
    m = &wd.model;
    fs = wd.fs;
  } else {
    throw ConfigError("unknown model: " + model);
  }

  const SolveResult res = solve(*m, sopts);
  write_text_file(path_join(common.outDir, "result.json"),
                  solve_result_to_json(res).dump(2) + "\n");
  if (res.hasSolution()) {
    const FirstStageDecision dec = extract_decision(fs, res, inst.N);
    write_text_file(path_join(common.outDir, "decision.json"),
                    decision_to_json(dec).dump(2) + "\n");
  }
  std::cout << "status " << to_string(res.status) << " objective " << res.objective
            << " gap " << res.gap << "\n";
  return 0;
}

int cmd_evaluate(const std::string& instancePath, const std::string& decisionPath,
                 const std::string& scenariosPath, const CommonOpts& common) {
  ensure_dir(common.outDir);
  const Instance inst =
      instance_from_json(nlohmann::json::parse(read_text_file(instancePath)));
  const FirstStageDecision dec =
      decision_from_json(nlohmann::json::parse(read_text_file(decisionPath)));
  const std::string text = read_text_file(scenariosPath);
  const std::vector<Scenario> scenarios =
      scenariosPath.size() > 4 && scenariosPath.substr(scenariosPath.size() - 4) == ".csv"
          ? scenarios_from_csv(text, inst.N)
          : scenarios_from_json(nlohmann::json::parse(text));
  const EvaluationReport rep = out_of_sample(dec, scenarios, inst);
  write_text_file(path_join(common.outDir, "report.csv"), report_to_csv(rep));
  std::vector<PlotRow> rows;
  for (size_t j = 0; j < rep.interArrival.size(); ++j)
    rows.push_back({static_cast<double>(j + 1), "interarrival", rep.interArrival[j],
                    rep.interArrival[j], rep.interArrival[j]});
  write_text_file(path_join(common.outDir, "plot_interarrival.csv"), plot_rows_to_csv(rows));
  std::cout << "mean cost " << rep.meanCost << " over " << rep.scenarioCount
            << " scenarios\n";
  return 0;
}

int cmd_sweep(const GenConfig& gencfg, int R, int reps, int oosCount,
              const CommonOpts& common) {
  ensure_dir(common.outDir);
  SolveOptions sopts;
  sopts.gap = common.gap;
  sopts.timeLimitSeconds = common.timeLimit;
  auto replication = [&](int rep) {
    const GenConfig g = replication_config(gencfg, rep);
    const GeneratedInstance gi = gen_instance(g);
    SweepReplication data;
    data.inst = gi.inst;
    data.training = gen_scenarios(gi.inst, gi.latentMu, R, g);
    GenConfig oosCfg = g;
    oosCfg.seed = g.seed ^ 0x5eedu;
    data.oos = gen_scenarios(gi.inst, gi.latentMu, oosCount, oosCfg);
    return data;
  };
  const std::vector<SweepCell> table =
      epsilon_sweep(replication, reps, default_epsilon_grid(), sopts, common.workers);
  write_text_file(path_join(common.outDir, "sweep.csv"), sweep_to_csv(table));
  std::vector<PlotRow> rows;
  for (const SweepCell& c : table)
    rows.push_back({c.epsilon, "wdhras", c.mean, c.p20, c.p80});
  write_text_file(path_join(common.outDir, "plot_sweep.csv"), plot_rows_to_csv(rows));
  std::cout << "wrote sweep.csv (" << table.size() << " radii) to " << common.outDir << "\n";
  return 0;
}

int cmd_reliability(const GenConfig& gencfg, const std::string& model, double epsilon,
                    int R, int instances, int oosCount, const CommonOpts& common) {
  ensure_dir(common.outDir);
  SolveOptions sopts;
  sopts.gap = common.gap;
  sopts.timeLimitSeconds = common.timeLimit;
  std::vector<ReliabilityEntry> entries(static_cast<size_t>(instances));
  std::vector<Instance> insts(static_cast<size_t>(instances));
  parallel_for(instances, common.workers, [&](int k) {
    const GenConfig g = replication_config(gencfg, k);
    const GeneratedInstance gi = gen_instance(g);
    insts[static_cast<size_t>(k)] = gi.inst;
    const std::vector<Scenario> training = gen_scenarios(gi.inst, gi.latentMu, R, g);
    GenConfig oosCfg = g;
    oosCfg.seed = g.seed ^ 0x5eedu;

    double value = 0.0;
    FirstStageDecision dec;
    if (model == "saa") {
      SaaModelSpec spec;
      spec.instance = &insts[static_cast<size_t>(k)];
      spec.scenarios = training;
      SaaModel built = build_saa(spec);
      const SolveResult res = solve(built.model, sopts);
      if (!res.hasSolution()) throw SolverError("reliability: saa solve failed");
      value = res.objective;
      dec = extract_decision(built.fs, res, gi.inst.N);
    } else if (model == "wdhras") {
      WassersteinAmbiguity amb;
      amb.samples = training;
      amb.radius = epsilon;
      WdhrasModel built = build_wdhras(insts[static_cast<size_t>(k)], amb);
      const SolveResult res = solve(built.model, sopts);
      if (!res.hasSolution()) throw SolverError("reliability: wdhras solve failed");
      value = res.objective;
      dec = extract_decision(built.fs, res, gi.inst.N);
    } else if (model == "mdhras") {
      const MomentAmbiguity amb = ambiguity_from_samples(insts[static_cast<size_t>(k)], training);
      MdhrasModel built = build_mdhras(insts[static_cast<size_t>(k)], amb);
      const SolveResult res = solve(built.model, sopts);
      if (!res.hasSolution()) throw SolverError("reliability: mdhras solve failed");
      value = res.objective;
      dec = extract_decision(built.fs, res, gi.inst.N);
    } else {
      throw ConfigError("unknown model: " + model);
    }
    ReliabilityEntry& e = entries[static_cast<size_t>(k)];
    e.modelValue = value;
    e.dec = dec;
    e.oos = gen_scenarios(gi.inst, gi.latentMu, oosCount, oosCfg);
    e.inst = &insts[static_cast<size_t>(k)];
  });
  const ReliabilityResult res = reliability(entries);
  std::string csv = "model,epsilon,instances,oos_count,fraction\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s,%.17g,%d,%d,%.17g\n", model.c_str(), epsilon,
                res.instanceCount, res.oosCount, res.fraction);
  csv += buf;
  write_text_file(path_join(common.outDir, "reliability.csv"), csv);
  std::cout << "reliability " << res.fraction << " over " << res.instanceCount
            << " instances\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& sweepFiles,
               const std::vector<std::string>& seriesNames, const CommonOpts& common) {
  if (sweepFiles.size() != seriesNames.size())
    throw ConfigError("--sweep and --series must be paired");
  ensure_dir(common.outDir);
  std::vector<PlotRow> rows;
  for (size_t f = 0; f < sweepFiles.size(); ++f) {
    std::istringstream in(read_text_file(sweepFiles[f]));
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty sweep file: " + sweepFiles[f]);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      PlotRow r;
      r.series = seriesNames[f];
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r.x, &r.y, &r.p20, &r.p80) != 4)
        throw IoError("bad sweep row: " + line);
      rows.push_back(r);
    }
  }
  write_text_file(path_join(common.outDir, "plot_data.csv"), plot_rows_to_csv(rows));
  std::cout << "wrote plot_data.csv (" << rows.size() << " rows) to " << common.outDir
            << "\n";
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Routing and appointment scheduling under uncertainty: SAA, "
               "mean-support and Wasserstein distributionally robust models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or JSON config file; flags win");
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config" &&
        std::string(argv[i + 1]).size() > 5 &&
        std::string(argv[i + 1]).substr(std::string(argv[i + 1]).size() - 5) == ".json")
      app.config_formatter(std::make_shared<ConfigJson>());

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance and scenarios");
  GenConfig gencfg;
  CostOpts genCosts;
  CommonOpts genCommon;
  int genR = 0;
  std::string genOos = "set1";
  bool genNoRound = false;
  gen->add_option("--n", gencfg.N, "number of customers")->required();
  gen->add_option("--r", genR, "number of scenarios")->required();
  gen->add_option("--seed", gencfg.seed, "RNG seed");
  gen->add_option("--oos", genOos, "scenario set: set1..set5");
  gen->add_option("--delta", gencfg.delta, "support stretch for set3/set5");
  gen->add_flag("--no-round", genNoRound, "keep fractional minutes");
  add_costs(gen, genCosts);
  add_common(gen, genCommon);

  // solve
  auto* slv = app.add_subcommand("solve", "build and solve a model");
  CommonOpts slvCommon;
  std::string slvModel, slvInstance, slvScenarios;
  double slvEpsilon = -1.0;
  bool slvSbc = false;
  slv->add_option("--model", slvModel, "saa | mdhras | wdhras")->required();
  slv->add_option("--instance", slvInstance, "instance.json path")->required();
  slv->add_option("--scenarios", slvScenarios, "scenarios .csv or .json path");
  slv->add_option("--epsilon", slvEpsilon, "Wasserstein radius (wdhras)");
  slv->add_flag("--sbc", slvSbc, "add symmetry-breaking cuts (homogeneous instances only)");
  add_common(slv, slvCommon);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "out-of-sample evaluation of a decision");
  CommonOpts evCommon;
  std::string evInstance, evDecision, evScenarios;
  ev->add_option("--instance", evInstance, "instance.json path")->required();
  ev->add_option("--decision", evDecision, "decision.json path")->required();
  ev->add_option("--scenarios", evScenarios, "out-of-sample scenarios path")->required();
  add_common(ev, evCommon);

  // sweep
  auto* sw = app.add_subcommand("sweep", "out-of-sample cost over the radius grid");
  GenConfig swCfg;
  CostOpts swCosts;
  CommonOpts swCommon;
  int swR = 5, swReps = 20, swOos = 2000;
  sw->add_option("--n", swCfg.N, "number of customers");
  sw->add_option("--r", swR, "training scenarios per replication");
  sw->add_option("--reps", swReps, "replications");
  sw->add_option("--oos-count", swOos, "out-of-sample scenarios");
  sw->add_option("--seed", swCfg.seed, "RNG seed");
  add_costs(sw, swCosts);
  add_common(sw, swCommon);

  // reliability
  auto* rel = app.add_subcommand("reliability", "fraction of instances whose model value "
                                                "bounds the true cost");
  GenConfig relCfg;
  CostOpts relCosts;
  CommonOpts relCommon;
  std::string relModel = "wdhras";
  double relEpsilon = 50.0;
  int relR = 5, relInstances = 20, relOos = 2000;
  rel->add_option("--model", relModel, "saa | mdhras | wdhras");
  rel->add_option("--epsilon", relEpsilon, "Wasserstein radius");
  rel->add_option("--n", relCfg.N, "number of customers");
  rel->add_option("--r", relR, "training scenarios");
  rel->add_option("--instances", relInstances, "instance count");
  rel->add_option("--oos-count", relOos, "out-of-sample scenarios");
  rel->add_option("--seed", relCfg.seed, "RNG seed");
  add_costs(rel, relCosts);
  add_common(rel, relCommon);

  // report
  auto* rp = app.add_subcommand("report", "merge sweep tables into plot data");
  CommonOpts rpCommon;
  std::vector<std::string> rpSweeps, rpSeries;
  rp->add_option("--sweep", rpSweeps, "sweep.csv files");
  rp->add_option("--series", rpSeries, "series name per sweep file");
  add_common(rp, rpCommon);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (gen->parsed()) {
    gencfg.rounding = !genNoRound;
    gencfg.oosSet = parse_oos(genOos);
    apply_costs(genCosts, gencfg);
    return cmd_gen(gencfg, genR, genCommon);
  }
  if (slv->parsed()) return cmd_solve(slvModel, slvInstance, slvScenarios, slvEpsilon,
                                      slvSbc, slvCommon);
  if (ev->parsed()) return cmd_evaluate(evInstance, evDecision, evScenarios, evCommon);
  if (sw->parsed()) {
    apply_costs(swCosts, swCfg);
    return cmd_sweep(swCfg, swR, swReps, swOos, swCommon);
  }
  if (rel->parsed()) {
    apply_costs(relCosts, relCfg);
    return cmd_reliability(relCfg, relModel, relEpsilon, relR, relInstances, relOos,
                           relCommon);
  }
  if (rp->parsed()) return cmd_report(rpSweeps, rpSeries, rpCommon);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
