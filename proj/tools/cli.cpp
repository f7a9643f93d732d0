#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "warmcg/bench.hpp"
#include "warmcg/congen.hpp"
#include "warmcg/instances.hpp"
#include "warmcg/io.hpp"
#include "warmcg/learner.hpp"
#include "warmcg/milp.hpp"

namespace {
using namespace warmcg;

const MilpInstance& find_instance(const std::vector<MilpInstance>& dataset,
                                  const std::string& name) {
  for (const MilpInstance& inst : dataset)
    if (inst.name == name) return inst;
  throw Error("no instance named '" + name + "' in the dataset");
}

void cmd_gen_toy(const std::string& out) {
  const std::vector<MilpInstance> dataset = gen_toy();
  save_dataset(out, dataset);
  std::cout << "wrote " << dataset.size() << " instances to " << out << "\n";
}

void cmd_gen_synthetic(const SyntheticConfig& cfg, const std::string& out) {
  const std::vector<MilpInstance> dataset = gen_synthetic(cfg);
  save_dataset(out, dataset);
  std::cout << "wrote " << dataset.size() << " instances to " << out << "\n";
}

void cmd_gen_uc(const UcConfig& cfg, const std::string& out) {
  const std::vector<MilpInstance> dataset = gen_uc(cfg);
  save_dataset(out, dataset);
  std::cout << "wrote " << dataset.size() << " instances to " << out << "\n";
}

void cmd_solve(const std::string& data, const std::string& name, const MilpOptions& opts) {
  const std::vector<MilpInstance> dataset = load_dataset(data);
  const MilpInstance& inst = find_instance(dataset, name);
  const SolveOutcome out = solve_full(inst, opts);
  if (!out.optimal())
    throw Error("'" + name + "' is " + to_string(out.status));
  nlohmann::json j;
  j["name"] = inst.name;
  j["status"] = to_string(out.status);
  j["objective"] = out.objective;
  j["solution"] = out.solution;
  std::cout << j.dump() << "\n";
}

void cmd_identify(const std::string& data, const std::string& out, const MilpOptions& opts,
                  int jobs) {
  const std::vector<MilpInstance> dataset = load_dataset(data);
  const FamilyArtifacts art = compute_artifacts(dataset, /*with_sets=*/true, opts, jobs);
  std::vector<IdentifiedSets> sets;
  for (size_t t = 0; t < dataset.size(); ++t)
    sets.push_back({dataset[t].name, art.binding[t].members(), art.invariant[t].members()});
  save_sets(out, sets);
  std::cout << "identified sets for " << sets.size() << " instances -> " << out << "\n";
}

void cmd_predict(const std::string& data, const std::string& sets_path,
                 const std::string& query, int k, const std::string& source) {
  const std::vector<MilpInstance> dataset = load_dataset(data);
  const MilpInstance& target = find_instance(dataset, query);
  std::vector<MilpInstance> train;
  for (const MilpInstance& inst : dataset)
    if (inst.name != query) train.push_back(inst);
  if (train.empty()) throw Error("no training instances besides the query");

  const std::vector<IdentifiedSets> sets = load_sets(sets_path);
  std::vector<IdentifiedSets> train_sets;
  for (const MilpInstance& inst : train) {
    bool found = false;
    for (const IdentifiedSets& s : sets) {
      if (s.name == inst.name) {
        train_sets.push_back(s);
        found = true;
        break;
      }
    }
    if (!found) throw Error("no sets for training instance '" + inst.name + "'");
  }

  const LabelSource src = source == "binding" ? LabelSource::Binding : LabelSource::Invariant;
  std::vector<ConstraintSet> chosen;
  const auto aligned = align_sets(train, train_sets);
  for (const auto& [binding, invariant] : aligned)
    chosen.push_back(src == LabelSource::Binding ? binding : invariant);
  const KnnModel model(build_labels(train, chosen, src), k);
  const ConstraintSet predicted = model.predict(target);

  nlohmann::json j;
  j["name"] = target.name;
  j["predicted"] = predicted.members();
  std::cout << j.dump() << "\n";
}

void cmd_benchmark(const std::string& data, const std::string& method_name,
                   const std::vector<int>& ks, const std::string& out,
                   const std::string& sets_path, const MilpOptions& opts, int jobs) {
  const std::vector<MilpInstance> dataset = load_dataset(data);
  const Method method = method_from_string(method_name);
  const bool learner = method == Method::BLearner || method == Method::SLearner;

  FamilyArtifacts art;
  if (!sets_path.empty()) {
    // Reuse offline identification: full solves are still timed here, but the
    // binding/invariant sets come from the file.
    const auto aligned = align_sets(dataset, load_sets(sets_path));
    art = compute_artifacts(dataset, /*with_sets=*/false, opts, jobs);
    for (const auto& [binding, invariant] : aligned) {
      art.binding.push_back(binding);
      art.invariant.push_back(invariant);
    }
    art.has_sets = true;
  } else {
    art = compute_artifacts(dataset, learner, opts, jobs);
  }

  const PipelineResult result = run_pipeline(dataset, method, ks, opts, jobs, &art);
  save_metrics_csv(out, result.runs);

  for (const AggregateRow& row : result.aggregates) {
    std::printf("%-10s", to_string(row.method).c_str());
    if (row.k > 0)
      std::printf(" k=%-4d", row.k);
    else
      std::printf("       ");
    std::printf(" runs=%-5d C=[%d, %d] I=[%d, %d] P1=%.2f%% delta=%.2f%%\n", row.runs,
                row.c_min, row.c_max, row.i_min, row.i_max, row.p1, row.delta_mean);
  }
  std::printf("metrics -> %s\n", out.c_str());
}

void cmd_report(const std::string& metrics, const std::string& out) {
  const std::vector<RunMetrics> runs = load_metrics_csv(metrics);
  const std::string summary = summary_to_json(aggregate_groups(runs));
  if (out.empty()) {
    std::cout << summary << "\n";
    return;
  }
  std::ofstream file(out);
  if (!file) throw Error("cannot write '" + out + "'");
  file << summary << "\n";
  std::cout << "summary -> " << out << "\n";
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Machine-learning warm-started constraint generation for MILPs"};
  app.set_version_flag("--version", "warmcg 1.0.0");
  app.set_config("--config");
  app.require_subcommand(1);

  try {
    // gen-toy
    std::string toy_out;
    CLI::App* gen_toy_cmd = app.add_subcommand("gen-toy", "Write the two-variable example family");
    gen_toy_cmd->add_option("--out", toy_out, "Output dataset (JSON lines)")->required();
    gen_toy_cmd->callback([&] { cmd_gen_toy(toy_out); });

    // gen-synthetic
    SyntheticConfig syn;
    std::string syn_out;
    CLI::App* gen_syn_cmd =
        app.add_subcommand("gen-synthetic", "Generate a coupling-row MILP family");
    gen_syn_cmd->add_option("--n", syn.n, "Continuous/binary variable pairs")
        ->capture_default_str();
    gen_syn_cmd->add_option("--m", syn.m, "Coupling rows")->capture_default_str();
    gen_syn_cmd->add_option("--T", syn.T, "Instances")->capture_default_str();
    gen_syn_cmd->add_option("--seed", syn.seed, "Random seed")->capture_default_str();
    gen_syn_cmd->add_option("--prefix", syn.prefix, "Instance name prefix")
        ->capture_default_str();
    gen_syn_cmd->add_option("--out", syn_out, "Output dataset (JSON lines)")->required();
    gen_syn_cmd->callback([&] { cmd_gen_synthetic(syn, syn_out); });

    // gen-uc
    UcConfig uc;
    std::string uc_out;
    CLI::App* gen_uc_cmd = app.add_subcommand("gen-uc", "Generate a unit-commitment family");
    gen_uc_cmd->add_option("--n", uc.n, "Generators (one per node)")->capture_default_str();
    gen_uc_cmd->add_option("--m", uc.m, "Transmission lines")->capture_default_str();
    gen_uc_cmd->add_option("--T", uc.T, "Instances (hours)")->capture_default_str();
    gen_uc_cmd->add_option("--seed", uc.seed, "Random seed")->capture_default_str();
    gen_uc_cmd->add_option("--prefix", uc.prefix, "Instance name prefix")->capture_default_str();
    gen_uc_cmd->add_option("--out", uc_out, "Output dataset (JSON lines)")->required();
    gen_uc_cmd->callback([&] { cmd_gen_uc(uc, uc_out); });

    // solve
    std::string solve_data, solve_name;
    MilpOptions solve_opts;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance over all rows");
    solve_cmd->add_option("--data", solve_data, "Dataset file")->required();
    solve_cmd->add_option("--name", solve_name, "Instance name")->required();
    solve_cmd->add_option("--node-limit", solve_opts.node_limit, "Branch-and-bound node cap")
        ->capture_default_str();
    solve_cmd->callback([&] { cmd_solve(solve_data, solve_name, solve_opts); });

    // identify
    std::string id_data, id_out;
    MilpOptions id_opts;
    int id_jobs = 1;
    CLI::App* identify_cmd = app.add_subcommand(
        "identify", "Identify binding and invariant constraint sets for every instance");
    identify_cmd->add_option("--data", id_data, "Dataset file")->required();
    identify_cmd->add_option("--out", id_out, "Output sets file (JSON lines)")->required();
    identify_cmd->add_option("--jobs", id_jobs, "Worker threads")->capture_default_str();
    identify_cmd->add_option("--node-limit", id_opts.node_limit, "Branch-and-bound node cap")
        ->capture_default_str();
    identify_cmd->callback([&] { cmd_identify(id_data, id_out, id_opts, id_jobs); });

    // predict
    std::string pr_data, pr_sets, pr_query, pr_source = "invariant";
    int pr_k = 1;
    CLI::App* predict_cmd =
        app.add_subcommand("predict", "Predict a warm-start constraint set for one instance");
    predict_cmd->add_option("--data", pr_data, "Dataset file")->required();
    predict_cmd->add_option("--sets", pr_sets, "Identified sets file")->required();
    predict_cmd->add_option("--query", pr_query, "Held-out instance name")->required();
    predict_cmd->add_option("--k", pr_k, "Neighbors")->capture_default_str();
    predict_cmd->add_option("--source", pr_source, "Label source")
        ->check(CLI::IsMember({"binding", "invariant"}))
        ->capture_default_str();
    predict_cmd->callback([&] { cmd_predict(pr_data, pr_sets, pr_query, pr_k, pr_source); });

    // benchmark
    std::string bm_data, bm_method, bm_out, bm_sets;
    std::vector<int> bm_ks;
    MilpOptions bm_opts;
    int bm_jobs = 1;
    CLI::App* bench_cmd =
        app.add_subcommand("benchmark", "Leave-one-out evaluation of one method");
    bench_cmd->add_option("--data", bm_data, "Dataset file")->required();
    bench_cmd->add_option("--method", bm_method, "cg, b-learner, s-learner, or full")
        ->required();
    bench_cmd->add_option("--k", bm_ks, "Neighbor counts (comma separated)")->delimiter(',');
    bench_cmd->add_option("--out", bm_out, "Output metrics CSV")->required();
    bench_cmd->add_option("--sets", bm_sets, "Reuse identified sets from this file");
    bench_cmd->add_option("--jobs", bm_jobs, "Worker threads")->capture_default_str();
    bench_cmd->add_option("--node-limit", bm_opts.node_limit, "Branch-and-bound node cap")
        ->capture_default_str();
    bench_cmd->callback(
        [&] { cmd_benchmark(bm_data, bm_method, bm_ks, bm_out, bm_sets, bm_opts, bm_jobs); });

    // report
    std::string rp_metrics, rp_out;
    CLI::App* report_cmd =
        app.add_subcommand("report", "Aggregate a metrics CSV into a summary JSON");
    report_cmd->add_option("--metrics", rp_metrics, "Metrics CSV")->required();
    report_cmd->add_option("--out", rp_out, "Output summary file (stdout when omitted)");
    report_cmd->callback([&] { cmd_report(rp_metrics, rp_out); });

    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
