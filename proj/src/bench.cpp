#include "warmcg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace warmcg {

namespace {
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs fn(0..count-1), possibly across `jobs` threads. Task order per index is
// deterministic; the first thrown exception wins.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex mu;
  std::exception_ptr first;
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int width = std::min(jobs, count);
  pool.reserve(width);
  for (int t = 0; t < width; ++t) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_ms(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Cg: return "cg";
    case Method::BLearner: return "b-learner";
    case Method::SLearner: return "s-learner";
    case Method::Full: return "full";
  }
  return "unknown";
}

Method method_from_string(const std::string& s) {
  if (s == "cg") return Method::Cg;
  if (s == "b-learner") return Method::BLearner;
  if (s == "s-learner") return Method::SLearner;
  if (s == "full") return Method::Full;
  throw Error("unknown method '" + s + "' (expected cg, b-learner, s-learner, or full)");
}

Quantiles quantiles(std::vector<double> values) {
  if (values.empty()) throw Error("quantiles: no values");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  auto at = [&](double p) {
    const double h = p * static_cast<double>(n - 1);
    const size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= n) return values[n - 1];
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
  };
  return {values.front(), at(0.25), at(0.5), at(0.75), values.back()};
}

FamilyArtifacts compute_artifacts(const std::vector<MilpInstance>& family, bool with_sets,
                                  const MilpOptions& opts, int jobs) {
  if (family.empty()) throw Error("compute_artifacts: empty family");
  const int T = static_cast<int>(family.size());
  FamilyArtifacts art;
  art.full.resize(T);
  art.full_ms.resize(T);
  if (with_sets) {
    art.binding.resize(T);
    art.invariant.resize(T);
    art.has_sets = true;
  }
  parallel_for(T, jobs, [&](int t) {
    const auto t0 = Clock::now();
    SolveOutcome full = solve_full(family[t], opts);
    const double ms = ms_since(t0);
    if (!full.optimal())
      throw Error("compute_artifacts: '" + family[t].name + "' is " + to_string(full.status));
    if (with_sets) {
      IdentifyResult ident = identify_invariant_set(family[t], full, ms, opts);
      art.binding[t] = std::move(ident.binding);
      art.invariant[t] = std::move(ident.invariant);
    }
    art.full[t] = std::move(full);
    art.full_ms[t] = ms;
  });
  return art;
}

namespace {
RunMetrics finish_run(const MilpInstance& inst, RunMetrics rm) {
  rm.delta_pct = rm.tau_milp_ms > 0.0
                     ? 100.0 * (rm.tau_pred_ms + rm.tau_cg_ms) / rm.tau_milp_ms
                     : 0.0;
  rm.match = std::abs(rm.objective - rm.full_objective) <= tol::objective_match;
  if (!rm.match)
    throw Error("run_pipeline: objective mismatch on '" + inst.name + "' (" +
                to_string(rm.method) + ", k=" + std::to_string(rm.k) + "): reduced " +
                std::to_string(rm.objective) + " vs full " +
                std::to_string(rm.full_objective));
  return rm;
}
}  // namespace

PipelineResult run_pipeline(const std::vector<MilpInstance>& family, Method method,
                            const std::vector<int>& ks, const MilpOptions& opts, int jobs,
                            const FamilyArtifacts* cache) {
  if (family.empty()) throw Error("run_pipeline: empty family");
  const int T = static_cast<int>(family.size());
  const bool learner = method == Method::BLearner || method == Method::SLearner;

  std::vector<int> arms;
  if (learner) {
    if (ks.empty()) throw Error("run_pipeline: learner methods need at least one k");
    for (int k : ks) {
      if (k < 1 || k > T - 1)
        throw Error("run_pipeline: k=" + std::to_string(k) + " outside [1, " +
                    std::to_string(T - 1) + "] for leave-one-out over " + std::to_string(T) +
                    " instances");
      arms.push_back(k);
    }
  } else {
    arms.push_back(0);
  }

  FamilyArtifacts local;
  const FamilyArtifacts* art = cache;
  if (!art) {
    local = compute_artifacts(family, learner, opts, jobs);
    art = &local;
  }
  if (art->full.size() != static_cast<size_t>(T))
    throw Error("run_pipeline: artifact cache does not cover the family");
  if (learner && !art->has_sets)
    throw Error("run_pipeline: learner methods need identified sets in the artifacts");

  LabelMatrix all_labels;
  if (learner)
    all_labels = build_labels(
        family, method == Method::BLearner ? art->binding : art->invariant,
        method == Method::BLearner ? LabelSource::Binding : LabelSource::Invariant);

  PipelineResult result;
  for (int k : arms) {
    std::vector<RunMetrics> rows(T);
    parallel_for(T, jobs, [&](int t) {
      const MilpInstance& inst = family[t];
      RunMetrics rm;
      rm.instance = inst.name;
      rm.method = method;
      rm.k = k;
      rm.tau_milp_ms = art->full_ms[t];
      rm.full_objective = art->full[t].objective;
      switch (method) {
        case Method::Full: {
          rm.constraint_count = static_cast<int>(inst.learnable_ids().size());
          rm.iterations = 1;
          rm.tau_cg_ms = rm.tau_milp_ms;
          rm.objective = art->full[t].objective;
          break;
        }
        case Method::Cg: {
          const CgTrace trace = constraint_generation_cold(inst, opts);
          rm.constraint_count = trace.final_set.learnable_count(inst);
          rm.iterations = trace.iterations;
          rm.tau_cg_ms = trace.solve_ms;
          rm.objective = trace.outcome.objective;
          break;
        }
        case Method::BLearner:
        case Method::SLearner: {
          const LabelMatrix train = drop_instance(all_labels, t);
          const auto t0 = Clock::now();
          const KnnModel model(train, k);
          const ConstraintSet warm = model.predict(inst);
          rm.tau_pred_ms = ms_since(t0);
          const CgTrace trace = constraint_generation(inst, warm, opts);
          rm.constraint_count = trace.final_set.learnable_count(inst);
          rm.iterations = trace.iterations;
          rm.tau_cg_ms = trace.solve_ms;
          rm.objective = trace.outcome.objective;
          break;
        }
      }
      rows[t] = finish_run(inst, std::move(rm));
    });
    for (RunMetrics& rm : rows) result.runs.push_back(std::move(rm));
  }
  result.aggregates = aggregate_groups(result.runs);
  return result;
}

std::vector<AggregateRow> aggregate_groups(const std::vector<RunMetrics>& runs) {
  if (runs.empty()) throw Error("aggregate_groups: no runs");
  std::vector<std::pair<Method, int>> order;
  for (const RunMetrics& rm : runs) {
    const std::pair<Method, int> key{rm.method, rm.k};
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
  }
  std::vector<AggregateRow> out;
  for (const auto& [method, k] : order) {
    AggregateRow row;
    row.method = method;
    row.k = k;
    std::vector<double> cs, is, deltas;
    int ones = 0;
    for (const RunMetrics& rm : runs) {
      if (rm.method != method || rm.k != k) continue;
      ++row.runs;
      cs.push_back(rm.constraint_count);
      is.push_back(rm.iterations);
      deltas.push_back(rm.delta_pct);
      if (rm.iterations == 1) ++ones;
    }
    row.c_q = quantiles(cs);
    row.i_q = quantiles(is);
    row.delta_q = quantiles(deltas);
    row.c_min = static_cast<int>(row.c_q.min);
    row.c_max = static_cast<int>(row.c_q.max);
    row.i_min = static_cast<int>(row.i_q.min);
    row.i_max = static_cast<int>(row.i_q.max);
    row.p1 = 100.0 * ones / row.runs;
    row.i_mean = 0.0;
    for (double i : is) row.i_mean += i;
    row.i_mean /= row.runs;
    row.delta_mean = 0.0;
    for (double d : deltas) row.delta_mean += d;
    row.delta_mean /= row.runs;
    out.push_back(std::move(row));
  }
  return out;
}

std::string metrics_csv_header() {
  return "instance,method,k,C,I,tau_pred_ms,tau_cg_ms,tau_milp_ms,delta_pct,objective,"
         "full_objective,match";
}

void save_metrics_csv(const std::string& path, const std::vector<RunMetrics>& runs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << metrics_csv_header() << '\n';
  for (const RunMetrics& rm : runs) {
    out << rm.instance << ',' << to_string(rm.method) << ',';
    if (rm.k > 0) out << rm.k;
    out << ',' << rm.constraint_count << ',' << rm.iterations << ',' << format_ms(rm.tau_pred_ms)
        << ',' << format_ms(rm.tau_cg_ms) << ',' << format_ms(rm.tau_milp_ms) << ','
        << format_ms(rm.delta_pct) << ',' << format_double(rm.objective) << ','
        << format_double(rm.full_objective) << ',' << (rm.match ? 1 : 0) << '\n';
  }
  if (!out) throw Error("write failed on '" + path + "'");
}

std::vector<RunMetrics> load_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ": empty file");
  if (line == metrics_csv_header() + "\r") line.pop_back();
  if (line != metrics_csv_header())
    throw Error(path + ": unexpected header '" + line + "'");
  std::vector<RunMetrics> runs;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (line.back() == ',') f.push_back("");
    if (f.size() != 12)
      throw Error(path + ":" + std::to_string(lineno) + ": expected 12 fields, got " +
                  std::to_string(f.size()));
    try {
      RunMetrics rm;
      rm.instance = f[0];
      rm.method = method_from_string(f[1]);
      rm.k = f[2].empty() ? 0 : std::stoi(f[2]);
      rm.constraint_count = std::stoi(f[3]);
      rm.iterations = std::stoi(f[4]);
      rm.tau_pred_ms = std::stod(f[5]);
      rm.tau_cg_ms = std::stod(f[6]);
      rm.tau_milp_ms = std::stod(f[7]);
      rm.delta_pct = std::stod(f[8]);
      rm.objective = std::stod(f[9]);
      rm.full_objective = std::stod(f[10]);
      rm.match = f[11] == "1";
      runs.push_back(std::move(rm));
    } catch (const std::logic_error&) {
      throw Error(path + ":" + std::to_string(lineno) + ": malformed numeric field");
    }
  }
  if (runs.empty()) throw Error(path + ": no runs");
  return runs;
}

std::string summary_to_json(const std::vector<AggregateRow>& aggregates) {
  using nlohmann::json;
  auto qjson = [](const Quantiles& q) {
    json j;
    j["min"] = q.min;
    j["q1"] = q.q1;
    j["median"] = q.median;
    j["q3"] = q.q3;
    j["max"] = q.max;
    return j;
  };
  json groups = json::array();
  for (const AggregateRow& row : aggregates) {
    json g;
    g["method"] = to_string(row.method);
    if (row.k > 0) g["k"] = row.k;
    g["runs"] = row.runs;
    g["C"] = qjson(row.c_q);
    g["I"] = qjson(row.i_q);
    g["I"]["mean"] = row.i_mean;
    g["delta_pct"] = qjson(row.delta_q);
    g["delta_pct"]["mean"] = row.delta_mean;
    g["P1"] = row.p1;
    groups.push_back(std::move(g));
  }
  json root;
  root["groups"] = std::move(groups);
  return root.dump(2);
}

}  // namespace warmcg
