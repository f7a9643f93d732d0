#include "warmcg/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace warmcg {

namespace {
using nlohmann::json;

json instance_to_obj(const MilpInstance& inst) {
  json j;
  j["name"] = inst.name;
  j["num_continuous"] = inst.num_continuous;
  j["num_integer"] = inst.num_integer;
  j["objective"] = inst.objective;
  json bounds = json::array();
  for (const VarBounds& b : inst.var_bounds) {
    json vb = json::object();
    if (b.lo) vb["lo"] = *b.lo;
    if (b.hi) vb["hi"] = *b.hi;
    bounds.push_back(std::move(vb));
  }
  j["var_bounds"] = std::move(bounds);
  json rows = json::array();
  for (const Constraint& c : inst.constraints) {
    json row;
    json coeffs = json::array();
    for (const Term& t : c.coeffs) coeffs.push_back(json::array({t.var, t.coef}));
    row["coeffs"] = std::move(coeffs);
    row["rhs"] = c.rhs;
    row["learnable"] = c.learnable;
    rows.push_back(std::move(row));
  }
  j["constraints"] = std::move(rows);
  j["theta"] = inst.theta;
  return j;
}

MilpInstance instance_from_obj(const json& j) {
  MilpInstance inst;
  inst.name = j.at("name").get<std::string>();
  inst.num_continuous = j.at("num_continuous").get<int>();
  inst.num_integer = j.at("num_integer").get<int>();
  inst.objective = j.at("objective").get<std::vector<double>>();
  for (const json& vb : j.at("var_bounds")) {
    VarBounds b;
    if (vb.contains("lo")) b.lo = vb.at("lo").get<double>();
    if (vb.contains("hi")) b.hi = vb.at("hi").get<double>();
    inst.var_bounds.push_back(b);
  }
  for (const json& row : j.at("constraints")) {
    Constraint c;
    for (const json& t : row.at("coeffs"))
      c.coeffs.push_back({t.at(0).get<int>(), t.at(1).get<double>()});
    c.rhs = row.at("rhs").get<double>();
    c.learnable = row.at("learnable").get<bool>();
    inst.constraints.push_back(std::move(c));
  }
  inst.theta = j.at("theta").get<std::vector<double>>();
  inst.validate();
  return inst;
}

json parse_line(const std::string& line, const std::string& path, size_t lineno) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  return in;
}
}  // namespace

std::string instance_to_json(const MilpInstance& inst) { return instance_to_obj(inst).dump(); }

MilpInstance instance_from_json(const std::string& text) {
  try {
    return instance_from_obj(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(std::string("instance_from_json: ") + e.what());
  }
}

void save_dataset(const std::string& path, const std::vector<MilpInstance>& dataset) {
  std::ofstream out = open_out(path);
  for (const MilpInstance& inst : dataset) out << instance_to_obj(inst).dump() << '\n';
  if (!out) throw Error("write failed on '" + path + "'");
}

std::vector<MilpInstance> load_dataset(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<MilpInstance> dataset;
  std::set<std::string> names;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      dataset.push_back(instance_from_obj(parse_line(line, path, lineno)));
    } catch (const json::exception& e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!names.insert(dataset.back().name).second)
      throw Error(path + ": duplicate instance name '" + dataset.back().name + "'");
  }
  if (dataset.empty()) throw Error(path + ": no instances");
  return dataset;
}

void save_sets(const std::string& path, const std::vector<IdentifiedSets>& sets) {
  std::ofstream out = open_out(path);
  for (const IdentifiedSets& s : sets) {
    json j;
    j["name"] = s.name;
    j["binding"] = s.binding;
    j["invariant"] = s.invariant;
    out << j.dump() << '\n';
  }
  if (!out) throw Error("write failed on '" + path + "'");
}

std::vector<IdentifiedSets> load_sets(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<IdentifiedSets> sets;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const json j = parse_line(line, path, lineno);
    try {
      IdentifiedSets s;
      s.name = j.at("name").get<std::string>();
      s.binding = j.at("binding").get<std::vector<int>>();
      s.invariant = j.at("invariant").get<std::vector<int>>();
      sets.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (sets.empty()) throw Error(path + ": no sets");
  return sets;
}

std::vector<std::pair<ConstraintSet, ConstraintSet>> align_sets(
    const std::vector<MilpInstance>& dataset, const std::vector<IdentifiedSets>& sets) {
  std::map<std::string, const IdentifiedSets*> by_name;
  for (const IdentifiedSets& s : sets) {
    if (!by_name.emplace(s.name, &s).second)
      throw Error("align_sets: duplicate sets for '" + s.name + "'");
  }
  std::vector<std::pair<ConstraintSet, ConstraintSet>> out;
  for (const MilpInstance& inst : dataset) {
    auto it = by_name.find(inst.name);
    if (it == by_name.end()) throw Error("align_sets: no sets for '" + inst.name + "'");
    out.emplace_back(ConstraintSet(inst, it->second->binding),
                     ConstraintSet(inst, it->second->invariant));
  }
  return out;
}

}  // namespace warmcg
