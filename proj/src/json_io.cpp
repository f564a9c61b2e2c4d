#include "hras/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hras/errors.hpp"

namespace hras {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

dvec dvec_from(const nlohmann::json& j) { return j.get<dvec>(); }
dmat dmat_from(const nlohmann::json& j) { return j.get<dmat>(); }

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j{{"n", inst.N},
                   {"horizon", inst.L},
                   {"costs",
                    {{"wait", inst.costs.waitCost},
                     {"idle", inst.costs.idleCost},
                     {"overtime", inst.costs.overtimeCost},
                     {"travel", inst.costs.travelCost}}},
                   {"serviceLower", inst.serviceLower},
                   {"serviceUpper", inst.serviceUpper},
                   {"travelLower", inst.travelLower},
                   {"travelUpper", inst.travelUpper}};
  if (inst.serviceMean) j["serviceMean"] = *inst.serviceMean;
  if (inst.travelMean) j["travelMean"] = *inst.travelMean;
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  inst.N = j.at("n").get<int>();
  inst.L = j.at("horizon").get<double>();
  const nlohmann::json& c = j.at("costs");
  inst.costs.waitCost = dvec_from(c.at("wait"));
  inst.costs.idleCost = dvec_from(c.at("idle"));
  inst.costs.overtimeCost = c.at("overtime").get<double>();
  inst.costs.travelCost = c.at("travel").get<double>();
  inst.serviceLower = dvec_from(j.at("serviceLower"));
  inst.serviceUpper = dvec_from(j.at("serviceUpper"));
  inst.travelLower = dmat_from(j.at("travelLower"));
  inst.travelUpper = dmat_from(j.at("travelUpper"));
  if (j.contains("serviceMean")) inst.serviceMean = dvec_from(j.at("serviceMean"));
  if (j.contains("travelMean")) inst.travelMean = dmat_from(j.at("travelMean"));
  return inst;
}

nlohmann::json scenarios_to_json(const std::vector<Scenario>& scenarios) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Scenario& sc : scenarios)
    arr.push_back({{"service", sc.service}, {"travel", sc.travel}});
  return arr;
}

std::vector<Scenario> scenarios_from_json(const nlohmann::json& j) {
  std::vector<Scenario> out;
  for (const nlohmann::json& e : j) {
    Scenario sc;
    sc.service = dvec_from(e.at("service"));
    sc.travel = dmat_from(e.at("travel"));
    out.push_back(std::move(sc));
  }
  return out;
}

nlohmann::json decision_to_json(const FirstStageDecision& dec) {
  return {{"assignment", dec.assignment}, {"appointments", dec.appointments}};
}

FirstStageDecision decision_from_json(const nlohmann::json& j) {
  FirstStageDecision dec;
  dec.assignment = j.at("assignment").get<std::vector<std::vector<int>>>();
  dec.appointments = dvec_from(j.at("appointments"));
  return dec;
}

nlohmann::json solve_result_to_json(const SolveResult& res) {
  return {{"status", to_string(res.status)},
          {"objective", res.objective},
          {"gap", res.gap},
          {"nodes", res.nodes},
          {"wallSeconds", res.wallSeconds}};
}

std::string scenarios_to_csv(const std::vector<Scenario>& scenarios) {
  if (scenarios.empty()) throw std::invalid_argument("scenarios_to_csv: empty list");
  const size_t N = scenarios.front().service.size();
  std::string out;
  for (size_t i = 1; i <= N; ++i) out += "d_" + std::to_string(i) + ",";
  for (size_t i = 0; i <= N; ++i)
    for (size_t ip = 0; ip <= N; ++ip) {
      out += "t_" + std::to_string(i) + "_" + std::to_string(ip);
      if (i != N || ip != N) out += ",";
    }
  out += "\n";
  for (const Scenario& sc : scenarios) {
    for (size_t i = 0; i < N; ++i) out += num(sc.service[i]) + ",";
    for (size_t i = 0; i <= N; ++i)
      for (size_t ip = 0; ip <= N; ++ip) {
        out += num(sc.travel[i][ip]);
        if (i != N || ip != N) out += ",";
      }
    out += "\n";
  }
  return out;
}

std::vector<Scenario> scenarios_from_csv(const std::string& text, int N) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("scenario csv: missing header");
  const size_t want = static_cast<size_t>(N) + static_cast<size_t>(N + 1) * static_cast<size_t>(N + 1);
  std::vector<Scenario> out;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != want)
      throw IoError("scenario csv: expected " + std::to_string(want) + " columns, got " +
                    std::to_string(cells.size()));
    Scenario sc;
    sc.service.resize(static_cast<size_t>(N));
    sc.travel.assign(static_cast<size_t>(N + 1), dvec(static_cast<size_t>(N + 1), 0.0));
    size_t k = 0;
    for (int i = 0; i < N; ++i) sc.service[static_cast<size_t>(i)] = std::stod(cells[k++]);
    for (int i = 0; i <= N; ++i)
      for (int ip = 0; ip <= N; ++ip)
        sc.travel[static_cast<size_t>(i)][static_cast<size_t>(ip)] = std::stod(cells[k++]);
    out.push_back(std::move(sc));
  }
  return out;
}

std::string report_to_csv(const EvaluationReport& rep) {
  const size_t N = rep.meanWaitByPosition.size();
  std::string head = "scenario_count,mean_cost,p20,p80,mean_wait,mean_idle,mean_overtime,mean_travel";
  std::string row = std::to_string(rep.scenarioCount) + "," + num(rep.meanCost) + "," +
                    num(rep.p20) + "," + num(rep.p80) + "," + num(rep.meanWaitMinutes) + "," +
                    num(rep.meanIdleMinutes) + "," + num(rep.meanOvertimeMinutes) + "," +
                    num(rep.meanTravelMinutes);
  for (size_t j = 0; j < N; ++j) {
    head += ",mean_wait_" + std::to_string(j + 1);
    row += "," + num(rep.meanWaitByPosition[j]);
  }
  for (size_t j = 0; j < N; ++j) {
    head += ",mean_idle_" + std::to_string(j + 1);
    row += "," + num(rep.meanIdleByPosition[j]);
  }
  for (size_t j = 0; j < rep.interArrival.size(); ++j) {
    head += ",interarrival_" + std::to_string(j + 1);
    row += "," + num(rep.interArrival[j]);
  }
  return head + "\n" + row + "\n";
}

std::string sweep_to_csv(const std::vector<SweepCell>& table) {
  std::string out = "epsilon,mean,p20,p80\n";
  for (const SweepCell& c : table)
    out += num(c.epsilon) + "," + num(c.mean) + "," + num(c.p20) + "," + num(c.p80) + "\n";
  return out;
}

std::string plot_rows_to_csv(const std::vector<PlotRow>& rows) {
  std::string out = "x,series,y,p20,p80\n";
  for (const PlotRow& r : rows)
    out += num(r.x) + "," + r.series + "," + num(r.y) + "," + num(r.p20) + "," +
           num(r.p80) + "\n";
  return out;
}

}  // namespace hras
