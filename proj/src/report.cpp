#include "cftherm/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cftherm {

CheckReport make_report(std::string name,
                        std::map<std::string, std::string> inputs,
                        std::complex<double> value,
                        std::optional<std::complex<double>> oracle, double delta,
                        double tolerance, std::int64_t runtime_ms) {
  CheckReport r;
  r.name = std::move(name);
  r.inputs = std::move(inputs);
  r.value = value;
  r.oracle = oracle;
  r.delta = delta;
  r.tolerance = tolerance;
  r.pass = delta <= tolerance;
  r.runtime_ms = runtime_ms;
  return r;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

std::string emit_json(const std::vector<CheckReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json o;
    o["name"] = r.name;
    o["inputs"] = r.inputs;
    o["value_re"] = r.value.real();
    o["value_im"] = r.value.imag();
    if (r.oracle) {
      o["oracle_re"] = r.oracle->real();
      o["oracle_im"] = r.oracle->imag();
    }
    o["delta"] = r.delta;
    o["tolerance"] = r.tolerance;
    o["pass"] = r.pass;
    o["runtime_ms"] = r.runtime_ms;
    arr.push_back(o);
  }
  return arr.dump(2);
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string emit_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "name,value_re,value_im,oracle_re,oracle_im,delta,tolerance,pass\n";
  for (const auto& r : reports) {
    out << r.name << "," << num(r.value.real()) << "," << num(r.value.imag()) << ",";
    if (r.oracle)
      out << num(r.oracle->real()) << "," << num(r.oracle->imag());
    else
      out << ",";
    out << "," << num(r.delta) << "," << num(r.tolerance) << ","
        << (r.pass ? "true" : "false") << "\n";
  }
  return out.str();
}

std::vector<CheckReport> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty input");
  std::vector<CheckReport> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 8) throw std::runtime_error("parse_csv: bad row: " + line);
    CheckReport r;
    r.name = fields[0];
    r.value = {std::stod(fields[1]), std::stod(fields[2])};
    if (!fields[3].empty())
      r.oracle = std::complex<double>(std::stod(fields[3]), std::stod(fields[4]));
    r.delta = std::stod(fields[5]);
    r.tolerance = std::stod(fields[6]);
    r.pass = fields[7] == "true";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cftherm
