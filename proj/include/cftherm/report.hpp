#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cftherm {

// One machine-readable check outcome; pass <=> delta <= tolerance.
struct CheckReport {
  std::string name;
  std::map<std::string, std::string> inputs;
  std::complex<double> value;
  std::optional<std::complex<double>> oracle;
  double delta = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::int64_t runtime_ms = 0;
};

CheckReport make_report(std::string name,
                        std::map<std::string, std::string> inputs,
                        std::complex<double> value,
                        std::optional<std::complex<double>> oracle, double delta,
                        double tolerance, std::int64_t runtime_ms = 0);

bool all_pass(const std::vector<CheckReport>& reports);

// JSON array of report objects (deterministic apart from runtime_ms).
std::string emit_json(const std::vector<CheckReport>& reports);

// Fixed header: name,value_re,value_im,oracle_re,oracle_im,delta,tolerance,pass
std::string emit_csv(const std::vector<CheckReport>& reports);

// Inverse of emit_csv for the numeric fields.
std::vector<CheckReport> parse_csv(const std::string& text);

}  // namespace cftherm
