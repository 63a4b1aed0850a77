#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nctorus/anzai.hpp"
#include "nctorus/classical.hpp"
#include "nctorus/cohomology.hpp"
#include "nctorus/counterexample.hpp"
#include "nctorus/gns.hpp"
#include "nctorus/nc_poly.hpp"

namespace nct {

using json = nlohmann::ordered_json;

/// 17 significant digits: enough to round-trip any double.
std::string format_number(double x);

/// In-memory CSV with a header row; every numeric cell is full precision.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& row() {
    rows_.emplace_back();
    return *this;
  }
  CsvTable& cell(double x);
  CsvTable& cell(std::int64_t x);
  CsvTable& cell(int x) { return cell(static_cast<std::int64_t>(x)); }
  CsvTable& cell(const std::string& s);
  CsvTable& cell(const char* s) { return cell(std::string(s)); }

  std::size_t size() const { return rows_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// {alpha, terms: [[m, n, re, im], ...]} in (m, n) order.
json to_json(const NCPoly& x);
NCPoly poly_from_json(const json& j);

json to_json(const ErgodicityReport& r);
json to_json(const LiouvilleAngle& L);
/// Reproducible description of a truncated construction.
json construction_json(const LiouvilleAngle& L, const RoughSolution& g, double nu,
                       const FurstenbergMap& fm);

/// Rows (N, lambda_re, lambda_im, lower_norm, upper_norm, gns_norm).
CsvTable cesaro_csv(const CesaroResult& r);
/// Rows (n, re, im).
CsvTable correlation_csv(const CorrSeq& c);
/// Rows (angle, density).
CsvTable density_csv(const std::vector<double>& density);
/// Rows (N, re, im).
CsvTable birkhoff_csv(const BirkhoffResult& r);
/// Rows (k, s_k, t_k) of the first `steps` orbit points.
CsvTable orbit_csv(double theta, const CircleFunction& h, TorusPoint start, std::int64_t steps);

}  // namespace nct
