#include "nctorus/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nctorus/errors.hpp"

namespace nct {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable& CsvTable::cell(double x) {
  rows_.back().push_back(format_number(x));
  return *this;
}

CsvTable& CsvTable::cell(std::int64_t x) {
  rows_.back().push_back(std::to_string(x));
  return *this;
}

CsvTable& CsvTable::cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    rows_.back().push_back(s);
    return *this;
  }
  std::string quoted = "\"";
  for (char c : s) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  rows_.back().push_back(quoted + "\"");
  return *this;
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << cells[i];
    }
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) {
    line(r);
  }
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw ExperimentError("cannot write " + path.string());
  }
  f << str();
}

json to_json(const NCPoly& x) {
  json terms = json::array();
  for (const auto& [idx, c] : x.coeffs()) {
    terms.push_back({idx.first, idx.second, c.real(), c.imag()});
  }
  return {{"alpha", x.alpha()}, {"terms", std::move(terms)}};
}

NCPoly poly_from_json(const json& j) {
  NCPoly x(j.at("alpha").get<double>());
  for (const auto& t : j.at("terms")) {
    x.add(t.at(0).get<std::int64_t>(), t.at(1).get<std::int64_t>(),
          {t.at(2).get<double>(), t.at(3).get<double>()});
  }
  return x.prune();
}

json to_json(const ErgodicityReport& r) {
  json per_n = json::object();
  for (const auto& [n, m] : r.per_n) {
    json gaps = json::array();
    for (const auto& [K, gap] : m.gaps) {
      gaps.push_back({{"K", K}, {"gap", gap}});
    }
    json entry = {{"gap", m.gap}, {"bandwidth", m.bandwidth}, {"gaps", std::move(gaps)},
                  {"verdict", to_string(m.verdict)}};
    if (m.near_kernel) {
      entry["near_kernel_terms"] = m.near_kernel->size();
      entry["modulus_flatness"] = *m.modulus_flatness;
      entry["tail_norm"] = *m.tail_norm;
    }
    per_n[std::to_string(n)] = std::move(entry);
  }
  return {{"verdict", to_string(r.verdict)}, {"heuristic", r.heuristic}, {"per_n", std::move(per_n)}};
}

json to_json(const LiouvilleAngle& L) {
  json conv = json::array();
  for (const auto& [p, q] : L.convergents) {
    conv.push_back({p, q});
  }
  json ideal = json::array(), realized = json::array();
  for (std::size_t k = 0; k < L.convergents.size(); ++k) {
    ideal.push_back(static_cast<double>(L.ideal_distance[k]));
    realized.push_back(L.realized_distance[k]);
  }
  return {{"partial_quotients", L.partial_quotients},
          {"convergents", std::move(conv)},
          {"theta", L.theta},
          {"next_denominator", static_cast<double>(L.next_denominator)},
          {"ideal_distance", std::move(ideal)},
          {"realized_distance", std::move(realized)},
          {"liouville_score", L.liouville_score}};
}

json construction_json(const LiouvilleAngle& L, const RoughSolution& g, double nu,
                       const FurstenbergMap& fm) {
  return {{"angle", to_json(L)},
          {"freqs", g.freqs},
          {"amps", g.amps},
          {"nu", nu},
          {"tail_bound", fm.tail_bound}};
}

CsvTable cesaro_csv(const CesaroResult& r) {
  CsvTable t({"N", "lambda_re", "lambda_im", "lower_norm", "upper_norm", "gns_norm"});
  for (const auto& cp : r.checkpoints) {
    t.row().cell(cp.n).cell(r.lambda.real()).cell(r.lambda.imag())
        .cell(cp.bounds.lower).cell(cp.bounds.upper).cell(cp.gns_norm);
  }
  return t;
}

CsvTable correlation_csv(const CorrSeq& c) {
  CsvTable t({"n", "re", "im"});
  for (std::size_t n = 0; n < c.values.size(); ++n) {
    t.row().cell(static_cast<std::int64_t>(n)).cell(c.values[n].real()).cell(c.values[n].imag());
  }
  return t;
}

CsvTable density_csv(const std::vector<double>& density) {
  CsvTable t({"angle", "density"});
  const auto g = static_cast<Eigen::Index>(density.size());
  for (Eigen::Index j = 0; j < g; ++j) {
    t.row().cell(GridFn::node(j, g)).cell(density[static_cast<std::size_t>(j)]);
  }
  return t;
}

CsvTable birkhoff_csv(const BirkhoffResult& r) {
  CsvTable t({"N", "re", "im"});
  for (const auto& [n, v] : r.checkpoints) {
    t.row().cell(n).cell(v.real()).cell(v.imag());
  }
  return t;
}

CsvTable orbit_csv(double theta, const CircleFunction& h, TorusPoint start, std::int64_t steps) {
  CsvTable t({"k", "s_k", "t_k"});
  TorusPoint p = start;
  for (std::int64_t k = 0; k < steps; ++k) {
    t.row().cell(k).cell(p.s + p.s_lo).cell(p.t + p.t_lo);
    p = anzai_step(theta, h, p);
  }
  return t;
}

}  // namespace nct
