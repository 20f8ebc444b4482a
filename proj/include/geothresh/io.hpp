#ifndef GEOTHRESH_IO_HPP
#define GEOTHRESH_IO_HPP

// JSON for domains, densities and experiment configs; CSV for point sets and
// experiment records. Numbers are written with 17 significant digits.

#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "geothresh/density.hpp"
#include "geothresh/errors.hpp"
#include "geothresh/experiments.hpp"
#include "geothresh/geometry.hpp"
#include "json.hpp"

namespace geothresh {

using Json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw InfeasibleError(what + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key)) throw InfeasibleError("unknown key '" + key + "' in " + what);
}

template <class T>
T required(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InfeasibleError(what + " is missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InfeasibleError(what + ": bad value for '" + key + "': " + e.what());
  }
}

}  // namespace detail

inline Domain domain_from_json(const Json& j) {
  const auto kind = detail::required<std::string>(j, "kind", "domain");
  try {
    if (kind == "disk") {
      detail::reject_unknown_keys(j, {"kind", "radius"}, "domain");
      return Domain::disk(detail::required<double>(j, "radius", "domain"));
    }
    if (kind == "ball3") {
      detail::reject_unknown_keys(j, {"kind", "radius"}, "domain");
      return Domain::ball3(detail::required<double>(j, "radius", "domain"));
    }
    if (kind == "polygon") {
      detail::reject_unknown_keys(j, {"kind", "vertices"}, "domain");
      const auto v = detail::required<std::vector<std::vector<double>>>(j, "vertices", "domain");
      std::vector<Vec2> verts;
      for (const auto& p : v) {
        if (p.size() != 2) throw InfeasibleError("polygon vertices must be [x, y] pairs");
        verts.push_back({p[0], p[1]});
      }
      return Domain::polygon(std::move(verts));
    }
  } catch (const std::invalid_argument& e) {
    throw InfeasibleError(e.what());
  }
  throw InfeasibleError("unknown domain kind '" + kind + "'");
}

inline Json to_json(const Domain& a) {
  switch (a.kind()) {
    case DomainKind::disk: return {{"kind", "disk"}, {"radius", a.radius()}};
    case DomainKind::ball3: return {{"kind", "ball3"}, {"radius", a.radius()}};
    case DomainKind::polygon: {
      Json v = Json::array();
      for (const auto& p : a.vertices()) v.push_back({p[0], p[1]});
      return {{"kind", "polygon"}, {"vertices", v}};
    }
  }
  return {};
}

/// {"kind":"uniform"} | {"kind":"radial","c0":..,"c2":..} |
/// {"kind":"radial","shape":s} (c2 = s c0, c0 normalising).
inline Density density_from_json(const Json& j, const Domain& a) {
  const auto kind = detail::required<std::string>(j, "kind", "density");
  try {
    if (kind == "uniform") {
      detail::reject_unknown_keys(j, {"kind"}, "density");
      return Density::uniform(a);
    }
    if (kind == "radial") {
      detail::reject_unknown_keys(j, {"kind", "c0", "c2", "shape"}, "density");
      if (j.contains("shape")) {
        if (j.contains("c0") || j.contains("c2"))
          throw InfeasibleError("give either shape or c0/c2, not both");
        return Density::radial_normalised(a, detail::required<double>(j, "shape", "density"));
      }
      return Density::radial(a, detail::required<double>(j, "c0", "density"),
                             detail::required<double>(j, "c2", "density"));
    }
  } catch (const InfeasibleError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InfeasibleError(e.what());
  }
  throw InfeasibleError("unknown density kind '" + kind + "'");
}

inline Json to_json(const Density& f) {
  if (f.kind() == DensityKind::uniform) return {{"kind", "uniform"}};
  return {{"kind", "radial"}, {"c0", f.c0()}, {"c2", f.c2()}};
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InfeasibleError("malformed JSON in " + what + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InfeasibleError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string to_string(Model m) { return m == Model::poisson ? "poisson" : "binomial"; }
inline std::string to_string(Statistic s) {
  return s == Statistic::L ? "L" : s == Statistic::M ? "M" : "both";
}
inline std::string to_string(Centring c) {
  return c == Centring::explicit_uniform ? "explicit-uniform" : "empirical-median";
}
inline std::string to_string(XiRadius x) { return x == XiRadius::solved ? "solved" : "explicit"; }
inline std::string to_string(Correction c) { return c == Correction::standard ? "standard" : "refined"; }

inline Model parse_model(const std::string& s) {
  if (s == "poisson") return Model::poisson;
  if (s == "binomial") return Model::binomial;
  throw InfeasibleError("model must be poisson or binomial, got '" + s + "'");
}

inline ExperimentConfig config_from_json(const Json& j) {
  detail::reject_unknown_keys(j,
                              {"domain", "density", "model", "n", "k", "replications", "seed", "statistic",
                               "centring", "record_xi_at", "xi_radius", "correction", "compare_limit",
                               "threads"},
                              "config");
  ExperimentConfig c;
  if (!j.contains("domain")) throw InfeasibleError("config is missing 'domain'");
  c.domain = domain_from_json(j.at("domain"));
  c.density = j.contains("density") ? density_from_json(j.at("density"), c.domain) : Density::uniform(c.domain);
  auto str = [&](const char* key, const std::string& def) {
    return j.contains(key) ? detail::required<std::string>(j, key, "config") : def;
  };
  c.model = parse_model(str("model", "poisson"));
  c.n = detail::required<double>(j, "n", "config");
  c.k = j.contains("k") ? detail::required<int>(j, "k", "config") : 1;
  c.replications = detail::required<std::size_t>(j, "replications", "config");
  c.seed = j.contains("seed") ? detail::required<std::uint64_t>(j, "seed", "config") : 0;
  const auto stat = str("statistic", "L");
  if (stat == "L") c.statistic = Statistic::L;
  else if (stat == "M") c.statistic = Statistic::M;
  else if (stat == "both") c.statistic = Statistic::both;
  else throw InfeasibleError("statistic must be L, M or both");
  const auto cent = str("centring", c.density.kind() == DensityKind::uniform ? "explicit-uniform" : "empirical-median");
  if (cent == "explicit-uniform") c.centring = Centring::explicit_uniform;
  else if (cent == "empirical-median") c.centring = Centring::empirical_median;
  else throw InfeasibleError("centring must be explicit-uniform or empirical-median");
  if (j.contains("record_xi_at") && !j.at("record_xi_at").is_null())
    c.record_xi_at = detail::required<double>(j, "record_xi_at", "config");
  const auto xr = str("xi_radius", "solved");
  if (xr == "solved") c.xi_radius = XiRadius::solved;
  else if (xr == "explicit") c.xi_radius = XiRadius::explicit_centring;
  else throw InfeasibleError("xi_radius must be solved or explicit");
  const auto corr = str("correction", "standard");
  if (corr == "standard") c.correction = Correction::standard;
  else if (corr == "refined") c.correction = Correction::refined;
  else throw InfeasibleError("correction must be standard or refined");
  c.compare_limit = j.contains("compare_limit") ? detail::required<bool>(j, "compare_limit", "config") : true;
  c.threads = j.contains("threads") ? detail::required<unsigned>(j, "threads", "config") : default_threads();
  return c;
}

inline Json to_json(const ExperimentConfig& c) {
  Json j;
  j["domain"] = to_json(c.domain);
  j["density"] = to_json(c.density);
  j["model"] = to_string(c.model);
  j["n"] = c.n;
  j["k"] = c.k;
  j["replications"] = c.replications;
  j["seed"] = c.seed;
  j["statistic"] = to_string(c.statistic);
  j["centring"] = to_string(c.centring);
  j["record_xi_at"] = c.record_xi_at ? Json(*c.record_xi_at) : Json(nullptr);
  j["xi_radius"] = to_string(c.xi_radius);
  j["correction"] = to_string(c.correction);
  j["compare_limit"] = c.compare_limit;
  return j;
}

/// Shortest-round-trip-safe formatting with 17 significant digits.
inline std::string format_number(double x) {
  std::ostringstream ss;
  ss << std::setprecision(17) << x;
  return ss.str();
}

inline void write_points_csv(std::ostream& out, const std::vector<Point>& pts, int dim) {
  out << (dim == 3 ? "x,y,z\n" : "x,y\n");
  for (const auto& p : pts) {
    out << format_number(p[0]) << ',' << format_number(p[1]);
    if (dim == 3) out << ',' << format_number(p[2]);
    out << '\n';
  }
}

struct PointsCsv {
  std::vector<Point> points;
  int dimension = 2;
};

inline PointsCsv read_points_csv(std::istream& in) {
  PointsCsv out;
  std::string line;
  if (!std::getline(in, line)) throw InfeasibleError("point CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line == "x,y") out.dimension = 2;
  else if (line == "x,y,z") out.dimension = 3;
  else throw InfeasibleError("point CSV header must be x,y or x,y,z");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Point p{0.0, 0.0, 0.0};
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= out.dimension) throw InfeasibleError("too many columns on row " + std::to_string(row));
      try {
        std::size_t used = 0;
        p[col] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw InfeasibleError("bad number '" + cell + "' on row " + std::to_string(row));
      }
      ++col;
    }
    if (col != out.dimension) throw InfeasibleError("too few columns on row " + std::to_string(row));
    out.points.push_back(p);
  }
  return out;
}

inline void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& recs) {
  out << "rep_id,n_realised,L,M,coincide,xi,transformed\n";
  for (const auto& r : recs) {
    out << r.rep_id << ',' << r.n_realised << ',';
    if (r.L) out << format_number(*r.L);
    out << ',';
    if (r.M) out << format_number(*r.M);
    out << ',';
    if (r.coincide) out << (*r.coincide ? "true" : "false");
    out << ',';
    if (r.xi) out << *r.xi;
    out << ',' << format_number(r.transformed) << '\n';
  }
}

inline Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const ExperimentSummary& s, const ExperimentConfig& c) {
  Json j;
  j["ks_L"] = optional_json(s.ks_L);
  j["ks_M"] = optional_json(s.ks_M);
  j["tv_estimate"] = optional_json(s.tv_estimate);
  j["coincidence_rate"] = optional_json(s.coincidence_rate);
  Json med;
  med["L"] = optional_json(s.median_L);
  med["M"] = optional_json(s.median_M);
  med["note"] = c.centring == Centring::empirical_median
                    ? "empirical lower median of the replications stands in for the distributional median"
                    : "not used (explicit centring)";
  j["median"] = med;
  j["config_echo"] = to_json(c);
  j["seed"] = c.seed;
  j["regime"] = to_string(s.spec.regime);
  Json lim;
  lim["family"] = to_string(s.spec.family);
  lim["compared"] = c.compare_limit && s.spec.law_available;
  lim["law_available"] = s.spec.law_available;
  lim["sigma_A"] = s.spec.sigma_A;
  if (s.spec.family == LimitFamily::nonuniform_gumbel) lim["alpha"] = s.spec.alpha;
  j["limit"] = lim;
  Json xi;
  xi["radius"] = optional_json(s.xi_radius);
  xi["expected"] = optional_json(s.xi_expected);
  xi["mean"] = optional_json(s.xi_mean);
  j["xi"] = xi;
  Json diag;
  diag["iqr_L"] = optional_json(s.iqr_L);
  diag["iqr_M"] = optional_json(s.iqr_M);
  j["diagnostics"] = diag;
  return j;
}

}  // namespace geothresh

#endif  // GEOTHRESH_IO_HPP
