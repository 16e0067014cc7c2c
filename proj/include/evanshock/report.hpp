#pragma once

// Run configuration, deterministic run directories (content hash of the
// canonical config), and the profile/contour/certify/tables/rouche command
// implementations with CSV + JSON + SVG emission. Payload files carry no
// timestamps; wall-clock metadata is segregated into run_meta.json so
// re-runs with the same config are byte-identical.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evanshock/contour.hpp"
#include "evanshock/version.hpp"

namespace evanshock {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  bool limiting = false;
  double gamma = 5.0 / 3.0;
  std::vector<double> v_plus;  // one or more endstates (contour overlays, tables)
  std::string centering = "midpoint";
  double l_minus = 20.0, l_plus = 20.0;
  double profile_tol = 1e-10;
  double endpoint_tol = 1e-6;
  double rtol = 1e-8, atol = 1e-10;
  double radius = 10.0;
  int n_points = 256;
  double indent_radius = 1e-4;
  int max_refinements = 3;
  bool compare = false;
  std::string adjoint_scheme = "pointwise_eigenvector";
  std::string minus_scheme = "kato_continuation";
  double threshold = 0.5;
  double search_lo = 1e-6, search_hi = 1e-1, search_tol = 0.02;
  std::vector<double> gamma_list = {1.0, 1.5, 2.0, 2.5, 3.0};
  int grid_points = 401;
  std::string tables = "both";  // "1", "2", "both"
  std::string out_dir = "runs";
};

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_double_short(double v) {  // for labels and file names
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// key=value config files; '#' starts a comment, blank lines ignored.
inline std::vector<std::pair<std::string, std::string>> load_config_file(
    const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config file " + path + ": line " + std::to_string(lineno) +
                                  " is not key=value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

inline std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

inline bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: not a boolean: " + v);
}

// Keys mirror the long flag names of the command line.
inline void apply_config_kv(RunConfig& rc, const std::string& key, const std::string& value) {
  if (key == "limiting") rc.limiting = parse_bool(value);
  else if (key == "gamma") rc.gamma = std::stod(value);
  else if (key == "vplus") rc.v_plus = parse_double_list(value);
  else if (key == "centering") rc.centering = value;
  else if (key == "lminus") rc.l_minus = std::stod(value);
  else if (key == "lplus") rc.l_plus = std::stod(value);
  else if (key == "profile-tol") rc.profile_tol = std::stod(value);
  else if (key == "endpoint-tol") rc.endpoint_tol = std::stod(value);
  else if (key == "rtol") rc.rtol = std::stod(value);
  else if (key == "atol") rc.atol = std::stod(value);
  else if (key == "radius") rc.radius = std::stod(value);
  else if (key == "points") rc.n_points = std::stoi(value);
  else if (key == "indent") rc.indent_radius = std::stod(value);
  else if (key == "max-refine") rc.max_refinements = std::stoi(value);
  else if (key == "compare") rc.compare = parse_bool(value);
  else if (key == "adjoint-scheme") rc.adjoint_scheme = value;
  else if (key == "minus-scheme") rc.minus_scheme = value;
  else if (key == "threshold") rc.threshold = std::stod(value);
  else if (key == "search-lo") rc.search_lo = std::stod(value);
  else if (key == "search-hi") rc.search_hi = std::stod(value);
  else if (key == "search-tol") rc.search_tol = std::stod(value);
  else if (key == "gammas") rc.gamma_list = parse_double_list(value);
  else if (key == "grid") rc.grid_points = std::stoi(value);
  else if (key == "which") rc.tables = value;
  else if (key == "out") rc.out_dir = value;
  else throw std::invalid_argument("config: unknown key: " + key);
}

inline Centering centering_from_string(const std::string& s) {
  if (s == "midpoint") return Centering::midpoint;
  if (s == "paper_decay") return Centering::paper_decay;
  throw std::invalid_argument("unknown centering: " + s);
}

inline TrackScheme scheme_from_string(const std::string& s) {
  if (s == "kato_continuation") return TrackScheme::kato_continuation;
  if (s == "pointwise_eigenvector") return TrackScheme::pointwise_eigenvector;
  throw std::invalid_argument("unknown track scheme: " + s);
}

inline EvansConfig evans_config(const RunConfig& rc) {
  EvansConfig e;
  e.l_minus = rc.l_minus;
  e.l_plus = rc.l_plus;
  e.rtol = rc.rtol;
  e.atol = rc.atol;
  e.profile_tol = rc.profile_tol;
  e.endpoint_tol = rc.endpoint_tol;
  e.centering = centering_from_string(rc.centering);
  e.minus_scheme = scheme_from_string(rc.minus_scheme);
  e.adjoint_scheme = scheme_from_string(rc.adjoint_scheme);
  return e;
}

// Canonical key=value text; the content hash of this block names the run
// directory, so identical configs land in identical directories.
inline std::string canonical_config_text(const RunConfig& c) {
  std::ostringstream os;
  const auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt_double(v[i]);
    return s;
  };
  os << "adjoint_scheme=" << c.adjoint_scheme << "\n"
     << "atol=" << fmt_double(c.atol) << "\n"
     << "centering=" << c.centering << "\n"
     << "command=" << c.command << "\n"
     << "compare=" << (c.compare ? 1 : 0) << "\n"
     << "endpoint_tol=" << fmt_double(c.endpoint_tol) << "\n"
     << "gamma=" << fmt_double(c.gamma) << "\n"
     << "gamma_list=" << list(c.gamma_list) << "\n"
     << "grid_points=" << c.grid_points << "\n"
     << "indent_radius=" << fmt_double(c.indent_radius) << "\n"
     << "l_minus=" << fmt_double(c.l_minus) << "\n"
     << "l_plus=" << fmt_double(c.l_plus) << "\n"
     << "limiting=" << (c.limiting ? 1 : 0) << "\n"
     << "max_refinements=" << c.max_refinements << "\n"
     << "minus_scheme=" << c.minus_scheme << "\n"
     << "n_points=" << c.n_points << "\n"
     << "profile_tol=" << fmt_double(c.profile_tol) << "\n"
     << "radius=" << fmt_double(c.radius) << "\n"
     << "rtol=" << fmt_double(c.rtol) << "\n"
     << "schema_version=" << kSchemaVersion << "\n"
     << "search_hi=" << fmt_double(c.search_hi) << "\n"
     << "search_lo=" << fmt_double(c.search_lo) << "\n"
     << "search_tol=" << fmt_double(c.search_tol) << "\n"
     << "tables=" << c.tables << "\n"
     << "threshold=" << fmt_double(c.threshold) << "\n"
     << "v_plus=" << list(c.v_plus) << "\n";
  return os.str();
}

inline std::string fnv1a64_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

inline json config_json(const RunConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["artifact_version"] = kVersion;
  std::istringstream is(canonical_config_text(c));
  std::string line;
  json kv;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  j["config"] = kv;
  return j;
}

inline std::filesystem::path prepare_run_dir(const RunConfig& c) {
  const std::string hash = fnv1a64_hex(canonical_config_text(c));
  std::filesystem::path dir = std::filesystem::path(c.out_dir) / (c.command + "-" + hash);
  std::filesystem::create_directories(dir);
  std::ofstream meta(dir / "run_meta.json");
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char ts[64];
  std::strftime(ts, sizeof(ts), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  json m;
  m["timestamp_utc"] = ts;
  m["artifact_version"] = kVersion;
  meta << m.dump(2) << "\n";
  return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + p.string());
  os << text;
}

// ---------------------------------------------------------------------------
// SVG: minimal self-contained polyline plot, origin always in frame.

struct SvgCurve {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
  bool close = false;
};

inline std::string svg_polyline_plot(const std::vector<SvgCurve>& curves, int width = 800,
                                     int height = 620) {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // origin always included
  for (const auto& c : curves)
    for (const auto& [x, y] : c.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  const double padx = 0.06 * std::max(x1 - x0, 1e-12), pady = 0.06 * std::max(y1 - y0, 1e-12);
  x0 -= padx;
  x1 += padx;
  y0 -= pady;
  y1 += pady;
  const double sx = (width - 20) / (x1 - x0), sy = (height - 40) / (y1 - y0);
  const auto px = [&](double x) { return 10.0 + (x - x0) * sx; };
  const auto py = [&](double y) { return 10.0 + (y1 - y) * sy; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes through the origin
  os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x1) << "\" y2=\""
     << py(0) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(0) << "\" y2=\""
     << py(y1) << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  int li = 0;
  for (const auto& c : curves) {
    os << "<pol" << (c.close ? "ygon" : "yline") << " fill=\"none\" stroke=\"" << c.color
       << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : c.points) os << px(x) << "," << py(y) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << (width - 180) << "\" y=\"" << (20 + 16 * li) << "\" fill=\"" << c.color
       << "\" font-size=\"13\">" << c.label << "</text>\n";
    ++li;
  }
  // origin marker
  os << "<circle cx=\"" << px(0) << "\" cy=\"" << py(0)
     << "\" r=\"3\" fill=\"black\"/>\n<text x=\"" << px(0) + 5 << "\" y=\"" << py(0) - 5
     << "\" font-size=\"12\">0</text>\n";
  os << "</svg>\n";
  return os.str();
}

inline const char* curve_color(std::size_t i) {
  static const char* palette[] = {"#000000", "#c0392b", "#2980b9", "#27ae60",
                                  "#8e44ad", "#d35400", "#16a085", "#7f8c8d"};
  return palette[i % 8];
}

// ---------------------------------------------------------------------------
// Debug serialization of 3x3 complex matrices.

inline json mat3_json(const Mat3& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& e : r) row.push_back({e.real(), e.imag()});
    rows.push_back(row);
  }
  return rows;
}

// Evans samples as JSON with full config provenance (CSV is the tabular twin).
inline json evans_values_json(const std::vector<EvansValue>& values, const RunConfig& rc) {
  json j = config_json(rc);
  json arr = json::array();
  for (const auto& v : values)
    arr.push_back({{"re_lambda", v.lambda.real()},
                   {"im_lambda", v.lambda.imag()},
                   {"re_d", v.d.real()},
                   {"im_d", v.d.imag()},
                   {"defect", v.conservation_defect}});
  j["values"] = arr;
  return j;
}

// ---------------------------------------------------------------------------
// Versioned JSON record of a profile (External Interface of the shock model).

inline json profile_record(const ProfileSolution& prof, int n_samples) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "shock_profile";
  const auto& p = prof.params();
  j["params"] = {{"gamma", p.gamma}, {"v_plus", p.v_plus}, {"a", p.a},
                 {"mach", p.mach},   {"limiting", p.limiting}};
  j["centering"] = to_string(prof.centering());
  j["domain"] = {{"l_minus", prof.domain().l_minus}, {"l_plus", prof.domain().l_plus}};
  j["tol"] = prof.tol();
  json samples = json::array();
  const double lo = -prof.domain().l_minus, hi = prof.domain().l_plus;
  for (int i = 0; i < n_samples; ++i) {
    const double x = lo + (hi - lo) * i / (n_samples - 1);
    samples.push_back({x, prof(x)});
  }
  j["samples"] = samples;
  return j;
}

// ---------------------------------------------------------------------------
// Commands. Each writes its payload under the config-hash run directory and
// returns a process exit code.

inline int cmd_profile(const RunConfig& rc, std::ostream& log = std::cout) {
  const auto dir = prepare_run_dir(rc);
  const Centering cent = centering_from_string(rc.centering);
  const ProfileDomain dom{rc.l_minus, rc.l_plus};
  ProfileSolution prof =
      rc.limiting
          ? solve_limiting_profile(dom, rc.profile_tol, cent, rc.endpoint_tol)
          : solve_profile(ShockParams::make(rc.gamma, rc.v_plus.at(0)), cent, dom, rc.profile_tol,
                          rc.endpoint_tol);

  std::ostringstream csv;
  csv << "x,v_hat\n";
  for (int i = 0; i < rc.grid_points; ++i) {
    const double x = -rc.l_minus + (rc.l_plus + rc.l_minus) * i / (rc.grid_points - 1);
    csv << fmt_double(x) << "," << fmt_double(prof(x)) << "\n";
  }
  write_text(dir / "profile.csv", csv.str());

  json j = config_json(rc);
  j["profile"] = profile_record(prof, rc.grid_points);
  write_text(dir / "profile.json", j.dump(2) + "\n");
  log << "profile: wrote " << (dir / "profile.csv").string() << "\n";
  return 0;
}

inline int cmd_contour(const RunConfig& rc, std::ostream& log = std::cout) {
  const auto dir = prepare_run_dir(rc);
  const Contour contour = build_contour(rc.radius, rc.n_points, rc.indent_radius);
  const EvansConfig ecfg = evans_config(rc);

  struct Curve {
    std::string tag;
    std::vector<EvansValue> values;
  };
  std::vector<Curve> curves;
  for (double vp : rc.v_plus) {
    const EigenSystem sys = EigenSystem::finite(ShockParams::make(rc.gamma, vp));
    curves.push_back({"vplus_" + fmt_double_short(vp), evans_on_contour(contour.samples, sys, ecfg)});
  }
  if (rc.limiting || rc.v_plus.empty())
    curves.push_back({"limiting", evans_on_contour(contour.samples, EigenSystem::limit(), ecfg)});

  json summary = config_json(rc);
  summary["curves"] = json::array();
  std::vector<SvgCurve> svg;
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const auto& c = curves[ci];
    std::ostringstream csv;
    csv << "re_lambda,im_lambda,re_d,im_d,defect\n";
    SvgCurve sc{c.tag, curve_color(ci), {}, true};
    double mn = std::numeric_limits<double>::infinity(), mxdef = 0.0;
    std::vector<cplx> ds;
    for (std::size_t k = 0; k < c.values.size(); ++k) {
      const auto& v = c.values[k];
      csv << fmt_double(v.lambda.real()) << "," << fmt_double(v.lambda.imag()) << ","
          << fmt_double(v.d.real()) << "," << fmt_double(v.d.imag()) << ","
          << fmt_double(v.conservation_defect) << "\n";
      sc.points.push_back({v.d.real(), v.d.imag()});
      ds.push_back(v.d);
      if (!contour.on_indent[k]) mn = std::min(mn, std::abs(v.d));
      mxdef = std::max(mxdef, v.conservation_defect);
    }
    write_text(dir / ("evans_" + c.tag + ".csv"), csv.str());
    write_text(dir / ("evans_" + c.tag + ".json"), evans_values_json(c.values, rc).dump(2) + "\n");
    const auto w = winding_number(ds, true);
    summary["curves"].push_back({{"tag", c.tag},
                                 {"winding", w.winding},
                                 {"certified", w.certified},
                                 {"max_phase_increment", w.max_increment},
                                 {"min_modulus_excl_indent", mn},
                                 {"max_conservation_defect", mxdef}});
    svg.push_back(std::move(sc));
  }
  write_text(dir / "contour.svg", svg_polyline_plot(svg));
  write_text(dir / "contour.json", summary.dump(2) + "\n");
  log << "contour: wrote " << (dir / "contour.svg").string() << "\n";
  return 0;
}

inline json report_json(const StabilityReport& rep) {
  json j;
  j["limiting"] = rep.limiting;
  if (!rep.limiting) {
    j["gamma"] = rep.gamma;
    j["v_plus"] = rep.v_plus;
    j["mach"] = rep.mach;
  }
  j["radius"] = rep.radius;
  j["n_points_final"] = rep.n_points_final;
  j["winding_number"] = rep.winding;
  j["certified"] = rep.certified;
  j["min_modulus"] = rep.min_modulus;
  if (rep.max_rel_error) j["max_rel_error"] = *rep.max_rel_error;
  if (rep.max_abs_error) j["max_abs_error"] = *rep.max_abs_error;
  if (rep.d0_winding) j["d0_winding"] = *rep.d0_winding;
  j["verdict"] = to_string(rep.verdict);
  j["refinement_trace"] = json::array();
  for (const auto& t : rep.trace)
    j["refinement_trace"].push_back({{"n_points", t.n_points},
                                     {"winding", t.winding},
                                     {"max_phase_increment", t.max_increment},
                                     {"certified", t.certified}});
  j["warnings"] = rep.warnings;
  if (!rep.diagnostic.empty()) j["diagnostic"] = rep.diagnostic;
  return j;
}

inline CertifyConfig certify_config(const RunConfig& rc) {
  CertifyConfig c;
  c.limiting = rc.limiting;
  c.gamma = rc.gamma;
  c.v_plus = rc.v_plus.empty() ? 1e-3 : rc.v_plus.front();
  c.radius = rc.radius;
  c.n_points = rc.n_points;
  c.indent_radius = rc.indent_radius;
  c.max_refinements = rc.max_refinements;
  c.compare = rc.compare;
  c.evans = evans_config(rc);
  return c;
}

inline int cmd_certify(const RunConfig& rc, std::ostream& log = std::cout) {
  const auto dir = prepare_run_dir(rc);
  const StabilityReport rep = certify_stability(certify_config(rc));
  json j = config_json(rc);
  j["report"] = report_json(rep);
  write_text(dir / "report.json", j.dump(2) + "\n");
  log << "certify: verdict " << to_string(rep.verdict) << ", winding " << rep.winding
      << ", min|D| " << rep.min_modulus << " -> " << (dir / "report.json").string() << "\n";
  return rep.verdict == Verdict::inconclusive ? 2 : 0;
}

inline int cmd_tables(const RunConfig& rc, std::ostream& log = std::cout) {
  const auto dir = prepare_run_dir(rc);
  const EvansConfig ecfg = evans_config(rc);
  const bool do1 = rc.tables == "1" || rc.tables == "both";
  const bool do2 = rc.tables == "2" || rc.tables == "both";

  if (do1) {
    const Contour contour = build_contour(rc.radius, rc.n_points, rc.indent_radius);
    std::ostringstream csv;
    csv << "gamma,v_plus_star,rel_error,mach,status\n";
    for (double g : rc.gamma_list) {
      try {
        const auto r = rouche_bound_search(g, rc.threshold, contour, rc.search_lo, rc.search_hi,
                                           rc.search_tol, ecfg);
        csv << fmt_double(g) << "," << fmt_double(r.v_plus_star) << ","
            << fmt_double(r.rel_at_star) << "," << fmt_double(r.mach) << ",ok\n";
        log << "table1: gamma=" << g << " v+*=" << r.v_plus_star << " M=" << r.mach << "\n";
      } catch (const std::exception& e) {
        csv << fmt_double(g) << ",,,,failed\n";
        log << "table1: gamma=" << g << " failed: " << e.what() << "\n";
      }
    }
    write_text(dir / "table1.csv", csv.str());
  }
  if (do2) {
    const Contour contour = build_contour(rc.radius, rc.n_points, rc.indent_radius);
    const auto d0 = evans_on_contour(contour.samples, EigenSystem::limit(), ecfg);
    std::ostringstream csv;
    csv << "v_plus,mach,rel_diff,abs_diff,status\n";
    for (double vp : rc.v_plus) {
      try {
        const auto cmp = compare_to_limit(rc.gamma, vp, contour, ecfg, d0);
        csv << fmt_double(vp) << "," << fmt_double(ShockParams::make(rc.gamma, vp).mach) << ","
            << fmt_double(cmp.max_rel) << "," << fmt_double(cmp.max_abs) << ",ok\n";
        log << "table2: v+=" << vp << " rel=" << cmp.max_rel << " abs=" << cmp.max_abs << "\n";
      } catch (const std::exception& e) {
        csv << fmt_double(vp) << ",,,,failed\n";
        log << "table2: v+=" << vp << " failed: " << e.what() << "\n";
      }
    }
    write_text(dir / "table2.csv", csv.str());
  }
  json j = config_json(rc);
  write_text(dir / "tables.json", j.dump(2) + "\n");
  return 0;
}

inline int cmd_rouche(const RunConfig& rc, std::ostream& log = std::cout) {
  const auto dir = prepare_run_dir(rc);
  const Contour contour = build_contour(rc.radius, rc.n_points, rc.indent_radius);
  const auto r = rouche_bound_search(rc.gamma, rc.threshold, contour, rc.search_lo, rc.search_hi,
                                     rc.search_tol, evans_config(rc));
  json j = config_json(rc);
  j["rouche"] = {{"gamma", rc.gamma},          {"threshold", rc.threshold},
                 {"v_plus_star", r.v_plus_star}, {"mach", r.mach},
                 {"rel_at_star", r.rel_at_star}, {"evaluations", r.evaluations}};
  write_text(dir / "rouche.json", j.dump(2) + "\n");
  log << "rouche: gamma=" << rc.gamma << " v+*=" << r.v_plus_star << " M=" << r.mach
      << " rel=" << r.rel_at_star << "\n";
  return 0;
}

}  // namespace evanshock
