#pragma once

// Command-line front end. run() takes the arguments after the program name,
// writes canonical JSON to `out` and structured errors to `err`.
//
// Exit codes: 0 success, 1 a verify check failed, 2 precondition / schema /
// usage error, 3 capability limit.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdof/acceptance.hpp"
#include "gdof/errors.hpp"
#include "gdof/extremal.hpp"
#include "gdof/io.hpp"
#include "gdof/network.hpp"
#include "gdof/polyhedra.hpp"
#include "gdof/power.hpp"
#include "gdof/regions.hpp"

namespace gdof::cli {

namespace detail {

inline Json read_json_file(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw SchemaError("cannot open '" + path + "'");
    in = &file;
  }
  Json j = Json::parse(*in, nullptr, false);
  if (j.is_discarded()) throw SchemaError("'" + path + "' is not valid JSON");
  return j;
}

inline NetworkSpec read_network(const std::string& path) { return network_from_json(read_json_file(path)); }

inline void emit(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

inline Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

inline Json sir_json(const SirCheck& sir) {
  Json j{{"ok", sir.ok}};
  if (sir.witness)
    j["witness"] = Json{{"i", sir.witness->i + 1}, {"j", sir.witness->j + 1}, {"l", sir.witness->l + 1}};
  else
    j["witness"] = nullptr;
  return j;
}

inline std::string decimal(const Rational& r) {
  std::ostringstream s;
  s << std::setprecision(10) << r.get_d();
  return s.str();
}

/// Polygon outline of a 2-D system, counterclockwise from the lowest-leftmost point.
inline std::vector<std::vector<Rational>> polygon_order(std::vector<std::vector<Rational>> pts) {
  if (pts.size() < 3) return pts;
  std::sort(pts.begin(), pts.end());
  auto cross = [](const std::vector<Rational>& o, const std::vector<Rational>& a,
                  const std::vector<Rational>& b) {
    return Rational((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]));
  };
  std::vector<std::vector<Rational>> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const size_t base = hull.size();
    for (const auto& p : pts) {
      while (hull.size() >= base + 2 && sgn(cross(hull[hull.size() - 2], hull.back(), p)) <= 0)
        hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  return hull;
}

/// SVG of the slice through the first two variables, others fixed at 0.
inline std::string render_svg(const LinSystem& sys) {
  if (sys.dim() < 2) throw PreconditionError("--svg needs a system with at least two variables");
  LinSystem slice;
  slice.vars = {sys.vars[0], sys.vars[1]};
  slice.nonneg = {sys.nonneg[0], sys.nonneg[1]};
  for (const auto& r : sys.rows) slice.add_row({r.c[0], r.c[1]}, r.b);
  auto poly = polygon_order(vertices(slice));

  Rational hi = 0;
  for (const auto& p : poly) hi = rmax(hi, rmax(p[0], p[1]));
  if (sgn(hi) == 0) hi = 1;
  const double size = 400, pad = 40, scale = size / hi.get_d();
  auto X = [&](const Rational& x) { return pad + x.get_d() * scale; };
  auto Y = [&](const Rational& y) { return pad + size - y.get_d() * scale; };

  std::ostringstream s;
  s << std::fixed << std::setprecision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\""
    << size + 2 * pad << "\">\n";
  s << "<line x1=\"" << pad << "\" y1=\"" << pad + size << "\" x2=\"" << pad + size << "\" y2=\""
    << pad + size << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << pad + size
    << "\" stroke=\"black\"/>\n";
  if (!poly.empty()) {
    s << "<polygon fill=\"#9ecae1\" stroke=\"#08519c\" points=\"";
    for (size_t k = 0; k < poly.size(); ++k)
      s << (k ? " " : "") << X(poly[k][0]) << "," << Y(poly[k][1]);
    s << "\"/>\n";
    for (const auto& p : poly)
      s << "<text x=\"" << X(p[0]) + 4 << "\" y=\"" << Y(p[1]) - 4 << "\" font-size=\"11\">("
        << to_string(p[0]) << ", " << to_string(p[1]) << ")</text>\n";
  }
  s << "<text x=\"" << pad + size / 2 << "\" y=\"" << size + 2 * pad - 8 << "\">" << sys.vars[0]
    << "</text>\n";
  s << "<text x=\"4\" y=\"" << pad - 12 << "\">" << sys.vars[1] << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << text;
}

inline Json system_with_vertices(const LinSystem& sys) {
  Json j = to_json(sys);
  if (sys.dim() <= vertex_dim_limit()) j["vertices"] = points_to_json(vertices(sys));
  return j;
}

inline std::vector<NetworkSpec> read_pool(const std::vector<std::string>& paths) {
  std::vector<NetworkSpec> pool;
  for (const auto& p : paths) {
    Json j = read_json_file(p);
    if (j.is_array()) {
      for (const auto& x : j) pool.push_back(network_from_json(x));
    } else {
      pool.push_back(network_from_json(j));
    }
  }
  return pool;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact GDoF regions of multi-cell downlink networks", "gdof"};
  app.require_subcommand(1);

  std::string input;
  auto* classify = app.add_subcommand("classify", "Regime label of a network");
  classify->add_option("input", input, "network JSON file ('-' for stdin)")->required();

  std::string which;
  std::string svg_path;
  auto* region = app.add_subcommand("region", "Linear system of a region, with vertices");
  region->add_option("input", input)->required();
  region->add_option("--which", which, "ptin | sls-outer | two-cell-sls | homog")
      ->required()
      ->check(CLI::IsMember({"ptin", "sls-outer", "two-cell-sls", "homog"}));
  region->add_option("--svg", svg_path, "write a 2-D slice as SVG");

  auto* sumgdof = app.add_subcommand("sumgdof", "TIN and cooperative outer-bound sum-GDoF");
  sumgdof->add_option("input", input)->required();

  auto* gain = app.add_subcommand("gain", "Cooperation gain over TIN");
  gain->add_option("input", input)->required();

  std::string regime_text = "TIN";
  int K = 2, L = 1, budget = 100;
  std::uint64_t seed = acceptance::Config{}.seed;
  std::string csv_path;
  std::vector<std::string> pool_paths;
  auto* search = app.add_subcommand("search", "Seeded search for large cooperation gains");
  search->add_option("--regime", regime_text, "TIN | CTIN | SLS");
  search->add_option("--K", K);
  search->add_option("--L", L);
  search->add_option("--budget", budget);
  search->add_option("--seed", seed);
  search->add_option("--csv", csv_path, "write every sample as ratio,margin");
  search->add_option("--pool", pool_paths, "networks evaluated before sampling");

  std::string d_text, a_text = "0";
  auto* power = app.add_subcommand("power", "Power exponents or an infeasibility circuit");
  power->add_option("input", input)->required();
  power->add_option("--d", d_text, "comma-separated GDoF tuple, cell-major")->required();
  power->add_option("--a", a_text, "multicast level");

  bool quick = false;
  auto* verify = app.add_subcommand("verify", "Run the randomized acceptance checks");
  verify->add_option("--seed", seed);
  verify->add_flag("--quick", quick, "one tenth of the trials");

  std::vector<std::string> elim;
  bool prune = false;
  auto* fm = app.add_subcommand("fm", "Fourier-Motzkin elimination on a linear system");
  fm->add_option("input", input)->required();
  fm->add_option("--var", elim, "variable to eliminate (repeatable, in order)");
  fm->add_flag("--prune", prune, "drop redundant rows afterwards");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    detail::emit(err, detail::error_json("usage", e.what()));
    return 2;
  }

  try {
    if (classify->parsed()) {
      NetworkSpec raw = detail::read_network(input);
      NormalizedNetwork norm = normalize_user_order(raw);
      Json j = to_json(classify_regime(norm.net));
      j["sir_order"] = detail::sir_json(check_sir_order(norm.net));
      j["permutation"] = Json::array();
      for (const auto& perm : norm.permutation) {
        Json p = Json::array();
        for (int l : perm) p.push_back(l + 1);
        j["permutation"].push_back(std::move(p));
      }
      detail::emit(out, j);
    } else if (region->parsed()) {
      NetworkSpec net = detail::read_network(input);
      LinSystem sys;
      Json extra;
      if (which == "ptin") {
        sys = ptin_region(net);
      } else if (which == "sls-outer") {
        sys = sls_outer_region(net);
      } else if (which == "two-cell-sls") {
        sys = two_cell_sls_achievable(net);
      } else {
        HomogCheck hc = homog_check(net);
        sys = hc.outer;
        extra["achievable"] = to_json(hc.achievable);
        extra["equal"] = hc.equal;
        extra["witness"] = hc.witness ? rationals_to_json(*hc.witness) : Json(nullptr);
      }
      Json j = detail::system_with_vertices(sys);
      if (!extra.is_null())
        for (auto& [k, v] : extra.items()) j[k] = v;
      if (!svg_path.empty()) detail::write_file(svg_path, detail::render_svg(sys));
      detail::emit(out, j);
    } else if (sumgdof->parsed()) {
      NetworkSpec net = detail::read_network(input);
      detail::emit(out, Json{{"tin", to_json(tin_sum_gdof(net))},
                             {"mbc_outer", to_json(mbc_outer_sum_gdof(net))}});
    } else if (gain->parsed()) {
      detail::emit(out, to_json(gain_ratio(detail::read_network(input))));
    } else if (search->parsed()) {
      const Regime regime = parse_regime(regime_text);
      SearchResult res = search_extremal(regime, K, L, budget, seed, detail::read_pool(pool_paths));
      if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "ratio,margin\n";
        for (const auto& s : res.samples)
          csv << detail::decimal(s.ratio) << "," << detail::decimal(s.margin) << "\n";
        detail::write_file(csv_path, csv.str());
      }
      Json j = to_json(res.best);
      j["samples"] = res.samples.size();
      j["seed"] = seed;
      detail::emit(out, j);
    } else if (power->parsed()) {
      NetworkSpec net = detail::read_network(input);
      std::vector<Rational> d = parse_rational_list(d_text);
      Rational a = parse_rational(a_text);
      PotentialGraph g = build_potential_graph(net, d, a);
      ShortestPaths sp = bellman_ford(g);
      Json j;
      if (sp.negative_circuit) {
        j = Json{{"feasible", false}, {"circuit", circuit_to_json(g, *sp.negative_circuit)}};
      } else {
        PowerTuple p = recover_powers(net, d, a);
        Json slacks = Json::array();
        for (const auto& s : power_slacks(net, d, p.r, a))
          slacks.push_back(Json{{"constraint", s.constraint}, {"slack", to_json(s.slack)}});
        j = Json{{"feasible", true}, {"power", to_json(p)}, {"slacks", std::move(slacks)},
                 {"verified", verify_power_allocation(net, d, p.r, a)}};
      }
      detail::emit(out, j);
    } else if (verify->parsed()) {
      acceptance::Config cfg;
      cfg.seed = seed;
      cfg.reduce = quick ? 10 : 1;
      Json report = acceptance::run_report(cfg);
      detail::emit(out, report);
      return report["all_passed"].get<bool>() ? 0 : 1;
    } else if (fm->parsed()) {
      LinSystem sys = linsystem_from_json(detail::read_json_file(input));
      for (const auto& v : elim) sys = fm_eliminate(sys, v);
      if (prune) sys = remove_redundant(sys);
      detail::emit(out, to_json(sys));
    }
  } catch (const SchemaError& e) {
    detail::emit(err, detail::error_json("schema", e.what()));
    return 2;
  } catch (const DimensionError& e) {
    detail::emit(err, detail::error_json("dimension", e.what()));
    return 2;
  } catch (const PreconditionError& e) {
    detail::emit(err, detail::error_json("precondition", e.what()));
    return 2;
  } catch (const CapabilityError& e) {
    detail::emit(err, detail::error_json("capability", e.what()));
    return 3;
  }
  return 0;
}

}  // namespace gdof::cli
