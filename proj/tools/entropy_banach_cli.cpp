// entropy-banach: command line front end for the library.
//
// Exit codes: 0 success, 1 check failure, 2 I/O or parse error,
// 3 resource cap.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "entropy_banach/checks.hpp"
#include "entropy_banach/ellone.hpp"
#include "entropy_banach/entropy.hpp"
#include "entropy_banach/entropy_dial.hpp"
#include "entropy_banach/errors.hpp"
#include "entropy_banach/json_io.hpp"
#include "entropy_banach/spaces.hpp"
#include "entropy_banach/universal.hpp"

namespace {

using namespace eb;

enum Exit { kOk = 0, kCheckFailed = 1, kInputError = 2, kResource = 3 };

struct Globals {
  std::string out;
  std::string manifest;
  std::uint64_t seed = 20240601;
  std::size_t cap = 0;
  std::string format = "json";
};

struct Emitter {
  Globals& g;
  RunManifest manifest;

  void emit(const std::string& text) {
    if (g.out.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
      write_text_file(g.out, text);
      manifest.outputs.push_back(g.out);
    }
  }
  void side_file(const std::string& path, const std::string& text) {
    write_text_file(path, text);
    manifest.outputs.push_back(path);
  }
  void emit_json(const Json& j) { emit(j.dump(2)); }
};

void record_parameters(const CLI::App* app, RunManifest& m) {
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string key = opt->get_name();
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (opt->count() > 0) {
      std::string joined;
      for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
      m.parameters[key] = joined;
    } else if (!opt->get_default_str().empty()) {
      m.parameters[key] = opt->get_default_str();
    }
  }
}

std::vector<Q> parse_q_list(const std::string& text) {
  std::vector<Q> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.find('.') != std::string::npos || item.find('e') != std::string::npos)
      out.push_back(round_dyadic(std::stod(item), 40));
    else
      out.push_back(parse_q(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified entropy computations for piecewise-linear maps"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Write the main output here instead of stdout");
  app.add_option("--manifest", g.manifest, "Write a run manifest (JSON) here");
  app.add_option("--seed", g.seed, "Seed for randomized inputs")->capture_default_str();
  app.add_option("--cap-breakpoints", g.cap, "Breakpoint cap for compositions");
  app.add_option("--format", g.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // entropy
  std::string entropy_input;
  int entropy_depth = 8;
  auto* cmd_entropy = app.add_subcommand("entropy", "Entropy bracket of a PL map (JSON)");
  cmd_entropy->add_option("input", entropy_input, "PL map JSON file")->required();
  cmd_entropy->add_option("--depth", entropy_depth, "Iteration depth")->capture_default_str();

  // horseshoe
  std::string hs_input;
  int hs_iterate = 1;
  auto* cmd_hs = app.add_subcommand("horseshoe", "Largest breakpoint horseshoe of f^k");
  cmd_hs->add_option("input", hs_input, "PL map JSON file")->required();
  cmd_hs->add_option("--iterate", hs_iterate, "Use f^k")->capture_default_str();

  // thmB
  std::string family_file;
  int family_n = 5;
  int grid_size = 64;
  std::string thmb_csv;
  auto* cmd_thmb = app.add_subcommand("thmB", "Horseshoe combination of an independent family");
  cmd_thmb->add_option("--family", family_file, "Family JSON {members: [...]}; random if absent");
  cmd_thmb->add_option("--n", family_n, "Size of the random family")->capture_default_str();
  cmd_thmb->add_option("--grid", grid_size, "Grid intervals on the common domain")->capture_default_str();
  cmd_thmb->add_option("--csv", thmb_csv, "Also write the combination as a polyline");

  // psi
  std::string psi_input, psi_schedule = "geometric", psi_ratio = "2/3", psi_alpha = "1/2", psi_csv;
  int psi_N = 8, psi_d = 0;
  auto* cmd_psi = app.add_subcommand("psi", "Universal-space transform of a map on [0,1]");
  cmd_psi->add_option("input", psi_input, "PL map JSON on [0,1]")->required();
  cmd_psi->add_option("--schedule", psi_schedule, "geometric or hoelder")
      ->check(CLI::IsMember({"geometric", "hoelder"}))
      ->capture_default_str();
  cmd_psi->add_option("--ratio", psi_ratio, "Geometric ratio")->capture_default_str();
  cmd_psi->add_option("--alpha", psi_alpha, "Hoelder exponent")->capture_default_str();
  cmd_psi->add_option("--N", psi_N, "Truncation level")->capture_default_str();
  cmd_psi->add_option("--horseshoe", psi_d, "Certify a d-horseshoe (0: skip)");
  cmd_psi->add_option("--csv", psi_csv, "Also write the image as a polyline");

  // figure1
  std::string fig_ratio = "2/3";
  int fig_N = 6, fig_samples = 0;
  auto* cmd_fig = app.add_subcommand("figure1", "Tent map and its transform as CSV polylines");
  cmd_fig->add_option("--ratio", fig_ratio, "Geometric ratio")->capture_default_str();
  cmd_fig->add_option("--N", fig_N, "Truncation level")->capture_default_str();
  cmd_fig->add_option("--samples", fig_samples, "Uniform resampling (0: breakpoints)")
      ->capture_default_str();

  // ell1
  int ell_steps = 3;
  std::string ell_delta, ell_tail = "2", ell_csv;
  auto* cmd_ell = app.add_subcommand("ell1", "Finite l1 witness with certified horseshoes");
  cmd_ell->add_option("--steps", ell_steps, "Number of steps M")->capture_default_str();
  cmd_ell->add_option("--delta", ell_delta, "Ramp half-width (default: automatic)");
  cmd_ell->add_option("--tail-factor", ell_tail, "Gamma schedule tail factor")->capture_default_str();
  cmd_ell->add_option("--csv", ell_csv, "Also write f as a polyline");

  // dial
  DialConfig dial;
  dial.t = std::log(2.0);
  std::string dial_lambdas = "0.5,1,2", dial_a, dial_csv;
  auto* cmd_dial = app.add_subcommand("dial", "Map whose nonzero multiples all have entropy t");
  cmd_dial->add_option("--t", dial.t, "Target entropy")->capture_default_str();
  cmd_dial->add_option("--d", dial.d, "Odd lap bound, d > e^t")->capture_default_str();
  cmd_dial->add_option("--N", dial.N, "Number of scales")->capture_default_str();
  cmd_dial->add_option("--lambda-grid", dial.lambda_grid_size, "Grid size on [9/10, 10/9]")
      ->capture_default_str();
  cmd_dial->add_option("--depth", dial.entropy_depth, "Entropy depth")->capture_default_str();
  cmd_dial->add_option("--tol", dial.tolerance, "Tolerance on r(a*) - t")->capture_default_str();
  cmd_dial->add_option("--check-lambdas", dial_lambdas, "Comma separated multipliers")
      ->capture_default_str();
  cmd_dial->add_option("--a-star", dial_a, "Skip the search and use this parameter");
  cmd_dial->add_option("--csv", dial_csv, "Also write f as a polyline");

  // check
  std::string only;
  auto* cmd_check = app.add_subcommand("check", "Run the acceptance criteria");
  cmd_check->add_option("--only", only, "Comma separated criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (g.cap > 0) setenv("ENTROPY_BANACH_CAP", std::to_string(g.cap).c_str(), 1);
  const auto start = std::chrono::steady_clock::now();
  Emitter em{g, {}};
  int code = kOk;

  try {
    const CLI::App* active = app.get_subcommands().front();
    em.manifest.subcommand = active->get_name();
    record_parameters(&app, em.manifest);
    record_parameters(active, em.manifest);

    if (active == cmd_entropy) {
      PLMap f = plmap_from_json(read_json_file(entropy_input));
      EntropyBounds b = entropy_bounds(f, entropy_depth);
      if (g.format == "csv") {
        std::ostringstream s;
        s.precision(17);
        s << "# entropy\nlower,upper,depth_used\n" << b.lower << "," << b.upper << "," << b.depth_used << "\n";
        em.emit(s.str());
      } else {
        em.emit_json(to_json(b));
      }
    } else if (active == cmd_hs) {
      PLMap f = plmap_from_json(read_json_file(hs_input));
      PLMap fk = iterate(f, hs_iterate);
      auto [d, cert] = horseshoe_max(fk);
      Json out{{"d", d}, {"iterate", hs_iterate}};
      if (cert) {
        cert->k = hs_iterate;
        out["certificate"] = to_json(*cert);
        out["lower_bound"] = certified_lower_bound(f, *cert);
      } else {
        out["certificate"] = nullptr;
      }
      em.emit_json(out);
    } else if (active == cmd_thmb) {
      FunctionFamily fam;
      if (!family_file.empty()) {
        fam = family_from_json(read_json_file(family_file));
      } else {
        std::mt19937_64 rng(g.seed);
        std::vector<Q> nodes;
        for (int k = 0; k <= 2 * family_n; ++k) nodes.push_back(Q(k, 2 * family_n));
        for (auto& x : nodes) x.canonicalize();
        fam = random_pl_family(family_n, nodes, rng);
      }
      if (fam.members.empty()) throw ParseError("family has no members");
      IntervalQ dom = fam.members.front().domain();
      for (const auto& f : fam.members) {
        dom.lo = std::min(dom.lo, f.domain().lo);
        dom.hi = std::max(dom.hi, f.domain().hi);
      }
      std::vector<Q> grid;
      for (int k = 0; k <= grid_size; ++k) grid.push_back(dom.lo + dom.length() * Q(k, grid_size));
      IndependencePoints pts = independent_points(fam, grid);
      HorseshoeCombination hc = horseshoe_combination(fam, pts);
      Json pj = Json::array();
      for (const auto& x : pts.points) pj.push_back(to_json(x));
      Json cj = Json::array();
      for (const auto& a : hc.coefficients) cj.push_back(to_json(a));
      Json out{{"family", to_json(fam)},
               {"points", pj},
               {"gram_determinant", to_json(pts.gram_determinant)},
               {"coefficients", cj},
               {"f", to_json(hc.f)},
               {"certificate", to_json(hc.certificate)},
               {"lower_bound", certified_lower_bound(hc.f, hc.certificate)}};
      if (!thmb_csv.empty()) em.side_file(thmb_csv, polyline_csv(hc.f, "horseshoe combination"));
      if (g.format == "csv") em.emit(polyline_csv(hc.f, "horseshoe combination"));
      else em.emit_json(out);
    } else if (active == cmd_psi) {
      PLMap f = plmap_from_json(read_json_file(psi_input));
      ScaleSchedule s = psi_schedule == "geometric" ? geometric_schedule(parse_q(psi_ratio), psi_N)
                                                    : hoelder_schedule(parse_q(psi_alpha), psi_N);
      PLMap gmap = psi(f, s);
      Json out{{"schedule", to_json(s)}, {"g", to_json(gmap)}};
      if (psi_d > 0) {
        HorseshoeCertificate c = psi_horseshoe(f, s, psi_d);
        out["certificate"] = to_json(c);
        out["lower_bound"] = certified_lower_bound(gmap, c);
      }
      if (!psi_csv.empty()) em.side_file(psi_csv, polyline_csv(gmap, "psi(f)"));
      if (g.format == "csv") em.emit(polyline_csv(gmap, "psi(f)"));
      else em.emit_json(out);
    } else if (active == cmd_fig) {
      PLMap tent({Q(0), Q(1, 2), Q(1)}, {Q(0), Q(1), Q(0)});
      ScaleSchedule s = geometric_schedule(parse_q(fig_ratio), fig_N);
      PLMap gmap = psi(tent, s);
      if (fig_samples > 1) {
        gmap = sample_pl_exact([&gmap](const Q& x) { return gmap(x); },
                               {Q(-4, 3), Q(4, 3)}, fig_samples);
      }
      if (g.format == "json") {
        em.emit_json(Json{{"f", to_json(tent)}, {"g", to_json(gmap)}, {"schedule", to_json(s)}});
      } else {
        em.emit(polyline_csv(tent, "f") + "\n" + polyline_csv(gmap, "psi(f)"));
      }
    } else if (active == cmd_ell) {
      std::optional<Q> delta;
      if (!ell_delta.empty()) delta = parse_q(ell_delta);
      WitnessReport w = ell1_witness(delta, ell_steps, gamma_schedule(ell_steps, parse_q(ell_tail)));
      if (!ell_csv.empty()) em.side_file(ell_csv, polyline_csv(w.f, "l1 witness"));
      if (g.format == "csv") em.emit(polyline_csv(w.f, "l1 witness"));
      else em.emit_json(to_json(w));
    } else if (active == cmd_dial) {
      Json out;
      if (dial_a.empty()) {
        AStarResult a = find_a_star(dial.t, dial);
        dial.a_star = a.a;
        Json trace = Json::array();
        for (const auto& [x, r] : a.trace) trace.push_back(Json{{"a", to_json(x)}, {"r", r}});
        out["search"] = Json{{"residual", a.residual},
                             {"r", a.r.value},
                             {"width", a.r.width},
                             {"lambda_star", to_json(a.r.lambda_star)},
                             {"warning", a.r.warning},
                             {"trace", trace}};
        if (a.residual > dial.tolerance) code = kCheckFailed;
      } else {
        dial.a_star = parse_q(dial_a);
      }
      out["config"] = to_json(dial);
      PLMap f = build_dial_map(dial);
      Q lambda_star = out.contains("search") ? q_from_json(out["search"]["lambda_star"]) : Q(1);
      Json table = Json::array();
      for (const auto& rep : dial_entropy_check(dial, parse_q_list(dial_lambdas), lambda_star)) {
        Json scales = Json::array();
        for (const auto& s : rep.scales)
          scales.push_back(Json{{"n", s.n}, {"mu", to_json(s.mu)}, {"bounds", to_json(s.bounds)}});
        table.push_back(Json{{"lambda", to_json(rep.lambda)},
                             {"bounds", to_json(rep.bounds)},
                             {"distance_to_t", rep.bounds.distance_to(dial.t)},
                             {"nearest_gap", rep.nearest_gap},
                             {"scales", scales}});
      }
      out["table"] = table;
      if (!dial_csv.empty()) em.side_file(dial_csv, polyline_csv(f, "dial map"));
      if (g.format == "csv") em.emit(polyline_csv(f, "dial map"));
      else em.emit_json(out);
    } else if (active == cmd_check) {
      CheckOptions opts;
      opts.seed = g.seed;
      for (const auto& id : parse_q_list(only)) opts.only.push_back(static_cast<int>(id.get_num().get_si()));
      auto results = run_acceptance(opts, [](const CriterionResult& r) {
        std::cerr << format_result_line(r) << std::endl;
      });
      Json rj = Json::array();
      for (const auto& r : results) {
        rj.push_back(to_json(r));
        if (!r.passed) {
          code = kCheckFailed;
          std::cerr << "failing criterion: [" << r.id << "] " << r.name << "\n";
        }
      }
      em.manifest.wall_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!g.out.empty()) em.manifest.outputs.push_back(g.out);
      if (!g.manifest.empty()) em.manifest.outputs.push_back(g.manifest);
      Json out{{"manifest", to_json(em.manifest)}, {"results", rj}};
      if (!g.out.empty()) em.manifest.outputs.pop_back();
      if (!g.manifest.empty()) em.manifest.outputs.pop_back();
      em.emit_json(out);
    }
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << " (depth reached " << e.depth_reached() << ")\n";
    return kResource;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInputError;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << " (minimal N = " << e.minimal_truncation() << ")\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }

  if (!g.manifest.empty()) {
    em.manifest.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    em.manifest.outputs.push_back(g.manifest);
    try {
      write_text_file(g.manifest, to_json(em.manifest).dump(2));
    } catch (const IoError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  return code;
}
