// ifslab - iterated function system laboratory.
//
// Subcommands:
//   render   - Hutchinson-limit attractor image + chaos-game orbit image
//   check    - minimality checkers and dynamical diagnostics
//   compare  - coverage curves of probabilistic vs deterministic drivers
//
// Exit codes: 0 = ran (whatever the verdicts), 2 = config error,
// 3 = resource/budget error. Verdicts are data, never exit codes.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "ifslab/chaos_game.hpp"
#include "ifslab/diagnostics.hpp"
#include "ifslab/minimality.hpp"
#include "ifslab/presets.hpp"
#include "ifslab/textio.hpp"

using namespace ifslab;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_file;
  std::string preset;
  std::string ifs_file;
  std::string generators_file;  // for cantor_candidate
  std::string out_dir = ".";
  std::string h_text;
  std::string stream_spec;
  std::string seed_point;
  std::int64_t n = -1;
  std::int64_t burn_in = defaults::kBurnIn;
};

// One `key = value` config binding; flags given on the command line win.
struct Binding {
  std::string key;
  std::string flag;
  std::function<void(const std::string&)> set;
};

void apply_config(CLI::App* cmd, const std::string& path, const std::vector<Binding>& bindings) {
  if (path.empty()) return;
  auto kv = read_config_file(path);
  for (const auto& [key, value] : kv) {
    const Binding* found = nullptr;
    for (const auto& b : bindings)
      if (b.key == key) found = &b;
    if (!found) throw ConfigError(path + ": unknown config key '" + key + "'");
    if (cmd->count(found->flag) > 0) continue;  // explicit flag overrides the file
    found->set(value);
  }
}

std::vector<Binding> common_bindings(CommonOpts& o) {
  auto str = [](std::string& target) {
    return [&target](const std::string& v) { target = v; };
  };
  auto i64 = [](std::int64_t& target) {
    return [&target](const std::string& v) { target = std::stoll(v); };
  };
  return {
      {"preset", "--preset", str(o.preset)},
      {"ifs", "--ifs", str(o.ifs_file)},
      {"generators", "--generators", str(o.generators_file)},
      {"out", "--out", str(o.out_dir)},
      {"h", "--h", str(o.h_text)},
      {"n", "--n", i64(o.n)},
      {"burn_in", "--burn-in", i64(o.burn_in)},
      {"stream", "--stream", str(o.stream_spec)},
      {"seed_point", "--seed-point", str(o.seed_point)},
  };
}

struct Experiment {
  Ifs ifs;
  ExperimentDefaults rec;
  std::string label;
};

Experiment resolve_system(const CommonOpts& o) {
  if (!o.preset.empty() && !o.ifs_file.empty())
    throw ConfigError("give either --preset or --ifs, not both");
  if (o.preset.empty() && o.ifs_file.empty())
    throw ConfigError("one of --preset or --ifs is required");
  if (!o.preset.empty()) {
    if (o.preset == "cantor_candidate") {
      if (o.generators_file.empty())
        throw ConfigError("preset cantor_candidate needs --generators <ifs file>");
      Ifs user = read_ifs_file(o.generators_file);
      if (!user.space.is_circle())
        throw ConfigError("cantor_candidate generators must act on the circle");
      Preset p = make_cantor_candidate(user.generators);
      return {std::move(p.ifs), p.rec, o.preset};
    }
    try {
      Preset p = make_preset(o.preset);
      return {std::move(p.ifs), p.rec, o.preset};
    } catch (const UnknownPresetError& e) {
      throw ConfigError(e.what());
    }
  }
  Ifs ifs = read_ifs_file(o.ifs_file);
  ExperimentDefaults rec;
  if (ifs.space.is_circle()) {
    rec.h = 1e-3;
    rec.coverage_threshold = defaults::kCircleCoverageThreshold;
  }
  return {std::move(ifs), rec, fs::path(o.ifs_file).stem().string()};
}

Point parse_seed_point(const std::string& text, const Space& space) {
  if (text.empty()) return Point(0, 0);
  auto parts = split(text, ',');
  if (space.is_circle()) {
    if (parts.size() != 1) throw ConfigError("circle seed point is one coordinate");
    return Point(parse_rational(parts[0]), 0);
  }
  if (parts.size() != 2) throw ConfigError("planar seed point is 'x,y'");
  return Point(parse_rational(parts[0]), parse_rational(parts[1]));
}

std::string out_path(const CommonOpts& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  return (fs::path(o.out_dir) / name).string();
}

// The resolved-config line echoed at the top of every output file.
std::string config_echo(const std::string& cmd, const CommonOpts& o, const Experiment& ex,
                        double h, const std::string& extra) {
  std::ostringstream os;
  os << "ifslab " << cmd << " system=" << ex.label << " h=" << format_double(h)
     << " n=" << o.n << " burn_in=" << o.burn_in;
  if (!o.stream_spec.empty()) os << " stream=" << o.stream_spec;
  if (!o.seed_point.empty()) os << " seed_point=" << o.seed_point;
  if (!extra.empty()) os << " " << extra;
  return os.str();
}

int cmd_render(CommonOpts& o, std::int64_t iters, const std::string& tol_text, bool ppm) {
  Experiment ex = resolve_system(o);
  double h = o.h_text.empty() ? ex.rec.h : parse_rational(o.h_text);
  if (o.n < 0) o.n = ex.rec.n;
  if (o.stream_spec.empty()) {
    if (ex.ifs.space.is_circle()) {
      o.stream_spec = "champernowne";
    } else {
      std::ostringstream ss;
      ss << "bernoulli:";
      for (int i = 0; i < ex.ifs.k(); ++i)
        ss << (i ? "," : "") << format_double(1.0 / ex.ifs.k());
      ss << ":1";
      o.stream_spec = ss.str();
    }
  }
  double tol = tol_text.empty() ? defaults::kConvergenceTolFactor * h : parse_rational(tol_text);
  Point seed = parse_seed_point(o.seed_point, ex.ifs.space);
  std::string echo = config_echo("render", o, ex, h,
                                 "iters=" + std::to_string(iters) + " tol=" + format_double(tol));

  GridSet seed_grid(ex.ifs.space, h);
  seed_grid.stamp_point(ex.ifs.space.canonicalize(seed));
  auto [attractor, trace] = hutchinson_iterate(ex.ifs, seed_grid, iters, tol);
  write_pgm(attractor, out_path(o, "attractor.pgm"), echo);
  atomic_write(out_path(o, "trace.csv"), trace_to_csv(trace, echo));

  SymbolStream stream = parse_stream_spec(o.stream_spec, ex.ifs.k());
  auto report = run_probabilistic(ex.ifs, seed, stream.clone(), o.n, o.burn_in, h, attractor);
  write_pgm(report.orbit, out_path(o, "orbit.pgm"), echo);

  if (ppm) {
    // orbit-age coloring: first-hit step per cell, early = blue, late = red
    GridSet frame(ex.ifs.space, h);
    std::vector<std::int64_t> age(static_cast<std::size_t>(frame.cell_count()), -1);
    SymbolStream s2 = parse_stream_spec(o.stream_spec, ex.ifs.k());
    Point p = ex.ifs.space.canonicalize(seed);
    for (std::int64_t step = 1; step <= o.n; ++step) {
      p = eval_map(ex.ifs.generator(s2.next()), ex.ifs.space, p);
      if (step <= o.burn_in) continue;
      int ix, iy;
      if (frame.locate(p, ix, iy)) {
        auto& a = age[static_cast<std::size_t>(iy) * frame.nx() + ix];
        if (a < 0) a = step;
      }
    }
    std::ostringstream os;
    os << "P6\n# " << echo << "\n" << frame.nx() << " " << frame.ny() << "\n255\n";
    std::string body;
    for (int iy = frame.ny() - 1; iy >= 0; --iy)
      for (int ix = 0; ix < frame.nx(); ++ix) {
        std::int64_t a = age[static_cast<std::size_t>(iy) * frame.nx() + ix];
        if (a < 0) {
          body.append(3, '\0');
        } else {
          double t = static_cast<double>(a - o.burn_in) / static_cast<double>(o.n - o.burn_in);
          body += static_cast<char>(static_cast<int>(255 * t));
          body += static_cast<char>(64);
          body += static_cast<char>(static_cast<int>(255 * (1.0 - t)));
        }
      }
    atomic_write(out_path(o, "orbit_age.ppm"), os.str() + body);
  }

  std::vector<CoverageReport> reports{std::move(report)};
  atomic_write(out_path(o, "coverage.csv"), coverage_curve_csv(reports, echo));
  std::cout << "render: attractor cells=" << attractor.occupied_count()
            << " converged=" << (trace.converged ? 1 : 0)
            << " orbit coverage=" << format_double(reports[0].coverage) << "\n";
  return 0;
}

int cmd_check(CommonOpts& o, const std::string& direction, const std::string& eps_text,
              int seeds, std::int64_t max_steps, const std::vector<std::string>& diags,
              bool theorem_b, const std::string& hole_text) {
  Experiment ex = resolve_system(o);
  double h = o.h_text.empty() ? ex.rec.h : parse_rational(o.h_text);
  double eps = eps_text.empty() ? ex.rec.eps : parse_rational(eps_text);
  if (o.n < 0) o.n = ex.rec.n;
  if (seeds <= 0) seeds = 16;
  std::string echo = config_echo("check", o, ex, h,
                                 "direction=" + direction + " eps=" + format_double(eps) +
                                     " seeds=" + std::to_string(seeds) +
                                     " max_steps=" + std::to_string(max_steps));
  std::ostringstream records;
  records << "# " << echo << "\n";

  auto emit_verdict = [&](const MinimalityVerdict& v) {
    std::vector<std::pair<std::string, std::string>> kv{
        {"record", std::string("minimality_") + direction_name(v.direction)},
        {"verdict", verdict_name(v.verdict)},
        {"eps", format_double(v.eps)},
        {"h_internal", format_double(v.h_internal)},
        {"seeds", std::to_string(v.seeds)},
        {"max_steps", std::to_string(v.max_steps)},
    };
    if (v.witness_seed) kv.emplace_back("witness_seed", format_double(v.witness_seed->x()));
    if (v.missed_cell) kv.emplace_back("missed_cell", format_double(v.missed_cell->x()));
    if (v.witness_set) {
      std::string file = std::string("witness_") + direction_name(v.direction) + ".rle";
      write_rle(*v.witness_set, out_path(o, file), echo);
      kv.emplace_back("witness_file", file);
      if (v.direction == Direction::Backward && v.verdict == Verdict::NotMinimal) {
        GridSet step = hutchinson_step(ex.ifs, *v.witness_set);
        bool ok = step.subset_of(v.witness_set->dilate(1));
        kv.emplace_back("witness_reverified", ok ? "1" : "0");
      }
    }
    records << "# " << v.summary() << "\n";
    records << record_line(kv) << "\n";
  };

  if (direction == "forward" || direction == "both")
    emit_verdict(check_forward_minimality(ex.ifs, eps, seeds, max_steps));
  if (direction == "backward" || direction == "both")
    emit_verdict(check_backward_minimality(ex.ifs, eps, seeds, max_steps));

  if (theorem_b) {
    if (!ex.ifs.space.is_circle())
      throw ConfigError("--theorem-b is wired for circle systems");
    double hole = hole_text.empty() ? 0.1 : parse_rational(hole_text);
    GridSet k = grid_from_arc(ex.ifs.space, h, hole, 1.0 - hole);
    auto w = theorem_b_witness(ex.ifs, k, SymbolStream::champernowne(ex.ifs.k()), o.n);
    write_rle(w.k_n, out_path(o, "theorem_b_kn.rle"), echo);
    write_rle(k, out_path(o, "theorem_b_k.rle"), echo);
    records << record_line({{"record", "theorem_b"},
                            {"x", format_double(w.x.x())},
                            {"n", std::to_string(o.n)},
                            {"orbit_stays", w.orbit_stays ? "1" : "0"},
                            {"first_exit", std::to_string(w.first_exit)},
                            {"kn_cells", std::to_string(w.k_n.occupied_count())},
                            {"kn_file", "theorem_b_kn.rle"}})
            << "\n";
  }

  for (const std::string& d : diags) {
    if (d == "contractible") {
      GridSet a = ex.ifs.space.is_circle()
                      ? grid_full(ex.ifs.space, h)
                      : [&] {
                          GridSet s(ex.ifs.space, h);
                          s.stamp_point(parse_seed_point(o.seed_point, ex.ifs.space));
                          return hutchinson_iterate(ex.ifs, s, 100,
                                                    defaults::kConvergenceTolFactor * h)
                              .first;
                        }();
      GridSet k = ex.ifs.space.is_circle()
                      ? grid_from_arc(ex.ifs.space, h, 0.1, 0.9)
                      : outer_image(forward_cell_map(ex.ifs.generator(1), ex.ifs.space), a);
      k.intersect(a);
      auto diag = contractibility_diagnostic(ex.ifs, a, k, 200, defaults::kContractBeam);
      std::ostringstream word;
      for (std::size_t i = 0; i < diag.best_word.size(); ++i)
        word << (i ? "." : "") << diag.best_word.symbols[i];
      records << record_line({{"record", "contractibility"},
                              {"initial_diameter", format_double(diag.initial_diameter)},
                              {"best_diameter", format_double(diag.best_diameter)},
                              {"best_word_len", std::to_string(diag.best_word.size())},
                              {"best_word", word.str().empty() ? "-" : word.str()}})
              << "\n";
      std::ostringstream curve;
      curve << "# " << echo << "\nlen,best_diameter\n";
      for (auto [len, diam] : diag.curve) curve << len << "," << format_double(diam) << "\n";
      atomic_write(out_path(o, "contract_curve.csv"), curve.str());
    } else if (d == "fibre") {
      GridSet a = grid_full(ex.ifs.space, h);
      std::mt19937_64 rng(1);
      double lo = 2.0, hi = 0.0;
      for (int trial = 0; trial < 50; ++trial) {
        int len = 1 + static_cast<int>(rng() % 20);
        std::vector<int> syms(static_cast<std::size_t>(len));
        for (auto& s : syms) s = 1 + static_cast<int>(rng() % ex.ifs.k());
        double diam = fibre_diameter(ex.ifs, SymbolWord(syms, ex.ifs.k()), a);
        lo = std::min(lo, diam);
        hi = std::max(hi, diam);
      }
      records << record_line({{"record", "fibre_diameter"},
                              {"words", "50"},
                              {"max_len", "20"},
                              {"min", format_double(lo)},
                              {"max", format_double(hi)}})
              << "\n";
    } else if (d == "skew") {
      auto res = skew_density_check(ex.ifs, SymbolStream::champernowne(ex.ifs.k()),
                                    parse_seed_point(o.seed_point, ex.ifs.space), 3, 1.0 / 32,
                                    o.n);
      records << record_line({{"record", "skew_density"},
                              {"depth", "3"},
                              {"eps", format_double(1.0 / 32)},
                              {"dense", res.dense ? "1" : "0"},
                              {"visited", std::to_string(res.visited)},
                              {"total", std::to_string(res.total)}})
              << "\n";
    } else {
      throw ConfigError("unknown diagnostic: '" + d + "' (contractible|fibre|skew)");
    }
  }

  atomic_write(out_path(o, "verdicts.txt"), records.str());
  std::cout << records.str();
  return 0;
}

int cmd_compare(CommonOpts& o, const std::string& drivers_text, int seeds) {
  Experiment ex = resolve_system(o);
  double h = o.h_text.empty() ? ex.rec.h : parse_rational(o.h_text);
  if (o.n < 0) o.n = ex.rec.n;
  if (seeds < 1) throw ConfigError("--seeds must be >= 1");
  Point seed_pt = parse_seed_point(o.seed_point, ex.ifs.space);
  std::string echo = config_echo("compare", o, ex, h, "drivers=" + drivers_text +
                                                          " seeds=" + std::to_string(seeds));

  GridSet seed_grid(ex.ifs.space, h);
  seed_grid.stamp_point(ex.ifs.space.canonicalize(seed_pt));
  auto [reference, trace] = hutchinson_iterate(ex.ifs, seed_grid, 400,
                                               defaults::kConvergenceTolFactor * h);

  std::vector<CoverageReport> all;
  for (const std::string& d : split(drivers_text, ',')) {
    std::string driver = trim(d);
    if (driver == "champernowne") {
      all.push_back(run_probabilistic(ex.ifs, seed_pt, SymbolStream::champernowne(ex.ifs.k()),
                                      o.n, o.burn_in, h, reference));
    } else if (driver == "bernoulli") {
      std::vector<double> w(static_cast<std::size_t>(ex.ifs.k()),
                            1.0 / static_cast<double>(ex.ifs.k()));
      for (int s = 1; s <= seeds; ++s)
        all.push_back(run_probabilistic(ex.ifs, seed_pt, SymbolStream::bernoulli(w, s), o.n,
                                        o.burn_in, h, reference));
    } else if (driver == "biased") {
      double p_min = std::min(0.1, 1.0 / ex.ifs.k());
      for (int s = 1; s <= seeds; ++s)
        all.push_back(run_probabilistic(ex.ifs, seed_pt,
                                        SymbolStream::history_biased(ex.ifs.k(), p_min, s),
                                        o.n, o.burn_in, h, reference));
    } else {
      throw ConfigError("unknown driver: '" + driver + "' (bernoulli|champernowne|biased)");
    }
  }
  atomic_write(out_path(o, "compare.csv"), coverage_curve_csv(all, echo));
  double worst = 1.0;
  for (const auto& r : all) worst = std::min(worst, r.coverage);
  std::cout << "compare: curves=" << all.size() << " worst coverage=" << format_double(worst)
            << "\n";
  return 0;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->set_help_flag("--help", "print help");  // frees -h / --h for the resolution
  cmd->add_option("--config", o.config_file, "key = value config file (flags override)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--preset", o.preset, "preset name: sierpinski, fern, circle_minimal, "
                                        "circle_example_44, ns_pair, cantor_candidate");
  cmd->add_option("--ifs", o.ifs_file, "IFS definition file");
  cmd->add_option("--generators", o.generators_file, "generator file for cantor_candidate");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--h", o.h_text, "grid resolution (rational literals allowed, e.g. 1/256)");
  cmd->add_option("--n", o.n, "orbit length");
  cmd->add_option("--burn-in", o.burn_in, "discarded leading orbit points");
  cmd->add_option("--stream", o.stream_spec,
                  "champernowne | bernoulli:<w1,..,wk>:<seed> | biased:<p_min>:<seed> | "
                  "explicit:<digits>");
  cmd->add_option("--seed-point", o.seed_point, "initial point ('x' on the circle, 'x,y' planar)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ifslab - iterated function system laboratory"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  CommonOpts render_opts, check_opts, compare_opts;
  std::int64_t render_iters = 200;
  std::string render_tol;
  bool render_ppm = false;
  auto* render = app.add_subcommand("render", "attractor and chaos-game images");
  add_common(render, render_opts);
  render->add_option("--iters", render_iters, "max Hutchinson iterations");
  render->add_option("--tol", render_tol, "convergence tolerance (default 2h)");
  render->add_flag("--ppm", render_ppm, "also write an orbit-age P6 PPM");

  std::string direction = "both", eps_text, hole_text;
  int check_seeds = 0;
  std::int64_t max_steps = defaults::kCheckerMaxSteps;
  std::vector<std::string> diags;
  bool theorem_b = false;
  auto* check = app.add_subcommand("check", "minimality checkers and diagnostics");
  add_common(check, check_opts);
  check->add_option("--direction", direction, "forward | backward | both")
      ->check(CLI::IsMember({"forward", "backward", "both"}));
  check->add_option("--eps", eps_text, "density resolution");
  check->add_option("--seeds", check_seeds, "checker seeds per axis");
  check->add_option("--max-steps", max_steps, "checker work budget");
  check->add_option("--diag", diags, "contractible | fibre | skew (repeatable)");
  check->add_flag("--theorem-b", theorem_b, "nested-preimage witness along champernowne");
  check->add_option("--hole", hole_text, "K = complement of the arc (-hole, hole)");

  std::string drivers = "bernoulli,champernowne";
  int compare_seeds = 0;
  auto* compare = app.add_subcommand("compare", "driver coverage curves");
  add_common(compare, compare_opts);
  compare->add_option("--drivers", drivers, "comma list: bernoulli | champernowne | biased");
  compare->add_option("--seeds", compare_seeds, "rng seeds per random driver")->required();

  try {
    app.parse(argc, argv);
    if (render->parsed()) {
      auto bindings = common_bindings(render_opts);
      bindings.push_back({"iters", "--iters",
                          [&](const std::string& v) { render_iters = std::stoll(v); }});
      bindings.push_back({"tol", "--tol", [&](const std::string& v) { render_tol = v; }});
      apply_config(render, render_opts.config_file, bindings);
      return cmd_render(render_opts, render_iters, render_tol, render_ppm);
    }
    if (check->parsed()) {
      auto bindings = common_bindings(check_opts);
      bindings.push_back({"direction", "--direction",
                          [&](const std::string& v) { direction = v; }});
      bindings.push_back({"eps", "--eps", [&](const std::string& v) { eps_text = v; }});
      bindings.push_back({"seeds", "--seeds",
                          [&](const std::string& v) { check_seeds = std::stoi(v); }});
      bindings.push_back({"max_steps", "--max-steps",
                          [&](const std::string& v) { max_steps = std::stoll(v); }});
      bindings.push_back({"hole", "--hole", [&](const std::string& v) { hole_text = v; }});
      apply_config(check, check_opts.config_file, bindings);
      return cmd_check(check_opts, direction, eps_text, check_seeds, max_steps, diags,
                       theorem_b, hole_text);
    }
    if (compare->parsed()) {
      auto bindings = common_bindings(compare_opts);
      bindings.push_back({"drivers", "--drivers",
                          [&](const std::string& v) { drivers = v; }});
      bindings.push_back({"seeds", "--seeds",
                          [&](const std::string& v) { compare_seeds = std::stoi(v); }});
      apply_config(compare, compare_opts.config_file, bindings);
      return cmd_compare(compare_opts, drivers, compare_seeds);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ResolutionError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "budget error: out of memory\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
