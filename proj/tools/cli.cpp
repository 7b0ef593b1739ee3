#include "cli.hpp"

#include "socrescale/error.hpp"
#include "socrescale/generate.hpp"
#include "socrescale/io.hpp"
#include "socrescale/socp.hpp"
#include "socrescale/solver.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace socrescale::cli {

namespace fs = std::filesystem;

namespace {

struct Config {
  double epsilon = 1e-6;
  double delta = 1e-4;
  double tol = 1e-8;
  Index max_outer = 1'000'000;
  Index bp_max_iters = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string output = "-";
  bool quiet = false;
  bool verbose = false;
};

void setup_logging(const Config& cfg) {
  static std::once_flag once;
  std::call_once(once, [] {
    auto logger = spdlog::stderr_color_mt("soc-rescale");
    spdlog::set_default_logger(logger);
  });
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("SOC_RESCALE_LOG")) level = spdlog::level::from_str(env);
  if (cfg.verbose) level = spdlog::level::debug;
  if (cfg.quiet) level = spdlog::level::err;
  spdlog::set_level(level);
}

SolverOptions solver_options(const Config& cfg) {
  SolverOptions so;
  so.epsilon = cfg.epsilon;
  so.max_outer = cfg.max_outer;
  so.bp.max_iters = cfg.bp_max_iters;
  so.verify_tol = cfg.tol;
  return so;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    out.flush();
  } else {
    write_text(path, text);
  }
}

std::string stats_line(const SolverStats& s) {
  std::ostringstream os;
  os << "bp calls " << s.bp_calls << ", bp iterations " << s.bp_iterations << ", cuts per block [";
  for (std::size_t i = 0; i < s.cuts_per_block.size(); ++i) {
    os << (i ? " " : "") << s.cuts_per_block[i];
  }
  os << "], ledger [";
  os.precision(4);
  for (std::size_t i = 0; i < s.ledger.size(); ++i) os << (i ? " " : "") << s.ledger[i];
  os << "]";
  return os.str();
}

int error_exit(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    default:
      return kExitSolverFailure;
  }
}

// Runs one job and converts errors to exit codes with a diagnostic line.
template <typename F>
int guarded(std::ostream& err, const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    err << what << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return error_exit(e);
  } catch (const std::exception& e) {
    err << what << ": internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

std::vector<fs::path> batch_inputs(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (entry.path().extension() != ".json") continue;
    if (name.ends_with(".cert.json") || name.ends_with(".sol.json")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Solves every instance in a directory with `cfg.jobs` threads. Results land
// next to the inputs (or in cfg.output when it names a directory).
template <typename Solve>
int run_batch(const Config& cfg, const fs::path& dir, const std::string& suffix,
              std::ostream& out, std::ostream& err, Solve solve_one) {
  const std::vector<fs::path> files = batch_inputs(dir);
  const fs::path out_dir = cfg.output == "-" ? dir : fs::path(cfg.output);
  fs::create_directories(out_dir);

  std::vector<int> codes(files.size(), 0);
  std::vector<std::string> notes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      std::ostringstream diag;
      const fs::path target = out_dir / (files[i].stem().string() + suffix);
      codes[i] = guarded(diag, files[i].string(), [&] {
        auto [code, text, note] = solve_one(read_instance(files[i].string()));
        write_text(target.string(), text);
        notes[i] = note;
        return code;
      });
      if (!diag.str().empty()) notes[i] = diag.str();
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(cfg.jobs, files.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int worst = kExitOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    out << files[i].filename().string() << ": " << notes[i];
    if (notes[i].empty() || notes[i].back() != '\n') out << "\n";
    if (codes[i] > 2) worst = std::max(worst, codes[i]);
  }
  if (!cfg.quiet) err << files.size() << " instances processed\n";
  return worst;
}

struct JobResult {
  int code;
  std::string text;
  std::string note;
};

JobResult solve_feas_one(const Config& cfg, const Instance& inst) {
  const SolveResult r = solve(inst.a, inst.cones, solver_options(cfg));
  const Certificate cert = make_certificate(r, cfg.epsilon);
  return {static_cast<int>(r.status()), serialize_certificate(cert),
          std::string(to_string(r.status())) + " (" + stats_line(r.stats) + ")"};
}

JobResult solve_socp_one(const Config& cfg, const Instance& inst) {
  if (!inst.is_socp()) {
    throw Error(ErrorCode::InvalidArgument, "solve-socp needs an instance with b and c");
  }
  SocpOptions so;
  so.solver = solver_options(cfg);
  const PhaseResult r = solve_to_gap(inst.socp(), cfg.delta, so);
  std::ostringstream note;
  note.precision(6);
  note << "phase " << r.phase << ", gap " << r.gap << ", M " << r.m << ", cond bound "
       << r.cond_bound << " (" << stats_line(r.stats) << ")";
  return {kExitOk, serialize_phase_result(r), note.str()};
}

template <typename Solve>
int run_solve(const Config& cfg, const std::string& path, const std::string& suffix,
              std::ostream& out, std::ostream& err, Solve solve_one) {
  if (path != "-" && fs::is_directory(path)) {
    return run_batch(cfg, path, suffix, out, err, solve_one);
  }
  return guarded(err, path, [&] {
    JobResult r = solve_one(read_instance(path));
    emit(cfg.output, r.text, out);
    if (!cfg.quiet) err << r.note << "\n";
    return r.code;
  });
}

int cmd_generate(const Config& cfg, const std::string& kind, Index m, const std::string& blocks,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, "generate", [&] {
    const ConeStructure cones = ConeStructure::parse(blocks);
    Instance inst;
    inst.cones = cones;
    if (kind == "primal") {
      auto g = gen_primal_feasible(cfg.seed, m, cones);
      inst.a = std::move(g.a);
      inst.witness.x = std::move(g.witness);
    } else if (kind == "dual") {
      auto g = gen_dual_feasible(cfg.seed, m, cones);
      inst.a = std::move(g.a);
      inst.witness.s = std::move(g.s);
      inst.witness.u = std::move(g.u);
    } else {
      auto g = gen_socp(cfg.seed, m, cones);
      inst.a = std::move(g.a);
      inst.b = std::move(g.b);
      inst.c = std::move(g.c);
      inst.witness.x = std::move(g.x);
      inst.witness.s = std::move(g.s);
    }
    emit(cfg.output, serialize_instance(inst), out);
    return kExitOk;
  });
}

int cmd_verify(const Config& cfg, const std::string& instance_path,
               const std::string& cert_path, std::ostream& out, std::ostream& err) {
  return guarded(err, "verify", [&] {
    const Instance inst = read_instance(instance_path);
    const Certificate cert = read_certificate(cert_path);
    const VerifyReport rep = verify_certificate(inst, cert, cfg.tol);
    std::ostringstream os;
    os.precision(6);
    os << "status: " << to_string(cert.status) << "\n";
    os << "tolerance: " << cfg.tol << "\n";
    if (cert.status == SolveStatus::NoEpsInterior) {
      os << "block " << cert.block << ": v_k = " << cert.v_k << ", eps = " << cert.epsilon
         << "\n";
    } else {
      os << "relative residual: " << rep.residual << "\n";
      os << "lambda_min: " << rep.lambda_min << "\n";
    }
    for (const auto& msg : rep.messages) os << "error: " << msg << "\n";
    os << (rep.ok ? "PASS" : "FAIL") << "\n";
    emit(cfg.output, os.str(), out);
    return rep.ok ? kExitOk : kExitVerifyFailed;
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Projection and rescaling solver for second-order cone feasibility"};
  app.name("soc-rescale");
  app.require_subcommand(1, 1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "Output path, '-' for stdout");
    sub->add_flag("-q,--quiet", cfg.quiet, "Only print errors");
    sub->add_flag("-v,--verbose", cfg.verbose, "Debug logging");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--epsilon", cfg.epsilon, "No-eps-interior threshold (0 disables)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", cfg.tol, "Certificate verification tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-outer", cfg.max_outer, "Cap on basic procedure calls")
        ->check(CLI::PositiveNumber);
    sub->add_option("--bp-max-iters", cfg.bp_max_iters,
                    "Basic procedure iteration cap (0 = ceil(8n^3) + 8)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", cfg.seed, "Random seed (unused by the deterministic solver)");
    sub->add_option("-j,--jobs", cfg.jobs, "Parallel solves when the input is a directory")
        ->check(CLI::PositiveNumber);
  };

  std::string instance_path;
  std::string cert_path;

  auto* feas = app.add_subcommand("solve-feas", "Solve Ax = 0, x in int K, or certify otherwise");
  feas->add_option("instance", instance_path, "Instance file, '-' or a directory")->required();
  add_solver(feas);
  add_common(feas);

  auto* socp = app.add_subcommand("solve-socp", "Two-phase solve of min c'x, Ax = b, x in K");
  socp->add_option("instance", instance_path, "Instance file with b and c, '-' or a directory")
      ->required();
  socp->add_option("--delta", cfg.delta, "Target duality gap ('inf' for Phase I only)")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0.0;
            if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0)) return "delta must be > 0";
            return {};
          },
          "POSITIVE"));
  add_solver(socp);
  add_common(socp);

  std::string kind = "primal";
  Index m = 2;
  std::string blocks = "soc:3,halfline";
  auto* gen = app.add_subcommand("generate", "Generate an instance with a known witness");
  gen->add_option("kind", kind, "primal, dual or socp")
      ->check(CLI::IsMember({"primal", "dual", "socp"}));
  gen->add_option("--seed", cfg.seed, "Random seed");
  gen->add_option("--m", m, "Number of rows")->check(CLI::PositiveNumber);
  gen->add_option("--blocks", blocks, "Cone, e.g. soc:3,halfline,soc:2");
  add_common(gen);

  auto* ver = app.add_subcommand("verify", "Check a certificate against an instance");
  ver->add_option("instance", instance_path, "Instance file")->required();
  ver->add_option("certificate", cert_path, "Certificate file")->required();
  ver->add_option("--tol", cfg.tol, "Verification tolerance")->check(CLI::PositiveNumber);
  add_common(ver);

  std::vector<std::string> argv_store{"soc-rescale"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  setup_logging(cfg);

  if (feas->parsed()) {
    return run_solve(cfg, instance_path, ".cert.json", out, err,
                     [&](const Instance& inst) { return solve_feas_one(cfg, inst); });
  }
  if (socp->parsed()) {
    return run_solve(cfg, instance_path, ".sol.json", out, err,
                     [&](const Instance& inst) { return solve_socp_one(cfg, inst); });
  }
  if (gen->parsed()) return cmd_generate(cfg, kind, m, blocks, out, err);
  return cmd_verify(cfg, instance_path, cert_path, out, err);
}

}  // namespace socrescale::cli
