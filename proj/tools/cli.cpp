#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "momentbc/bc_operators.hpp"
#include "momentbc/document.hpp"
#include "momentbc/errors.hpp"
#include "momentbc/inverse_pipeline.hpp"
#include "momentbc/linalg.hpp"
#include "momentbc/moment_bridge.hpp"

namespace momentbc::cli {
namespace {

using io::Json;

struct Options {
  io::Settings settings;
  std::string in;
  std::string out;
  std::string jacobi;
  std::string control;
  std::string response;
  std::string measure;
  std::string moments;
  std::string report;
  std::string jacobi_out;
  std::size_t demo = 0;
  std::size_t sites = 0;
  std::size_t horizon = 0;
  std::size_t length = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> sizes;
  std::string method = "timestep";
  std::string backend = "takagi";
  std::optional<double> phase_step;
};

// Rejection of a numerical condition detected by the CLI itself.
struct Rejection {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_document(const std::string& path) { return io::parse(read_file(path)); }

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::ParseError, "cannot write " + path);
  file << text;
}

std::uint64_t demo_seed() {
  const char* value = std::getenv("MOMENT_BC_SEED");
  if (value == nullptr || *value == '\0') return 0;
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("MOMENT_BC_SEED is not an unsigned integer: ") + value);
  }
}

JacobiSpec load_spec(const Options& opt) {
  if (opt.demo > 0) {
    std::mt19937_64 rng(demo_seed());
    return random_spec(rng, opt.demo, true);
  }
  if (opt.jacobi.empty()) throw Error(ErrorCode::ParseError, "need --jacobi FILE or --demo N");
  return io::jacobi_from_payload(io::expect_kind(read_document(opt.jacobi), "jacobi"));
}

Backend parse_backend(const std::string& name) { return name == "eigen" ? Backend::eigen_oracle : Backend::takagi; }

SolveOptions solve_options(const Options& opt) {
  SolveOptions s;
  s.backend = parse_backend(opt.backend);
  s.tol_singular = opt.settings.tol_singular;
  s.tol_residual = opt.settings.tol_residual;
  s.phase_step = opt.phase_step;
  return s;
}

Json doubles(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

Json verdict_json(const AdmissibilityVerdict& v) {
  Json j;
  j["admissible"] = v.admissible;
  j["failing_k"] = v.failing_k ? Json(*v.failing_k) : Json(nullptr);
  j["sigma_ratios"] = doubles(v.sigma_ratios);
  j["tolerance"] = v.tolerance;
  return j;
}

Json recovery_json(const RecoveryResult& r) {
  Json j;
  j["a0"] = io::complex_to_json(r.a0);
  j["a_squared"] = io::vector_to_json(r.a_squared);
  j["a_principal"] = io::vector_to_json(r.a_principal);
  j["b"] = io::vector_to_json(r.b);
  Json steps = Json::array();
  for (const ConditionStep& step : r.condition_report) {
    Json s;
    s["k"] = step.k;
    s["hankel_ratio"] = step.hankel_ratio;
    s["connecting_ratio"] = step.connecting_ratio;
    steps.push_back(std::move(s));
  }
  j["condition"] = std::move(steps);
  Json warnings = Json::array();
  for (const std::string& w : r.warnings) warnings.push_back(w);
  j["warnings"] = std::move(warnings);
  return j;
}

std::size_t default_horizon(const ResponseVector& r, std::size_t requested) {
  return requested > 0 ? requested : (r.size() + 1) / 2;
}

void cmd_simulate(const Options& opt, std::ostream& out) {
  const JacobiSpec spec = load_spec(opt);
  const Control f = opt.control.empty() ? Control::impulse(1)
                                        : io::control_from_payload(io::expect_kind(read_document(opt.control), "control"));
  const std::size_t n = opt.sites > 0 ? opt.sites : spec.size();
  write_text(opt.out, io::wavefield_csv(simulate_finite(spec, f, n, opt.horizon)), out);
}

void cmd_response(const Options& opt, std::ostream& out) {
  const JacobiSpec spec = load_spec(opt);
  const std::size_t length = opt.length > 0 ? opt.length : 2 * spec.size();
  ResponseVector r;
  if (opt.method == "spectral") {
    r = spectral_response(measure_from_matrix(truncate(spec, spec.size()), spec.a0, solve_options(opt)), length);
  } else {
    r = response_vector(spec, length, opt.method == "kernel" ? ResponseMethod::kernel : ResponseMethod::timestep);
  }
  write_text(opt.out, io::dump(io::make_document("response", io::response_payload(r), opt.settings)), out);
}

void cmd_connect(const Options& opt, std::ostream& out) {
  const ResponseVector r = io::response_from_payload(io::expect_kind(read_document(opt.response), "response"));
  const std::size_t horizon = default_horizon(r, opt.horizon);
  const ConnectingMatrix C = connecting_from_response(r, horizon);
  const Eigen::VectorXd sv = singular_values(C.entries);
  Json payload;
  payload["horizon"] = horizon;
  payload["matrix"] = io::matrix_to_json(C.entries);
  payload["singular_values"] = doubles(std::vector<double>(sv.data(), sv.data() + sv.size()));
  write_text(opt.out, io::dump(io::make_document("report", std::move(payload), opt.settings)), out);
}

void cmd_check(const Options& opt, std::ostream& out) {
  const ResponseVector r = io::response_from_payload(io::expect_kind(read_document(opt.response), "response"));
  const std::size_t horizon = default_horizon(r, opt.horizon);
  const AdmissibilityVerdict v = check_admissibility(r, horizon, opt.settings.tol_singular);
  Json payload;
  payload["horizon"] = horizon;
  payload["verdict"] = verdict_json(v);
  write_text(opt.out, io::dump(io::make_document("report", std::move(payload), opt.settings)), out);
  if (!v.admissible) {
    const std::size_t k = *v.failing_k;
    std::ostringstream msg;
    msg << "check: C^" << horizon - k << " singular (k=" << k << "), sigma ratio " << v.sigma_ratios[k]
        << " <= tol-singular " << v.tolerance << "; not a response vector";
    throw Rejection{msg.str()};
  }
}

void cmd_m2r(const Options& opt, std::ostream& out) {
  const MomentSequence s = io::moments_from_payload(io::expect_kind(read_document(opt.in), "moments"));
  write_text(opt.out,
             io::dump(io::make_document("response", io::response_payload(moments_to_response(s)), opt.settings)), out);
}

void cmd_r2m(const Options& opt, std::ostream& out) {
  const ResponseVector r = io::response_from_payload(io::expect_kind(read_document(opt.in), "response"));
  write_text(opt.out,
             io::dump(io::make_document("moments", io::moments_payload(response_to_moments(r)), opt.settings)), out);
}

void cmd_solve(const Options& opt, std::ostream& out) {
  const MomentSequence s = io::moments_from_payload(io::expect_kind(read_document(opt.in), "moments"));
  const SolveReport report = solve_truncated(s, solve_options(opt));
  write_text(opt.out, io::dump(io::make_document("measure", io::measure_payload(report.measure), opt.settings)), out);
  if (!opt.report.empty()) {
    Json payload;
    payload["backend"] = to_string(report.backend);
    payload["admissibility"] = verdict_json(report.admissibility);
    payload["recovery"] = recovery_json(report.recovery);
    payload["moment_residuals"] = doubles(report.moment_residuals);
    payload["max_relative_residual"] = report.max_relative_residual;
    payload["reproduces_moments"] = report.reproduces_moments;
    write_text(opt.report, io::dump(io::make_document("report", std::move(payload), opt.settings)), out);
  }
  if (!report.reproduces_moments) {
    std::ostringstream msg;
    msg << "solve: measure (" << to_string(report.backend) << ") misses the moments, max relative residual "
        << report.max_relative_residual << " > tol-residual " << opt.settings.tol_residual;
    if (report.backend == Backend::takagi) msg << "; the Takagi route is exact only for normal A^N";
    throw Rejection{msg.str()};
  }
}

void cmd_verify(const Options& opt, std::ostream& out) {
  const DiscreteMeasure m = io::measure_from_payload(io::expect_kind(read_document(opt.measure), "measure"));
  const MomentSequence s = io::moments_from_payload(io::expect_kind(read_document(opt.moments), "moments"));
  const std::vector<double> residuals = verify_measure(m, s);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) worst = std::max(worst, residuals[k] / std::max(1.0, std::abs(s.s[k])));
  Json payload;
  payload["moment_residuals"] = doubles(residuals);
  payload["max_relative_residual"] = worst;
  write_text(opt.out, io::dump(io::make_document("report", std::move(payload), opt.settings)), out);
  if (worst > opt.settings.tol_residual) {
    std::ostringstream msg;
    msg << "verify: max relative moment residual " << worst << " > tol-residual " << opt.settings.tol_residual;
    throw Rejection{msg.str()};
  }
}

void cmd_recover(const Options& opt, std::ostream& out) {
  const MomentSequence s = io::moments_from_payload(io::expect_kind(read_document(opt.in), "moments"));
  const std::size_t depth = opt.depth > 0 ? opt.depth : s.size() / 2;
  const RecoveryResult result = recover_coefficients(s, depth, opt.settings.tol_singular);
  write_text(opt.out, io::dump(io::make_document("report", recovery_json(result), opt.settings)), out);
  if (!opt.jacobi_out.empty()) {
    write_text(opt.jacobi_out, io::dump(io::make_document("jacobi", io::jacobi_payload(result.spec()), opt.settings)),
               out);
  }
}

void cmd_scan(const Options& opt, std::ostream& out) {
  const JacobiSpec spec = load_spec(opt);
  std::vector<std::size_t> sizes = opt.sizes;
  if (sizes.empty()) {
    for (std::size_t n = 1; n <= spec.size(); ++n) sizes.push_back(n);
  }
  const ScanReport report = convergence_scan(spec, sizes, solve_options(opt), opt.settings.tol_residual);
  Json entries = Json::array();
  for (const ScanEntry& e : report.entries) {
    Json j;
    j["n"] = e.n;
    j["measure"] = io::measure_payload(e.measure);
    j["moments"] = io::vector_to_json(e.moments);
    entries.push_back(std::move(j));
  }
  Json payload;
  payload["backend"] = opt.backend == "eigen" ? "eigen_oracle" : "takagi";
  payload["shared_order"] = report.shared_order;
  payload["max_deviation"] = report.max_deviation;
  payload["max_relative_deviation"] = report.max_relative_deviation;
  payload["stable"] = report.stable;
  payload["entries"] = std::move(entries);
  write_text(opt.out, io::dump(io::make_document("report", std::move(payload), opt.settings)), out);
  if (!report.stable) {
    std::ostringstream msg;
    msg << "scan: shared moments s_0..s_" << report.shared_order << " drift by " << report.max_relative_deviation
        << " (relative) > tol-residual " << opt.settings.tol_residual;
    throw Rejection{msg.str()};
  }
}

void add_spec_source(CLI::App* cmd, Options& opt) {
  cmd->add_option("--jacobi", opt.jacobi, "Jacobi spec document");
  cmd->add_option("--demo", opt.demo, "Use a random spec of this size (seed: MOMENT_BC_SEED)");
}

void add_backend(CLI::App* cmd, Options& opt) {
  cmd->add_option("--backend", opt.backend, "Measure construction")
      ->check(CLI::IsMember({"takagi", "eigen"}))
      ->capture_default_str();
  cmd->add_option("--phase-step", opt.phase_step, "Phase step used to separate coincident Takagi values");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated complex moment problem through the discrete boundary control method", "momentbc"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--tol-singular", opt.settings.tol_singular, "Relative singular-value threshold")
      ->capture_default_str();
  app.add_option("--tol-residual", opt.settings.tol_residual, "Relative moment residual threshold")
      ->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Time-step the finite system; wavefield as CSV");
  add_spec_source(simulate, opt);
  simulate->add_option("--control", opt.control, "Control document (default: impulse)");
  simulate->add_option("--sites", opt.sites, "Number of sites N (default: spec size)");
  simulate->add_option("--horizon,-T", opt.horizon, "Final time T")->required();
  simulate->add_option("--out", opt.out, "Output CSV");

  auto* response = app.add_subcommand("response", "Response vector of a Jacobi spec");
  add_spec_source(response, opt);
  response->add_option("--length", opt.length, "Number of entries (default: 2N)");
  response->add_option("--method", opt.method, "timestep | kernel | spectral")
      ->check(CLI::IsMember({"timestep", "kernel", "spectral"}))
      ->capture_default_str();
  add_backend(response, opt);
  response->add_option("--out", opt.out, "Output document");

  auto* connect = app.add_subcommand("connect", "Connecting matrix and its singular values");
  connect->add_option("--response", opt.response, "Response document")->required();
  connect->add_option("--horizon,-T", opt.horizon, "Size T (default: largest possible)");
  connect->add_option("--out", opt.out, "Output document");

  auto* check = app.add_subcommand("check", "Admissibility of a response vector");
  check->add_option("--response", opt.response, "Response document")->required();
  check->add_option("--horizon,-T", opt.horizon, "Size T (default: largest possible)");
  check->add_option("--out", opt.out, "Output document");

  auto* m2r = app.add_subcommand("m2r", "Moments to response vector");
  m2r->add_option("--in", opt.in, "Moments document")->required();
  m2r->add_option("--out", opt.out, "Output document");

  auto* r2m = app.add_subcommand("r2m", "Response vector to moments");
  r2m->add_option("--in", opt.in, "Response document")->required();
  r2m->add_option("--out", opt.out, "Output document");

  auto* solve = app.add_subcommand("solve", "Solve the truncated moment problem s_0..s_{2N}");
  solve->add_option("--in", opt.in, "Moments document")->required();
  solve->add_option("--out", opt.out, "Measure document");
  solve->add_option("--report", opt.report, "Residual and conditioning report");
  add_backend(solve, opt);

  auto* verify = app.add_subcommand("verify", "Moment residuals of a measure");
  verify->add_option("--measure", opt.measure, "Measure document")->required();
  verify->add_option("--moments", opt.moments, "Moments document")->required();
  verify->add_option("--out", opt.out, "Output document");

  auto* recover = app.add_subcommand("recover", "Jacobi coefficients from moments");
  recover->add_option("--in", opt.in, "Moments document")->required();
  recover->add_option("--depth", opt.depth, "Number of sites N (default: floor(len/2))");
  recover->add_option("--out", opt.out, "Report document");
  recover->add_option("--jacobi-out", opt.jacobi_out, "Recovered spec (principal roots)");

  auto* scan = app.add_subcommand("scan", "Moment stability across nested truncations");
  add_spec_source(scan, opt);
  scan->add_option("--sizes", opt.sizes, "Truncation sizes, e.g. 2,3,4")->delimiter(',');
  add_backend(scan, opt);
  scan->add_option("--out", opt.out, "Output document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*simulate) cmd_simulate(opt, out);
    else if (*response) cmd_response(opt, out);
    else if (*connect) cmd_connect(opt, out);
    else if (*check) cmd_check(opt, out);
    else if (*m2r) cmd_m2r(opt, out);
    else if (*r2m) cmd_r2m(opt, out);
    else if (*solve) cmd_solve(opt, out);
    else if (*verify) cmd_verify(opt, out);
    else if (*recover) cmd_recover(opt, out);
    else if (*scan) cmd_scan(opt, out);
  } catch (const Rejection& r) {
    err << "rejected: " << r.message << "\n";
    return kExitRejected;
  } catch (const Error& e) {
    err << (is_numerical_rejection(e.code()) ? "rejected: " : "invalid input: ") << e.what() << "\n";
    return is_numerical_rejection(e.code()) ? kExitRejected : kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace momentbc::cli
