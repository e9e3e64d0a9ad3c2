#include "reduction_lab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <optional>
#include <ostream>

#include "reduction_lab/errors.hpp"
#include "reduction_lab/instrument.hpp"
#include "reduction_lab/io.hpp"
#include "reduction_lab/models.hpp"
#include "reduction_lab/scenarios.hpp"
#include "reduction_lab/superop.hpp"

namespace rlab::cli {
namespace {

using io::Json;

struct Options {
  std::optional<double> tol;
  std::string format = "json";
  std::string out_path;
  int jobs = 1;
  int trials = 20;
  int dual_trials = 50;
  std::uint64_t seed = 1;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

double resolve_tolerance(const Options& opts) {
  if (opts.tol) return *opts.tol;
  if (const char* env = std::getenv("REDUCTION_LAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw UsageError(std::string("REDUCTION_LAB_TOL must be a positive number, got '") + env + "'");
    }
    return v;
  }
  return kVerifyTol;
}

void emit(const Options& opts, const std::string& text, std::ostream& out) {
  if (opts.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opts.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + opts.out_path);
  file << text;
}

template <typename F>
VerificationReport run_task(bool parallel, std::vector<std::future<VerificationReport>>& pending, F&& task) {
  if (parallel) {
    pending.push_back(std::async(std::launch::async, std::forward<F>(task)));
    return {};
  }
  return task();
}

int check_model(const std::string& path, const Options& opts, std::ostream& out) {
  const double tol = resolve_tolerance(opts);
  const MeasurementModel model = io::model_from_json(io::read_json_file(path));

  VerificationReport report;
  if (model.probe()) report.merge(probe_consistency(model, tol).to_report());

  std::optional<Instrument> ins;
  try {
    ins = instrument_of(model, tol);
  } catch (const NotAMeasurement& e) {
    report.add("measures_observable", "", e.residual(), tol);
  }

  if (ins) {
    const bool parallel = opts.jobs > 1;
    std::vector<std::future<VerificationReport>> pending;
    const AxiomTolerances axiom_tol{tol, tol / 10.0, tol / 10.0};
    report.merge(run_task(parallel, pending, [&] { return check_axioms(*ins, axiom_tol); }));
    report.merge(run_task(parallel, pending, [&] { return verify_theorem1(*ins, opts.trials, opts.seed, tol); }));
    report.merge(run_task(parallel, pending, [&] { return verify_dual_lemma(*ins, opts.dual_trials, opts.seed, tol); }));
    if (model.probe()) {
      report.merge(run_task(parallel, pending, [&] {
        VerificationReport cross;
        const Instrument probe_route = probe_instrument_of(model, tol);
        const auto& outcomes = ins->observable().outcomes();
        for (std::size_t n = 0; n < outcomes.size(); ++n) {
          cross.add("probe_route_agreement", outcome_label(outcomes[n].value),
                    map_distance(ins->components()[n], probe_route.components()[n]), tol);
        }
        return cross;
      }));
    }
    for (auto& f : pending) report.merge(f.get());
  }
  report.sort();

  if (opts.format == "csv") {
    emit(opts, io::report_csv(report), out);
  } else {
    Json j;
    j["command"] = "check-model";
    j["model"] = path;
    j["tolerance"] = tol;
    const Json body = io::to_json(report);
    j["pass"] = body["pass"];
    j["records"] = body["records"];
    emit(opts, io::serialize(j), out);
  }
  return report.passed() ? kExitPass : kExitVerificationFailure;
}

int reduce_command(const std::string& model_path, const std::string& state_path, double outcome,
                   const Options& opts, std::ostream& out) {
  const double tol = resolve_tolerance(opts);
  const MeasurementModel model = io::model_from_json(io::read_json_file(model_path));
  const DensityOperator rho = io::state_from_json(io::read_json_file(state_path));
  if (rho.dim() != model.dim_s()) throw UsageError("state dimension does not match the model's object space");
  const Instrument ins = instrument_of(model, tol);
  const double p = outcome_probability(ins, outcome, rho);
  const DensityOperator reduced = reduce(ins, outcome, rho);
  Json j;
  j["outcome"] = outcome;
  j["probability"] = p;
  j["reduced_state"] = io::to_json(reduced.matrix());
  emit(opts, io::serialize(j), out);
  return kExitPass;
}

int instrument_command(const std::string& model_path, const Options& opts, std::ostream& out) {
  const double tol = resolve_tolerance(opts);
  const MeasurementModel model = io::model_from_json(io::read_json_file(model_path));
  const Instrument ins = instrument_of(model, tol);
  Json components = Json::array();
  const auto& outcomes = ins.observable().outcomes();
  for (std::size_t n = 0; n < outcomes.size(); ++n) {
    Json kraus = Json::array();
    for (const ComplexMatrix& k : kraus_from_choi(choi(ins.components()[n]))) kraus.push_back(io::to_json(k));
    components.push_back(Json{{"outcome", outcomes[n].value}, {"kraus", std::move(kraus)}});
  }
  Json j;
  j["observable"] = io::to_json(ins.observable());
  j["components"] = std::move(components);
  emit(opts, io::serialize(j), out);
  return kExitPass;
}

int joint_command(const std::string& model_path, const std::string& second_path, const std::string& state_path,
                  const Options& opts, std::ostream& out) {
  const double tol = resolve_tolerance(opts);
  const MeasurementModel model = io::model_from_json(io::read_json_file(model_path));
  const DiscreteObservable second = io::observable_from_json(io::read_json_file(second_path));
  const DensityOperator rho = io::state_from_json(io::read_json_file(state_path));
  if (second.dim() != model.dim_s() || rho.dim() != model.dim_s()) {
    throw UsageError("second observable and state must act on the model's object space");
  }
  const JointDistribution jd = joint_distribution(instrument_of(model, tol), second, rho);
  emit(opts, opts.format == "csv" ? io::joint_csv(jd) : io::serialize(io::to_json(jd)), out);
  return kExitPass;
}

int random_model_command(const std::string& obs_path, std::size_t dim_a, std::uint64_t seed, bool biased,
                         std::size_t apparatus_rank, const Options& opts, std::ostream& out) {
  const DiscreteObservable obs = io::observable_from_json(io::read_json_file(obs_path));
  const MeasurementModel model =
      biased ? random_biased_model(obs, dim_a, seed) : random_faithful_model(obs, dim_a, seed, apparatus_rank);
  emit(opts, io::serialize_model(model), out);
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"reduction-lab: measurement models, instruments and state reduction"};
  app.name("reduction-lab");
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--tol", opts.tol, "Verification tolerance (overrides REDUCTION_LAB_TOL; default 1e-9)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opts.out_path, "Write the report to this file instead of stdout");
  app.add_option("--jobs", opts.jobs, "Run independent checks concurrently")->check(CLI::PositiveNumber);

  std::string model_path;
  auto* check = app.add_subcommand("check-model", "Verify a model: probe consistency, instrument axioms, uniqueness "
                                                  "identities and dual-map identities");
  check->add_option("model", model_path, "Model file")->required();
  check->add_option("--trials", opts.trials, "Random operators per uniqueness check")->check(CLI::PositiveNumber);
  check->add_option("--dual-trials", opts.dual_trials, "Random bounded operators per dual check")
      ->check(CLI::PositiveNumber);
  check->add_option("--seed", opts.seed, "Seed for sampled checks");

  std::string state_path;
  double outcome = 0.0;
  auto* reduce_cmd = app.add_subcommand("reduce", "Print the reduced state for one outcome");
  reduce_cmd->add_option("model", model_path, "Model file")->required();
  reduce_cmd->add_option("--state", state_path, "State file")->required();
  reduce_cmd->add_option("--outcome", outcome, "Outcome (an eigenvalue of the observable)")->required();

  auto* instrument_cmd = app.add_subcommand("instrument", "Emit Kraus operators of every instrument component");
  instrument_cmd->add_option("model", model_path, "Model file")->required();

  std::string second_path;
  auto* joint_cmd = app.add_subcommand("joint", "Joint distribution of the model's outcome and a second observable");
  joint_cmd->add_option("model", model_path, "Model file")->required();
  joint_cmd->add_option("--second", second_path, "Observable file for the second measurement")->required();
  joint_cmd->add_option("--state", state_path, "State file")->required();

  std::size_t demo_dim = 2;
  auto* demo_cmd = app.add_subcommand("demo-nonunique", "Two decompositions of one mixed state, one instrument");
  demo_cmd->add_option("--dim", demo_dim, "Object dimension (>= 2)")->check(CLI::Range(2, 64));

  std::string obs_path;
  std::size_t dim_a = 0;
  std::uint64_t model_seed = 0;
  bool biased = false;
  std::size_t apparatus_rank = 1;
  auto* random_cmd = app.add_subcommand("random-model", "Emit a random measurement model file");
  random_cmd->add_option("--obs", obs_path, "Observable file")->required();
  random_cmd->add_option("--dim-a", dim_a, "Apparatus dimension")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", model_seed, "Seed")->required();
  random_cmd->add_flag("--biased", biased, "Swap two probe sectors so the model does not measure the observable");
  random_cmd->add_option("--apparatus-rank", apparatus_rank, "Rank of the apparatus state")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (check->parsed()) return check_model(model_path, opts, out);
    if (reduce_cmd->parsed()) return reduce_command(model_path, state_path, outcome, opts, out);
    if (instrument_cmd->parsed()) return instrument_command(model_path, opts, out);
    if (joint_cmd->parsed()) return joint_command(model_path, second_path, state_path, opts, out);
    if (demo_cmd->parsed()) {
      emit(opts, io::serialize(io::to_json(nonuniqueness_exhibit(demo_dim))), out);
      return kExitPass;
    }
    if (random_cmd->parsed()) {
      return random_model_command(obs_path, dim_a, model_seed, biased, apparatus_rank, opts, out);
    }
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotAMeasurement& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const ZeroProbabilityOutcome& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const NumericalConsistencyError& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rlab::cli
