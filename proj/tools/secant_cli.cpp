// Command-line front end: certification, spectra and simulation.
//
//   secant check    --gains 1,1,1
//   secant certify  --gains 4,1,1 [--tol 1e-9]
//   secant spectrum --r 1 --n 4
//   secant popov    --gains 1,1,2 --kappa 3
//   secant ifp      --gains 1,1 [--delta 0.2]
//   secant simulate --config loop.json [--out traj.csv]
//
// Exit codes: 0 satisfied / success, 1 usage error, 2 condition violated,
// 3 divergence.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "secant/cli/commands.hpp"
#include "secant/cli/json_writer.hpp"

namespace {

// "--gains -1,2" would otherwise be read as an unknown flag.
std::vector<std::string> glue_list_values(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if ((a == "--gains" || a == "--r" || a == "--kappa" || a == "--delta") && i + 1 < argc) {
      a += "=";
      a += argv[++i];
    }
    args.push_back(std::move(a));
  }
  return args;
}

int emit(const secant::cli::CommandResult& res) {
  std::cout << secant::cli::to_json_text(res.payload);
  if (res.payload.contains("message")) std::cerr << res.payload["message"].get<std::string>() << '\n';
  return res.exit_code;
}

int usage_error(const std::string& message) {
  return emit({secant::cli::kExitUsage, {{"error", "InvalidArgument"}, {"message", message}}});
}

}  // namespace

int main(int argc, char** argv) {
  using namespace secant::cli;

  CLI::App app{"Diagonal stability certificates for cyclic interconnections"};
  app.require_subcommand(1);

  std::string gains_text;
  double tol = secant::kDefaultCertificateTolerance;
  double r = 1.0;
  long long n = 1;
  double kappa = 1.0;
  std::optional<double> delta;
  std::string config_path;
  std::string out_path;

  auto* check = app.add_subcommand("check", "Evaluate the secant condition");
  check->add_option("--gains", gains_text, "Comma-separated loop gains")->required();

  auto* certify = app.add_subcommand("certify", "Construct and verify the diagonal certificate");
  certify->add_option("--gains", gains_text, "Comma-separated loop gains")->required();
  certify->add_option("--tol", tol, "Tolerance on the negativity margin");

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form spectrum of the normalized cyclic matrix");
  spectrum->add_option("--r", r, "Geometric-mean gain r > 0")->required();
  spectrum->add_option("--n", n, "Dimension n >= 1")->required();

  auto* popov = app.add_subcommand("popov", "Relaxed and conservative sector-feedback conditions");
  popov->add_option("--gains", gains_text, "Comma-separated loop gains")->required();
  popov->add_option("--kappa", kappa, "Sector bound of the feedback nonlinearity")->required();

  auto* ifp = app.add_subcommand("ifp", "Passivity shortage of a cascade");
  ifp->add_option("--gains", gains_text, "Comma-separated block gains")->required();
  ifp->add_option("--delta", delta, "Feedforward gain (default: 1.01 x threshold)");
  ifp->add_option("--tol", tol, "Tolerance on the negativity margin");

  auto* simulate = app.add_subcommand("simulate", "Simulate an interconnection from a JSON config");
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--out", out_path, "CSV trajectory output path");

  std::vector<std::string> args = glue_list_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  auto gains = [&]() { return parse_number_list(gains_text); };
  try {
    if (*check) return emit(cmd_check(gains()));
    if (*certify) return emit(cmd_certify(gains(), tol));
    if (*spectrum) return emit(cmd_spectrum(r, n));
    if (*popov) return emit(cmd_popov(gains(), kappa));
    if (*ifp) return emit(cmd_ifp(gains(), delta, tol));
    if (*simulate) return emit(cmd_simulate(config_path, out_path));
  } catch (const secant::Error& e) {
    return emit({kExitUsage, error_payload(e)});
  }
  return usage_error("no command given");
}
