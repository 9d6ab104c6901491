// tsy-verify: runs the full verification pipeline on a manifold spec.
//
//   tsy-verify verify <path|paper-example|flat-example> [--json]
//                     [--quasi-conformal a,b] [--potential-field <name|components>]
//
// Exit status: 0 all consistent, 1 an inconsistency was found, 2 bad input.

#include <tsy/report.hpp>

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of trans-Sasakian identities and eta-Yamabe soliton statements"};
  app.require_subcommand(1);
  CLI::App* verify = app.add_subcommand("verify", "verify a manifold spec (file path or built-in name)");
  std::string target, qc, field;
  bool json = false;
  verify->add_option("spec", target, "spec file, or paper-example / flat-example")->required();
  verify->add_flag("--json", json, "machine-readable report");
  verify->add_option("--quasi-conformal", qc, "coefficients a,b of the quasi-conformal tensor (default 1,1)");
  verify->add_option("--potential-field", field, "xi, e1..en, or frame components such as \"0,0,2\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const tsy::ManifoldSpecFile spec = tsy::load_spec(target);
    tsy::VerifyOptions opts;
    if (!qc.empty()) {
      const auto comma = qc.find(',');
      if (comma == std::string::npos) throw tsy::SpecError("--quasi-conformal", "expected a,b");
      opts.quasi_conformal = tsy::parse_quasi_conformal(qc.substr(0, comma), qc.substr(comma + 1), "--quasi-conformal");
    }
    if (!field.empty()) opts.potential_field = field;
    const tsy::VerificationReport report = tsy::verify(spec, opts);
    std::cout << (json ? tsy::report_json_text(report) : tsy::report_text(report));
    return report.exit_code;
  } catch (const tsy::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const tsy::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
