// normtorus: command-line front end.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "normtorus/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace normtorus;
  CLI::App app{"Brauer groups of norm-one tori and multinorm equations from Galois data"};
  app.require_subcommand(1);
  auto* compute = app.add_subcommand("compute", "run a job configuration");
  std::string config_path;
  bool oracle = false;
  std::size_t budget = 0;
  std::string ramified_path;
  std::string invariants_path;
  std::string format = "text";
  std::string out_path;
  compute->add_option("config", config_path, "job configuration (JSON)")->required();
  compute->add_flag("--oracle", oracle, "cross-check with the cohomological oracle");
  compute->add_option("--oracle-budget", budget, "largest |G| the oracle accepts");
  compute->add_option("--ramified", ramified_path, "ramified places: list of {label, generators}");
  compute->add_option("--invariants", invariants_path, "local invariants: list of {place, factor, num, den}");
  compute->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  compute->add_option("--out", out_path, "write the report here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  try {
    RunOverrides o;
    if (oracle) o.oracle = true;
    if (budget) o.oracle_budget = budget;
    if (!ramified_path.empty()) o.ramified = parse_ramified(read_json_file(ramified_path));
    if (!invariants_path.empty()) o.invariants = parse_invariants(read_json_file(invariants_path));
    const Report report = run(parse_config(read_json_file(config_path)), o);
    const std::string text = format == "machine" ? emit_machine(report) : emit_text(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "InputError [cli]: cannot write " << out_path << "\n";
        return kExitInput;
      }
      out << text;
    }
    if (report.oracle && report.oracle->verdict != "MATCH") {
      std::cerr << "oracle MISMATCH: C(L)/D and Ш²_cycl(G, T̂) differ\n";
      return kExitMismatch;
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "InternalError: " << e.what() << "\n";
    return kExitInternal;
  }
}
