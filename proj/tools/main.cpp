#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

using namespace efalloc;

int main(int argc, char** argv) {
  CLI::App app{"Envy-free house allocation under uncertain preferences"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::RunOptions opts;
  bool no_timing = false;
  app.add_option("--threads", opts.threads, "Worker threads for solvers")->check(CLI::Range(1, 1024));
  app.add_option("--cap", opts.cap, "Enumeration / search budget");
  app.add_option("--seed", opts.seed, "Generator seed");
  app.add_flag("--no-timing", no_timing, "Omit wall time from reports");

  std::string instance, alloc, solve_method, decide_method, property, suite;
  std::optional<std::string> epsilon;

  auto* prob = app.add_subcommand("prob", "EF-probability of an allocation");
  prob->add_option("instance", instance)->required();
  prob->add_option("allocation", alloc)->required();

  auto* solve = app.add_subcommand("solve", "Allocation maximizing the EF-probability");
  solve->add_option("instance", instance)->required();
  solve->add_option("--method", solve_method, "enumerate | compact-eps | brute")->default_val("enumerate");
  solve->add_option("--epsilon", epsilon, "Threshold for compact-eps, e.g. 1/4");

  auto* decide = app.add_subcommand("decide", "Possible or certain envy-freeness");
  decide->add_option("instance", instance)->required();
  decide->add_option("property", property, "possible | certain")->required();
  decide->add_option("--method", decide_method, "auto | polynomial | exhaustive")->default_val("auto");

  cli::GenRequest gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance");
  gen_cmd->add_option("kind", gen.kind,
                      "random | r3xc | independent-set | is-pairwise | lottery-to-joint | lottery-to-pairwise | "
                      "single-penalty | double-penalty")
      ->required();
  gen_cmd->add_option("--model", gen.model, "random: lottery | compact | joint | pairwise");
  gen_cmd->add_option("--agents", gen.agents);
  gen_cmd->add_option("--houses", gen.houses);
  gen_cmd->add_option("--support", gen.support, "Orders per agent (lottery) or profiles (joint)");
  gen_cmd->add_option("--classes", gen.classes, "Compact class sizes, e.g. 2,1,3");
  gen_cmd->add_option("--ties", gen.ties, "Compact tie chance in percent");
  gen_cmd->add_option("--grid", gen.grid, "Pairwise probability grid");
  gen_cmd->add_option("--input", gen.input, "Graph, R3XC or lottery instance file");
  gen_cmd->add_option("-k", gen.k, "Independent set size / agent count");
  gen_cmd->add_option("--alpha", gen.alpha, "Gadget multiplicity");
  gen_cmd->add_option("--out", gen.out, "Instance path; omitted embeds it in the report");

  auto* bench = app.add_subcommand("bench", "Run a suite and print CSV");
  bench->add_option("suite", suite)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kInvalidInput;
  }
  opts.timing = !no_timing;

  try {
    cli::json out;
    if (*prob) out = cli::cmd_prob(instance, alloc, opts);
    if (*solve) out = cli::cmd_solve(instance, solve_method, epsilon, opts);
    if (*decide) out = cli::cmd_decide(instance, property, decide_method, opts);
    if (*gen_cmd) out = cli::cmd_gen(gen, opts);
    if (*bench) return cli::cmd_bench(suite, opts, std::cout);
    std::cout << out.dump(2) << "\n";
    return cli::kOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInvalidInput;
  }
}
