#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "transduce/parallel.hpp"
#include "transduce_cli/commands.hpp"
#include "transduce_cli/table.hpp"

int main(int argc, char** argv) {
  using namespace transduce::cli;

  CLI::App app{"Microwave-optical transduction simulator", "transduce-sim"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1, 1);
  app.footer("Default thread count comes from " + std::string(kThreadsEnv) + ".\nExit codes: 0 ok, 1 failure, 2 parse error, 3 domain error.");

  RunRequest req;
  req.threads = transduce::default_thread_count();
  std::string out_dir;

  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", req.config_path, "config file")->required();
    sub->add_option("--set", req.overrides, "override, section.key=value")->take_all()->allow_extra_args(false);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--threads", req.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", req.seed, "seed for randomized checks");
    if (name == "design") {
      sub->add_option_function<std::string>("--solve", [&](const std::string& v) { req.solve = v; },
                                            "matched variable: omega_p, n_a, kappa_a_ex, kappa_c_ex");
      sub->add_flag("--scan", req.scan, "density/pump scan over [design] lists");
    }
    sub->callback([&req, name] { req.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!out_dir.empty()) req.out_dir = out_dir;
  return run(req, std::cout, std::cerr);
}
