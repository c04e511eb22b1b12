#include "run.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace aperiodica::cli {

namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--workers", cfg.workers, "worker threads (APERIODICA_WORKERS overrides)");
  sub->add_option("-o,--output", cfg.output, "artifact path, stdout when omitted");
}

void add_source(CLI::App* sub, RunConfig& cfg, const char* name = "--source") {
  sub->add_option(name, cfg.source,
                  "fib | halffib[:half=left|right] | latticeZ[:spacing=..,offset=..] | latticeZ2 | exampleL | "
                  "cp:lo=..,hi=.. | sub[:depth=..]");
}

void add_rho(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--rho", cfg.rho, "exact | auto | value");
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrepancy, matching and hull construction for Delone sets", "aperiodica"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("generate", "enumerate a source inside a region");
  add_source(gen, cfg);
  gen->add_option("--window", cfg.window, "region literal")->required();

  auto* den = app.add_subcommand("density", "count/measure along a region family");
  add_source(den, cfg);
  den->add_option("--family", cfg.family, "centered | Qi | fibwin");
  den->add_option("--max-i", cfg.max_i);
  den->add_option("--threshold", cfg.threshold, "van Hove threshold");

  auto* dis = app.add_subcommand("discrepancy", "discrepancy report for one region");
  add_source(dis, cfg);
  add_rho(dis, cfg);
  dis->add_option("--region", cfg.region)->required();

  auto* vh = app.add_subcommand("vanhove", "tube ratios of a region family as CSV");
  vh->add_option("--family", cfg.family, "centered | Qi | fibwin");
  vh->add_option("--max-i", cfg.max_i);
  vh->add_option("--dim", cfg.dim);
  vh->add_option("--eps", cfg.eps, "comma list");
  vh->add_option("--threshold", cfg.threshold);
  vh->add_option("--json", cfg.json_output, "diagnostics JSON path");

  auto* dev = app.add_subcommand("deviant", "search for a c-deviant interval");
  add_source(dev, cfg);
  add_rho(dev, cfg);
  dev->add_option("--c", cfg.c)->required();
  dev->add_option("--window", cfg.window)->required();
  dev->add_option("--budget", cfg.budget, "points scanned per window component");
  dev->add_option("--selection", cfg.selection, "max | shortest");
  dev->add_option("--min-length", cfg.min_length);
  dev->add_option("--sign", cfg.sign, "+1 excess, -1 deficit, 0 either");
  dev->add_option("--robust-ell", cfg.robust_ell, "require deviance under all shifts up to ell");

  auto* rep = app.add_subcommand("reprad", "repetitivity radius of a patch");
  add_source(rep, cfg);
  rep->add_option("--patch", cfg.patch)->required();
  rep->add_option("--window", cfg.window)->required();

  auto* mat = app.add_subcommand("match", "bottleneck matching of two point files");
  mat->add_option("--left", cfg.left)->required();
  mat->add_option("--right", cfg.right)->required();

  auto* nb = app.add_subcommand("nonbd", "count-difference ratios of two sources");
  add_source(nb, cfg, "--s1");
  nb->add_option("--s2", cfg.source2);
  nb->add_option("--family", cfg.family, "centered | Qi | fibwin");
  nb->add_option("--max-i", cfg.max_i);
  nb->add_option("--threshold", cfg.threshold);

  auto* hull = app.add_subcommand("hull", "build a patch tower for a D/N word");
  add_source(hull, cfg);
  add_rho(hull, cfg);
  hull->add_option("--word", cfg.word)->required();
  hull->add_option("--c", cfg.c, "comma list, default 1,2,..");
  hull->add_option("--budget", cfg.budget);
  hull->add_option("--window", cfg.window, "search windows per level separated by ;, last one reused");
  hull->add_option("--ell1", cfg.ell1);
  hull->add_option("--margin", cfg.margin);
  hull->add_option("--min-length", cfg.min_length);
  hull->add_option("--json", cfg.json_output, "transcript path, stdout when omitted");

  auto* dg = app.add_subcommand("distinguish", "evidence that two towers differ at a level");
  dg->add_option("--tower-a", cfg.tower_a)->required();
  dg->add_option("--tower-b", cfg.tower_b)->required();
  dg->add_option("--level", cfg.level);

  auto* vl = app.add_subcommand("verify-lemmas", "run the randomized property suites");
  vl->add_option("--json", cfg.json_output);

  for (auto* sub : app.get_subcommands({})) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(std::move(cfg), out, err);
}

}  // namespace aperiodica::cli
