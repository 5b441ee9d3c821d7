#include <CLI11.hpp>
#include <iostream>

#include "bench_commands.hpp"

using namespace dimsum::bench;

namespace {

void add_algo_flags(CLI::App* cmd, AlgoConfig& c) {
  cmd->add_option("--algo", c.algo, "imsum, dimsum, ssh, cm or exact")->capture_default_str();
  cmd->add_option("--epsilon-log2", c.epsilon_log2, "epsilon = 2^value")->capture_default_str();
  cmd->add_option("--gamma", c.gamma)->capture_default_str();
  cmd->add_option("--delta", c.delta, "CM failure probability")->capture_default_str();
  cmd->add_option("--seed", c.seed, "CM hash seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted heavy-hitter benchmark harness"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string weights = "unit";
  auto* g = app.add_subcommand("gen", "write a Zipf trace (.bin or .csv by extension)");
  g->add_option("--skew", gen.spec.skew)->capture_default_str();
  g->add_option("--universe", gen.spec.universe)->capture_default_str();
  g->add_option("--count", gen.spec.count)->capture_default_str();
  g->add_option("--seed", gen.spec.seed)->capture_default_str();
  g->add_option("--weights", weights, "unit, or LO:HI for uniform payload sizes")->capture_default_str();
  g->add_option("--out", gen.out)->required();

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "time algorithms over a trace, emit CSV rows");
  b->add_option("--algo", bench.algos, "one or more algorithms")->capture_default_str();
  b->add_option("--epsilon-log2", bench.epsilon_log2, "one or more exponents")->capture_default_str();
  b->add_option("--gamma", bench.gamma)->capture_default_str();
  b->add_option("--delta", bench.delta)->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--trace", bench.trace)->required();
  b->add_option("--repeats", bench.repeats)->capture_default_str();
  b->add_option("--skew", bench.skew, "label for the skew column");
  b->add_option("--out", bench.output, "CSV file to append to (stdout if omitted)");

  ErrorOptions error;
  auto* e = app.add_subcommand("error", "audit per-flow estimates against the exact oracle");
  add_algo_flags(e, error.algo);
  e->add_option("--trace", error.trace)->required();
  e->add_option("--checkpoint", error.checkpoint, "also audit every N records");
  e->add_option("--out", error.output, "per-flow CSV");
  std::string queries = "all-distinct";
  e->add_option("--queries", queries)->check(CLI::IsMember({"all-distinct"}))->capture_default_str();

  ElephantOptions eleph;
  auto* el = app.add_subcommand("elephants", "audit the elephant set against the exact oracle");
  add_algo_flags(el, eleph.algo);
  el->add_option("--trace", eleph.trace)->required();
  el->add_option("--theta", eleph.theta)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return err.get_exit_code() == 0 ? kOk : kUsage;
  }

  if (g->parsed()) {
    if (weights != "unit") {
      const auto colon = weights.find(':');
      try {
        if (colon == std::string::npos) throw std::invalid_argument(weights);
        gen.spec.payload_lo = std::stoull(weights.substr(0, colon));
        gen.spec.payload_hi = std::stoull(weights.substr(colon + 1));
      } catch (const std::exception&) {
        std::cerr << "usage error: --weights expects unit or LO:HI\n";
        return kUsage;
      }
      gen.spec.weight_mode = dimsum::ZipfSpec::WeightMode::UniformPayload;
    }
    return cmd_gen(gen, std::cout, std::cerr);
  }
  if (b->parsed()) return cmd_bench(bench, std::cout, std::cerr);
  if (e->parsed()) return cmd_error(error, std::cout, std::cerr);
  return cmd_elephants(eleph, std::cout, std::cerr);
}
