#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pih/config.hpp"
#include "pih/gradcheck_suite.hpp"
#include "pih/plot.hpp"
#include "pih/train.hpp"

namespace {

pih::ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& sets,
                                  int64_t seed, int64_t steps, int workers,
                                  const std::string& out) {
  pih::ExperimentConfig cfg = pih::load_experiment_config(path, sets);
  if (seed >= 0) cfg.seeds = {static_cast<uint64_t>(seed)};
  if (steps >= 0) cfg.train.total_steps = steps;
  if (workers > 0) cfg.train.workers = workers;
  if (!out.empty()) cfg.out_dir = out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peg-in-hole compliant-insertion training harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, checkpoint, variant = "full";
  std::string source_config, target_config;
  std::vector<std::string> sets;
  int64_t seed = -1, steps = -1;
  int workers = 0, episodes = 20;
  bool scripted = false;
  std::vector<double> offsets_mm, offsets_deg;
  std::string metrics_csv, trace_csv;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config JSON");
    cmd->add_option("--seed", seed, "override the seed list with one seed");
    cmd->add_option("--steps", steps, "override train.total_steps");
    cmd->add_option("--workers", workers, "override train.workers");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--set", sets, "config override, section.key=value")->take_all();
  };

  CLI::App* train = app.add_subcommand("train", "train SAC on the configured scene");
  add_common(train);
  train->add_option("--checkpoint", checkpoint, "resume from this checkpoint prefix");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  add_common(eval);
  eval->add_option("--checkpoint", checkpoint, "policy checkpoint (.nn file)");
  eval->add_option("--episodes", episodes, "episodes per case");
  eval->add_flag("--scripted", scripted, "use the scripted straight-line insert stub");
  eval->add_option("--offset-mm", offsets_mm, "goal-estimate offset sweep, mm along x")
      ->take_all();
  eval->add_option("--offset-deg", offsets_deg, "goal-estimate offset sweep, deg about x")
      ->take_all();

  CLI::App* transfer = app.add_subcommand("transfer", "pretrain, fine-tune vs scratch");
  transfer->add_option("--source", source_config, "source (pretraining) config")->required();
  transfer->add_option("--target", target_config, "target (shifted scene) config")->required();
  transfer->add_option("--seed", seed, "override the seed");
  transfer->add_option("--out", out_dir, "output directory override for the target");
  transfer->add_option("--set", sets, "config override applied to both")->take_all();

  CLI::App* ablate = app.add_subcommand("ablate", "train an input/architecture variant");
  add_common(ablate);
  ablate->add_option("--variant", variant, "full | mlp-policy | no-prev-action | no-fg-input")
      ->required();

  CLI::App* plot = app.add_subcommand("plot", "emit SVG plots from CSV outputs");
  plot->add_option("--metrics", metrics_csv, "training metrics CSV");
  plot->add_option("--trace", trace_csv, "episode trace CSV");
  plot->add_option("--out", out_dir, "output directory")->required();

  CLI::App* gradcheck = app.add_subcommand("grad-check", "finite-difference gradient audit");
  gradcheck->add_option("--seed", seed, "rng seed for the randomized networks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*train) {
      pih::ExperimentConfig cfg = load_config(config_path, sets, seed, steps, workers, out_dir);
      if (!checkpoint.empty()) {
        pih::Trainer t(cfg, cfg.seeds.front(),
                       cfg.out_dir + "/resume_seed" + std::to_string(cfg.seeds.front()));
        t.resume(checkpoint);
        const pih::TrainOutcome out = t.run();
        std::cout << "resumed run: steps=" << out.steps_done
                  << " final_success=" << out.final_success_rate << "\n";
        return out.halted_non_finite ? 2 : 0;
      }
      const auto outcomes = pih::cmd_train(cfg);
      bool halted = false;
      for (const auto& so : outcomes) {
        std::cout << "seed " << so.seed << ": steps=" << so.outcome.steps_done
                  << " final_success=" << so.outcome.final_success_rate
                  << " threshold_step=" << so.outcome.first_step_at_threshold << " ("
                  << so.run_dir << ")\n";
        halted |= so.outcome.halted_non_finite;
      }
      return halted ? 2 : 0;
    }

    if (*eval) {
      if (!scripted && checkpoint.empty())
        throw CLI::ValidationError("eval", "--checkpoint or --scripted is required");
      pih::ExperimentConfig cfg = load_config(config_path, sets, seed, steps, workers, out_dir);
      const std::string out = out_dir.empty() ? cfg.out_dir + "/eval" : out_dir;
      const auto summary =
          pih::cmd_eval(cfg, checkpoint, episodes, scripted, offsets_mm, offsets_deg, out);
      for (const auto& e : summary.entries)
        std::cout << e.label << ": success=" << e.report.success_rate
                  << " mean_steps=" << e.report.mean_steps
                  << " mean_time_s=" << e.report.mean_wall_seconds << "\n";
      return 0;
    }

    if (*transfer) {
      pih::ExperimentConfig src = pih::load_experiment_config(source_config, sets);
      pih::ExperimentConfig tgt = pih::load_experiment_config(target_config, sets);
      if (seed >= 0) {
        src.seeds = {static_cast<uint64_t>(seed)};
        tgt.seeds = {static_cast<uint64_t>(seed)};
      }
      if (!out_dir.empty()) tgt.out_dir = out_dir;
      const pih::TransferReport rep = pih::cmd_transfer(src, tgt);
      std::cout << "pretrain_steps=" << rep.pretrain_steps
                << " finetune_steps_to_threshold=" << rep.finetune_steps_to_threshold
                << " scratch_steps_to_threshold=" << rep.scratch_steps_to_threshold << "\n";
      return 0;
    }

    if (*ablate) {
      pih::ExperimentConfig cfg = load_config(config_path, sets, seed, steps, workers, out_dir);
      const pih::AblateReport rep = pih::cmd_ablate(cfg, variant);
      std::cout << "full: threshold_step=" << rep.full_steps_to_threshold
                << " aulc=" << rep.full_aulc << "\n"
                << variant << ": threshold_step=" << rep.variant_steps_to_threshold
                << " aulc=" << rep.variant_aulc << "\n";
      return 0;
    }

    if (*plot) {
      const auto files = pih::emit_plots(metrics_csv, trace_csv, out_dir);
      for (const auto& f : files) std::cout << f << "\n";
      return 0;
    }

    if (*gradcheck) {
      const int failures =
          pih::print_grad_check_suite(std::cout, seed >= 0 ? static_cast<uint64_t>(seed) : 7);
      return failures == 0 ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
