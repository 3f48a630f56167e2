#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Feature selection by normalized frequencies"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 1;
  std::string fit_on;
  app.add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", threads, "Worker threads (results do not depend on this)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--fit-encoder-on", fit_on, "Fit categorical vocabularies on 'train' or 'union'")
      ->check(CLI::IsMember({"train", "union"}));

  auto* encode = app.add_subcommand("encode", "Fit the one-hot schema and report encoded width");
  auto* mi_hist = app.add_subcommand("mi-hist", "Score features by mutual information and emit a histogram");
  auto* select = app.add_subcommand("select", "Run both selection phases and write the run report");
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a feature subset over repeated seeds");
  std::string mask_path;
  evaluate->add_option("--mask", mask_path, "Feature-name list (raw or encoded names)")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = nffs::cli::load_run_config(config_path);
    if (!fit_on.empty()) config.fit_encoder_on = nffs::cli::parse_encoder_fit(fit_on);
    const nffs::cli::CommandOptions options{out_dir, threads};

    if (encode->parsed()) {
      nffs::cli::cmd_encode(config, options, std::cout);
    } else if (mi_hist->parsed()) {
      nffs::cli::cmd_mi_hist(config, options, std::cout);
    } else if (select->parsed()) {
      nffs::cli::cmd_select(config, options, std::cout);
    } else if (evaluate->parsed()) {
      nffs::cli::cmd_evaluate(config, mask_path, options, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
