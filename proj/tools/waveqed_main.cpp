#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "waveqed/config.hpp"
#include "waveqed/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"waveqed: two-photon scattering off two distant qubits"};
  std::string config_path;
  std::vector<std::string> overrides;
  int threads = 0;
  app.add_option("config", config_path, "path to the run configuration")
      ->required();
  app.add_option("--set", overrides,
                 "override a config value as section.key=value")
      ->take_all();
  app.add_option("--threads", threads,
                 "worker threads (fallback: WAVEQED_THREADS, then hardware)");
  CLI11_PARSE(app, argc, argv);

  if (threads > 0) waveqed::set_thread_count(threads);

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();

  try {
    const waveqed::RunConfig config =
        waveqed::parse_config(text.str(), overrides);
    return waveqed::run(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
