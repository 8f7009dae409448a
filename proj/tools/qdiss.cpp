// qdiss — dissipative ground-state preparation simulator CLI.
//
// Subcommands: spectrum, filter, evolve, zne, circuit-dump.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdiss/runner.hpp"

namespace {

using namespace qdiss;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> backend_override;

  ExperimentConfig load() const {
    ExperimentConfig cfg = config_from_file(config_path);
    if (seed_override) cfg.seed = *seed_override;
    if (backend_override) cfg.backend = backend_from_name(*backend_override);
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config (JSON)")->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed_override, "override the config seed");
  cmd->add_option("--backend", args.backend_override,
                  "override the backend (channel_exact|circuit_noiseless|circuit_noisy)");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stoi(token));
  }
  if (out.empty()) throw ConfigError("empty integer list '" + text + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dissipative ground-state preparation simulator for the TFIM chain"};
  app.require_subcommand(1);

  CommonArgs spectrum_args, filter_args, evolve_args, zne_args, dump_args;
  int m_max = 20;
  std::string m_list_text = "5,10,15,20";
  std::string g_list_text = "1,3,5";
  int dump_m = 1;
  std::string dump_basis = "zz";

  CLI::App* spectrum = app.add_subcommand("spectrum", "exact spectrum summary + filter window");
  add_common(spectrum, spectrum_args);

  CLI::App* filter = app.add_subcommand("filter", "filter tables in frequency and time domain");
  add_common(filter, filter_args);

  CLI::App* evolve = app.add_subcommand("evolve", "E/F/p0 trace of the dissipative evolution");
  add_common(evolve, evolve_args);
  evolve->add_option("--m-max", m_max, "number of protocol steps");

  CLI::App* zne = app.add_subcommand("zne", "noise-scaled estimates and extrapolations");
  add_common(zne, zne_args);
  zne->add_option("--m-list", m_list_text, "comma-separated time steps");
  zne->add_option("--g-list", g_list_text, "comma-separated odd fold factors");

  CLI::App* dump = app.add_subcommand("circuit-dump", "emit the gate text format");
  add_common(dump, dump_args);
  dump->add_option("--m", dump_m, "number of protocol steps");
  dump->add_option("--basis", dump_basis, "measurement basis (zz|x)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) {
      const auto cfg = spectrum_args.load();
      write_file(std::filesystem::path(spectrum_args.out_dir) / "spectrum.json",
                 spectrum_json(cmd_spectrum(cfg)));
    } else if (filter->parsed()) {
      const auto cfg = filter_args.load();
      const FilterReport report = cmd_filter(cfg);
      write_file(std::filesystem::path(filter_args.out_dir) / "filter_freq.csv",
                 report.freq_csv);
      write_file(std::filesystem::path(filter_args.out_dir) / "filter_time.csv",
                 report.time_csv);
    } else if (evolve->parsed()) {
      const auto cfg = evolve_args.load();
      write_file(std::filesystem::path(evolve_args.out_dir) / "evolve.csv",
                 evolve_csv(cmd_evolve(cfg, m_max)));
    } else if (zne->parsed()) {
      const auto cfg = zne_args.load();
      const ZneReport report =
          cmd_zne(cfg, parse_int_list(m_list_text), parse_int_list(g_list_text));
      write_file(std::filesystem::path(zne_args.out_dir) / "zne_points.csv",
                 zne_points_csv(report));
      write_file(std::filesystem::path(zne_args.out_dir) / "zne_fits.csv",
                 zne_fits_csv(report));
    } else if (dump->parsed()) {
      const auto cfg = dump_args.load();
      if (dump_basis != "zz" && dump_basis != "x")
        throw ConfigError("circuit-dump: basis must be 'zz' or 'x'");
      const MeasureBasis basis = dump_basis == "zz" ? MeasureBasis::zz : MeasureBasis::x;
      write_file(std::filesystem::path(dump_args.out_dir) / "circuit.txt",
                 cmd_circuit_dump(cfg, dump_m, basis));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
