// qsatom: cross sections, fluorescence spectra and self-verification for a
// laser-driven two-level atom with direct scattering.
//
//   qsatom xsection --config sweep.json [--format csv|json] [--out path] [--threads N]
//   qsatom spectrum --config spectrum.json ...
//   qsatom verify   [--config cfg.json] [--format csv|json]
//
// Exit codes: 0 success, 1 numerical or check failure, 2 configuration error.

#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "qsatom/config.hpp"
#include "qsatom/sweep.hpp"
#include "qsatom/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_config = 2;

struct Options {
  std::string config;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Options& o, bool config_required) {
  auto* c = cmd->add_option("--config", o.config, "JSON run configuration");
  if (config_required) c->required();
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  cmd->add_option("--threads", o.threads, "Worker threads (default: hardware concurrency)");
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

template <class Emit>
int emit(const Options& o, Emit&& f) {
  if (o.out.empty()) {
    f(std::cout);
    return std::cout ? exit_ok : exit_failure;
  }
  std::ofstream os(o.out);
  if (!os) {
    std::cerr << "error: cannot write " << o.out << '\n';
    return exit_failure;
  }
  f(os);
  return os ? exit_ok : exit_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance fluorescence with direct scattering (reduced units)"};
  app.require_subcommand(1);
  Options opts;
  auto* xs = app.add_subcommand("xsection", "Integral cross sections over (eta2, ztilde)");
  auto* sp = app.add_subcommand("spectrum", "Fluorescence spectra over (eta2, ztilde, x)");
  auto* vf = app.add_subcommand("verify", "Run the oracle and invariant checks");
  add_common(xs, opts, true);
  add_common(sp, opts, true);
  add_common(vf, opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  const unsigned threads = worker_count(opts.threads);
  try {
    if (vf->parsed()) {
      const qsatom::RunConfig cfg =
          opts.config.empty() ? qsatom::default_verify_config() : qsatom::load_config(opts.config);
      const qsatom::VerifyReport report = qsatom::run_verify(cfg, threads);
      const int io = emit(opts, [&](std::ostream& os) {
        if (opts.format == "json") {
          qsatom::write_json(os, report);
        } else {
          qsatom::write_text(os, report);
        }
      });
      if (io != exit_ok) return io;
      return report.all_passed() ? exit_ok : exit_failure;
    }

    const qsatom::RunConfig cfg = qsatom::load_config(opts.config);
    const qsatom::Table table = xs->parsed() ? qsatom::run_xsection_sweep(cfg, threads)
                                             : qsatom::run_spectrum_sweep(cfg, threads);
    return emit(opts, [&](std::ostream& os) {
      if (opts.format == "json") {
        qsatom::write_json(os, table);
      } else {
        qsatom::write_csv(os, table);
      }
    });
  } catch (const qsatom::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
}
