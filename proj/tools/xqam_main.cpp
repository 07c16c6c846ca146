#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "xqam/harness.hpp"

namespace {

// Shared flags; values already hold config-file settings, so only flags
// actually present on the command line override them.
void add_common(CLI::App* cmd, xqam::ExperimentConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    cmd->add_option("--constellation", cfg.constellation,
                    "cross-qam | class1-trim | dicyclic | square-qam");
    cmd->add_option("--m", cfg.m, "cross-qam scale parameter");
    cmd->add_option("--order", cfg.qam_order, "square-qam order");
    cmd->add_option("--labeling", cfg.labeling, "gray | progressive");
}

}  // namespace

int main(int argc, char** argv) {
    xqam::ExperimentConfig cfg;
    try {
        // The config file loads before flag parsing so flags win.
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc)
                cfg = xqam::ExperimentConfig::from_file(argv[i + 1]);
            else if (arg.rfind("--config=", 0) == 0)
                cfg = xqam::ExperimentConfig::from_file(arg.substr(9));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    CLI::App app{"4D cross-QAM modulation toolkit: Gray labelings, PAPR and BER experiments"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key = value config file")
        ->check(CLI::ExistingFile);

    auto* verify = app.add_subcommand("verify-gray", "check the Gray property of a labeling");
    add_common(verify, cfg);

    auto* papr = app.add_subcommand("papr", "DFT-spread-OFDM PAPR CCDF campaign");
    add_common(papr, cfg);
    papr->add_option("--subcarriers", cfg.subcarriers, "used subcarriers");
    papr->add_option("--total", cfg.total_subcarriers, "total subcarriers");
    papr->add_option("--oversample", cfg.oversample, "oversampling factor");
    papr->add_option("--symbols", cfg.symbols, "waveform symbols");

    auto* ber = app.add_subcommand("ber", "uncoded or LDPC-coded BER sweep");
    add_common(ber, cfg);
    std::string mode;
    std::string snr_list;
    ber->add_option("--mode", mode, "uncoded | coded");
    ber->add_option("--snr-list", snr_list, "comma-separated Eb/N0 grid in dB");
    ber->add_option("--max-vectors", cfg.max_vectors, "uncoded vector budget per point");
    ber->add_option("--max-frames", cfg.max_frames, "coded frame budget per point");
    ber->add_option("--target-errors", cfg.target_errors, "bit errors to stop a point");
    ber->add_option("--ldpc-seed", cfg.ldpc_seed, "parity-check construction seed");
    ber->add_option("--ldpc-iters", cfg.ldpc_iters, "decoder iterations");

    auto* exp = app.add_subcommand("export-labeling", "write labeling rows as CSV");
    add_common(exp, cfg);

    auto* summarize = app.add_subcommand("summarize", "per-constellation metric table");
    summarize->add_option("--out", cfg.out_dir, "output directory");

    auto* defaults = app.add_subcommand("defaults", "print default configuration");

    CLI11_PARSE(app, argc, argv);

    try {
        if (defaults->parsed()) {
            std::fputs(xqam::ExperimentConfig{}.to_kv_text().c_str(), stdout);
            return 0;
        }
        if (verify->parsed()) cfg.kind = "verify-gray";
        else if (papr->parsed()) cfg.kind = "papr";
        else if (exp->parsed()) cfg.kind = "export-labeling";
        else if (summarize->parsed()) cfg.kind = "summarize";
        else if (ber->parsed()) {
            if (!mode.empty() && mode != "coded" && mode != "uncoded")
                throw std::runtime_error("ber --mode must be coded or uncoded");
            if (!mode.empty())
                cfg.kind = mode == "coded" ? "ber-coded" : "ber-uncoded";
            else if (cfg.kind != "ber-coded")
                cfg.kind = "ber-uncoded";
        }
        if (!snr_list.empty()) cfg.apply_kv("snr_db", snr_list);
        return xqam::run(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
