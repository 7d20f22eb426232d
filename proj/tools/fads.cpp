// Command line front end for the mispricing model toolkit.
//
//   fads simulate --config run.cfg --out results/
//   fads value    --config run.cfg
//   fads sweep    --config run.cfg --out sweeps/
//   fads verify   --config run.cfg --seed 7
//
// Flags override the corresponding config keys. FADS_LOG=debug|info raises
// stderr verbosity.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "fads/commands.hpp"
#include "fads/config.hpp"

namespace {

void print_usage() {
    std::puts(
        "usage: fads <command> --config <path> [options]\n"
        "\n"
        "commands:\n"
        "  simulate   write sample paths, filter and wealth trajectories as CSV\n"
        "  value      write closed-form and asymptotic value report as JSON\n"
        "  sweep      write a value report per (lambda, p, gamma, T) tuple as CSV\n"
        "  verify     run the verification gate suite and write its report\n"
        "\n"
        "options:\n"
        "  --config <path>   run configuration file (required)\n"
        "  --seed <u64>      override experiment.seed\n"
        "  --out <dir>       override output.dir\n"
        "  --paths <N>       override experiment.n_paths\n"
        "  --steps <n>       override experiment.n_steps\n"
        "  --threads <k>     override experiment.threads\n"
        "  -h, --help        show this message");
}

struct CliArgs {
    std::string command;
    std::string config_path;
    const char* seed = nullptr;
    const char* out = nullptr;
    const char* paths = nullptr;
    const char* steps = nullptr;
    const char* threads = nullptr;
};

bool parse_args(int argc, char** argv, CliArgs& args) {
    if (argc < 2) return false;
    args.command = argv[1];
    for (int i = 2; i < argc; ++i) {
        const auto need_value = [&](const char* flag) -> const char* {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "fads: %s needs a value\n", flag);
                std::exit(2);
            }
            return argv[++i];
        };
        if (std::strcmp(argv[i], "--config") == 0) args.config_path = need_value("--config");
        else if (std::strcmp(argv[i], "--seed") == 0) args.seed = need_value("--seed");
        else if (std::strcmp(argv[i], "--out") == 0) args.out = need_value("--out");
        else if (std::strcmp(argv[i], "--paths") == 0) args.paths = need_value("--paths");
        else if (std::strcmp(argv[i], "--steps") == 0) args.steps = need_value("--steps");
        else if (std::strcmp(argv[i], "--threads") == 0) args.threads = need_value("--threads");
        else if (std::strcmp(argv[i], "-h") == 0 || std::strcmp(argv[i], "--help") == 0) {
            print_usage();
            std::exit(0);
        } else {
            std::fprintf(stderr, "fads: unknown option '%s'\n", argv[i]);
            std::exit(2);
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CliArgs args;
    if (!parse_args(argc, argv, args)) {
        print_usage();
        return 2;
    }
    if (args.command == "-h" || args.command == "--help" || args.command == "help") {
        print_usage();
        return 0;
    }
    if (args.config_path.empty()) {
        std::fprintf(stderr, "fads: --config is required\n");
        return 2;
    }

    try {
        fads::RunConfig cfg = fads::load_config(args.config_path);
        if (args.seed) cfg.experiment.seed = std::strtoull(args.seed, nullptr, 10);
        if (args.out) cfg.out_dir = args.out;
        if (args.paths) cfg.experiment.n_paths = std::strtoll(args.paths, nullptr, 10);
        if (args.steps) cfg.experiment.n_steps = static_cast<int>(std::strtol(args.steps, nullptr, 10));
        if (args.threads) cfg.experiment.threads = static_cast<int>(std::strtol(args.threads, nullptr, 10));

        if (args.command == "simulate") return fads::cmd_simulate(cfg);
        if (args.command == "value") return fads::cmd_value(cfg);
        if (args.command == "sweep") return fads::cmd_sweep(cfg);
        if (args.command == "verify") return fads::cmd_verify(cfg);

        std::fprintf(stderr, "fads: unknown command '%s'\n", args.command.c_str());
        print_usage();
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fads: %s\n", e.what());
        return 1;
    }
}
