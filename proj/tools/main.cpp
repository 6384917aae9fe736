#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "windkrige/csv.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::int64_t seed = -1;
    int threads = -1;
};

void add_command(CLI::App& app, const std::string& name, const std::string& description,
                 std::function<void(const windkrige::cli::RunConfig&)> run, int& exit_code) {
    auto flags = std::make_shared<CommonFlags>();
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", flags->config_path, "run configuration file")->required();
    sub->add_option("--seed", flags->seed, "override the config seed");
    sub->add_option("--threads", flags->threads, "worker threads, 0 = auto");
    sub->callback([flags, run, &exit_code]() {
        try {
            windkrige::cli::RunConfig config = windkrige::cli::load_config(flags->config_path);
            if (flags->seed >= 0) config.seed = static_cast<std::uint64_t>(flags->seed);
            if (flags->threads >= 0) config.threads = flags->threads;
            run(config);
        } catch (const windkrige::ParseError& e) {
            std::cerr << "error: " << e.what() << '\n';
            exit_code = 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            exit_code = 1;
        }
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "windkrige: daily wind-speed fields from gridded forecasts -- per-site seasonal/AR "
        "fitting, variogram modelling, ordinary kriging of the temporal parameters, and "
        "day-ahead prediction with 95% intervals"};
    app.require_subcommand(1);

    int exit_code = 0;
    using windkrige::cli::RunConfig;
    add_command(app, "fit", "fit the temporal model per grid site and write the parameter table",
                [](const RunConfig& c) { windkrige::cli::cmd_fit(c); }, exit_code);
    add_command(app, "variogram",
                "estimate empirical semivariograms per parameter and fit theoretical models",
                [](const RunConfig& c) { windkrige::cli::cmd_variogram(c); }, exit_code);
    add_command(app, "krige", "krige every parameter over the configured raster",
                [](const RunConfig& c) { windkrige::cli::cmd_krige(c); }, exit_code);
    add_command(app, "predict", "day-ahead forecasts at the station sites from kriged parameters",
                [](const RunConfig& c) { windkrige::cli::cmd_predict(c); }, exit_code);
    add_command(app, "benchmark",
                "forecasts plus per-station error moments and PI coverage",
                [](const RunConfig& c) { windkrige::cli::cmd_benchmark(c); }, exit_code);

    CLI11_PARSE(app, argc, argv);
    return exit_code;
}
