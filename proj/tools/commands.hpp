#pragma once

#include "config.hpp"

namespace windkrige::cli {

// Each command writes its outputs under config.output_dir and prints the
// paths it produced. Throws on failure; exit-code mapping lives in main().
void cmd_fit(const RunConfig& config);
void cmd_variogram(const RunConfig& config);
void cmd_krige(const RunConfig& config);
void cmd_predict(const RunConfig& config);
void cmd_benchmark(const RunConfig& config);

}  // namespace windkrige::cli
