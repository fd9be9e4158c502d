#pragma once

#include <filesystem>

#include "dwl/config.hpp"

#include "json.hpp"

namespace dwl {

struct DispatchResult {
  int exit_code = 0;  // 0 pass, 2 failed built-in check
  nlohmann::json summary;
};

/// Runs the named experiment, writes its CSV artifacts and summary.json
/// (with a hash manifest of every emitted file) into out_dir. Module
/// errors propagate as exceptions; the CLI maps them to exit 1.
DispatchResult dispatch(const ExperimentConfig& cfg, ExperimentKind kind,
                        const std::filesystem::path& out_dir, int threads = 1);

}  // namespace dwl
