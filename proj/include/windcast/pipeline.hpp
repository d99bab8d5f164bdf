#pragma once

#include <vector>

#include "windcast/config.hpp"

namespace windcast {

enum class Stage { simulate, spectrum, fit, forecast, evaluate, diagnose };

// Runs the requested stages over one shared data context. Artifacts land in
// cfg.output_dir; stages that need fitted models fit them on demand.
void run_pipeline(const RunConfig& cfg, const std::vector<Stage>& stages);

} // namespace windcast
