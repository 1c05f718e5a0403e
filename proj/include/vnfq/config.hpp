#pragma once

#include <string>

#include "vnfq/model.hpp"

namespace vnfq {

// Config files are plain "key = value" lines; '#' starts a comment. Keys:
// p, alpha, mu1..mu6, M1..M5. All thirteen are required, unknown or repeated
// keys are an error. Values are parsed as exact decimals (correctly rounded),
// and write_config emits shortest round-trip decimals so a parsed config
// re-emits bit-identically.

SystemParams parse_config(const std::string& text);
SystemParams load_config(const std::string& path);

std::string format_config(const SystemParams& params);
void write_config(const SystemParams& params, const std::string& path);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

} // namespace vnfq
