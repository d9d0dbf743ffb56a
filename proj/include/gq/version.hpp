#pragma once

namespace gq {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "gq/1";

// Global sign convention relating the two middle-associator pipelines in the
// BKS verification. Determined once against the full reflection sweep and
// frozen; a pinning test fails if it drifts.
inline constexpr int kBksSignConvention = +1;

}  // namespace gq
