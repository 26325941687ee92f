#pragma once

namespace ivq {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever the layout of an emitted CSV/JSON artifact changes.
inline constexpr int kSchemaVersion = 1;

}  // namespace ivq
