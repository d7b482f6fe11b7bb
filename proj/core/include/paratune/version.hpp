#pragma once

#include <string_view>

namespace paratune {

inline constexpr std::string_view kToolkitName = "paratune";
inline constexpr std::string_view kToolkitVersion = "1.0.0";

// "paratune-1.0.0", used in BLEU signatures and report headers.
inline constexpr std::string_view kToolkitId = "paratune-1.0.0";

}  // namespace paratune
