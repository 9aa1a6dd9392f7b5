#pragma once

#include <string_view>

namespace phasic {

enum class Label { NoRelease = 0, Release = 1 };

/// "release" / "no-release".
std::string_view label_name(Label l);
/// Accepts the names above or 1 / 0.
Label parse_label(std::string_view s);

}  // namespace phasic
