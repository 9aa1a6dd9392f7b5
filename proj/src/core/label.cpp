#include "phasic/core/label.hpp"

#include "phasic/core/error.hpp"

#include <string>

namespace phasic {

std::string_view label_name(Label l) { return l == Label::Release ? "release" : "no-release"; }

Label parse_label(std::string_view s) {
    if (s == "release" || s == "1") return Label::Release;
    if (s == "no-release" || s == "0") return Label::NoRelease;
    throw InvalidArgument("unknown label '" + std::string(s) + "'");
}

}  // namespace phasic
