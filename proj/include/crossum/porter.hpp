#pragma once

#include <string>
#include <string_view>

namespace crossum {

/// Porter (1980) suffix stripping, original rule set without later
/// extensions. Expects a lowercase ASCII word.
std::string porter_stem(std::string_view word);

}  // namespace crossum
