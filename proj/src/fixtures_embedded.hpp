#pragma once

#include <span>
#include <string_view>

namespace unitfrac::detail {

/// Raw text of every file under data/fixtures, compiled in at build time.
std::span<const std::string_view> embedded_fixtures();

}  // namespace unitfrac::detail
