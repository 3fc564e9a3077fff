#pragma once

#include <string_view>

namespace qprobe {

/// Evaluates a real-valued literal that may use `pi` arithmetic, e.g. "-pi/2",
/// "3*pi/4", "0.625", "(pi - 1) / 2". Supports + - * /, unary minus and
/// parentheses. Throws std::invalid_argument on malformed input.
double parse_angle(std::string_view text);

}  // namespace qprobe
