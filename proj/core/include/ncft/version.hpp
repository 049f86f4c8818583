#pragma once

#include <string_view>

namespace ncft {

std::string_view version();

}  // namespace ncft
