#include "ncft/version.hpp"

namespace ncft {

std::string_view version() { return NCFT_VERSION_STRING; }

}  // namespace ncft
