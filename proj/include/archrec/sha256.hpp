// SHA-256 used for artifact digests in the run manifest.
#pragma once

#include <string>
#include <string_view>

namespace archrec
{

// Lower-case hex digest of the given bytes.
std::string sha256_hex(std::string_view data);

}  // namespace archrec
