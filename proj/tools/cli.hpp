#pragma once

namespace netcrypt {

// Exit codes: 0 success, 2 configuration error, 3 key/provisioning error,
// 4 arithmetic overflow, 5 verification failure.
int run_cli(int argc, const char* const* argv);

}  // namespace netcrypt
