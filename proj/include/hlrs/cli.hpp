#pragma once

namespace hlrs::cli {

// Exit codes: 0 success, 1 domain/usage error, 2 failed verification.
int run(int argc, char** argv);

}  // namespace hlrs::cli
