#pragma once

#include <filesystem>

namespace e2sieve {

/// Data directory holding coefficient vectors and tuples. The environment
/// variable E2SIEVE_FIXTURE_DIR overrides the build-time location.
std::filesystem::path fixture_dir();

}  // namespace e2sieve
