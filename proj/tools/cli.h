#pragma once

/// Batch front end. Returns 0 on success, 1 on usage errors, 2 on data
/// errors. Exposed as a function so tests can drive subcommands directly.
namespace phasevox::cli {

int dispatch(int argc, const char* const* argv);

}  // namespace phasevox::cli
