#pragma once

namespace nbarrier::cli {

/// Entry point shared by the binary and the tests. Exit codes:
///   0  success
///   1  domain errors (NotBistable, OutsideWindow, an INCONCLUSIVE verdict
///      under --require-certified, a failed check under --require-pass)
///   2  usage errors (bad flags, malformed or unknown config keys)
int run(int argc, const char* const* argv);

} // namespace nbarrier::cli
