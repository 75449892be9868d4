#pragma once

#include <iosfwd>

namespace amice {

// Runs the invariant suite at small parameters, one "ok"/"FAIL" line per
// group. Returns true when every group passes.
bool run_selftest(std::ostream& out);

} // namespace amice
