#pragma once

#include <iosfwd>

namespace simest {

/// Fast end-to-end checks of the estimators against closed forms, one
/// PASS/FAIL line each. Returns the number of failed checks.
int run_selftest(std::ostream& out, unsigned threads = 1);

}  // namespace simest
