#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "normalproj/grading.hpp"

namespace normalproj::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvalidSurface = 2,
    kDegenerate = 3,
    kHashMismatch = 4,
    kFailure = 5,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Reference (rows, cols) of the matrix at the lowest admissible degree for a
/// class, when tabulated.
std::optional<std::pair<int, int>> expected_shape(SpaceKind kind, const MultiDegree& degree_d, bool rational);

}  // namespace normalproj::cli
