#pragma once

#include <stdexcept>
#include <string>

namespace covmark {

/// Invalid arguments, mismatched tables, malformed structures.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An enumeration or allocation guard was exceeded.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration cap.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File parse or format-validation failure.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace covmark
