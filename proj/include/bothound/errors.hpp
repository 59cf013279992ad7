#pragma once

#include <stdexcept>
#include <string>

namespace bothound {

// Problems with user-supplied inputs (unreadable files, malformed lines,
// bad configuration). The CLI maps these to exit code 2; anything else
// escaping a subcommand is treated as an internal error (exit code 3).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bothound
