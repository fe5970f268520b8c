#pragma once

#include <optional>

#include "edm/error.hpp"

namespace testsupport {

template <typename F>
std::optional<edm::ErrorKind> error_kind_of(F&& f) {
    try {
        f();
    } catch (const edm::EdmError& e) {
        return e.kind;
    }
    return std::nullopt;
}

} // namespace testsupport
