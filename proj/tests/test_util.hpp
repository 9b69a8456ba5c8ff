#ifndef MUQ_TEST_UTIL_HPP
#define MUQ_TEST_UTIL_HPP

#include "muq/types.hpp"

#include <optional>

namespace muq::test {

template <typename Fn>
std::optional<Err> thrown_code(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace muq::test

#endif
