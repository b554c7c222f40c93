#ifndef PROPALG_CHECKED_HPP
#define PROPALG_CHECKED_HPP

#include <cstdint>

#include "propalg/error.hpp"

namespace propalg {

/// Element value.  Tabular algebras use 0-based universe indices;
/// integer-formula algebras use the integer itself.
using Elem = std::int64_t;

/// Exact signed arithmetic: every operation either returns the true value
/// or throws OverflowError.  Nothing is ever silently truncated.
inline Elem checked_add(Elem a, Elem b) {
    Elem r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer addition left the exact range");
    return r;
}

inline Elem checked_sub(Elem a, Elem b) {
    Elem r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("integer subtraction left the exact range");
    return r;
}

inline Elem checked_mul(Elem a, Elem b) {
    Elem r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer multiplication left the exact range");
    return r;
}

} // namespace propalg

#endif
