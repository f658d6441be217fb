#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ballotree {

// Expanded leaf counts outgrow 64 bits after a few recursion levels of the
// lower-bound family, so they are tracked in arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace ballotree
