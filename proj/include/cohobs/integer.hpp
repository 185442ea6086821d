#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cohobs {

/// Arbitrary-precision integer used for all exact computations.
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Integer& x) { return x.convert_to<double>(); }

inline std::string to_string(const Integer& x) { return x.str(); }

}  // namespace cohobs
