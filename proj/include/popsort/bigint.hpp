#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace popsort {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace popsort
