#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polydet {

using Residue = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

// Per-axis lengths of a dense tensor, outermost axis first.
using Shape = std::vector<std::size_t>;

}  // namespace polydet
