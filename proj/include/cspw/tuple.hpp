#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cspw {

/// An element of D^n; entries are domain values 0..d-1.
using Tuple = std::vector<int>;

std::string format_tuple(const Tuple& t);

/// Mixed-radix index with coordinate 0 most significant, so index order is lexicographic order.
std::uint64_t encode_tuple(const Tuple& t, int d);
Tuple decode_tuple(std::uint64_t code, int d, int n);

/// d^n, or throws BudgetExceeded when it exceeds `cap`.
std::uint64_t checked_power(int d, int n, std::uint64_t cap);

/// Advances t to the lexicographic successor in D^n; returns false after the last tuple.
bool next_tuple(Tuple& t, int d);

}  // namespace cspw
