#include "cspw/tuple.hpp"

#include "cspw/errors.hpp"

namespace cspw {

std::string format_tuple(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

std::uint64_t encode_tuple(const Tuple& t, int d) {
  std::uint64_t code = 0;
  for (int v : t) code = code * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(v);
  return code;
}

Tuple decode_tuple(std::uint64_t code, int d, int n) {
  Tuple t(n);
  for (int i = n - 1; i >= 0; --i) {
    t[i] = static_cast<int>(code % static_cast<std::uint64_t>(d));
    code /= static_cast<std::uint64_t>(d);
  }
  return t;
}

std::uint64_t checked_power(int d, int n, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > cap / static_cast<std::uint64_t>(d)) {
      throw BudgetExceeded(std::to_string(d) + "^" + std::to_string(n) + " exceeds budget " + std::to_string(cap));
    }
    r *= static_cast<std::uint64_t>(d);
  }
  if (r > cap) throw BudgetExceeded(std::to_string(d) + "^" + std::to_string(n) + " exceeds budget " + std::to_string(cap));
  return r;
}

bool next_tuple(Tuple& t, int d) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < d) return true;
    t[i] = 0;
  }
  return false;
}

}  // namespace cspw
