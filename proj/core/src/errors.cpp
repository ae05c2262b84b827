#include "bellmax/errors.hpp"

#include <array>
#include <charconv>

namespace bellmax::detail {

void throw_precondition(const std::string& what) { throw PreconditionError(what); }
void throw_domain(const std::string& what) { throw DomainError(what); }
void throw_numerical(const std::string& what) { throw NumericalError(what); }

std::string fmt_num(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) return "?";
  return std::string(buf.data(), end);
}

}  // namespace bellmax::detail
