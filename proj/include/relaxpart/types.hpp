#ifndef RELAXPART_TYPES_HPP
#define RELAXPART_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace relaxpart {

using Index = std::uint32_t;
using BlockId = std::uint32_t;
using Weight = double;

// Raised when an hMetis (or partition) file cannot be read. `line()` is 1-based,
// 0 when the problem is not tied to a specific line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Iterates produced NaN/Inf.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::size_t iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

}  // namespace relaxpart

#endif  // RELAXPART_TYPES_HPP
