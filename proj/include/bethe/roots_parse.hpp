#ifndef BETHE_ROOTS_PARSE_HPP
#define BETHE_ROOTS_PARSE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "bethe/fock.hpp"

namespace bethe {

/// Raised on malformed rapidity lists; carries the 1-based token position.
class RootsParseError : public std::runtime_error {
 public:
  RootsParseError(int token, const std::string& what)
      : std::runtime_error("token " + std::to_string(token) + ": " + what), token_(token) {}
  int token() const { return token_; }

 private:
  int token_ = 0;
};

/// Parses a comma-separated list of complex rapidities written as a+bi
/// (also plain reals and pure imaginaries, e.g. "1.5", "-0.5i").
std::vector<Complex> parse_offshell_roots(const std::string& text);

}  // namespace bethe

#endif
