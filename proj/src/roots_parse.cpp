#include "bethe/roots_parse.hpp"

#include <cctype>

namespace bethe {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

double parse_double(const std::string& s, int token) {
  if (s.empty()) throw RootsParseError(token, "empty number");
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &consumed);
  } catch (const std::exception&) {
    throw RootsParseError(token, "cannot parse '" + s + "' as a number");
  }
  if (consumed != s.size()) {
    throw RootsParseError(token, "trailing characters in '" + s + "'");
  }
  return value;
}

Complex parse_token(const std::string& raw, int token) {
  const std::string s = trim(raw);
  if (s.empty()) throw RootsParseError(token, "empty token");

  if (s.back() != 'i') return {parse_double(s, token), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  if (body.empty()) throw RootsParseError(token, "bare 'i' is not a number");

  // Split at the sign introducing the imaginary part: the last +/- that is
  // not leading and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    return {0.0, parse_double(body, token)};  // pure imaginary
  }
  const double re = parse_double(body.substr(0, split), token);
  std::string imag_text = body.substr(split);
  if (imag_text == "+" || imag_text == "-") imag_text += "1";
  return {re, parse_double(imag_text, token)};
}

}  // namespace

std::vector<Complex> parse_offshell_roots(const std::string& text) {
  std::vector<Complex> roots;
  int token = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = (comma == std::string::npos) ? text.size() : comma;
    ++token;
    roots.push_back(parse_token(text.substr(pos, end - pos), token));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return roots;
}

}  // namespace bethe
