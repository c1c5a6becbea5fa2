#include "threefold/rational.hpp"

#include <cctype>

namespace threefold {
namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

std::string join_violations(const std::vector<std::string>& violations) {
  std::string message = "validation failed:";
  for (const auto& v : violations) {
    message += "\n  - " + v;
  }
  return message;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const Integer num = parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  const Integer den = parse_integer(den_text, text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  if (is_integer(value)) {
    return numerator(value).str();
  }
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const Integer& value) { return value.str(); }

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

Integer numerator(const Rational& value) { return boost::multiprecision::numerator(value); }

Integer denominator(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

Integer to_integer(const Rational& value) {
  if (!is_integer(value)) {
    throw std::domain_error("expected an integer, got " + to_string(value));
  }
  return numerator(value);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace threefold
