#include "ckb/scalar.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace ckb {

std::string Scalar::str() const {
  if (exact_) return rational_str(rat_);
  std::ostringstream os;
  os.precision(17);
  os << approx_;
  return os.str();
}

std::string rational_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Scalar sqrt_scalar(const Scalar& s) {
  if (s.exact()) {
    const Rat& r = s.rat();
    if (r < 0) throw DomainError("sqrt of negative value");
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    Int sn = boost::multiprecision::sqrt(num);
    Int sd = boost::multiprecision::sqrt(den);
    if (sn * sn == num && sd * sd == den) return Scalar(Rat(sn, sd));
  }
  double v = s.as_double();
  if (v < 0) throw DomainError("sqrt of negative value");
  return Scalar::approx(std::sqrt(v));
}

namespace {

bool is_integer_text(const std::string& t) {
  if (t.empty()) return false;
  size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_text(text)) throw ParseError("not a rational: '" + text + "'");
    return Rat(Int(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den))
    throw ParseError("not a rational: '" + text + "'");
  Int d(den);
  if (d == 0) throw ParseError("zero denominator: '" + text + "'");
  return Rat(Int(num), d);
}

Scalar parse_scalar(const std::string& text) {
  if (text.find('/') != std::string::npos || is_integer_text(text))
    return Scalar(parse_rational(text));
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw ParseError("not a number: '" + text + "'");
    return Scalar::approx(v);
  } catch (const std::invalid_argument&) {
    throw ParseError("not a number: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range: '" + text + "'");
  }
}

}  // namespace ckb
