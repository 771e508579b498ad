#include "gbp/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace gbp {

namespace {

BigInt parse_big(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (i == 0 && (c == '-' || c == '+')) continue;
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad integer literal: " + s);
  }
  if (s == "-" || s == "+") throw std::invalid_argument("bad integer literal: " + s);
  return BigInt(s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_big(text.substr(0, slash));
    BigInt den = parse_big(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_big(text));
  std::string head = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (head.empty() || head == "-" || head == "+") head += '0';
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad decimal literal: " + text);
  BigInt ip = parse_big(head);
  BigInt scale = 1;
  BigInt fp = 0;
  for (char c : frac) {
    scale *= 10;
    fp = fp * 10 + (c - '0');
  }
  Rational r = Rational(ip) + (neg ? -Rational(fp, scale) : Rational(fp, scale));
  return r;
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

long long floor_to_int(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return q.convert_to<long long>();
}

long long ceil_to_int(const Rational& r) { return -floor_to_int(-r); }

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational acc(1);
  Rational b = base;
  while (exp) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace gbp
