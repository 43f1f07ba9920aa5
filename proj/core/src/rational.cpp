#include "channel/rational.hpp"

#include "channel/errors.hpp"

namespace chan {

Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  return den < 0 ? Rational(Integer(-num), Integer(-den)) : Rational(num, den);
}

std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return ratio(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidArgument("malformed rational: " + s);
  }
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const GaussianRational& z) {
  std::string im = to_string(z.im);
  if (im.front() != '-') im = "+" + im;
  return to_string(z.re) + im + "i";
}

}  // namespace chan
