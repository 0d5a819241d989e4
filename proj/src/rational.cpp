#include "entropy_banach/rational.hpp"

#include <cmath>

#include "entropy_banach/errors.hpp"

namespace eb {

IntervalQ::IntervalQ(Q lo_, Q hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi < lo) throw DomainError("interval with lo > hi");
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Q parse_q(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                          : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  std::string n(num.front() == '+' ? num.substr(1) : num);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Q out(zn, zd);
  out.canonicalize();
  return out;
}

std::string format_q(const Q& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

double to_double(const Q& x) { return x.get_d(); }

double log_q(const Q& x) {
  if (sgn(x) <= 0) throw DomainError("log of non-positive rational");
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

Q round_dyadic(double x, int bits) {
  if (!std::isfinite(x)) throw NumericError("non-finite value");
  double scaled = std::nearbyint(std::ldexp(x, bits));
  Q out(scaled);
  return out / pow2(bits);
}

Q ceil_dyadic(double x, int bits) {
  if (!std::isfinite(x)) throw NumericError("non-finite value");
  Q out(std::ceil(std::ldexp(x, bits)));
  return out / pow2(bits);
}

Q pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Q(p);
  return Q(mpz_class(1), p);
}

Q pow_q(const Q& base, unsigned long e) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  Q out(n, d);
  out.canonicalize();
  return out;
}

Q abs_q(const Q& x) { return sgn(x) < 0 ? Q(-x) : x; }

}  // namespace eb
