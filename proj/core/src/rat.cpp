#include "kpol/rat.hpp"

#include <cctype>

#include "kpol/errors.hpp"

namespace kpol {

Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

Rat rat_floor(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return Rat(q);
}

namespace {

bool valid_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  // no leading zeros except the literal "0"
  std::size_t d = (s[0] == '-') ? 1 : 0;
  if (s[d] == '0' && s.size() - d > 1) return false;
  if (s == "-0") return false;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer_token(text))
      throw ParseError("bad rational token '" + std::string(text) + "'");
    return Rat(mpz_class(std::string(text)));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!valid_integer_token(num) || !valid_integer_token(den) || den[0] == '-')
    throw ParseError("bad rational token '" + std::string(text) + "'");
  mpz_class n{std::string(num)};
  mpz_class d{std::string(den)};
  if (d <= 1)
    throw ParseError("non-canonical rational '" + std::string(text) + "'");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1)
    throw ParseError("non-canonical rational '" + std::string(text) + "'");
  Rat r;
  r.get_num() = n;
  r.get_den() = d;
  return r;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

std::string rat_vec_to_string(const std::vector<Rat>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += rat_to_string(xs[i]);
  }
  return out + ")";
}

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // rejection sampling keeps the draw unbiased and platform-independent
  std::uint64_t limit = ~0ULL - (~0ULL % bound);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

long Rng::int_in(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace kpol
