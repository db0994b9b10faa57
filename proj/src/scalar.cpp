#include "qaut/scalar.hpp"

#include <cctype>
#include <cmath>

namespace qaut {

namespace {

std::string rational_string(const mpq_class& q) {
  // mpq_class is kept canonical (positive denominator, reduced).
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool valid_rational_text(const std::string& s) {
  if (s.empty()) return false;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') pos++;
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
  bool seen_slash = false;
  for (; pos < s.size(); pos++) {
    if (s[pos] == '/') {
      if (seen_slash || pos + 1 >= s.size()) return false;
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
  }
  return true;
}

mpq_class parse_rational(const std::string& text) {
  if (!valid_rational_text(text)) fail(Errc::ParseError, "bad rational '" + text + "'");
  // GMP's set_str accepts '-' but not a leading '+'.
  std::string t = text[0] == '+' ? text.substr(1) : text;
  mpq_class q;
  if (q.set_str(t, 10) != 0) fail(Errc::ParseError, "bad rational '" + text + "'");
  if (q.get_den() == 0) fail(Errc::ParseError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::optional<mpq_class> sqrt_rational(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn, rd);
}

}  // namespace

std::string to_string(const Exact& v) {
  if (v.is_zero()) return "0";
  if (v.is_one()) return "1";
  std::string out = rational_string(v.re);
  if (v.im >= 0) out += "+";
  out += rational_string(v.im) + "*i";
  return out;
}

Exact parse_scalar(const std::string& text) {
  std::string s = strip_spaces(text);
  if (s.empty()) fail(Errc::ParseError, "empty scalar");
  if (s == "0") return Exact();
  if (s == "1") return Exact(1);

  // Split off a trailing imaginary term if present: ...[+|-]c/d*i or i forms.
  bool has_i = !s.empty() && s.back() == 'i';
  if (!has_i) return Exact(parse_rational(s));

  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  // Find the split point: the last top-level sign that separates the real
  // part from the imaginary coefficient (not the leading sign).
  size_t split = std::string::npos;
  for (size_t pos = body.size(); pos-- > 1;) {
    if ((body[pos] == '+' || body[pos] == '-') && body[pos - 1] != '/' && body[pos - 1] != '+' &&
        body[pos - 1] != '-') {
      split = pos;
      break;
    }
  }
  std::string re_text, im_text;
  if (split == std::string::npos) {
    im_text = body;
  } else {
    re_text = body.substr(0, split);
    im_text = body.substr(split);
  }
  mpq_class re = re_text.empty() ? mpq_class(0) : parse_rational(re_text);
  mpq_class im;
  if (im_text.empty() || im_text == "+")
    im = 1;
  else if (im_text == "-")
    im = -1;
  else
    im = parse_rational(im_text);
  return Exact(re, im);
}

std::optional<Exact> sqrt_exact(const Exact& z) {
  if (z.is_zero()) return Exact();
  if (z.im == 0) {
    if (z.re > 0) {
      auto r = sqrt_rational(z.re);
      if (!r) return std::nullopt;
      return Exact(*r);
    }
    auto r = sqrt_rational(mpq_class(-z.re));
    if (!r) return std::nullopt;
    return Exact(mpq_class(0), *r);
  }
  auto r = sqrt_rational(z.norm());
  if (!r) return std::nullopt;
  auto c = sqrt_rational(mpq_class((z.re + *r) / 2));
  if (!c || *c == 0) return std::nullopt;
  mpq_class d = z.im / (2 * *c);
  Exact w(*c, d);
  if (w * w == z) return w;
  return std::nullopt;
}

UnitQuadraticRoots solve_unit_quadratic(const Exact& s) {
  UnitQuadraticRoots out;
  Exact disc = s * s - Exact(4);
  Approx sd = std::sqrt(disc.embed());
  Approx sa = s.embed();
  out.approx1 = (sa + sd) / 2.0;
  out.approx2 = (sa - sd) / 2.0;
  if (auto w = sqrt_exact(disc)) {
    out.exact = true;
    out.root1 = (s + *w) / Exact(2);
    out.root2 = (s - *w) / Exact(2);
    out.approx1 = out.root1.embed();
    out.approx2 = out.root2.embed();
  }
  return out;
}

UnitQuadraticRoots solve_unit_quadratic(const Approx& s) {
  UnitQuadraticRoots out;
  Approx sd = std::sqrt(s * s - 4.0);
  out.approx1 = (s + sd) / 2.0;
  out.approx2 = (s - sd) / 2.0;
  return out;
}

std::optional<int> root_of_unity_order(const Exact& q, int bound) {
  if (q.is_zero()) fail(Errc::ZeroInput, "zero has no multiplicative order");
  if (bound < 2) fail(Errc::UsageError, "order bound must be at least 2");
  // A root of unity has |q| = 1; checking the exact norm first keeps
  // repeated multiplication from growing numerators for nothing.
  if (q.norm() != 1) return std::nullopt;
  Exact p(1);
  for (int k = 1; k <= bound; k++) {
    p *= q;
    if (p.is_one()) return k;
  }
  return std::nullopt;
}

std::optional<int> root_of_unity_order(const Approx& q, int bound, double tol) {
  if (std::abs(q) == 0.0) fail(Errc::ZeroInput, "zero has no multiplicative order");
  if (bound < 2) fail(Errc::UsageError, "order bound must be at least 2");
  Approx p(1.0, 0.0);
  for (int k = 1; k <= bound; k++) {
    p *= q;
    if (std::abs(p - Approx(1.0, 0.0)) < tol) return k;
  }
  return std::nullopt;
}

namespace {

QClass classify_from_order(std::optional<int> ord) {
  QClass out;
  if (!ord || *ord <= 2) {
    out.kind = QClass::Kind::Generic;
    return out;
  }
  out.kind = QClass::Kind::NonGeneric;
  out.order_N = *ord;
  out.N0 = (*ord % 2 == 1) ? *ord : *ord / 2;
  if (out.N0 % 2 == 0) {
    out.parity = QClass::Parity::Even;
    out.N1 = out.N0 / 2;
  } else {
    out.parity = QClass::Parity::Odd;
    out.N1 = (out.N0 + 1) / 2;
  }
  return out;
}

}  // namespace

QClass classify_q(const Exact& q, int bound) { return classify_from_order(root_of_unity_order(q, bound)); }

QClass classify_q(const Approx& q, int bound, double tol) {
  return classify_from_order(root_of_unity_order(q, bound, tol));
}

}  // namespace qaut
