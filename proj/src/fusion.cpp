#include "qaut/fusion.hpp"

#include <algorithm>
#include <cstdlib>

#include "qaut/error.hpp"

namespace qaut {

namespace {

void require_nonneg(int n, const char* what) {
  if (n < 0) fail(Errc::IndexOutOfRange, std::string(what) + " index must be nonnegative");
}

void require_odd(int n, const char* what) {
  if (n % 2 == 0) fail(Errc::IndexOutOfRange, std::string(what) + " index must be odd");
}

void require_even(int n, const char* what) {
  if (n % 2 != 0) fail(Errc::IndexOutOfRange, std::string(what) + " index must be even");
}

}  // namespace

SimpleLabel generic_w(int n) {
  require_nonneg(n, "W");
  return SimpleLabel{SimpleLabel::Kind::GenericW, n, 0};
}

SimpleLabel even_w(int n) {
  require_nonneg(n, "W");
  return SimpleLabel{SimpleLabel::Kind::EvenW, n, 0};
}

SimpleLabel even_v(int m) {
  require_nonneg(m, "V");
  if (m == 0) return even_w(0);  // V_0 = W_0 = C
  return SimpleLabel{SimpleLabel::Kind::EvenV, m, 0};
}

SimpleLabel even_wv(int n, int m) {
  require_nonneg(n, "W");
  require_nonneg(m, "V");
  if (m == 0) return even_w(n);
  if (n == 0) return even_v(m);
  return SimpleLabel{SimpleLabel::Kind::EvenWV, n, m};
}

SimpleLabel odd_v(int n) {
  require_nonneg(n, "V");
  require_even(n, "V");
  return SimpleLabel{SimpleLabel::Kind::OddV, n, 0};
}

SimpleLabel odd_u(int n) {
  require_nonneg(n, "U");
  require_even(n, "U");
  if (n == 0) return odd_v(0);  // U_0 = V_0 = C
  return SimpleLabel{SimpleLabel::Kind::OddU, n, 0};
}

SimpleLabel odd_vu(int n, int m) {
  require_nonneg(n, "V");
  require_nonneg(m, "U");
  require_odd(n, "V");
  require_odd(m, "U");
  return SimpleLabel{SimpleLabel::Kind::OddVU, n, m};
}

long long label_dim(const SimpleLabel& label) {
  switch (label.kind) {
    case SimpleLabel::Kind::GenericW:
    case SimpleLabel::Kind::EvenW:
      return 2LL * label.a + 1;
    case SimpleLabel::Kind::EvenV:
    case SimpleLabel::Kind::OddV:
    case SimpleLabel::Kind::OddU:
      return label.a + 1LL;
    case SimpleLabel::Kind::EvenWV:
      return (2LL * label.a + 1) * (label.b + 1);
    case SimpleLabel::Kind::OddVU:
      return (label.a + 1LL) * (label.b + 1);
  }
  std::abort();
}

std::string to_string(const SimpleLabel& label) {
  switch (label.kind) {
    case SimpleLabel::Kind::GenericW:
    case SimpleLabel::Kind::EvenW:
      return "W" + std::to_string(label.a);
    case SimpleLabel::Kind::EvenV:
    case SimpleLabel::Kind::OddV:
      return "V" + std::to_string(label.a);
    case SimpleLabel::Kind::OddU:
      return "U" + std::to_string(label.a);
    case SimpleLabel::Kind::EvenWV:
      return "W" + std::to_string(label.a) + "*V" + std::to_string(label.b);
    case SimpleLabel::Kind::OddVU:
      return "V" + std::to_string(label.a) + "*U" + std::to_string(label.b);
  }
  std::abort();
}

void add_label(FusionElement& x, const SimpleLabel& label, long long mult) {
  if (mult == 0) return;
  auto it = x.find(label);
  const long long next = (it == x.end() ? 0 : it->second) + mult;
  if (next < 0) fail(Errc::UsageError, "negative multiplicity");
  if (next == 0) {
    if (it != x.end()) x.erase(it);
    return;
  }
  if (it == x.end())
    x.emplace(label, next);
  else
    it->second = next;
}

long long dim(const FusionElement& x) {
  long long total = 0;
  for (const auto& [label, mult] : x) total += mult * label_dim(label);
  return total;
}

std::string to_string(const FusionElement& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [label, mult] : x) {
    if (!out.empty()) out += " + ";
    if (mult != 1) out += std::to_string(mult) + "*";
    out += to_string(label);
  }
  return out;
}

namespace {

bool is_unit(const SimpleLabel& label) {
  return label.a == 0 && label.b == 0 &&
         (label.kind == SimpleLabel::Kind::GenericW || label.kind == SimpleLabel::Kind::EvenW ||
          label.kind == SimpleLabel::Kind::OddV);
}

void check_even_label(const SimpleLabel& label, const Regime& regime) {
  switch (label.kind) {
    case SimpleLabel::Kind::EvenW:
    case SimpleLabel::Kind::EvenWV:
      if (label.a > regime.N1 - 1)
        fail(Errc::IndexOutOfRegime,
             "W" + std::to_string(label.a) + " exceeds the even-regime bound W" +
                 std::to_string(regime.N1 - 1));
      return;
    case SimpleLabel::Kind::EvenV:
      return;
    default:
      fail(Errc::IndexOutOfRegime, "label " + to_string(label) + " is not in the even alphabet");
  }
}

void check_odd_label(const SimpleLabel& label, const Regime& regime) {
  const int bound = regime.N0() - 1;
  switch (label.kind) {
    case SimpleLabel::Kind::OddV:
      return;
    case SimpleLabel::Kind::OddU:
      if (label.a > bound)
        fail(Errc::IndexOutOfRegime,
             "U" + std::to_string(label.a) + " exceeds the odd-regime bound U" +
                 std::to_string(bound));
      return;
    case SimpleLabel::Kind::OddVU:
      if (label.b > bound)
        fail(Errc::IndexOutOfRegime,
             "U" + std::to_string(label.b) + " exceeds the odd-regime bound U" +
                 std::to_string(bound));
      return;
    default:
      fail(Errc::IndexOutOfRegime, "label " + to_string(label) + " is not in the odd alphabet");
  }
}

// Range |a-b|, |a-b|+2, ..., a+b of the single-step recursions.
template <typename Emit>
void range_step2(int a, int b, Emit emit) {
  for (int k = std::abs(a - b); k <= a + b; k += 2) emit(k);
}

std::optional<FusionElement> even_pair(const Regime& regime, SimpleLabel x, SimpleLabel y) {
  using K = SimpleLabel::Kind;
  if (is_unit(x)) return FusionElement{{y, 1}};
  if (is_unit(y)) return FusionElement{{x, 1}};
  if (x.kind > y.kind) std::swap(x, y);  // the displayed rules all commute

  FusionElement out;
  if (x.kind == K::EvenW && y.kind == K::EvenW) {
    if (x.a != 1 && y.a != 1) return std::nullopt;
    const int n = (x.a == 1) ? y.a : x.a;
    if (n > regime.N1 - 2) return std::nullopt;  // W_{N1-1} (x) W_1 is not semisimple
    add_label(out, even_w(n - 1));
    add_label(out, even_w(n));
    add_label(out, even_w(n + 1));
    return out;
  }
  if (x.kind == K::EvenW && y.kind == K::EvenV) {
    add_label(out, even_wv(x.a, y.a));
    return out;
  }
  if (x.kind == K::EvenV && y.kind == K::EvenV) {
    range_step2(x.a, y.a, [&](int k) { add_label(out, even_v(k)); });
    return out;
  }
  if (x.kind == K::EvenW && y.kind == K::EvenWV) {
    if (x.a != 1 || y.a > regime.N1 - 2) return std::nullopt;
    add_label(out, even_wv(y.a - 1, y.b));
    add_label(out, even_wv(y.a, y.b));
    add_label(out, even_wv(y.a + 1, y.b));
    return out;
  }
  if (x.kind == K::EvenV && y.kind == K::EvenWV) {
    range_step2(x.a, y.b, [&](int k) { add_label(out, even_wv(y.a, k)); });
    return out;
  }
  return std::nullopt;  // pair (x) pair
}

std::optional<FusionElement> odd_pair(const Regime& regime, SimpleLabel x, SimpleLabel y) {
  using K = SimpleLabel::Kind;
  if (is_unit(x)) return FusionElement{{y, 1}};
  if (is_unit(y)) return FusionElement{{x, 1}};
  if (x.kind > y.kind) std::swap(x, y);

  const int bound = regime.N0() - 1;
  FusionElement out;
  if (x.kind == K::OddV && y.kind == K::OddV) {
    range_step2(x.a, y.a, [&](int k) { add_label(out, odd_v(k)); });
    return out;
  }
  if (x.kind == K::OddV && y.kind == K::OddU) return std::nullopt;
  if (x.kind == K::OddU && y.kind == K::OddU) {
    if (x.a + y.a > bound) return std::nullopt;  // meets the non-semisimple boundary
    range_step2(x.a, y.a, [&](int k) { add_label(out, odd_u(k)); });
    return out;
  }
  if (x.kind == K::OddV && y.kind == K::OddVU) {
    range_step2(x.a, y.a, [&](int k) { add_label(out, odd_vu(k, y.b)); });
    return out;
  }
  if (x.kind == K::OddU && y.kind == K::OddVU) {
    if (x.a + y.b > bound) return std::nullopt;
    range_step2(x.a, y.b, [&](int k) { add_label(out, odd_vu(y.a, k)); });
    return out;
  }
  return std::nullopt;  // pair (x) pair
}

}  // namespace

FusionElement tensor_generic(const FusionElement& x, const FusionElement& y) {
  for (const auto* side : {&x, &y})
    for (const auto& [label, mult] : *side)
      if (label.kind != SimpleLabel::Kind::GenericW)
        fail(Errc::MixedRegime,
             "generic tensor product accepts W labels only, got " + to_string(label));
  FusionElement out;
  for (const auto& [lx, mx] : x)
    for (const auto& [ly, my] : y)
      for (int k = std::abs(lx.a - ly.a); k <= lx.a + ly.a; ++k)
        add_label(out, generic_w(k), mx * my);
  return out;
}

std::optional<FusionElement> tensor_nongeneric(const Regime& regime, const FusionElement& x,
                                               const FusionElement& y) {
  if (regime.N1 < 1) fail(Errc::UsageError, "regime requires N1 >= 1");
  for (const auto* side : {&x, &y})
    for (const auto& [label, mult] : *side)
      if (regime.kind == RegimeKind::Even)
        check_even_label(label, regime);
      else
        check_odd_label(label, regime);

  FusionElement out;
  for (const auto& [lx, mx] : x)
    for (const auto& [ly, my] : y) {
      std::optional<FusionElement> pair = regime.kind == RegimeKind::Even
                                              ? even_pair(regime, lx, ly)
                                              : odd_pair(regime, lx, ly);
      if (!pair) return std::nullopt;
      for (const auto& [label, mult] : *pair) add_label(out, label, mx * my * mult);
    }
  return out;
}

FiltrationReport filtration_report(const Regime& regime) {
  if (regime.N1 < 2) fail(Errc::UsageError, "filtration requires N1 >= 2");
  FiltrationReport rep;
  rep.regime = regime;
  if (regime.kind == RegimeKind::Even) {
    const int n = regime.N1 - 1;
    rep.product = "W" + std::to_string(n) + "*W1";
    rep.product_dim = (2LL * n + 1) * 3;
    FusionElement bottom;
    add_label(bottom, even_w(n - 1));
    add_label(bottom, even_w(n));
    rep.layers.push_back({bottom, dim(bottom)});
    rep.layers.push_back({{{even_v(1), 1}}, 2});
    rep.layers.push_back({{{even_w(n), 1}}, 2LL * n + 1});
  } else {
    const int n = 2 * (regime.N1 - 1);
    rep.product = "U" + std::to_string(n) + "*U2";
    rep.product_dim = (n + 1LL) * 3;
    FusionElement edge{{odd_u(2 * (regime.N1 - 2)), 1}};
    rep.layers.push_back({edge, dim(edge)});
    rep.layers.push_back({{{odd_vu(1, 1), 1}}, 4});
    rep.layers.push_back({edge, dim(edge)});
  }
  for (const FiltrationLayer& layer : rep.layers) rep.layer_dim_sum += layer.dim;
  rep.audit_ok = rep.layer_dim_sum == rep.product_dim;
  return rep;
}

DeformationReport deformation_type_report(const MultiMatrix& E, int bound, double tol) {
  const MeasureReport measure = E.measure_report();
  if (!measure.normalizable)
    fail(Errc::NotNormalizable, "the trace form is not normalizable; no deformation parameter");
  if (E.total_dim() < 4)
    fail(Errc::DimensionTooSmall, "deformation types need algebra dimension at least 4, got " +
                                      std::to_string(E.total_dim()));

  DeformationReport rep;
  const QParameterResult qp = E.q_parameter();
  rep.s = qp.s;
  rep.sign_ambiguity = qp.sign_ambiguity;
  rep.q_candidates = qp.roots;
  rep.q_class = qp.roots.exact ? classify_q(qp.roots.root1, bound)
                               : classify_q(qp.roots.approx1, bound, tol);
  rep.cosemisimple = rep.q_class.kind == QClass::Kind::Generic;
  if (rep.cosemisimple) {
    rep.alphabet = {"W[n], n >= 0"};
    return rep;
  }
  const bool even = rep.q_class.parity == QClass::Parity::Even;
  rep.regime = Regime{even ? RegimeKind::Even : RegimeKind::Odd, rep.q_class.N1};
  if (even) {
    const std::string top = std::to_string(rep.q_class.N1 - 1);
    rep.alphabet = {"W[n], n = 0.." + top, "V[m], m >= 0", "W[n]*V[m]"};
  } else {
    const std::string top = std::to_string(rep.regime->N0() - 1);
    rep.alphabet = {"V[2n], n >= 0", "U[2n], 2n <= " + top, "V[2n+1]*U[2m+1], 2m+1 <= " + top};
  }
  return rep;
}

}  // namespace qaut
