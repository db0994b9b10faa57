#include "qaut/words.hpp"

#include <algorithm>

#include "qaut/error.hpp"

namespace qaut {

namespace {

// Sort key realizing the generator order as an ascending tuple.
std::array<int, 6> order_key(const GenIndex& g) {
  return {g.ub, g.lb, g.ui, g.li, -g.uj, -g.lj};
}

std::array<int, 6> lookup_key(const GenIndex& g) {
  return {g.ub, g.lb, g.ui, g.uj, g.li, g.lj};
}

}  // namespace

GenTable::GenTable(std::vector<int> dims_upper, std::vector<int> dims_lower)
    : dims_upper_(std::move(dims_upper)), dims_lower_(std::move(dims_lower)) {
  if (dims_upper_.empty() || dims_lower_.empty())
    fail(Errc::UsageError, "generator table needs at least one block on each side");
  for (int d : dims_upper_)
    if (d < 1) fail(Errc::UsageError, "nonpositive block dimension");
  for (int d : dims_lower_)
    if (d < 1) fail(Errc::UsageError, "nonpositive block dimension");
  for (int ub = 1; ub <= static_cast<int>(dims_upper_.size()); ++ub)
    for (int lb = 1; lb <= static_cast<int>(dims_lower_.size()); ++lb)
      for (int ui = 1; ui <= dims_upper_[ub - 1]; ++ui)
        for (int uj = 1; uj <= dims_upper_[ub - 1]; ++uj)
          for (int li = 1; li <= dims_lower_[lb - 1]; ++li)
            for (int lj = 1; lj <= dims_lower_[lb - 1]; ++lj)
              gens_.push_back(GenIndex{ui, uj, ub, li, lj, lb});
  std::sort(gens_.begin(), gens_.end(),
            [](const GenIndex& a, const GenIndex& b) { return order_key(a) < order_key(b); });
  for (int id = 0; id < static_cast<int>(gens_.size()); ++id) lookup_[lookup_key(gens_[id])] = id;
}

void GenTable::validate(const GenIndex& g) const {
  if (g.ub < 1 || g.ub > static_cast<int>(dims_upper_.size()) || g.lb < 1 ||
      g.lb > static_cast<int>(dims_lower_.size()))
    fail(Errc::ContextMismatch, "generator block index outside this pair's shape");
  const int du = dims_upper_[g.ub - 1];
  const int dl = dims_lower_[g.lb - 1];
  if (g.ui < 1 || g.ui > du || g.uj < 1 || g.uj > du || g.li < 1 || g.li > dl || g.lj < 1 ||
      g.lj > dl)
    fail(Errc::ContextMismatch, "generator entry index outside this pair's shape");
}

const GenIndex& GenTable::gen(int id) const {
  if (id < 0 || id >= size()) fail(Errc::IndexOutOfRange, "generator id out of range");
  return gens_[id];
}

int GenTable::id(const GenIndex& g) const {
  validate(g);
  return lookup_.at(lookup_key(g));
}

int GenTable::compare(const GenIndex& a, const GenIndex& b) const {
  const int ia = id(a), ib = id(b);
  return ia < ib ? -1 : (ia > ib ? 1 : 0);
}

bool monomial_less(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void add_term(NCPoly& p, const Monomial& m, const Exact& c) {
  if (c.is_zero()) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) p.erase(it);
}

NCPoly mono_poly(Monomial m, Exact c) {
  NCPoly p;
  add_term(p, std::move(m), c);
  return p;
}

NCPoly scalar_poly(const Exact& c) { return mono_poly(Monomial{}, c); }

NCPoly poly_add(const NCPoly& a, const NCPoly& b) {
  NCPoly out = a;
  for (const auto& [m, c] : b) add_term(out, m, c);
  return out;
}

NCPoly poly_sub(const NCPoly& a, const NCPoly& b) {
  NCPoly out = a;
  for (const auto& [m, c] : b) add_term(out, m, -c);
  return out;
}

NCPoly poly_scale(const Exact& c, const NCPoly& a) {
  NCPoly out;
  if (c.is_zero()) return out;
  for (const auto& [m, v] : a) out.emplace(m, c * v);
  return out;
}

NCPoly poly_mul(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      add_term(out, m, ca * cb);
      if (out.size() > kTermCap)
        fail(Errc::CoefficientExplosion, "polynomial product exceeds the term budget");
    }
  return out;
}

void add_tensor_term(TensorPoly& p, Monomial left, Monomial right, const Exact& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(std::move(left), std::move(right));
  auto it = p.find(key);
  if (it == p.end()) {
    p.emplace(std::move(key), c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) p.erase(it);
}

void add_tensor3_term(Tensor3Poly& p, Monomial a, Monomial b, Monomial c, const Exact& coeff) {
  if (coeff.is_zero()) return;
  std::array<Monomial, 3> key{std::move(a), std::move(b), std::move(c)};
  auto it = p.find(key);
  if (it == p.end()) {
    p.emplace(std::move(key), coeff);
    return;
  }
  it->second = it->second + coeff;
  if (it->second.is_zero()) p.erase(it);
}

}  // namespace qaut
