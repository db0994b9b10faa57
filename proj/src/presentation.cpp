#include "qaut/presentation.hpp"

#include <utility>

#include "qaut/error.hpp"

namespace qaut {

namespace {

std::vector<int> block_dims(const MultiMatrix& m) {
  std::vector<int> dims;
  dims.reserve(m.block_count());
  for (int b = 1; b <= m.block_count(); ++b) dims.push_back(m.dim(b));
  return dims;
}

Monomial word1(const GenTable& t, const GenIndex& g) { return Monomial{t.id(g)}; }

Monomial word2(const GenTable& t, const GenIndex& g, const GenIndex& h) {
  return Monomial{t.id(g), t.id(h)};
}

void check_conjugators(const MultiMatrix& m, const std::vector<Mat>& p, const char* side) {
  if (static_cast<int>(p.size()) != m.block_count())
    fail(Errc::ShapeMismatch, std::string("conjugator block count does not match ") + side);
  for (int b = 1; b <= m.block_count(); ++b) {
    const Mat& blk = p[b - 1];
    if (blk.rows() != m.dim(b) || blk.cols() != m.dim(b))
      fail(Errc::ShapeMismatch, std::string("conjugator block shape does not match ") + side);
    if (!blk.try_inverse()) fail(Errc::SingularP, "conjugator block is singular");
  }
}

}  // namespace

std::shared_ptr<const GenTable> make_table(const MultiMatrix& E, const MultiMatrix& F) {
  return std::make_shared<GenTable>(block_dims(E), block_dims(F));
}

std::vector<GenIndex> generators(const MultiMatrix& E, const MultiMatrix& F) {
  auto table = make_table(E, F);
  std::vector<GenIndex> out;
  out.reserve(table->size());
  for (int id = 0; id < table->size(); ++id) out.push_back(table->gen(id));
  return out;
}

RelationSet relations(const MultiMatrix& E, const MultiMatrix& F) {
  auto table = make_table(E, F);
  const GenTable& t = *table;
  const int nE = E.block_count(), nF = F.block_count();
  RelationSet out;

  // Partial isometry products: sum_q X^{rq,nu} X^{qs,nu} collapses blockwise.
  for (int nu = 1; nu <= nE; ++nu)
    for (int r = 1; r <= E.dim(nu); ++r)
      for (int s = 1; s <= E.dim(nu); ++s)
        for (int lam = 1; lam <= nF; ++lam)
          for (int i = 1; i <= F.dim(lam); ++i)
            for (int j = 1; j <= F.dim(lam); ++j)
              for (int mu = 1; mu <= nF; ++mu)
                for (int k = 1; k <= F.dim(mu); ++k)
                  for (int l = 1; l <= F.dim(mu); ++l) {
                    NCPoly p;
                    for (int q = 1; q <= E.dim(nu); ++q)
                      add_term(p,
                               word2(t, GenIndex{r, q, nu, i, j, lam}, GenIndex{q, s, nu, k, l, mu}),
                               Exact(1));
                    if (lam == mu && j == k)
                      add_term(p, word1(t, GenIndex{r, s, nu, i, l, mu}), Exact(-1));
                    out.family1.push_back(std::move(p));
                  }

  // Row sums: sum over all lower diagonal positions equals the Kronecker delta.
  for (int lam = 1; lam <= nE; ++lam)
    for (int i = 1; i <= E.dim(lam); ++i)
      for (int j = 1; j <= E.dim(lam); ++j) {
        NCPoly p;
        for (int mu = 1; mu <= nF; ++mu)
          for (int k = 1; k <= F.dim(mu); ++k)
            add_term(p, word1(t, GenIndex{i, j, lam, k, k, mu}), Exact(1));
        if (i == j) add_term(p, Monomial{}, Exact(-1));
        out.family2.push_back(std::move(p));
      }

  // Weighted column sums against the inverse multimatrices.
  for (int lam = 1; lam <= nF; ++lam)
    for (int i = 1; i <= F.dim(lam); ++i)
      for (int j = 1; j <= F.dim(lam); ++j) {
        NCPoly p;
        for (int mu = 1; mu <= nE; ++mu)
          for (int k = 1; k <= E.dim(mu); ++k)
            for (int l = 1; l <= E.dim(mu); ++l)
              add_term(p, word1(t, GenIndex{k, l, mu, i, j, lam}),
                       E.block_inverse(mu).at(k - 1, l - 1));
        add_term(p, Monomial{}, -F.block_inverse(lam).at(i - 1, j - 1));
        out.family3.push_back(std::move(p));
      }

  // Bilinear-form intertwining.
  for (int mu = 1; mu <= nF; ++mu)
    for (int k = 1; k <= F.dim(mu); ++k)
      for (int l = 1; l <= F.dim(mu); ++l)
        for (int lam = 1; lam <= nE; ++lam)
          for (int i = 1; i <= E.dim(lam); ++i)
            for (int p0 = 1; p0 <= E.dim(lam); ++p0)
              for (int nu = 1; nu <= nE; ++nu)
                for (int q = 1; q <= E.dim(nu); ++q)
                  for (int j = 1; j <= E.dim(nu); ++j) {
                    NCPoly p;
                    for (int r = 1; r <= F.dim(mu); ++r)
                      for (int s = 1; s <= F.dim(mu); ++s)
                        add_term(
                            p,
                            word2(t, GenIndex{i, p0, lam, k, r, mu}, GenIndex{q, j, nu, s, l, mu}),
                            F.block(mu).at(r - 1, s - 1));
                    if (lam == nu)
                      add_term(p, word1(t, GenIndex{i, j, lam, k, l, mu}),
                               -E.block(lam).at(p0 - 1, q - 1));
                    out.family4.push_back(std::move(p));
                  }

  return out;
}

ReductionSystem reduction_rules(const MultiMatrix& E, const MultiMatrix& F, bool extended) {
  auto table = make_table(E, F);
  const GenTable& t = *table;
  const int nE = E.block_count(), nF = F.block_count();
  for (int b = 1; b <= nE; ++b)
    if (!E.block(b).is_diagonal())
      fail(Errc::HypothesisViolation,
           "block " + std::to_string(b) +
               " of the first multimatrix is not diagonal (extended mode does not lift this; "
               "conjugate it first)");
  for (int b = 1; b <= nF; ++b)
    if (!F.block(b).is_lower_triangular())
      fail(Errc::HypothesisViolation,
           "block " + std::to_string(b) +
               " of the second multimatrix is not lower-triangular (extended mode does not lift "
               "this; conjugate it first)");
  const int dE = E.dim(nE), dF = F.dim(nF);
  const bool sizes_ok = dE > 1 && dF > 1;
  if (!sizes_ok && !extended)
    fail(Errc::HypothesisViolation,
         "largest block must have size > 1 on both sides; extended mode emits the unverified "
         "rules anyway");

  std::vector<Rule> rules;

  // Rule family 1: split a column-1/row-1 product off the blockwise collapse.
  for (int nu = 1; nu <= nE; ++nu)
    for (int r = 1; r <= E.dim(nu); ++r)
      for (int s = 1; s <= E.dim(nu); ++s)
        for (int lam = 1; lam <= nF; ++lam)
          for (int i = 1; i <= F.dim(lam); ++i)
            for (int j = 1; j <= F.dim(lam); ++j)
              for (int mu = 1; mu <= nF; ++mu)
                for (int k = 1; k <= F.dim(mu); ++k)
                  for (int l = 1; l <= F.dim(mu); ++l) {
                    Rule rule;
                    rule.family = 1;
                    rule.lhs =
                        word2(t, GenIndex{r, 1, nu, i, j, lam}, GenIndex{1, s, nu, k, l, mu});
                    if (lam == mu && j == k)
                      add_term(rule.rhs, word1(t, GenIndex{r, s, nu, i, l, mu}), Exact(1));
                    for (int u = 2; u <= E.dim(nu); ++u)
                      add_term(
                          rule.rhs,
                          word2(t, GenIndex{r, u, nu, i, j, lam}, GenIndex{u, s, nu, k, l, mu}),
                          Exact(-1));
                    rules.push_back(std::move(rule));
                  }

  // Rule family 2: solve the row-sum relation for the largest lower diagonal
  // position.
  for (int lam = 1; lam <= nE; ++lam)
    for (int i = 1; i <= E.dim(lam); ++i)
      for (int j = 1; j <= E.dim(lam); ++j) {
        Rule rule;
        rule.family = 2;
        rule.lhs = word1(t, GenIndex{i, j, lam, dF, dF, nF});
        if (i == j) add_term(rule.rhs, Monomial{}, Exact(1));
        for (int mu = 1; mu < nF; ++mu)
          for (int k = 1; k <= F.dim(mu); ++k)
            add_term(rule.rhs, word1(t, GenIndex{i, j, lam, k, k, mu}), Exact(-1));
        for (int k = 1; k < dF; ++k)
          add_term(rule.rhs, word1(t, GenIndex{i, j, lam, k, k, nF}), Exact(-1));
        rules.push_back(std::move(rule));
      }

  // Rule family 3: solve the weighted column sum for the largest upper
  // diagonal position; E diagonal collapses the weights to diagonal entries.
  const Exact corner = E.block(nE).at(dE - 1, dE - 1);
  for (int lam = 1; lam <= nF; ++lam)
    for (int i = 1; i <= F.dim(lam); ++i)
      for (int j = 1; j <= F.dim(lam); ++j) {
        Rule rule;
        rule.family = 3;
        rule.lhs = word1(t, GenIndex{dE, dE, nE, i, j, lam});
        add_term(rule.rhs, Monomial{}, corner * F.block_inverse(lam).at(i - 1, j - 1));
        for (int mu = 1; mu < nE; ++mu)
          for (int u = 1; u <= E.dim(mu); ++u)
            add_term(rule.rhs, word1(t, GenIndex{u, u, mu, i, j, lam}),
                     -(corner * E.block_inverse(mu).at(u - 1, u - 1)));
        for (int u = 1; u < dE; ++u)
          add_term(rule.rhs, word1(t, GenIndex{u, u, nE, i, j, lam}),
                   -(corner * E.block_inverse(nE).at(u - 1, u - 1)));
        rules.push_back(std::move(rule));
      }

  // Rule family 4: solve the intertwining relation for the (1,1) coefficient
  // of the lower block; F lower-triangular keeps the remaining quadratic
  // terms below the left-hand side.
  for (int lam = 1; lam <= nF; ++lam)
    for (int i = 1; i <= F.dim(lam); ++i)
      for (int j = 1; j <= F.dim(lam); ++j) {
        const Exact scale = F.block_inverse(lam).at(0, 0);
        for (int mu = 1; mu <= nE; ++mu)
          for (int k = 1; k <= E.dim(mu); ++k)
            for (int p0 = 1; p0 <= E.dim(mu); ++p0)
              for (int nu = 1; nu <= nE; ++nu)
                for (int q = 1; q <= E.dim(nu); ++q)
                  for (int l = 1; l <= E.dim(nu); ++l) {
                    Rule rule;
                    rule.family = 4;
                    rule.lhs =
                        word2(t, GenIndex{k, p0, mu, i, 1, lam}, GenIndex{q, l, nu, 1, j, lam});
                    if (mu == nu)
                      add_term(rule.rhs, word1(t, GenIndex{k, l, mu, i, j, lam}),
                               scale * E.block(mu).at(p0 - 1, q - 1));
                    for (int n = 1; n <= F.dim(lam); ++n)
                      for (int m = 1; m <= F.dim(lam); ++m) {
                        if (n == 1 && m == 1) continue;
                        add_term(
                            rule.rhs,
                            word2(t, GenIndex{k, p0, mu, i, n, lam}, GenIndex{q, l, nu, m, j, lam}),
                            -(scale * F.block(lam).at(n - 1, m - 1)));
                      }
                    rules.push_back(std::move(rule));
                  }
      }

  return ReductionSystem(std::move(table), std::move(rules), sizes_ok);
}

TensorPoly comultiplication(const MultiMatrix& E, const MultiMatrix& F, const MultiMatrix& G,
                            const GenIndex& x) {
  make_table(E, F)->id(x);
  auto left_table = make_table(E, G);
  auto right_table = make_table(G, F);
  TensorPoly out;
  for (int nu = 1; nu <= G.block_count(); ++nu)
    for (int r = 1; r <= G.dim(nu); ++r)
      for (int s = 1; s <= G.dim(nu); ++s)
        add_tensor_term(out, Monomial{left_table->id(GenIndex{x.ui, x.uj, x.ub, r, s, nu})},
                        Monomial{right_table->id(GenIndex{r, s, nu, x.li, x.lj, x.lb})}, Exact(1));
  return out;
}

Exact counit(const MultiMatrix& E, const GenIndex& x) {
  make_table(E, E)->id(x);
  return (x.ui == x.li && x.uj == x.lj && x.ub == x.lb) ? Exact(1) : Exact(0);
}

NCPoly antipode(const MultiMatrix& E, const MultiMatrix& F, const GenIndex& x) {
  make_table(E, F)->id(x);
  auto target = make_table(F, E);
  NCPoly out;
  for (int r = 1; r <= E.dim(x.ub); ++r)
    for (int s = 1; s <= F.dim(x.lb); ++s)
      add_term(out, Monomial{target->id(GenIndex{s, x.li, x.lb, r, x.ui, x.ub})},
               E.block(x.ub).at(x.uj - 1, r - 1) * F.block_inverse(x.lb).at(s - 1, x.lj - 1));
  return out;
}

NCPoly conjugation_morphism(const MultiMatrix& E, const MultiMatrix& F, const std::vector<Mat>& P,
                            const std::vector<Mat>& Q, const GenIndex& x, bool inverse) {
  check_conjugators(E, P, "the first multimatrix");
  check_conjugators(F, Q, "the second multimatrix");
  auto table = make_table(E, F);
  table->id(x);
  const Mat& pb = P[x.ub - 1];
  const Mat& qb = Q[x.lb - 1];
  const Mat pb_inv = pb.inverse();
  const Mat qb_inv = qb.inverse();
  const Mat& p_fwd = inverse ? pb_inv : pb;
  const Mat& p_bwd = inverse ? pb : pb_inv;
  const Mat& q_fwd = inverse ? qb_inv : qb;
  const Mat& q_bwd = inverse ? qb : qb_inv;
  NCPoly out;
  for (int u = 1; u <= E.dim(x.ub); ++u)
    for (int v = 1; v <= E.dim(x.ub); ++v)
      for (int r = 1; r <= F.dim(x.lb); ++r)
        for (int s = 1; s <= F.dim(x.lb); ++s) {
          const Exact coeff = p_fwd.at(u - 1, x.ui - 1) * p_bwd.at(x.uj - 1, v - 1) *
                              q_bwd.at(x.li - 1, r - 1) * q_fwd.at(s - 1, x.lj - 1);
          add_term(out, Monomial{table->id(GenIndex{u, v, x.ub, r, s, x.lb})}, coeff);
        }
  return out;
}

}  // namespace qaut
