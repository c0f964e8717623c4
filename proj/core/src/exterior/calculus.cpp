#include "presym/exterior/calculus.hpp"

#include <algorithm>
#include <numeric>

namespace presym {

namespace {

template <class Tag>
GradedElement<Tag> wedge_impl(const GradedElement<Tag>& a, const GradedElement<Tag>& b) {
  a.require_same_chart(b);
  GradedElement<Tag> out(a.chart());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      if (ba & bb) continue;
      Scalar c = ca * cb;
      out.add_term(ba | bb, wedge_sign_parity(ba, bb) ? -c : c);
    }
  }
  return out;
}

struct Contracted {
  bool odd;
  Blade rest;
};

/// i(d/dx_J) dx_I with the largest index of J applied first.
std::optional<Contracted> contract_blade(Blade vec, Blade form) {
  if (vec & ~form) return std::nullopt;
  bool odd = false;
  Blade cur = form;
  for (int j = 31; j >= 0; --j) {
    if (!blade_has(vec, j)) continue;
    odd ^= (std::popcount(cur & (blade_bit(j) - 1)) & 1) != 0;
    cur ^= blade_bit(j);
  }
  return Contracted{odd, cur};
}

int max_degree(const MultivectorField& p) {
  int d = -1;
  for (const auto& [b, c] : p.terms()) d = std::max(d, blade_degree(b));
  return d;
}

}  // namespace

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) { return wedge_impl(a, b); }
MultivectorField wedge(const MultivectorField& a, const MultivectorField& b) { return wedge_impl(a, b); }

DifferentialForm de_rham(const DifferentialForm& alpha) {
  DifferentialForm out(alpha.chart());
  const int n = alpha.dim();
  for (const auto& [b, f] : alpha.terms()) {
    if (f.is_constant()) continue;
    for (int i = 0; i < n; ++i) {
      if (blade_has(b, i)) continue;
      Scalar df = f.derivative(i);
      if (df.is_zero()) continue;
      bool odd = (std::popcount(b & (blade_bit(i) - 1)) & 1) != 0;
      out.add_term(b | blade_bit(i), odd ? -df : df);
    }
  }
  return out;
}

DifferentialForm contract(const MultivectorField& p, const DifferentialForm& alpha) {
  if (!(p.chart() == alpha.chart())) throw Error(ErrorCode::ChartMismatch, "contract");
  DifferentialForm out(alpha.chart());
  for (const auto& [bp, cp] : p.terms()) {
    for (const auto& [ba, ca] : alpha.terms()) {
      auto r = contract_blade(bp, ba);
      if (!r) continue;
      Scalar c = cp * ca;
      out.add_term(r->rest, r->odd ? -c : c);
    }
  }
  return out;
}

DifferentialForm lie_derivative(const MultivectorField& p, const DifferentialForm& alpha) {
  return contract(p, de_rham(alpha)) - de_rham(contract(p, alpha));
}

DifferentialForm classical_lie_derivative(const MultivectorField& x, const DifferentialForm& alpha) {
  return contract(x, de_rham(alpha)) + de_rham(contract(x, alpha));
}

namespace {

// [P, Q] = sum_i  dP/dxi_i ^ dQ/dx_i  -  (-1)^{(p-1)(q-1)} dQ/dxi_i ^ dP/dx_i,
// with P a superfunction in odd variables xi_i = d/dx_i and d/dxi_i the right
// derivative. Both inputs homogeneous.
void schouten_homogeneous(const MultivectorField& p, int pdeg, const MultivectorField& q, int qdeg,
                          MultivectorField& out) {
  const int n = p.dim();
  const bool second_sign_flip = ((pdeg - 1) * (qdeg - 1)) % 2 == 0;  // term enters with minus when even
  auto accumulate = [&](const MultivectorField& odd_side, const MultivectorField& even_side, bool negate) {
    for (const auto& [bo, co] : odd_side.terms()) {
      for (int i = 0; i < n; ++i) {
        if (!blade_has(bo, i)) continue;
        Blade rest = bo ^ blade_bit(i);
        bool odd = (std::popcount(bo >> (i + 1)) & 1) != 0;
        for (const auto& [be, ce] : even_side.terms()) {
          if (rest & be) continue;
          Scalar dce = ce.derivative(i);
          if (dce.is_zero()) continue;
          Scalar c = co * dce;
          bool flip = odd ^ (wedge_sign_parity(rest, be) != 0) ^ negate;
          out.add_term(rest | be, flip ? -c : c);
        }
      }
    }
  };
  accumulate(p, q, false);
  accumulate(q, p, second_sign_flip);
}

}  // namespace

MultivectorField schouten(const MultivectorField& p, const MultivectorField& q) {
  p.require_same_chart(q);
  MultivectorField out(p.chart());
  const int pmax = max_degree(p), qmax = max_degree(q);
  for (int pd = 0; pd <= pmax; ++pd) {
    MultivectorField pc = p.component(pd);
    if (pc.is_zero()) continue;
    for (int qd = 0; qd <= qmax; ++qd) {
      MultivectorField qc = q.component(qd);
      if (qc.is_zero()) continue;
      schouten_homogeneous(pc, pd, qc, qd, out);
    }
  }
  return out;
}

DifferentialForm multi_sharp(std::span<const DifferentialForm> forms, const MultivectorField& w) {
  const int m = static_cast<int>(forms.size());
  if (!w.is_homogeneous_of(m)) {
    throw Error(ErrorCode::ArityMismatch, "multivector degree does not match " + std::to_string(m) + " forms");
  }
  for (const auto& f : forms) {
    if (!(f.chart() == w.chart())) throw Error(ErrorCode::ChartMismatch, "multi_sharp");
  }
  DifferentialForm out(w.chart());
  if (m == 0) {
    for (const auto& [b, c] : w.terms()) out.add_term(0, c);
    return out;
  }
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (const auto& [bw, cw] : w.terms()) {
    std::vector<int> idx = blade_indices(bw);
    // contracted[a][t] = i(d/dx_{idx[t]}) forms[a]
    std::vector<std::vector<DifferentialForm>> contracted(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) {
      for (int t = 0; t < m; ++t) {
        contracted[a].push_back(
            contract(MultivectorField::basis(w.chart(), {idx[static_cast<std::size_t>(t)]}), forms[static_cast<std::size_t>(a)]));
      }
    }
    std::iota(perm.begin(), perm.end(), 0);
    DifferentialForm sum(w.chart());
    do {
      int inversions = 0;
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) inversions += perm[i] > perm[j];
      }
      DifferentialForm prod = contracted[0][perm[0]];
      for (int a = 1; a < m && !prod.is_zero(); ++a) prod = wedge(prod, contracted[a][perm[a]]);
      if (prod.is_zero()) continue;
      if (inversions % 2) {
        sum -= prod;
      } else {
        sum += prod;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out += sum * cw;
  }
  return out;
}

MultivectorField sharp(const MultivectorField& z, const DifferentialForm& alpha) {
  if (!(z.chart() == alpha.chart())) throw Error(ErrorCode::ChartMismatch, "sharp");
  if (!z.is_homogeneous_of(2)) throw Error(ErrorCode::WrongDegree, "sharp expects a bivector");
  if (!alpha.is_homogeneous_of(1)) throw Error(ErrorCode::WrongDegree, "sharp expects a 1-form");
  std::vector<Scalar> a = components(alpha);
  std::vector<Scalar> v(static_cast<std::size_t>(z.dim()));
  for (const auto& [b, c] : z.terms()) {
    std::vector<int> jk = blade_indices(b);
    auto j = static_cast<std::size_t>(jk[0]), k = static_cast<std::size_t>(jk[1]);
    // (d_j ^ d_k)(alpha, .) = alpha_j d_k - alpha_k d_j
    v[k] += c * a[j];
    v[j] -= c * a[k];
  }
  return vector_field(z.chart(), v);
}

Scalar pairing(const MultivectorField& z, const DifferentialForm& omega) {
  if (!(z.chart() == omega.chart())) throw Error(ErrorCode::ChartMismatch, "pairing");
  Scalar acc;
  for (const auto& [b, c] : z.terms()) {
    if (blade_degree(b) != 2) continue;
    acc += c * omega.coefficient(b);
  }
  return acc;
}

MultivectorField vector_field(Chart chart, const std::vector<Scalar>& comps) {
  if (static_cast<int>(comps.size()) != chart.dimension()) throw Error(ErrorCode::DimensionMismatch, "vector_field");
  MultivectorField v(chart);
  for (std::size_t i = 0; i < comps.size(); ++i) v.add_term(blade_bit(static_cast<int>(i)), comps[i]);
  return v;
}

DifferentialForm one_form(Chart chart, const std::vector<Scalar>& comps) {
  if (static_cast<int>(comps.size()) != chart.dimension()) throw Error(ErrorCode::DimensionMismatch, "one_form");
  DifferentialForm f(chart);
  for (std::size_t i = 0; i < comps.size(); ++i) f.add_term(blade_bit(static_cast<int>(i)), comps[i]);
  return f;
}

}  // namespace presym
