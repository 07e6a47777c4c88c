#include "belyi/ansatz.hpp"

#include <algorithm>
#include <sstream>

#include "belyi/errors.hpp"

namespace belyi {

std::string to_string(FactorRole r) {
  switch (r) {
    case FactorRole::Order3Simple: return "order3-simple";
    case FactorRole::Order3Cubed: return "order3-cubed";
    case FactorRole::Order2Simple: return "order2-simple";
    case FactorRole::Order2Squared: return "order2-squared";
    case FactorRole::Cusp: return "cusp";
  }
  return "?";
}

std::string BelyiAnsatz::symbol_of(int flat) const {
  for (size_t f = 0; f < factors.size(); ++f) {
    if (flat >= offsets[f] && flat < offsets[f] + factors[f].degree)
      return factors[f].symbol + std::to_string(flat - offsets[f]);
  }
  throw InputError("symbol_of: index out of range");
}

int BelyiAnsatz::index_of(const std::string& symbol) const {
  size_t split = 0;
  while (split < symbol.size() && !isdigit(static_cast<unsigned char>(symbol[split])))
    ++split;
  if (split == 0 || split == symbol.size())
    throw InputError("unknown coefficient symbol '" + symbol + "'");
  std::string prefix = symbol.substr(0, split);
  int pos = std::stoi(symbol.substr(split));
  for (size_t f = 0; f < factors.size(); ++f)
    if (factors[f].symbol == prefix) {
      if (pos >= factors[f].degree)
        throw InputError("coefficient symbol '" + symbol + "' out of range");
      return offsets[f] + pos;
    }
  throw InputError("unknown coefficient symbol '" + symbol + "'");
}

bool BelyiAnsatz::is_gauge_fixed(int flat) const {
  const auto& gf = normalization.gauge_fixed;
  return std::find(gf.begin(), gf.end(), flat) != gf.end();
}

int BelyiAnsatz::coweight(int flat) const {
  for (size_t f = 0; f < factors.size(); ++f)
    if (flat >= offsets[f] && flat < offsets[f] + factors[f].degree)
      return factors[f].degree - (flat - offsets[f]);
  throw InputError("coweight: index out of range");
}

BelyiAnsatz build_ansatz(const SubgroupProfile& p) {
  if (p.genus != 0)
    throw InputError("build_ansatz: genus " + std::to_string(p.genus) +
                     " (only genus 0 supported)");
  const int n = p.index;
  BelyiAnsatz a;
  a.n = n;
  a.principal_width = p.principal_width;

  if (p.e3 > 0) a.factors.push_back({FactorRole::Order3Simple, p.e3, 1, "aa"});
  if ((n - p.e3) / 3 > 0)
    a.factors.push_back({FactorRole::Order3Cubed, (n - p.e3) / 3, 3, "a"});
  if (p.e2 > 0) a.factors.push_back({FactorRole::Order2Simple, p.e2, 1, "d"});
  if ((n - p.e2) / 2 > 0)
    a.factors.push_back({FactorRole::Order2Squared, (n - p.e2) / 2, 2, "e"});

  // Cusp factors by ascending width; the principal cusp (one cycle of the
  // smallest width) sits at infinity and is omitted. Width-1 factors use
  // symbol "b"; the remaining widths take "c", "f", "g", ... in order.
  const char* extra = "cfghijklm";
  int next_extra = 0;
  for (const auto& [w, cnt] : p.cusp_widths) {
    int cycles = cnt - (w == p.principal_width ? 1 : 0);
    if (cycles == 0) continue;
    std::string sym = w == 1 ? "b" : std::string(1, extra[next_extra++]);
    a.factors.push_back({FactorRole::Cusp, cycles, w, sym});
  }

  a.offsets.resize(a.factors.size());
  int off = 0;
  for (size_t f = 0; f < a.factors.size(); ++f) {
    a.offsets[f] = off;
    off += a.factors[f].degree;
  }
  a.unknowns = off;

  if (p.principal_width == 1) {
    a.normalization.kind = NormalizationSpec::Kind::Hauptmodul;
    // j = Phi(x) = q^{-1} + (sum of m*t over p3 factors - sum of w*u over
    // cusp factors) + O(q) where t, u are subleading coefficients; matching
    // j = q^{-1} + 744 + ... pins the 744 equation.
    for (size_t f = 0; f < a.factors.size(); ++f) {
      const FactorSpec& fs = a.factors[f];
      int sub = a.offsets[f] + fs.degree - 1;
      if (fs.role == FactorRole::Order3Simple || fs.role == FactorRole::Order3Cubed)
        a.normalization.linear.emplace_back(fs.multiplicity, sub);
      else if (fs.role == FactorRole::Cusp)
        a.normalization.linear.emplace_back(-static_cast<long>(fs.multiplicity), sub);
    }
    a.normalization.rhs = 744;
  } else {
    a.normalization.kind = NormalizationSpec::Kind::Affine;
    // Translation fix: subleading coefficient of the largest-degree
    // numerator factor (ties: the later factor, i.e. the cubed one) := 0.
    int pick = -1;
    for (size_t f = 0; f < a.factors.size(); ++f) {
      const FactorRole r = a.factors[f].role;
      if (r != FactorRole::Order3Simple && r != FactorRole::Order3Cubed) continue;
      if (pick == -1 || a.factors[f].degree >= a.factors[pick].degree)
        pick = static_cast<int>(f);
    }
    a.normalization.gauge_fixed.push_back(a.offsets[pick] + a.factors[pick].degree - 1);
  }
  return a;
}

std::string normalization_string(const BelyiAnsatz& a) {
  std::ostringstream os;
  if (a.normalization.kind == NormalizationSpec::Kind::Hauptmodul) {
    bool first = true;
    for (const auto& [w, idx] : a.normalization.linear) {
      if (first)
        os << (w < 0 ? "-" : "");
      else
        os << (w < 0 ? " - " : " + ");
      os << std::abs(w) << '*' << a.symbol_of(idx);
      first = false;
    }
    os << " = " << a.normalization.rhs;
  } else {
    os << "gauge";
    for (int idx : a.normalization.gauge_fixed) os << ' ' << a.symbol_of(idx) << " = 0";
  }
  return os.str();
}

AssembledMap assemble(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                      mpfr_prec_t prec) {
  if (static_cast<int>(coeffs.size()) != a.unknowns)
    throw InputError("assemble: expected " + std::to_string(a.unknowns) +
                     " coefficients, got " + std::to_string(coeffs.size()));
  AssembledMap m;
  m.p3 = m.p2 = m.pc = CPoly{Complex(1L, prec)};
  for (size_t f = 0; f < a.factors.size(); ++f) {
    const FactorSpec& fs = a.factors[f];
    CPoly F(fs.degree + 1, Complex(prec));
    for (int k = 0; k < fs.degree; ++k) F[k] = coeffs[a.offsets[f] + k].round_to(prec);
    F[fs.degree] = Complex(1L, prec);
    CPoly Fm = cpoly_pow(F, fs.multiplicity, prec);
    switch (fs.role) {
      case FactorRole::Order3Simple:
      case FactorRole::Order3Cubed:
        m.p3 = cpoly_mul(m.p3, Fm, prec);
        break;
      case FactorRole::Order2Simple:
      case FactorRole::Order2Squared:
        m.p2 = cpoly_mul(m.p2, Fm, prec);
        break;
      case FactorRole::Cusp:
        m.pc = cpoly_mul(m.pc, Fm, prec);
        break;
    }
    m.factor_polys.push_back(std::move(F));
  }
  return m;
}

std::vector<Complex> residual(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                              mpfr_prec_t prec) {
  AssembledMap m = assemble(a, coeffs, prec);
  std::vector<Complex> r(a.equations(), Complex(prec));
  const Real c1728(1728L, prec);
  for (int k = 0; k < a.n; ++k) {
    Complex v = m.p3[k];
    if (k < static_cast<int>(m.p2.size())) v -= m.p2[k];
    if (k < static_cast<int>(m.pc.size())) v -= m.pc[k] * c1728;
    r[k] = v;
  }
  if (a.normalization.kind == NormalizationSpec::Kind::Hauptmodul) {
    Complex v(-a.normalization.rhs, prec);
    for (const auto& [w, idx] : a.normalization.linear)
      v += coeffs[idx] * Real(w, prec);
    r[a.n] = v;
  }
  return r;
}

CMatrix jacobian(const BelyiAnsatz& a, const std::vector<Complex>& coeffs,
                 mpfr_prec_t prec) {
  AssembledMap m = assemble(a, coeffs, prec);
  CMatrix J(a.equations(), a.unknowns, prec);

  for (size_t f = 0; f < a.factors.size(); ++f) {
    const FactorSpec& fs = a.factors[f];
    // base = sign * m * F^{m-1} * (product of the other factors of the same
    // group); the column of f_k is base shifted up by k.
    CPoly base = cpoly_pow(m.factor_polys[f], fs.multiplicity - 1, prec);
    base = cpoly_scale(base, Complex(fs.multiplicity, prec), prec);
    long sign = 1;
    for (size_t g = 0; g < a.factors.size(); ++g) {
      if (g == f) continue;
      bool num3 = a.factors[f].role == FactorRole::Order3Simple ||
                  a.factors[f].role == FactorRole::Order3Cubed;
      bool gnum3 = a.factors[g].role == FactorRole::Order3Simple ||
                   a.factors[g].role == FactorRole::Order3Cubed;
      bool den2 = a.factors[f].role == FactorRole::Order2Simple ||
                  a.factors[f].role == FactorRole::Order2Squared;
      bool gden2 = a.factors[g].role == FactorRole::Order2Simple ||
                   a.factors[g].role == FactorRole::Order2Squared;
      bool same = (num3 && gnum3) || (den2 && gden2) ||
                  (a.factors[f].role == FactorRole::Cusp &&
                   a.factors[g].role == FactorRole::Cusp);
      if (same)
        base = cpoly_mul(base,
                         cpoly_pow(m.factor_polys[g], a.factors[g].multiplicity, prec),
                         prec);
    }
    if (a.factors[f].role == FactorRole::Order2Simple ||
        a.factors[f].role == FactorRole::Order2Squared)
      sign = -1;
    else if (a.factors[f].role == FactorRole::Cusp)
      sign = -1728;
    if (sign != 1) base = cpoly_scale(base, Complex(sign, prec), prec);

    for (int k = 0; k < fs.degree; ++k) {
      int col = a.offsets[f] + k;
      for (int row = 0; row < a.n; ++row) {
        int bidx = row - k;
        if (bidx >= 0 && bidx < static_cast<int>(base.size()))
          J.at(row, col) = base[bidx];
      }
    }
  }

  if (a.normalization.kind == NormalizationSpec::Kind::Hauptmodul) {
    for (const auto& [w, idx] : a.normalization.linear)
      J.at(a.n, idx) = Complex(w, prec);
  }
  return J;
}

Real system_scale(const AssembledMap& m, mpfr_prec_t prec) {
  Real s(744L, prec);
  s = max(s, cpoly_inf_norm(m.p3));
  s = max(s, cpoly_inf_norm(m.p2));
  s = max(s, cpoly_inf_norm(m.pc) * 1728L);
  return s.round_to(prec);
}

}  // namespace belyi
