#include "belyi/formats.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "belyi/errors.hpp"

namespace belyi {

namespace {

size_t digits_for_bits(long bits) {
  return static_cast<size_t>(0.30103 * static_cast<double>(bits)) + 3;
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

// Content lines with original numbers; blank and '#' lines skipped.
struct Lines {
  std::vector<std::pair<int, std::string>> rows;
  size_t pos = 0;

  bool done() const { return pos >= rows.size(); }
  const std::pair<int, std::string>& peek() const {
    if (done()) throw InputError("unexpected end of file");
    return rows[pos];
  }
  std::pair<int, std::string> next() {
    auto r = peek();
    ++pos;
    return r;
  }
};

Lines split_lines(const std::string& text) {
  Lines ls;
  int lineno = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string line = text.substr(start, end == std::string::npos ? end : end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++lineno;
    bool blank = line.find_first_not_of(" \t") == std::string::npos;
    if (!blank && line[line.find_first_not_of(" \t")] != '#')
      ls.rows.emplace_back(lineno, line);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return ls;
}

[[noreturn]] void fail_at(int lineno, const std::string& msg) {
  throw InputError("line " + std::to_string(lineno) + ": " + msg);
}

long to_long(const std::string& s, int lineno) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail_at(lineno, "expected an integer, got '" + s + "'");
  }
}

mpq_class to_rational(const std::string& s, int lineno) {
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || s.empty())
    fail_at(lineno, "expected a rational num/den, got '" + s + "'");
  if (q.get_den() == 0) fail_at(lineno, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

FactorRole role_from_string(const std::string& s, int lineno) {
  if (s == "order3-simple") return FactorRole::Order3Simple;
  if (s == "order3-cubed") return FactorRole::Order3Cubed;
  if (s == "order2-simple") return FactorRole::Order2Simple;
  if (s == "order2-squared") return FactorRole::Order2Squared;
  if (s == "cusp") return FactorRole::Cusp;
  fail_at(lineno, "unknown factor role '" + s + "'");
}

std::string complex_line(const Complex& z, size_t digits) {
  return z.re().to_decimal(digits) + " " + z.im().to_decimal(digits);
}

void write_field_poly(std::ostream& os, const std::string& name, const FieldPoly& p) {
  os << "poly " << name << " deg " << (p.empty() ? 0 : p.size() - 1) << "\n";
  for (const auto& e : p) {
    auto co = fe_coords(e);
    for (size_t i = 0; i < co.size(); ++i) os << (i ? " " : "") << rational_str(co[i]);
    os << "\n";
  }
}

FieldPoly read_field_poly(Lines& ls, const NumberField& K, int expect_deg) {
  auto [ln, line] = ls.next();
  auto tk = tokens(line);
  if (tk.size() != 4 || tk[0] != "poly" || tk[2] != "deg")
    fail_at(ln, "expected 'poly <name> deg <k>'");
  long deg = to_long(tk[3], ln);
  if (expect_deg >= 0 && deg != expect_deg)
    fail_at(ln, "poly " + tk[1] + ": declared degree " + std::to_string(deg) +
                    ", expected " + std::to_string(expect_deg));
  FieldPoly p;
  for (long k = 0; k <= deg; ++k) {
    auto [cl, cline] = ls.next();
    auto ct = tokens(cline);
    if (ct.size() != static_cast<size_t>(K.degree))
      fail_at(cl, "expected " + std::to_string(K.degree) + " rational entries");
    std::vector<mpq_class> co;
    co.reserve(ct.size());
    for (const auto& t : ct) co.push_back(to_rational(t, cl));
    p.push_back(fe_from_coords(K, co));
  }
  return p;
}

}  // namespace

std::string fnv1a_digest(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string render_header(const ReproHeader& h) {
  std::ostringstream os;
  os << "# belyi " << h.version << "\n";
  os << "# seed " << h.seed << "\n";
  os << "# precision_bits " << h.precision_bits << "\n";
  os << "# input_digest " << h.input_digest << "\n";
  return os.str();
}

std::optional<ReproHeader> parse_header(const std::string& text) {
  ReproHeader h;
  bool any = false;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    std::string line = text.substr(start, end == std::string::npos ? end : end - start);
    if (line.empty() || line[0] != '#') break;
    auto tk = tokens(line);
    if (tk.size() == 3 && tk[0] == "#") {
      try {
        if (tk[1] == "belyi") h.version = tk[2], any = true;
        else if (tk[1] == "seed") h.seed = std::stoul(tk[2]), any = true;
        else if (tk[1] == "precision_bits") h.precision_bits = std::stol(tk[2]), any = true;
        else if (tk[1] == "input_digest") h.input_digest = tk[2], any = true;
      } catch (const std::exception&) {
        // malformed numeric header entry: ignore, headers are advisory
      }
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (!any) return std::nullopt;
  return h;
}

PermutationTriple parse_triple_text(const std::string& text) {
  Lines ls = split_lines(text);
  int n = -1;
  std::optional<Permutation> s0, s1, sinf;
  while (!ls.done()) {
    auto [ln, line] = ls.next();
    auto tk = tokens(line);
    if (tk.empty()) continue;
    const std::string& key = tk[0];
    if (key == "n") {
      if (tk.size() != 2) fail_at(ln, "expected 'n <degree>'");
      n = static_cast<int>(to_long(tk[1], ln));
      if (n < 1) fail_at(ln, "degree must be positive");
    } else if (key == "s0" || key == "s1" || key == "sinf") {
      if (n < 0) fail_at(ln, "'n' must come before '" + key + "'");
      if (tk.size() != static_cast<size_t>(n) + 1)
        fail_at(ln, key + ": expected " + std::to_string(n) + " images, got " +
                        std::to_string(tk.size() - 1));
      std::vector<int> img;
      img.reserve(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i) {
        long v = to_long(tk[static_cast<size_t>(i)], ln);
        if (v < 1 || v > n)
          fail_at(ln, key + ": image " + std::to_string(v) + " out of range 1.." +
                          std::to_string(n));
        img.push_back(static_cast<int>(v));
      }
      Permutation p;
      try {
        p = Permutation::from_images1(img);
      } catch (const InputError& e) {
        fail_at(ln, key + ": " + e.what());
      }
      if (key == "s0") s0 = p;
      else if (key == "s1") s1 = p;
      else sinf = p;
    } else {
      fail_at(ln, "unknown key '" + key + "'");
    }
  }
  if (n < 0) throw InputError("triple file: missing 'n' line");
  if (!s0) throw InputError("triple file: missing 's0' line");
  if (!s1) throw InputError("triple file: missing 's1' line");
  return sinf ? validate_triple(*s0, *s1, *sinf) : validate_triple(*s0, *s1);
}

std::string serialize_triple(const PermutationTriple& t, const ReproHeader* h) {
  std::ostringstream os;
  if (h) os << render_header(*h);
  os << "n " << t.n << "\n";
  auto emit = [&os](const char* key, const Permutation& p) {
    os << key;
    for (int v : p.images1()) os << " " << v;
    os << "\n";
  };
  emit("s0", t.s0);
  emit("s1", t.s1);
  emit("sinf", t.sinf);
  return os.str();
}

std::string serialize_solution(const BelyiAnsatz& a, const NumericSolution& s,
                               const ReproHeader* h) {
  if (static_cast<int>(s.coeffs.size()) != a.unknowns)
    throw InputError("solution has " + std::to_string(s.coeffs.size()) +
                     " coefficients, ansatz expects " + std::to_string(a.unknowns));
  std::ostringstream os;
  if (h) os << render_header(*h);
  os << "precision_bits " << s.precision_bits << "\n";
  os << "unknowns " << a.unknowns << "\n";
  size_t digits = digits_for_bits(s.precision_bits);
  for (int i = 0; i < a.unknowns; ++i)
    os << a.symbol_of(i) << " " << complex_line(s.coeffs[static_cast<size_t>(i)], digits)
       << "\n";
  return os.str();
}

NumericSolution parse_solution_text(const std::string& text, const BelyiAnsatz& a) {
  Lines ls = split_lines(text);
  auto [ln1, l1] = ls.next();
  auto t1 = tokens(l1);
  if (t1.size() != 2 || t1[0] != "precision_bits") fail_at(ln1, "expected 'precision_bits <P>'");
  long prec = to_long(t1[1], ln1);
  if (prec < 16 || prec > (1L << 22)) fail_at(ln1, "precision_bits out of range");
  auto [ln2, l2] = ls.next();
  auto t2 = tokens(l2);
  if (t2.size() != 2 || t2[0] != "unknowns") fail_at(ln2, "expected 'unknowns <U>'");
  if (to_long(t2[1], ln2) != a.unknowns)
    fail_at(ln2, "unknowns " + t2[1] + " does not match the ansatz (" +
                     std::to_string(a.unknowns) + ")");

  NumericSolution s;
  s.precision_bits = prec;
  s.coeffs.assign(static_cast<size_t>(a.unknowns), Complex(prec));
  std::vector<char> seen(static_cast<size_t>(a.unknowns), 0);
  while (!ls.done()) {
    auto [ln, line] = ls.next();
    auto tk = tokens(line);
    if (tk.size() != 3) fail_at(ln, "expected '<symbol> <re> <im>'");
    int idx;
    try {
      idx = a.index_of(tk[0]);
    } catch (const InputError& e) {
      fail_at(ln, e.what());
    }
    if (seen[static_cast<size_t>(idx)]) fail_at(ln, "duplicate coefficient " + tk[0]);
    seen[static_cast<size_t>(idx)] = 1;
    try {
      s.coeffs[static_cast<size_t>(idx)] =
          Complex(Real::from_decimal(tk[1], prec), Real::from_decimal(tk[2], prec));
    } catch (const InputError& e) {
      fail_at(ln, e.what());
    }
  }
  for (int i = 0; i < a.unknowns; ++i)
    if (!seen[static_cast<size_t>(i)])
      throw InputError("solution file: missing coefficient " + a.symbol_of(i));
  return s;
}

std::string serialize_certified_map(const CertifiedBelyiMap& m, const ReproHeader* h) {
  std::ostringstream os;
  if (h) os << render_header(*h);
  os << "field deg " << m.field.degree << "\n";
  for (const auto& c : m.field.poly) os << c.get_str() << "\n";
  const BelyiAnsatz& a = m.ansatz;
  os << "n " << a.n << "\n";
  os << "principal_width " << a.principal_width << "\n";
  for (const auto& f : a.factors)
    os << "factor " << f.symbol << " " << to_string(f.role) << " degree " << f.degree
       << " multiplicity " << f.multiplicity << "\n";
  if (a.normalization.kind == NormalizationSpec::Kind::Hauptmodul) {
    os << "normalization hauptmodul " << a.normalization.rhs;
    for (const auto& [w, idx] : a.normalization.linear)
      os << " " << w << "*" << a.symbol_of(idx);
    os << "\n";
  } else {
    os << "normalization affine";
    for (int idx : a.normalization.gauge_fixed) os << " " << a.symbol_of(idx);
    os << "\n";
  }
  os << "twist " << m.twist << "\n";
  mpfr_prec_t eb = m.embedding.prec();
  os << "embedding_bits " << eb << "\n";
  os << "embedding " << complex_line(m.embedding, digits_for_bits(eb)) << "\n";
  for (size_t i = 0; i < m.factors.size(); ++i)
    write_field_poly(os, a.factors[i].symbol, m.factors[i]);
  write_field_poly(os, "p3", m.p3);
  write_field_poly(os, "p2", m.p2);
  write_field_poly(os, "pc", m.pc);
  os << "certificate\n";
  for (const auto& [k, v] : m.certificate) os << k << ": " << v << "\n";
  return os.str();
}

CertifiedBelyiMap parse_certified_map_text(const std::string& text) {
  Lines ls = split_lines(text);
  CertifiedBelyiMap m;

  auto [ln0, l0] = ls.next();
  auto t0 = tokens(l0);
  if (t0.size() != 3 || t0[0] != "field" || t0[1] != "deg")
    fail_at(ln0, "expected 'field deg <D>'");
  long D = to_long(t0[2], ln0);
  if (D < 1 || D > 4096) fail_at(ln0, "field degree out of range");
  ZPoly f;
  for (long i = 0; i <= D; ++i) {
    auto [ln, line] = ls.next();
    auto tk = tokens(line);
    if (tk.size() != 1) fail_at(ln, "expected one integer coefficient");
    mpz_class c;
    if (mpz_set_str(c.get_mpz_t(), tk[0].c_str(), 10) != 0)
      fail_at(ln, "expected an integer, got '" + tk[0] + "'");
    f.push_back(c);
  }
  try {
    m.field = make_field(f);
  } catch (const InputError& e) {
    fail_at(ln0, std::string("defining polynomial: ") + e.what());
  }

  BelyiAnsatz& a = m.ansatz;
  a.n = -1;
  bool have_norm = false, have_twist = false;
  long embed_bits = 0;
  int norm_line = 0;
  std::string norm_text;
  while (!ls.done()) {
    auto tk = tokens(ls.peek().second);
    if (!tk.empty() && (tk[0] == "poly" || tk[0] == "certificate")) break;
    auto [ln, line] = ls.next();
    tk = tokens(line);
    if (tk.empty()) continue;
    if (tk[0] == "n" && tk.size() == 2) {
      a.n = static_cast<int>(to_long(tk[1], ln));
    } else if (tk[0] == "principal_width" && tk.size() == 2) {
      a.principal_width = static_cast<int>(to_long(tk[1], ln));
    } else if (tk[0] == "factor") {
      if (tk.size() != 7 || tk[3] != "degree" || tk[5] != "multiplicity")
        fail_at(ln, "expected 'factor <sym> <role> degree <d> multiplicity <m>'");
      FactorSpec fs;
      fs.symbol = tk[1];
      fs.role = role_from_string(tk[2], ln);
      fs.degree = static_cast<int>(to_long(tk[4], ln));
      fs.multiplicity = static_cast<int>(to_long(tk[6], ln));
      if (fs.degree < 1 || fs.multiplicity < 1) fail_at(ln, "factor shape out of range");
      a.offsets.push_back(a.unknowns);
      a.unknowns += fs.degree;
      a.factors.push_back(std::move(fs));
    } else if (tk[0] == "normalization") {
      have_norm = true;
      norm_line = ln;
      norm_text = line;
    } else if (tk[0] == "twist" && tk.size() == 2) {
      m.twist = static_cast<int>(to_long(tk[1], ln));
      have_twist = true;
    } else if (tk[0] == "embedding_bits" && tk.size() == 2) {
      embed_bits = to_long(tk[1], ln);
      if (embed_bits < 16 || embed_bits > (1L << 22)) fail_at(ln, "embedding_bits out of range");
    } else if (tk[0] == "embedding" && tk.size() == 3) {
      if (embed_bits == 0) fail_at(ln, "'embedding_bits' must precede 'embedding'");
      try {
        m.embedding = Complex(Real::from_decimal(tk[1], embed_bits),
                              Real::from_decimal(tk[2], embed_bits));
      } catch (const InputError& e) {
        fail_at(ln, e.what());
      }
    } else {
      fail_at(ln, "unknown key '" + tk[0] + "'");
    }
  }
  if (a.n < 1) throw InputError("certified map: missing 'n' line");
  if (a.factors.empty()) throw InputError("certified map: no factor lines");
  if (!have_norm) throw InputError("certified map: missing 'normalization' line");
  if (!have_twist) m.twist = 0;
  if (embed_bits == 0) throw InputError("certified map: missing embedding");

  // Normalization after factors: symbol lookup needs the factor table.
  {
    auto tk = tokens(norm_text);
    if (tk.size() < 2) fail_at(norm_line, "empty normalization");
    if (tk[1] == "hauptmodul") {
      if (tk.size() < 3) fail_at(norm_line, "expected 'normalization hauptmodul <rhs> ...'");
      a.normalization.kind = NormalizationSpec::Kind::Hauptmodul;
      a.normalization.rhs = to_long(tk[2], norm_line);
      for (size_t i = 3; i < tk.size(); ++i) {
        size_t star = tk[i].find('*');
        if (star == std::string::npos)
          fail_at(norm_line, "expected '<weight>*<symbol>', got '" + tk[i] + "'");
        long w = to_long(tk[i].substr(0, star), norm_line);
        try {
          a.normalization.linear.emplace_back(w, a.index_of(tk[i].substr(star + 1)));
        } catch (const InputError& e) {
          fail_at(norm_line, e.what());
        }
      }
    } else if (tk[1] == "affine") {
      a.normalization.kind = NormalizationSpec::Kind::Affine;
      for (size_t i = 2; i < tk.size(); ++i) {
        try {
          a.normalization.gauge_fixed.push_back(a.index_of(tk[i]));
        } catch (const InputError& e) {
          fail_at(norm_line, e.what());
        }
      }
    } else {
      fail_at(norm_line, "unknown normalization kind '" + tk[1] + "'");
    }
  }

  // Factor polynomials in declaration order, then the three products.
  const int h = std::max(1, a.principal_width);
  for (const auto& fs : a.factors) {
    auto tk = tokens(ls.peek().second);
    if (tk.size() != 4 || tk[0] != "poly" || tk[1] != fs.symbol)
      fail_at(ls.peek().first, "expected 'poly " + fs.symbol + " ...'");
    m.factors.push_back(read_field_poly(ls, m.field, fs.degree));
  }
  auto expect_named = [&](const char* name, int deg) {
    auto tk = tokens(ls.peek().second);
    if (tk.size() != 4 || tk[0] != "poly" || tk[1] != name)
      fail_at(ls.peek().first, std::string("expected 'poly ") + name + " ...'");
    return read_field_poly(ls, m.field, deg);
  };
  m.p3 = expect_named("p3", a.n);
  m.p2 = expect_named("p2", a.n);
  m.pc = expect_named("pc", a.n - h);

  auto [lnc, lc] = ls.next();
  if (tokens(lc) != std::vector<std::string>{"certificate"})
    fail_at(lnc, "expected 'certificate'");
  while (!ls.done()) {
    auto [ln, line] = ls.next();
    size_t colon = line.find(": ");
    if (colon == std::string::npos) fail_at(ln, "expected '<key>: <value>'");
    m.certificate.emplace_back(line.substr(0, colon), line.substr(colon + 2));
  }
  return m;
}

std::string analyze_report(const SubgroupProfile& p, const BelyiAnsatz& a,
                           const ReproHeader* h) {
  std::ostringstream os;
  if (h) os << render_header(*h);
  os << "index " << p.index << "\n";
  os << "e2 " << p.e2 << "\n";
  os << "e3 " << p.e3 << "\n";
  os << "cusps " << p.num_cusps << "\n";
  os << "cusp_widths " << cycle_type_string(p.cusp_widths) << "\n";
  os << "level " << p.level << "\n";
  os << "genus " << p.genus << "\n";
  os << "principal_width " << p.principal_width << "\n";
  os << "unknowns " << a.unknowns << "\n";
  os << "equations " << a.equations() << "\n";
  os << "normalization " << normalization_string(a) << "\n";
  os << "congruence " << to_string(p.congruence) << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("write failed for '" + path + "'");
}

}  // namespace belyi
